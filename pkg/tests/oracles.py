"""Independent reference data: literal Gell-Mann matrices, tabulated f and d, literal 9x9 generators."""
import math
from itertools import permutations

import numpy as np

R3 = math.sqrt(3)

# Standard tabulated values (independent of the extraction code).
F_TABLE = {(1, 2, 3): 1, (1, 4, 7): .5, (1, 5, 6): -.5, (2, 4, 6): .5, (2, 5, 7): .5,
           (3, 4, 5): .5, (3, 6, 7): -.5, (4, 5, 8): R3 / 2, (6, 7, 8): R3 / 2}
D_TABLE = {(1, 1, 8): 1 / R3, (2, 2, 8): 1 / R3, (3, 3, 8): 1 / R3, (8, 8, 8): -1 / R3,
           (4, 4, 8): -1 / (2 * R3), (5, 5, 8): -1 / (2 * R3), (6, 6, 8): -1 / (2 * R3),
           (7, 7, 8): -1 / (2 * R3), (1, 4, 6): .5, (1, 5, 7): .5, (2, 5, 6): .5, (3, 4, 4): .5,
           (3, 5, 5): .5, (2, 4, 7): -.5, (3, 6, 6): -.5, (3, 7, 7): -.5}


def lambdas():
    """Literal Gell-Mann matrices built directly in numpy."""
    L = np.zeros((8, 3, 3), dtype=complex)
    L[0][0, 1] = L[0][1, 0] = 1
    L[1][0, 1], L[1][1, 0] = -1j, 1j
    L[2][0, 0], L[2][1, 1] = 1, -1
    L[3][0, 2] = L[3][2, 0] = 1
    L[4][0, 2], L[4][2, 0] = -1j, 1j
    L[5][1, 2] = L[5][2, 1] = 1
    L[6][1, 2], L[6][2, 1] = -1j, 1j
    L[7] = np.diag([1, 1, -2]) / R3
    return L


def expand(table, antisym):
    full = np.zeros((8, 8, 8))
    for (i, j, k), v in table.items():
        for p in permutations((0, 1, 2)):
            idx = tuple((i, j, k)[n] - 1 for n in p)
            sign = 1
            if antisym:
                sign = 1 if p in ((0, 1, 2), (1, 2, 0), (2, 0, 1)) else -1
            full[idx] = sign * v
    return full


F = expand(F_TABLE, True)
D = expand(D_TABLE, False)


def f9():
    out = np.zeros((9, 9, 9))
    out[:8, :8, :8] = F
    return out


def d9():
    out = np.zeros((9, 9, 9))
    out[:8, :8, :8] = D
    return out


def literal_j9():
    """(J^i)_{mu nu} = i f^{mu i nu}."""
    f = f9()
    return np.array([1j * f[:, i, :] for i in range(8)])


def literal_k9(branch):
    """(K^i)_{mu nu} = -i [sqrt(2/3)(delta^i_mu delta^9_nu + delta^i_nu delta^9_mu) + branch d^{mu i nu}]."""
    d = d9()
    out = []
    for i in range(8):
        m = branch * d[:, i, :].copy()
        m[i, 8] += math.sqrt(2 / 3)
        m[8, i] += math.sqrt(2 / 3)
        out.append(-1j * m)
    return np.array(out)

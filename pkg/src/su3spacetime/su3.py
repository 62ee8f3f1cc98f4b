"""Fundamental and antitriplet representations of SU(3) and their structure constants.

Generator labels are 1-based (``1..8``; ``9`` is the time slot of the extended
index range).  Structure constants are stored densely on 9x9x9 with every
component carrying a 9 set to zero.

With the normalization ``Tr(J^i J^j) = delta^ij / 2`` the defining relations

    [J^i, J^j] = i f^ijk J^k,        {J^i, J^j} = delta^ij / 3 + d^ijk J^k

give, after multiplying by ``J^k`` and tracing,

    f^ijk = -2i Tr([J^i, J^j] J^k),  d^ijk = 2 Tr({J^i, J^j} J^k).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import permutations

import numpy as np

from .numerics import (
    ALGEBRAIC_TOL, EXACT, FLOAT, HALF, INV_SQRT3, IUNIT, ONE, ZERO,
    AlgebraError, BackendError, ComplexMatrix, ExactScalar, anticommutator,
    check_backend, commutator, dagger, lincomb, scalar, trace,
)

REP_DIMS = {"3": 3, "3bar": 3, "6": 6, "9": 9, "10": 10}
N_GEN = 8
N_EXT = 9


@dataclass(frozen=True)
class GeneratorSet:
    """Angular momentum ``J``, boosts ``K`` and vector/momentum matrices ``V``.

    ``momentum`` marks a ``V`` family whose members all commute.
    ``time_scale`` records the time-axis scale of the backend frame in which
    the matrices are stored (``"1"`` means literal values).
    """

    rep: str
    J: tuple
    K: tuple | None = None
    V: tuple | None = None
    branch: int | None = None
    momentum: bool = False
    time_scale: str = "1"
    meta: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if self.rep not in REP_DIMS:
            raise ValueError(f"unknown rep {self.rep!r}")
        n = REP_DIMS[self.rep]
        if len(self.J) != N_GEN or (self.K is not None and len(self.K) != N_GEN):
            raise ValueError("J and K families need exactly 8 members")
        if self.V is not None and len(self.V) != N_EXT:
            raise ValueError("V family needs exactly 9 members")
        mats = self.all_matrices()
        if {m.backend for m in mats} != {self.backend}:
            raise BackendError("generator set mixes backends")
        for m in mats:
            if m.shape != (n, n):
                raise ValueError(f"rep {self.rep} needs {n}x{n} matrices, got {m.shape}")
        if self.branch not in (None, 1, -1):
            raise ValueError("branch must be +1, -1 or None")

    @property
    def backend(self) -> str:
        return self.J[0].backend

    @property
    def dim(self) -> int:
        return REP_DIMS[self.rep]

    @property
    def P(self) -> tuple:
        if not self.momentum:
            raise AttributeError(f"rep {self.rep} carries no momentum matrices")
        return self.V

    def all_matrices(self) -> list[ComplexMatrix]:
        return [*self.J, *(self.K or ()), *(self.V or ())]

    def j(self, i: int) -> ComplexMatrix:
        return self.J[_gen_index(i)]

    def k(self, i: int) -> ComplexMatrix:
        if self.K is None:
            raise AttributeError(f"rep {self.rep} has no boost matrices")
        return self.K[_gen_index(i)]

    def v(self, mu: int) -> ComplexMatrix:
        if self.V is None:
            raise AttributeError(f"rep {self.rep} has no vector matrices")
        if not 1 <= mu <= N_EXT:
            raise IndexError(f"vector index {mu} outside 1..9")
        return self.V[mu - 1]

    def to_float(self) -> "GeneratorSet":
        conv = lambda fam: None if fam is None else tuple(m.to_float() for m in fam)
        if self.backend == FLOAT:
            return self
        if self.time_scale != "1":
            raise BackendError("exact generators stored in a rescaled time frame "
                               "have no literal float image; rebuild with backend='float'")
        return GeneratorSet(self.rep, conv(self.J), conv(self.K), conv(self.V),
                            self.branch, self.momentum, "1", dict(self.meta))


def _gen_index(i: int) -> int:
    if not 1 <= i <= N_GEN:
        raise IndexError(f"generator index {i} outside 1..8")
    return i - 1


@dataclass(frozen=True)
class StructureConstants:
    """``f`` (antisymmetric) and ``d`` (symmetric) on the extended range 1..9."""

    f: np.ndarray
    d: np.ndarray
    backend: str

    def __post_init__(self):
        check_backend(self.backend)
        for t in (self.f, self.d):
            if t.shape != (N_EXT, N_EXT, N_EXT):
                raise ValueError("structure tensors must be 9x9x9")
            t.flags.writeable = False

    def fval(self, i: int, j: int, k: int):
        return self.f[i - 1, j - 1, k - 1]

    def dval(self, i: int, j: int, k: int):
        return self.d[i - 1, j - 1, k - 1]

    def to_float(self) -> "StructureConstants":
        if self.backend == FLOAT:
            return self
        conv = np.vectorize(float, otypes=[float])
        return StructureConstants(conv(self.f), conv(self.d), FLOAT)

    def perturbed(self, tensor: str, index: tuple[int, int, int], eps) -> "StructureConstants":
        """Copy with one entry (1-based ``index``) of ``tensor`` shifted by ``eps``."""
        if tensor not in ("f", "d"):
            raise ValueError("tensor must be 'f' or 'd'")
        f, d = self.f.copy(), self.d.copy()
        t = f if tensor == "f" else d
        idx = tuple(n - 1 for n in index)
        if self.backend == EXACT:
            t[idx] = t[idx] + ExactScalar(Fraction(str(eps)) if isinstance(eps, float) else eps)
        else:
            t[idx] = t[idx] + float(eps)
        return StructureConstants(f, d, self.backend)


def _zeros3(backend: str) -> np.ndarray:
    if backend == EXACT:
        return np.full((N_EXT, N_EXT, N_EXT), ZERO, dtype=object)
    return np.zeros((N_EXT, N_EXT, N_EXT))


@lru_cache(maxsize=None)
def gellmann(backend: str = EXACT) -> GeneratorSet:
    """The eight Gell-Mann generators ``J^i = lambda^i / 2``."""
    check_backend(backend)
    h = HALF
    ih = IUNIT * HALF
    z = ZERO
    rows = [
        [[z, h, z], [h, z, z], [z, z, z]],
        [[z, -ih, z], [ih, z, z], [z, z, z]],
        [[h, z, z], [z, -h, z], [z, z, z]],
        [[z, z, h], [z, z, z], [h, z, z]],
        [[z, z, -ih], [z, z, z], [ih, z, z]],
        [[z, z, z], [z, z, h], [z, h, z]],
        [[z, z, z], [z, z, -ih], [z, ih, z]],
    ]
    c8 = INV_SQRT3 * HALF  # 1/(2 sqrt3)
    rows.append([[c8, z, z], [z, c8, z], [z, z, -2 * c8]])
    J = tuple(ComplexMatrix.exact(r) for r in rows)
    if backend == FLOAT:
        J = tuple(m.to_float() for m in J)
    return GeneratorSet("3", J)


@lru_cache(maxsize=None)
def antitriplet(backend: str = EXACT) -> GeneratorSet:
    """``Jbar^i = -(J^i)^*``, which equals ``-(J^i)^T`` since each ``J^i`` is hermitian."""
    J = tuple(-m.conj() for m in gellmann(backend).J)
    return GeneratorSet("3bar", J)


def _check_normalization(gens: GeneratorSet, tol: float) -> None:
    half = scalar(HALF if gens.backend == EXACT else 0.5, gens.backend)
    for a in range(N_GEN):
        for b in range(N_GEN):
            t = trace(gens.J[a] @ gens.J[b])
            want = half if a == b else scalar(0, gens.backend)
            bad = (t != want) if gens.backend == EXACT else abs(t - want) > tol
            if bad:
                raise AlgebraError(
                    f"generators fail Tr(J^{a + 1} J^{b + 1}) = delta/2 normalization")


def _real(v, backend: str):
    if backend == EXACT:
        if not v.is_real():
            raise AlgebraError("extracted structure constant is not real")
        return v.real
    return float(v.real)


def extract_f(gens: GeneratorSet, tol: float = ALGEBRAIC_TOL) -> np.ndarray:
    """``f^ijk = -2i Tr([J^i, J^j] J^k)`` on 1..8, zero wherever an index is 9."""
    _check_normalization(gens, tol)
    b = gens.backend
    f = _zeros3(b)
    coef = scalar(-2 * IUNIT if b == EXACT else -2j, b)
    for i in range(N_GEN):
        for j in range(i + 1, N_GEN):
            c = commutator(gens.J[i], gens.J[j])
            for k in range(N_GEN):
                v = _real(coef * trace(c @ gens.J[k]), b)
                f[i, j, k] = v
                f[j, i, k] = -v
    return f


def extract_d(gens: GeneratorSet, tol: float = ALGEBRAIC_TOL) -> np.ndarray:
    """``d^ijk = 2 Tr({J^i, J^j} J^k)`` on 1..8, zero wherever an index is 9."""
    _check_normalization(gens, tol)
    b = gens.backend
    d = _zeros3(b)
    for i in range(N_GEN):
        for j in range(i, N_GEN):
            a = anticommutator(gens.J[i], gens.J[j])
            for k in range(N_GEN):
                v = _real(2 * trace(a @ gens.J[k]), b)
                d[i, j, k] = v
                d[j, i, k] = v
    return d


@lru_cache(maxsize=None)
def structure_constants(backend: str = EXACT) -> StructureConstants:
    g = gellmann(backend)
    return StructureConstants(extract_f(g), extract_d(g), backend)


def _delta(backend: str) -> np.ndarray:
    one = ONE if backend == EXACT else 1.0
    zero = ZERO if backend == EXACT else 0.0
    e = np.full((N_GEN, N_GEN), zero, dtype=object if backend == EXACT else float)
    for k in range(N_GEN):
        e[k, k] = one
    return e


def fd_identity_residuals(sc: StructureConstants) -> dict[str, np.ndarray]:
    """Residual tensors (indices i, j, k, l over 1..8) of the three f/d identities."""
    f = sc.f[:N_GEN, :N_GEN, :N_GEN]
    d = sc.d[:N_GEN, :N_GEN, :N_GEN]
    es = np.einsum
    jacobi = (es("ijs,skl->ijkl", f, f) + es("kjs,sli->ijkl", f, f)
              + es("iks,slj->ijkl", f, f))
    mixed = (es("ijs,skl->ijkl", f, d) + es("ljs,ski->ijkl", f, d)
             + es("kjs,sil->ijkl", f, d))
    e = _delta(sc.backend)
    third = ExactScalar(Fraction(1, 3)) if sc.backend == EXACT else 1.0 / 3.0
    deltas = es("ki,lj->ijkl", e, e) + es("kl,ij->ijkl", e, e) + es("kj,il->ijkl", e, e)
    dd = (es("ijs,skl->ijkl", d, d) + es("ljs,ski->ijkl", d, d)
          + es("lis,skj->ijkl", d, d) - deltas * third)
    return {"jacobi_fff": jacobi, "mixed_ffd": mixed, "dd_delta": dd}


def tensor_max_abs(t: np.ndarray) -> float:
    return max((abs(v) for v in t.ravel() if v), default=0.0)


def verify_fd_identities(sc: StructureConstants) -> dict[str, dict]:
    """Check every index tuple of the f/d identities; failures are reported, not raised."""
    out = {}
    for name, r in fd_identity_residuals(sc).items():
        exact_zero = sc.backend == EXACT and not any(r.ravel())
        out[name] = {"cases": int(r.size), "max_residual": tensor_max_abs(r),
                     "exact_zero": exact_zero}
    return out


def antisymmetry_residual(t: np.ndarray) -> float:
    """Largest violation of total antisymmetry over all index permutations."""
    worst = 0.0
    for p in permutations(range(3)):
        sign = _perm_sign(p)
        worst = max(worst, tensor_max_abs(np.transpose(t, p) * (1 if sign > 0 else -1) - t))
    return worst


def symmetry_residual(t: np.ndarray) -> float:
    worst = 0.0
    for p in permutations(range(3)):
        worst = max(worst, tensor_max_abs(np.transpose(t, p) - t))
    return worst


def _perm_sign(p) -> int:
    sign = 1
    p = list(p)
    for a in range(len(p)):
        for b in range(a + 1, len(p)):
            if p[a] > p[b]:
                sign = -sign
    return sign


def time_slot_residual(sc: StructureConstants) -> float:
    """Largest |f| or |d| component having any index equal to 9."""
    worst = 0.0
    for t in (sc.f, sc.d):
        for axis in range(3):
            worst = max(worst, tensor_max_abs(np.take(t, N_EXT - 1, axis=axis)))
    return worst


def i_times(backend: str):
    return IUNIT if backend == EXACT else 1j


def closure_residuals(gens: GeneratorSet, sc: StructureConstants, d_sign: int = 1):
    """Yield ``(i, j, comm_residual, anticomm_residual)`` for all 64 ordered pairs.

    ``comm = [J^i, J^j] - i f^ijk J^k``;
    ``anticomm = {J^i, J^j} - delta^ij/3 - d_sign * d^ijk J^k``.
    """
    b = gens.backend
    if sc.backend != b:
        raise BackendError("structure constants and generators use different backends")
    ii = i_times(b)
    third = ExactScalar(Fraction(1, 3)) if b == EXACT else 1.0 / 3.0
    eye = ComplexMatrix.identity(gens.dim, b)
    for i in range(N_GEN):
        for j in range(N_GEN):
            comm = commutator(gens.J[i], gens.J[j]) - lincomb(
                [ii * sc.f[i, j, k] for k in range(N_GEN)], gens.J, b)
            anti = anticommutator(gens.J[i], gens.J[j]) - lincomb(
                [d_sign * sc.d[i, j, k] for k in range(N_GEN)], gens.J, b)
            if i == j:
                anti = anti - eye * third
            yield i + 1, j + 1, comm, anti


def hermitian_traceless_residual(gens: GeneratorSet) -> float:
    worst = 0.0
    for m in gens.J:
        worst = max(worst, (dagger(m) - m).max_abs(), abs(complex(trace(m))))
    return worst

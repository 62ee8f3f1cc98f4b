"""Nine-dimensional SU(3)-Lorentz generators and the 10-dimensional affine rep.

The 9x9 generators are the coefficient matrices of the adjoint action of the
6-rep ``J`` and ``K`` on the momentum matrices:

    [P^rho, X] = a^{rho nu} P^nu   =>   X_(9) = a.

Closed forms (time components of f and d vanish)::

    (J^i)_{mu nu} = i f^{mu i nu}
    (K^i)_{mu nu} = -i [sqrt(2/3) (delta^i_mu delta^9_nu + delta^i_nu delta^9_mu) +- d^{mu i nu}]

Exact-backend matrices are stored in the sqrt6 time frame, ``T M T^-1`` with
``T = diag(1, ..., 1, sqrt6)``; the (i, 9) entries of ``K`` then read
``-i/3`` and the (9, i) entries ``-2i``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .numerics import (
    ALGEBRAIC_TOL, EXACT, AlgebraError, ComplexMatrix, commutator, frame, lincomb, scalar,
)
from .sixrep import MINUS, PLUS, MomentumSet, lorentz_residuals, momentum_matrices, parse_branch, span_coefficients
from .su3 import N_EXT, N_GEN, GeneratorSet, StructureConstants, i_times, structure_constants


@dataclass(frozen=True)
class AdjointAction:
    """``coeff[rho, nu]`` (0-based storage) with ``[P^rho, X] = coeff[rho, nu] P^nu``."""

    source_label: str
    coeff: ComplexMatrix


def extract_adjoint_action(mset: MomentumSet, X: ComplexMatrix, label: str = "X",
                           tol: float = ALGEBRAIC_TOL) -> AdjointAction:
    """Coefficient matrix of ``X`` acting on the momentum span by commutation."""
    b = mset.backend
    rows = []
    for rho, P in enumerate(mset.P):
        a, resid = span_coefficients(mset, commutator(P, X), tol)
        if not resid.is_zero(tol):
            raise AlgebraError(f"[P^{rho + 1}, {label}] is not in the momentum span")
        rows.append(list(a))
    return AdjointAction(label, ComplexMatrix(rows, b))


def _sc(backend: str, sc: StructureConstants | None) -> StructureConstants:
    return structure_constants(backend) if sc is None else sc


def j9(sc: StructureConstants | None = None, backend: str = EXACT) -> tuple:
    sc = _sc(backend, sc)
    b = sc.backend
    ii = i_times(b)
    out = []
    for i in range(N_GEN):
        m = [[ii * sc.f[mu, i, nu] for nu in range(N_EXT)] for mu in range(N_EXT)]
        out.append(ComplexMatrix(m, b))
    return tuple(out)


def k9(branch=PLUS, sc: StructureConstants | None = None, backend: str = EXACT) -> tuple:
    branch = parse_branch(branch)
    sc = _sc(backend, sc)
    b = sc.backend
    fr = frame(b)
    mi = -i_times(b)
    t = N_EXT - 1
    out = []
    for i in range(N_GEN):
        m = [[mi * branch * sc.d[mu, i, nu] for nu in range(N_EXT)] for mu in range(N_EXT)]
        m[i][t] = m[i][t] + mi * fr.k_lo
        m[t][i] = m[t][i] + mi * fr.k_hi
        out.append(ComplexMatrix(m, b))
    return tuple(out)


def nine_rep(branch=PLUS, sc: StructureConstants | None = None, backend: str = EXACT) -> GeneratorSet:
    branch = parse_branch(branch)
    sc = _sc(backend, sc)
    return GeneratorSet("9", j9(sc), k9(branch, sc), branch=branch,
                        time_scale=frame(sc.backend).scale_label)


def lorentz9_residuals(branch=PLUS, sc: StructureConstants | None = None,
                       backend: str = EXACT) -> dict:
    sc = _sc(backend, sc)
    return lorentz_residuals(nine_rep(branch, sc), sc)


def extraction_vs_closed_form(branch=PLUS, sc: StructureConstants | None = None,
                              backend: str = EXACT, alpha=1) -> dict:
    """Max entrywise difference between extracted adjoint actions and the closed forms.

    The momentum set is built from the Gell-Mann matrices; ``sc`` only feeds
    the closed forms, so a corrupted tensor shows up here.
    """
    branch = parse_branch(branch)
    sc = _sc(backend, sc)
    b = sc.backend
    mset = momentum_matrices(branch, alpha, 1, b)
    six = mset.six_rep()
    rep = nine_rep(branch, sc)
    out = {"J": [], "K": []}
    for j in range(N_GEN):
        aj = extract_adjoint_action(mset, six.J[j], f"J^{j + 1}").coeff
        ak = extract_adjoint_action(mset, six.K[j], f"K^{j + 1}").coeff
        out["J"].append(aj - rep.J[j])
        out["K"].append(ak - rep.K[j])
    return out


def ten_rep(branch=PLUS, sc: StructureConstants | None = None, backend: str = EXACT) -> GeneratorSet:
    """Generators of the homogeneous 10x10 device acting on ``(x, 1)``.

    ``J`` and ``K`` sit in the upper-left 9x9 block; ``P^mu`` is the nilpotent
    unit matrix ``E_{mu,10}`` (times ``s^2`` for mu = 9 in the exact frame),
    so ``exp(a_mu P^mu)`` translates ``x`` by ``a``.
    """
    nine = nine_rep(branch, sc, backend)
    b = nine.backend
    fr = frame(b)
    embed = lambda m: ComplexMatrix.block([[m, None], [None, ComplexMatrix.zeros(1, 1, b)]])
    P = tuple(
        ComplexMatrix.unit(10, 10, mu, 9, fr.s_squared if mu == N_EXT - 1 else 1, b)
        for mu in range(N_EXT))
    return GeneratorSet("10", tuple(embed(m) for m in nine.J), tuple(embed(m) for m in nine.K),
                        P, branch=nine.branch, momentum=True, time_scale=nine.time_scale,
                        meta={"pk_sign": -1})


def poincare_pattern_residuals(rep: GeneratorSet, sc: StructureConstants, pk_sign: int = 1,
                               d_sign: int | None = None, alpha=1) -> dict:
    """Residuals of the SU(3)-Poincare pattern on any rep carrying J, K, P.

    ``[P^i, K^j] = pk_sign * (-i)(k_lo alpha delta^ij P9 + d_sign d^ijk P^k)`` and
    ``[alpha P9, K^j] = pk_sign * (-i k_hi) P^j``; ``d_sign`` defaults to the
    rep's branch.
    """
    b = rep.backend
    fr = frame(b)
    ii = i_times(b)
    alpha = scalar(alpha, b)
    d_sign = rep.branch if d_sign is None else d_sign
    P, K, J = rep.V, rep.K, rep.J
    out = lorentz_residuals(rep, sc)
    out.update({"PK": [], "P9K": [], "PJ": [], "PP": []})
    for i in range(N_GEN):
        for j in range(N_GEN):
            rhs = lincomb([d_sign * sc.d[i, j, k] for k in range(N_GEN)], P[:N_GEN])
            if i == j:
                rhs = rhs + P[8] * (fr.k_lo * alpha)
            out["PK"].append(commutator(P[i], K[j]) + rhs * (ii * pk_sign))
    for j in range(N_GEN):
        out["P9K"].append(commutator(P[8] * alpha, K[j]) + P[j] * (ii * fr.k_hi * pk_sign))
    for mu in range(N_EXT):
        for j in range(N_GEN):
            out["PJ"].append(commutator(P[mu], J[j]) - lincomb(
                [ii * sc.f[mu, j, k] for k in range(N_EXT)], P))
        for nu in range(N_EXT):
            out["PP"].append(commutator(P[mu], P[nu]))
    return out


def ten_rep_sign_report(branch=PLUS, sc: StructureConstants | None = None,
                        backend: str = EXACT) -> dict:
    """Which overall [P, K] sign and which sign of d make the 10-rep close.

    Returns the max [P, K] residual for each ``(pk_sign, d_sign)`` combination.
    """
    sc = _sc(backend, sc)
    ten = ten_rep(branch, sc)
    table = {}
    for pk in (1, -1):
        for ds in (1, -1):
            r = poincare_pattern_residuals(ten, sc, pk, ds)
            table[(pk, ds)] = max(m.max_abs() for key in ("PK", "P9K") for m in r[key])
    holding = [k for k, v in table.items() if v == 0.0]
    return {"branch": ten.branch, "residuals": table, "holding": holding}


def k9_branch_exchange_residual(sc: StructureConstants | None = None, backend: str = EXACT) -> list:
    """``K^+`` with d negated minus ``K^-``; zero when the reps swap under d -> -d."""
    sc = _sc(backend, sc)
    neg = type(sc)(sc.f, -sc.d, sc.backend)
    return [a - b for a, b in zip(k9(PLUS, neg), k9(MINUS, sc))]

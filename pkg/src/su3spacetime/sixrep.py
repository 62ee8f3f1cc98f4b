"""Triplet vector/boost matrices and the 3+3 = 6 dimensional construction.

In the exact backend every time-like constant is stored in the sqrt6 time
frame (see :class:`~su3spacetime.numerics.TimeFrame`): ``c9_plus`` and
``c9_minus`` hold ``sqrt6 * c9`` and the ninth vector matrix holds
``sqrt6 * V9``.  All relations below are written with the frame constants
``k_lo = sqrt(2/3)/s`` and ``k_hi = sqrt(2/3)*s``, which reduce to the
literal ``sqrt(2/3)`` in the float backend.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .numerics import (
    ALGEBRAIC_TOL, EXACT, FLOAT, AlgebraError, ComplexMatrix, ExactScalar,
    commutator, frame, lincomb, scalar, solve,
)
from .su3 import N_EXT, N_GEN, GeneratorSet, StructureConstants, gellmann, i_times, structure_constants

PLUS, MINUS = 1, -1


def parse_branch(branch) -> int:
    if branch in (1, "+", "plus", "+1"):
        return PLUS
    if branch in (-1, "-", "minus", "-1"):
        return MINUS
    raise ValueError(f"branch must be + or -, got {branch!r}")


def branch_symbol(branch: int) -> str:
    return "+" if branch == PLUS else "-"


@dataclass(frozen=True)
class SixRepConfig:
    c_plus: object
    c9_plus: object
    c_minus: object
    c9_minus: object
    alpha: object
    beta: object
    backend: str = EXACT

    def __post_init__(self):
        for name in ("c_plus", "c9_plus", "c_minus", "c9_minus", "alpha", "beta"):
            object.__setattr__(self, name, scalar(getattr(self, name), self.backend))

    @property
    def branch(self) -> int | None:
        """The momentum branch this config solves, or None."""
        if not self.alpha:
            return None
        unit = frame(self.backend).p9_unit
        if (_same(self.beta, 1) and self.c_plus and not self.c_minus and not self.c9_minus
                and _same(self.c9_plus, self.c_plus * unit / self.alpha)):
            return PLUS
        if (_same(self.beta, -1) and self.c_minus and not self.c_plus and not self.c9_plus
                and _same(self.c9_minus, -(self.c_minus * unit) / self.alpha)):
            return MINUS
        return None


def _same(a, b) -> bool:
    if isinstance(a, ExactScalar):
        return a == b
    return abs(a - b) <= ALGEBRAIC_TOL * max(1.0, abs(b))


@dataclass(frozen=True)
class MomentumSet:
    """Nine commuting 6x6 momentum matrices of one branch.

    ``base`` is the 3x3 family the 6-rep was built from (Gell-Mann by default).
    """

    branch: int
    P: tuple
    alpha: object
    c: object = 1
    base: GeneratorSet | None = None

    @property
    def backend(self) -> str:
        return self.P[0].backend

    def config(self) -> SixRepConfig:
        plus, minus = solve_branch_constraints(self.alpha, self.c, self.backend)
        return plus if self.branch == PLUS else minus

    def six_rep(self) -> GeneratorSet:
        return build_six(self.config(), self.base)

    def p(self, mu: int) -> ComplexMatrix:
        return self.P[mu - 1]


def _default_sc(backend: str, sc: StructureConstants | None) -> StructureConstants:
    return structure_constants(backend) if sc is None else sc


def triplet_vk(c=1, c9=1, backend: str = EXACT) -> GeneratorSet:
    """``V^i = c J^i``, ``V^9 = c9 * 1``, ``K^i = +i J^i`` in the 3-rep."""
    J = gellmann(backend).J
    c, c9 = scalar(c, backend), scalar(c9, backend)
    ii = i_times(backend)
    V = tuple(m * c for m in J) + (ComplexMatrix.identity(3, backend) * c9,)
    K = tuple(m * ii for m in J)
    return GeneratorSet("3", J, K, V)


def _vj_residuals(gens: GeneratorSet, sc: StructureConstants):
    """``[V^mu, J^j] - i f^{mu j k} V^k`` over mu in 1..9, j in 1..8."""
    ii = i_times(gens.backend)
    for mu in range(N_EXT):
        for j in range(N_GEN):
            yield commutator(gens.V[mu], gens.J[j]) - lincomb(
                [ii * sc.f[mu, j, k] for k in range(N_EXT)], gens.V)


def lorentz_residuals(gens: GeneratorSet, sc: StructureConstants):
    """Residual matrices of the [J,J], [J,K], [K,K] relations, keyed by relation."""
    ii = i_times(gens.backend)
    out = {"JJ": [], "JK": [], "KK": []}
    for i in range(N_GEN):
        for j in range(N_GEN):
            fk = [ii * sc.f[i, j, k] for k in range(N_GEN)]
            out["JJ"].append(commutator(gens.J[i], gens.J[j]) - lincomb(fk, gens.J))
            out["JK"].append(commutator(gens.J[i], gens.K[j]) - lincomb(fk, gens.K))
            out["KK"].append(commutator(gens.K[i], gens.K[j]) + lincomb(fk, gens.J))
    return out


def vj_residuals(gens: GeneratorSet, sc: StructureConstants | None = None) -> list[ComplexMatrix]:
    return list(_vj_residuals(gens, _default_sc(gens.backend, sc)))


def triplet_failure_check(gens: GeneratorSet) -> dict:
    """Show ``[V^i, K^j]`` is antisymmetric in ``ij`` for the 3-rep.

    An antisymmetric array cannot equal a nonzero ij-symmetric combination
    ``k^{ij mu} V^mu``, so the 3-rep cannot host the required relation.
    """
    worst = 0.0
    exact_zero = True
    for i in range(N_GEN):
        for j in range(i, N_GEN):
            sym = commutator(gens.V[i], gens.K[j]) + commutator(gens.V[j], gens.K[i])
            worst = max(worst, sym.max_abs())
            exact_zero = exact_zero and sym.is_zero()
    nine = max(commutator(gens.V[8], k).max_abs() for k in gens.K)
    return {"max_symmetric_part": worst, "exact_zero": exact_zero and gens.backend == EXACT,
            "max_v9_k": nine}


def build_six(cfg: SixRepConfig, base: GeneratorSet | None = None) -> GeneratorSet:
    """``J = diag(J3, J3)``, ``K = diag(+iJ3, -iJ3)``, ``V`` off-diagonal.

    ``base`` swaps in another 3x3 family (the antitriplet) for ``J3``.
    """
    b = cfg.backend
    J3 = (base or gellmann(b)).J
    ii = i_times(b)
    eye = ComplexMatrix.identity(3, b)
    J = tuple(ComplexMatrix.block([[m, None], [None, m]]) for m in J3)
    K = tuple(ComplexMatrix.block([[m * ii, None], [None, m * (-ii)]]) for m in J3)
    upper = [m * cfg.c_plus for m in J3] + [eye * cfg.c9_plus]
    lower = [m * cfg.c_minus for m in J3] + [eye * cfg.c9_minus]
    z = ComplexMatrix.zeros(3, 3, b)
    V = tuple(ComplexMatrix.block([[z, u], [w, z]]) for u, w in zip(upper, lower))
    branch = cfg.branch
    momentum = branch is not None
    return GeneratorSet("6", J, K, V, branch=branch, momentum=momentum,
                        time_scale=frame(b).scale_label, meta={"config": cfg})


def delta_mismatch_pair(cfg: SixRepConfig, sc: StructureConstants | None = None):
    """Delta^{ij} from the closed form and from the commutator residual.

    Returns two 8x8 nested lists of 6x6 matrices ``(closed, residual)`` where
    ``residual = -i([V^i, K^j] + i k_lo alpha delta V9 + i beta d^{ijk} V^k)``.
    """
    b = cfg.backend
    sc = _default_sc(b, sc)
    fr = frame(b)
    six = build_six(cfg)
    J3 = gellmann(b).J
    ii = i_times(b)
    third = ExactScalar(Fraction(1, 3)) if b == EXACT else 1.0 / 3.0
    one = scalar(1, b)
    eye = ComplexMatrix.identity(3, b)
    z = ComplexMatrix.zeros(3, 3, b)
    # time block: (sqrt6 alpha c9 -+ c)/3, written with the frame's sqrt6/s
    diag_up = eye * ((fr.root6_lo * cfg.alpha * cfg.c9_plus - cfg.c_plus) * third)
    diag_dn = eye * ((fr.root6_lo * cfg.alpha * cfg.c9_minus + cfg.c_minus) * third)
    closed, resid = [], []
    for i in range(N_GEN):
        crow, rrow = [], []
        for j in range(N_GEN):
            dk = [sc.d[i, j, k] for k in range(N_GEN)]
            up = lincomb(dk, J3) * (cfg.c_plus * (cfg.beta - one))
            dn = lincomb(dk, J3) * (cfg.c_minus * (cfg.beta + one))
            if i == j:
                up, dn = up + diag_up, dn + diag_dn
            crow.append(ComplexMatrix.block([[z, up], [dn, z]]))
            r = commutator(six.V[i], six.K[j]) + lincomb(
                [ii * cfg.beta * v for v in dk], six.V[:N_GEN])
            if i == j:
                r = r + six.V[8] * (ii * fr.k_lo * cfg.alpha)
            rrow.append(r * (-ii))
        closed.append(crow)
        resid.append(rrow)
    return closed, resid


def delta_mismatch(cfg: SixRepConfig, sc: StructureConstants | None = None,
                   tol: float = ALGEBRAIC_TOL):
    """Closed-form Delta^{ij}, after confirming it equals the commutator residual."""
    closed, resid = delta_mismatch_pair(cfg, sc)
    for crow, rrow in zip(closed, resid):
        for c, r in zip(crow, rrow):
            if not (c - r).is_zero(tol):
                raise AlgebraError("closed-form Delta disagrees with [V, K] residual")
    return closed


def solve_branch_constraints(alpha=1, c=1, backend: str = EXACT) -> tuple[SixRepConfig, SixRepConfig]:
    """The beta = +1 and beta = -1 solutions of Delta = 0 for nonzero ``alpha``.

    ``c`` is the free scale (``c_plus`` for the + branch, ``c_minus`` for -).
    """
    alpha = scalar(alpha, backend)
    if not alpha:
        raise ValueError("alpha must be nonzero: the branch solutions divide by alpha")
    c = scalar(c, backend)
    unit = frame(backend).p9_unit
    plus = SixRepConfig(c, c * unit / alpha, 0, 0, alpha, 1, backend)
    minus = SixRepConfig(0, 0, c, -(c * unit) / alpha, alpha, -1, backend)
    return plus, minus


def momentum_matrices(branch=PLUS, alpha=1, c=1, backend: str = EXACT,
                      base: GeneratorSet | None = None) -> MomentumSet:
    branch = parse_branch(branch)
    plus, minus = solve_branch_constraints(alpha, c, backend)
    six = build_six(plus if branch == PLUS else minus, base)
    return MomentumSet(branch, six.V, scalar(alpha, backend), scalar(c, backend), base)


def momentum_rep(branch=PLUS, alpha=1, c=1, backend: str = EXACT,
                 base: GeneratorSet | None = None) -> GeneratorSet:
    """6-rep generator set whose vector family is the momentum set of ``branch``."""
    return momentum_matrices(branch, alpha, c, backend, base).six_rep()


def _momentum_block(P: ComplexMatrix, branch: int) -> ComplexMatrix:
    return P.sub(0, 3, 3, 6) if branch == PLUS else P.sub(3, 6, 0, 3)


def span_coefficients(mset: MomentumSet, M: ComplexMatrix, tol: float = ALGEBRAIC_TOL):
    """Coefficients ``a`` with ``M = sum_nu a[nu] P^nu`` and the reconstruction residual.

    Solves the 9-unknown system on the nonzero 3x3 block, where the nine
    momentum blocks are linearly independent, then rebuilds the full matrix.
    """
    b = mset.backend
    cols = [_momentum_block(P, mset.branch).array.ravel() for P in mset.P]
    A = np.array(cols, dtype=object if b == EXACT else complex).T
    rhs = _momentum_block(M, mset.branch).array.ravel()
    a = solve(A, rhs, b, tol)
    rebuilt = lincomb(list(a), mset.P)
    return a, M - rebuilt


def poincare6_residuals(mset: MomentumSet, sc: StructureConstants | None = None) -> dict:
    """Residual matrices for every relation of the 6-rep SU(3)-Poincare algebra.

    With ``P9`` stored as ``s * P9`` the relations read
    ``[P^i, K^j] = -i(k_lo alpha delta^ij P9 + branch d^ijk P^k)`` and
    ``[alpha P9, K^j] = -i k_hi P^j``.
    """
    b = mset.backend
    sc = _default_sc(b, sc)
    fr = frame(b)
    ii = i_times(b)
    six = mset.six_rep()
    P = mset.P
    out = lorentz_residuals(six, sc)
    out.update({"PK": [], "P9K": [], "PJ": [], "PP": []})
    for i in range(N_GEN):
        for j in range(N_GEN):
            rhs = lincomb([mset.branch * sc.d[i, j, k] for k in range(N_GEN)], P[:N_GEN])
            if i == j:
                rhs = rhs + P[8] * (fr.k_lo * mset.alpha)
            out["PK"].append(commutator(P[i], six.K[j]) + rhs * ii)
    for j in range(N_GEN):
        out["P9K"].append(commutator(P[8] * mset.alpha, six.K[j]) + P[j] * (ii * fr.k_hi))
    for mu in range(N_EXT):
        for j in range(N_GEN):
            out["PJ"].append(commutator(P[mu], six.J[j]) - lincomb(
                [ii * sc.f[mu, j, k] for k in range(N_EXT)], P))
        for nu in range(N_EXT):
            out["PP"].append(commutator(P[mu], P[nu]))
    return out


def ideal_membership_residuals(mset: MomentumSet, tol: float = ALGEBRAIC_TOL) -> list[ComplexMatrix]:
    """Residuals of writing ``[P^mu, X]`` in span{P} for X in {J, K, P}."""
    six = mset.six_rep()
    out = []
    for P in mset.P:
        for X in (*six.J, *six.K, *mset.P):
            _, r = span_coefficients(mset, commutator(P, X), tol)
            out.append(r)
    return out


def pk_coefficients(mset: MomentumSet, tol: float = ALGEBRAIC_TOL) -> np.ndarray:
    """Tensor ``C[i, j, nu]`` with ``[P^i, K^j] = C[i, j, nu] P^nu`` (0-based)."""
    six = mset.six_rep()
    C = np.empty((N_GEN, N_GEN, N_EXT), dtype=object if mset.backend == EXACT else complex)
    for i in range(N_GEN):
        for j in range(N_GEN):
            a, r = span_coefficients(mset, commutator(mset.P[i], six.K[j]), tol)
            if not r.is_zero(tol):
                raise AlgebraError("[P, K] left the momentum span")
            C[i, j, :] = a
    return C


def mixed_momentum_report(alpha=1, backend: str = EXACT) -> dict:
    """Informational only: sizes of the cross commutators [P+^mu, P-^nu]."""
    pp = momentum_matrices(PLUS, alpha, 1, backend)
    pm = momentum_matrices(MINUS, alpha, 1, backend)
    norms = [commutator(a, b).max_abs() for a in pp.P for b in pm.P]
    return {"max_abs": max(norms), "nonzero_pairs": sum(1 for n in norms if n)}

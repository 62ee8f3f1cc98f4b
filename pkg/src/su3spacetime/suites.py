"""Verification suites: every relation and invariance claim as a named Check.

Each suite is a list of check groups.  A group that raises is recorded as a
failed check instead of aborting the run, so a corrupted structure constant
always produces a report and a nonzero exit code.
"""
from __future__ import annotations

import time
import zlib
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import invariants as inv
from .ninerep import (
    extraction_vs_closed_form, j9, k9, k9_branch_exchange_residual, lorentz9_residuals,
    poincare_pattern_residuals, ten_rep, ten_rep_sign_report,
)
from .numerics import (
    ALGEBRAIC_TOL, EXACT, FLOAT, ComplexMatrix, ExactScalar, check_backend, commutator, frame,
)
from .report import ABOVE, Check, VerificationReport, make_check
from .sixrep import (
    MINUS, PLUS, SixRepConfig, branch_symbol, build_six, delta_mismatch_pair, ideal_membership_residuals,
    lorentz_residuals, mixed_momentum_report, momentum_matrices, momentum_rep, pk_coefficients,
    poincare6_residuals, solve_branch_constraints, triplet_failure_check, triplet_vk, vj_residuals,
)
from .su3 import (
    N_EXT, N_GEN, StructureConstants, antitriplet, antisymmetry_residual, closure_residuals,
    extract_d, extract_f, gellmann, hermitian_traceless_residual, structure_constants,
    symmetry_residual, tensor_max_abs, time_slot_residual, verify_fd_identities,
)
from .transforms import (
    TransformParams, intertwine_residual, lorentz9, poincare10, random_params,
)

SUITE_NAMES = ("fundamental", "sixrep", "ninerep", "invariants", "exercises")
ALL = "all"
DEFAULT_SEED = 20240917

# pinned tolerances of the numerical (exponential-based) checks
FD_FLOAT_TOL = 1e-13
EXP_SANITY_TOL = 1e-10
ROT_QUAD_TOL = 1e-10
ROT_CUBIC_TOL = 1e-9
ROT_TIME_TOL = 1e-12
BOOST_CUBIC_TOL = 1e-8
CROSS_BRANCH_MIN = 1e-4
RATIO_TARGET, RATIO_HALF_WIDTH = 4.0, 0.4
EX1_TOL = 1e-10
EX2_TOL = 1e-9
EX4_TOL = 1e-9

N_EXP_DRAWS = 200
N_INVARIANT_PROBES = 500
N_DEFECT_PROBES = 100
N_EX1_DRAWS = 100
N_EX2_DRAWS = 100
N_EX4_DRAWS = 50
DEFECT_STEP = 1e-3

BRANCHES = (PLUS, MINUS)


def _bname(branch: int) -> str:
    return "plus" if branch == PLUS else "minus"


@dataclass
class SuiteContext:
    backend: str
    seed: int
    sc: StructureConstants
    tolerance: float | None = None

    @property
    def sc_float(self) -> StructureConstants:
        return self.sc.to_float()

    @property
    def exact(self) -> bool:
        return self.backend == EXACT

    def rng(self, name: str) -> np.random.Generator:
        """Independent stream per check group, stable under reordering."""
        return np.random.default_rng([self.seed, zlib.crc32(name.encode())])

    def tol(self, default: float = ALGEBRAIC_TOL) -> float:
        return default if self.tolerance is None else self.tolerance

    def algebraic(self, id: str, ref: str, suite: str, residual, default_tol: float = ALGEBRAIC_TOL,
                  **detail) -> Check:
        """Exact-zero check in the exact backend, tolerance check in float."""
        return make_check(id, ref, suite, self.backend, residual,
                          0.0 if self.exact else self.tol(default_tol), exact=self.exact, **detail)

    def numeric(self, id: str, ref: str, suite: str, residual, tol: float, **detail) -> Check:
        return make_check(id, ref, suite, FLOAT, residual, tol, exact=False, **detail)


def _mats_residual(mats) -> float:
    return max((m.max_abs() for m in mats), default=0.0)


_REGISTRY: dict[str, list] = {name: [] for name in SUITE_NAMES}


def _group(suite: str):
    def deco(fn):
        _REGISTRY[suite].append(fn)
        return fn
    return deco


# ---------------------------------------------------------------- fundamental

@_group("fundamental")
def _triplet_closure(ctx: SuiteContext):
    s = "fundamental"
    reps = (("3", gellmann(ctx.backend), 1, "triplet"), ("3bar", antitriplet(ctx.backend), -1, "antitriplet"))
    for tag, gens, d_sign, label in reps:
        comm, anti = [], []
        for _, _, c, a in closure_residuals(gens, ctx.sc, d_sign):
            comm.append(c)
            anti.append(a)
        sign = "+" if d_sign > 0 else "-"
        yield ctx.algebraic(f"{s}.commutator.{tag}", f"[J^i, J^j] = i f^ijk J^k ({label}, 64 pairs)",
                            s, _mats_residual(comm), pairs=len(comm))
        yield ctx.algebraic(f"{s}.anticommutator.{tag}",
                            f"{{J^i, J^j}} = delta^ij/3 {sign} d^ijk J^k ({label}, 64 pairs)",
                            s, _mats_residual(anti), pairs=len(anti))


@_group("fundamental")
def _generator_shape(ctx: SuiteContext):
    s = "fundamental"
    yield ctx.algebraic(f"{s}.hermitian_traceless", "J^i hermitian and traceless", s,
                        hermitian_traceless_residual(gellmann(ctx.backend)))
    anti = [a + m.conj() for a, m in zip(antitriplet(ctx.backend).J, gellmann(ctx.backend).J)]
    yield ctx.algebraic(f"{s}.antitriplet_definition", "Jbar^i = -(J^i)^*", s, _mats_residual(anti))


@_group("fundamental")
def _tensor_shape(ctx: SuiteContext):
    s = "fundamental"
    sc = ctx.sc
    yield ctx.algebraic(f"{s}.f_antisymmetric", "f totally antisymmetric", s, antisymmetry_residual(sc.f))
    yield ctx.algebraic(f"{s}.d_symmetric", "d totally symmetric", s, symmetry_residual(sc.d))
    yield ctx.algebraic(f"{s}.time_slots_vanish", "f and d vanish when any index is 9", s,
                        time_slot_residual(sc))
    g = gellmann(ctx.backend)
    yield ctx.algebraic(f"{s}.f_matches_trace_formula", "f^ijk = -2i Tr([J^i, J^j] J^k)", s,
                        tensor_max_abs(sc.f[:8, :8, :8] - extract_f(g)[:8, :8, :8]))
    yield ctx.algebraic(f"{s}.d_matches_trace_formula", "d^ijk = 2 Tr({J^i, J^j} J^k)", s,
                        tensor_max_abs(sc.d[:8, :8, :8] - extract_d(g)[:8, :8, :8]))
    if ctx.exact:
        known = [(sc.fval(1, 2, 3), ExactScalar(1)), (sc.fval(4, 5, 8), ExactScalar.sqrt3(Fraction(1, 2))),
                 (sc.dval(8, 8, 8), -ExactScalar.sqrt3(Fraction(1, 3))),
                 (sc.dval(1, 1, 8), ExactScalar.sqrt3(Fraction(1, 3)))]
        worst = max(abs(a - b) for a, b in known)
    else:
        r3 = np.sqrt(3.0)
        known = [(sc.fval(1, 2, 3), 1.0), (sc.fval(4, 5, 8), r3 / 2),
                 (sc.dval(8, 8, 8), -1 / r3), (sc.dval(1, 1, 8), 1 / r3)]
        worst = max(abs(a - b) for a, b in known)
    yield ctx.algebraic(f"{s}.tabulated_values", "f123 = 1, f458 = sqrt3/2, d888 = -1/sqrt3, d118 = 1/sqrt3",
                        s, worst)


@_group("fundamental")
def _fd_identities(ctx: SuiteContext):
    s = "fundamental"
    refs = {"jacobi_fff": "f^ijs f^skl + f^kjs f^sli + f^iks f^slj = 0",
            "mixed_ffd": "f^ijs d^skl + f^ljs d^ski + f^kjs d^sil = 0",
            "dd_delta": "d^ijs d^skl + d^ljs d^ski + d^lis d^skj = (delta^ki delta^lj + delta^kl delta^ij + delta^kj delta^il)/3"}
    for name, r in verify_fd_identities(ctx.sc).items():
        yield ctx.algebraic(f"{s}.fd_identity.{name}", refs[name], s, float(r["max_residual"]),
                            default_tol=FD_FLOAT_TOL, cases=r["cases"])


# ---------------------------------------------------------------- sixrep

@_group("sixrep")
def _triplet(ctx: SuiteContext):
    s = "sixrep"
    gens = triplet_vk(1, 1, ctx.backend)
    yield ctx.algebraic(f"{s}.triplet.vj", "[V^mu, J^j] = i f^{mu j k} V^k (triplet)", s,
                        _mats_residual(vj_residuals(gens, ctx.sc)))
    lr = lorentz_residuals(gens, ctx.sc)
    yield ctx.algebraic(f"{s}.triplet.lorentz", "[J,J], [J,K], [K,K] relations (triplet, K = iJ)", s,
                        _mats_residual(lr["JJ"] + lr["JK"] + lr["KK"]))
    fail = triplet_failure_check(gens)
    yield ctx.algebraic(f"{s}.triplet.vk_symmetric_part_zero",
                        "[V^i, K^j] + [V^j, K^i] = 0: triplet cannot carry a symmetric [V, K]", s,
                        fail["max_symmetric_part"], max_v9_k=fail["max_v9_k"])


def _violating(backend: str) -> SixRepConfig:
    return SixRepConfig(1, 0, 1, 0, 1, 1, backend)


def _sweep_configs(backend: str):
    third = Fraction(1, 3)
    yield "plus_c1", SixRepConfig(1, 1, 0, 0, 1, 1, backend), True
    yield "minus_c1", SixRepConfig(0, 0, 1, -1, 1, -1, backend), True
    yield "plus_c2_alpha_half", SixRepConfig(2, 4, 0, 0, Fraction(1, 2), 1, backend), True
    yield "degenerate_no_v", SixRepConfig(0, 0, 0, 0, 1, third, backend), True
    yield "violating", _violating(backend), False
    yield "wrong_time_scale", SixRepConfig(1, 2, 0, 0, 1, 1, backend), False
    yield "wrong_beta", SixRepConfig(0, 0, 1, -1, 1, 1, backend), False


def _frame_config(cfg: SixRepConfig) -> SixRepConfig:
    """Float configs use literal c9 values; exact configs store sqrt6 * c9."""
    if cfg.backend == EXACT:
        return cfg
    r6 = np.sqrt(6.0)
    return SixRepConfig(cfg.c_plus, cfg.c9_plus / r6, cfg.c_minus, cfg.c9_minus / r6,
                        cfg.alpha, cfg.beta, FLOAT)


@_group("sixrep")
def _delta(ctx: SuiteContext):
    s = "sixrep"
    b = ctx.backend
    worst_consistency = 0.0
    mismatches = []
    worst_antisym = 0.0
    violating_size = 0.0
    for name, cfg, expect_zero in _sweep_configs(b):
        cfg = _frame_config(cfg)
        closed, resid = delta_mismatch_pair(cfg, ctx.sc)
        flat_c = [m for row in closed for m in row]
        flat_r = [m for row in resid for m in row]
        worst_consistency = max(worst_consistency, _mats_residual(c - r for c, r in zip(flat_c, flat_r)))
        size = _mats_residual(flat_c)
        is_zero = size == 0.0 if ctx.exact else size <= ctx.tol()
        if is_zero != expect_zero:
            mismatches.append(name)
        if name == "violating":
            violating_size = size
        six = build_six(cfg)
        for i in range(N_GEN):
            for j in range(i + 1, N_GEN):
                a = commutator(six.V[i], six.K[j]) - commutator(six.V[j], six.K[i])
                worst_antisym = max(worst_antisym, a.max_abs())
    yield ctx.algebraic(f"{s}.delta.closed_form_matches_commutator",
                        "closed-form Delta^ij equals -i([V^i,K^j] + i k alpha delta V9 + i beta d V)", s,
                        worst_consistency)
    for branch in BRANCHES:
        plus, minus = solve_branch_constraints(1, 1, b)
        cfg = plus if branch == PLUS else minus
        closed, _ = delta_mismatch_pair(cfg, ctx.sc)
        yield ctx.algebraic(f"{s}.delta.zero_{_bname(branch)}",
                            f"Delta^ij = 0 on the beta = {branch_symbol(branch)}1 branch solution", s,
                            _mats_residual(m for row in closed for m in row))
    yield make_check(f"{s}.delta.nonzero_violating",
                     "Delta^ij != 0 for c+ = c- = 1, c9 = 0, alpha = beta = 1", s, b,
                     violating_size, 0.0, exact=False, comparison=ABOVE)
    yield make_check(f"{s}.delta.zero_iff_branch_solution",
                     "Delta = 0 exactly for branch solutions and the c+ = c- = 0 case", s, b,
                     float(len(mismatches)), 0.0, exact=True, mismatched=mismatches)
    yield ctx.algebraic(f"{s}.six.vk_ij_symmetric", "[V^i, K^j] symmetric in ij for every sweep config", s,
                        worst_antisym)


_P6_REFS = {
    "JJ": "[J^i, J^j] = i f^ijk J^k",
    "JK": "[J^i, K^j] = i f^ijk K^k",
    "KK": "[K^i, K^j] = -i f^ijk J^k",
    "PK": "[P^i, K^j] = -i(sqrt(2/3) alpha delta^ij P^9 +- d^ijk P^k)",
    "P9K": "[alpha P^9, K^j] = -i sqrt(2/3) P^j",
    "PJ": "[P^mu, J^j] = i f^{mu j k} P^k",
    "PP": "[P^mu, P^nu] = 0",
}


@_group("sixrep")
def _poincare6(ctx: SuiteContext):
    s = "sixrep"
    for branch in BRANCHES:
        mset = momentum_matrices(branch, 1, 1, ctx.backend)
        res = poincare6_residuals(mset, ctx.sc)
        for key, ref in _P6_REFS.items():
            yield ctx.algebraic(f"{s}.poincare.{_bname(branch)}.{key}",
                                f"{ref} (6-rep, {branch_symbol(branch)} branch, alpha = 1)", s,
                                _mats_residual(res[key]), relations=len(res[key]))
        yield ctx.algebraic(f"{s}.ideal.{_bname(branch)}",
                            f"[P^mu, X] in span(P) for X in J, K, P ({branch_symbol(branch)} branch)", s,
                            _mats_residual(ideal_membership_residuals(mset, ctx.tol())))
        six = mset.six_rep()
        outside = []
        for X in (*six.J, *six.K):
            for P in mset.P:
                M = (X @ P).array
                mask = np.ones((6, 6), dtype=bool)
                if branch == PLUS:
                    mask[0:3, 3:6] = False
                else:
                    mask[3:6, 0:3] = False
                outside.append(max((abs(v) for v in M[mask].ravel()), default=0.0))
        yield ctx.algebraic(f"{s}.block_pattern.{_bname(branch)}",
                            "J P and K P keep the momentum block pattern", s, float(max(outside)))


@_group("sixrep")
def _scale_and_sign_sweep(ctx: SuiteContext):
    s = "sixrep"
    for branch in BRANCHES:
        worst = 0.0
        for c in (Fraction(1, 2), 2, -1):
            c = c if ctx.exact else float(c)
            res = poincare6_residuals(momentum_matrices(branch, 1, c, ctx.backend), ctx.sc)
            worst = max(worst, max(_mats_residual(v) for v in res.values()))
        yield ctx.algebraic(f"{s}.c_sweep.{_bname(branch)}",
                            "all momentum relations hold for c in {1/2, 2, -1}", s, worst)
        neg = momentum_matrices(branch, -1, 1, ctx.backend)
        res = poincare6_residuals(neg, ctx.sc)
        yield ctx.algebraic(f"{s}.alpha_negative.{_bname(branch)}",
                            "all momentum relations hold for alpha = -1", s,
                            max(_mats_residual(v) for v in res.values()))
        pos = momentum_matrices(branch, 1, 1, ctx.backend)
        flip = [a - b for a, b in zip(pos.P[:N_GEN], neg.P[:N_GEN])] + [pos.P[8] + neg.P[8]]
        yield ctx.algebraic(f"{s}.alpha_time_flip.{_bname(branch)}",
                            "alpha -> -alpha flips P^9 and fixes P^i", s, _mats_residual(flip))


def _predicted_pk(sc: StructureConstants, branch: int, backend: str) -> np.ndarray:
    fr = frame(backend)
    mi = -(ExactScalar(0, 0, 1) if backend == EXACT else 1j)
    C = np.empty((N_GEN, N_GEN, N_EXT), dtype=object if backend == EXACT else complex)
    for i in range(N_GEN):
        for j in range(N_GEN):
            for k in range(N_GEN):
                C[i, j, k] = mi * branch * sc.d[i, j, k]
            C[i, j, 8] = mi * fr.k_lo if i == j else mi * 0
    return C


@_group("sixrep")
def _branch_exchange(ctx: SuiteContext):
    s = "sixrep"
    b = ctx.backend
    neg = StructureConstants(ctx.sc.f, -ctx.sc.d, ctx.sc.backend)
    cp = pk_coefficients(momentum_matrices(PLUS, 1, 1, b), ctx.tol())
    cm = pk_coefficients(momentum_matrices(MINUS, 1, 1, b), ctx.tol())
    yield ctx.algebraic(f"{s}.pk_tensor.plus", "[P+, K] coefficients equal -i(k delta, +d)", s,
                        tensor_max_abs(cp - _predicted_pk(ctx.sc, PLUS, b)))
    yield ctx.algebraic(f"{s}.pk_tensor.minus_is_plus_with_d_negated",
                        "[P-, K] coefficients equal the + branch ones with d -> -d", s,
                        tensor_max_abs(cm - _predicted_pk(neg, PLUS, b)))
    # the - branch built on the triplet equals the + branch built on the antitriplet, up to block swap
    bar = momentum_matrices(MINUS, 1, 1, b, base=antitriplet(b))
    res = poincare6_residuals(bar, neg)
    yield ctx.algebraic(f"{s}.antitriplet_base.minus",
                        "- branch on the antitriplet obeys the relations with d -> -d", s,
                        max(_mats_residual(v) for v in res.values()))


# ---------------------------------------------------------------- ninerep

_L9_REFS = {"JJ": "[J9^i, J9^j] = i f^ijk J9^k", "JK": "[J9^i, K9^j] = i f^ijk K9^k",
            "KK": "[K9^i, K9^j] = -i f^ijk J9^k"}


@_group("ninerep")
def _nine_lorentz(ctx: SuiteContext):
    s = "ninerep"
    for branch in BRANCHES:
        res = lorentz9_residuals(branch, ctx.sc)
        for key, ref in _L9_REFS.items():
            yield ctx.algebraic(f"{s}.lorentz.{_bname(branch)}.{key}",
                                f"{ref} ({branch_symbol(branch)} branch)", s, _mats_residual(res[key]))


@_group("ninerep")
def _nine_extraction(ctx: SuiteContext):
    s = "ninerep"
    for branch in BRANCHES:
        diff = extraction_vs_closed_form(branch, ctx.sc)
        yield ctx.algebraic(f"{s}.extraction.{_bname(branch)}.J",
                            "adjoint action of J6 on P equals (J9)_{mu nu} = i f^{mu i nu}", s,
                            _mats_residual(diff["J"]))
        yield ctx.algebraic(f"{s}.extraction.{_bname(branch)}.K",
                            "adjoint action of K6 on P equals the closed-form K9", s,
                            _mats_residual(diff["K"]))


@_group("ninerep")
def _nine_structure(ctx: SuiteContext):
    s = "ninerep"
    yield ctx.algebraic(f"{s}.branch_exchange", "K9+ with d -> -d equals K9-", s,
                        _mats_residual(k9_branch_exchange_residual(ctx.sc)))
    worst = 0.0
    ii = ExactScalar(0, 0, 1) if ctx.exact else 1j
    for m in j9(ctx.sc):
        r = m * ii
        worst = max(worst, _imag_part(r), (r + r.transpose()).max_abs())
    for branch in BRANCHES:
        for m in k9(branch, ctx.sc):
            r = m * ii
            worst = max(worst, _imag_part(r))
    yield ctx.algebraic(f"{s}.real_generators", "i J9 real antisymmetric, i K9 real", s, worst)


def _imag_part(M: ComplexMatrix) -> float:
    if M.backend == EXACT:
        return max((abs(v.imag) for v in M.array.ravel() if v.imag), default=0.0)
    return float(np.abs(M.array.imag).max())


# ---------------------------------------------------------------- invariants

def _bounded(rng: np.random.Generator, n: int, radius: float) -> np.ndarray:
    """Uniform direction, radius uniform in [0, radius]."""
    u = rng.normal(size=n)
    return u * (radius * rng.uniform() / np.linalg.norm(u))


@_group("invariants")
def _exponential_sanity(ctx: SuiteContext):
    s = "invariants"
    sc = ctx.sc_float
    rng = ctx.rng("exp_sanity")
    orth = fix = sym = pd = add = 0.0
    eye = np.eye(9)
    e9 = eye[8]
    for n in range(N_EXP_DRAWS):
        branch = BRANCHES[n % 2]
        R = lorentz9(TransformParams(theta=rng.uniform(-np.pi, np.pi, 8)), sc)
        orth = max(orth, np.abs(R.T @ R - eye).max())
        fix = max(fix, np.abs(R @ e9 - e9).max(), np.abs(R[8] - e9).max())
        B = lorentz9(TransformParams(phi=rng.uniform(-1, 1, 8), branch=branch), sc)
        sym = max(sym, np.abs(B - B.T).max())
        pd = max(pd, max(0.0, -np.linalg.eigvalsh((B + B.T) / 2).min()))
        u = rng.normal(size=8)
        u /= np.linalg.norm(u)
        a, b = rng.uniform(-1, 1, 2)
        lhs = lorentz9(TransformParams(phi=(a + b) * u, branch=branch), sc)
        rhs = lorentz9(TransformParams(phi=a * u, branch=branch), sc) @ lorentz9(
            TransformParams(phi=b * u, branch=branch), sc)
        add = max(add, np.abs(lhs - rhs).max())
    draws = {"draws": N_EXP_DRAWS}
    yield ctx.numeric(f"{s}.exp.rotation_orthogonal", "exp(i theta.J9) orthogonal", s, orth, EXP_SANITY_TOL, **draws)
    yield ctx.numeric(f"{s}.exp.rotation_fixes_time", "exp(i theta.J9) fixes the time axis", s, fix,
                      EXP_SANITY_TOL, **draws)
    yield ctx.numeric(f"{s}.exp.boost_symmetric", "exp(i phi.K9) symmetric", s, sym, EXP_SANITY_TOL, **draws)
    yield ctx.numeric(f"{s}.exp.boost_positive_definite", "exp(i phi.K9) positive definite", s, pd,
                      EXP_SANITY_TOL, **draws)
    yield ctx.numeric(f"{s}.exp.one_parameter_additivity", "B((a+b)u) = B(au) B(bu)", s, add,
                      EXP_SANITY_TOL, **draws)


@_group("invariants")
def _rotation_invariants(ctx: SuiteContext):
    s = "invariants"
    sc = ctx.sc_float
    rng = ctx.rng("rotation_invariants")
    quad = cub = tim = itv = 0.0
    for _ in range(N_INVARIANT_PROBES):
        x = rng.uniform(-1, 1, 9)
        R = lorentz9(TransformParams(theta=rng.uniform(-np.pi, np.pi, 8)), sc)
        y = R @ x
        n = np.linalg.norm(x)
        quad = max(quad, abs(inv.quad_space(y) - inv.quad_space(x)) / (1 + n ** 2))
        itv = max(itv, abs(inv.interval(y) - inv.interval(x)) / (1 + n ** 2))
        cub = max(cub, abs(inv.cubic_sym(y, sc) - inv.cubic_sym(x, sc)) / (1 + n ** 3))
        tim = max(tim, abs(y[8] - x[8]))
    probes = {"probes": N_INVARIANT_PROBES}
    yield ctx.numeric(f"{s}.rotation.quad_space", "sum (x^i)^2 invariant under rotations (per 1+|x|^2)",
                      s, quad, ROT_QUAD_TOL, **probes)
    yield ctx.numeric(f"{s}.rotation.cubic_sym", "d_ijk x^i x^j x^k invariant under rotations (per 1+|x|^3)",
                      s, cub, ROT_CUBIC_TOL, **probes)
    yield ctx.numeric(f"{s}.rotation.time", "x^9 invariant under rotations", s, tim, ROT_TIME_TOL, **probes)
    yield ctx.numeric(f"{s}.rotation.interval", "interval invariant under rotations (per 1+|x|^2)",
                      s, itv, ROT_QUAD_TOL, **probes)


@_group("invariants")
def _boost_invariants(ctx: SuiteContext):
    s = "invariants"
    sc = ctx.sc_float
    rng = ctx.rng("boost_invariants")
    matched = {PLUS: 0.0, MINUS: 0.0}
    cross = 0.0
    interval_drift = 0.0
    for n in range(N_INVARIANT_PROBES):
        branch = BRANCHES[n % 2]
        x = rng.uniform(-1, 1, 9)
        p = TransformParams(rng.uniform(-np.pi, np.pi, 8), _bounded(rng, 8, 2.0), branch=branch)
        y = lorentz9(p, sc) @ x
        scale = 1 + np.linalg.norm(x) ** 3
        d_same = abs(inv.cubic_invariant(y, branch, sc) - inv.cubic_invariant(x, branch, sc))
        matched[branch] = max(matched[branch], d_same / scale)
        cross = max(cross, abs(inv.cubic_invariant(y, -branch, sc) - inv.cubic_invariant(x, -branch, sc)))
        interval_drift = max(interval_drift, abs(inv.interval(y) - inv.interval(x)))
    for branch in BRANCHES:
        yield ctx.numeric(f"{s}.boost.cubic_invariant.{_bname(branch)}",
                          f"I{branch_symbol(branch)} preserved by {branch_symbol(branch)} boosts (per 1+|x|^3)",
                          s, matched[branch], BOOST_CUBIC_TOL, probes=N_INVARIANT_PROBES // 2)
    yield make_check(f"{s}.boost.cross_branch_drift", "I+- not preserved by boosts of the other branch",
                     s, FLOAT, cross, CROSS_BRANCH_MIN, comparison=ABOVE)
    yield make_check(f"{s}.boost.interval_not_invariant", "no quadratic invariant under boosts",
                     s, FLOAT, interval_drift, CROSS_BRANCH_MIN, comparison=ABOVE)


@_group("invariants")
def _lie_condition(ctx: SuiteContext):
    s = "invariants"
    for branch in BRANCHES:
        res = inv.lie_invariance_residuals(branch, ctx.sc, ctx.backend)
        for fam in ("rotation", "boost"):
            yield ctx.algebraic(f"{s}.lie.{_bname(branch)}.{fam}",
                                f"g{branch_symbol(branch)} annihilated by every {fam} generator", s,
                                res[fam]["max_residual"])


@_group("invariants")
def _boost_defect(ctx: SuiteContext):
    s = "invariants"
    sc = ctx.sc_float
    rng = ctx.rng("boost_defect")
    worst = 0.0
    ratios = []
    for n in range(N_DEFECT_PROBES):
        branch = BRANCHES[n % 2]
        x = rng.uniform(-1, 1, 9)
        m = int(rng.integers(1, 9))
        r = inv.boost_defect_check(x, m, DEFECT_STEP, branch, sc)
        ratios.append(r["ratio"])
        worst = max(worst, abs(r["ratio"] - RATIO_TARGET))
    yield ctx.numeric(f"{s}.boost_defect.second_order",
                      "interval'' - interval -+ 2 phi_m d^jmk x^j x^k is O(phi^2): |r(h)/r(h/2) - 4|",
                      s, worst, RATIO_HALF_WIDTH, probes=N_DEFECT_PROBES, h=DEFECT_STEP,
                      ratio_min=float(min(ratios)), ratio_max=float(max(ratios)))
    e1 = np.eye(9)[0]
    plus = inv.boost_defect_check(e1, 8, DEFECT_STEP, PLUS, sc)["first_order_defect"]
    minus = inv.boost_defect_check(e1, 8, DEFECT_STEP, MINUS, sc)["first_order_defect"]
    want = 2 * DEFECT_STEP / np.sqrt(3.0)
    yield ctx.numeric(f"{s}.boost_defect.e1_m8", "first-order defect of e1 along m = 8 is +-2h/sqrt3",
                      s, max(abs(plus - want), abs(minus + want)), ctx.tol())


@_group("invariants")
def _affine(ctx: SuiteContext):
    s = "invariants"
    sc = ctx.sc_float
    rng = ctx.rng("affine")
    trans = comp = 0.0
    for n in range(N_EX4_DRAWS):
        branch = BRANCHES[n % 2]
        p1 = random_params(rng, branch, 1.0, 0.5, 1.0)
        p2 = random_params(rng, branch, 1.0, 0.5, 1.0)
        x1, x2 = rng.uniform(-1, 1, 9), rng.uniform(-1, 1, 9)
        D = poincare10(p1, sc)
        h1, h2 = D @ np.append(x1, 1.0), D @ np.append(x2, 1.0)
        moved = h2[:9] - h1[:9]
        L = lorentz9(p1, sc)
        for b in BRANCHES:
            trans = max(trans, abs(inv.cubic_invariant(moved, b, sc) - inv.cubic_invariant(L @ (x2 - x1), b, sc)))
        shifted = (x2 + p1.a) - (x1 + p1.a)
        trans = max(trans, np.abs(shifted - (x2 - x1)).max())
        D2 = poincare10(p2, sc)
        prod = D2 @ D
        want = np.eye(10)
        want[:9, :9] = lorentz9(p2, sc) @ L
        want[:9, 9] = lorentz9(p2, sc) @ p1.a + p2.a
        comp = max(comp, np.abs(prod - want).max())
    yield ctx.numeric(f"{s}.translation", "coordinate differences, hence I+-, unchanged by translations", s,
                      trans, EX4_TOL)
    yield ctx.numeric(f"{s}.affine_composition", "(L2, a2)(L1, a1) = (L2 L1, L2 a1 + a2)", s, comp,
                      EXP_SANITY_TOL)


# ---------------------------------------------------------------- exercises

@_group("exercises")
def _exercise1(ctx: SuiteContext):
    s = "exercises"
    sc = ctx.sc_float
    rng = ctx.rng("exercise1")
    dot = tri = pol = 0.0
    for _ in range(N_EX1_DRAWS):
        x, y, z = (rng.uniform(-1, 1, 9) for _ in range(3))
        r = inv.rotation_scalar_products(x, y, z, rng.uniform(-np.pi, np.pi, 8), sc)
        dot, tri, pol = max(dot, r["dot_drift"]), max(tri, r["tri_drift"]), max(pol, r["polarization_drift"])
    d = {"draws": N_EX1_DRAWS}
    yield ctx.numeric(f"{s}.ex1.dot", "x^i y^i invariant under rotations", s, dot, EX1_TOL, **d)
    yield ctx.numeric(f"{s}.ex1.trilinear", "d_ijk x^i y^j z^k invariant under rotations", s, tri, EX1_TOL, **d)
    yield ctx.numeric(f"{s}.ex1.polarization", "same via cubic_sym of x+y+z and its sub-sums", s, pol,
                      EX1_TOL, **d)


def _rational_vectors(rng: np.random.Generator, n: int):
    for _ in range(n):
        yield [Fraction(int(a), int(b)) for a, b in zip(rng.integers(-9, 10, 9), rng.integers(1, 8, 9))]


@_group("exercises")
def _exercise2(ctx: SuiteContext):
    s = "exercises"
    sc = ctx.sc_float
    rng = ctx.rng("exercise2")
    for branch in BRANCHES:
        g = inv.build_g(branch, sc)
        worst = 0.0
        for _ in range(N_EX2_DRAWS):
            x, y, z = (rng.uniform(-1, 1, 9) for _ in range(3))
            L = lorentz9(TransformParams(rng.uniform(-1, 1, 8), _bounded(rng, 8, 1.0), branch=branch), sc)
            worst = max(worst, abs(g(L @ x, L @ y, L @ z) - g(x, y, z)))
        yield ctx.numeric(f"{s}.ex2.trilinear_invariance.{_bname(branch)}",
                          f"g{branch_symbol(branch)}(Dx, Dy, Dz) = g{branch_symbol(branch)}(x, y, z)",
                          s, worst, EX2_TOL, draws=N_EX2_DRAWS)
        ge = inv.build_g(branch, ctx.sc, ctx.backend)
        yield ctx.algebraic(f"{s}.ex2.g_symmetric.{_bname(branch)}", "g totally symmetric", s,
                            symmetry_residual(ge.g))
        worst = 0.0
        for v in _rational_vectors(ctx.rng(f"exercise2_polar_{branch}"), 25):
            if not ctx.exact:
                v = [float(c) for c in v]
            diff = ge(v, v, v) - inv.cubic_invariant(v, branch, ctx.sc, ctx.backend)
            worst = max(worst, abs(diff) / (1 + float(np.linalg.norm(np.array(v, dtype=float))) ** 3))
        yield ctx.algebraic(f"{s}.ex2.polarization.{_bname(branch)}",
                            f"g{branch_symbol(branch)}(x, x, x) = I{branch_symbol(branch)}(x) (per 1+|x|^3)", s, worst,
                            vectors=25)


@_group("exercises")
def _exercise3(ctx: SuiteContext):
    s = "exercises"
    for branch in BRANCHES:
        ten = ten_rep(branch, ctx.sc)
        res = poincare_pattern_residuals(ten, ctx.sc, pk_sign=-1)
        for key, ref in _P6_REFS.items():
            if key in ("PK", "P9K"):
                ref = f"{ref}, overall sign reversed"
            yield ctx.algebraic(f"{s}.ex3.{_bname(branch)}.{key}",
                                f"{ref} (10-rep, {branch_symbol(branch)} branch)", s, _mats_residual(res[key]))
        rep = ten_rep_sign_report(branch, ctx.sc)
        limit = 0.0 if ctx.exact else ctx.tol()
        holding = [k for k, v in rep["residuals"].items() if v <= limit]
        expected = [(-1, branch)]
        yield make_check(f"{s}.ex3.{_bname(branch)}.sign_pattern",
                         "10-rep [P, K] holds only with reversed overall sign and matching d sign", s,
                         ctx.backend, 0.0 if holding == expected else 1.0, 0.0, exact=True,
                         holding=[list(h) for h in holding],
                         residuals={f"pk{pk:+d},d{ds:+d}": float(v) for (pk, ds), v in rep["residuals"].items()})


@_group("exercises")
def _exercise4(ctx: SuiteContext):
    s = "exercises"
    sc = ctx.sc_float
    reps = [(f"six.{_bname(b)}", b, momentum_rep(b, 1, 1, FLOAT)) for b in BRANCHES]
    reps += [(f"ten.{_bname(b)}", b, ten_rep(b, sc)) for b in BRANCHES]
    for tag, branch, rep in reps:
        rng = ctx.rng(f"exercise4_{tag}")
        worst = push = 0.0
        for _ in range(N_EX4_DRAWS):
            p = TransformParams(_bounded(rng, 8, 1.0), _bounded(rng, 8, 1.0), branch=branch)
            worst = max(worst, intertwine_residual(rep, p, sc))
            push = max(push, intertwine_residual(rep, p, sc, "pushforward"))
        yield ctx.numeric(f"{s}.ex4.intertwine.{tag}",
                          "D^-1 V^mu D = Lambda_{mu nu} V^nu with D = exp(i phi.K) exp(i theta.J)", s,
                          worst, EX4_TOL, draws=N_EX4_DRAWS, pushforward_residual=push)


# ---------------------------------------------------------------- runner

def suites_for(name: str) -> tuple[str, ...]:
    if name == ALL:
        return SUITE_NAMES
    if name not in SUITE_NAMES:
        raise ValueError(f"unknown suite {name!r}; expected one of {SUITE_NAMES + (ALL,)}")
    return (name,)


def run(suite: str = ALL, backend: str = EXACT, seed: int = DEFAULT_SEED, tolerance: float | None = None,
        sc: StructureConstants | None = None, perturbations: list[str] | None = None) -> VerificationReport:
    """Run one suite (or all) and collect every check into a report.

    ``sc`` replaces the computed structure constants (used for mutation tests);
    it is converted to the requested backend when needed.
    """
    check_backend(backend)
    names = suites_for(suite)
    if sc is None:
        sc = structure_constants(backend)
    elif sc.backend != backend:
        if backend == EXACT:
            raise ValueError("cannot run the exact backend on float structure constants")
        sc = sc.to_float()
    ctx = SuiteContext(backend, int(seed), sc, tolerance)
    report = VerificationReport(suite, backend, ctx.seed, ctx.tol())
    report.perturbations = list(perturbations or [])
    for name in names:
        t0 = time.perf_counter()
        for group in _REGISTRY[name]:
            try:
                report.extend(group(ctx))
            except Exception as exc:  # recorded as a failure, never swallowed silently
                report.add(make_check(f"{name}.{group.__name__.lstrip('_')}.error",
                                      "check group raised", name, backend, float("inf"), 0.0,
                                      error=f"{type(exc).__name__}: {exc}"))
        report.time_suite(name, time.perf_counter() - t0)
    if "sixrep" in names:
        report.notes["mixed_momentum"] = mixed_momentum_report(1, backend)
    return report

import math
from fractions import Fraction

import numpy as np
import pytest

from su3spacetime.numerics import EXACT, FLOAT, AlgebraError, ComplexMatrix, ExactScalar, commutator
from su3spacetime.sixrep import (
    MINUS, PLUS, SixRepConfig, build_six, delta_mismatch, delta_mismatch_pair, ideal_membership_residuals,
    lorentz_residuals, mixed_momentum_report, momentum_matrices, parse_branch, pk_coefficients,
    poincare6_residuals, solve_branch_constraints, span_coefficients, triplet_failure_check, triplet_vk,
    vj_residuals,
)
from su3spacetime.ninerep import extract_adjoint_action
from su3spacetime.su3 import StructureConstants, gellmann


def _all_zero(mats):
    return all(m.is_zero() for m in mats)


def test_triplet_relations(sc_exact):
    g = triplet_vk(1, 1, EXACT)
    assert g.V[8] == ComplexMatrix.identity(3, EXACT)
    assert _all_zero(vj_residuals(g, sc_exact))
    lr = lorentz_residuals(g, sc_exact)
    assert _all_zero(lr["JJ"] + lr["JK"] + lr["KK"])
    assert commutator(g.V[0], g.K[0]).is_zero()
    assert all(commutator(g.V[8], k).is_zero() for k in g.K)


def test_triplet_failure_is_antisymmetry():
    r = triplet_failure_check(triplet_vk(Fraction(3, 2), 5, EXACT))
    assert r["exact_zero"] and r["max_symmetric_part"] == 0 and r["max_v9_k"] == 0


def test_six_block_layout():
    cfg = SixRepConfig(1, 1, 0, 0, 1, 1, EXACT)
    six = build_six(cfg)
    J3 = gellmann(EXACT).J
    i = ExactScalar(0, 0, 1)
    for n in range(8):
        assert six.K[n].sub(0, 3, 0, 3) == J3[n] * i
        assert six.K[n].sub(3, 6, 3, 6) == J3[n] * (-i)
    for V in six.V:
        assert V.sub(0, 3, 0, 3).is_zero() and V.sub(3, 6, 3, 6).is_zero()


def test_branch_solutions():
    plus, minus = solve_branch_constraints(1, 1, FLOAT)
    assert (plus.beta, plus.c_plus, minus.beta, minus.c_minus) == (1, 1, -1, 1)
    assert plus.c9_plus == pytest.approx(1 / math.sqrt(6))
    assert minus.c9_minus == pytest.approx(-1 / math.sqrt(6))
    assert plus.c_minus == plus.c9_minus == minus.c_plus == minus.c9_plus == 0
    assert plus.branch == PLUS and minus.branch == MINUS
    ex_plus, ex_minus = solve_branch_constraints(1, 1, EXACT)
    # exact configs store sqrt6 * c9
    assert ex_plus.c9_plus == ExactScalar(1) and ex_minus.c9_minus == ExactScalar(-1)
    with pytest.raises(ValueError, match="nonzero"):
        solve_branch_constraints(0)


def test_parse_branch():
    assert parse_branch("+") == PLUS and parse_branch(-1) == MINUS
    with pytest.raises(ValueError):
        parse_branch("0")


@pytest.mark.parametrize("backend", [EXACT, FLOAT])
def test_delta(backend, sc_exact, sc_float):
    sc = sc_exact if backend == EXACT else sc_float
    tol = 0 if backend == EXACT else 1e-13
    for cfg in solve_branch_constraints(1, 1, backend):
        assert all(m.is_zero(tol) for row in delta_mismatch(cfg, sc) for m in row)
    degenerate = SixRepConfig(0, 0, 0, 0, 1, Fraction(1, 3), backend)
    assert all(m.is_zero(tol) for row in delta_mismatch(degenerate, sc) for m in row)
    violating = SixRepConfig(1, 0, 1, 0, 1, 1, backend)
    closed = delta_mismatch(violating, sc)
    assert max(m.max_abs() for row in closed for m in row) > 0.1


def test_delta_two_routes_agree_on_random_configs(sc_exact):
    rng = np.random.default_rng(5)
    for _ in range(4):
        vals = [Fraction(int(a), int(b)) for a, b in zip(rng.integers(-4, 5, 6), rng.integers(1, 4, 6))]
        cfg = SixRepConfig(*vals, EXACT)
        closed, resid = delta_mismatch_pair(cfg, sc_exact)
        assert all((c - r).is_zero() for cr, rr in zip(closed, resid) for c, r in zip(cr, rr))


@pytest.mark.parametrize("branch", [PLUS, MINUS])
def test_momentum_layout(branch):
    m = momentum_matrices(branch, 1, 1, FLOAT)
    block = m.P[8].sub(0, 3, 3, 6) if branch == PLUS else m.P[8].sub(3, 6, 0, 3)
    assert np.allclose(block.to_numpy(), branch * np.eye(3) / math.sqrt(6))
    assert all(commutator(a, b).is_zero() for a in m.P for b in m.P)


@pytest.mark.parametrize("branch", [PLUS, MINUS])
@pytest.mark.parametrize("alpha,c", [(1, 1), (-1, 1), (1, Fraction(1, 2)), (Fraction(2, 3), -1)])
def test_poincare_relations_exact(branch, alpha, c, sc_exact):
    res = poincare6_residuals(momentum_matrices(branch, alpha, c, EXACT), sc_exact)
    assert set(res) == {"JJ", "JK", "KK", "PK", "P9K", "PJ", "PP"}
    for key, mats in res.items():
        assert _all_zero(mats), key


def test_wrong_d_sign_is_detected(sc_exact):
    flipped = StructureConstants(sc_exact.f, -sc_exact.d, EXACT)
    res = poincare6_residuals(momentum_matrices(PLUS, 1, 1, EXACT), flipped)
    assert not _all_zero(res["PK"])


def test_ideal_membership():
    assert _all_zero(ideal_membership_residuals(momentum_matrices(MINUS, 1, 1, EXACT)))


def test_pk_tensor_branch_exchange():
    cp = pk_coefficients(momentum_matrices(PLUS, 1, 1, EXACT))
    cm = pk_coefficients(momentum_matrices(MINUS, 1, 1, EXACT))
    assert all(a == -b for a, b in zip(cp[:, :, :8].ravel(), cm[:, :, :8].ravel()))
    assert all(a == b for a, b in zip(cp[:, :, 8].ravel(), cm[:, :, 8].ravel()))


def test_span_rejects_outside_matrix():
    m = momentum_matrices(PLUS, 1, 1, EXACT)
    _, resid = span_coefficients(m, ComplexMatrix.unit(6, 6, 0, 0, 1, EXACT))
    assert not resid.is_zero()
    with pytest.raises(AlgebraError):
        extract_adjoint_action(m, ComplexMatrix.unit(6, 6, 3, 0, 1, EXACT))


def test_mixed_momenta_are_informational():
    r = mixed_momentum_report()
    assert r["nonzero_pairs"] > 0

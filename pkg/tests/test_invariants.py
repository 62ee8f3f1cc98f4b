import math
from fractions import Fraction

import numpy as np
import pytest

from oracles import D
from su3spacetime.invariants import (
    boost_defect_check, build_g, cubic_invariant, cubic_sym, interval, invariant_ledger,
    lie_invariance_residuals, quad_space, rotation_scalar_products, time_component, trilinear,
)
from su3spacetime.numerics import EXACT, FLOAT
from su3spacetime.sixrep import MINUS, PLUS
from su3spacetime.su3 import symmetry_residual
from su3spacetime.transforms import TransformParams, lorentz9, random_params

E = np.eye(9)
R3 = math.sqrt(3)


def _literal_cubic(x, branch):
    s = x[:8]
    return (-branch * math.sqrt(1.5) * np.einsum("ijk,i,j,k->", D, s, s, s)
            + 1.5 * (s @ s) * x[8] - x[8] ** 3)


def test_basic_quantities():
    assert (quad_space(E[8]), cubic_sym(E[8]), time_component(E[8])) == (0, 0, 1)
    assert cubic_sym(E[7]) == pytest.approx(-1 / R3)
    assert quad_space(E[0]) == 1
    assert interval(E[0] + E[8]) == 0 and interval(E[8]) == -1


def test_cubic_invariant_values():
    for b in (PLUS, MINUS):
        assert cubic_invariant(E[8], b) == -1
        assert cubic_invariant(E[0] + E[8], b) == pytest.approx(0.5)
        assert trilinear(E[8], E[8], E[8], b) == -1
    rng = np.random.default_rng(0)
    for _ in range(20):
        x = rng.uniform(-2, 2, 9)
        for b in (PLUS, MINUS):
            assert cubic_invariant(x, b) == pytest.approx(_literal_cubic(x, b), abs=1e-12)
            assert trilinear(x, x, x, b) == pytest.approx(_literal_cubic(x, b), abs=1e-12)


@pytest.mark.parametrize("branch", [PLUS, MINUS])
def test_g_symmetric_and_polarized_exactly(branch):
    g = build_g(branch, backend=EXACT)
    assert symmetry_residual(g.g) == 0
    rng = np.random.default_rng(4)
    for _ in range(10):
        x = [Fraction(int(a), int(b)) for a, b in zip(rng.integers(-5, 6, 9), rng.integers(1, 5, 9))]
        assert g(x, x, x) == cubic_invariant(x, branch, backend=EXACT)


@pytest.mark.parametrize("branch", [PLUS, MINUS])
def test_exact_frame_value_matches_float(branch):
    """Exact frame: coordinates (x, sqrt6 x9), value sqrt(2/3) I."""
    x = [Fraction(1, 2), -1, 0, 2, Fraction(1, 3), 0, 1, -1, Fraction(3, 4)]
    xf = np.array([float(v) for v in x])
    xf[8] /= math.sqrt(6)
    exact = float(cubic_invariant(x, branch, backend=EXACT))
    assert exact == pytest.approx(math.sqrt(2 / 3) * cubic_invariant(xf, branch))


@pytest.mark.parametrize("branch", [PLUS, MINUS])
@pytest.mark.parametrize("backend", [EXACT, FLOAT])
def test_lie_condition(branch, backend):
    res = lie_invariance_residuals(branch, backend=backend)
    for fam in ("rotation", "boost"):
        assert res[fam]["max_residual"] <= (0 if backend == EXACT else 1e-14)
    if backend == EXACT:
        assert res["boost"]["exact_zero"]


@pytest.mark.parametrize("branch", [PLUS, MINUS])
def test_finite_boost_invariance_and_cross_branch(branch):
    rng = np.random.default_rng(8)
    cross = 0.0
    for _ in range(30):
        x = rng.uniform(-1, 1, 9)
        L = lorentz9(random_params(rng, branch, 1.0, 0.5))
        assert abs(cubic_invariant(L @ x, branch) - cubic_invariant(x, branch)) <= 1e-8 * (1 + np.linalg.norm(x) ** 3)
        cross = max(cross, abs(cubic_invariant(L @ x, -branch) - cubic_invariant(x, -branch)))
    assert cross > 1e-4


def test_boost_defect_examples():
    h = 1e-3
    plus = boost_defect_check(E[0], 8, h, PLUS)
    minus = boost_defect_check(E[0], 8, h, MINUS)
    assert plus["first_order_defect"] == pytest.approx(2 * h / R3)
    assert minus["first_order_defect"] == pytest.approx(-2 * h / R3)
    assert boost_defect_check(E[8], 3, h, PLUS)["first_order_defect"] == 0
    rng = np.random.default_rng(9)
    for _ in range(10):
        r = boost_defect_check(rng.uniform(-1, 1, 9), int(rng.integers(1, 9)), h, PLUS)
        assert 3.6 <= r["ratio"] <= 4.4
    with pytest.raises(ValueError):
        boost_defect_check(E[0], 9, h)
    with pytest.raises(ValueError):
        boost_defect_check(E[0], 1, 0.0)


def test_rotation_scalar_products():
    rng = np.random.default_rng(10)
    x, y, z = (rng.uniform(-1, 1, 9) for _ in range(3))
    r0 = rotation_scalar_products(x, y, z, np.zeros(8))
    assert r0["dot_drift"] == r0["tri_drift"] == 0
    r = rotation_scalar_products(x, y, z, rng.uniform(-2, 2, 8))
    assert max(r["dot_drift"], r["tri_drift"], r["polarization_drift"]) <= 1e-10
    s = rotation_scalar_products(x, x, x, rng.uniform(-2, 2, 8))
    assert s["tri_before"] == pytest.approx(cubic_sym(x))


def test_ledger():
    x = np.linspace(-1, 1, 9)
    led = invariant_ledger(x, lorentz9(TransformParams(phi=[0.3] + [0] * 7)) @ x)
    assert set(led) == {"quad_space", "interval", "cubic_sym", "time", "I+", "I-"}
    assert abs(led["I+"]["delta"]) < 1e-12 and abs(led["interval"]["delta"]) > 1e-3

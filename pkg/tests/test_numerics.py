import math
from fractions import Fraction

import numpy as np
import pytest
import scipy.linalg
from hypothesis import given, settings
from hypothesis import strategies as st

from su3spacetime.numerics import (
    EXACT, FLOAT, AlgebraError, BackendError, ComplexMatrix, ExactScalar, IUNIT, ONE, SQRT3, ZERO,
    anticommutator, commutator, expm_array, frame, lincomb, matrix_exp, solve, trace,
)

small = st.fractions(min_value=-20, max_value=20, max_denominator=12)
scalars = st.builds(ExactScalar, small, small, small, small)
nonzero = scalars.filter(bool)


@settings(max_examples=150, deadline=None)
@given(scalars, scalars, scalars)
def test_ring_laws(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == ZERO
    assert a * ONE == a


@settings(max_examples=150, deadline=None)
@given(nonzero, scalars)
def test_division_and_conjugation(a, b):
    assert a * a.inverse() == ONE
    assert (b / a) * a == b
    assert (a * b).conjugate() == a.conjugate() * b.conjugate()


@settings(max_examples=150, deadline=None)
@given(scalars, scalars)
def test_complex_image_is_a_homomorphism(a, b):
    assert complex(a * b) == pytest.approx(complex(a) * complex(b), rel=1e-12, abs=1e-9)
    assert complex(a + b) == pytest.approx(complex(a) + complex(b), rel=1e-12, abs=1e-9)


def test_sqrt3_and_i():
    assert SQRT3 * SQRT3 == ExactScalar(3)
    assert IUNIT * IUNIT == -ONE
    assert complex(ExactScalar.sqrt3(Fraction(1, 2))) == pytest.approx(math.sqrt(3) / 2)


def test_coerce_rejects_floats():
    with pytest.raises(BackendError):
        ExactScalar.coerce(0.5)
    with pytest.raises(BackendError):
        ExactScalar(0.5)


def test_exact_float_matrix_agreement():
    rng = np.random.default_rng(3)
    ints = rng.integers(-5, 6, size=(2, 4, 4))
    A = ComplexMatrix.exact([[ExactScalar(int(v), int(w)) for v, w in zip(r, s)] for r, s in zip(ints[0], ints[1])])
    B = ComplexMatrix.exact([[ExactScalar(0, 0, int(v)) for v in r] for r in ints[1]])
    Af, Bf = A.to_float(), B.to_float()
    assert np.allclose((A @ B).to_numpy(), Af.to_numpy() @ Bf.to_numpy())
    assert np.allclose(commutator(A, B).to_numpy(), (Af @ Bf - Bf @ Af).to_numpy())
    assert np.allclose(anticommutator(A, B).to_numpy(), (Af @ Bf + Bf @ Af).to_numpy())
    assert complex(trace(A)) == pytest.approx(np.trace(Af.to_numpy()))


def test_matrix_is_immutable_and_backend_checked():
    M = ComplexMatrix.identity(3, EXACT)
    with pytest.raises(ValueError):
        M.array[0, 0] = ZERO
    with pytest.raises(BackendError):
        M + ComplexMatrix.identity(3, FLOAT)


def test_lincomb_and_unit():
    e = [ComplexMatrix.unit(2, 2, r, c, 1, EXACT) for r in range(2) for c in range(2)]
    M = lincomb([ExactScalar(1), ZERO, SQRT3, ExactScalar(2)], e)
    assert M.at(2, 1) == SQRT3 and M.at(1, 2) == ZERO


@pytest.mark.parametrize("scale", [0.01, 0.5, 3.0, 20.0, 200.0])
def test_expm_matches_scipy(scale):
    rng = np.random.default_rng(int(scale * 100))
    for n in (3, 6, 9, 10):
        A = scale * (rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))) / n
        want = scipy.linalg.expm(A)
        got = expm_array(A)
        assert np.abs(got - want).max() <= 1e-12 * max(1.0, np.abs(want).max()) * max(1.0, scale)


def test_expm_commuting_sum():
    rng = np.random.default_rng(11)
    A = rng.normal(size=(9, 9))
    B = 0.3 * A @ A - 0.7 * A
    assert np.allclose(expm_array(A + B), expm_array(A) @ expm_array(B), rtol=1e-11, atol=1e-11)


def test_expm_edge_cases():
    assert np.array_equal(expm_array(np.zeros((4, 4))), np.eye(4))
    N = np.diag([1.0, 1.0, 1.0], k=1)  # nilpotent
    assert np.allclose(expm_array(N), np.eye(4) + N + N @ N / 2 + N @ N @ N / 6)
    with pytest.raises(BackendError):
        matrix_exp(ComplexMatrix.identity(2, EXACT))


def test_solve_exact_and_float():
    A = np.array([[ExactScalar(2), SQRT3], [IUNIT, ExactScalar(1)]], dtype=object)
    x = np.array([ExactScalar(1), ExactScalar(0, 1)], dtype=object)
    b = np.array([sum((A[r, c] * x[c] for c in range(2)), ZERO) for r in range(2)], dtype=object)
    assert list(solve(A, b, EXACT)) == list(x)
    Af = np.array([[complex(v) for v in r] for r in A])
    assert np.allclose(solve(Af, Af @ np.array([1, 1j]), FLOAT), [1, 1j])
    with pytest.raises(AlgebraError):
        solve(np.array([[ONE, ONE], [ONE, ONE]], dtype=object), np.array([ONE, ZERO], dtype=object), EXACT)
    with pytest.raises(AlgebraError):
        solve(np.ones((2, 2)), np.array([1.0, 0.0]), FLOAT)


def test_time_frame_constants_match_literal_values():
    """Exact frame constants, rescaled by s = sqrt6 and sqrt(2/3), give the literal float values."""
    ex, fl = frame(EXACT), frame(FLOAT)
    s = math.sqrt(6)
    cubic = math.sqrt(2 / 3)
    assert float(ex.k_lo) * s == pytest.approx(fl.k_lo)
    assert float(ex.k_hi) / s == pytest.approx(fl.k_hi)
    assert float(ex.p9_unit) / s == pytest.approx(fl.p9_unit)
    assert float(ex.root6_lo) * s == pytest.approx(fl.root6_lo)
    assert float(ex.s_squared) == pytest.approx(s * s)
    assert float(ex.g_cubic) / cubic == pytest.approx(fl.g_cubic)
    assert float(ex.g_mixed) * s / cubic == pytest.approx(fl.g_mixed)
    assert float(ex.g_time) * s ** 3 / cubic == pytest.approx(fl.g_time)

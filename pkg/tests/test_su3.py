from fractions import Fraction
from itertools import product

import numpy as np
import pytest

from oracles import D, F, lambdas

from su3spacetime.numerics import EXACT, FLOAT, ExactScalar
from su3spacetime.su3 import (
    antitriplet, antisymmetry_residual, closure_residuals, gellmann, structure_constants,
    symmetry_residual, time_slot_residual, verify_fd_identities,
)


def test_generators_match_literal_matrices():
    got = np.array([m.to_numpy() for m in gellmann(EXACT).J])
    assert np.allclose(got, lambdas() / 2, atol=0)
    assert np.allclose(np.array([m.to_numpy() for m in gellmann(FLOAT).J]), lambdas() / 2)


def test_extracted_tensors_match_tables(sc_exact, sc_float):
    f, d = F, D
    for sc in (sc_exact, sc_float.to_float(), sc_exact.to_float()):
        sf = sc.to_float()
        assert np.allclose(sf.f[:8, :8, :8], f, atol=1e-15)
        assert np.allclose(sf.d[:8, :8, :8], d, atol=1e-15)


def test_tensors_from_trace_formulas_in_numpy():
    L = lambdas() / 2
    for i, j, k in product(range(8), repeat=3):
        fv = (-2j * np.trace((L[i] @ L[j] - L[j] @ L[i]) @ L[k])).real
        dv = (2 * np.trace((L[i] @ L[j] + L[j] @ L[i]) @ L[k])).real
        assert fv == pytest.approx(F[i, j, k], abs=1e-14)
        assert dv == pytest.approx(D[i, j, k], abs=1e-14)


def test_exact_values(sc_exact):
    assert sc_exact.fval(4, 5, 8) == ExactScalar.sqrt3(Fraction(1, 2))
    assert sc_exact.dval(8, 8, 8) == -ExactScalar.sqrt3(Fraction(1, 3))
    assert time_slot_residual(sc_exact) == 0
    assert antisymmetry_residual(sc_exact.f) == 0
    assert symmetry_residual(sc_exact.d) == 0


@pytest.mark.parametrize("gens,d_sign", [(gellmann(EXACT), 1), (antitriplet(EXACT), -1)])
def test_exact_closure(gens, d_sign, sc_exact):
    for _, _, comm, anti in closure_residuals(gens, sc_exact, d_sign):
        assert comm.is_zero() and anti.is_zero()


def test_antitriplet_needs_the_minus_sign(sc_exact):
    worst = max(a.max_abs() for *_, a in closure_residuals(antitriplet(EXACT), sc_exact, +1))
    assert worst > 0.1


def test_fd_identities(sc_exact, sc_float):
    for r in verify_fd_identities(sc_exact).values():
        assert r["exact_zero"] and r["cases"] == 4096
    for r in verify_fd_identities(sc_float).values():
        assert r["max_residual"] <= 1e-13


def test_perturbed_changes_one_entry(sc_exact):
    p = sc_exact.perturbed("d", (1, 1, 8), 1e-6)
    diff = [(i, j, k) for i, j, k in product(range(9), repeat=3) if p.d[i, j, k] != sc_exact.d[i, j, k]]
    assert diff == [(0, 0, 7)]
    assert float(p.d[0, 0, 7] - sc_exact.d[0, 0, 7]) == pytest.approx(1e-6)
    with pytest.raises(ValueError):
        sc_exact.perturbed("g", (1, 1, 1), 1)


def test_backends_agree(sc_exact, sc_float):
    assert np.allclose(sc_exact.to_float().f, sc_float.f, atol=1e-15)
    assert np.allclose(sc_exact.to_float().d, sc_float.d, atol=1e-15)
    assert structure_constants(EXACT) is sc_exact

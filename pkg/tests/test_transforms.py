import numpy as np
import pytest
import scipy.linalg

from oracles import literal_j9, literal_k9
from su3spacetime.ninerep import ten_rep
from su3spacetime.numerics import FLOAT
from su3spacetime.sixrep import MINUS, PLUS, momentum_rep
from su3spacetime.su3 import gellmann
from su3spacetime.transforms import (
    NineVector, TransformParams, apply, intertwine_residual, lorentz9, poincare10, random_params,
)


def _oracle(theta, phi, branch):
    J, K = literal_j9(), literal_k9(branch)
    return (scipy.linalg.expm(1j * np.tensordot(phi, K, axes=1))
            @ scipy.linalg.expm(1j * np.tensordot(theta, J, axes=1))).real


def test_zero_params_give_identity():
    assert np.array_equal(lorentz9(TransformParams()), np.eye(9))
    assert np.array_equal(poincare10(TransformParams()), np.eye(10))


@pytest.mark.parametrize("branch", [PLUS, MINUS])
def test_matches_scipy_on_literal_generators(branch):
    rng = np.random.default_rng(7)
    for _ in range(20):
        p = random_params(rng, branch, 1.5, 1.0)
        assert np.allclose(lorentz9(p), _oracle(p.theta, p.phi, branch), atol=1e-12)


def test_first_order_expansion():
    eps = 1e-6
    K1 = literal_k9(PLUS)[0]
    D = lorentz9(TransformParams(phi=[eps] + [0] * 7))
    assert np.abs(D - (np.eye(9) + (1j * eps * K1).real)).max() < 1e-11


def test_rotation_fixes_time_axis():
    e9 = np.eye(9)[8]
    R = lorentz9(TransformParams(theta=np.linspace(-2, 2, 8)))
    assert np.allclose(R @ e9, e9, atol=1e-14)
    x = np.linspace(-1, 1, 9)
    R2 = lorentz9(TransformParams(theta=[0, np.pi, 0, 0, 0, 0, 0, 0]))
    assert np.sum((R2 @ x)[:8] ** 2) == pytest.approx(np.sum(x[:8] ** 2))


def test_translation_and_apply():
    a = np.arange(9.0)
    x = NineVector(np.ones(9))
    assert np.allclose(apply(poincare10(TransformParams(a=a)), x).x, 1 + a)
    assert np.array_equal(apply(np.eye(9), x).x, x.x)
    with pytest.raises(ValueError):
        apply(np.eye(8), x)


def test_affine_composition_keeps_last_row():
    rng = np.random.default_rng(1)
    p1, p2 = random_params(rng, PLUS, a_scale=2), random_params(rng, PLUS, a_scale=2)
    M = poincare10(p2) @ poincare10(p1)
    assert np.allclose(M[9], np.eye(10)[9])
    assert np.allclose(M[:9, 9], lorentz9(p2) @ p1.a + p2.a)


def test_parameter_validation():
    with pytest.raises(ValueError):
        TransformParams(theta=[1.0] * 7)
    with pytest.raises(ValueError):
        TransformParams(phi=[np.nan] + [0.0] * 7)
    with pytest.raises(ValueError):
        NineVector([0.0] * 8)
    with pytest.raises(IndexError):
        NineVector(np.zeros(9))[0]


@pytest.mark.parametrize("rep", [momentum_rep(PLUS, backend=FLOAT), momentum_rep(MINUS, backend=FLOAT),
                                 ten_rep(PLUS, backend=FLOAT), ten_rep(MINUS, backend=FLOAT)],
                         ids=["six+", "six-", "ten+", "ten-"])
def test_intertwining(rep):
    rng = np.random.default_rng(2)
    assert intertwine_residual(rep, TransformParams(branch=rep.branch)) == 0.0
    for _ in range(10):
        p = random_params(rng, rep.branch, 0.3, 0.3)
        assert intertwine_residual(rep, p) <= 1e-9
    boost = TransformParams(phi=[0.5] + [0.0] * 7, branch=rep.branch)
    assert intertwine_residual(rep, boost, convention="pushforward") > 1e-3


def test_intertwining_rejects_incomplete_reps():
    with pytest.raises(ValueError):
        intertwine_residual(gellmann(FLOAT), TransformParams())
    with pytest.raises(ValueError):
        intertwine_residual(ten_rep(PLUS), TransformParams())  # exact rep lives in the sqrt6 frame

"""Finite SU(3)-Lorentz and SU(3)-Poincare transformations of 9-vectors.

Everything here is numerical (float backend): exponentials leave Q(sqrt3).
The composition order is fixed: rotate first, then boost,

    D(theta, phi) = exp(i phi_i K^i) exp(i theta_i J^i).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .ninerep import j9, k9
from .numerics import FLOAT, AlgebraError, expm_array
from .sixrep import PLUS, parse_branch
from .su3 import GeneratorSet, StructureConstants

IMAG_DISCARD_TOL = 1e-12


def _vec(values, n: int, name: str) -> np.ndarray:
    v = np.asarray(values, dtype=float).reshape(-1)
    if v.shape != (n,):
        raise ValueError(f"{name} needs {n} components, got {v.size}")
    if not np.all(np.isfinite(v)):
        raise ValueError(f"{name} has non-finite components")
    return v


@dataclass(frozen=True)
class NineVector:
    """Coordinates ``x^1..x^8`` (space) and ``x^9`` (time, same units)."""

    x: np.ndarray

    def __post_init__(self):
        v = _vec(self.x, 9, "NineVector")
        v.flags.writeable = False
        object.__setattr__(self, "x", v)

    @property
    def spatial(self) -> np.ndarray:
        return self.x[:8]

    @property
    def time(self) -> float:
        return float(self.x[8])

    def __getitem__(self, mu: int) -> float:
        if not 1 <= mu <= 9:
            raise IndexError(f"component {mu} outside 1..9")
        return float(self.x[mu - 1])

    def __sub__(self, other: "NineVector") -> "NineVector":
        return NineVector(self.x - other.x)

    def __add__(self, other: "NineVector") -> "NineVector":
        return NineVector(self.x + other.x)


@dataclass(frozen=True)
class TransformParams:
    theta: np.ndarray = field(default_factory=lambda: np.zeros(8))
    phi: np.ndarray = field(default_factory=lambda: np.zeros(8))
    a: np.ndarray = field(default_factory=lambda: np.zeros(9))
    branch: int = PLUS

    def __post_init__(self):
        object.__setattr__(self, "theta", _vec(self.theta, 8, "theta"))
        object.__setattr__(self, "phi", _vec(self.phi, 8, "phi"))
        object.__setattr__(self, "a", _vec(self.a, 9, "a"))
        object.__setattr__(self, "branch", parse_branch(self.branch))


def _as_array(x) -> np.ndarray:
    return x.x if isinstance(x, NineVector) else _vec(x, 9, "x")


@lru_cache(maxsize=None)
def _default_arrays(branch: int) -> tuple[np.ndarray, np.ndarray]:
    return _stack(j9(backend=FLOAT)), _stack(k9(branch, backend=FLOAT))


def _stack(mats) -> np.ndarray:
    a = np.array([m.array for m in mats])
    a.flags.writeable = False
    return a


def generator_arrays(branch=PLUS, sc: StructureConstants | None = None):
    """Float ``(J, K)`` arrays of shape (8, 9, 9) for the 9-vector rep."""
    branch = parse_branch(branch)
    if sc is None:
        return _default_arrays(branch)
    sc = sc.to_float()
    return _stack(j9(sc)), _stack(k9(branch, sc))


def _real(M: np.ndarray, what: str) -> np.ndarray:
    scale = max(1.0, float(np.abs(M.real).max()))
    if np.abs(M.imag).max() > IMAG_DISCARD_TOL * scale:
        raise AlgebraError(f"{what} is not real: imaginary part {np.abs(M.imag).max():.3g}")
    return M.real.copy()


def group_element(J: np.ndarray, K: np.ndarray, theta, phi) -> np.ndarray:
    """``exp(i phi.K) exp(i theta.J)`` for stacked generator arrays of any size."""
    theta = np.asarray(theta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    rot = expm_array(1j * np.tensordot(theta, J, axes=1))
    boost = expm_array(1j * np.tensordot(phi, K, axes=1))
    return boost @ rot


def lorentz9(p: TransformParams, sc: StructureConstants | None = None) -> np.ndarray:
    """Real 9x9 matrix of a rotation through ``theta`` followed by a boost through ``phi``."""
    J, K = generator_arrays(p.branch, sc)
    return _real(group_element(J, K, p.theta, p.phi), "SU(3)-Lorentz matrix")


def poincare10(p: TransformParams, sc: StructureConstants | None = None) -> np.ndarray:
    """``[[lorentz9(p), a], [0, 1]]`` acting on homogeneous ``(x, 1)``."""
    out = np.eye(10)
    out[:9, :9] = lorentz9(p, sc)
    out[:9, 9] = p.a
    return out


def apply(D: np.ndarray, x) -> NineVector:
    D = np.asarray(D)
    v = _as_array(x)
    if D.shape == (9, 9):
        return NineVector(D @ v)
    if D.shape == (10, 10):
        h = D @ np.append(v, 1.0)
        if abs(h[9] - 1.0) > IMAG_DISCARD_TOL:
            raise ValueError("10x10 matrix does not preserve the homogeneous coordinate")
        return NineVector(h[:9])
    raise ValueError(f"cannot apply a {D.shape} matrix to a 9-vector")


def _rep_arrays(rep: GeneratorSet) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    if rep.K is None or rep.V is None:
        raise ValueError(f"rep {rep.rep} needs J, K and V/P matrices for the intertwining check")
    if rep.time_scale != "1":
        raise ValueError("intertwining check needs literal (float backend) generators")
    rep = rep.to_float()
    return _stack(rep.J), _stack(rep.K), _stack(rep.V)


def intertwine_residual(rep: GeneratorSet, p: TransformParams,
                        sc: StructureConstants | None = None,
                        convention: str = "pullback") -> float:
    """Largest Frobenius norm of ``D^-1 V^mu D - Lambda_{mu nu} V^nu``.

    ``D`` is built in ``rep``; ``Lambda`` is the 9-vector transformation with
    the rep's own [P, K] sign (``rep.meta['pk_sign']``, -1 for the 10-rep)
    and the branch in ``p``.  ``convention="pushforward"`` checks
    ``D V^mu D^-1`` instead, which does not hold for boosts.
    """
    J, K, V = _rep_arrays(rep)
    pk_sign = rep.meta.get("pk_sign", 1)
    D = group_element(J, K, p.theta, p.phi)
    Dinv = np.linalg.inv(D)
    lam = lorentz9(TransformParams(p.theta, pk_sign * p.phi, p.a, p.branch), sc)
    if convention == "pullback":
        moved = np.einsum("ab,mbc,cd->mad", Dinv, V, D)
    elif convention == "pushforward":
        moved = np.einsum("ab,mbc,cd->mad", D, V, Dinv)
    else:
        raise ValueError(f"unknown convention {convention!r}")
    target = np.einsum("mn,nab->mab", lam, V)
    return float(np.sqrt((np.abs(moved - target) ** 2).sum(axis=(1, 2))).max())


def random_params(rng: np.random.Generator, branch=PLUS, theta_scale: float = 1.0,
                  phi_scale: float = 1.0, a_scale: float = 0.0) -> TransformParams:
    """Parameters with components uniform in [-scale, scale]."""
    return TransformParams(rng.uniform(-theta_scale, theta_scale, 8),
                           rng.uniform(-phi_scale, phi_scale, 8),
                           rng.uniform(-a_scale, a_scale, 9), branch)

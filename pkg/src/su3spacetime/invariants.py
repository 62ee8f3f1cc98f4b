"""Rotation invariants, the boost defect of the quadratic interval, and the cubic invariants.

The cubic invariant of branch ``b`` (``b = +1`` or ``-1``) is

    I_b(x) = -b sqrt(3/2) d_ijk x^i x^j x^k + 3/2 |x_space|^2 x^9 - (x^9)^3

and its polarization is the symmetric trilinear form ``g_b``.  In the exact
backend coordinates are taken in the sqrt6 time frame (``x^9`` stored as
``sqrt6 x^9``) and the form is stored multiplied by ``sqrt(2/3)``, which
turns every coefficient into an element of Q(sqrt3):

    sqrt(2/3) I_b = -b d xxx + 1/2 |x|^2 x9 - 1/18 x9^3.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .ninerep import j9, k9
from .numerics import EXACT, FLOAT, ComplexMatrix, ExactScalar, frame, scalar
from .sixrep import PLUS, parse_branch
from .su3 import N_EXT, N_GEN, StructureConstants, i_times, structure_constants
from .transforms import NineVector, TransformParams, lorentz9


def _sc(backend: str, sc: StructureConstants | None) -> StructureConstants:
    if sc is None:
        return structure_constants(backend)
    return sc if sc.backend == backend else sc.to_float()


def _x(x) -> np.ndarray:
    return x.x if isinstance(x, NineVector) else np.asarray(x, dtype=float)


def quad_space(x) -> float:
    v = _x(x)
    return float(v[:8] @ v[:8])


def cubic_sym(x, sc: StructureConstants | None = None) -> float:
    v = _x(x)[:8]
    d = _sc(FLOAT, sc).d[:8, :8, :8]
    return float(np.einsum("ijk,i,j,k->", d, v, v, v))


def time_component(x) -> float:
    return float(_x(x)[8])


def interval(x) -> float:
    """Squared spatial distance minus squared time."""
    return quad_space(x) - time_component(x) ** 2


def _exact_vec(x) -> list:
    if len(x) != N_EXT:
        raise ValueError("need 9 components")
    return [ExactScalar.coerce(v) for v in x]


def cubic_invariant(x, branch=PLUS, sc: StructureConstants | None = None,
                    backend: str = FLOAT):
    """Cubic invariant of the given branch.

    Exact backend: ``x`` holds exact components in the sqrt6 time frame and the
    return value is ``sqrt(2/3) * I``.
    """
    branch = parse_branch(branch)
    fr = frame(backend)
    if backend == FLOAT:
        v = _x(x)
        d = _sc(FLOAT, sc).d[:8, :8, :8]
        dxxx = np.einsum("ijk,i,j,k->", d, v[:8], v[:8], v[:8])
        q = v[:8] @ v[:8]
        return float(-branch * fr.g_cubic * dxxx + 3 * fr.g_mixed * q * v[8] - fr.g_time * v[8] ** 3)
    v = _exact_vec(x)
    d = _sc(EXACT, sc).d
    dxxx = scalar(0, EXACT)
    for i in range(N_GEN):
        for j in range(N_GEN):
            for k in range(N_GEN):
                if d[i, j, k]:
                    dxxx = dxxx + d[i, j, k] * v[i] * v[j] * v[k]
    q = sum((c * c for c in v[:8]), scalar(0, EXACT))
    t = v[8]
    return -branch * fr.g_cubic * dxxx + 3 * fr.g_mixed * q * t - fr.g_time * t * t * t


@dataclass(frozen=True)
class TrilinearForm:
    branch: int
    g: np.ndarray
    backend: str

    def __call__(self, x, y, z):
        if self.backend == FLOAT:
            return float(np.einsum("abc,a,b,c->", self.g, _x(x), _x(y), _x(z)))
        x, y, z = _exact_vec(x), _exact_vec(y), _exact_vec(z)
        total = scalar(0, EXACT)
        for (a, b, c), v in np.ndenumerate(self.g):
            if v and x[a] and y[b] and z[c]:
                total = total + v * x[a] * y[b] * z[c]
        return total


def build_g(branch=PLUS, sc: StructureConstants | None = None, backend: str = FLOAT) -> TrilinearForm:
    """Symmetric tensor ``g`` with ``g(x, x, x) = I(x)`` (frame-scaled when exact)."""
    branch = parse_branch(branch)
    fr = frame(backend)
    sc = _sc(backend, sc)
    t = N_EXT - 1
    if backend == EXACT:
        g = np.full((N_EXT,) * 3, scalar(0, EXACT), dtype=object)
        g[:8, :8, :8] = sc.d[:8, :8, :8] * (-branch * fr.g_cubic)
    else:
        g = np.zeros((N_EXT,) * 3)
        g[:8, :8, :8] = -branch * fr.g_cubic * sc.d[:8, :8, :8]
    for i in range(N_GEN):
        g[i, i, t] = g[i, t, i] = g[t, i, i] = fr.g_mixed
    g[t, t, t] = -fr.g_time
    g.flags.writeable = False
    return TrilinearForm(branch, g, backend)


def trilinear(x, y, z, branch=PLUS, sc: StructureConstants | None = None, backend: str = FLOAT):
    return build_g(branch, sc, backend)(x, y, z)


def lie_invariance_residuals(branch=PLUS, sc: StructureConstants | None = None,
                             backend: str = EXACT) -> dict:
    """First-order invariance of ``g`` under every rotation and boost generator.

    For a real generator ``G`` (``i J`` or ``i K``) the change of ``g`` is
    ``g_sbc G_sa + g_asc G_sb + g_abs G_sc``; returns the largest entry per family.
    """
    branch = parse_branch(branch)
    sc = _sc(backend, sc)
    g = build_g(branch, sc, backend).g
    ii = i_times(backend)
    out = {}
    for name, fam in (("rotation", j9(sc)), ("boost", k9(branch, sc))):
        worst = 0.0
        exact_zero = True
        for m in fam:
            G = (m * ii).array
            if backend == EXACT:
                if not all(v.is_real() for v in G.ravel()):
                    raise ValueError("generator is not real after multiplying by i")
            else:
                G = G.real
            dg = (np.einsum("sbc,sa->abc", g, G) + np.einsum("asc,sb->abc", g, G)
                  + np.einsum("abs,sc->abc", g, G))
            if backend == EXACT:
                exact_zero = exact_zero and not any(dg.ravel())
                worst = max(worst, max((abs(v) for v in dg.ravel() if v), default=0.0))
            else:
                worst = max(worst, float(np.abs(dg).max()))
        out[name] = {"max_residual": worst, "exact_zero": exact_zero and backend == EXACT}
    return out


def boost_defect_check(x, m: int, h: float, branch=PLUS,
                       sc: StructureConstants | None = None) -> dict:
    """Compare the exact boosted interval with its first-order prediction.

    ``r(h) = interval(x'') - interval(x) - b 2h d^{jmk} x^j x^k`` for a boost of
    size ``h`` along generator ``m``; second-order smallness shows as
    ``r(h) / r(h/2)`` close to 4.
    """
    branch = parse_branch(branch)
    if not 1 <= m <= N_GEN:
        raise ValueError(f"boost direction {m} outside 1..8")
    if h <= 0:
        raise ValueError("step h must be positive")
    v = _x(x)
    d = _sc(FLOAT, sc).d
    first_order_rate = 2.0 * branch * float(v[:8] @ d[:8, m - 1, :8] @ v[:8])

    def resid(step):
        phi = np.zeros(8)
        phi[m - 1] = step
        xb = lorentz9(TransformParams(phi=phi, branch=branch), sc) @ v
        return interval(xb) - interval(v) - step * first_order_rate

    r1, r2 = resid(h), resid(h / 2)
    ratio = r1 / r2 if r2 else float("inf")
    return {"m": m, "h": h, "branch": branch, "first_order_defect": h * first_order_rate,
            "r_h": r1, "r_half": r2, "ratio": ratio}


def rotation_scalar_products(x, y, z, theta, sc: StructureConstants | None = None) -> dict:
    """Drift of ``x.y`` and ``d_ijk x^i y^j z^k`` under a shared rotation.

    Only the spatial parts are used.  The trilinear drift is also recovered
    from cubic_sym on ``x+y+z`` and its sub-sums (polarization), which must agree.
    """
    R = lorentz9(TransformParams(theta=theta), sc)
    d = _sc(FLOAT, sc).d[:8, :8, :8]
    sp = lambda v: np.append(_x(v)[:8], 0.0)
    x, y, z = sp(x), sp(y), sp(z)
    xr, yr, zr = R @ x, R @ y, R @ z
    dot = lambda a, b: float(a[:8] @ b[:8])
    tri = lambda a, b, c: float(np.einsum("ijk,i,j,k->", d, a[:8], b[:8], c[:8]))

    def polar(a, b, c):
        # 6 d(a,b,c) = C(a+b+c) - C(a+b) - C(a+c) - C(b+c) + C(a) + C(b) + C(c)
        C = lambda v: cubic_sym(v, sc)
        return (C(a + b + c) - C(a + b) - C(a + c) - C(b + c) + C(a) + C(b) + C(c)) / 6.0

    return {
        "dot_before": dot(x, y), "dot_after": dot(xr, yr),
        "dot_drift": abs(dot(xr, yr) - dot(x, y)),
        "tri_before": tri(x, y, z), "tri_after": tri(xr, yr, zr),
        "tri_drift": abs(tri(xr, yr, zr) - tri(x, y, z)),
        "polarization_drift": abs(polar(xr, yr, zr) - polar(x, y, z)),
    }


def invariant_ledger(x, x_new, sc: StructureConstants | None = None) -> dict:
    """Before/after/delta of each scalar quantity for a transformed vector."""
    quantities = {
        "quad_space": quad_space,
        "interval": interval,
        "cubic_sym": lambda v: cubic_sym(v, sc),
        "time": time_component,
        "I+": lambda v: cubic_invariant(v, +1, sc),
        "I-": lambda v: cubic_invariant(v, -1, sc),
    }
    out = {}
    for name, fn in quantities.items():
        before, after = fn(x), fn(x_new)
        out[name] = {"before": before, "after": after, "delta": after - before}
    return out

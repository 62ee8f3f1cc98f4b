"""Scalar and dense-matrix arithmetic with an exact and a floating backend.

The exact backend works over Q(sqrt3) + i Q(sqrt3).  Every Gell-Mann entry and
every f/d value lives there, but sqrt(2/3), sqrt6 and sqrt(3/2) do not.  Those
only ever multiply the time axis (index 9), so the exact backend works in a
rescaled *time frame*: the time basis vector is multiplied by ``s = sqrt6``.
In that frame all coefficients become elements of Q(sqrt3) again; see
:class:`TimeFrame`.  The float backend uses the literal values (``s = 1``).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

import numpy as np
from gmpy2 import mpq

EXACT = "exact"
FLOAT = "float"
BACKENDS = (EXACT, FLOAT)

ALGEBRAIC_TOL = 1e-12


class BackendError(TypeError):
    """Raised when exact and float values are mixed."""


class AlgebraError(ArithmeticError):
    """Raised when an algebraic consistency condition fails."""


_MPQ = type(mpq(0))


def _frac(x):
    """Coerce to an arbitrary-precision rational (gmpy2 mpq, always reduced)."""
    if isinstance(x, _MPQ):
        return x
    if isinstance(x, (int, Rational, str)):
        return mpq(x)
    raise BackendError(f"cannot use {type(x).__name__} as an exact rational")


_ZERO = mpq(0)


class ExactScalar:
    """Complex number ``(re_rat + re_root3*sqrt3) + i*(im_rat + im_root3*sqrt3)``."""

    __slots__ = ("re_rat", "re_root3", "im_rat", "im_root3")

    def __init__(self, re_rat=0, re_root3=0, im_rat=0, im_root3=0):
        self.re_rat = _frac(re_rat)
        self.re_root3 = _frac(re_root3)
        self.im_rat = _frac(im_rat)
        self.im_root3 = _frac(im_root3)

    @classmethod
    def _raw(cls, a, b, c, d) -> "ExactScalar":
        z = object.__new__(cls)
        z.re_rat, z.re_root3, z.im_rat, z.im_root3 = a, b, c, d
        return z

    @classmethod
    def coerce(cls, x) -> "ExactScalar":
        if isinstance(x, ExactScalar):
            return x
        if isinstance(x, (float, complex, np.floating, np.complexfloating)):
            raise BackendError("float value given to the exact backend")
        if isinstance(x, np.integer):
            x = int(x)
        return cls._raw(_frac(x), _ZERO, _ZERO, _ZERO)

    @classmethod
    def sqrt3(cls, coeff=1) -> "ExactScalar":
        return cls._raw(_ZERO, _frac(coeff), _ZERO, _ZERO)

    @property
    def components(self) -> tuple:
        return (self.re_rat, self.re_root3, self.im_rat, self.im_root3)

    @property
    def real(self) -> "ExactScalar":
        return ExactScalar._raw(self.re_rat, self.re_root3, _ZERO, _ZERO)

    @property
    def imag(self) -> "ExactScalar":
        return ExactScalar._raw(self.im_rat, self.im_root3, _ZERO, _ZERO)

    def is_real(self) -> bool:
        return not (self.im_rat or self.im_root3)

    def conjugate(self) -> "ExactScalar":
        return ExactScalar._raw(self.re_rat, self.re_root3, -self.im_rat, -self.im_root3)

    def __bool__(self):
        return bool(self.re_rat or self.re_root3 or self.im_rat or self.im_root3)

    def __complex__(self):
        r3 = math.sqrt(3.0)
        return complex(float(self.re_rat) + float(self.re_root3) * r3,
                       float(self.im_rat) + float(self.im_root3) * r3)

    def __float__(self):
        if not self.is_real():
            raise ValueError("complex ExactScalar has no float value")
        return float(self.re_rat) + float(self.re_root3) * math.sqrt(3.0)

    def __abs__(self) -> float:
        return abs(complex(self))

    def __neg__(self):
        return ExactScalar._raw(-self.re_rat, -self.re_root3, -self.im_rat, -self.im_root3)

    def __pos__(self):
        return self

    def __add__(self, other):
        try:
            o = ExactScalar.coerce(other)
        except BackendError:
            return NotImplemented
        if not o:
            return self
        if not self:
            return o
        return ExactScalar._raw(self.re_rat + o.re_rat, self.re_root3 + o.re_root3,
                                self.im_rat + o.im_rat, self.im_root3 + o.im_root3)

    __radd__ = __add__

    def __sub__(self, other):
        try:
            o = ExactScalar.coerce(other)
        except BackendError:
            return NotImplemented
        if not o:
            return self
        return ExactScalar._raw(self.re_rat - o.re_rat, self.re_root3 - o.re_root3,
                                self.im_rat - o.im_rat, self.im_root3 - o.im_root3)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        try:
            o = ExactScalar.coerce(other)
        except BackendError:
            return NotImplemented
        if not self or not o:
            return ZERO
        a, b, c, d = self.re_rat, self.re_root3, self.im_rat, self.im_root3
        e, g, h, k = o.re_rat, o.re_root3, o.im_rat, o.im_root3
        # (a + b r)(e + g r) = (ae + 3bg) + (ag + be) r  with r = sqrt3
        if not (c or d or h or k):
            return ExactScalar._raw(a * e + 3 * b * g, a * g + b * e, _ZERO, _ZERO)
        re0 = (a * e + 3 * b * g) - (c * h + 3 * d * k)
        re1 = (a * g + b * e) - (c * k + d * h)
        im0 = (a * h + 3 * b * k) + (c * e + 3 * d * g)
        im1 = (a * k + b * h) + (c * g + d * e)
        return ExactScalar._raw(re0, re1, im0, im1)

    __rmul__ = __mul__

    def inverse(self) -> "ExactScalar":
        if not self:
            raise ZeroDivisionError("ExactScalar division by zero")
        # 1/z = conj(z) / |z|^2 with |z|^2 = n0 + n1 sqrt3
        a, b, c, d = self.components
        n0 = a * a + 3 * b * b + c * c + 3 * d * d
        n1 = 2 * a * b + 2 * c * d
        den = n0 * n0 - 3 * n1 * n1
        inv_norm = ExactScalar._raw(n0 / den, -n1 / den, _ZERO, _ZERO)
        return self.conjugate() * inv_norm

    def __truediv__(self, other):
        try:
            o = ExactScalar.coerce(other)
        except BackendError:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return ExactScalar.coerce(other) * self.inverse()

    def __eq__(self, other):
        try:
            o = ExactScalar.coerce(other)
        except BackendError:
            return NotImplemented
        return self.components == o.components

    def __hash__(self):
        return hash(self.components)

    def __repr__(self):
        from .serialize import format_exact

        return f"ExactScalar({format_exact(self)!r})"


ZERO = ExactScalar()
ONE = ExactScalar(1)
IUNIT = ExactScalar(0, 0, 1)
HALF = ExactScalar(Fraction(1, 2))
SQRT3 = ExactScalar.sqrt3()
INV_SQRT3 = ExactScalar.sqrt3(Fraction(1, 3))


@dataclass(frozen=True)
class TimeFrame:
    """Coefficients that involve the time axis, per backend.

    ``s`` is the scale of the time basis vector (sqrt6 exact, 1 float).  In a
    frame with scale ``s`` a 9x9 generator ``M`` is stored as ``T M T^-1``
    with ``T = diag(1, ..., 1, s)``, the time-like momentum is stored as
    ``s * P9`` and coordinates as ``(x1..x8, s*x9)``.  The cubic form is
    stored multiplied by ``cubic_scale`` (sqrt(2/3) exact, 1 float).
    """

    backend: str
    scale_label: str
    k_lo: object  # sqrt(2/3)/s : (i,9) entries of K9, delta term of [P, K]
    k_hi: object  # sqrt(2/3)*s : (9,i) entries of K9, [alpha P9, K]
    p9_unit: object  # s/sqrt6 : time block of P9 is c * p9_unit / alpha
    root6_lo: object  # sqrt6/s
    s_squared: object
    g_cubic: object  # cubic_scale * sqrt(3/2)
    g_mixed: object  # cubic_scale / (2 s)
    g_time: object  # cubic_scale / s^3
    cubic_scale_label: str


_EXACT_FRAME = TimeFrame(
    backend=EXACT,
    scale_label="sqrt6",
    k_lo=ExactScalar(Fraction(1, 3)),
    k_hi=ExactScalar(2),
    p9_unit=ONE,
    root6_lo=ONE,
    s_squared=ExactScalar(6),
    g_cubic=ONE,
    g_mixed=ExactScalar(Fraction(1, 6)),
    g_time=ExactScalar(Fraction(1, 18)),
    cubic_scale_label="sqrt(2/3)",
)

_FLOAT_FRAME = TimeFrame(
    backend=FLOAT,
    scale_label="1",
    k_lo=math.sqrt(2.0 / 3.0),
    k_hi=math.sqrt(2.0 / 3.0),
    p9_unit=1.0 / math.sqrt(6.0),
    root6_lo=math.sqrt(6.0),
    s_squared=1.0,
    g_cubic=math.sqrt(1.5),
    g_mixed=0.5,
    g_time=1.0,
    cubic_scale_label="1",
)


def frame(backend: str) -> TimeFrame:
    check_backend(backend)
    return _EXACT_FRAME if backend == EXACT else _FLOAT_FRAME


def check_backend(backend: str) -> str:
    if backend not in BACKENDS:
        raise ValueError(f"unknown backend {backend!r}; expected one of {BACKENDS}")
    return backend


def scalar(x, backend: str):
    """Coerce ``x`` to the scalar type of ``backend``."""
    if backend == EXACT:
        return ExactScalar.coerce(x)
    check_backend(backend)
    return complex(x)


def is_zero_scalar(x) -> bool:
    return not x


def _coerce_array(data, backend: str) -> np.ndarray:
    a = np.array(data, dtype=object if backend == EXACT else complex)
    if a.ndim != 2:
        raise ValueError(f"matrix data must be 2-D, got shape {a.shape}")
    if backend == EXACT:
        flat = [ExactScalar.coerce(v) for v in a.ravel()]
        a = np.empty(a.shape, dtype=object)
        a.ravel()[:] = flat
    return a


class ComplexMatrix:
    """Immutable dense complex matrix tagged with its backend."""

    __slots__ = ("_a", "backend")
    __array_priority__ = 100  # keep numpy from broadcasting into us

    def __init__(self, data, backend: str = FLOAT):
        check_backend(backend)
        if isinstance(data, ComplexMatrix):
            data = data._a
        a = _coerce_array(data, backend)
        a.flags.writeable = False
        self._a = a
        self.backend = backend

    @classmethod
    def _wrap(cls, a: np.ndarray, backend: str) -> "ComplexMatrix":
        m = object.__new__(cls)
        a.flags.writeable = False
        m._a = a
        m.backend = backend
        return m

    @classmethod
    def exact(cls, data) -> "ComplexMatrix":
        return cls(data, EXACT)

    @classmethod
    def zeros(cls, rows: int, cols: int | None = None, backend: str = FLOAT):
        cols = rows if cols is None else cols
        if backend == EXACT:
            a = np.full((rows, cols), ZERO, dtype=object)
            return cls._wrap(a, EXACT)
        return cls._wrap(np.zeros((rows, cols), dtype=complex), check_backend(backend))

    @classmethod
    def identity(cls, n: int, backend: str = FLOAT):
        m = cls.zeros(n, n, backend)._a.copy()
        for k in range(n):
            m[k, k] = ONE if backend == EXACT else 1.0
        return cls._wrap(m, backend)

    @classmethod
    def unit(cls, rows: int, cols: int, r: int, c: int, value=1, backend: str = FLOAT):
        """Matrix with a single entry ``value`` at 0-based ``(r, c)``."""
        m = cls.zeros(rows, cols, backend)._a.copy()
        m[r, c] = scalar(value, backend)
        return cls._wrap(m, backend)

    @classmethod
    def block(cls, blocks) -> "ComplexMatrix":
        """Assemble from a nested list of ComplexMatrix blocks (``None`` = zero)."""
        backends = {b.backend for row in blocks for b in row if b is not None}
        if len(backends) != 1:
            raise BackendError("blocks must share one backend")
        backend = backends.pop()
        heights = [next(b.rows for b in row if b is not None) for row in blocks]
        widths = [next(row[j].cols for row in blocks if row[j] is not None)
                  for j in range(len(blocks[0]))]
        out = cls.zeros(sum(heights), sum(widths), backend)._a.copy()
        r0 = 0
        for row, h in zip(blocks, heights):
            c0 = 0
            for b, w in zip(row, widths):
                if b is not None:
                    if b.shape != (h, w):
                        raise ValueError("block sizes do not line up")
                    out[r0:r0 + h, c0:c0 + w] = b._a
                c0 += w
            r0 += h
        return cls._wrap(out, backend)

    @property
    def array(self) -> np.ndarray:
        return self._a

    @property
    def shape(self) -> tuple[int, int]:
        return self._a.shape

    @property
    def rows(self) -> int:
        return self._a.shape[0]

    @property
    def cols(self) -> int:
        return self._a.shape[1]

    @property
    def entries(self) -> tuple:
        return tuple(self._a.ravel())

    def is_square(self) -> bool:
        return self.rows == self.cols

    def at(self, r: int, c: int):
        """Entry at 1-based row ``r`` and column ``c``."""
        if not (1 <= r <= self.rows and 1 <= c <= self.cols):
            raise IndexError(f"({r}, {c}) outside a {self.rows}x{self.cols} matrix")
        return self._a[r - 1, c - 1]

    def sub(self, r0: int, r1: int, c0: int, c1: int) -> "ComplexMatrix":
        """0-based half-open sub-block."""
        return ComplexMatrix._wrap(self._a[r0:r1, c0:c1].copy(), self.backend)

    def to_float(self) -> "ComplexMatrix":
        if self.backend == FLOAT:
            return self
        a = np.array([complex(v) for v in self._a.ravel()], dtype=complex).reshape(self.shape)
        return ComplexMatrix._wrap(a, FLOAT)

    def to_numpy(self) -> np.ndarray:
        return np.array(self.to_float()._a)

    def _same(self, other: "ComplexMatrix") -> None:
        if not isinstance(other, ComplexMatrix):
            raise TypeError(f"expected ComplexMatrix, got {type(other).__name__}")
        if other.backend != self.backend:
            raise BackendError(f"cannot combine {self.backend} and {other.backend} matrices")

    def _scalar(self, x):
        if self.backend == EXACT:
            return ExactScalar.coerce(x)
        return complex(x)

    def __add__(self, other):
        self._same(other)
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        return ComplexMatrix._wrap(self._a + other._a, self.backend)

    def __sub__(self, other):
        self._same(other)
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        return ComplexMatrix._wrap(self._a - other._a, self.backend)

    def __neg__(self):
        return ComplexMatrix._wrap(-self._a, self.backend)

    def __mul__(self, k):
        if isinstance(k, ComplexMatrix):
            raise TypeError("use @ for matrix products")
        k = self._scalar(k)
        if self.backend == EXACT and not k:
            return ComplexMatrix.zeros(self.rows, self.cols, EXACT)
        return ComplexMatrix._wrap(self._a * k, self.backend)

    __rmul__ = __mul__

    def __matmul__(self, other):
        self._same(other)
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        if self.backend == FLOAT:
            return ComplexMatrix._wrap(self._a @ other._a, FLOAT)
        return ComplexMatrix._wrap(_exact_matmul(self._a, other._a), EXACT)

    def __eq__(self, other):
        if not isinstance(other, ComplexMatrix):
            return NotImplemented
        if other.backend != self.backend or other.shape != self.shape:
            return False
        return bool(np.all(self._a == other._a))

    __hash__ = None

    def is_zero(self, tol: float = 0.0) -> bool:
        if self.backend == EXACT:
            return not any(self._a.ravel())
        return self.max_abs() <= tol

    def max_abs(self) -> float:
        if self.rows * self.cols == 0:
            return 0.0
        if self.backend == EXACT:
            return max((abs(v) for v in self._a.ravel() if v), default=0.0)
        return float(np.abs(self._a).max())

    def transpose(self) -> "ComplexMatrix":
        return ComplexMatrix._wrap(self._a.T.copy(), self.backend)

    def conj(self) -> "ComplexMatrix":
        if self.backend == EXACT:
            a = np.empty(self.shape, dtype=object)
            a.ravel()[:] = [v.conjugate() for v in self._a.ravel()]
            return ComplexMatrix._wrap(a, EXACT)
        return ComplexMatrix._wrap(self._a.conj(), FLOAT)

    def __repr__(self):
        return f"ComplexMatrix({self.rows}x{self.cols}, backend={self.backend!r})"


def _exact_matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    # skip zeros; generator matrices are mostly empty
    n, m = a.shape
    p = b.shape[1]
    out = np.full((n, p), ZERO, dtype=object)
    b_rows = [[(c, v) for c, v in enumerate(b[k]) if v] for k in range(m)]
    for r in range(n):
        acc = {}
        for k, v in enumerate(a[r]):
            if not v:
                continue
            for c, w in b_rows[k]:
                t = v * w
                acc[c] = acc[c] + t if c in acc else t
        for c, t in acc.items():
            out[r, c] = t
    return out


def _square_pair(A: ComplexMatrix, B: ComplexMatrix) -> None:
    if not isinstance(A, ComplexMatrix) or not isinstance(B, ComplexMatrix):
        raise TypeError("commutator arguments must be ComplexMatrix")
    if A.backend != B.backend:
        raise BackendError(f"cannot combine {A.backend} and {B.backend} matrices")
    if not A.is_square() or A.shape != B.shape:
        raise ValueError(f"need square matrices of equal size, got {A.shape} and {B.shape}")


def commutator(A: ComplexMatrix, B: ComplexMatrix) -> ComplexMatrix:
    _square_pair(A, B)
    return A @ B - B @ A


def anticommutator(A: ComplexMatrix, B: ComplexMatrix) -> ComplexMatrix:
    _square_pair(A, B)
    return A @ B + B @ A


def dagger(A: ComplexMatrix) -> ComplexMatrix:
    return A.conj().transpose()


def trace(A: ComplexMatrix):
    if not A.is_square():
        raise ValueError(f"trace of a non-square {A.shape} matrix")
    diag = [A.array[k, k] for k in range(A.rows)]
    if A.backend == EXACT:
        return sum(diag, ZERO)
    return complex(sum(diag))


def frobenius_distance(A: ComplexMatrix, B: ComplexMatrix) -> float:
    if A.shape != B.shape:
        raise ValueError(f"shape mismatch {A.shape} vs {B.shape}")
    diff = A.to_float().array - B.to_float().array
    return float(np.sqrt(np.sum(np.abs(diff) ** 2)))


def lincomb(coeffs, mats, backend: str | None = None) -> ComplexMatrix:
    """``sum_k coeffs[k] * mats[k]``, skipping zero coefficients."""
    mats = list(mats)
    if not mats:
        raise ValueError("lincomb of an empty family")
    backend = backend or mats[0].backend
    out = ComplexMatrix.zeros(mats[0].rows, mats[0].cols, backend)
    for c, m in zip(coeffs, mats):
        if c:
            out = out + m * c
    return out


# Pade(13) scaling and squaring; coefficients and theta_13 from Higham (2005).
_PADE13 = (64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
           1187353796428800.0, 129060195264000.0, 10559470521600.0,
           670442572800.0, 33522128640.0, 1323241920.0, 40840800.0,
           960960.0, 16380.0, 182.0, 1.0)
_THETA13 = 5.371920351148152


def expm_array(A: np.ndarray) -> np.ndarray:
    """exp of a square complex ndarray via Pade(13) scaling and squaring."""
    A = np.asarray(A, dtype=complex)
    n = A.shape[0]
    if not A.any():
        return np.eye(n, dtype=complex)
    norm = np.abs(A).sum(axis=0).max() if n else 0.0
    s = max(0, int(math.ceil(math.log2(norm / _THETA13)))) if norm > _THETA13 else 0
    A = A / (2.0 ** s)
    b = _PADE13
    ident = np.eye(n, dtype=complex)
    A2 = A @ A
    A4 = A2 @ A2
    A6 = A4 @ A2
    U = A @ (A6 @ (b[13] * A6 + b[11] * A4 + b[9] * A2)
             + b[7] * A6 + b[5] * A4 + b[3] * A2 + b[1] * ident)
    V = (A6 @ (b[12] * A6 + b[10] * A4 + b[8] * A2)
         + b[6] * A6 + b[4] * A4 + b[2] * A2 + b[0] * ident)
    R = np.linalg.solve(V - U, V + U)
    for _ in range(s):
        R = R @ R
    return R


def matrix_exp(M: ComplexMatrix) -> ComplexMatrix:
    if M.backend != FLOAT:
        raise BackendError("matrix_exp needs the float backend; exponentials leave Q(sqrt3)")
    if not M.is_square():
        raise ValueError(f"matrix_exp of a non-square {M.shape} matrix")
    return ComplexMatrix._wrap(expm_array(M.array), FLOAT)


def solve(A: np.ndarray, b: np.ndarray, backend: str, tol: float = ALGEBRAIC_TOL):
    """Solve the square system ``A x = b``.

    Exact: Gaussian elimination over Q(sqrt3)+iQ(sqrt3).  Float: LU with
    partial pivoting followed by a residual check.  Raises AlgebraError on a
    singular system.
    """
    n = A.shape[0]
    if A.shape != (n, n) or b.shape[0] != n:
        raise ValueError("solve needs a square system")
    if backend == FLOAT:
        A = np.asarray(A, dtype=complex)
        b = np.asarray(b, dtype=complex)
        if np.linalg.matrix_rank(A) < n:
            raise AlgebraError("singular system")
        x = np.linalg.solve(A, b)
        if np.abs(A @ x - b).max(initial=0.0) > tol * max(1.0, np.abs(b).max(initial=0.0)):
            raise AlgebraError("float solve residual above tolerance")
        return x
    M = [[ExactScalar.coerce(v) for v in row] + [ExactScalar.coerce(b[r])]
         for r, row in enumerate(A)]
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col]), None)
        if piv is None:
            raise AlgebraError("singular system")
        M[col], M[piv] = M[piv], M[col]
        inv = M[col][col].inverse()
        M[col] = [v * inv for v in M[col]]
        for r in range(n):
            if r != col and M[r][col]:
                k = M[r][col]
                M[r] = [v - k * w for v, w in zip(M[r], M[col])]
    x = np.empty(n, dtype=object)
    x[:] = [M[r][n] for r in range(n)]
    return x

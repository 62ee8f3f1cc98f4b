"""Text forms for exact scalars, and JSON/CSV rendering of matrices and tensors.

Exact values are written as strings ``"p/q + r/s√3"`` (the ASCII spelling
``sqrt3`` is accepted on input).  Complex entries are split into ``re`` and
``im`` strings.
"""
from __future__ import annotations

import csv
import io
import re
from fractions import Fraction

import numpy as np

from .numerics import EXACT, FLOAT, ComplexMatrix, ExactScalar

ROOT3 = "√3"


def _fmt_pair(a: Fraction, b: Fraction) -> str:
    if not b:
        return str(a)
    mag = abs(b)
    root = ROOT3 if mag == 1 else f"{mag}{ROOT3}"
    if not a:
        return f"-{root}" if b < 0 else root
    return f"{a} {'-' if b < 0 else '+'} {root}"


def format_real(z: ExactScalar) -> str:
    return _fmt_pair(z.re_rat, z.re_root3)


def format_exact(z: ExactScalar) -> str:
    """Human-readable form; purely real values print without an imaginary part."""
    re_s = _fmt_pair(z.re_rat, z.re_root3)
    if z.is_real():
        return re_s
    im_s = _fmt_pair(z.im_rat, z.im_root3)
    if not (z.re_rat or z.re_root3):
        return f"i*({im_s})"
    return f"{re_s} + i*({im_s})"


_TERM = re.compile(r"\s*([+-]?)\s*([0-9]+(?:/[0-9]+)?)?\s*(√3|sqrt3|sqrt\(3\))?\s*")


def parse_real(text: str) -> ExactScalar:
    """Parse ``"a + b√3"`` style text into a real ExactScalar."""
    s = text.strip()
    if not s:
        raise ValueError("empty exact value")
    rat = Fraction(0)
    root = Fraction(0)
    pos = 0
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos or not (m.group(2) or m.group(3)):
            raise ValueError(f"cannot parse exact value {text!r}")
        sign = -1 if m.group(1) == "-" else 1
        num = Fraction(m.group(2)) if m.group(2) else Fraction(1)
        if m.group(3):
            root += sign * num
        else:
            rat += sign * num
        pos = m.end()
    return ExactScalar(rat, root)


def parse_entry(re_text: str, im_text: str = "0") -> ExactScalar:
    r = parse_real(re_text)
    i = parse_real(im_text)
    return ExactScalar(r.re_rat, r.re_root3, i.re_rat, i.re_root3)


def matrix_to_dict(m: ComplexMatrix, name: str, index: int | None = None) -> dict:
    out = {"name": name, "rows": m.rows, "cols": m.cols}
    if index is not None:
        out["index"] = index
    vals = m.entries
    if m.backend == EXACT:
        out["re"] = [format_real(v.real) for v in vals]
        out["im"] = [format_real(v.imag) for v in vals]
    else:
        out["re"] = [float(complex(v).real) for v in vals]
        out["im"] = [float(complex(v).imag) for v in vals]
    return out


def matrix_from_dict(obj: dict, backend: str) -> ComplexMatrix:
    rows, cols = obj["rows"], obj["cols"]
    if backend == EXACT:
        vals = [parse_entry(r, i) for r, i in zip(obj["re"], obj["im"])]
        a = np.empty(rows * cols, dtype=object)
        a[:] = vals
        return ComplexMatrix(a.reshape(rows, cols), EXACT)
    vals = [complex(r, i) for r, i in zip(obj["re"], obj["im"])]
    return ComplexMatrix(np.array(vals).reshape(rows, cols), FLOAT)


def matrices_to_csv(rep: str, named: list[tuple[str, ComplexMatrix]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["rep", "name", "row", "col", "re", "im"])
    for name, m in named:
        d = matrix_to_dict(m, name)
        for k, (re_v, im_v) in enumerate(zip(d["re"], d["im"])):
            w.writerow([rep, name, k // m.cols + 1, k % m.cols + 1, re_v, im_v])
    return buf.getvalue()


def structure_records(tensor: np.ndarray, kind: str) -> list[dict]:
    """Nonzero entries in canonical order (i<j<k for f, i<=j<=k for d), 1-based."""
    n = tensor.shape[0]
    out = []
    for i in range(n):
        for j in range(i if kind == "d" else i + 1, n):
            for k in range(j if kind == "d" else j + 1, n):
                v = tensor[i, j, k]
                if not v:
                    continue
                if isinstance(v, ExactScalar):
                    value = format_real(v)
                else:
                    value = float(v)
                out.append({"i": i + 1, "j": j + 1, "k": k + 1, "value": value})
    return out

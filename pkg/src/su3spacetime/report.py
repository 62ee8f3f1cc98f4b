"""Check records and the verification report written by ``verify``."""
from __future__ import annotations

import json
import platform
import time
from dataclasses import asdict, dataclass, field

from .numerics import ExactScalar
from .serialize import format_exact

SCHEMA_VERSION = 1
AT_MOST = "<="
ABOVE = ">"


def _residual_value(r) -> float:
    if isinstance(r, ExactScalar):
        return abs(r)
    return float(r)


@dataclass(frozen=True)
class Check:
    """One verified relation.

    ``comparison`` is ``"<="`` for residual checks (pass iff residual <= tolerance)
    and ``">"`` for the few lower-bound checks that demand a nonzero effect.
    """

    id: str
    ref: str
    suite: str
    backend: str
    residual: float
    tolerance: float
    exact: bool = False
    comparison: str = AT_MOST
    detail: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        if self.comparison == ABOVE:
            return self.residual > self.tolerance
        if self.exact:
            return self.residual == 0.0
        return self.residual <= self.tolerance

    def to_dict(self) -> dict:
        out = asdict(self)
        out["passed"] = self.passed
        if self.exact and self.residual == 0.0:
            out["residual_text"] = "0"
        return out


def make_check(id: str, ref: str, suite: str, backend: str, residual, tolerance: float = 0.0,
               *, exact: bool | None = None, comparison: str = AT_MOST, **detail) -> Check:
    """Build a Check; an ExactScalar residual marks the check as exact unless told otherwise."""
    if exact is None:
        exact = isinstance(residual, ExactScalar)
    if isinstance(residual, ExactScalar) and residual:
        detail.setdefault("residual_exact", format_exact(residual))
    return Check(id, ref, suite, backend, _residual_value(residual), float(tolerance),
                 exact, comparison, detail)


class VerificationReport:
    def __init__(self, suite: str, backend: str, seed: int, tolerance: float):
        self.suite = suite
        self.backend = backend
        self.seed = seed
        self.tolerance = tolerance
        self.checks: list[Check] = []
        self.timing: dict[str, float] = {}
        self.perturbations: list[str] = []
        self.notes: dict = {}
        self._t0 = time.perf_counter()

    def add(self, check: Check) -> Check:
        if any(c.id == check.id for c in self.checks):
            raise ValueError(f"duplicate check id {check.id!r}")
        self.checks.append(check)
        return check

    def extend(self, checks) -> None:
        for c in checks:
            self.add(c)

    def time_suite(self, name: str, seconds: float) -> None:
        self.timing[name] = round(seconds, 4)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def to_dict(self) -> dict:
        self.timing.setdefault("total", round(time.perf_counter() - self._t0, 4))
        return {
            "schema_version": SCHEMA_VERSION,
            "suite": self.suite,
            "backend": self.backend,
            "seed": self.seed,
            "tolerance": self.tolerance,
            "perturbations": self.perturbations,
            "passed": self.passed,
            "counts": {"total": len(self.checks), "failed": len(self.failures)},
            "timing": self.timing,
            "python": platform.python_version(),
            "notes": self.notes,
            "checks": [c.to_dict() for c in self.checks],
        }

    def to_json(self, indent: int = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent, sort_keys=False, default=_json_default)

    def summary(self) -> str:
        lines = []
        width = max((len(c.id) for c in self.checks), default=10)
        for c in self.checks:
            mark = "PASS" if c.passed else "FAIL"
            if c.exact and c.residual == 0.0:
                res = "0 (exact)"
            else:
                res = f"{c.residual:.3e} {c.comparison} {c.tolerance:.1e}"
            lines.append(f"[{mark}] {c.id:<{width}}  {res}")
        n, nf = len(self.checks), len(self.failures)
        lines.append(f"{n - nf}/{n} checks passed (suite={self.suite}, backend={self.backend}, seed={self.seed})")
        return "\n".join(lines)


def _json_default(obj):
    if isinstance(obj, ExactScalar):
        return format_exact(obj)
    if hasattr(obj, "tolist"):
        return obj.tolist()
    if hasattr(obj, "item"):
        return obj.item()
    raise TypeError(f"cannot serialize {type(obj).__name__}")

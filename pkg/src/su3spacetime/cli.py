"""Command line: ``gens``, ``structure``, ``transform`` and ``verify``.

Exit codes: 0 success (all checks pass), 1 a verification check failed,
2 usage error.  ``SU3ST_TOLERANCE`` and ``SU3ST_SEED`` supply defaults for
``--tolerance`` and ``--seed``.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

import numpy as np

from .invariants import invariant_ledger
from .ninerep import nine_rep, ten_rep
from .numerics import BACKENDS, EXACT
from .serialize import matrices_to_csv, matrix_to_dict, structure_records
from .sixrep import branch_symbol, momentum_rep, parse_branch, triplet_vk
from .su3 import antitriplet, structure_constants
from .suites import ALL, DEFAULT_SEED, SUITE_NAMES, run
from .transforms import TransformParams, apply, lorentz9, poincare10

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

VALID_COMBOS = {
    "3": ("J", "K", "V"),
    "3bar": ("J",),
    "6": ("J", "K", "V", "P"),
    "9": ("J", "K"),
    "10": ("J", "K", "P"),
}


class UsageError(Exception):
    pass


def _combo_list() -> str:
    return "; ".join(f"rep {r}: {', '.join(w)}" for r, w in VALID_COMBOS.items())


def _generator_set(rep: str, branch: int, backend: str):
    if rep == "3":
        return triplet_vk(1, 1, backend)
    if rep == "3bar":
        return antitriplet(backend)
    if rep == "6":
        return momentum_rep(branch, 1, 1, backend)
    if rep == "9":
        return nine_rep(branch, backend=backend)
    return ten_rep(branch, backend=backend)


def select_family(rep: str, which: str, branch, backend: str):
    """``(GeneratorSet, matrices)`` for one family; raises UsageError on an invalid combination."""
    if rep not in VALID_COMBOS:
        raise UsageError(f"unknown rep {rep!r}; valid combinations: {_combo_list()}")
    if which not in VALID_COMBOS[rep]:
        raise UsageError(f"--which {which} is not available for rep {rep}; valid combinations: {_combo_list()}")
    gens = _generator_set(rep, parse_branch(branch), backend)
    return gens, {"J": gens.J, "K": gens.K, "V": gens.V, "P": gens.V}[which]


def gens_payload(rep: str, which: str, branch, backend: str) -> dict:
    gens, family = select_family(rep, which, branch, backend)
    branch = parse_branch(branch)
    mats = [matrix_to_dict(m, f"{which}{n}", n) for n, m in enumerate(family, start=1)]
    uses_branch = rep in ("6", "9", "10") and which != "J"
    return {
        "rep": rep,
        "which": which,
        "branch": branch_symbol(branch) if uses_branch else None,
        "backend": backend,
        "time_scale": gens.time_scale,
        "matrices": mats,
    }


def _parse_vec(text: str | None, n: int, name: str) -> np.ndarray:
    if text is None:
        return np.zeros(n)
    try:
        vals = [float(t) for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise UsageError(f"--{name}: {exc}") from None
    if len(vals) != n:
        raise UsageError(f"--{name} needs {n} comma-separated reals, got {len(vals)}")
    if not all(np.isfinite(vals)):
        raise UsageError(f"--{name} has non-finite values")
    return np.array(vals)


def transform_payload(theta, phi, a, branch, x) -> dict:
    p = TransformParams(theta, phi, a, parse_branch(branch))
    xv = np.asarray(x, dtype=float)
    moved = apply(poincare10(p), xv) if np.any(p.a) else apply(lorentz9(p), xv)
    ledger = invariant_ledger(xv, moved)
    return {
        "branch": branch_symbol(p.branch),
        "theta": p.theta.tolist(), "phi": p.phi.tolist(), "a": p.a.tolist(),
        "x": xv.tolist(),
        "x_prime": moved.x.tolist(),
        "ledger": ledger,
    }


def _parse_perturbation(text: str):
    """``f:1,2,3:1e-6`` -> ("f", (1, 2, 3), Fraction)."""
    try:
        tensor, idx, eps = text.split(":")
        index = tuple(int(v) for v in idx.split(","))
        value = Fraction(eps)
    except ValueError:
        raise UsageError(f"--perturb {text!r}: expected TENSOR:I,J,K:EPS, e.g. f:1,2,3:1e-6") from None
    if tensor not in ("f", "d") or len(index) != 3 or not all(1 <= v <= 9 for v in index):
        raise UsageError(f"--perturb {text!r}: tensor must be f or d and indices in 1..9")
    return tensor, index, value


def _env(name: str, cast, default):
    raw = os.environ.get(name)
    if raw is None:
        return default
    try:
        return cast(raw)
    except ValueError:
        raise UsageError(f"environment variable {name}={raw!r} is not a valid {cast.__name__}") from None


def _emit(text: str, output: str | None) -> None:
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")


def cmd_gens(args) -> int:
    if args.format == "json":
        payload = gens_payload(args.rep, args.which, args.branch, args.backend)
        _emit(json.dumps(payload, indent=2), args.output)
    else:
        _, family = select_family(args.rep, args.which, args.branch, args.backend)
        named = [(f"{args.which}{n}", m) for n, m in enumerate(family, start=1)]
        _emit(matrices_to_csv(args.rep, named), args.output)
    return EXIT_OK


def cmd_structure(args) -> int:
    sc = structure_constants(args.backend)
    f = structure_records(sc.f, "f")
    d = structure_records(sc.d, "d")
    if args.format == "json":
        _emit(json.dumps({"backend": args.backend, "f": f, "d": d}, indent=2), args.output)
    else:
        lines = ["tensor,i,j,k,value"]
        lines += [f"{name},{r['i']},{r['j']},{r['k']},{r['value']}" for name, recs in (("f", f), ("d", d))
                  for r in recs]
        _emit("\n".join(lines) + "\n", args.output)
    return EXIT_OK


def cmd_transform(args) -> int:
    payload = transform_payload(_parse_vec(args.theta, 8, "theta"), _parse_vec(args.phi, 8, "phi"),
                                _parse_vec(args.a, 9, "a"), args.branch, _parse_vec(args.x, 9, "x"))
    _emit(json.dumps(payload, indent=2), args.output)
    return EXIT_OK


def cmd_verify(args) -> int:
    seed = args.seed if args.seed is not None else _env("SU3ST_SEED", int, DEFAULT_SEED)
    tol = args.tolerance if args.tolerance is not None else _env("SU3ST_TOLERANCE", float, None)
    if tol is not None and not tol >= 0:
        raise UsageError(f"tolerance must be a nonnegative number, got {tol}")
    sc = None
    if args.perturb:
        sc = structure_constants(EXACT)
        for text in args.perturb:
            tensor, index, eps = _parse_perturbation(text)
            sc = sc.perturbed(tensor, index, eps)
    report = run(args.suite, args.backend, seed, tol, sc, args.perturb)
    if args.output:
        _emit(report.to_json(), args.output)
    if not args.quiet:
        print(report.summary())
    elif not report.passed:
        for c in report.failures:
            print(f"[FAIL] {c.id}  residual={c.residual:.3e} tolerance={c.tolerance:.1e}")
    return EXIT_OK if report.passed else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="su3st", description="SU(3)-spacetime generators, transformations and algebra verification.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, formats=True):
        p.add_argument("--backend", choices=BACKENDS, default=EXACT)
        p.add_argument("--output", help="write to this file instead of stdout")
        if formats:
            p.add_argument("--format", choices=("json", "csv"), default="json")

    g = sub.add_parser("gens", help="emit generator matrices")
    g.add_argument("--rep", required=True, choices=tuple(VALID_COMBOS))
    g.add_argument("--which", required=True, choices=("J", "K", "V", "P"))
    g.add_argument("--branch", default="+", choices=("+", "-"))
    common(g)
    g.set_defaults(func=cmd_gens)

    s = sub.add_parser("structure", help="emit nonzero f and d entries")
    common(s)
    s.set_defaults(func=cmd_structure)

    t = sub.add_parser("transform", help="apply a rotation, boost and translation to a 9-vector",
                       description="Vectors are comma-separated; write negative leading values "
                                   "as --theta=-1,0,... so they are not read as flags.")
    t.add_argument("--theta", help="8 rotation angles")
    t.add_argument("--phi", help="8 boost parameters")
    t.add_argument("--a", help="9 translation components")
    t.add_argument("--x", required=True, help="9 coordinates, time last")
    t.add_argument("--branch", default="+", choices=("+", "-"))
    t.add_argument("--output")
    t.set_defaults(func=cmd_transform)

    v = sub.add_parser("verify", help="run verification suites")
    v.add_argument("--suite", choices=SUITE_NAMES + (ALL,), default=ALL)
    v.add_argument("--backend", choices=BACKENDS, default=EXACT)
    v.add_argument("--seed", type=int, default=None, help=f"default $SU3ST_SEED or {DEFAULT_SEED}")
    v.add_argument("--tolerance", type=float, default=None,
                   help="tolerance for float-backend algebraic checks (default $SU3ST_TOLERANCE or per check)")
    v.add_argument("--output", help="write the JSON report here")
    v.add_argument("--perturb", action="append", metavar="T:I,J,K:EPS",
                   help="shift one structure-constant entry before verifying (repeatable)")
    v.add_argument("--quiet", action="store_true", help="print failures only")
    v.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        code = args.func(args)
        sys.stdout.flush()
        return code
    except UsageError as exc:
        parser.exit(EXIT_USAGE, f"{parser.prog} {args.command}: error: {exc}\n")
    except BrokenPipeError:
        # downstream reader closed early (e.g. piped into head)
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())

"""Command line front end.

    meanbounds means 4 1
    meanbounds divergence 0.8,0.2 0.2,0.8 --kinds AG,AH
    meanbounds bounds --problem problem.json --kinds all --chained
    meanbounds verify --samples 100000 --seed 42
    meanbounds report --problem problem.json

Exit codes: 0 success, 1 a verification or bound check failed, 2 bad usage
or input. Reports go to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from . import __version__
from .bounds import TIE_TOLERANCE, all_bounds, chained_bounds, sharpness_check
from .classification import bayes_error, load_problem
from .divergence import ERRATA, GeneratorKind, csiszar_divergence
from .errors import DomainError, ShapeError, ValidationError
from .means import MeanDiffKind, all_differences, all_means
from .verification import VerificationConfig, render_json, render_table, run_all

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2


class UsageError(Exception):
    pass


# --- rendering ---------------------------------------------------------------

def _fmt_table(v) -> str:
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, float):
        return f"{v:.9g}"
    return str(v)


def _fmt_csv(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)
    return str(v)


def render(header, rows, fmt: str) -> str:
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([_fmt_csv(v) for v in row])
        return buf.getvalue()
    cells = [list(header)] + [[_fmt_table(v) for v in row] for row in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    lines = []
    for j, r in enumerate(cells):
        lines.append("  ".join(c.ljust(w) if i == 0 else c.rjust(w)
                               for i, (c, w) in enumerate(zip(r, widths))).rstrip())
        if j == 0:
            lines.append("  ".join("-" * w for w in widths))
    return "\n".join(lines) + "\n"


# --- argument helpers ----------------------------------------------------------

def _positive(name: str, text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise UsageError(f"argument {name}: not a number: {text!r}") from None
    if not (v > 0 and v != float("inf")):
        raise UsageError(f"argument {name}: must be a positive finite number, got {text}")
    return v


def _kinds(text: str) -> list[GeneratorKind]:
    if text.strip().lower() == "all":
        return list(GeneratorKind)
    try:
        return [MeanDiffKind.parse(t) for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise UsageError(f"argument --kinds: {exc}") from None


def _vector(name: str, text: str) -> list[float]:
    try:
        return [float(t) for t in text.split(",")]
    except ValueError:
        raise UsageError(f"argument {name}: expected comma-separated numbers, got {text!r}") from None


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


# --- subcommands ---------------------------------------------------------------

def run_means(args, out) -> int:
    a = _positive("a", args.a)
    b = _positive("b", args.b)
    out.write(render(["mean", "value"], [(k.value, v) for k, v in all_means(a, b)],
                     args.format))
    out.write("\n")
    out.write(render(["difference", "value"],
                     [(k.value, v) for k, v in all_differences(a, b)], args.format))
    return EXIT_OK


def run_divergence(args, out) -> int:
    p = _vector("p", args.p)
    q = _vector("q", args.q)
    rows = [(k.value, csiszar_divergence(k, p, q)) for k in _kinds(args.kinds)]
    out.write(render(["kind", "divergence"], rows, args.format))
    return EXIT_OK


def _load(path):
    try:
        return load_problem(path)
    except OSError as exc:
        raise UsageError(f"cannot read problem file {path}: {exc.strerror}") from None


def run_bounds(args, out, err) -> int:
    problem = _load(args.problem)
    reports = all_bounds(problem, _kinds(args.kinds), published=args.published)
    header = ["kind", "divergence", "coefficient", "bound", "exact_error", "slack"]
    rows = [(r.kind.value, r.divergence, r.coefficient, r.bound, r.exact_error, r.slack)
            for r in reports]
    out.write(render(header, rows, args.format))
    if args.chained:
        out.write("\n")
        rows = [(c.chain, c.source_kind.value, c.chain_coefficient, c.chained_bound,
                 c.direct_bound, c.margin) for c in chained_bounds(problem)]
        out.write(render(["chain", "kind", "chain_coefficient", "chained_bound",
                          "direct_bound", "margin"], rows, args.format))
        out.write("\n")
        checks = sharpness_check(problem)
        rows = [(s.kind.value, s.direct_coefficient, s.chained_coefficient, s.direct_bound,
                 s.chained_bound, s.margin, s.holds) for s in checks]
        out.write(render(["kind", "direct_coefficient", "chained_coefficient",
                          "direct_bound", "chained_bound", "margin", "sharper"],
                         rows, args.format))
        if not all(s.holds for s in checks):
            err.write("error: a direct bound exceeds its chained counterpart\n")
            return EXIT_FAILED
    broken = [r for r in reports if not r.valid]
    if broken:
        for r in broken:
            err.write(f"error: {r.kind} bound {r.bound!r} is below the exact "
                      f"error {r.exact_error!r}\n")
        return EXIT_FAILED
    return EXIT_OK


def run_verify(args, out) -> int:
    try:
        config = VerificationConfig(
            samples=args.samples,
            seed=args.seed,
            tolerance=args.tolerance,
            alphabet_sizes=tuple(args.alphabet_sizes),
            problems=args.problems,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    outcomes = run_all(config)
    if args.format == "json":
        out.write(render_json(outcomes, config))
    else:
        out.write(render_table(outcomes))
    return EXIT_OK if all(o.passed for o in outcomes) else EXIT_FAILED


def run_report(args, out) -> int:
    problem = _load(args.problem)
    reports = all_bounds(problem)
    checks = sharpness_check(problem)
    doc = {
        "problem": problem.to_dict(),
        "bayes_error": bayes_error(problem),
        "bounds": [
            {"kind": r.kind.value, "divergence": r.divergence, "coefficient": r.coefficient,
             "bound": r.bound, "raw_bound": r.raw_bound, "exact_error": r.exact_error,
             "slack": r.slack}
            for r in reports
        ],
        "chained": [
            {"chain": c.chain, "kind": c.source_kind.value,
             "chain_coefficient": c.chain_coefficient, "chained_bound": c.chained_bound,
             "direct_bound": c.direct_bound, "margin": c.margin}
            for c in chained_bounds(problem)
        ],
        "sharpness": [
            {"kind": s.kind.value, "direct_coefficient": s.direct_coefficient,
             "chained_coefficient": s.chained_coefficient, "margin": s.margin,
             "sharper": s.holds}
            for s in checks
        ],
        "errata": {k.value: msg for k, msg in ERRATA.items()},
    }
    out.write(json.dumps(doc, indent=2) + "\n")
    ok = all(r.slack >= -TIE_TOLERANCE for r in reports) and all(s.holds for s in checks)
    return EXIT_OK if ok else EXIT_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="meanbounds",
        description="Mean-difference divergences and Bayes error bounds.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("means", help="all seven means and eleven differences of (a, b)")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--format", choices=("table", "csv"), default="table")

    p = sub.add_parser("divergence", help="f-divergences between two pmfs")
    p.add_argument("p", help="comma-separated pmf, e.g. 0.8,0.2")
    p.add_argument("q", help="comma-separated pmf")
    p.add_argument("--kinds", default="all", help="comma-separated kinds or 'all'")
    p.add_argument("--format", choices=("table", "csv"), default="table")

    p = sub.add_parser("bounds", help="error bounds for a problem file")
    p.add_argument("--problem", required=True, metavar="FILE")
    p.add_argument("--kinds", default="all", help="comma-separated kinds or 'all'")
    p.add_argument("--chained", action="store_true",
                   help="append chained bounds and sharpness margins")
    p.add_argument("--published", action="store_true",
                   help="use the published slope constants (differs for N2N1)")
    p.add_argument("--format", choices=("table", "csv"), default="table")

    p = sub.add_parser("verify", help="run the randomized verification suite")
    p.add_argument("--samples", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--tolerance", type=float, default=1e-12)
    p.add_argument("--alphabet-sizes", type=_int_list, default=[2, 3, 4, 8, 16])
    p.add_argument("--problems", type=int, default=None,
                   help="random problems per alphabet size (default samples/10)")
    p.add_argument("--format", choices=("table", "json"), default="table")

    p = sub.add_parser("report", help="full JSON report for a problem file")
    p.add_argument("--problem", required=True, metavar="FILE")
    return parser


def main(argv=None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    try:
        if args.command == "means":
            return run_means(args, out)
        if args.command == "divergence":
            return run_divergence(args, out)
        if args.command == "bounds":
            return run_bounds(args, out, err)
        if args.command == "verify":
            return run_verify(args, out)
        return run_report(args, out)
    except (UsageError, ValidationError, ShapeError, DomainError) as exc:
        err.write(f"meanbounds {args.command}: error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

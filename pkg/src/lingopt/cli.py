"""Command-line front end.

    lingopt solve pr         --problem case-solop --codebook paper-hma
    lingopt solve two-tuple  --problem case-solop
    lingopt solve tsukamoto  --problem sm-solop
    lingopt export-fou       --codebook paper-hma --out fous.csv
    lingopt sample           --spec endpoints.txt --n 50 --seed 7 --out data.txt

Reports are deterministic: identical invocations produce identical bytes.
Exit codes: 0 success, 2 usage error, 3 data/invariant error, 4 engine error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import tsukamoto as tsk
from .codebook import (
    STUDENT_ENDPOINTS,
    CodebookError,
    EndpointSpecError,
    format_data_intervals,
    load_codebook,
    parse_endpoint_specs,
    sample_person_fou,
)
from .fuzzy import DomainError, IT2Word, LingoptError
from .problems import (
    EngineMismatchError,
    ProblemBundle,
    ProblemError,
    load_problem,
    solve_pr_bundle,
    solve_two_tuple_bundle,
)
from .reasoning import NoRuleFiredError
from .similarity import DegenerateWordError, Discretization
from .twotuple import OutOfScaleError, overflow_check

USAGE_ERROR, DATA_ERROR, ENGINE_ERROR = 2, 3, 4


class _Row:
    """Minimal fixed-width column writer shared by the table reports."""

    def __init__(self, widths):
        self.widths = widths

    def __call__(self, *cells) -> str:
        return "  ".join(str(c).ljust(w) for c, w in zip(cells, self.widths)).rstrip()


def _fmt(x: float) -> str:
    return f"{x:.2f}"


def _emit(lines, fmt: str) -> str:
    if fmt == "csv":
        out = []
        for line in lines:
            out.append(",".join(line.split()))
        return "\n".join(out) + "\n"
    return "\n".join(lines) + "\n"


def _fou_cells(w: IT2Word) -> list[str]:
    cells = [_fmt(v) for v in w.umf.vertices]
    cells += [_fmt(v) for v in w.lmf.vertices]
    cells.append(_fmt(w.lmf.h))
    return cells


def _solve_pr(bundle: ProblemBundle, args) -> str:
    cb = load_codebook(args.codebook or bundle.codebook_id)
    d = Discretization(points=args.grid, scale=cb.scale)
    result = solve_pr_bundle(bundle, cb, d, levels=args.levels)
    row = _Row([11, 9] + [6] * 9 + [6, 6, 6, 4])
    lines = [
        "engine = pr",
        f"problem = {bundle.name}",
        f"codebook = {args.codebook or bundle.codebook_id}",
        f"levels = {args.levels}",
        f"grid = {args.grid}",
        "",
        row(
            "alternative", "objective",
            "umf_a", "umf_b", "umf_c", "umf_d",
            "lmf_a", "lmf_b", "lmf_c", "lmf_d", "lmf_h",
            "cl", "cr", "mean", "word",
        ),
    ]
    for alt in bundle.alternatives:
        for obj, out in zip(bundle.objectives, result.outputs[alt.label]):
            c = out.centroid
            lines.append(
                row(alt.label, obj.name, *_fou_cells(out.fou), _fmt(c.cl), _fmt(c.cr), _fmt(c.mean), out.decoded)
            )
    lines += ["", "ranking = " + " > ".join(result.ranking)]
    return _emit(lines, args.format)


def _solve_two_tuple(bundle: ProblemBundle, args) -> str:
    result = solve_two_tuple_bundle(bundle)
    row = _Row([11, 9, 5, 6, 6])
    lines = [
        "engine = two-tuple",
        f"problem = {bundle.name}",
        "",
        row("alternative", "objective", "term", "alpha", "beta"),
    ]
    protruding = []
    for alt in bundle.alternatives:
        for obj, t in zip(bundle.objectives, result.outputs[alt.label]):
            lines.append(
                row(alt.label, obj.name, result.term_set.label(t.index), _fmt(t.alpha), _fmt(t.beta))
            )
            report = overflow_check(t, result.term_set)
            if report.protrudes:
                protruding.append((alt.label, obj.name, t, report))
    lines += ["", "ranking = " + " > ".join(result.ranking)]
    if protruding:
        lines.append("")
        for label, obj, t, report in protruding:
            lines.append(
                f"overflow: {label}/{obj} ({report.term}, {t.alpha:.2f}) "
                f"protrudes {report.protrusion:.2f} term spacings past the scale"
            )
        if args.strict_scale:
            raise OutOfScaleError(
                f"{len(protruding)} output(s) protrude past the term scale (strict mode)"
            )
    return _emit(lines, args.format)


def _solve_tsukamoto(args) -> str:
    rules, constraint, directions = tsk.fixture(args.problem)
    result = tsk.optimize(rules, constraint, directions, step=args.step)
    q = len(directions)
    row = _Row([8] * (len(result.points[0]) + q))
    headers = [f"y{i+1}" for i in range(len(result.points[0]))] + [f"f{k+1}" for k in range(q)]
    lines = [
        "engine = tsukamoto",
        f"problem = {args.problem}",
        f"step = {args.step:g}",
        "",
        row(*headers),
    ]
    for point, values in zip(result.points, result.values):
        lines.append(row(*[f"{v:.4f}" for v in point], *[f"{v:.4f}" for v in values]))
    optimum = " ".join(f"{v:.4f}" for v in result.values[0])
    lines += ["", f"optimum = {optimum}"]
    return _emit(lines, args.format)


def _cmd_solve(args) -> int:
    if args.engine == "tsukamoto":
        if args.problem not in ("sm-solop", "sm-molop"):
            raise EngineMismatchError(
                f"the tsukamoto engine solves the crisp fixtures 'sm-solop'/'sm-molop', "
                f"not {args.problem!r}"
            )
        sys.stdout.write(_solve_tsukamoto(args))
        return 0
    bundle = load_problem(args.problem)
    if args.engine == "pr":
        sys.stdout.write(_solve_pr(bundle, args))
    else:
        sys.stdout.write(_solve_two_tuple(bundle, args))
    return 0


def _cmd_export_fou(args) -> int:
    items: list[tuple[str, IT2Word]] = []
    if args.problem:
        bundle = load_problem(args.problem)
        cb = load_codebook(args.codebook or bundle.codebook_id)
        result = solve_pr_bundle(bundle, cb, levels=args.levels)
        for alt in bundle.alternatives:
            for obj, out in zip(bundle.objectives, result.outputs[alt.label]):
                items.append((f"{alt.label}:{obj.name}", out.fou))
    elif args.codebook:
        cb = load_codebook(args.codebook)
        items = [(w.name, w) for w in cb.words]
    else:
        raise ProblemError("export-fou needs --codebook and/or --problem")

    lines = ["name,curve,x1,mu1,x2,mu2,x3,mu3,x4,mu4"]
    for name, w in items:
        for curve, trap in (("UMF", w.umf), ("LMF", w.lmf)):
            verts = [(trap.a, 0.0), (trap.b, trap.h), (trap.c, trap.h), (trap.d, 0.0)]
            flat = ",".join(f"{x:.4f},{mu:.4f}" for x, mu in verts)
            lines.append(f"{name},{curve},{flat}")
    text = "\n".join(lines) + "\n"
    if args.out == "-":
        sys.stdout.write(text)
    else:
        Path(args.out).write_text(text)
    return 0


def _cmd_sample(args) -> int:
    if args.spec == "paper-endpoints":
        specs = STUDENT_ENDPOINTS
    else:
        path = Path(args.spec)
        if not path.exists():
            raise EndpointSpecError(f"no such end-point spec file: {args.spec!r}")
        specs = parse_endpoint_specs(path.read_text())
    sets = [
        sample_person_fou(spec, n=args.n, seed=args.seed + i) for i, spec in enumerate(specs)
    ]
    text = format_data_intervals(sets, seed=args.seed)
    if args.out == "-":
        sys.stdout.write(text)
    else:
        Path(args.out).write_text(text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lingopt", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", help="run an engine on a problem bundle")
    solve.add_argument("engine", choices=["pr", "two-tuple", "tsukamoto"])
    solve.add_argument("--problem", required=True, help="problem fixture id or file")
    solve.add_argument("--codebook", default=None, help="codebook fixture id or file")
    solve.add_argument("--levels", type=int, default=101, help="alpha levels for the LWA")
    solve.add_argument("--grid", type=int, default=1001, help="discretization points")
    solve.add_argument("--step", type=float, default=1e-3, help="tsukamoto grid step")
    solve.add_argument("--format", choices=["table", "csv"], default="table")
    solve.add_argument(
        "--strict-scale",
        action="store_true",
        help="treat 2-tuple outputs that protrude past the term scale as errors",
    )
    solve.set_defaults(fn=_cmd_solve)

    export = sub.add_parser("export-fou", help="write FOU polygon vertices as CSV")
    export.add_argument("--codebook", default=None)
    export.add_argument("--problem", default=None)
    export.add_argument("--levels", type=int, default=101)
    export.add_argument("--out", required=True, help="output path, or - for stdout")
    export.set_defaults(fn=_cmd_export_fou)

    sample = sub.add_parser("sample", help="draw person-FOU data intervals")
    sample.add_argument("--spec", required=True, help="end-point spec file or 'paper-endpoints'")
    sample.add_argument("--n", type=int, default=50)
    sample.add_argument("--seed", type=int, default=0)
    sample.add_argument("--out", required=True, help="output path, or - for stdout")
    sample.set_defaults(fn=_cmd_sample)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except EngineMismatchError as e:
        print(f"lingopt: usage error: {e}", file=sys.stderr)
        return USAGE_ERROR
    except (NoRuleFiredError, tsk.NoRuleFiredError, DegenerateWordError, OutOfScaleError) as e:
        print(f"lingopt: engine error: {e}", file=sys.stderr)
        return ENGINE_ERROR
    except (ProblemError, CodebookError, EndpointSpecError) as e:
        print(f"lingopt: data error: {e}", file=sys.stderr)
        return DATA_ERROR
    except (DomainError, LingoptError) as e:
        print(f"lingopt: error: {e}", file=sys.stderr)
        return DATA_ERROR


if __name__ == "__main__":
    sys.exit(main())

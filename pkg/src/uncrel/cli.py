"""Command-line front end.

A thin client over the service layer: each subcommand builds the same request
model the HTTP endpoints accept and calls the handler in-process, so CLI and
service outputs agree field for field. JSON and CSV are the stable machine
formats; the table format is for humans and may change.

Exit codes: 0 success, 1 input error, 2 numerical defect (a mathematically
guaranteed bound reported unsatisfied, or a failed check), 3 infeasible
search (no state met the requested constraints within budget).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from pydantic import ValidationError

from . import __version__
from .errors import NumericalIntegrityError, ToolkitError
from .problemfile import ProblemFile, load_problem, problem_to_payload, save_problem
from .relations import REPORT_FIELDS
from .search import SampleConfig, sample_gue_observables, sample_haar_states
from .service import handlers, schemas

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_DEFECT = 2
EXIT_INFEASIBLE = 3

CHECK_FIELDS = ("name", "value", "threshold", "pass", "note")
TALLY_FIELDS = ("id", "kind", "satisfied", "saturated", "trivial", "violations")


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _json_text(payload: dict) -> str:
    return json.dumps(payload, indent=2) + "\n"


def _csv_text(rows: list[dict], fields: tuple[str, ...]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(fields)
    for row in rows:
        writer.writerow(["" if row.get(f) is None else _cell(row.get(f)) for f in fields])
    return buf.getvalue()


def _cell(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _table_text(rows: list[dict], fields: tuple[str, ...]) -> str:
    cells = [[_fmt_short(row.get(f)) for f in fields] for row in rows]
    widths = [max(len(f), *(len(c[i]) for c in cells)) if cells else len(f) for i, f in enumerate(fields)]
    lines = ["  ".join(f.ljust(w) for f, w in zip(fields, widths))]
    lines.append("  ".join("-" * w for w in widths))
    for c in cells:
        lines.append("  ".join(v.ljust(w) for v, w in zip(c, widths)))
    return "\n".join(lines) + "\n"


def _fmt_short(value) -> str:
    if value is None:
        return "-"
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, float):
        return f"{value:.6g}"
    return str(value)


def _load_problem_payload(path: str | None) -> schemas.ProblemPayload | None:
    if path is None:
        return None
    problem = load_problem(path)
    return schemas.ProblemPayload(**problem_to_payload(problem))


def _add_operand_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--problem", metavar="FILE", help="problem file with named observables/states")
    p.add_argument("--A", default="pauli-x", help="observable label (problem entry or preset)")
    p.add_argument("--B", default="pauli-z", help="observable label (problem entry or preset)")
    p.add_argument("--preset-dim", type=int, default=2, help="dimension for preset operands")


def _add_output_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("json", "csv", "table"), default="table")
    p.add_argument("--out", metavar="FILE", help="write output here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="uncrel",
        description="Evaluate, fuzz, and extremize uncertainty relations for "
        "finite-dimensional observables.",
    )
    parser.add_argument("--version", action="version", version=f"uncrel {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("report", help="evaluate the full relation registry on one triple")
    _add_operand_flags(p)
    p.add_argument("--state", default="basis-0", help="state label (problem entry or basis-K)")
    p.add_argument("--tol", type=float, default=1e-9, help="relative tolerance")
    p.add_argument("--sat-tol", type=float, default=1e-7, help="relative saturation tolerance")
    _add_output_flags(p)

    p = sub.add_parser("fuzz", help="randomized soundness campaign over GUE/Haar draws")
    p.add_argument("--dim", type=int, default=2)
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--sat-tol", type=float, default=1e-7)
    p.add_argument("--relations", help="comma-separated relation ids (default: all binary)")
    _add_output_flags(p)

    p = sub.add_parser("critical", help="critical-point constructions and checks")
    crit = p.add_subparsers(dest="mode", required=True)

    pe = crit.add_parser("eigenstate", help="trivialization battery at an eigenvector")
    _add_operand_flags(pe)
    pe.add_argument("--which", choices=("A", "B"), default="B")
    pe.add_argument("--index", type=int, default=0, help="eigenvector index (ascending values)")
    _add_output_flags(pe)

    pu = crit.add_parser("uncorrelated", help="search for an uncorrelated non-eigenstate")
    _add_operand_flags(pu)
    pu.add_argument("--tol", type=float, default=1e-8, help="correlation modulus target")
    pu.add_argument("--min-dev", type=float, default=0.1, help="minimum deviation for both observables")
    pu.add_argument("--budget", type=int, default=4096, help="objective evaluation budget")
    pu.add_argument("--seed", type=int, default=0)
    _add_output_flags(pu)

    p = sub.add_parser("extremize", help="search the state sphere for extremal relation gaps")
    _add_operand_flags(p)
    p.add_argument("--relation", default="HR")
    p.add_argument("--direction", choices=("minimize-gap", "maximize-gap"), default="minimize-gap")
    p.add_argument("--restarts", type=int, default=8)
    p.add_argument("--max-evals", type=int, default=1000, help="evaluations per restart")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--sat-tol", type=float, default=1e-7)
    p.add_argument("--trace-out", metavar="FILE", help="write the (evaluation, gap) trace here")
    _add_output_flags(p)

    p = sub.add_parser("make-problem", help="write a seeded sample problem file")
    p.add_argument("--dim", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--states", type=int, default=1, help="number of Haar states to include")
    p.add_argument("--out", metavar="FILE", required=True)

    return parser


def _cmd_report(args) -> int:
    req = schemas.ReportRequest(
        problem=_load_problem_payload(args.problem),
        a=args.A,
        b=args.B,
        preset_dim=args.preset_dim,
        state=args.state,
        tolerance=args.tol,
        saturation_tolerance=args.sat_tol,
    )
    resp = handlers.run_report(req)
    if args.format == "json":
        _emit(_json_text(resp.model_dump(by_alias=True)), args.out)
    else:
        rows = [r.model_dump() for r in resp.reports]
        text = _csv_text(rows, REPORT_FIELDS) if args.format == "csv" else _table_text(rows, REPORT_FIELDS)
        _emit(text, args.out)
    return EXIT_OK if resp.all_satisfied else EXIT_DEFECT


def _cmd_fuzz(args) -> int:
    relations = None
    if args.relations:
        relations = [name.strip() for name in args.relations.split(",") if name.strip()]
    req = schemas.FuzzRequest(
        dimension=args.dim,
        trials=args.trials,
        seed=args.seed,
        tolerance=args.tol,
        saturation_tolerance=args.sat_tol,
        relations=relations,
    )
    resp = handlers.run_fuzz(req)
    if args.format == "json":
        _emit(_json_text(resp.model_dump(by_alias=True)), args.out)
    else:
        rows = [t.model_dump() for t in resp.relations]
        text = _csv_text(rows, TALLY_FIELDS) if args.format == "csv" else _table_text(rows, TALLY_FIELDS)
        _emit(text, args.out)
    return EXIT_OK if resp.clean else EXIT_DEFECT


def _render_checks(checks: list[schemas.CheckModel], fmt: str, out: str | None) -> None:
    rows = [c.model_dump(by_alias=True) for c in checks]
    text = _csv_text(rows, CHECK_FIELDS) if fmt == "csv" else _table_text(rows, CHECK_FIELDS)
    _emit(text, out)


def _cmd_critical_eigenstate(args) -> int:
    req = schemas.EigenstateRequest(
        problem=_load_problem_payload(args.problem),
        a=args.A,
        b=args.B,
        preset_dim=args.preset_dim,
        which=args.which,
        index=args.index,
    )
    resp = handlers.run_eigenstate(req)
    if args.format == "json":
        _emit(_json_text(resp.model_dump(by_alias=True)), args.out)
    else:
        _render_checks(resp.checks, args.format, args.out)
    return EXIT_OK if resp.all_passed else EXIT_DEFECT


def _cmd_critical_uncorrelated(args) -> int:
    req = schemas.UncorrelatedRequest(
        problem=_load_problem_payload(args.problem),
        a=args.A,
        b=args.B,
        preset_dim=args.preset_dim,
        tol=args.tol,
        min_dev=args.min_dev,
        budget=args.budget,
        seed=args.seed,
    )
    resp = handlers.run_uncorrelated(req)
    if args.format == "json":
        _emit(_json_text(resp.model_dump(by_alias=True)), args.out)
    else:
        _render_checks(resp.consequence_checks, args.format, args.out)
    return EXIT_OK if resp.success else EXIT_INFEASIBLE


def _cmd_extremize(args) -> int:
    req = schemas.ExtremizeRequestModel(
        problem=_load_problem_payload(args.problem),
        a=args.A,
        b=args.B,
        preset_dim=args.preset_dim,
        relation=args.relation,
        direction=args.direction,
        restarts=args.restarts,
        max_evals=args.max_evals,
        seed=args.seed,
        tolerance=args.tol,
        saturation_tolerance=args.sat_tol,
        include_trace=bool(args.trace_out),
    )
    resp = handlers.run_extremize(req)
    if args.trace_out and resp.trace is not None:
        trace_rows = [{"evaluation": int(i), "gap": g} for i, g in resp.trace]
        _emit(_csv_text(trace_rows, ("evaluation", "gap")), args.trace_out)
    payload = resp.model_dump(by_alias=True)
    payload.pop("trace", None)
    if args.format == "json":
        _emit(_json_text(payload), args.out)
    else:
        row = {
            "relation": resp.relation,
            "direction": resp.direction,
            "best_gap": resp.best_gap,
            "evaluations_used": resp.evaluations_used,
            "restarts_used": resp.restarts_used,
            "defect": resp.defect,
        }
        text = (
            _csv_text([row], tuple(row))
            if args.format == "csv"
            else _table_text([row], tuple(row))
        )
        _emit(text, args.out)
    return EXIT_DEFECT if resp.defect else EXIT_OK


def _cmd_make_problem(args) -> int:
    observables = sample_gue_observables(
        SampleConfig(dimension=args.dim, seed=args.seed, count=2, stream=0)
    )
    states = sample_haar_states(
        SampleConfig(dimension=args.dim, seed=args.seed, count=max(args.states, 1), stream=2)
    )
    problem = ProblemFile(
        dim=args.dim,
        observables={"A": observables[0], "B": observables[1]},
        states={f"phi{k}" if k else "phi": s for k, s in enumerate(states)},
    )
    save_problem(problem, args.out)
    return EXIT_OK


_DISPATCH = {
    "report": _cmd_report,
    "fuzz": _cmd_fuzz,
    "extremize": _cmd_extremize,
    "make-problem": _cmd_make_problem,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "critical":
            runner = (
                _cmd_critical_eigenstate if args.mode == "eigenstate" else _cmd_critical_uncorrelated
            )
            return runner(args)
        return _DISPATCH[args.command](args)
    except NumericalIntegrityError as exc:
        print(f"numerical defect: {exc}", file=sys.stderr)
        return EXIT_DEFECT
    except (ToolkitError, ValidationError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())

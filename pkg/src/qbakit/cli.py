"""Command-line front door.

Subcommands: correct | sweep | synth | estimate-errors | serve.

Exit codes: 0 success, 1 usage or I/O error, 2 mathematically invalid QBA
inputs (the correction produced an out-of-range cell) so pipelines can
distinguish bad data from bad usage.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import reports
from .contours import contour_lines
from .estimation import VarianceMethod
from .exceptions import QbaError, TooFewValidCells
from .phenotype import aggregate_confusion, read_records_csv
from .sweep import FULL_GRID_CELL_CAP, SweepSpec, frontier, run_sweep
from .synthspace import (
    DEFAULT_INCIDENCES,
    DEFAULT_N_PER_ARM,
    DEFAULT_ORS,
    ScenarioSpec,
    StratumResult,
    estimable_curve,
    full_space,
    sweep_stratum,
)
from .tables import ArmErrors, ErrorModel, ObservedTable

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INVALID_QBA = 2


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on usage errors; 2 is reserved for invalid QBA
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _add_table_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--a", type=float, required=True,
                        help="outcome-positive count, target arm")
    parser.add_argument("--b", type=float, required=True,
                        help="outcome-positive count, comparator arm")
    parser.add_argument("--n1", type=float, required=True, help="target arm total")
    parser.add_argument("--n0", type=float, required=True, help="comparator arm total")


def _add_error_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--sens", type=float, help="non-differential sensitivity")
    parser.add_argument("--spec", type=float, help="non-differential specificity")
    parser.add_argument("--sens-t", type=float, help="target-arm sensitivity")
    parser.add_argument("--spec-t", type=float, help="target-arm specificity")
    parser.add_argument("--sens-c", type=float, help="comparator-arm sensitivity")
    parser.add_argument("--spec-c", type=float, help="comparator-arm specificity")


def _parse_error_model(parser: argparse.ArgumentParser, args) -> ErrorModel:
    differential = [args.sens_t, args.spec_t, args.sens_c, args.spec_c]
    if args.sens is not None or args.spec is not None:
        if any(v is not None for v in differential):
            parser.error("--sens/--spec and --sens-t/... are mutually exclusive")
        if args.sens is None or args.spec is None:
            parser.error("--sens and --spec must be given together")
        return ErrorModel.non_differential(args.sens, args.spec)
    if any(v is None for v in differential):
        parser.error("provide --sens/--spec or all of --sens-t/--spec-t/--sens-c/--spec-c")
    return ErrorModel.differential(
        ArmErrors(args.sens_t, args.spec_t), ArmErrors(args.sens_c, args.spec_c)
    )


def _write_out(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8", newline="")


def _cmd_correct(parser, args) -> int:
    table = ObservedTable(args.a, args.b, args.n1, args.n0)
    errors = _parse_error_model(parser, args)
    method = VarianceMethod(args.method)
    doc = reports.correction_report(table, errors, method)

    if args.format == "json":
        _write_out(reports.to_json(doc), args.out)
    else:
        lines = []
        obs = doc["observed_estimate"]
        if obs is None:
            lines.append(f"observed OR: undefined ({doc['observed_estimate_error']})")
        else:
            lines.append(
                f"observed OR: {obs['odds_ratio']:.3f} "
                f"(95% CI {obs['ci_lower']:.3f}-{obs['ci_upper']:.3f}, "
                f"SE log-OR {obs['se_log_or']:.4f})"
            )
        corr = doc["correction"]
        if corr["kind"] == "invalid":
            for diag in corr["diagnostics"]:
                value = diag["corrected_positive"]
                shown = "undefined" if value is None else f"{value:.2f}"
                lines.append(
                    f"invalid: corrected {diag['offending_cell']}={shown} "
                    f"({diag['reason']}, {diag['arm']} arm, "
                    f"numerator {diag['numerator']:.4f}, "
                    f"denominator {diag['denominator']:.6f})"
                )
        else:
            lines.append(
                f"corrected cells: A={corr['A']:.3f} B={corr['B']:.3f} "
                f"C={corr['C']:.3f} D={corr['D']:.3f}"
            )
            est = doc["corrected_estimate"]
            if est is None:
                lines.append(
                    f"corrected OR: undefined ({doc['corrected_estimate_error']})"
                )
            else:
                lines.append(
                    f"corrected OR: {est['odds_ratio']:.3f} "
                    f"(95% CI {est['ci_lower']:.3f}-{est['ci_upper']:.3f}, "
                    f"SE log-OR {est['se_log_or']:.4f}, {est['variance_method']})"
                )
            metrics = doc["metrics"]
            if metrics is not None:
                lines.append(
                    f"bias difference: {metrics['bias_difference']:.3f}  "
                    f"relative bias: {metrics['relative_bias_pct']:.2f}%  "
                    f"relative precision: {metrics['relative_precision_pct']:.2f}%"
                )
        _write_out("\n".join(lines) + "\n", args.out)

    return EXIT_INVALID_QBA if doc["correction"]["kind"] == "invalid" else EXIT_OK


def _cmd_sweep(parser, args) -> int:
    table = ObservedTable(args.a, args.b, args.n1, args.n0)
    spec = SweepSpec(
        table,
        sens_min=args.sens_min, sens_max=args.sens_max,
        spec_min=args.spec_min, spec_max=args.spec_max,
        step=args.step,
    )
    if args.full:
        grid = run_sweep(spec, emit="full_grid", cell_cap=args.cap)
        _write_out(reports.sweep_grid_csv(grid), args.out)
    else:
        result = frontier(spec, strategy=args.strategy)
        _write_out(reports.frontier_csv(result), args.out)
    return EXIT_OK


def _cmd_synth(parser, args) -> int:
    if (args.ip is None) != (getattr(args, "or") is None):
        parser.error("--ip and --or must be given together")

    if args.ip is not None:
        space = [sweep_stratum(ScenarioSpec(args.ip, getattr(args, "or"), args.n))]
    else:
        space = full_space(DEFAULT_INCIDENCES, DEFAULT_ORS, n_per_arm=args.n)

    strata = [s for s in space if isinstance(s, StratumResult)]
    if not strata:
        print("synth: every stratum failed", file=sys.stderr)
        return EXIT_USAGE

    table_csv = reports.stratum_csv(strata)
    if args.out is None:
        sys.stdout.write(table_csv)
        return EXIT_OK

    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)
    (outdir / "strata.csv").write_text(table_csv, encoding="utf-8", newline="")
    (outdir / "estimable.csv").write_text(
        reports.estimable_csv(estimable_curve(space)), encoding="utf-8", newline=""
    )
    contour_docs = []
    manifest = []
    for item in space:
        entry = reports.manifest_entry(item)
        if isinstance(item, StratumResult):
            try:
                contour_docs.append(reports.contours_to_dict(contour_lines(item)))
            except TooFewValidCells as exc:
                entry["contours"] = f"skipped: {exc}"
        manifest.append(entry)
    (outdir / "contours.json").write_text(
        reports.to_json(contour_docs), encoding="utf-8", newline=""
    )
    (outdir / "manifest.json").write_text(
        reports.to_json(manifest), encoding="utf-8", newline=""
    )
    return EXIT_OK


def _cmd_estimate_errors(parser, args) -> int:
    with open(args.records, encoding="utf-8") as stream:
        records = read_records_csv(stream)
    est = aggregate_confusion(records)
    doc = {
        "tp": est.tp, "fp": est.fp, "fn": est.fn, "tn": est.tn,
        "sensitivity": est.sensitivity, "specificity": est.specificity,
        "ppv": est.ppv, "npv": est.npv,
    }
    if args.format == "csv":
        header = ",".join(doc)
        values = ",".join(repr(v) for v in doc.values())
        _write_out(f"{header}\n{values}\n", args.out)
    else:
        _write_out(reports.to_json(doc), args.out)
    return EXIT_OK


def _cmd_serve(parser, args) -> int:
    import socket

    import uvicorn

    from .service import create_app

    host = os.environ.get("QBAKIT_HOST", args.host)
    port = int(os.environ.get("QBAKIT_PORT", args.port))
    sock = socket.create_server((host, port))
    bound_host, bound_port = sock.getsockname()[:2]
    print(f"listening on http://{bound_host}:{bound_port}", flush=True)
    config = uvicorn.Config(create_app(), log_level="warning")
    uvicorn.Server(config).run(sockets=[sock])
    return EXIT_OK


def build_parser() -> _Parser:
    parser = _Parser(prog="qbakit", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("correct", help="correct one observed 2x2 table")
    _add_table_args(p)
    _add_error_args(p)
    p.add_argument("--method", choices=[m.value for m in VarianceMethod],
                   default=VarianceMethod.WOOLF_CORRECTED.value)
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_correct)

    p = sub.add_parser("sweep", help="sensitivity/specificity sweep")
    _add_table_args(p)
    p.add_argument("--sens-min", type=float, default=0.0)
    p.add_argument("--sens-max", type=float, default=1.0)
    p.add_argument("--spec-min", type=float, default=0.0)
    p.add_argument("--spec-max", type=float, default=1.0)
    p.add_argument("--step", type=float, default=1e-4)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--frontier", action="store_true", default=True,
                      help="emit per-sensitivity validity frontier (default)")
    mode.add_argument("--full", action="store_true",
                      help="emit the full grid (capped)")
    p.add_argument("--strategy", choices=["binary", "linear"], default="binary")
    p.add_argument("--cap", type=int, default=FULL_GRID_CELL_CAP)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("synth", help="synthetic grid-space evaluation")
    p.add_argument("--ip", type=float, help="single-stratum incidence")
    p.add_argument("--or", type=float, dest="or", help="single-stratum uncorrected OR")
    p.add_argument("--n", type=float, default=DEFAULT_N_PER_ARM,
                   help="subjects per arm")
    p.add_argument("--out", help="output directory (stdout CSV when omitted)")
    p.set_defaults(func=_cmd_synth)

    p = sub.add_parser("estimate-errors",
                       help="aggregate phenotype evaluation records")
    p.add_argument("--records", required=True, help="CSV of evaluation records")
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_estimate_errors)

    p = sub.add_parser("serve", help="run the HTTP JSON service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8760)
    p.set_defaults(func=_cmd_serve)

    for sp in sub.choices.values():
        sp.add_argument("--threads", type=int, default=None,
                        help="cap kernel threads")
        sp.add_argument("--seed", type=int, default=None,
                        help="reserved; current pipeline is deterministic")

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.threads is not None:
        try:
            import numba

            numba.set_num_threads(max(1, args.threads))
        except ImportError:
            pass
    try:
        return args.func(parser, args)
    except (QbaError, ValueError, OSError) as exc:
        print(f"qbakit: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())

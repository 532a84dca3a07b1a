"""
Command-line surface: probabilities, flows, the verification suite, experiments and tables.

    python cli.py prob --family cycle:4 --engine exact
    python cli.py flow deform --input prescription.json
    python cli.py verify --level deep --jobs 4
    python cli.py experiment threshold --x -0.6 --n 8 --seed 1
"""
import argparse
import csv
import io
import json
import logging
import sys
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence

from complexes.builders import family_from_spec
from complexes.models import Graph
from complexes.schemas import load_graph
from engines import ENGINES, compute_prob
from errors import InputError, MorseFlowError
from families.table import COLUMNS, family_table
from flows.schemas import DeformIn, PrescriptionIn, parse_prescription_json, run_flow
from randlab import experiments
from settings import settings
from verification import LEVELS, run_checks


logger = logging.getLogger(__name__)

EXPERIMENT_COLUMNS = ["experiment", "n", "N_or_p", "x", "samples", "hits", "estimate", "ci", "seed"]


# Output

def _csv_text(rows: List[dict], columns: Optional[Sequence[str]] = None) -> str:
    columns = list(columns or (rows[0].keys() if rows else []))
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=columns, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buffer.getvalue()


def emit(payload: dict, args, rows: Optional[List[dict]] = None, columns: Optional[Sequence[str]] = None):
    """Write JSON, or CSV when rows are given and requested; a CSV file gets a JSON mirror."""
    fmt = args.format or settings.OUTPUT_FORMAT
    if fmt == "csv" and rows is None:
        rows = [payload]
    text = _csv_text(rows, columns) if fmt == "csv" else json.dumps(payload, indent=2) + "\n"
    if args.output:
        path = Path(args.output)
        path.write_text(text, encoding="utf-8")
        if fmt == "csv":
            path.with_suffix(".json").write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")
        logger.info("wrote %s", path)
    else:
        sys.stdout.write(text)


def _graph(args) -> Graph:
    if bool(args.input) == bool(args.family):
        raise InputError("give exactly one of --input or --family")
    return family_from_spec(args.family) if args.family else load_graph(args.input)


def _require_seed(args):
    if args.seed is None:
        raise InputError("--seed is required here")


def _ints(text: str) -> List[int]:
    try:
        return [int(x) for x in text.split(",") if x]
    except ValueError as e:
        raise InputError(f"expected comma-separated integers, got '{text}'") from e


def _floats(text: str) -> List[float]:
    try:
        return [float(x) for x in text.split(",") if x]
    except ValueError as e:
        raise InputError(f"expected comma-separated numbers, got '{text}'") from e


def _artifact(kind: str, args, result) -> dict:
    config = {k: v for k, v in vars(args).items() if k not in ("handler", "output") and v is not None}
    return {"experiment": kind, "config": config, "created_at": settings.get_tz().isoformat(), "result": result}


# Subcommands

def cmd_prob(args) -> int:
    g = _graph(args)
    if args.engine == "mc":
        _require_seed(args)
    result = compute_prob(g, args.engine, seed=args.seed, samples=args.samples, limit=args.limit, jobs=args.jobs)
    emit(result.report().model_dump(), args)
    return 0


def cmd_flow(args) -> int:
    if not args.input:
        raise InputError("flow needs --input with a prescription file")
    try:
        text = Path(args.input).read_text(encoding="utf-8")
    except OSError as e:
        raise InputError(f"cannot read {args.input}: {e.strerror}") from e
    model = DeformIn if args.action == "deform" else PrescriptionIn
    request = parse_prescription_json(text, args.input, model)
    if args.family:
        request = request.model_copy(update={"family": args.family, "graph": None, "complex": None})
    if args.action == "deform":
        request = request.model_copy(update={"policy": args.policy, "seed": args.seed})
    emit(run_flow(args.action, request).model_dump(), args)
    return 0


def cmd_verify(args) -> int:
    report = run_checks(args.level, jobs=args.jobs)
    rows = [r.to_dict() for r in report.results]
    emit({"level": report.level, "passed": report.passed, "checks": rows}, args,
         rows=[{"check": r.name, "passed": r.passed} for r in report.results])
    return 0 if report.passed else 1


def _threshold(args) -> dict:
    _require_seed(args)
    grid = _ints(args.N_grid) if args.N_grid else list(range(0, args.n * (args.n - 1) // 2 + 1))
    scan = experiments.threshold_scan(args.x, args.n, grid, args.samples_per_cell, args.seed,
                                      engine=args.engine, mc_samples=args.samples)
    return {
        "rows": scan.to_rows(),
        "result": {"cells": scan.to_rows(), "monotone_violations": scan.monotone_violations()},
    }


def _gnp(args) -> dict:
    _require_seed(args)
    sweep = experiments.gnp_sweep(args.n, _floats(args.ps), args.samples_per_cell, args.seed,
                                  engine=args.engine, mc_samples=args.samples)
    cells = [{"p": c.p, "mean": c.mean, "std": c.std, "edgeless": c.edgeless, "histogram": c.histogram()}
             for c in sweep.cells]
    return {"rows": sweep.to_rows(), "result": {"cells": cells}}


def _trees(args) -> dict:
    if args.mode == "sampled":
        _require_seed(args)
    sizes = _ints(args.sizes) if args.sizes else [args.n]
    trend = [experiments.tree_extremes(n, args.mode, args.seed, args.samples or 1000) for n in sizes]
    rows = [{"n": t.n, "mode": t.mode, "h_min": t.h_min, "h_max": t.h_max, "trees": t.trees_scanned,
             "shapes": t.shapes} for t in trend]
    return {"rows": rows, "result": {"trend": [t.to_json() for t in trend]}}


def _density(args) -> dict:
    targets = experiments.density_targets(args.points)
    witnesses = experiments.density_witnesses(targets, eps=args.eps)
    rows = [{"target": w.target, "n": w.n, "m": w.m, "h": w.h, "error": w.error} for w in witnesses]
    return {"rows": rows, "result": {"witnesses": rows}}


def _convexity(args) -> dict:
    if not args.family or not args.family2:
        raise InputError("convexity needs --family and --family2")
    report = experiments.convexity_check(family_from_spec(args.family), family_from_spec(args.family2))
    return {"rows": [report.to_json()], "result": report.to_json()}


def _monotone(args) -> dict:
    _require_seed(args)
    report = experiments.monotone_pairs(args.pairs, args.n, args.seed)
    result = {"pairs": report.pairs, "prob_violations": report.prob_violations,
              "h_violations": report.h_violations,
              "examples": [{"graph": big.to_json(), "subgraph": small.to_json()} for big, small in report.examples]}
    return {"rows": [{k: v for k, v in result.items() if k != "examples"}], "result": result}


EXPERIMENTS: Dict[str, Callable[..., dict]] = {
    "threshold": _threshold,
    "gnp": _gnp,
    "trees": _trees,
    "density": _density,
    "convexity": _convexity,
    "monotone": _monotone,
}


def cmd_experiment(args) -> int:
    outcome = EXPERIMENTS[args.kind](args)
    columns = EXPERIMENT_COLUMNS if args.kind in ("threshold", "gnp") else None
    emit(_artifact(args.kind, args, outcome["result"]), args, rows=outcome["rows"], columns=columns)
    return 0


def cmd_table(args) -> int:
    rows = [row.to_dict() for row in family_table(args.n_max)]
    emit({"n_max": args.n_max, "rows": rows}, args, rows=rows, columns=COLUMNS)
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    uvicorn.run("main:app", host=args.host or settings.HOST, port=args.port or settings.PORT)
    return 0


# Parser

def _common(parser: argparse.ArgumentParser):
    parser.add_argument("--input", help="graph JSON / edge list, or a prescription JSON for `flow`")
    parser.add_argument("--family", help="family spec, e.g. cycle:4 or octopus:2,1,1")
    parser.add_argument("--engine", choices=ENGINES, default="auto")
    parser.add_argument("--seed", type=int)
    parser.add_argument("--samples", type=int, help="Monte Carlo samples per probability")
    parser.add_argument("--jobs", type=int, default=settings.JOBS)
    parser.add_argument("--format", choices=["json", "csv"])
    parser.add_argument("--output", help="write here instead of stdout")
    parser.add_argument("--limit", type=int, help="brute-force prescription limit")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="morseflow", description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    prob = sub.add_parser("prob", help="P(Γ) and h(Γ) of a graph")
    _common(prob)
    prob.set_defaults(handler=cmd_prob)

    flow = sub.add_parser("flow", help="check, deform or turn a prescription into a Morse function")
    flow.add_argument("action", choices=["check", "deform", "morse"])
    flow.add_argument("--policy", choices=["first", "random"], default="first")
    _common(flow)
    flow.set_defaults(handler=cmd_flow)

    verify = sub.add_parser("verify", help="cross-engine agreement suite")
    verify.add_argument("--level", choices=LEVELS, default="default")
    _common(verify)
    verify.set_defaults(handler=cmd_verify)

    experiment = sub.add_parser("experiment", help="random-graph experiments")
    experiment.add_argument("kind", choices=sorted(EXPERIMENTS))
    experiment.add_argument("--x", type=float, default=-0.6)
    experiment.add_argument("--n", type=int, default=8)
    experiment.add_argument("--N-grid", dest="N_grid", help="comma-separated edge counts")
    experiment.add_argument("--ps", default="0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9")
    experiment.add_argument("--samples-per-cell", dest="samples_per_cell", type=int, default=50)
    experiment.add_argument("--mode", choices=["exhaustive", "sampled", "shapes"], default="exhaustive")
    experiment.add_argument("--sizes", help="comma-separated tree sizes (edges) for a trend")
    experiment.add_argument("--points", type=int, default=20)
    experiment.add_argument("--eps", type=float, default=0.02)
    experiment.add_argument("--family2", help="second family spec for convexity")
    experiment.add_argument("--pairs", type=int, default=200)
    _common(experiment)
    experiment.set_defaults(handler=cmd_experiment)

    table = sub.add_parser("table", help="exact values of the named families")
    table.add_argument("--n-max", dest="n_max", type=int, default=8)
    _common(table)
    table.set_defaults(handler=cmd_table)

    serve = sub.add_parser("serve", help="run the HTTP API")
    serve.add_argument("--host")
    serve.add_argument("--port", type=int)
    serve.set_defaults(handler=cmd_serve)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=settings.LOG_LEVEL, format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.handler(args)
    except MorseFlowError as e:
        logger.debug("failed", exc_info=True)
        sys.stderr.write(json.dumps(e.to_dict()) + "\n")
        return e.exit_code


if __name__ == "__main__":
    sys.exit(main())

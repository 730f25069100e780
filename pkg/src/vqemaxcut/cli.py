"""Command-line entry points.

Subcommands: gen-graphs, solve, sweep, report.  Exit codes: 0 on success,
1 on usage errors, 2 on runtime errors.
"""

from __future__ import annotations

import argparse
import os
import re
import sys

from . import __version__
from .ansatz import CIRCUIT_NAMES, CircuitSpec
from .errors import VqeMaxcutError
from .experiments import (
    RUNS_NAME,
    TRACE_DIR,
    SweepConfig,
    records_to_csv,
    run_id,
    run_sweep,
    trace_to_csv,
)
from .graphs import (
    Instance,
    brute_force_max_cut,
    generate_instances,
    graph_from_text,
    write_instance_dir,
)
from .optimize import METHODS, OptimizerConfig
from .report import render_boxplot, render_convergence
from .vqe import INIT_MODES, INIT_ZERO, run_vqe


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors by default; the interface wants 1.
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _add_optimizer_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--optimizer", choices=METHODS, default="cobyla")
    parser.add_argument("--max-evals", type=int, default=5000)
    parser.add_argument("--rho-beg", type=float, default=0.5, help="initial step (radians)")
    parser.add_argument("--rho-end", type=float, default=1e-4, help="final tolerance (radians)")


def _optimizer_from_args(args) -> OptimizerConfig:
    return OptimizerConfig(
        method=args.optimizer,
        max_evals=args.max_evals,
        initial_step=args.rho_beg,
        final_tolerance=args.rho_end,
    )


def _build_parser() -> _Parser:
    parser = _Parser(prog="vqemaxcut", description=__doc__)
    parser.add_argument("--version", action="version", version=f"vqemaxcut {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    gen = sub.add_parser("gen-graphs", help="generate connected MaxCut instances")
    gen.add_argument("--count", type=int, required=True)
    gen.add_argument("--n", type=int, required=True)
    gen.add_argument("--p", type=float, required=True)
    gen.add_argument("--seed-base", type=int, default=1000)
    gen.add_argument("--out", required=True, help="output directory")
    gen.set_defaults(func=_cmd_gen_graphs)

    solve = sub.add_parser("solve", help="run one VQE execution on a graph file")
    solve.add_argument("--graph", required=True, help="edge-list graph file")
    solve.add_argument("--circuit", choices=CIRCUIT_NAMES, required=True)
    solve.add_argument("--layers", type=int, default=1)
    solve.add_argument("--init", choices=INIT_MODES, default=INIT_ZERO)
    solve.add_argument("--seed", type=int, default=30)
    solve.add_argument("--out", required=True, help="output directory")
    _add_optimizer_flags(solve)
    solve.set_defaults(func=_cmd_solve)

    sweep = sub.add_parser("sweep", help="run the cartesian experiment grid")
    sweep.add_argument("--config", required=True, help="sweep JSON config file")
    sweep.add_argument("--jobs", type=int, default=None, help="worker count override")
    sweep.add_argument("--out", default=None, help="output directory override")
    sweep.add_argument("--quiet", action="store_true")
    sweep.set_defaults(func=_cmd_sweep)

    report = sub.add_parser("report", help="render a figure plus its data CSV")
    report.add_argument("kind", choices=("convergence", "boxplot"))
    report.add_argument("--runs", required=True, help="sweep output directory")
    report.add_argument("--out", required=True, help="output SVG path")
    report.add_argument("--csv", default=None, help="companion CSV path (default: beside SVG)")
    report.add_argument("--families", default=None, help="comma-separated circuit names")
    report.add_argument("--layers", default=None, help="comma-separated layer counts")
    report.set_defaults(func=_cmd_report)
    return parser


def _cmd_gen_graphs(args) -> int:
    instances = generate_instances(args.count, args.n, args.p, args.seed_base)
    write_instance_dir(args.out, instances, args.p, args.seed_base)
    print(f"wrote {len(instances)} instances to {args.out}")
    return 0


def _instance_from_file(path: str) -> Instance:
    with open(path) as fh:
        graph = graph_from_text(fh.read())
    match = re.search(r"graph_(\d+)", os.path.basename(path))
    instance_id = int(match.group(1)) if match else 0
    optimum, _ = brute_force_max_cut(graph)
    return Instance(graph=graph, instance_id=instance_id, optimal_cut=optimum)


def _cmd_solve(args) -> int:
    instance = _instance_from_file(args.graph)
    spec = CircuitSpec.from_name(args.circuit, n=instance.graph.n, layers=args.layers)
    record = run_vqe(
        instance,
        spec,
        _optimizer_from_args(args),
        args.seed,
        init_mode=args.init,
        measure_time=True,
    )
    os.makedirs(os.path.join(args.out, TRACE_DIR), exist_ok=True)
    with open(os.path.join(args.out, RUNS_NAME), "w", newline="") as fh:
        fh.write(records_to_csv([record]))
    rid = run_id(record)
    with open(os.path.join(args.out, TRACE_DIR, f"trace_{rid}.csv"), "w", newline="") as fh:
        fh.write(trace_to_csv(record.trace))
    print(
        f"{record.circuit_name} l={record.layers} seed={record.seed}: "
        f"energy={record.final_energy:.6f} cut={record.cut}/{record.optimal_cut} "
        f"ratio={record.approx_ratio:.4f} evals={record.eval_count} ({record.termination})"
    )
    return 0


def _cmd_sweep(args) -> int:
    with open(args.config) as fh:
        cfg = SweepConfig.from_json(fh.read())
    overrides = {}
    if args.jobs is not None:
        overrides["jobs"] = args.jobs
    if args.out is not None:
        overrides["output_dir"] = args.out
    if overrides:
        import dataclasses

        cfg = dataclasses.replace(cfg, **overrides)
    echo = None if args.quiet else lambda line: print(line, file=sys.stderr)
    records = run_sweep(cfg, echo=echo)
    print(f"wrote {len(records)} runs to {cfg.output_dir}")
    return 0


def _split_csv_list(raw: str | None) -> list[str] | None:
    if raw is None:
        return None
    return [piece.strip() for piece in raw.split(",") if piece.strip()]


def _cmd_report(args) -> int:
    families = _split_csv_list(args.families)
    layer_filter = _split_csv_list(args.layers)
    layer_values = [int(v) for v in layer_filter] if layer_filter is not None else None
    render = render_convergence if args.kind == "convergence" else render_boxplot
    render(args.runs, args.out, out_csv=args.csv, families=families, layers=layer_values)
    print(f"wrote {args.out}")
    return 0


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # usage errors exit 1 via _Parser; --help exits 0
        return int(exc.code or 0)
    try:
        return int(args.func(args) or 0)
    except (VqeMaxcutError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

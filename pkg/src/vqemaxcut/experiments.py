"""Cartesian sweeps over instances x circuits x depths x seeds, with persistence.

Output directory layout::

    <out>/manifest.json            full config + code version
    <out>/instances/               graph_<id>.txt files + instances.csv
    <out>/traces/trace_<run>.csv   one energy trace per run
    <out>/runs.csv                 one row per run, sorted
    <out>/SWEEP_INCOMPLETE         marker present only while running / after abort

Results are sorted by (instance_id, family, hadamard, layers, seed) before the
final write, so runs.csv is byte-identical at any worker count.  Sweeps keep
``measure_time`` off by default for the same reason: the wall_time_s column is
0.0 unless timing is explicitly enabled.
"""

from __future__ import annotations

import concurrent.futures
import csv
import io
import json
import os
from dataclasses import asdict, dataclass

import numpy as np

from . import __version__
from .ansatz import CIRCUIT_NAMES, CircuitSpec
from .errors import ParseError
from .graphs import Instance, generate_instances, write_instance_dir
from .optimize import OptimizerConfig, TraceEntry
from .vqe import INIT_MODES, RunRecord, run_vqe

RUNS_NAME = "runs.csv"
TRACE_DIR = "traces"
INSTANCE_DIR = "instances"
MANIFEST_NAME = "manifest.json"
INCOMPLETE_MARKER = "SWEEP_INCOMPLETE"

RUNS_COLUMNS = [
    "instance_id",
    "family",
    "hadamard",
    "layers",
    "seed",
    "init_mode",
    "eval_count",
    "final_energy",
    "cut",
    "optimal_cut",
    "approx_ratio",
    "termination",
    "wall_time_s",
]


@dataclass(frozen=True)
class InstanceSetConfig:
    count: int
    n: int
    p: float
    seed_base: int

    def __post_init__(self):
        if self.count < 1:
            raise ValueError(f"need count >= 1, got {self.count}")


@dataclass(frozen=True)
class SweepConfig:
    instances: InstanceSetConfig
    circuits: tuple[str, ...]
    layers: tuple[int, ...]
    seed_first: int
    seed_last: int
    optimizer: OptimizerConfig
    init_mode: str
    output_dir: str
    jobs: int = 1
    measure_time: bool = False

    def __post_init__(self):
        if not self.circuits:
            raise ValueError("need at least one circuit")
        for name in self.circuits:
            if name not in CIRCUIT_NAMES:
                raise ValueError(f"unknown circuit {name!r}, expected one of {CIRCUIT_NAMES}")
        if not self.layers or any(l < 1 for l in self.layers):
            raise ValueError("layer list must be non-empty positive integers")
        if self.seed_last < self.seed_first:
            raise ValueError(f"bad seed range [{self.seed_first}, {self.seed_last}]")
        if self.init_mode not in INIT_MODES:
            raise ValueError(f"unknown init mode {self.init_mode!r}")
        if self.jobs < 1:
            raise ValueError(f"need jobs >= 1, got {self.jobs}")

    @property
    def seeds(self) -> range:
        return range(self.seed_first, self.seed_last + 1)

    @property
    def run_count(self) -> int:
        return len(self.circuits) * len(self.layers) * len(self.seeds) * self.instances.count

    def to_json(self) -> str:
        payload = asdict(self)
        payload["circuits"] = list(self.circuits)
        payload["layers"] = list(self.layers)
        return json.dumps(payload, indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "SweepConfig":
        try:
            raw = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"line {exc.lineno}: invalid config JSON: {exc.msg}") from None
        try:
            inst = InstanceSetConfig(**raw.pop("instances"))
            opt = OptimizerConfig(**raw.pop("optimizer"))
            return cls(
                instances=inst,
                optimizer=opt,
                circuits=tuple(raw.pop("circuits")),
                layers=tuple(raw.pop("layers")),
                **raw,
            )
        except (KeyError, TypeError) as exc:
            raise ParseError(f"line 1: config does not match schema: {exc}") from None


def run_id(record: RunRecord) -> str:
    return (
        f"g{record.instance_id:03d}_{record.circuit_name}"
        f"_l{record.layers:02d}_s{record.seed}"
    )


def _split_name(name: str) -> tuple[str, bool]:
    hadamard = name.startswith("h")
    return (name[1:] if hadamard else name), hadamard


def expand_tasks(cfg: SweepConfig, instances: list[Instance]):
    """The (instance, circuit, layers, seed) grid, in canonical sorted order."""
    tasks = [
        (inst, name, layers, seed)
        for inst in instances
        for name in cfg.circuits
        for layers in cfg.layers
        for seed in cfg.seeds
    ]
    tasks.sort(key=lambda t: (t[0].instance_id, *_split_name(t[1]), t[2], t[3]))
    return tasks


def _execute(args) -> RunRecord:
    inst, circuit, layers, seed, opt_cfg, init_mode, measure_time = args
    spec = CircuitSpec.from_name(circuit, n=inst.graph.n, layers=layers)
    return run_vqe(
        inst, spec, opt_cfg, seed, init_mode=init_mode, measure_time=measure_time
    )


def run_sweep(cfg: SweepConfig, echo=None) -> list[RunRecord]:
    """Run the whole grid and persist everything under cfg.output_dir."""
    out = cfg.output_dir
    os.makedirs(out, exist_ok=True)
    os.makedirs(os.path.join(out, TRACE_DIR), exist_ok=True)
    marker = os.path.join(out, INCOMPLETE_MARKER)
    with open(marker, "w") as fh:
        fh.write("sweep in progress\n")
    try:
        instances = generate_instances(
            cfg.instances.count, cfg.instances.n, cfg.instances.p, cfg.instances.seed_base
        )
        write_instance_dir(
            os.path.join(out, INSTANCE_DIR), instances, cfg.instances.p, cfg.instances.seed_base
        )
        tasks = expand_tasks(cfg, instances)
        payloads = [
            (inst, name, layers, seed, cfg.optimizer, cfg.init_mode, cfg.measure_time)
            for inst, name, layers, seed in tasks
        ]
        records: list[RunRecord] = []

        def collect(produced):
            for i, record in enumerate(produced):
                _write_atomic(
                    os.path.join(out, TRACE_DIR, f"trace_{run_id(record)}.csv"),
                    trace_to_csv(record.trace),
                )
                records.append(record)
                if echo is not None:
                    echo(f"[{i + 1}/{len(payloads)}] {run_id(record)}")

        if cfg.jobs == 1:
            collect(map(_execute, payloads))
        else:
            with concurrent.futures.ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
                collect(pool.map(_execute, payloads, chunksize=4))
        records.sort(key=lambda r: (r.instance_id, r.family, r.hadamard, r.layers, r.seed))
        _write_atomic(os.path.join(out, RUNS_NAME), records_to_csv(records))
        manifest = {
            "version": __version__,
            "config": json.loads(cfg.to_json()),
            "run_count": len(records),
        }
        _write_atomic(
            os.path.join(out, MANIFEST_NAME),
            json.dumps(manifest, indent=2, sort_keys=True) + "\n",
        )
    except BaseException as exc:
        try:
            with open(marker, "w") as fh:
                fh.write(f"sweep aborted: {exc}\n")
        except OSError:
            pass
        raise
    os.remove(marker)
    return records


def _write_atomic(path: str, text: str) -> None:
    tmp = path + ".tmp"
    with open(tmp, "w", newline="") as fh:
        fh.write(text)
    os.replace(tmp, path)


# --- runs.csv codec -----------------------------------------------------------


def _fmt_float(v: float) -> str:
    return repr(float(v))


def _fmt_bool(v: bool) -> str:
    return "true" if v else "false"


def records_to_csv(records: list[RunRecord]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(RUNS_COLUMNS)
    for r in records:
        writer.writerow(
            [
                r.instance_id,
                r.family,
                _fmt_bool(r.hadamard),
                r.layers,
                r.seed,
                r.init_mode,
                r.eval_count,
                _fmt_float(r.final_energy),
                r.cut,
                r.optimal_cut,
                _fmt_float(r.approx_ratio),
                r.termination,
                _fmt_float(r.wall_time),
            ]
        )
    return buf.getvalue()


def _parse_bool(cell: str, row: int) -> bool:
    if cell == "true":
        return True
    if cell == "false":
        return False
    raise ParseError(f"row {row}: expected true/false, got {cell!r}")


def records_from_csv(text: str) -> list[RunRecord]:
    """Parse runs.csv; traces live in separate files, and the extracted
    partition is not part of the schema, so both come back empty."""
    reader = csv.reader(io.StringIO(text))
    header = next(reader, None)
    if header != RUNS_COLUMNS:
        raise ParseError(f"row 1: bad header {header!r}")
    out = []
    for row_no, row in enumerate(reader, start=2):
        if len(row) != len(RUNS_COLUMNS):
            raise ParseError(
                f"row {row_no}: expected {len(RUNS_COLUMNS)} cells, got {len(row)}"
            )
        try:
            record = RunRecord(
                instance_id=int(row[0]),
                family=row[1],
                hadamard=_parse_bool(row[2], row_no),
                layers=int(row[3]),
                seed=int(row[4]),
                init_mode=row[5],
                eval_count=int(row[6]),
                final_energy=float(row[7]),
                partition="",
                cut=int(row[8]),
                optimal_cut=int(row[9]),
                approx_ratio=float(row[10]),
                termination=row[11],
                wall_time=float(row[12]),
            )
        except ValueError:
            raise ParseError(f"row {row_no}: non-numeric cell") from None
        out.append(record)
    return out


def trace_to_csv(trace: list[TraceEntry]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["eval_index", "energy"])
    for entry in trace or []:
        writer.writerow([entry.index, _fmt_float(entry.value)])
    return buf.getvalue()


def trace_energies_from_csv(text: str) -> np.ndarray:
    reader = csv.reader(io.StringIO(text))
    header = next(reader, None)
    if header != ["eval_index", "energy"]:
        raise ParseError(f"row 1: bad trace header {header!r}")
    energies = []
    for row_no, row in enumerate(reader, start=2):
        if len(row) != 2:
            raise ParseError(f"row {row_no}: expected 2 cells")
        try:
            idx = int(row[0])
            energies.append(float(row[1]))
        except ValueError:
            raise ParseError(f"row {row_no}: non-numeric cell") from None
        if idx != row_no - 1:
            raise ParseError(f"row {row_no}: eval_index {idx} out of order")
    return np.asarray(energies, dtype=np.float64)


# --- grouped statistics ---------------------------------------------------------


@dataclass(frozen=True)
class SummaryStats:
    family: str
    hadamard: bool
    layers: int
    count: int
    mean: float
    std: float  # population
    min: float
    q1: float
    median: float
    q3: float
    max: float
    mean_final_energy: float
    mean_eval_count: float

    @property
    def circuit_name(self) -> str:
        return ("h" if self.hadamard else "") + self.family


def summarize(records: list[RunRecord]) -> list[SummaryStats]:
    """Approximation-ratio statistics per (family, hadamard, layers) group.

    Quartiles use linear interpolation between order statistics; the standard
    deviation is the population one.
    """
    if not records:
        raise ValueError("need at least one record")
    groups: dict[tuple[str, bool, int], list[RunRecord]] = {}
    for r in records:
        groups.setdefault((r.family, r.hadamard, r.layers), []).append(r)
    out = []
    for key in sorted(groups):
        family, hadamard, layers = key
        rows = groups[key]
        ratios = np.array([r.approx_ratio for r in rows], dtype=np.float64)
        q1, med, q3 = np.percentile(ratios, [25.0, 50.0, 75.0])
        out.append(
            SummaryStats(
                family=family,
                hadamard=hadamard,
                layers=layers,
                count=len(rows),
                mean=float(ratios.mean()),
                std=float(ratios.std()),
                min=float(ratios.min()),
                q1=float(q1),
                median=float(med),
                q3=float(q3),
                max=float(ratios.max()),
                mean_final_energy=float(np.mean([r.final_energy for r in rows])),
                mean_eval_count=float(np.mean([r.eval_count for r in rows])),
            )
        )
    return out

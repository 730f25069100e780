"""The hybrid loop: circuit energy objective, optimization, partition extraction.

The default initialization is the all-zeros parameter vector, which starts
Hadamard-prefixed circuits at energy exactly 0 and plain circuits at exactly
the edge count.  With exact expectations this makes runs fully deterministic;
``init_mode="random"`` draws theta uniformly from [0, 2pi) per parameter,
seeded by the run seed, and is how sweeps reproduce seed-to-seed spread.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from .ansatz import CircuitSpec, CompiledCircuit, parameter_count
from .errors import OracleViolationError
from .graphs import Graph, Instance, cut_value
from .optimize import MinimizeResult, OptimizerConfig, TraceEntry, minimize
from .simulator import StateVector, argmax_bitstring, ising_weights, zero_state
from .simulator._backend import kernels

INIT_ZERO = "zero"
INIT_RANDOM = "random"
INIT_MODES = (INIT_ZERO, INIT_RANDOM)


@dataclass
class RunRecord:
    """Everything one VQE execution produced."""

    instance_id: int
    family: str
    hadamard: bool
    layers: int
    seed: int
    init_mode: str
    eval_count: int
    final_energy: float
    partition: str
    cut: int
    optimal_cut: int
    approx_ratio: float
    termination: str
    wall_time: float
    trace: list[TraceEntry] | None = field(default=None, compare=False, repr=False)

    @property
    def circuit_name(self) -> str:
        return ("h" if self.hadamard else "") + self.family


def energy(spec: CircuitSpec, graph: Graph, theta) -> float:
    """Hamiltonian expectation of the prepared state; lies in [-m, m]."""
    if spec.n != graph.n:
        raise ValueError(f"circuit has {spec.n} qubits, graph has {graph.n} nodes")
    theta = np.asarray(theta, dtype=np.float64)
    expected = parameter_count(spec)
    if theta.shape != (expected,):
        raise ValueError(
            f"parameter vector has shape {theta.shape}, circuit needs ({expected},)"
        )
    return make_objective(spec, graph)(theta)


def make_objective(spec: CircuitSpec, graph: Graph):
    """Callable theta -> energy, reusing one compiled circuit and buffer."""
    if spec.n != graph.n:
        raise ValueError(f"circuit has {spec.n} qubits, graph has {graph.n} nodes")
    program = CompiledCircuit(spec)
    weights = ising_weights(graph)
    amps = np.zeros(1 << spec.n, dtype=np.complex128)

    def objective(theta: np.ndarray) -> float:
        program.state_into(theta, amps)
        return kernels.expectation(amps, weights)

    return objective


def initial_parameters(spec: CircuitSpec, init_mode: str, seed: int) -> np.ndarray:
    if init_mode == INIT_ZERO:
        return np.zeros(parameter_count(spec))
    if init_mode == INIT_RANDOM:
        rng = np.random.default_rng(seed)
        return rng.uniform(0.0, 2.0 * np.pi, parameter_count(spec))
    raise ValueError(f"unknown init mode {init_mode!r}, expected one of {INIT_MODES}")


def approximation_ratio(cut: int, optimal: int) -> float:
    """cut / optimal; 1.0 means the optimum was found."""
    if optimal < 1:
        raise ValueError(f"optimal cut must be >= 1, got {optimal}")
    if cut < 0:
        raise ValueError(f"cut must be >= 0, got {cut}")
    if cut > optimal:
        raise OracleViolationError(
            f"cut {cut} exceeds brute-force optimum {optimal}: oracle or solver bug"
        )
    return cut / optimal


def run_vqe(
    instance: Instance,
    spec: CircuitSpec,
    cfg: OptimizerConfig,
    seed: int,
    init_mode: str = INIT_ZERO,
    measure_time: bool = True,
) -> RunRecord:
    """One full VQE execution against a brute-forced instance.

    Deterministic per (instance, spec, cfg, seed, init_mode); ``wall_time``
    is 0.0 when ``measure_time`` is off (sweeps disable it so output files
    are bit-reproducible).
    """
    graph = instance.graph
    if spec.n != graph.n:
        raise ValueError(f"circuit has {spec.n} qubits, graph has {graph.n} nodes")
    start = time.perf_counter() if measure_time else 0.0
    theta0 = initial_parameters(spec, init_mode, seed)
    result: MinimizeResult = minimize(make_objective(spec, graph), theta0, cfg)
    final_state = _prepare_final(spec, result.x)
    partition = argmax_bitstring(final_state)
    cut = cut_value(graph, partition)
    ratio = approximation_ratio(cut, instance.optimal_cut)
    wall = time.perf_counter() - start if measure_time else 0.0
    return RunRecord(
        instance_id=instance.instance_id,
        family=spec.family,
        hadamard=spec.hadamard,
        layers=spec.layers,
        seed=seed,
        init_mode=init_mode,
        eval_count=len(result.trace),
        final_energy=result.value,
        partition=partition,
        cut=cut,
        optimal_cut=instance.optimal_cut,
        approx_ratio=ratio,
        termination=result.termination,
        wall_time=wall,
        trace=result.trace,
    )


def _prepare_final(spec: CircuitSpec, theta: np.ndarray) -> StateVector:
    state = zero_state(spec.n)
    CompiledCircuit(spec).state_into(theta, state.amps)
    return state

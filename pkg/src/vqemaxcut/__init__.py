"""VQE ablation harness for unweighted MaxCut.

Statevector simulation of eight layered ansatz families, derivative-free
optimization (COBYLA and Nelder-Mead), brute-force-verified approximation
ratios, and a sweep runner with CSV persistence and SVG reports.
"""

__version__ = "0.1.0"

from .ansatz import CIRCUIT_NAMES, FAMILIES, CircuitSpec, build, parameter_count, prepare_state
from .graphs import (
    Graph,
    Instance,
    brute_force_max_cut,
    cost,
    cut_value,
    generate_erdos_renyi,
    graph_from_text,
    graph_to_text,
)
from .optimize import MinimizeResult, OptimizerConfig, minimize
from .vqe import RunRecord, approximation_ratio, energy, run_vqe

__all__ = [
    "CIRCUIT_NAMES",
    "CircuitSpec",
    "FAMILIES",
    "Graph",
    "Instance",
    "MinimizeResult",
    "OptimizerConfig",
    "RunRecord",
    "approximation_ratio",
    "brute_force_max_cut",
    "build",
    "cost",
    "cut_value",
    "energy",
    "generate_erdos_renyi",
    "graph_from_text",
    "graph_to_text",
    "minimize",
    "parameter_count",
    "prepare_state",
    "run_vqe",
    "__version__",
]

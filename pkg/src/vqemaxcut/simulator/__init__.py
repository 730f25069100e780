"""Dense statevector simulation with a compiled kernel core and numpy fallback."""

from ._backend import available_backends, backend_name, kernels
from .state import (
    MAX_QUBITS,
    GateOp,
    StateVector,
    apply_gate,
    argmax_bitstring,
    bits_from_index,
    ising_expectation,
    ising_weights,
    sample_counts,
    zero_state,
)

__all__ = [
    "MAX_QUBITS",
    "GateOp",
    "StateVector",
    "apply_gate",
    "argmax_bitstring",
    "available_backends",
    "backend_name",
    "bits_from_index",
    "ising_expectation",
    "ising_weights",
    "kernels",
    "sample_counts",
    "zero_state",
]

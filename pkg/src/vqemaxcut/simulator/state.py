"""Dense statevector registers and the operations the VQE loop needs.

Bit order is little-endian: qubit k is bit k of the basis index, and
character k of a basis string names qubit k.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

import numpy as np

from ..errors import UnboundParameterError
from ..graphs import Graph
from ._backend import kernels

MAX_QUBITS = 24

KIND_H = "h"
KIND_RY = "ry"
KIND_RX = "rx"
KIND_CNOT = "cnot"

_ROTATIONS = (KIND_RY, KIND_RX)
GATE_CODES = {KIND_H: 0, KIND_RY: 1, KIND_RX: 2, KIND_CNOT: 3}


@dataclass(frozen=True)
class GateOp:
    """One gate: H/RY/RX/CNOT on explicit qubits.

    Rotations carry either a literal ``angle`` or a ``slot`` into a parameter
    vector, never both.
    """

    kind: str
    target: int
    control: int | None = None
    angle: float | None = None
    slot: int | None = None

    def __post_init__(self):
        if self.kind not in GATE_CODES:
            raise ValueError(f"unknown gate kind {self.kind!r}")
        if self.target < 0:
            raise ValueError(f"bad target {self.target}")
        if self.kind == KIND_CNOT:
            if self.control is None or self.control < 0:
                raise ValueError("cnot needs a control qubit")
            if self.control == self.target:
                raise ValueError("cnot control equals target")
        elif self.control is not None:
            raise ValueError(f"{self.kind} takes no control qubit")
        if self.kind in _ROTATIONS:
            if (self.angle is None) == (self.slot is None):
                raise ValueError("rotation needs exactly one of angle or slot")
        elif self.angle is not None or self.slot is not None:
            raise ValueError(f"{self.kind} takes no angle or slot")


@dataclass
class StateVector:
    """n-qubit register: 2^n complex amplitudes."""

    n: int
    amps: np.ndarray

    def copy(self) -> "StateVector":
        return StateVector(self.n, self.amps.copy())

    def norm_squared(self) -> float:
        return float(np.sum(self.amps.real**2 + self.amps.imag**2))


def zero_state(n: int) -> StateVector:
    """|0...0>: amplitude 1 at index 0."""
    if not (1 <= n <= MAX_QUBITS):
        raise ValueError(f"qubit count must be in [1, {MAX_QUBITS}], got {n}")
    amps = np.zeros(1 << n, dtype=np.complex128)
    amps[0] = 1.0
    return StateVector(n, amps)


def _resolved_angle(gate: GateOp, theta=None) -> float:
    if gate.angle is not None:
        return gate.angle
    if theta is None or gate.slot >= len(theta):
        raise UnboundParameterError(
            f"gate {gate.kind} slot {gate.slot} has no bound parameter"
        )
    return float(theta[gate.slot])


def apply_gate(state: StateVector, gate: GateOp, theta=None) -> StateVector:
    """Return a new state with one gate applied; the input is not mutated."""
    if gate.target >= state.n:
        raise ValueError(f"target {gate.target} out of range for n={state.n}")
    if gate.kind == KIND_CNOT and gate.control >= state.n:
        raise ValueError(f"control {gate.control} out of range for n={state.n}")
    out = state.amps.copy()
    if gate.kind == KIND_H:
        kernels.apply_h(out, gate.target)
    elif gate.kind == KIND_RY:
        kernels.apply_ry(out, gate.target, _resolved_angle(gate, theta))
    elif gate.kind == KIND_RX:
        kernels.apply_rx(out, gate.target, _resolved_angle(gate, theta))
    else:
        kernels.apply_cnot(out, gate.control, gate.target)
    return StateVector(state.n, out)


@functools.lru_cache(maxsize=256)
def ising_weights(graph: Graph) -> np.ndarray:
    """Diagonal of the edge-spin Hamiltonian: w[x] = sum over edges of z_u z_v.

    z_k is +1 when bit k of x is 0 and -1 otherwise, so w[x] = m - 2 cut(x).
    """
    idx = np.arange(1 << graph.n, dtype=np.int64)
    acc = np.zeros(idx.shape, dtype=np.int64)
    for u, v in graph.edges:
        acc += 1 - 2 * (((idx >> u) ^ (idx >> v)) & 1)
    return acc.astype(np.float64)


def ising_expectation(state: StateVector, graph: Graph) -> float:
    """<psi| sum_{(u,v) in E} z_u z_v |psi>; lies in [-m, m]."""
    if state.n != graph.n:
        raise ValueError(f"state has {state.n} qubits, graph has {graph.n} nodes")
    return kernels.expectation(state.amps, ising_weights(graph))


def bits_from_index(index: int, n: int) -> str:
    """Basis index -> partition string (character k is qubit k)."""
    return "".join("1" if (index >> k) & 1 else "0" for k in range(n))


def argmax_bitstring(state: StateVector) -> str:
    """Most probable basis state; ties go to the smallest index."""
    probs = kernels.probabilities(state.amps)
    return bits_from_index(int(np.argmax(probs)), state.n)


def sample_counts(state: StateVector, shots: int, seed: int) -> dict[str, int]:
    """Multinomial measurement outcomes; deterministic per seed."""
    if shots < 1:
        raise ValueError(f"need shots >= 1, got {shots}")
    probs = kernels.probabilities(state.amps)
    probs = probs / probs.sum()
    rng = np.random.default_rng(seed)
    draws = rng.multinomial(shots, probs)
    return {
        bits_from_index(i, state.n): int(c) for i, c in enumerate(draws) if c > 0
    }

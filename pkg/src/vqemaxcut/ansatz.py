"""Layered circuit families.

Four base families (ry, rycnot, ryrx, ryrxcnot), each with an optional
Hadamard ladder prefix ("h" name prefix), giving eight circuits.  One layer
is: an RY rotation per qubit, then (ryrx*) an RX rotation per qubit, then
(*cnot) the circular CNOT ladder 0->1, 1->2, ..., n-1->0.  The Hadamard
ladder is applied once, before the first layer.  Every rotation in every
layer owns a fresh parameter slot, assigned in circuit order.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .simulator import GateOp, StateVector, zero_state
from .simulator._backend import kernels
from .simulator.state import KIND_CNOT, KIND_H, KIND_RX, KIND_RY, GATE_CODES

FAMILIES = ("ry", "rycnot", "ryrx", "ryrxcnot")
CIRCUIT_NAMES = ("ry", "rycnot", "ryrx", "ryrxcnot", "hry", "hrycnot", "hryrx", "hryrxcnot")


@dataclass(frozen=True)
class CircuitSpec:
    """One ansatz: family, Hadamard prefix, layer count, qubit count."""

    family: str
    hadamard: bool
    layers: int
    n: int

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}, expected one of {FAMILIES}")
        if self.layers < 1:
            raise ValueError(f"need layers >= 1, got {self.layers}")
        if self.n < 1:
            raise ValueError(f"need n >= 1, got {self.n}")
        if self.entangling and self.n < 2:
            raise ValueError(f"{self.family} needs n >= 2 for the CNOT ring")

    @property
    def entangling(self) -> bool:
        return self.family.endswith("cnot")

    @property
    def two_banks(self) -> bool:
        return self.family.startswith("ryrx")

    @property
    def name(self) -> str:
        return ("h" if self.hadamard else "") + self.family

    @classmethod
    def from_name(cls, name: str, n: int, layers: int) -> "CircuitSpec":
        key = name.lower()
        if key not in CIRCUIT_NAMES:
            raise ValueError(f"unknown circuit {name!r}, expected one of {CIRCUIT_NAMES}")
        hadamard = key.startswith("h")
        return cls(family=key[1:] if hadamard else key, hadamard=hadamard, layers=layers, n=n)


def parameter_count(spec: CircuitSpec) -> int:
    """n*l for single-bank families, 2*n*l for ry+rx families."""
    banks = 2 if spec.two_banks else 1
    return banks * spec.n * spec.layers


def build(spec: CircuitSpec) -> list[GateOp]:
    """The gate sequence, with parameter slots assigned in circuit order."""
    ops: list[GateOp] = []
    if spec.hadamard:
        ops.extend(GateOp(KIND_H, q) for q in range(spec.n))
    slot = 0
    for _ in range(spec.layers):
        for q in range(spec.n):
            ops.append(GateOp(KIND_RY, q, slot=slot))
            slot += 1
        if spec.two_banks:
            for q in range(spec.n):
                ops.append(GateOp(KIND_RX, q, slot=slot))
                slot += 1
        if spec.entangling:
            # Circular ladder; for n=2 this degenerates to 0->1 then 1->0.
            for q in range(spec.n):
                ops.append(GateOp(KIND_CNOT, (q + 1) % spec.n, control=q))
    return ops


class CompiledCircuit:
    """Gate sequence flattened to arrays for the kernel backend.

    Reused across objective evaluations: `state_into` rebinds the parameter
    vector and recomputes amplitudes into a caller-owned buffer.
    """

    def __init__(self, spec: CircuitSpec):
        self.spec = spec
        self.n_params = parameter_count(spec)
        ops = build(spec)
        self.codes = np.array([GATE_CODES[op.kind] for op in ops], dtype=np.int8)
        self.targets = np.array([op.target for op in ops], dtype=np.intc)
        self.controls = np.array(
            [-1 if op.control is None else op.control for op in ops], dtype=np.intc
        )
        self._angles = np.zeros(len(ops), dtype=np.float64)
        slotted = [(i, op.slot) for i, op in enumerate(ops) if op.slot is not None]
        self._slot_gate = np.array([i for i, _ in slotted], dtype=np.intp)
        self._slot_index = np.array([s for _, s in slotted], dtype=np.intp)

    def state_into(self, theta: np.ndarray, amps: np.ndarray) -> None:
        amps[:] = 0.0
        amps[0] = 1.0
        self._angles[self._slot_gate] = theta[self._slot_index]
        kernels.run_plan(amps, self.codes, self.targets, self.controls, self._angles)


def prepare_state(spec: CircuitSpec, theta) -> StateVector:
    """|psi(theta)>: the circuit applied to |0...0>."""
    theta = np.asarray(theta, dtype=np.float64)
    expected = parameter_count(spec)
    if theta.shape != (expected,):
        raise ValueError(
            f"parameter vector has shape {theta.shape}, circuit needs ({expected},)"
        )
    state = zero_state(spec.n)
    CompiledCircuit(spec).state_into(theta, state.amps)
    return state

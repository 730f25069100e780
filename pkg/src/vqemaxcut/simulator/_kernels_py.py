"""Pure-numpy gate kernels: the fallback when the compiled core is absent.

Same call surface as the Cython module `_kernels`.  All kernels mutate the
amplitude array in place.  Qubit k is bit k of the basis index (little-endian).
"""

from __future__ import annotations

import math

import numpy as np

BACKEND = "python"

_INV_SQRT2 = 1.0 / math.sqrt(2.0)

GATE_H = 0
GATE_RY = 1
GATE_RX = 2
GATE_CNOT = 3


def _pairs(a: np.ndarray, target: int):
    # View with axis 1 indexing the target bit: index = hi*(2*stride) + bit*stride + lo.
    stride = 1 << target
    return a.reshape(-1, 2, stride)


def apply_h(a: np.ndarray, target: int) -> None:
    v = _pairs(a, target)
    x = v[:, 0, :].copy()
    y = v[:, 1, :]
    v[:, 0, :] = (x + y) * _INV_SQRT2
    v[:, 1, :] = (x - y) * _INV_SQRT2


def apply_ry(a: np.ndarray, target: int, theta: float) -> None:
    c = math.cos(0.5 * theta)
    s = math.sin(0.5 * theta)
    v = _pairs(a, target)
    x = v[:, 0, :].copy()
    y = v[:, 1, :]
    v[:, 0, :] = c * x - s * y
    v[:, 1, :] = s * x + c * y


def apply_rx(a: np.ndarray, target: int, theta: float) -> None:
    c = math.cos(0.5 * theta)
    js = 1j * math.sin(0.5 * theta)
    v = _pairs(a, target)
    x = v[:, 0, :].copy()
    y = v[:, 1, :]
    v[:, 0, :] = c * x - js * y
    v[:, 1, :] = c * y - js * x


def apply_cnot(a: np.ndarray, control: int, target: int) -> None:
    idx = np.arange(a.shape[0])
    src = idx[(((idx >> control) & 1) == 1) & (((idx >> target) & 1) == 0)]
    dst = src | (1 << target)
    tmp = a[src].copy()
    a[src] = a[dst]
    a[dst] = tmp


def run_plan(
    a: np.ndarray,
    codes: np.ndarray,
    targets: np.ndarray,
    controls: np.ndarray,
    angles: np.ndarray,
) -> None:
    """Apply a whole gate sequence (codes per the GATE_* constants)."""
    for i in range(codes.shape[0]):
        code = codes[i]
        if code == GATE_H:
            apply_h(a, int(targets[i]))
        elif code == GATE_RY:
            apply_ry(a, int(targets[i]), float(angles[i]))
        elif code == GATE_RX:
            apply_rx(a, int(targets[i]), float(angles[i]))
        elif code == GATE_CNOT:
            apply_cnot(a, int(controls[i]), int(targets[i]))
        else:
            raise ValueError(f"unknown gate code {code}")


def probabilities(a: np.ndarray) -> np.ndarray:
    return a.real**2 + a.imag**2


def expectation(a: np.ndarray, weights: np.ndarray) -> float:
    return float((a.real**2 + a.imag**2) @ weights)

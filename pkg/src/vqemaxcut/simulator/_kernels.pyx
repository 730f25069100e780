# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled gate kernels: the hot inner loops of the statevector core.

Same call surface as `_kernels_py`.  All kernels mutate the amplitude array
in place.  Qubit k is bit k of the basis index (little-endian).
"""

import numpy as np

from libc.math cimport cos, sin, sqrt

BACKEND = "cython"

GATE_H = 0
GATE_RY = 1
GATE_RX = 2
GATE_CNOT = 3

cdef int _H = 0
cdef int _RY = 1
cdef int _RX = 2
cdef int _CNOT = 3


cdef void _apply_h(double complex[::1] a, int target) noexcept nogil:
    cdef Py_ssize_t stride = 1 << target
    cdef Py_ssize_t nblocks = a.shape[0] >> (target + 1)
    cdef Py_ssize_t b, base, j
    cdef double c = 1.0 / sqrt(2.0)
    cdef double complex x, y
    for b in range(nblocks):
        base = b << (target + 1)
        for j in range(base, base + stride):
            x = a[j]
            y = a[j + stride]
            a[j] = (x + y) * c
            a[j + stride] = (x - y) * c


cdef void _apply_ry(double complex[::1] a, int target, double theta) noexcept nogil:
    cdef Py_ssize_t stride = 1 << target
    cdef Py_ssize_t nblocks = a.shape[0] >> (target + 1)
    cdef Py_ssize_t b, base, j
    cdef double c = cos(0.5 * theta)
    cdef double s = sin(0.5 * theta)
    cdef double complex x, y
    for b in range(nblocks):
        base = b << (target + 1)
        for j in range(base, base + stride):
            x = a[j]
            y = a[j + stride]
            a[j] = c * x - s * y
            a[j + stride] = s * x + c * y


cdef void _apply_rx(double complex[::1] a, int target, double theta) noexcept nogil:
    cdef Py_ssize_t stride = 1 << target
    cdef Py_ssize_t nblocks = a.shape[0] >> (target + 1)
    cdef Py_ssize_t b, base, j
    cdef double c = cos(0.5 * theta)
    cdef double complex js = 1j * sin(0.5 * theta)
    cdef double complex x, y
    for b in range(nblocks):
        base = b << (target + 1)
        for j in range(base, base + stride):
            x = a[j]
            y = a[j + stride]
            a[j] = c * x - js * y
            a[j + stride] = c * y - js * x


cdef void _apply_cnot(double complex[::1] a, int control, int target) noexcept nogil:
    cdef Py_ssize_t dim = a.shape[0]
    cdef Py_ssize_t i, j
    cdef Py_ssize_t cbit = 1 << control
    cdef Py_ssize_t tbit = 1 << target
    cdef double complex tmp
    for i in range(dim):
        if (i & cbit) != 0 and (i & tbit) == 0:
            j = i | tbit
            tmp = a[i]
            a[i] = a[j]
            a[j] = tmp


def apply_h(double complex[::1] a, int target):
    _apply_h(a, target)


def apply_ry(double complex[::1] a, int target, double theta):
    _apply_ry(a, target, theta)


def apply_rx(double complex[::1] a, int target, double theta):
    _apply_rx(a, target, theta)


def apply_cnot(double complex[::1] a, int control, int target):
    _apply_cnot(a, control, target)


def run_plan(
    double complex[::1] a,
    signed char[::1] codes,
    int[::1] targets,
    int[::1] controls,
    double[::1] angles,
):
    """Apply a whole gate sequence (codes per the GATE_* constants)."""
    cdef Py_ssize_t i
    cdef int code
    with nogil:
        for i in range(codes.shape[0]):
            code = codes[i]
            if code == _H:
                _apply_h(a, targets[i])
            elif code == _RY:
                _apply_ry(a, targets[i], angles[i])
            elif code == _RX:
                _apply_rx(a, targets[i], angles[i])
            elif code == _CNOT:
                _apply_cnot(a, controls[i], targets[i])
            else:
                with gil:
                    raise ValueError(f"unknown gate code {code}")


def probabilities(double complex[::1] a):
    out = np.empty(a.shape[0], dtype=np.float64)
    cdef double[::1] o = out
    cdef Py_ssize_t i
    for i in range(a.shape[0]):
        o[i] = a[i].real * a[i].real + a[i].imag * a[i].imag
    return out


def expectation(double complex[::1] a, double[::1] weights):
    cdef double total = 0.0
    cdef Py_ssize_t i
    with nogil:
        for i in range(a.shape[0]):
            total += (a[i].real * a[i].real + a[i].imag * a[i].imag) * weights[i]
    return total

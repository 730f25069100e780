"""Benchmark the compiled gate kernels against the pure-numpy fallback.

Times the full hot path of one objective evaluation (rebuild the state from
|0...0>, run the circuit, take the Hamiltonian expectation) for several
circuit shapes, on every available backend.

Usage: python benchmarks/bench_kernels.py [--qubits N] [--repeats K]
"""

import argparse
import time

import numpy as np

from vqemaxcut.ansatz import CircuitSpec, build, parameter_count
from vqemaxcut.graphs import generate_erdos_renyi
from vqemaxcut.simulator import available_backends, ising_weights
from vqemaxcut.simulator.state import GATE_CODES


def plan_arrays(spec, theta):
    ops = build(spec)
    codes = np.array([GATE_CODES[op.kind] for op in ops], dtype=np.int8)
    targets = np.array([op.target for op in ops], dtype=np.intc)
    controls = np.array(
        [-1 if op.control is None else op.control for op in ops], dtype=np.intc
    )
    angles = np.array(
        [theta[op.slot] if op.slot is not None else 0.0 for op in ops], dtype=np.float64
    )
    return codes, targets, controls, angles


def time_energy(kernels, spec, theta, weights, repeats):
    codes, targets, controls, angles = plan_arrays(spec, theta)
    amps = np.zeros(1 << spec.n, dtype=np.complex128)
    best = float("inf")
    for _ in range(3):  # best-of-3 timing blocks
        start = time.perf_counter()
        for _ in range(repeats):
            amps[:] = 0.0
            amps[0] = 1.0
            kernels.run_plan(amps, codes, targets, controls, angles)
            kernels.expectation(amps, weights)
        best = min(best, (time.perf_counter() - start) / repeats)
    return best


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--qubits", type=int, default=10)
    parser.add_argument("--repeats", type=int, default=200)
    args = parser.parse_args()

    n = args.qubits
    graph = generate_erdos_renyi(n, 0.4, seed=30)
    weights = ising_weights(graph)
    rng = np.random.default_rng(0)
    backends = available_backends()
    names = [k.BACKEND for k in backends]
    print(f"qubits={n}, edges={graph.edge_count}, backends={names}, repeats={args.repeats}")
    print(f"{'circuit':>12} {'gates':>6}" + "".join(f" {name+' us/eval':>16}" for name in names) + "  speedup")
    for circuit, layers in (("ry", 1), ("rycnot", 9), ("hryrxcnot", 9), ("ryrxcnot", 20)):
        spec = CircuitSpec.from_name(circuit, n=n, layers=layers)
        theta = rng.uniform(0, 2 * np.pi, parameter_count(spec))
        gate_count = len(build(spec))
        times = [time_energy(k, spec, theta, weights, args.repeats) for k in backends]
        row = f"{circuit + ' l=' + str(layers):>12} {gate_count:>6}"
        for t in times:
            row += f" {t * 1e6:>16.1f}"
        if len(times) > 1:
            row += f"  {times[-1] / times[0]:.1f}x"
        print(row)


if __name__ == "__main__":
    main()

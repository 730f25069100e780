import math

import numpy as np
import pytest

from conftest import random_connected_graph
from vqemaxcut.ansatz import CIRCUIT_NAMES, CircuitSpec, prepare_state
from vqemaxcut.errors import OracleViolationError
from vqemaxcut.graphs import Instance, brute_force_max_cut, complement, cut_value
from vqemaxcut.optimize import OptimizerConfig
from vqemaxcut.simulator import ising_expectation
from vqemaxcut.vqe import (
    approximation_ratio,
    energy,
    initial_parameters,
    run_vqe,
)


def make_instance(graph, instance_id=0):
    optimum, _ = brute_force_max_cut(graph)
    return Instance(graph=graph, instance_id=instance_id, optimal_cut=optimum)


class TestEnergy:
    def test_hadamard_start_is_zero(self):
        rng = np.random.default_rng(41)
        g = random_connected_graph(rng, 6)
        spec = CircuitSpec("ry", True, 1, 6)
        assert abs(energy(spec, g, np.zeros(6))) < 1e-10

    def test_plain_start_is_edge_count(self):
        rng = np.random.default_rng(42)
        g = random_connected_graph(rng, 7)
        spec = CircuitSpec("ry", False, 1, 7)
        assert energy(spec, g, np.zeros(7)) == float(g.edge_count)

    def test_four_cycle_alternating_angles(self, four_cycle):
        spec = CircuitSpec("ry", False, 1, 4)
        e = energy(spec, four_cycle, np.array([0.0, math.pi, 0.0, math.pi]))
        assert math.isclose(e, -4.0, abs_tol=1e-9)

    def test_dimension_mismatch(self, triangle):
        with pytest.raises(ValueError):
            energy(CircuitSpec("ry", False, 1, 4), triangle, np.zeros(4))

    def test_length_mismatch(self, triangle):
        with pytest.raises(ValueError):
            energy(CircuitSpec("ry", False, 1, 3), triangle, np.zeros(4))


class TestApproximationRatio:
    def test_optimal(self):
        assert approximation_ratio(4, 4) == 1.0

    def test_half(self):
        assert approximation_ratio(2, 4) == 0.5

    def test_oracle_violation(self):
        with pytest.raises(OracleViolationError):
            approximation_ratio(5, 4)

    def test_zero_optimum_rejected(self):
        with pytest.raises(ValueError):
            approximation_ratio(0, 0)


class TestInitialParameters:
    def test_zero_mode(self):
        spec = CircuitSpec("ryrx", False, 2, 3)
        assert not initial_parameters(spec, "zero", seed=5).any()

    def test_random_mode_seeded(self):
        spec = CircuitSpec("ry", False, 1, 4)
        a = initial_parameters(spec, "random", seed=30)
        b = initial_parameters(spec, "random", seed=30)
        c = initial_parameters(spec, "random", seed=31)
        assert np.array_equal(a, b)
        assert not np.array_equal(a, c)
        assert ((a >= 0.0) & (a < 2 * np.pi)).all()

    def test_unknown_mode(self):
        with pytest.raises(ValueError):
            initial_parameters(CircuitSpec("ry", False, 1, 2), "gaussian", 0)


class TestRunVqe:
    def test_four_cycle_reaches_optimum(self, four_cycle):
        record = run_vqe(
            make_instance(four_cycle),
            CircuitSpec("ry", False, 1, 4),
            OptimizerConfig(),
            seed=30,
        )
        assert record.approx_ratio == 1.0
        assert record.optimal_cut == 4

    def test_triangle_reaches_optimum(self, triangle):
        record = run_vqe(
            make_instance(triangle),
            CircuitSpec("ry", False, 1, 3),
            OptimizerConfig(),
            seed=30,
        )
        assert record.cut == 2
        assert record.approx_ratio == 1.0

    def test_deterministic_records(self, four_cycle):
        inst = make_instance(four_cycle)
        spec = CircuitSpec("rycnot", True, 2, 4)
        cfg = OptimizerConfig(max_evals=400)
        r1 = run_vqe(inst, spec, cfg, seed=31, init_mode="random", measure_time=False)
        r2 = run_vqe(inst, spec, cfg, seed=31, init_mode="random", measure_time=False)
        assert r1 == r2  # wall_time is 0.0 for both; trace not compared
        assert len(r1.trace) == len(r2.trace)
        for e1, e2 in zip(r1.trace, r2.trace):
            assert e1.value == e2.value and np.array_equal(e1.x, e2.x)

    def test_first_trace_energy_matches_start(self):
        rng = np.random.default_rng(43)
        g = random_connected_graph(rng, 6)
        inst = make_instance(g)
        cfg = OptimizerConfig(max_evals=50)
        for name in CIRCUIT_NAMES:
            spec = CircuitSpec.from_name(name, n=6, layers=1)
            record = run_vqe(inst, spec, cfg, seed=30)
            if spec.hadamard:
                assert abs(record.trace[0].value) < 1e-10
            else:
                assert record.trace[0].value == float(g.edge_count)

    def test_record_invariants(self):
        rng = np.random.default_rng(44)
        g = random_connected_graph(rng, 6)
        inst = make_instance(g)
        record = run_vqe(
            inst, CircuitSpec("ryrx", True, 2, 6), OptimizerConfig(max_evals=600), seed=33,
            init_mode="random",
        )
        m = g.edge_count
        assert 0.0 < record.approx_ratio <= 1.0
        assert record.approx_ratio == record.cut / record.optimal_cut
        assert -m <= record.final_energy <= m
        assert record.eval_count == len(record.trace)
        # The extracted partition, evaluated as a basis state, obeys the
        # energy-cut identity.
        theta = np.array(
            [math.pi if record.partition[q] == "1" else 0.0 for q in range(6)]
        )
        basis_energy = ising_expectation(
            prepare_state(CircuitSpec("ry", False, 1, 6), theta), g
        )
        assert record.cut == (m - round(basis_energy)) // 2
        # Complementing the partition leaves the cut unchanged.
        assert cut_value(g, complement(record.partition)) == record.cut

    def test_wall_time_flag(self, triangle):
        inst = make_instance(triangle)
        spec = CircuitSpec("ry", False, 1, 3)
        cfg = OptimizerConfig(max_evals=40)
        assert run_vqe(inst, spec, cfg, 30, measure_time=False).wall_time == 0.0
        assert run_vqe(inst, spec, cfg, 30, measure_time=True).wall_time > 0.0

    def test_qubit_mismatch(self, triangle):
        with pytest.raises(ValueError):
            run_vqe(make_instance(triangle), CircuitSpec("ry", False, 1, 4), OptimizerConfig(), 30)

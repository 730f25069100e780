import json
import os

from vqemaxcut.cli import main
from vqemaxcut.experiments import SweepConfig


def run_cli(*args):
    return main(list(args))


class TestGenGraphs:
    def test_writes_instances(self, tmp_path, capsys):
        out = tmp_path / "graphs"
        code = run_cli(
            "gen-graphs", "--count", "3", "--n", "6", "--p", "0.5",
            "--seed-base", "42", "--out", str(out),
        )
        assert code == 0
        assert (out / "instances.csv").exists()
        assert (out / "graph_2.txt").exists()
        assert "wrote 3 instances" in capsys.readouterr().out


class TestSolve:
    def test_solves_graph_file(self, tmp_path, capsys):
        graphs_dir = tmp_path / "graphs"
        run_cli("gen-graphs", "--count", "1", "--n", "6", "--p", "0.5",
                "--seed-base", "42", "--out", str(graphs_dir))
        out = tmp_path / "solved"
        code = run_cli(
            "solve", "--graph", str(graphs_dir / "graph_0.txt"),
            "--circuit", "ry", "--layers", "1", "--seed", "30",
            "--max-evals", "400", "--out", str(out),
        )
        assert code == 0
        assert (out / "runs.csv").exists()
        traces = os.listdir(out / "traces")
        assert len(traces) == 1 and traces[0].startswith("trace_g000_ry")
        assert "ratio=" in capsys.readouterr().out

    def test_missing_graph_is_runtime_error(self, tmp_path, capsys):
        code = run_cli(
            "solve", "--graph", str(tmp_path / "nope.txt"),
            "--circuit", "ry", "--out", str(tmp_path / "o"),
        )
        assert code == 2


class TestSweepAndReport:
    def test_end_to_end(self, tmp_path, capsys):
        out = tmp_path / "sweep"
        config = {
            "instances": {"count": 2, "n": 4, "p": 0.6, "seed_base": 50},
            "circuits": ["ry", "hrycnot"],
            "layers": [1],
            "seed_first": 30,
            "seed_last": 30,
            "optimizer": {
                "method": "cobyla",
                "max_evals": 80,
                "initial_step": 0.5,
                "final_tolerance": 1e-4,
                "seed": 0,
            },
            "init_mode": "zero",
            "output_dir": str(out),
            "jobs": 1,
            "measure_time": False,
        }
        cfg_path = tmp_path / "sweep.json"
        cfg_path.write_text(json.dumps(config))
        assert SweepConfig.from_json(cfg_path.read_text()).run_count == 4

        assert run_cli("sweep", "--config", str(cfg_path), "--quiet") == 0
        assert (out / "runs.csv").exists()

        svg = tmp_path / "fig.svg"
        assert run_cli("report", "convergence", "--runs", str(out), "--out", str(svg)) == 0
        assert svg.exists()
        box = tmp_path / "box.svg"
        assert run_cli(
            "report", "boxplot", "--runs", str(out), "--out", str(box),
            "--families", "ry", "--layers", "1",
        ) == 0
        assert box.exists()

    def test_out_override(self, tmp_path):
        config = {
            "instances": {"count": 1, "n": 4, "p": 0.6, "seed_base": 50},
            "circuits": ["ry"],
            "layers": [1],
            "seed_first": 30,
            "seed_last": 30,
            "optimizer": {"method": "cobyla", "max_evals": 50,
                          "initial_step": 0.5, "final_tolerance": 1e-4, "seed": 0},
            "init_mode": "zero",
            "output_dir": str(tmp_path / "ignored"),
            "jobs": 1,
            "measure_time": False,
        }
        cfg_path = tmp_path / "cfg.json"
        cfg_path.write_text(json.dumps(config))
        target = tmp_path / "actual"
        assert run_cli("sweep", "--config", str(cfg_path), "--out", str(target), "--quiet") == 0
        assert (target / "runs.csv").exists()
        assert not (tmp_path / "ignored").exists()

    def test_report_on_missing_dir_is_runtime_error(self, tmp_path, capsys):
        code = run_cli("report", "boxplot", "--runs", str(tmp_path / "none"),
                       "--out", str(tmp_path / "x.svg"))
        assert code == 2


class TestExitCodes:
    def test_usage_error_is_one(self, capsys):
        assert run_cli("solve", "--circuit", "ry") == 1  # missing required flags
        assert run_cli("frobnicate") == 1

    def test_bad_choice_is_usage_error(self, tmp_path, capsys):
        assert run_cli(
            "solve", "--graph", "g.txt", "--circuit", "nonsense", "--out", "o"
        ) == 1

    def test_help_is_zero(self, capsys):
        assert run_cli("--help") == 0

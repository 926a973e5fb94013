"""CLI contract: subcommands, exit codes, artifacts, byte determinism."""

import json

import pytest

from phaseflow import cli
from phaseflow.config import ConfigError, parse_config


def small_run1d_config(outdir, seed=11):
    return {
        "scenario": "run1d",
        "state": {"kind": "gaussian", "x0": 0.0, "p0": 0.5, "sigma_x": 1.0},
        "potential": {"kind": "free"},
        "grid": {"n": 512, "x_min": -12.8, "dx": 0.05},
        "time": {"dt": 5.0e-4, "t_final": 0.5, "snapshot_stride": 20,
                 "checkpoint_every": 0.25},
        "ensemble": {"count": 2000, "seed": seed, "trajectory_dt": 0.005,
                     "dump_trajectories": 100},
        "tolerances": {"position_ks": 0.05, "momentum_ks": 0.05},
        "map_refine": 2,
        "output_dir": str(outdir),
    }


def write_config(tmp_path, data, name="config.json"):
    path = tmp_path / name
    path.write_text(json.dumps(data))
    return str(path)


class TestValidate:
    def test_valid_config_ok(self, tmp_path, capsys):
        path = write_config(tmp_path, small_run1d_config(tmp_path / "out"))
        assert cli.main(["validate", path]) == 0
        assert "valid" in capsys.readouterr().out

    def test_nonpositive_dx_names_field(self, tmp_path, capsys):
        data = small_run1d_config(tmp_path / "out")
        data["grid"]["dx"] = -0.05
        path = write_config(tmp_path, data)
        assert cli.main(["validate", path]) == 2
        err = capsys.readouterr().err
        assert "grid.dx" in err

    def test_multiple_problems_all_reported(self, tmp_path, capsys):
        data = small_run1d_config(tmp_path / "out")
        data["grid"]["dx"] = 0
        data["epsilon"] = 3
        data["state"]["kind"] = "nope"
        path = write_config(tmp_path, data)
        assert cli.main(["validate", path]) == 2
        err = capsys.readouterr().err
        assert "grid.dx" in err and "epsilon" in err and "state.kind" in err

    def test_invalid_json(self, tmp_path, capsys):
        path = tmp_path / "bad.json"
        path.write_text("{not json")
        assert cli.main(["validate", str(path)]) == 2
        assert "JSON" in capsys.readouterr().err

    def test_missing_file(self, tmp_path):
        assert cli.main(["validate", str(tmp_path / "absent.json")]) == 2

    def test_unknown_scenario(self, tmp_path, capsys):
        data = small_run1d_config(tmp_path / "out")
        data["scenario"] = "run3d"
        path = write_config(tmp_path, data)
        assert cli.main(["validate", path]) == 2
        assert "scenario" in capsys.readouterr().err


class TestListScenarios:
    def test_lists_all(self, capsys):
        assert cli.main(["list-scenarios"]) == 0
        out = capsys.readouterr().out
        for name in ("run1d", "run2d", "wigner-compare", "takabayasi"):
            assert name in out


EXPECTED_RUN1D_FILES = [
    "summary.json",
    "trajectories.csv",
    "marginals_t0.csv",
    "marginals_t1.csv",
    "marginals_t2.csv",
    "map_t0.csv",
    "map_t1.csv",
    "map_t2.csv",
]


class TestRun:
    def test_run1d_artifacts_and_exit(self, tmp_path, capsys):
        outdir = tmp_path / "out"
        path = write_config(tmp_path, small_run1d_config(outdir))
        assert cli.main(["run", path]) == 0
        for name in EXPECTED_RUN1D_FILES:
            assert (outdir / name).exists(), name
        summary = json.loads((outdir / "summary.json").read_text())
        assert summary["passed"] is True
        assert summary["scenario"] == "run1d"
        assert "versions" in summary and "tolerances" in summary
        header = (outdir / "marginals_t0.csv").read_text().splitlines()[0]
        assert header == "x[l],rho_x[1/l],emp_x[1/l],p[1/l],rho_p[l],emp_p[l]"

    def test_failing_tolerance_exit_code(self, tmp_path):
        data = small_run1d_config(tmp_path / "out")
        data["tolerances"] = {"position_ks": 1e-9}
        path = write_config(tmp_path, data)
        assert cli.main(["run", path]) == 1

    def test_byte_identical_reruns(self, tmp_path):
        out_a = tmp_path / "a"
        out_b = tmp_path / "b"
        path_a = write_config(tmp_path, small_run1d_config(out_a), "a.json")
        path_b = write_config(tmp_path, small_run1d_config(out_b), "b.json")
        assert cli.main(["run", path_a]) == 0
        assert cli.main(["run", path_b]) == 0
        for name in EXPECTED_RUN1D_FILES:
            if name.endswith(".csv"):
                assert (out_a / name).read_bytes() == (out_b / name).read_bytes(), name

    def test_numerical_abort_exit_3(self, tmp_path, capsys):
        # packet driven into the grid edge trips the edge-mass monitor
        data = small_run1d_config(tmp_path / "out")
        data["state"]["p0"] = 40.0
        data["tolerances"] = {"position_ks": 1.0, "momentum_ks": 1.0}
        path = write_config(tmp_path, data)
        assert cli.main(["run", path]) == 3
        assert "numerical abort" in capsys.readouterr().err

    def test_output_dir_env_override(self, tmp_path, monkeypatch):
        override = tmp_path / "elsewhere"
        monkeypatch.setenv("PHASEFLOW_OUT", str(override))
        path = write_config(tmp_path, small_run1d_config(tmp_path / "ignored"))
        assert cli.main(["run", path]) == 0
        assert (override / "summary.json").exists()
        assert not (tmp_path / "ignored").exists()


class TestParseConfig:
    def test_all_module_preconditions_checked_before_compute(self, tmp_path):
        data = small_run1d_config(tmp_path / "out")
        data["grid"]["n"] = 100  # not a power of two
        data["time"]["checkpoint_every"] = 0.013  # not a snapshot multiple
        data["ensemble"]["trajectory_dt"] = 0.003  # does not divide snapshots
        with pytest.raises(ConfigError) as err:
            parse_config(data)
        text = str(err.value)
        assert "grid" in text and "checkpoint_every" in text and "trajectory_dt" in text

    def test_run2d_requires_2d_state_and_grid2(self):
        data = {
            "scenario": "run2d",
            "state": {"kind": "gaussian"},
            "grid": {"n": 64, "x_min": -9.6, "dx": 0.3},
        }
        with pytest.raises(ConfigError) as err:
            parse_config(data)
        assert "grid2" in str(err.value) and "state.kind" in str(err.value)

    def test_superposition_weights(self, tmp_path):
        data = small_run1d_config(tmp_path / "out")
        data["state"] = {
            "kind": "superposition",
            "terms": [
                {"weight": [0.7, 0.1], "x0": -2.0, "sigma_x": 0.8},
                {"weight": 1.0, "x0": 2.0, "sigma_x": 0.8},
            ],
        }
        cfg = parse_config(data)
        assert cfg.state.terms[0][0] == complex(0.7, 0.1)

    def test_unknown_tolerance_rejected(self, tmp_path):
        data = small_run1d_config(tmp_path / "out")
        data["tolerances"] = {"bogus": 1.0}
        with pytest.raises(ConfigError, match="bogus"):
            parse_config(data)


    def test_map_refine_must_be_power_of_two(self, tmp_path):
        data = small_run1d_config(tmp_path / "out")
        data["map_refine"] = 3
        with pytest.raises(ConfigError, match="map_refine"):
            parse_config(data)

    def test_state_grid_fit_checked_at_parse_time(self, tmp_path):
        data = small_run1d_config(tmp_path / "out")
        data["state"]["sigma_x"] = 50.0  # tails reach the grid boundary
        with pytest.raises(ConfigError, match="state.*boundary density"):
            parse_config(data)

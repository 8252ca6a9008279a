import json

import numpy as np
import pytest

from errors import ConfigError, DimensionMismatch, SimplexViolation, OutOfRange
from network import validate_profile
from dynamics import iterate_issue_sequence
from equilibrium import solve_equilibrium, equilibrium_properties_check
from montecarlo import run_uniqueness_experiment
from extractors import ScenarioConfig, read_config, load_network, parse_x0, read_trajectory_csv
from generators import write_trajectory_csv, write_json, write_report_json, write_experiment_json
from generators.report_writer import trajectory_summary
import database
from tests.conftest import STAR_C


class TestConfigLoader:
    def test_load_star(self, write_config):
        net, prof = load_network(write_config(STAR_C, [0.1, 0.0, 0.6], n=3))
        assert net.n == 3
        assert prof.theta.tolist() == [0.1, 0.0, 0.6]

    def test_assumption_2_not_enforced_on_load(self, write_config):
        _, prof = load_network(write_config([[0.0, 1.0], [1.0, 0.0]], [1.0, 0.5]))
        assert prof.theta_max == 1.0

    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigError):
            read_config(tmp_path / "absent.json")

    def test_malformed_json(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("{\"C\": [[0, 1], [1, 0]], ")
        with pytest.raises(ConfigError):
            read_config(path)

    def test_unknown_key(self, write_config):
        with pytest.raises(ConfigError, match="desconegudes"):
            read_config(write_config(STAR_C, [0.1, 0.0, 0.6], seed=3))

    def test_missing_key(self, tmp_path):
        path = tmp_path / "net.json"
        path.write_text(json.dumps({"C": STAR_C}))
        with pytest.raises(ConfigError, match="Falten"):
            read_config(path)

    def test_declared_size_mismatch(self, write_config):
        with pytest.raises(DimensionMismatch):
            load_network(write_config(STAR_C, [0.1, 0.0, 0.6], n=4))

    def test_scenario_config(self, write_config, tmp_path):
        path = write_config(STAR_C, [0.1, 0.0, 0.6])
        assert ScenarioConfig(network_path=path).model == "issues"
        with pytest.raises(ConfigError):
            ScenarioConfig(network_path=path, model="newton")
        with pytest.raises(ConfigError):
            ScenarioConfig(network_path=tmp_path / "absent.json")


class TestParseX0:
    def test_uniform(self):
        x0, seed = parse_x0("uniform", 4)
        assert x0.x.tolist() == [0.25] * 4
        assert seed is None

    def test_vertex_is_one_based(self):
        x0, _ = parse_x0("vertex(2)", 3)
        assert x0.x.tolist() == [0.0, 1.0, 0.0]
        with pytest.raises(OutOfRange):
            parse_x0("vertex(4)", 3)

    def test_random_is_reproducible(self):
        a, seed = parse_x0("random(9)", 5)
        b, _ = parse_x0("random(9)", 5)
        assert seed == 9
        assert np.array_equal(a.x, b.x)
        assert abs(a.x.sum() - 1.0) <= 1e-12

    @pytest.mark.parametrize("spec", ["0.2,0.3,0.5", "[0.2, 0.3, 0.5]"])
    def test_explicit(self, spec):
        x0, _ = parse_x0(spec, 3)
        assert np.allclose(x0.x, [0.2, 0.3, 0.5])

    def test_errors(self):
        with pytest.raises(ConfigError):
            parse_x0("barycentre", 3)
        with pytest.raises(SimplexViolation):
            parse_x0("0.5,0.6,0.1", 3)
        with pytest.raises(DimensionMismatch):
            parse_x0("0.5,0.5", 3)


class TestTrajectoryFiles:
    def test_csv_round_trip_is_exact(self, star_net, tmp_path):
        prof = validate_profile([0.1, 0.0, 0.6])
        traj = iterate_issue_sequence(star_net, prof, parse_x0("random(4)", 3)[0])
        path = write_trajectory_csv(traj, tmp_path / "traj.csv")
        assert path.read_text().splitlines()[0] == "step,x_1,x_2,x_3"
        back = read_trajectory_csv(path)
        assert np.array_equal(back.as_array(), traj.as_array())

    def test_bad_header(self, tmp_path):
        path = tmp_path / "traj.csv"
        path.write_text("s,a,b\n0,0.5,0.5\n")
        with pytest.raises(ConfigError):
            read_trajectory_csv(path)

    def test_summary(self, star_net):
        traj = iterate_issue_sequence(star_net, validate_profile([0.1, 0.0, 0.6]), parse_x0("uniform", 3)[0])
        summary = trajectory_summary(traj, rate=0.3, seed=5)
        assert summary["converged"]
        assert summary["steps"] == traj.steps
        assert summary["seed"] == 5


class TestJsonReports:
    def test_non_finite_become_null(self, tmp_path):
        path = write_json({"a": float("inf"), "b": [np.float64(0.5), float("nan")],
                           "c": np.arange(2)}, tmp_path / "r.json")
        assert json.loads(path.read_text()) == {"a": None, "b": [0.5, None], "c": [0, 1]}

    def test_floats_are_exact(self, tmp_path):
        value = 0.1 + 0.2
        path = write_json({"v": value}, tmp_path / "r.json")
        assert json.loads(path.read_text())["v"] == value

    def test_equilibrium_report(self, star_net, tmp_path):
        prof = validate_profile([0.1, 0.0, 0.6])
        report = solve_equilibrium(star_net, prof)
        props = equilibrium_properties_check(star_net, prof, report.x_star)
        data = json.loads(write_report_json(report, tmp_path / "eq.json", props).read_text())
        assert data["x_star"] == [float(v) for v in report.x_star.x]
        assert data["properties"]["all_hold"]
        assert data["uniqueness"] == report.uniqueness

    def test_experiment_report(self, tmp_path):
        exp = run_uniqueness_experiment(2, 2, n=3, seed=5, n_jobs=1)
        data = json.loads(write_experiment_json(exp, tmp_path / "mc.json").read_text())
        assert data["seed"] == 5
        assert data["mismatches"] == exp.mismatches


class TestLedger:
    def test_runs_and_stats(self, tmp_path):
        db = tmp_path / "ledger.db"
        first = database.log_run("simulate", n=3, model="issues", seed=1, converged=True,
                                 steps=40, residual=1e-13, output="out", db_path=db)
        second = database.log_run("equilibrium", n=3, converged=False, db_path=db)
        assert second == first + 1

        stats = database.get_run_stats(db)
        assert stats["total_runs"] == 2
        assert stats["recent_runs"][0]["command"] == "equilibrium"
        assert stats["recent_runs"][0]["converged"] is False
        assert [r["id"] for r in database.get_recent_runs("simulate", db)] == [first]

    def test_experiment_rows(self, tmp_path):
        db = tmp_path / "ledger.db"
        exp = run_uniqueness_experiment(2, 2, n=3, seed=2, n_jobs=1)
        run_id = database.log_run("montecarlo", n=3, seed=2, db_path=db)
        database.log_experiment(run_id, exp, db)
        stats = database.get_run_stats(db)
        assert stats["total_experiments"] == 1
        assert stats["total_mismatches"] == exp.mismatches
        recorded = stats["recent_experiments"][0]
        assert recorded["run_id"] == run_id
        assert recorded["empirical_probability"] == exp.empirical_probability
        assert recorded["pair_fraction"] == exp.pair_fraction

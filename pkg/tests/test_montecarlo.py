import json

import numpy as np
import pytest

from errors import OutOfRange
from network import validate_network, check_assumption_a2
from montecarlo import (
    ChernoffPlan, chernoff_sample_size, sample_simplex, sample_instance,
    run_uniqueness_experiment, star_network, star_runs, STAR_PROFILES,
    PairResult, UniquenessExperiment,
)


class TestChernoff:
    @pytest.mark.parametrize("epsilon,eta,expected", [
        (0.01, 0.01, 26492),
        (0.1, 0.1, 150),
        (0.999, 0.5, 1),
    ])
    def test_known_sizes(self, epsilon, eta, expected):
        assert chernoff_sample_size(epsilon, eta) == expected

    def test_plan(self):
        plan = ChernoffPlan.from_bounds(0.1, 0.1)
        assert plan.N == 150
        assert plan.N >= np.log(2 / plan.eta) / (2 * plan.epsilon ** 2)

    def test_nonincreasing(self):
        grid = np.linspace(0.01, 0.99, 25)
        sizes = np.array([[chernoff_sample_size(e, h) for h in grid] for e in grid])
        assert np.all(np.diff(sizes, axis=0) <= 0)
        assert np.all(np.diff(sizes, axis=1) <= 0)

    @pytest.mark.parametrize("epsilon,eta", [(0.0, 0.1), (1.0, 0.1), (0.1, 0.0), (0.1, 1.5)])
    def test_out_of_range(self, epsilon, eta):
        with pytest.raises(OutOfRange):
            chernoff_sample_size(epsilon, eta)


class TestSampling:
    def test_simplex_samples(self):
        rng = np.random.default_rng(1)
        for _ in range(100):
            assert abs(sample_simplex(rng, 6).x.sum() - 1.0) <= 1e-12

    def test_simplex_deterministic(self):
        a = [sample_simplex(np.random.default_rng(5), 4).x for _ in range(3)]
        b = [sample_simplex(np.random.default_rng(5), 4).x for _ in range(3)]
        assert all(np.array_equal(u, v) for u, v in zip(a, b))

    def test_simplex_mean(self):
        n, draws = 4, 100_000
        rng = np.random.default_rng(2)
        samples = np.array([sample_simplex(rng, n).x for _ in range(draws)])
        sigma = np.sqrt((n - 1) / (n * n * (n + 1)) / draws)
        assert np.all(np.abs(samples.mean(axis=0) - 1 / n) < 4 * sigma)

    def test_instances_are_valid(self):
        rng = np.random.default_rng(3)
        for _ in range(50):
            net, prof = sample_instance(rng, 5, 0.8)
            assert validate_network(net.C.copy()).n == 5
            assert check_assumption_a2(prof)
            assert prof.theta_max < 0.8

    def test_theta_mean(self):
        rng = np.random.default_rng(4)
        thetas = np.concatenate([sample_instance(rng, 5, 1.0)[1].theta for _ in range(2000)])
        sigma = np.sqrt(1 / 12 / thetas.size)
        assert abs(thetas.mean() - 0.5) < 4 * sigma

    def test_bad_cap(self):
        with pytest.raises(OutOfRange):
            sample_instance(np.random.default_rng(0), 3, 0.0)


class TestExperiment:
    def test_small_run_has_no_mismatches(self):
        exp = run_uniqueness_experiment(4, 6, n=4, seed=42, theta_max_cap=0.8, n_jobs=1)
        assert exp.mismatches == 0
        assert exp.empirical_probability == 1.0
        assert exp.non_convergent == []
        assert all(r.bound_violations == 0 for r in exp.results)
        assert exp.pair_probability(0) == 1.0

    def test_reproducible_across_workers(self):
        a = run_uniqueness_experiment(3, 4, n=3, seed=7, n_jobs=1)
        b = run_uniqueness_experiment(3, 4, n=3, seed=7, n_jobs=2)
        assert json.dumps(a.to_dict()) == json.dumps(b.to_dict())

    def test_single_issue_model(self):
        exp = run_uniqueness_experiment(2, 3, n=3, seed=8, model="single", theta_max_cap=0.45, n_jobs=1)
        assert exp.mismatches == 0

    def test_zero_tolerance_counts_rounding(self):
        exp = run_uniqueness_experiment(4, 6, n=4, seed=42, tolerance=0.0, theta_max_cap=0.8, n_jobs=1)
        assert exp.mismatches > 0

    def test_empirical_probability_counts_cells(self):
        exp = run_uniqueness_experiment(4, 6, n=4, seed=42, tolerance=1e-14, n_jobs=1)
        assert exp.matches == 24 - exp.mismatches
        assert exp.empirical_probability == pytest.approx(exp.matches / 24)
        assert exp.pair_fraction == sum(r.mismatch_count == 0 for r in exp.results) / 4

        data = exp.to_dict()
        assert data["empirical_probability"] == exp.empirical_probability
        assert data["pair_fraction"] == exp.pair_fraction
        for pair, r in zip(data["pairs"], exp.results):
            assert pair["empirical_probability"] == (6 - r.mismatch_count) / 6
            assert exp.pair_probability(r.pair) == pair["empirical_probability"]

    def test_partial_pair_keeps_its_matches(self):
        good = PairResult(pair=0, reference_x_star=[0.5, 0.5], mismatch_count=0, max_spread=0.0, init_count=4)
        bad = PairResult(pair=1, reference_x_star=[0.5, 0.5], mismatch_count=1, max_spread=1e-3, init_count=4)
        exp = UniquenessExperiment(seed=0, n=2, model="issues", pair_count=2, init_count=4,
                                   tolerance=1e-8, results=[good, bad])
        assert exp.empirical_probability == 7 / 8
        assert exp.pair_fraction == 0.5
        assert bad.empirical_probability == 0.75

    def test_invalid_arguments(self):
        with pytest.raises(OutOfRange):
            run_uniqueness_experiment(1, 1, n=3, seed=0, model="newton")
        with pytest.raises(OutOfRange):
            run_uniqueness_experiment(0, 1, n=3, seed=0)

    def test_serialization(self):
        exp = run_uniqueness_experiment(2, 2, n=3, seed=1, plan=ChernoffPlan.from_bounds(0.5, 0.5), n_jobs=1)
        data = exp.to_dict()
        assert data["plan"]["N"] == chernoff_sample_size(0.5, 0.5)
        assert len(data["pairs"]) == 2
        assert len(data["pairs"][0]["reference_x_star"]) == 3

    @pytest.mark.slow
    def test_desk_scale(self):
        exp = run_uniqueness_experiment(200, 200, n=5, seed=42)
        assert exp.mismatches == 0
        assert all(r.bound_violations == 0 for r in exp.results)


class TestStarScenario:
    def test_network(self):
        assert star_network().n == 3

    def test_runs_agree(self):
        runs = star_runs(STAR_PROFILES["center"], runs=10, seed=3)
        finals = np.array([t.final.x for t in runs])
        assert all(t.converged for t in runs)
        assert np.abs(finals - finals[0]).sum(axis=1).max() < 1e-8
        assert int(np.argmax(finals[0])) == 0

    @pytest.mark.parametrize("key,leader", [("light_leaf", 1), ("heavy_leaf", 2)])
    def test_profiles(self, key, leader):
        runs = star_runs(STAR_PROFILES[key], runs=3, seed=0)
        assert int(np.argmax(runs[-1].final.x)) == leader

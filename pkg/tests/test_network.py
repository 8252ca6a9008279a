import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from errors import (
    NonSquare, NonzeroDiagonal, NegativeEntry, RowSumViolation, DimensionMismatch,
    SimplexViolation, AssumptionViolation, OutOfRange,
)
from network import (
    validate_network, make_profile, validate_profile, as_power_vector, uniform_power,
    vertex_power, analyze_structure, check_assumption_a1, check_assumption_a2,
)
from tests.conftest import STAR_C, complete_uniform


class TestValidateNetwork:
    def test_star_is_valid(self):
        net = validate_network(STAR_C)
        assert net.n == 3
        assert net.renormalized_rows == ()
        assert not net.C.flags.writeable

    def test_returns_network_unchanged(self, star_net):
        assert validate_network(star_net) is star_net

    @pytest.mark.parametrize("raw", [
        [[0.0, 1.0, 0.0], [1.0, 0.0, 0.0]],
        [[0.0]],
        [[0.0, 1.0], [1.0]],
    ])
    def test_non_square(self, raw):
        with pytest.raises(NonSquare):
            validate_network(raw)

    def test_nonzero_diagonal_is_one_based(self):
        with pytest.raises(NonzeroDiagonal) as exc:
            validate_network([[0.5, 0.5], [1.0, 0.0]])
        assert exc.value.i == 1

    def test_negative_entry(self):
        with pytest.raises(NegativeEntry) as exc:
            validate_network([[0.0, -0.1, 1.1], [1.0, 0.0, 0.0], [1.0, 0.0, 0.0]])
        assert (exc.value.i, exc.value.j) == (1, 2)

    def test_row_sum_violation(self):
        with pytest.raises(RowSumViolation) as exc:
            validate_network([[0.0, 1.0], [0.9, 0.0]])
        assert exc.value.row == 2
        assert exc.value.total == pytest.approx(0.9)

    def test_small_drift_is_renormalized(self):
        net = validate_network([[0.0, 0.5, 0.5 + 1e-13], [1.0, 0.0, 0.0], [1.0, 0.0, 0.0]])
        assert net.renormalized_rows == (1,)
        assert abs(net.C[0].sum() - 1.0) < 1e-15

    def test_errors_are_value_errors(self):
        with pytest.raises(ValueError):
            validate_network([[0.0, 0.5], [1.0, 0.0]])


class TestProfile:
    def test_derived_scalars(self):
        prof = make_profile([0.6, 0.3, 0.1])
        assert prof.theta_min == pytest.approx(0.1)
        assert prof.theta_ave == pytest.approx(1 / 3)
        assert prof.theta_max == pytest.approx(0.6)
        assert prof.zeta == pytest.approx(0.9)

    def test_index_sets(self):
        prof = make_profile([0.1, 0.0, 0.6])
        assert prof.V_f == (1,)
        assert prof.V_p == (0, 2)
        assert prof.r == 1

    def test_out_of_range(self):
        with pytest.raises(OutOfRange):
            make_profile([0.5, 1.2])

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            make_profile([0.5, 0.2], n=3)

    @pytest.mark.parametrize("theta", [[1.0, 0.5], [0.0, 0.0, 0.0]])
    def test_assumption_2(self, theta):
        with pytest.raises(AssumptionViolation) as exc:
            validate_profile(theta)
        assert "Assumpció 2" in str(exc.value)
        assert not check_assumption_a2(make_profile(theta))

    def test_assumption_2_holds(self):
        assert check_assumption_a2(make_profile([0.3, 0.0]))


class TestPowerVector:
    def test_uniform_and_vertex(self):
        assert uniform_power(4).x.tolist() == [0.25] * 4
        assert vertex_power(3, 1).x.tolist() == [0.0, 1.0, 0.0]
        with pytest.raises(OutOfRange):
            vertex_power(3, 3)

    def test_rejects_off_simplex(self):
        with pytest.raises(SimplexViolation):
            as_power_vector([0.5, 0.6])
        with pytest.raises(SimplexViolation):
            as_power_vector([1.5, -0.5])

    def test_tiny_drift_renormalized(self):
        v = as_power_vector([0.5, 0.5 + 5e-13])
        assert v.renormalized
        assert abs(v.x.sum() - 1.0) < 1e-15

    @given(st.lists(st.floats(min_value=1e-3, max_value=10.0), min_size=2, max_size=12))
    @settings(max_examples=200, deadline=None)
    def test_normalized_vectors_are_accepted(self, weights):
        w = np.asarray(weights)
        v = as_power_vector(w / w.sum())
        assert abs(v.x.sum() - 1.0) <= 1e-12
        assert np.all(v.x >= 0)


class TestStructure:
    def test_star(self, star_net):
        s = analyze_structure(star_net)
        assert s.is_star
        assert s.star_center == 0
        assert s.star_centers == (0,)
        assert len(s.sccs) == 1
        assert not s.doubly_stochastic

    def test_complete_is_doubly_stochastic(self):
        s = analyze_structure(validate_network(complete_uniform(3)))
        assert s.doubly_stochastic
        assert not s.is_star

    def test_two_nodes_both_centers(self):
        s = analyze_structure(validate_network([[0.0, 1.0], [1.0, 0.0]]))
        assert s.star_centers == (0, 1)

    def test_sink_components(self):
        net = validate_network([[0.0, 1.0, 0.0], [0.0, 0.0, 1.0], [0.0, 1.0, 0.0]])
        s = analyze_structure(net)
        assert s.sink_sccs == (frozenset({1, 2}),)
        assert len(s.sccs) == 2

    def test_assumption_1(self):
        net = validate_network([[0.0, 1.0, 0.0], [0.0, 0.0, 1.0], [0.0, 1.0, 0.0]])
        x0 = uniform_power(3)
        assert not check_assumption_a1(net, make_profile([0.5, 1.0, 1.0]), x0)
        assert check_assumption_a1(net, make_profile([0.5, 0.5, 1.0]), x0)

    def test_assumption_1_vertex_start(self, star_net):
        prof = make_profile([1.0, 0.5, 0.5])
        assert not check_assumption_a1(star_net, prof, vertex_power(3, 0))
        assert check_assumption_a1(star_net, prof, uniform_power(3))

    @given(seed=st.integers(0, 2 ** 32 - 1), n=st.integers(2, 8))
    @settings(max_examples=150, deadline=None)
    def test_sink_components_match_reachability(self, seed, n):
        rng = np.random.default_rng(seed)
        C = np.zeros((n, n))
        for i in range(n):
            others = [j for j in range(n) if j != i]
            targets = rng.choice(others, size=int(rng.integers(1, min(3, n - 1) + 1)), replace=False)
            C[i, targets] = rng.dirichlet(np.ones(targets.size))
        net = validate_network(C)

        reach = np.eye(n, dtype=bool) | (net.C > 0)
        for _ in range(n):
            reach = reach | ((reach.astype(int) @ reach.astype(int)) > 0)
        components = {frozenset(np.flatnonzero(reach[i] & reach[:, i]).tolist()) for i in range(n)}
        sinks = {c for c in components if all(set(np.flatnonzero(reach[i]).tolist()) <= c for i in c)}

        s = analyze_structure(net)
        assert set(s.sccs) == components
        assert set(s.sink_sccs) == sinks

"""Exact privacy oracles, dominance audits, and Monte Carlo confirmation."""

import itertools
import math

import numpy as np
import pytest

from shotdp import (
    DegenerateMuError,
    IncompletePVMError,
    OutOfRangeError,
    PreconditionViolatedError,
    TooManyOutcomesError,
    apply_channel,
    basis_columns,
    basis_state,
    binomial_distribution,
    complement_projector,
    depolarizing_channel,
    dominance_audit,
    exact_epsilon,
    expectation,
    hockey_stick_delta,
    identity_channel,
    make_density,
    make_projector,
    maximally_mixed,
    min_expectation,
    monte_carlo_audit,
    qdp_check,
    sample_means,
)
from conftest import random_density, random_projector


def qdp_oracle(p, q, eps, delta):
    """Brute-force subset enumeration of the privacy inequality, both ways."""
    outcomes = range(len(p))
    for size in range(len(p) + 1):
        for subset in itertools.combinations(outcomes, size):
            a = sum(p[k] for k in subset)
            b = sum(q[k] for k in subset)
            if a > math.exp(eps) * b + delta + 1e-12:
                return False
            if b > math.exp(eps) * a + delta + 1e-12:
                return False
    return True


class TestExactEpsilon:
    """Worst-case log ratio over the two binomial outcome laws."""

    def test_reference_points(self):
        assert exact_epsilon(0.25, 0.15, 4) == pytest.approx(2.04330249, abs=1e-7)
        assert exact_epsilon(0.25, 0.15, 1) == pytest.approx(math.log(0.25 / 0.15), rel=1e-12)

    def test_scales_linearly_in_shots(self):
        """The extreme ratio sits at an endpoint, so it grows linearly."""
        one = exact_epsilon(0.25, 0.15, 1)
        for n in (2, 5, 17, 40):
            assert exact_epsilon(0.25, 0.15, n) == pytest.approx(n * one, rel=1e-12)

    def test_symmetric_in_the_two_means(self):
        assert exact_epsilon(0.25, 0.15, 7) == exact_epsilon(0.15, 0.25, 7)

    def test_zero_for_equal_means(self):
        assert exact_epsilon(0.3, 0.3, 10) == 0.0

    def test_nondecreasing_in_shots(self):
        for mu0, mu1 in ((0.25, 0.15), (0.6, 0.55), (0.9, 0.2)):
            values = [exact_epsilon(mu0, mu1, n) for n in range(1, 51)]
            assert all(x <= y + 1e-12 for x, y in zip(values, values[1:]))

    def test_rejects_degenerate_means(self):
        with pytest.raises(DegenerateMuError):
            exact_epsilon(1.0, 0.15, 5)


class TestHockeyStick:
    """Exact excess mass of one binomial law over an inflated other."""

    def test_reference_point(self):
        assert hockey_stick_delta(0.25, 0.15, 4, 0.0) == pytest.approx(0.2056, abs=1e-10)

    def test_at_zero_equals_total_variation(self):
        for mu0, mu1, n in ((0.25, 0.15, 4), (0.5, 0.2, 9), (0.7, 0.65, 30)):
            p = binomial_distribution(mu0, n).probs
            q = binomial_distribution(mu1, n).probs
            tv = 0.5 * float(np.abs(p - q).sum())
            assert hockey_stick_delta(mu0, mu1, n, 0.0) == pytest.approx(tv, abs=1e-12)

    def test_vanishes_at_exact_epsilon(self):
        """The oracle pair is consistent: no excess mass at the exact budget."""
        for mu0, mu1, n in ((0.25, 0.15, 4), (0.25, 0.15, 10), (0.4, 0.1, 6)):
            eps = exact_epsilon(mu0, mu1, n)
            assert hockey_stick_delta(mu0, mu1, n, eps) <= 1e-12

    def test_nonincreasing_in_epsilon(self):
        values = [hockey_stick_delta(0.25, 0.15, 10, e) for e in np.linspace(0.0, 6.0, 25)]
        assert all(x >= y - 1e-15 for x, y in zip(values, values[1:]))

    def test_rejects_negative_epsilon(self):
        with pytest.raises(OutOfRangeError):
            hockey_stick_delta(0.25, 0.15, 4, -0.1)


class TestMinExpectation:
    """Identifying the smaller outcome mean of the measured pair."""

    def test_identity_channel_example(self):
        rho = make_density(np.diag([0.15, 0.85]))
        sigma = make_density(np.diag([0.25, 0.75]))
        m = make_projector(basis_columns(2, [0]))
        got = min_expectation(rho, sigma, identity_channel(2), m)
        assert got.value == pytest.approx(0.15, abs=1e-12)
        assert got.which == "rho"
        assert got.mu1 == pytest.approx(0.25, abs=1e-12)

    def test_depolarizing_channel_shifts_means(self):
        rho = make_density(np.diag([0.15, 0.85]))
        sigma = make_density(np.diag([0.25, 0.75]))
        m = make_projector(basis_columns(2, [0]))
        got = min_expectation(rho, sigma, depolarizing_channel(0.5, 2), m)
        assert got.value == pytest.approx(0.325, abs=1e-12)
        assert got.which == "rho"

    def test_pure_against_mixed(self):
        m = make_projector(basis_columns(2, [0]))
        got = min_expectation(basis_state(2, 0), maximally_mixed(2), identity_channel(2), m)
        assert got.value == pytest.approx(0.5, abs=1e-15)
        assert got.which == "sigma"
        assert got.mu0 == pytest.approx(1.0, abs=1e-15)

    def test_depolarized_pure_against_diagonal(self):
        # post-channel diagonals are (1-p)*w + p/2: rho -> (0.75, 0.25),
        # sigma -> (0.625, 0.375); the |1> outcome picks the second entry
        sigma = make_density(np.diag([0.75, 0.25]))
        m = make_projector(basis_columns(2, [1]))
        got = min_expectation(basis_state(2, 0), sigma, depolarizing_channel(0.5, 2), m)
        assert got.value == pytest.approx(0.25, abs=1e-12)
        assert got.which == "rho"
        assert got.mu1 == pytest.approx(0.375, abs=1e-12)

    def test_tie_reports_sigma(self, rng):
        rho = random_density(rng, 2)
        m = random_projector(rng, 2, 1)
        got = min_expectation(rho, rho, identity_channel(2), m)
        assert got.which == "sigma"


class TestQdpCheck:
    """Subset-enumeration privacy check on measured outcome laws."""

    def test_identical_states_pass_at_zero(self, rng):
        rho = random_density(rng, 2)
        pvm = [make_projector(basis_columns(2, [0])), make_projector(basis_columns(2, [1]))]
        assert qdp_check(rho, rho, identity_channel(2), pvm, 0.0, 0.0)

    def test_orthogonal_states_fail_without_delta(self):
        rho, sigma = basis_state(2, 0), basis_state(2, 1)
        pvm = [make_projector(basis_columns(2, [0])), make_projector(basis_columns(2, [1]))]
        assert not qdp_check(rho, sigma, identity_channel(2), pvm, 10.0, 0.0)
        assert qdp_check(rho, sigma, identity_channel(2), pvm, 0.0, 1.0)

    def test_full_noise_erases_all_distinguishability(self):
        rho, sigma = basis_state(2, 0), basis_state(2, 1)
        pvm = [make_projector(basis_columns(2, [0])), make_projector(basis_columns(2, [1]))]
        assert qdp_check(rho, sigma, depolarizing_channel(1.0, 2), pvm, 0.0, 0.0)

    def test_threshold_at_the_exact_ratio(self):
        """The check flips exactly at the worst single-outcome log ratio."""
        rho = make_density(np.diag([0.25, 0.75]))
        sigma = make_density(np.diag([0.15, 0.85]))
        pvm = [make_projector(basis_columns(2, [0])), make_projector(basis_columns(2, [1]))]
        eps_star = math.log(0.25 / 0.15)
        assert qdp_check(rho, sigma, identity_channel(2), pvm, eps_star, 0.0)
        assert not qdp_check(rho, sigma, identity_channel(2), pvm, eps_star - 1e-6, 0.0)

    def test_monotone_in_both_budget_arguments(self):
        rho = make_density(np.diag([0.25, 0.75]))
        sigma = make_density(np.diag([0.15, 0.85]))
        pvm = [make_projector(basis_columns(2, [0])), make_projector(basis_columns(2, [1]))]
        budgets = [(0.1, 0.0), (0.1, 0.05), (0.3, 0.05), (0.6, 0.05)]
        results = [qdp_check(rho, sigma, identity_channel(2), pvm, e, dl) for e, dl in budgets]
        for earlier, later in zip(results, results[1:]):
            assert later or not earlier

    def test_agrees_with_subset_oracle(self, rng):
        """Four-outcome PVMs against a written-out subset enumeration."""
        cols = np.eye(4)
        pvm = [make_projector(cols[:, [k]]) for k in range(4)]
        ch = identity_channel(4)
        for _ in range(25):
            rho, sigma = random_density(rng, 4), random_density(rng, 4)
            p = [expectation(rho, m) for m in pvm]
            q = [expectation(sigma, m) for m in pvm]
            for eps in (0.0, 0.05, 0.2, 1.0):
                for delta in (0.0, 0.01, 0.2):
                    assert qdp_check(rho, sigma, ch, pvm, eps, delta) == qdp_oracle(p, q, eps, delta)

    def test_binary_pvm_from_complement(self, rng):
        rho, sigma = random_density(rng, 3), random_density(rng, 3)
        m = random_projector(rng, 3, 1)
        pvm = [m, complement_projector(m)]
        p = [expectation(rho, x) for x in pvm]
        q = [expectation(sigma, x) for x in pvm]
        for eps in (0.0, 0.1, 0.5):
            assert qdp_check(rho, sigma, identity_channel(3), pvm, eps, 0.0) == qdp_oracle(p, q, eps, 0.0)

    def test_rejects_incomplete_family(self):
        rho = basis_state(2, 0)
        with pytest.raises(IncompletePVMError, match="IncompletePVM"):
            qdp_check(rho, rho, identity_channel(2), [make_projector(basis_columns(2, [0]))], 0.0, 0.0)

    def test_rejects_too_many_outcomes(self):
        dim = 17
        rho = maximally = basis_state(dim, 0)
        pvm = [make_projector(basis_columns(dim, [k])) for k in range(dim)]
        with pytest.raises(TooManyOutcomesError, match="TooManyOutcomes"):
            qdp_check(rho, maximally, identity_channel(dim), pvm, 0.0, 0.0)

    def test_rejects_negative_budget(self):
        rho = basis_state(2, 0)
        pvm = [make_projector(basis_columns(2, [0])), make_projector(basis_columns(2, [1]))]
        with pytest.raises(OutOfRangeError):
            qdp_check(rho, rho, identity_channel(2), pvm, -0.1, 0.0)


class TestDominanceAudit:
    """Endpoint and window checks of the closed-form budget against oracles."""

    def test_reference_pair_is_dominated(self):
        rep = dominance_audit(d=0.1, r=1, n=10, mu0=0.25, mu1=0.15)
        assert rep.dominated == {"endpoint_lower": True, "endpoint_upper": True, "window_exact": True}
        assert rep.flags == ()
        assert rep.theorem_epsilon == pytest.approx(6.4215954, abs=1e-6)
        assert rep.exact_epsilon == pytest.approx(5.1082562, abs=1e-6)
        assert 0.0 <= rep.exact_delta_at_eps <= 1.0

    def test_window_excludes_boundary_outcome(self):
        """The lower 3-sigma endpoint clips at zero, so k = 0 is set aside."""
        rep = dominance_audit(d=0.1, r=1, n=10, mu0=0.25, mu1=0.15)
        assert rep.excluded_outcomes == (0,)
        assert rep.details["endpoints_clipped"]
        assert rep.details["x_lower"] == 0.0

    def test_large_shot_count_breaks_upper_endpoint(self):
        """Past the crossover the normal tail argument exceeds the budget."""
        rep = dominance_audit(d=0.1, r=1, n=200, mu0=0.25, mu1=0.15)
        assert rep.dominated["endpoint_upper"] is False
        assert rep.details["llr_upper"] > rep.theorem_epsilon

    def test_slack_matches_details(self):
        rep = dominance_audit(d=0.1, r=1, n=10, mu0=0.25, mu1=0.15)
        assert rep.details["slack_upper"] == pytest.approx(
            rep.theorem_epsilon - rep.details["llr_upper"], abs=1e-12
        )

    def test_nonconvex_regime_is_flagged(self):
        rep = dominance_audit(d=0.1, r=1, n=10, mu0=0.85, mu1=0.75)
        assert "NonConvexRegime" in rep.flags

    def test_equal_means_trivially_dominated(self):
        rep = dominance_audit(d=0.1, r=1, n=10, mu0=0.15, mu1=0.15)
        assert rep.exact_epsilon == 0.0
        assert all(rep.dominated.values())

    def test_depolarizing_regime(self):
        rep = dominance_audit(d=0.1, r=1, n=10, mu0=0.17, mu1=0.15, regime="depolarizing", p=0.5, dim=2)
        assert all(rep.dominated.values())
        assert rep.theorem_epsilon == pytest.approx(1.87222257, abs=1e-7)

    def test_misordered_means_rejected(self):
        with pytest.raises(PreconditionViolatedError, match="PreconditionViolated"):
            dominance_audit(d=0.1, r=1, n=10, mu0=0.15, mu1=0.25)

    def test_gap_beyond_distance_rejected(self):
        with pytest.raises(PreconditionViolatedError):
            dominance_audit(d=0.1, r=1, n=10, mu0=0.5, mu1=0.15)

    def test_depolarizing_ratio_bound_enforced(self):
        """mu0/mu1 beyond 1 + (1-p)/p d D cannot come from one depolarized pair."""
        with pytest.raises(PreconditionViolatedError):
            dominance_audit(d=0.1, r=1, n=10, mu0=0.19, mu1=0.15, regime="depolarizing", p=0.5, dim=2)


class TestMonteCarloAudit:
    """Sampled-frequency confirmation of the exact outcome laws."""

    def test_same_seed_reproduces_report(self):
        a = monte_carlo_audit(0.25, 0.15, 10, 5000, seed=9)
        b = monte_carlo_audit(0.25, 0.15, 10, 5000, seed=9)
        assert a.details["empirical_p0"] == b.details["empirical_p0"]
        assert a.details["epsilon_hat"] == b.details["epsilon_hat"]

    def test_seed_controls_both_streams(self):
        a = monte_carlo_audit(0.25, 0.15, 10, 5000, seed=9)
        b = monte_carlo_audit(0.25, 0.15, 10, 5000, seed=10)
        assert a.details["empirical_p0"] != b.details["empirical_p0"]
        assert a.details["empirical_p1"] != b.details["empirical_p1"]

    def test_streams_are_independent_of_each_other(self):
        """The two hypotheses draw from distinct child streams."""
        rep = monte_carlo_audit(0.25, 0.25, 10, 5000, seed=9)
        assert rep.details["empirical_p0"] != rep.details["empirical_p1"]

    def test_histogram_tracks_exact_law(self):
        """Empirical mass within 5 sqrt(P(k)/trials) of exact, non-boundary k."""
        trials = 1000000
        for seed in (0, 1, 2, 3, 4):
            rep = monte_carlo_audit(0.25, 0.15, 10, trials, seed=seed)
            for label in ("0", "1"):
                emp = np.array(rep.details[f"empirical_p{label}"])
                exact = np.array(rep.details[f"exact_p{label}"])
                for k in range(1, 10):
                    envelope = 5.0 * math.sqrt(exact[k] / trials)
                    assert abs(emp[k] - exact[k]) <= envelope

    def test_unobserved_outcomes_are_excluded(self):
        """k = 10 has probability ~6e-9 under mu = 0.15: never seen at 10^4."""
        rep = monte_carlo_audit(0.25, 0.15, 10, 10000, seed=5)
        assert 10 in rep.excluded_outcomes
        assert all(k not in rep.details["epsilon_hat"] for k in rep.excluded_outcomes)

    def test_budget_coverage_verdicts(self):
        generous = monte_carlo_audit(0.25, 0.15, 10, 5000, seed=5, eps=6.0, delta=0.01)
        stingy = monte_carlo_audit(0.25, 0.15, 10, 5000, seed=5, eps=0.1, delta=1e-6)
        assert generous.dominated == {"budget_covers_exact": True}
        assert stingy.dominated == {"budget_covers_exact": False}

    def test_too_few_trials_rejected(self):
        with pytest.raises(OutOfRangeError, match="OutOfRange"):
            monte_carlo_audit(0.25, 0.15, 10, 999, seed=5)

    def test_report_metadata(self):
        rep = monte_carlo_audit(0.25, 0.15, 10, 5000, seed=9)
        assert rep.trials == 5000
        assert rep.seed == 9
        assert rep.theorem_epsilon is None

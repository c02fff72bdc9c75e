"""Tests for the isotropic central-spin closed forms, Haar integrals and named cases."""

import numpy as np
import pytest

from ddqe.centralspin import (
    CASE_FEATURES,
    NAMED_CASES,
    CentralSpinParams,
    accumulated_dissipation,
    agreement_ratio,
    case_feature,
    case_times,
    central_spin_ensemble,
    exact_solution,
    h_eff_central,
    haar_average_evolution,
    local_extrema,
    mc_haar_integral,
    me_rhs_central,
    named_case,
    quarter_period_offset,
    run_central_spin_scenario,
    short_time_h_eff_central,
    sinc,
    weingarten_haar_integral,
)
from ddqe.ensemble import mc_average_evolution
from ddqe.exceptions import DimensionError, DomainError, InvalidConfigError
from ddqe.qcore import SIGMA_X, SIGMA_Z, DensityMatrix, RngStream


class TestClosedForm:
    @pytest.mark.parametrize("shift", ["derived", "published"])
    @pytest.mark.parametrize("t", [0.4, 2.0, 7.3])
    def test_solves_master_equation(self, plus_state, shift, t):
        """Central difference of the closed form equals the right-hand side."""
        p = CentralSpinParams(omega=1.0, delta_sq_mean=0.09, coherent_shift=shift)
        sol = exact_solution(p, plus_state)
        h = 1e-5
        rho_plus, rho_minus = sol.density(np.array([t + h, t - h]))
        derivative = (rho_plus - rho_minus) / (2 * h)
        rho = sol.density(np.array([t]))[0]
        assert np.allclose(derivative, me_rhs_central(p, t, rho), atol=1e-8)

    def test_initial_state(self, plus_state, central_params):
        rho = exact_solution(central_params, plus_state).density(np.array([0.0]))[0]
        assert np.allclose(rho, plus_state.matrix)

    def test_populations_relax_to_half(self, down_state):
        p = CentralSpinParams(omega=1.0, delta_sq_mean=0.25)
        sol = exact_solution(p, down_state)
        # sinc^2(omega t) vanishes at omega t = pi, leaving populations unchanged there
        assert sol.rho_uu(np.pi) == pytest.approx(0.0, abs=1e-12)
        assert 0.0 < sol.rho_uu(1.0) < 0.5

    def test_vanishing_omega_is_continuous(self, plus_state):
        p = CentralSpinParams(omega=0.0, delta_sq_mean=0.04)
        rho = exact_solution(p, plus_state).density(np.array([0.0, 1.0, 2.0]))
        assert np.all(np.isfinite(rho))

    def test_short_time_shift_agrees_at_small_t(self, central_params):
        t = 0.01
        assert np.allclose(h_eff_central(central_params, t), short_time_h_eff_central(central_params, t), atol=1e-9)

    def test_accumulated_dissipation(self, central_params):
        t = np.array([0.0, 1e-3, 2.0])
        values = accumulated_dissipation(central_params, t)
        assert values[0] == 0.0
        assert values[1] == pytest.approx(central_params.strength * 1e-6 / 3.0, rel=1e-5)
        expected = central_params.strength * 4.0 * (1.0 + sinc(2.0) ** 2) / 6.0
        assert values[2] == pytest.approx(expected)

    def test_trajectory_flags_breach(self, plus_state):
        p = CentralSpinParams(omega=1.0, delta_sq_mean=1.0)
        times = np.linspace(0.0, 3.0, 31)
        rec = exact_solution(p, plus_state).trajectory(times, threshold=0.5)
        past = accumulated_dissipation(p, times) > 0.5
        assert np.array_equal(rec.validity == 0, past)
        assert rec.breach_time == pytest.approx(times[np.argmax(past)])

    def test_states_stay_physical(self, down_state):
        p = CentralSpinParams(omega=1.0, delta_sq_mean=0.04)
        rec = exact_solution(p, down_state).trajectory(np.linspace(0.0, 12.0, 121))
        assert rec.trace_drift() < 1e-12
        assert rec.min_eigenvalue() > -1e-12

    def test_rhs_needs_qubit(self, central_params):
        with pytest.raises(DimensionError):
            me_rhs_central(central_params, 1.0, np.eye(3) / 3)

    @pytest.mark.parametrize(
        "kwargs,key",
        [
            ({"omega": float("nan"), "delta_sq_mean": 0.1}, "omega"),
            ({"omega": 1.0, "delta_sq_mean": -0.1}, "delta_sq_mean"),
            ({"omega": 1.0, "delta_sq_mean": 0.1, "h_bar": 0.0}, "h_bar"),
            ({"omega": 1.0, "delta_sq_mean": 0.1, "coherent_shift": "guessed"}, "coherent_shift"),
        ],
    )
    def test_invalid_params(self, kwargs, key):
        with pytest.raises(InvalidConfigError) as exc:
            CentralSpinParams(**kwargs)
        assert exc.value.key == key


class TestHaarAverage:
    def test_is_a_density_matrix(self, plus_state, central_params):
        rec = haar_average_evolution(central_params, plus_state, np.linspace(0.0, 5.0, 6), n_nodes=8)
        assert rec.source == "exact"
        assert rec.trace_drift() < 1e-12
        assert rec.hermiticity_drift() < 1e-12

    def test_matches_monte_carlo(self, plus_state):
        p = CentralSpinParams(omega=1.0, delta_sq_mean=0.25)
        times = np.linspace(0.0, 6.0, 13)
        oracle = haar_average_evolution(p, plus_state, times)
        mc = mc_average_evolution(central_spin_ensemble(p), plus_state, times, K=2000, rng=RngStream(17))
        assert np.all(np.abs(oracle.bloch() - mc.bloch()) <= 5.0 * mc.stderr + 1e-9)

    def test_master_equation_error_is_fourth_order(self, plus_state):
        check_times = np.array([0.0, 3.0])
        strengths = np.array([0.05, 0.1, 0.2])
        errors = []
        for s in strengths:
            p = CentralSpinParams(omega=1.0, delta_sq_mean=s**2)
            oracle = haar_average_evolution(p, plus_state, check_times)
            me = exact_solution(p, plus_state).trajectory(check_times)
            errors.append(np.linalg.norm(me.bloch()[1] - oracle.bloch()[1]))
        slope = np.polyfit(np.log(strengths**2), np.log(errors), 1)[0]
        assert abs(slope - 2.0) < 0.5

    def test_rejects_too_few_nodes(self, plus_state, central_params):
        with pytest.raises(InvalidConfigError):
            haar_average_evolution(central_params, plus_state, np.array([0.0, 1.0]), n_nodes=1)


class TestWeingarten:
    def test_pauli_example(self):
        """E[(n.sigma) sigma_z (n.sigma)] = -sigma_z/3 over the sphere."""
        closed = weingarten_haar_integral(SIGMA_Z, SIGMA_Z, SIGMA_Z)
        assert np.allclose(closed, -SIGMA_Z / 3.0)

    def test_identity_insertions(self):
        eye = np.eye(2)
        assert np.allclose(weingarten_haar_integral(eye, SIGMA_X, eye), SIGMA_X)

    @pytest.mark.parametrize("d", [2, 3])
    def test_matches_sampling(self, d):
        gen = RngStream(21, 0, (d,)).generator()
        x1, x2, x3 = (np.diag(gen.standard_normal(d)).astype(complex) for _ in range(3))
        x2 = x2 + np.triu(np.ones((d, d)), 1)
        closed = weingarten_haar_integral(x1, x2, x3)
        mean, stderr = mc_haar_integral(x1, x2, x3, 20_000, RngStream(22, 0, (d,)))
        assert np.all(np.abs(mean - closed) <= 5.0 * stderr + 1e-9)

    def test_one_dimensional(self):
        assert np.allclose(weingarten_haar_integral([[2.0]], [[3.0]], [[0.5]]), [[3.0]])

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionError):
            weingarten_haar_integral(np.eye(2), np.eye(3), np.eye(2))

    def test_sampling_needs_two_draws(self, rng):
        with pytest.raises(DomainError):
            mc_haar_integral(SIGMA_Z, SIGMA_Z, SIGMA_Z, 1, rng)


class TestNamedCases:
    @pytest.mark.parametrize("case", sorted(NAMED_CASES))
    def test_case_strengths(self, case):
        p, rho0 = named_case(case, omega=2.0)
        strength, _ = NAMED_CASES[case]
        assert p.delta_sq_mean == pytest.approx((strength * 2.0) ** 2)
        assert isinstance(rho0, DensityMatrix)

    def test_strength_override(self):
        p, _ = named_case("iii", delta_sq_mean=0.5)
        assert p.delta_sq_mean == 0.5

    def test_unknown_case(self):
        with pytest.raises(InvalidConfigError) as exc:
            named_case("iv")
        assert exc.value.key == "case"

    def test_time_grid(self):
        times = case_times(omega=2.0, n_points=7, omega_t_max=12.0)
        assert times[0] == 0.0
        assert times[-1] == pytest.approx(6.0)
        with pytest.raises(InvalidConfigError):
            case_times(omega=0.0)

    @pytest.mark.parametrize("case", sorted(NAMED_CASES))
    def test_scenario_agrees_with_monte_carlo(self, case):
        run = run_central_spin_scenario(case, K=300, rng=RngStream(3), n_points=61)
        assert run.me.source == "me"
        assert run.mc.source == "mc"
        assert np.array_equal(run.me.times, run.mc.times)
        assert agreement_ratio(run.me, run.mc) <= 1.0

    @pytest.mark.parametrize("case", sorted(NAMED_CASES))
    def test_gaussian_strengths_match_fixed(self, case):
        """Equal second moments: both strength distributions track the same master equation."""
        fixed = run_central_spin_scenario(case, K=300, rng=RngStream(11), n_points=61)
        gaussian = run_central_spin_scenario(case, K=300, rng=RngStream(11), n_points=61, delta_dist="gaussian")
        assert agreement_ratio(fixed.me, gaussian.mc) <= 1.0
        assert agreement_ratio(fixed.mc, gaussian.mc) <= 1.0
        assert not np.array_equal(fixed.mc.states, gaussian.mc.states)

    def test_agreement_needs_shared_grid(self):
        p, rho0 = named_case("i")
        sol = exact_solution(p, rho0)
        assert agreement_ratio(sol.trajectory(case_times(n_points=11)), sol.trajectory(case_times(n_points=11))) == 0.0
        with pytest.raises(InvalidConfigError):
            agreement_ratio(sol.trajectory(case_times(n_points=11)), sol.trajectory(case_times(n_points=21)))

    def test_scenario_is_reproducible(self):
        a = run_central_spin_scenario("i", K=20, rng=RngStream(5), n_points=11)
        b = run_central_spin_scenario("i", K=20, rng=RngStream(5), n_points=11)
        assert np.array_equal(a.mc.states, b.mc.states)


class TestCaseFeatures:
    @staticmethod
    def _me(case):
        p, rho0 = named_case(case)
        return exact_solution(p, rho0).trajectory(case_times())

    def test_purity_dips_at_quarter_periods(self):
        me = self._me("iii")
        dips = local_extrema(me.times, me.purity(), kind="min")
        assert dips.shape == (4,)
        assert np.all(quarter_period_offset(1.0, dips) <= 0.1)
        assert case_feature("iii", me) <= CASE_FEATURES["iii"][1]

    def test_weak_disorder_purity_is_monotone(self):
        me = self._me("i")
        purity = me.purity()
        assert case_feature("i", me) <= CASE_FEATURES["i"][1]
        assert purity[-1] < purity[0] - 0.05

    def test_a_z_oscillates(self):
        me = self._me("ii")
        a_z = me.bloch()[:, 2]
        peaks = local_extrema(me.times, a_z, kind="max")
        assert peaks.shape == (4,)
        assert case_feature("ii", me) <= CASE_FEATURES["ii"][1]
        assert a_z.max() > a_z[0]

    def test_features_tell_cases_apart(self):
        assert case_feature("iii", self._me("i")) == float("inf")
        assert case_feature("i", self._me("iii")) > CASE_FEATURES["i"][1]

    def test_local_extrema(self):
        times = np.linspace(0.0, 2.0 * np.pi, 201)
        assert local_extrema(times, np.sin(times), kind="max") == pytest.approx(np.array([np.pi / 2]))
        assert local_extrema(times, np.sin(times), kind="min") == pytest.approx(np.array([1.5 * np.pi]))
        with pytest.raises(InvalidConfigError):
            local_extrema(times, np.sin(times), kind="saddle")

    def test_quarter_period_offset(self):
        offsets = quarter_period_offset(2.0, np.array([np.pi / 4, np.pi / 2, 3 * np.pi / 4]))
        assert offsets == pytest.approx(np.array([0.0, np.pi / 2, 0.0]), abs=1e-12)

    def test_unknown_case(self):
        with pytest.raises(InvalidConfigError):
            case_feature("iv", self._me("i"))

"""Tests for the disorder correlator, the impact kernels and the characteristic-function solution."""

import numpy as np
import pytest
from scipy.integrate import simpson

from ddqe.config import CharacteristicGridSpec
from ddqe.dirac import (
    CorrelatorSpec,
    DisorderKernels,
    backscattered_weight,
    band_weights,
    characteristic_purity,
    correlation,
    disorder_kernels,
    evolve_characteristic,
    g_of_q,
    gaussian_characteristic,
    mean_position,
    mean_position_from_kernels,
    momentum_distribution,
    purity_plateau,
    zitterbewegung,
)
from ddqe.exceptions import DomainError, InvalidConfigError

GRID = CharacteristicGridSpec(n_s=128, n_q=128)


@pytest.fixture
def packet():
    return gaussian_characteristic(2.0, 2.0, GRID)


@pytest.fixture
def kernels(correlator, packet):
    return disorder_kernels(correlator, 2.0, 5.0, s_max=float(np.max(np.abs(packet.s_grid))))


class TestCorrelator:
    def test_g_integrates_to_c0(self, correlator):
        q = np.linspace(-correlator.q_cutoff, correlator.q_cutoff, 4001)
        assert simpson(g_of_q(correlator, q), x=q) == pytest.approx(correlator.c0, rel=1e-6)

    @pytest.mark.parametrize("x", [0.0, 0.4, 1.3])
    def test_correlation_is_fourier_pair(self, correlator, x):
        q = np.linspace(-correlator.q_cutoff, correlator.q_cutoff, 4001)
        transform = simpson(np.cos(q * x) * g_of_q(correlator, q), x=q)
        assert transform == pytest.approx(correlation(correlator, x), abs=1e-10)

    def test_gaussian_correlation(self, correlator):
        assert correlation(correlator, 0.0) == pytest.approx(0.04)
        assert correlation(correlator, 1.0) == pytest.approx(0.04 * np.exp(-1.0))

    def test_table_form_reproduces_gaussian(self, correlator):
        q = np.linspace(0.0, correlator.q_cutoff, 2001)
        table = CorrelatorSpec.from_table(q, g_of_q(correlator, q), ell=1.0)
        assert table.c0 == pytest.approx(0.04, rel=1e-6)
        assert g_of_q(table, -1.5) == pytest.approx(g_of_q(correlator, 1.5), rel=1e-4)
        assert correlation(table, 0.5) == pytest.approx(correlation(correlator, 0.5), rel=1e-4)
        assert g_of_q(table, 100.0) == 0.0

    def test_table_validation(self):
        with pytest.raises(InvalidConfigError) as exc:
            CorrelatorSpec.from_table([0.5, 1.0, 2.0], [1.0, 0.5, 0.1], ell=1.0)
        assert exc.value.key == "table_q"
        with pytest.raises(DomainError):
            CorrelatorSpec.from_table([0.0, 1.0, 2.0], [1.0, -0.5, 0.1], ell=1.0)

    @pytest.mark.parametrize(
        "kwargs,key",
        [
            ({"c0": -0.1, "ell": 1.0}, "c0"),
            ({"c0": 0.1, "ell": 0.0}, "ell"),
            ({"c0": 0.1, "ell": 1.0, "form": "lorentzian"}, "form"),
            ({"c0": 0.1, "ell": 1.0, "h_bar": -1.0}, "h_bar"),
            ({"c0": 0.1, "ell": 1.0, "v": 0.0}, "v"),
        ],
    )
    def test_invalid_spec(self, kwargs, key):
        with pytest.raises(InvalidConfigError) as exc:
            CorrelatorSpec(**kwargs)
        assert exc.value.key == key


class TestKernels:
    def test_vanish_at_zero_time(self, kernels):
        fg, fu = kernels.evaluate([0.0, 1.0], [0.0, 0.5, 1.0], 0.0)
        assert fg.shape == (2, 3)
        assert not fg.any() and not fu.any()

    def test_parity_in_q(self, kernels):
        s = np.linspace(-3.0, 3.0, 5)
        q = np.linspace(0.1, 2.0, 7)
        fg_pos, fu_pos = kernels.evaluate(s, q, 3.0)
        fg_neg, fu_neg = kernels.evaluate(s, -q, 3.0)
        scale = np.max(np.abs(fg_pos))
        assert np.max(np.abs(fg_pos - fg_neg)) <= 1e-12 * scale
        assert np.max(np.abs(fu_pos + fu_neg)) <= 1e-12 * scale

    def test_reflection_is_conjugation(self, kernels):
        s = np.array([-1.5, 0.7])
        q = np.array([-0.4, 0.9])
        fg, _ = kernels.evaluate(s, q, 2.0)
        fg_ref, _ = kernels.evaluate(-s, -q, 2.0)
        assert np.allclose(fg_ref, np.conj(fg), atol=1e-14)

    def test_short_time_quadratic(self, correlator):
        """F^(g)_t(0, 0) -> C0 t^2/h^2 for v t (2 p0 + q) << h."""
        kern = disorder_kernels(correlator, 2.0, 0.01)
        assert kern.f_g_origin([0.01])[0] == pytest.approx(correlator.c0 * 1e-4, rel=1e-3)

    def test_origin_kernel_is_positive(self, kernels):
        values = kernels.f_g_origin(np.linspace(0.0, 5.0, 6))
        assert values.dtype == float
        assert values[0] == 0.0
        assert np.all(values[1:] > 0)

    def test_large_time_closed_form(self, correlator):
        kern = disorder_kernels(correlator, 2.0, 10.0, mode="large_time")
        expected = 2.0 * np.pi * 10.0 * g_of_q(correlator, 4.0)
        assert kern.f_g_origin([10.0])[0] == pytest.approx(expected)
        assert not kern.f_u([0.3], [0.2], 10.0).any()

    def test_exact_approaches_large_time(self):
        spec = CorrelatorSpec(c0=0.01, ell=1.0)
        exact = disorder_kernels(spec, 1.0, 50.0, s_max=1.0).f_g_origin([50.0])[0]
        large = disorder_kernels(spec, 1.0, 50.0, mode="large_time").f_g_origin([50.0])[0]
        assert exact / large == pytest.approx(1.0, rel=0.05)

    def test_time_outside_range(self, kernels):
        with pytest.raises(DomainError):
            kernels.evaluate([0.0], [0.0], 6.0)

    def test_invalid_mode_and_momentum(self, correlator):
        with pytest.raises(InvalidConfigError) as exc:
            DisorderKernels(correlator, 2.0, 1.0, mode="asymptotic")
        assert exc.value.key == "mode"
        with pytest.raises(DomainError):
            DisorderKernels(correlator, 0.0, 1.0)


class TestCharacteristic:
    def test_initial_normalization_and_purity(self, packet):
        assert packet.norm() == pytest.approx(1.0)
        assert packet.hermiticity_drift() < 1e-12
        assert characteristic_purity(packet) == pytest.approx(1.0, abs=1e-8)
        assert band_weights(packet) == (1.0, 0.0)

    def test_gaussian_momentum_distribution(self, packet):
        p, p_plus, p_minus = momentum_distribution(packet)
        expected = np.sqrt(2.0 / np.pi) * 2.0 * np.exp(-2.0 * 4.0 * (p - 2.0) ** 2)
        assert np.max(np.abs(p_plus - expected)) < 1e-8
        assert not p_minus.any()
        assert np.sum(p_plus) * (p[1] - p[0]) == pytest.approx(1.0, abs=1e-8)

    def test_lower_band_packet(self):
        chi = gaussian_characteristic(2.0, 2.0, GRID, band="-")
        assert band_weights(chi) == (0.0, 1.0)

    @pytest.mark.parametrize(
        "kwargs,key",
        [
            ({"sigma": 0.0, "p0": 1.0}, "sigma"),
            ({"sigma": 2.0, "p0": 1.0, "band": "up"}, "band"),
            ({"sigma": 2.0, "p0": 20.0}, "n_s"),
        ],
    )
    def test_invalid_packet(self, kwargs, key):
        with pytest.raises(InvalidConfigError) as exc:
            gaussian_characteristic(grid=GRID, **kwargs)
        assert exc.value.key == key

    def test_shape_mismatch(self, packet):
        with pytest.raises(InvalidConfigError) as exc:
            type(packet)(packet.s_grid, packet.q_grid, packet.chi_plus, packet.chi_minus[:-1], p0=2.0)
        assert exc.value.key == "chi"

    def test_free_evolution_translates(self, packet):
        free = disorder_kernels(CorrelatorSpec(c0=0.0, ell=1.0), 2.0, 5.0)
        chi = evolve_characteristic(packet, free, 5.0)
        moved = gaussian_characteristic(2.0, 2.0, GRID, x0=5.0)
        assert np.allclose(chi.chi_plus, moved.chi_plus, atol=1e-12)
        assert backscattered_weight(chi) == pytest.approx(0.0, abs=1e-10)

    def test_norm_and_hermiticity_preserved(self, packet, kernels):
        chi = evolve_characteristic(packet, kernels, 5.0)
        assert abs(chi.norm() - 1.0) < 1e-10
        assert chi.hermiticity_drift() < 1e-10
        assert chi.t == 5.0

    def test_right_mover_weight(self, packet, kernels):
        """The up-band weight is (1 + exp(-2 F^(g)_t(0, 0)))/2."""
        f = kernels.f_g_origin([4.0])[0]
        up, down = band_weights(evolve_characteristic(packet, kernels, 4.0))
        assert up == pytest.approx(0.5 * (1.0 + np.exp(-2.0 * f)), abs=1e-12)
        assert down == pytest.approx(0.5 * (1.0 - np.exp(-2.0 * f)), abs=1e-12)

    def test_disorder_reduces_purity(self, packet, kernels):
        purity = characteristic_purity(evolve_characteristic(packet, kernels, 5.0))
        assert 0.9 < purity < 1.0 - 1e-6

    def test_backscatter_bounded_by_lower_band(self, packet, kernels):
        chi = evolve_characteristic(packet, kernels, 5.0)
        weight = backscattered_weight(chi)
        assert 0.0 < weight <= band_weights(chi)[1] + 1e-10

    def test_requires_initial_state(self, packet, kernels):
        chi = evolve_characteristic(packet, kernels, 1.0)
        with pytest.raises(DomainError):
            evolve_characteristic(chi, kernels, 2.0)


class TestClosedForms:
    def test_reference_values(self, correlator):
        omega, amplitude, drift = zitterbewegung(correlator, 2.0)
        assert omega == pytest.approx(4.0)
        assert amplitude == pytest.approx(0.0025)
        assert drift == pytest.approx(0.99)

    def test_mean_position(self, correlator):
        t = np.array([0.0, 1.0, 2.5])
        expected = 0.3 + 0.99 * t + 0.0025 * np.sin(4.0 * t)
        assert np.allclose(mean_position(correlator, 2.0, t, x0=0.3), expected)

    def test_clean_packet_moves_at_v(self):
        assert mean_position(CorrelatorSpec(c0=0.0, ell=1.0), 1.0, 3.0) == pytest.approx(3.0)

    def test_kernel_mean_position_without_disorder(self):
        kern = disorder_kernels(CorrelatorSpec(c0=0.0, ell=1.0), 2.0, 4.0)
        times = np.linspace(0.0, 4.0, 21)
        assert np.allclose(mean_position_from_kernels(kern, times, x0=1.0), 1.0 + times)

    def test_kernel_mean_position_short_time(self, correlator):
        """Velocity v exp(-2 C0 t^2) integrates to t - 2 C0 t^3/3 at short times."""
        kern = disorder_kernels(correlator, 2.0, 0.1)
        times = np.linspace(0.0, 0.1, 11)
        expected = times - 2.0 * correlator.c0 * times**3 / 3.0
        assert np.allclose(mean_position_from_kernels(kern, times), expected, atol=1e-6)

    def test_kernel_mean_position_needs_grid(self, kernels):
        with pytest.raises(InvalidConfigError) as exc:
            mean_position_from_kernels(kernels, np.array([0.0, 1.0]))
        assert exc.value.key == "times"

    def test_purity_plateau_limits(self, correlator):
        assert purity_plateau(correlator, 2.0, 0.0) == pytest.approx(1.0)
        assert purity_plateau(correlator, 2.0, 1e6) == pytest.approx(1.0 - 0.04 / 8.0, rel=1e-6)
        with pytest.raises(DomainError):
            purity_plateau(correlator, 0.0, 1.0)
        with pytest.raises(DomainError):
            mean_position(correlator, -1.0, 1.0)

"""Invariant suites run by ``ddqe validate``.

Each suite checks one group of invariants and records named checks with the measured
value and its tolerance. ``quick`` shrinks sample counts and grids.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass

import numpy as np
from scipy.integrate import simpson

from ..centralspin import (
    CentralSpinParams,
    central_spin_ensemble,
    exact_solution,
    haar_average_evolution,
    mc_haar_integral,
    run_central_spin_scenario,
    weingarten_haar_integral,
)
from ..centralspin.scenario import (
    CASE_FEATURES,
    NAMED_CASES,
    agreement_ratio,
    case_feature,
    case_times,
    named_case,
)
from ..config import CharacteristicGridSpec, DiracGridSpec, IntegratorSpec
from ..dirac import (
    CorrelatorSpec,
    backscatter_rate,
    backscattered_weight,
    disorder_kernels,
    evolve_characteristic,
    fit_backscatter_rate,
    g_of_q,
    gaussian_characteristic,
    gaussian_grid_state,
    grid_evolve,
    momentum_distribution,
    run_grid_ensemble,
    sample_mass_field,
)
from ..dressed import build_lindblad, build_redfield, build_short_time, integrate, kernel_grid
from ..ensemble import ScalarDephasingEnsemble, dephasing_exact_offdiagonal, random_discrete_ensemble
from ..logging import get_logger
from ..qcore.pauli import KET_DOWN, KET_UP
from ..qcore.random import RngStream, haar_unitary
from ..qcore.states import pure_state

logger = get_logger(__name__)

BACKSCATTER_MOMENTA = (1.0, 2.0)


@dataclass
class CheckResult:
    suite: str
    check: str
    value: float
    tolerance: float
    passed: bool


class ValidationSuite(ABC):
    """Base class for invariant suites in the validation pipeline."""

    def __init__(self, name: str):
        self.name = name
        self.quick = False
        self.seed = 0
        self._results: list[CheckResult] = []
        self._initialized = False

    def initialize(self, quick: bool = False, seed: int = 0) -> None:
        self.quick = quick
        self.seed = seed
        self._results = []
        self._initialized = True

    @abstractmethod
    def run(self) -> None:
        pass

    def record(self, check: str, value: float, tolerance: float, passed: bool | None = None) -> None:
        """Record a check; by default it passes when ``value <= tolerance``."""
        value = float(value)
        ok = bool(value <= tolerance) if passed is None else bool(passed)
        self._results.append(CheckResult(self.name, check, value, float(tolerance), ok))
        if not ok:
            logger.warning("check failed", extra={"suite": self.name, "check": check, "value": value})

    def get_results(self) -> list[CheckResult]:
        return list(self._results)

    def reset(self) -> None:
        self._results = []
        self._initialized = False

    @property
    def is_initialized(self) -> bool:
        return self._initialized


class RepresentationSuite(ValidationSuite):
    """Redfield and Lindblad generators coincide; the short-time form agrees to O(t^2)."""

    def __init__(self):
        super().__init__("representation")

    def run(self) -> None:
        dt, t_max = 0.02, 2.0
        grid = kernel_grid(t_max, dt)
        for d in (2, 3):
            ens = random_discrete_ensemble(d, 4, RngStream(self.seed, 7, (d,)))
            redfield = build_redfield(ens, grid)
            lindblad = build_lindblad(ens, grid)
            times = np.linspace(0.0, t_max, 8 if self.quick else 20)
            deviation = max(
                float(np.max(np.abs(redfield.superoperator(t) - lindblad.superoperator(t)))) for t in times
            )
            self.record(f"redfield_vs_lindblad_d{d}", deviation, 1e-10)

        ens = random_discrete_ensemble(2, 4, RngStream(self.seed, 7, (2,)))
        redfield = build_redfield(ens, kernel_grid(0.1, 0.001))
        short = build_short_time(ens)

        def relative(t: float) -> float:
            exact = redfield.dissipator_superoperator(t)
            return float(np.linalg.norm(short.dissipator_superoperator(t) - exact) / np.linalg.norm(exact))

        slope = np.log2(relative(0.04) / relative(0.02))
        self.record("short_time_order", abs(slope - 2.0), 0.5)


class DephasingSuite(ValidationSuite):
    """Commuting Gaussian dephasing is reproduced exactly by the dressed equation."""

    def __init__(self):
        super().__init__("dephasing")

    def run(self) -> None:
        s, dt = 0.5, 0.01 if self.quick else 0.005
        t_max = 1.5 / s
        ens = ScalarDephasingEnsemble(omega=1.0, s=s)
        gen = build_lindblad(ens, kernel_grid(t_max, dt), dt=dt)
        rho0 = pure_state((KET_UP + KET_DOWN) / np.sqrt(2.0))
        rec = integrate(gen, rho0, IntegratorSpec(dt, t_max, guard={"enabled": False}))
        expected = np.abs(dephasing_exact_offdiagonal(1.0, s, rec.times))
        measured = np.abs(rec.states[:, 0, 1]) / abs(rho0.matrix[0, 1])
        self.record("offdiagonal_relative_error", np.max(np.abs(measured / expected - 1.0)), 1e-6)


class CentralSpinSuite(ValidationSuite):
    """Integrated master equation against the closed form, the quadrature oracle and Monte Carlo."""

    def __init__(self):
        super().__init__("central_spin")

    def run(self) -> None:
        dt, t_max = 0.01, 10.0
        strengths = (0.2,) if self.quick else (0.05, 0.1, 0.2)
        rho0 = pure_state((KET_UP + KET_DOWN) / np.sqrt(2.0))
        for strength in strengths:
            p = CentralSpinParams(omega=1.0, delta_sq_mean=strength**2)
            gen = build_lindblad(central_spin_ensemble(p), kernel_grid(t_max, dt), dt=dt)
            rec = integrate(gen, rho0, IntegratorSpec(dt, t_max, guard={"enabled": False}))
            exact = exact_solution(p, rho0).density(rec.times)
            self.record(f"closed_form_s{strength}", np.max(np.abs(rec.states - exact)), 1e-6)
            self.record(f"trace_drift_s{strength}", rec.trace_drift(), 1e-10)
            self.record(f"hermiticity_drift_s{strength}", rec.hermiticity_drift(), 1e-10)
            self.record(f"min_eigenvalue_s{strength}", -rec.min_eigenvalue(), 1e-8)

        # fourth-order error of the second-order equation
        check_times = np.array([0.0, 3.0])
        errors = []
        for strength in (0.05, 0.1, 0.2):
            p = CentralSpinParams(omega=1.0, delta_sq_mean=strength**2)
            oracle = haar_average_evolution(p, rho0, check_times)
            me = exact_solution(p, rho0).trajectory(check_times)
            errors.append(np.linalg.norm(me.bloch()[1] - oracle.bloch()[1]))
        slope = np.polyfit(np.log([0.05**2, 0.1**2, 0.2**2]), np.log(errors), 1)[0]
        self.record("error_order_slope", abs(slope - 2.0), 0.5)

        for case, (feature, tolerance) in CASE_FEATURES.items():
            p, rho_case = named_case(case)
            me = exact_solution(p, rho_case).trajectory(case_times())
            self.record(f"feature_{case}_{feature}", case_feature(case, me), tolerance)

        k = 200 if self.quick else 1000
        for case in NAMED_CASES if not self.quick else ("iii",):
            run = run_central_spin_scenario(case, K=k, rng=RngStream(self.seed, 3))
            self.record(f"mc_agreement_{case}", agreement_ratio(run.me, run.mc), 1.0)
            gaussian = run_central_spin_scenario(case, K=k, rng=RngStream(self.seed, 3), delta_dist="gaussian")
            self.record(f"gaussian_delta_mc_agreement_{case}", agreement_ratio(run.me, gaussian.mc), 1.0)
            self.record(f"delta_dist_gap_{case}", agreement_ratio(run.mc, gaussian.mc), 1.0)


class WeingartenSuite(ValidationSuite):
    """Closed-form Haar integral against Haar sampling."""

    def __init__(self):
        super().__init__("weingarten")

    def run(self) -> None:
        gen = RngStream(self.seed, 11).generator()
        triples = 3 if self.quick else 10
        samples = 20_000 if self.quick else 100_000
        worst = 0.0
        for k in range(triples):
            x1, x2, x3 = (haar_unitary(2, gen) @ np.diag(gen.standard_normal(2)) for _ in range(3))
            closed = weingarten_haar_integral(x1, x2, x3)
            mean, stderr = mc_haar_integral(x1, x2, x3, samples, RngStream(self.seed, 12, (k,)))
            worst = max(worst, float(np.max(np.abs(mean - closed) / (4.0 * stderr + 1e-12))))
        self.record("closed_vs_sampled", worst, 1.0)


class DiracSuite(ValidationSuite):
    """Characteristic-function invariants and the split-step grid oracle."""

    def __init__(self):
        super().__init__("dirac")

    def run(self) -> None:
        spec = CorrelatorSpec(c0=0.04, ell=1.0)
        q = np.linspace(-spec.q_cutoff, spec.q_cutoff, 4001)
        self.record("g_normalization", abs(simpson(g_of_q(spec, q), x=q) / spec.c0 - 1.0), 1e-6)

        p0, sigma = 2.0, 2.0
        chi0 = gaussian_characteristic(sigma, p0, CharacteristicGridSpec(n_s=128, n_q=128))
        s_max = float(np.max(np.abs(chi0.s_grid)))
        kernels = disorder_kernels(spec, p0, 5.0, s_max=s_max)
        qs = np.linspace(0.1, 2.0, 7)
        ss = np.linspace(-3.0, 3.0, 5)
        fg_pos, fu_pos = kernels.evaluate(ss, qs, 3.0)
        fg_neg, fu_neg = kernels.evaluate(ss, -qs, 3.0)
        scale = float(np.max(np.abs(fg_pos)))
        self.record("kernel_parity", float(np.max(np.abs(fg_pos - fg_neg)) + np.max(np.abs(fu_pos + fu_neg))), 1e-10 * scale)

        chi = evolve_characteristic(chi0, kernels, 5.0)
        self.record("chi_normalization", abs(chi.norm() - 1.0), 1e-10)
        p, p_plus, _ = momentum_distribution(chi0)
        expected = np.sqrt(2.0 / np.pi) * sigma * np.exp(-2.0 * sigma**2 * (p - p0) ** 2)
        self.record("gaussian_momentum_distribution", float(np.max(np.abs(p_plus - expected))), 1e-8)

        free = disorder_kernels(CorrelatorSpec(c0=0.0, ell=1.0), p0, 5.0, s_max=s_max)
        self.record("disorder_free_backscatter", abs(backscattered_weight(evolve_characteristic(chi0, free, 5.0))), 1e-10)

        long_spec = CorrelatorSpec(c0=0.01, ell=1.0)
        exact = disorder_kernels(long_spec, 1.0, 50.0, s_max=1.0).f_g_origin([50.0])[0]
        large = disorder_kernels(long_spec, 1.0, 50.0, mode="large_time").f_g_origin([50.0])[0]
        self.record("large_time_limit", abs(exact / large - 1.0), 0.05)

        grid = DiracGridSpec(length=64.0, n_points=256)
        state = gaussian_grid_state(grid, sigma, p0)
        times = np.array([0.0, 10.0])
        free_run = grid_evolve(state, None, 0.025, times)
        shifted = np.roll(np.abs(state.psi[0]) ** 2, int(round(10.0 / grid.dx)))
        self.record("free_translation", float(np.max(np.abs(np.abs(free_run.states[-1, 0]) ** 2 - shifted))), 1e-8)
        disordered = grid_evolve(state, spec, 0.025, times, RngStream(self.seed, 21))
        self.record("grid_norm", float(np.max(np.abs(disordered.norm() - 1.0))), 1e-10)

        n_fields = 500 if self.quick else 5000
        fields = np.array([sample_mass_field(spec, grid.x(), RngStream(self.seed, 22, (k,))) for k in range(n_fields)])
        site = fields[:, 0] ** 2
        self.record(
            "field_variance", abs(site.mean() - spec.c0) / (site.std(ddof=1) / np.sqrt(n_fields)), 4.0
        )

        if not self.quick:
            self._backscatter_slope()
            self._backscatter_momentum_dependence()

    def _backscatter_slope(self) -> None:
        spec = CorrelatorSpec(c0=0.005, ell=1.0)
        p0, sigma = 1.0, 4.0
        times = np.linspace(0.0, 30.0, 31)
        result = run_grid_ensemble(
            spec, DiracGridSpec(length=256.0, n_points=1024), sigma, p0, times, 1000,
            rng=RngStream(self.seed, 23), dt=0.05,
        )
        slope = fit_backscatter_rate(times, result.backscatter_weight)
        self.record("grid_backscatter_slope", abs(slope / backscatter_rate(spec, p0) - 1.0), 0.10)

    def _backscatter_momentum_dependence(self) -> None:
        """Rates at p0 ell/h = 1 and 2 must fall off like G(2 p0)."""
        spec = CorrelatorSpec(c0=0.01, ell=1.0)
        grid = DiracGridSpec(length=512.0, n_points=2048)
        times = np.linspace(0.0, 30.0, 31)
        rates = {}
        for p0 in BACKSCATTER_MOMENTA:
            result = run_grid_ensemble(
                spec, grid, 8.0, p0, times, 500, rng=RngStream(self.seed, 24, (int(p0),)), dt=0.04
            )
            rates[p0] = fit_backscatter_rate(times, result.backscatter_weight)
        lo, hi = BACKSCATTER_MOMENTA
        measured = np.log(rates[lo] / rates[hi])
        expected = np.log(backscatter_rate(spec, lo) / backscatter_rate(spec, hi))
        self.record("grid_backscatter_momentum_falloff", abs(measured / expected - 1.0), 0.10)


ALL_SUITES = (RepresentationSuite, DephasingSuite, CentralSpinSuite, WeingartenSuite, DiracSuite)


def default_suites() -> list[ValidationSuite]:
    return [suite() for suite in ALL_SUITES]

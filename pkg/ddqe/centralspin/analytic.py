"""Closed forms for the isotropically disordered central spin.

H = h omega sigma_z + (Delta/2) W sigma_z W^dag with Haar-random W and
E[Delta^2] = delta_sq_mean.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..ensemble.kinds import CentralSpinEnsemble
from ..exceptions import DimensionError, InvalidConfigError
from ..qcore.linalg import commutator, dagger, dissipator, propagators
from ..qcore.pauli import P_DOWN, P_UP, PAULIS, SIGMA_MINUS, SIGMA_PLUS, SIGMA_Z, expectation_components
from ..qcore.states import DensityMatrix, purity
from ..results import TrajectoryRecord

COHERENT_SHIFTS = ("derived", "published")
# below this |omega t| the phase term uses its Taylor series
SERIES_CUTOFF = 1e-4


def sinc(x: np.ndarray | float) -> np.ndarray | float:
    """Unnormalized sin(x)/x with sinc(0) = 1."""
    return np.sinc(np.asarray(x) / np.pi)


@dataclass
class CentralSpinParams:
    omega: float
    delta_sq_mean: float
    h_bar: float = 1.0
    coherent_shift: str = "derived"

    def __post_init__(self) -> None:
        if not np.isfinite(self.omega):
            raise InvalidConfigError("omega must be finite", key="omega")
        if self.delta_sq_mean < 0:
            raise InvalidConfigError("delta_sq_mean must be >= 0", key="delta_sq_mean")
        if not self.h_bar > 0:
            raise InvalidConfigError("h_bar must be positive", key="h_bar")
        if self.coherent_shift not in COHERENT_SHIFTS:
            raise InvalidConfigError(
                f"Unsupported coherent_shift={self.coherent_shift}", key="coherent_shift"
            )

    @property
    def strength(self) -> float:
        """Delta^2 / h^2, the disorder rate squared."""
        return self.delta_sq_mean / self.h_bar**2


def _shift_factor(p: CentralSpinParams) -> float:
    return 1.0 / 6.0 if p.coherent_shift == "derived" else -1.0 / 12.0


def h_eff_central(p: CentralSpinParams, t: float) -> np.ndarray:
    """h omega sigma_z (1 + c Delta^2 t^2 sinc^2(omega t)/h^2), c = 1/6 (derived) or -1/12."""
    factor = 1.0 + _shift_factor(p) * p.strength * t**2 * sinc(p.omega * t) ** 2
    return p.h_bar * p.omega * factor * SIGMA_Z


def short_time_h_eff_central(p: CentralSpinParams, t: float) -> np.ndarray:
    return p.h_bar * p.omega * (1.0 + p.strength * t**2 / 6.0) * SIGMA_Z


def dissipation_rate_central(p: CentralSpinParams, t: float | np.ndarray) -> float | np.ndarray:
    """Delta^2 t / 3h^2, the common prefactor of the projector and ladder dissipators."""
    return p.strength * np.asarray(t) / 3.0


def me_rhs_central(p: CentralSpinParams, t: float, rho: DensityMatrix | np.ndarray) -> np.ndarray:
    m = rho.matrix if isinstance(rho, DensityMatrix) else np.asarray(rho, dtype=complex)
    if m.shape != (2, 2):
        raise DimensionError(f"central spin needs d=2, got shape {m.shape}")
    coherent = (-1j / p.h_bar) * commutator(h_eff_central(p, t), m)
    projectors = dissipator(P_UP, m) + dissipator(P_DOWN, m)
    ladders = dissipator(SIGMA_PLUS, m) + dissipator(SIGMA_MINUS, m)
    return coherent + dissipation_rate_central(p, t) * (projectors + sinc(2 * p.omega * t) * ladders)


def accumulated_dissipation(p: CentralSpinParams, times: np.ndarray | float) -> np.ndarray | float:
    """int_0^t (Delta^2 t'/3h^2)(1 + sinc(2 omega t')) dt'."""
    t = np.asarray(times, dtype=float)
    return p.strength * t**2 * (1.0 + sinc(p.omega * t) ** 2) / 6.0


def _phase_integral(omega: float, t: np.ndarray) -> np.ndarray:
    """t (1 - sinc(2 omega t)) / omega, continuous through omega t = 0."""
    x = omega * t
    small = np.abs(x) < SERIES_CUTOFF
    safe_omega = omega if omega != 0 else 1.0
    exact = t * (1.0 - sinc(2 * x)) / safe_omega
    series = (2.0 / 3.0) * omega * t**3 * (1.0 - (2 * x) ** 2 / 20.0)
    return np.where(small, series, exact)


@dataclass
class CentralSpinSolution:
    params: CentralSpinParams
    rho_uu0: float
    rho_ud0: complex

    def rho_uu(self, t: np.ndarray | float) -> np.ndarray:
        p = self.params
        t = np.asarray(t, dtype=float)
        decay = np.exp(-p.strength * t**2 * sinc(p.omega * t) ** 2 / 3.0)
        return 0.5 + (self.rho_uu0 - 0.5) * decay

    def rho_ud(self, t: np.ndarray | float) -> np.ndarray:
        p = self.params
        t = np.asarray(t, dtype=float)
        if p.coherent_shift == "derived":
            shift = -p.strength * _phase_integral(p.omega, t) / 6.0
        else:
            shift = p.strength * _phase_integral(p.omega, t) / 12.0
        decay = np.exp(-accumulated_dissipation(p, t))
        return self.rho_ud0 * np.exp(-2j * p.omega * t + 1j * shift) * decay

    def density(self, times: np.ndarray) -> np.ndarray:
        times = np.atleast_1d(np.asarray(times, dtype=float))
        uu = self.rho_uu(times)
        ud = self.rho_ud(times)
        rho = np.empty((times.shape[0], 2, 2), dtype=complex)
        rho[:, 0, 0] = uu
        rho[:, 1, 1] = 1.0 - uu
        rho[:, 0, 1] = ud
        rho[:, 1, 0] = np.conj(ud)
        return rho

    def purity(self, times: np.ndarray) -> np.ndarray:
        return purity(self.density(times))

    def bloch(self, times: np.ndarray) -> np.ndarray:
        return expectation_components(self.density(times), np.array(PAULIS))

    def trajectory(self, times: np.ndarray, threshold: float | None = None) -> TrajectoryRecord:
        """Closed-form ME trajectory; ``threshold`` flags points past the validity window."""
        times = np.asarray(times, dtype=float)
        validity = np.ones(times.shape[0], dtype=int)
        breach = None
        if threshold is not None:
            past = accumulated_dissipation(self.params, times) > threshold
            validity[past] = 0
            if past.any():
                breach = float(times[np.argmax(past)])
        return TrajectoryRecord(
            times=times, states=self.density(times), source="me", validity=validity, breach_time=breach
        )


def exact_solution(p: CentralSpinParams, rho0: DensityMatrix) -> CentralSpinSolution:
    if rho0.dim != 2:
        raise DimensionError(f"central spin needs d=2, got d={rho0.dim}")
    return CentralSpinSolution(p, float(rho0.matrix[0, 0].real), complex(rho0.matrix[0, 1]))


def central_spin_ensemble(p: CentralSpinParams, delta_dist: str = "fixed") -> CentralSpinEnsemble:
    return CentralSpinEnsemble(p.omega, p.delta_sq_mean, p.h_bar, delta_dist=delta_dist)


def haar_average_evolution(
    p: CentralSpinParams, rho0: DensityMatrix, times: np.ndarray, n_nodes: int = 32
) -> TrajectoryRecord:
    """Disorder average for fixed |Delta| by quadrature over the axis n = W z on the sphere.

    Gauss-Legendre in cos(theta) and the trapezoidal rule in phi; converges spectrally, so it
    resolves the fourth-order master-equation error that Monte-Carlo noise hides.
    """
    if rho0.dim != 2:
        raise DimensionError(f"central spin needs d=2, got d={rho0.dim}")
    if n_nodes < 2:
        raise InvalidConfigError("n_nodes must be >= 2", key="n_nodes")
    times = np.asarray(times, dtype=float)
    delta = np.sqrt(p.delta_sq_mean)
    nodes, weights = np.polynomial.legendre.leggauss(n_nodes)
    phis = 2.0 * np.pi * np.arange(2 * n_nodes) / (2 * n_nodes)
    states = np.zeros((times.shape[0], 2, 2), dtype=complex)
    for u, wu in zip(nodes, weights):
        sin_theta = np.sqrt(1.0 - u * u)
        for phi in phis:
            axis = sin_theta * np.cos(phi) * PAULIS[0] + sin_theta * np.sin(phi) * PAULIS[1] + u * SIGMA_Z
            h = p.h_bar * p.omega * SIGMA_Z + 0.5 * delta * axis
            prop = propagators(h, times, p.h_bar)
            states += (0.5 * wu / phis.shape[0]) * (prop @ rho0.matrix @ dagger(prop))
    return TrajectoryRecord(times=times, states=states, source="exact")

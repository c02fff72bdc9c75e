"""Named central-spin cases i-iii on the omega t in [0, 12] grid.

``run_central_spin_scenario`` is the scenario entry point: for one named case it returns
the closed-form master-equation trajectory and the Monte-Carlo ensemble average on a
shared time grid. ``case_feature`` scores a trajectory against the case's qualitative
signature and ``agreement_ratio`` compares two trajectories within sampling error.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..config import MonteCarloSpec
from ..ensemble.montecarlo import mc_average_evolution
from ..exceptions import InvalidConfigError
from ..logging import get_logger
from ..qcore.pauli import KET_DOWN, KET_UP
from ..qcore.random import RngStream
from ..qcore.states import DensityMatrix, pure_state
from ..results import TrajectoryRecord
from .analytic import CentralSpinParams, central_spin_ensemble, exact_solution

logger = get_logger(__name__)

# disorder strength sqrt(delta_sq_mean) in units of h omega, and initial state
NAMED_CASES = {
    "i": (0.05, (KET_DOWN + KET_UP) / np.sqrt(2.0)),
    "ii": (0.1, np.cos(np.pi / 12) * KET_DOWN + np.sin(np.pi / 12) * KET_UP),
    "iii": (0.2, KET_DOWN),
}
OMEGA_T_MAX = 12.0
DEFAULT_POINTS = 600
# qualitative signature of each case: (name, tolerance)
CASE_FEATURES = {
    "i": ("purity_monotone", 1e-12),
    "ii": ("a_z_peaks_at_quarter_period", 0.1),
    "iii": ("purity_dips_at_quarter_period", 0.1),
}


def named_case(
    case: str,
    omega: float = 1.0,
    h_bar: float = 1.0,
    delta_sq_mean: float | None = None,
    **params,
) -> tuple[CentralSpinParams, DensityMatrix]:
    """Parameters and initial state of a named case; ``delta_sq_mean`` overrides the case strength."""
    if case not in NAMED_CASES:
        raise InvalidConfigError(f"Unknown case={case}; expected one of {list(NAMED_CASES)}", key="case")
    strength, psi0 = NAMED_CASES[case]
    if delta_sq_mean is None:
        delta_sq_mean = (strength * h_bar * omega) ** 2
    return CentralSpinParams(omega, delta_sq_mean, h_bar, **params), pure_state(psi0)


def case_times(omega: float = 1.0, n_points: int = DEFAULT_POINTS, omega_t_max: float = OMEGA_T_MAX) -> np.ndarray:
    if not omega > 0:
        raise InvalidConfigError("omega must be positive for the time grid", key="omega")
    return np.linspace(0.0, omega_t_max / omega, n_points)


@dataclass
class CentralSpinRun:
    case: str
    params: CentralSpinParams
    me: TrajectoryRecord
    mc: TrajectoryRecord


def run_central_spin_scenario(
    case: str,
    K: int = 1000,
    rng: RngStream | int = 0,
    omega: float = 1.0,
    h_bar: float = 1.0,
    delta_dist: str = "fixed",
    coherent_shift: str = "derived",
    n_points: int = DEFAULT_POINTS,
    omega_t_max: float = OMEGA_T_MAX,
    threshold: float = 0.5,
    mc_spec: MonteCarloSpec | None = None,
    delta_sq_mean: float | None = None,
) -> CentralSpinRun:
    """Closed-form master-equation trajectory and Monte-Carlo oracle on a shared grid."""
    params, rho0 = named_case(case, omega, h_bar, delta_sq_mean, coherent_shift=coherent_shift)
    times = case_times(omega, n_points, omega_t_max)
    logger.info(
        "central spin scenario",
        extra={"case": case, "K": K, "delta_sq_mean": params.delta_sq_mean, "delta_dist": delta_dist},
    )
    me = exact_solution(params, rho0).trajectory(times, threshold=threshold)
    ens = central_spin_ensemble(params, delta_dist)
    mc = mc_average_evolution(ens, rho0, times, K=K, rng=rng, spec=mc_spec)
    mc.validity = me.validity.copy()
    return CentralSpinRun(case=case, params=params, me=me, mc=mc)


def local_extrema(times: np.ndarray, values: np.ndarray, kind: str = "min") -> np.ndarray:
    """Times of interior grid points that are strict local minima (or maxima) of ``values``."""
    v = np.asarray(values, dtype=float)
    if kind == "max":
        v = -v
    elif kind != "min":
        raise InvalidConfigError(f"Unsupported kind={kind}", key="kind")
    inner = (v[1:-1] < v[:-2]) & (v[1:-1] < v[2:])
    return np.asarray(times, dtype=float)[1:-1][inner]


def quarter_period_offset(omega: float, times: np.ndarray) -> np.ndarray:
    """|omega t - (pi/2 + k pi)| for the nearest k."""
    phase = np.mod(omega * np.asarray(times, dtype=float) - 0.5 * np.pi, np.pi)
    return np.minimum(phase, np.pi - phase)


def case_feature(case: str, record: TrajectoryRecord, omega: float = 1.0) -> float:
    """Deviation of a trajectory from its case's signature; compare with ``CASE_FEATURES``.

    i: the purity never increases (largest upward step). ii: a_z peaks at omega t = pi/2 mod pi.
    iii: the purity dips at omega t = pi/2 mod pi. For ii and iii the value is the largest
    phase offset of an extremum, and inf when the trajectory has none.
    """
    if case not in CASE_FEATURES:
        raise InvalidConfigError(f"Unknown case={case}; expected one of {list(CASE_FEATURES)}", key="case")
    if case == "i":
        return float(max(np.max(np.diff(record.purity())), 0.0))
    if case == "ii":
        peaks = local_extrema(record.times, record.bloch()[:, 2], kind="max")
    else:
        peaks = local_extrema(record.times, record.purity(), kind="min")
    if peaks.size == 0:
        return float("inf")
    return float(np.max(quarter_period_offset(omega, peaks)))


def agreement_ratio(
    a: TrajectoryRecord, b: TrajectoryRecord, t_max: float = 6.0, floor: float = 1e-2
) -> float:
    """max |a - b| / max(4 stderr, floor) over Bloch components for t <= ``t_max``.

    Standard errors of both records are combined in quadrature; a value <= 1 means the
    trajectories agree within Monte-Carlo resolution.
    """
    if a.times.shape != b.times.shape or not np.allclose(a.times, b.times):
        raise InvalidConfigError("records must share a time grid", key="times")
    window = a.times <= t_max
    err_sq = np.zeros((len(a), 3))
    for rec in (a, b):
        if rec.has_stderr:
            err_sq = err_sq + rec.stderr**2
    bound = np.maximum(4.0 * np.sqrt(err_sq), floor)
    diff = np.abs(a.bloch() - b.bloch())
    return float(np.max((diff / bound)[window]))

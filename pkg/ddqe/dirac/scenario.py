from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..config import CharacteristicGridSpec, DiracGridSpec, MonteCarloSpec
from ..exceptions import InvalidConfigError
from ..logging import get_logger
from ..qcore.random import RngStream
from .characteristic import (
    backscattered_weight,
    characteristic_purity,
    evolve_characteristic,
    gaussian_characteristic,
    momentum_distribution,
)
from .correlator import CorrelatorSpec
from .grid import GridEnsembleResult, run_grid_ensemble
from .kernels import disorder_kernels
from .observables import mean_position, mean_position_from_kernels, purity_plateau

logger = get_logger(__name__)


@dataclass
class DiracRun:
    times: np.ndarray
    x_mean: np.ndarray
    x_mean_closed_form: np.ndarray
    purity: np.ndarray
    backscatter_weight: np.ndarray
    norm: np.ndarray
    plateau: float
    snapshots: dict[float, tuple[np.ndarray, np.ndarray, np.ndarray]] = field(default_factory=dict)
    grid: GridEnsembleResult | None = None


def run_dirac_scenario(
    p0: float = 2.0,
    c0: float = 0.04,
    ell: float = 1.0,
    sigma: float = 2.0,
    t_max: float = 20.0,
    n_times: int = 201,
    h_bar: float = 1.0,
    v: float = 1.0,
    x0: float = 0.0,
    kernel_mode: str = "exact",
    momentum_times: tuple[float, ...] | None = None,
    char_grid: CharacteristicGridSpec | None = None,
    grid_realizations: int = 0,
    grid_points: int = 4096,
    grid_dt: float = 0.02,
    rng: RngStream | int = 0,
    mc_spec: MonteCarloSpec | None = None,
) -> DiracRun:
    """Characteristic-function observables of a Gaussian right-mover, optionally with the grid oracle."""
    if n_times < 3:
        raise InvalidConfigError("n_times must be >= 3", key="n_times")
    if not t_max > 0:
        raise InvalidConfigError("t_max must be positive", key="t_max")
    spec = CorrelatorSpec(c0=c0, ell=ell, h_bar=h_bar, v=v)
    char_grid = char_grid or CharacteristicGridSpec(n_s=128, n_q=128)
    chi0 = gaussian_characteristic(sigma, p0, char_grid, band="+", x0=x0, h_bar=h_bar)
    s_max = float(np.max(np.abs(chi0.s_grid)))
    kernels = disorder_kernels(spec, p0, t_max, mode=kernel_mode, s_max=s_max)
    times = np.linspace(0.0, t_max, n_times)
    logger.info(
        "dirac scenario",
        extra={"p0": p0, "c0": c0, "ell": ell, "sigma": sigma, "mode": kernel_mode, "n_times": n_times},
    )

    purity = np.empty(n_times)
    backscatter = np.empty(n_times)
    norm = np.empty(n_times)
    for i, t in enumerate(times):
        chi = evolve_characteristic(chi0, kernels, t)
        purity[i] = characteristic_purity(chi)
        backscatter[i] = backscattered_weight(chi)
        norm[i] = chi.norm().real

    snapshots = {}
    for t in momentum_times if momentum_times is not None else (0.0, 0.5 * t_max, t_max):
        if t < 0 or t > t_max:
            raise InvalidConfigError(f"momentum time {t} outside [0, t_max]", key="momentum_times")
        snapshots[float(t)] = momentum_distribution(evolve_characteristic(chi0, kernels, t))

    grid_result = None
    if grid_realizations:
        grid = DiracGridSpec.for_packet(sigma, v, t_max, grid_points)
        grid_result = run_grid_ensemble(
            spec, grid, sigma, p0, times, grid_realizations, rng=rng, dt=grid_dt, x0=x0, mc_spec=mc_spec
        )

    return DiracRun(
        times=times,
        x_mean=mean_position_from_kernels(kernels, times, x0),
        x_mean_closed_form=np.asarray(mean_position(spec, p0, times, x0)),
        purity=purity,
        backscatter_weight=backscatter,
        norm=norm,
        plateau=purity_plateau(spec, p0, sigma),
        snapshots=snapshots,
        grid=grid_result,
    )

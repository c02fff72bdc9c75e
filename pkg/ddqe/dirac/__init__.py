from .characteristic import (
    CharacteristicSpinor,
    backscattered_weight,
    band_weights,
    characteristic_purity,
    evolve_characteristic,
    gaussian_characteristic,
    momentum_distribution,
)
from .correlator import CorrelatorSpec, correlation, g_of_q
from .grid import (
    GridEnsembleResult,
    GridState,
    GridTrajectory,
    ZitterbewegungFit,
    fit_backscatter_rate,
    fit_zitterbewegung,
    gaussian_grid_state,
    grid_backscattered_weight,
    grid_band_weights,
    grid_evolve,
    grid_mean_position,
    grid_norm,
    momentum_density,
    run_grid_ensemble,
    sample_mass_field,
)
from .kernels import DisorderKernels, disorder_kernels
from .observables import (
    backscatter_rate,
    mean_position,
    mean_position_from_kernels,
    purity_plateau,
    zitterbewegung,
)
from .scenario import DiracRun, run_dirac_scenario

__all__ = [
    "CharacteristicSpinor",
    "backscattered_weight",
    "band_weights",
    "characteristic_purity",
    "evolve_characteristic",
    "gaussian_characteristic",
    "momentum_distribution",
    "CorrelatorSpec",
    "correlation",
    "g_of_q",
    "GridEnsembleResult",
    "GridState",
    "GridTrajectory",
    "ZitterbewegungFit",
    "fit_backscatter_rate",
    "fit_zitterbewegung",
    "gaussian_grid_state",
    "grid_backscattered_weight",
    "grid_band_weights",
    "grid_evolve",
    "grid_mean_position",
    "grid_norm",
    "momentum_density",
    "run_grid_ensemble",
    "sample_mass_field",
    "DisorderKernels",
    "disorder_kernels",
    "backscatter_rate",
    "mean_position",
    "mean_position_from_kernels",
    "purity_plateau",
    "zitterbewegung",
    "DiracRun",
    "run_dirac_scenario",
]

from .base import HamiltonianEnsemble
from .executor import RealizationExecutor
from .kinds import (
    CentralSpinEnsemble,
    DiscreteEnsemble,
    SampledEnsemble,
    ScalarDephasingEnsemble,
    random_discrete_ensemble,
)
from .montecarlo import (
    dephasing_exact_offdiagonal,
    mc_average_evolution,
    mean_potential_check,
    sample_realization,
    second_moment,
)

__all__ = [
    "HamiltonianEnsemble",
    "RealizationExecutor",
    "CentralSpinEnsemble",
    "DiscreteEnsemble",
    "SampledEnsemble",
    "ScalarDephasingEnsemble",
    "random_discrete_ensemble",
    "dephasing_exact_offdiagonal",
    "mc_average_evolution",
    "mean_potential_check",
    "sample_realization",
    "second_moment",
]

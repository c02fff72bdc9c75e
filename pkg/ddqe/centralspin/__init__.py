from .analytic import (
    CentralSpinParams,
    CentralSpinSolution,
    accumulated_dissipation,
    central_spin_ensemble,
    exact_solution,
    h_eff_central,
    haar_average_evolution,
    me_rhs_central,
    short_time_h_eff_central,
    sinc,
)
from .scenario import (
    CASE_FEATURES,
    NAMED_CASES,
    CentralSpinRun,
    agreement_ratio,
    case_feature,
    case_times,
    local_extrema,
    named_case,
    quarter_period_offset,
    run_central_spin_scenario,
)
from .weingarten import mc_haar_integral, weingarten_haar_integral

__all__ = [
    "CentralSpinParams",
    "CentralSpinSolution",
    "accumulated_dissipation",
    "central_spin_ensemble",
    "exact_solution",
    "h_eff_central",
    "haar_average_evolution",
    "me_rhs_central",
    "short_time_h_eff_central",
    "sinc",
    "CASE_FEATURES",
    "NAMED_CASES",
    "CentralSpinRun",
    "agreement_ratio",
    "case_feature",
    "case_times",
    "local_extrema",
    "named_case",
    "quarter_period_offset",
    "run_central_spin_scenario",
    "mc_haar_integral",
    "weingarten_haar_integral",
]

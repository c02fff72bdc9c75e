from .config import (
    CentralSpinParameters,
    DiracParameters,
    RunConfig,
    ValidateParameters,
    load_config,
    parse_config,
    serialize_config,
)
from .runner import run_scenario, write_outputs

__all__ = [
    "CentralSpinParameters",
    "DiracParameters",
    "RunConfig",
    "ValidateParameters",
    "load_config",
    "parse_config",
    "serialize_config",
    "run_scenario",
    "write_outputs",
]

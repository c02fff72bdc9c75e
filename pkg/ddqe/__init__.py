"""Disorder-dressed quantum evolution: master equations for disorder-averaged dynamics."""

from .config import (
    CharacteristicGridSpec,
    DiracGridSpec,
    ExpectationSpec,
    IntegratorSpec,
    MonteCarloSpec,
)
from .exceptions import (
    DDQEError,
    DimensionError,
    DomainError,
    IntegrationError,
    InvalidConfigError,
    ValidityBreachError,
)
from .results import TrajectoryRecord

__version__ = "0.1.0"

__all__ = [
    "CharacteristicGridSpec",
    "DiracGridSpec",
    "ExpectationSpec",
    "IntegratorSpec",
    "MonteCarloSpec",
    "DDQEError",
    "DimensionError",
    "DomainError",
    "IntegrationError",
    "InvalidConfigError",
    "ValidityBreachError",
    "TrajectoryRecord",
    "__version__",
]

from .pipeline import ValidationPipeline
from .suites import (
    ALL_SUITES,
    CentralSpinSuite,
    CheckResult,
    DephasingSuite,
    DiracSuite,
    RepresentationSuite,
    ValidationSuite,
    WeingartenSuite,
    default_suites,
)

__all__ = [
    "ValidationPipeline",
    "ALL_SUITES",
    "CentralSpinSuite",
    "CheckResult",
    "DephasingSuite",
    "DiracSuite",
    "RepresentationSuite",
    "ValidationSuite",
    "WeingartenSuite",
    "default_suites",
]

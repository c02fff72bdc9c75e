from __future__ import annotations

import pandas as pd

from ..logging import get_logger
from ..reports.tables import CsvTable
from .suites import CheckResult, ValidationSuite, default_suites

logger = get_logger(__name__)


class ValidationPipeline:
    """Runs invariant suites in order and collects their checks into one table."""

    def __init__(self, suites: list[ValidationSuite] | None = None):
        self.suites = suites if suites is not None else default_suites()
        self._results: list[CheckResult] = []

    @property
    def suite_names(self) -> list[str]:
        return [suite.name for suite in self.suites]

    def add_suite(self, suite: ValidationSuite) -> None:
        self.suites.append(suite)

    def get_suite(self, name: str) -> ValidationSuite | None:
        return next((s for s in self.suites if s.name == name), None)

    def remove_suite(self, name: str) -> bool:
        suite = self.get_suite(name)
        if suite is None:
            return False
        self.suites.remove(suite)
        return True

    def run(self, quick: bool = False, seed: int = 0) -> list[CheckResult]:
        self._results = []
        for suite in self.suites:
            suite.initialize(quick=quick, seed=seed)
            logger.info("validation suite", extra={"suite": suite.name, "quick": quick})
            suite.run()
            self._results.extend(suite.get_results())
        return self.results()

    def results(self) -> list[CheckResult]:
        return list(self._results)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self._results)

    def table(self) -> CsvTable:
        frame = pd.DataFrame(
            {
                "suite": [r.suite for r in self._results],
                "check": [r.check for r in self._results],
                "value": [r.value for r in self._results],
                "tolerance": [r.tolerance for r in self._results],
                "passed": [int(r.passed) for r in self._results],
            }
        )
        return CsvTable("validate", frame)

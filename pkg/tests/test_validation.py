"""Tests for the invariant suites and the validation pipeline."""

import pytest

from ddqe.cli.runner import breached
from ddqe.validation import (
    CentralSpinSuite,
    DephasingSuite,
    RepresentationSuite,
    ValidationPipeline,
    ValidationSuite,
)


class FixedSuite(ValidationSuite):
    def __init__(self, name="fixed"):
        super().__init__(name)

    def run(self):
        self.record("small", 0.1, 1.0)
        self.record("large", 2.0, 1.0)
        self.record("forced", 5.0, 1.0, passed=True)


class TestValidationSuite:
    def test_record_default_comparison(self):
        suite = FixedSuite()
        suite.initialize(quick=True, seed=3)
        suite.run()
        passed = {r.check: r.passed for r in suite.get_results()}
        assert passed == {"small": True, "large": False, "forced": True}
        assert suite.seed == 3
        assert suite.quick

    def test_reset(self):
        suite = FixedSuite()
        suite.initialize()
        suite.run()
        assert suite.is_initialized
        suite.reset()
        assert not suite.is_initialized
        assert suite.get_results() == []

    @pytest.mark.parametrize("suite_cls", [RepresentationSuite, DephasingSuite])
    def test_quick_suites_pass(self, suite_cls):
        suite = suite_cls()
        suite.initialize(quick=True, seed=0)
        suite.run()
        results = suite.get_results()
        assert results
        assert all(r.passed for r in results), [r for r in results if not r.passed]

    @pytest.mark.slow
    def test_central_spin_records_case_signatures(self):
        suite = CentralSpinSuite()
        suite.initialize(quick=True, seed=0)
        suite.run()
        results = {r.check: r for r in suite.get_results()}
        for check in (
            "feature_i_purity_monotone",
            "feature_ii_a_z_peaks_at_quarter_period",
            "feature_iii_purity_dips_at_quarter_period",
            "gaussian_delta_mc_agreement_iii",
            "delta_dist_gap_iii",
        ):
            assert results[check].passed, results[check]


class TestValidationPipeline:
    def test_default_suites(self):
        pipeline = ValidationPipeline()
        assert pipeline.suite_names == ["representation", "dephasing", "central_spin", "weingarten", "dirac"]

    def test_suite_management(self):
        pipeline = ValidationPipeline([])
        pipeline.add_suite(FixedSuite("a"))
        pipeline.add_suite(FixedSuite("b"))
        assert pipeline.get_suite("a").name == "a"
        assert pipeline.get_suite("missing") is None
        assert pipeline.remove_suite("a")
        assert not pipeline.remove_suite("a")
        assert pipeline.suite_names == ["b"]

    def test_table(self):
        pipeline = ValidationPipeline([FixedSuite("a"), FixedSuite("b")])
        results = pipeline.run(quick=True, seed=1)
        assert len(results) == 6
        assert not pipeline.passed
        table = pipeline.table()
        assert table.columns == ["suite", "check", "value", "tolerance", "passed"]
        assert list(table.column("passed")) == [1, 0, 1, 1, 0, 1]
        assert list(table.column("suite")) == ["a"] * 3 + ["b"] * 3
        assert breached({"validate": table})

    def test_all_passing(self):
        class Passing(ValidationSuite):
            def __init__(self):
                super().__init__("passing")

            def run(self):
                self.record("ok", 0.0, 1.0)

        pipeline = ValidationPipeline([Passing()])
        pipeline.run()
        assert pipeline.passed
        assert not breached({"validate": pipeline.table()})

    def test_rerun_clears_results(self):
        pipeline = ValidationPipeline([FixedSuite()])
        pipeline.run()
        pipeline.run()
        assert len(pipeline.results()) == 3

    @pytest.mark.slow
    def test_quick_run_passes(self):
        pipeline = ValidationPipeline()
        pipeline.run(quick=True, seed=0)
        failed = [r for r in pipeline.results() if not r.passed]
        assert not failed, failed

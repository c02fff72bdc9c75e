"""Smoke tests: every subpackage imports and the CLI parser builds."""

import pytest


def test_package_imports():
    """Top-level package exposes its version and the run specs."""
    import ddqe

    assert ddqe.__version__ == "0.1.0"
    assert ddqe.IntegratorSpec is not None
    assert issubclass(ddqe.DomainError, ddqe.DDQEError)


@pytest.mark.parametrize(
    "module",
    [
        "ddqe.qcore",
        "ddqe.ensemble",
        "ddqe.dressed",
        "ddqe.centralspin",
        "ddqe.dirac",
        "ddqe.reports",
        "ddqe.validation",
        "ddqe.cli.main",
    ],
)
def test_subpackage_imports(module):
    """Each subpackage imports without side effects beyond logger setup."""
    import importlib

    mod = importlib.import_module(module)
    assert mod is not None


def test_cli_parser_builds():
    """The parser knows the run, validate and plot commands."""
    from ddqe.cli.main import build_parser

    parser = build_parser()
    args = parser.parse_args(["validate", "--quick", "--seed", "3"])
    assert args.command == "validate"
    assert args.quick is True
    assert args.seed == 3


def test_module_loggers_share_one_handler():
    """Module loggers are children of ``ddqe``, which carries the only handler."""
    import logging

    from ddqe.logging import get_logger

    first = get_logger("ddqe.dirac.grid")
    second = get_logger("ddqe.cli.runner")
    assert first.name == "ddqe.dirac.grid"
    assert second.name == "ddqe.cli.runner"
    assert first.parent is logging.getLogger("ddqe")
    assert len(logging.getLogger("ddqe").handlers) == 1
    assert not first.handlers


@pytest.mark.parametrize(
    "raw,level,rejected",
    [("debug", 10, None), (" Warning ", 30, None), ("", 20, None), ("loud", 20, "LOUD")],
)
def test_log_level_from_environment(monkeypatch, raw, level, rejected):
    from ddqe.logging import log_level

    monkeypatch.setenv("DDQE_LOG_LEVEL", raw)
    assert log_level() == (level, rejected)

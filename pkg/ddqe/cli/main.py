"""``ddqe`` command-line entry point.

Exit codes: 0 success, 1 configuration error, 2 numerical-validity breach or failed
validation, 3 internal error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from ..exceptions import IntegrationError, InvalidConfigError, ValidityBreachError
from ..logging import get_logger
from ..reports import CsvTable, emit_svg
from .config import RunConfig, load_config
from .runner import breached, run_scenario, write_outputs

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_BREACH = 2
EXIT_INTERNAL = 3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ddqe", description="Disorder-dressed quantum evolution toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="Run the scenario described by a TOML config")
    run.add_argument("config", type=Path, help="Path to the TOML run configuration")
    run.add_argument("--output-dir", type=Path, help="Override output_dir from the config")
    run.add_argument("--serial", action="store_true", help="Single worker, order-deterministic reductions")

    validate = sub.add_parser("validate", help="Run every invariant suite")
    validate.add_argument("--quick", action="store_true", help="Smaller samples and grids")
    validate.add_argument("--seed", type=int, default=0, help="Seed for the sampled checks (default: 0)")
    validate.add_argument("-o", "--output", type=Path, help="CSV output path (default: stdout)")

    plot = sub.add_parser("plot", help="Render CSV columns as an SVG line plot")
    plot.add_argument("table", type=Path, help="CSV table written by `ddqe run`")
    plot.add_argument("--x", default="t", help="x column (default: t)")
    plot.add_argument("--y", nargs="+", help="y columns (default: all but stderr/validity)")
    plot.add_argument("-o", "--output", type=Path, required=True, help="SVG output path")
    return parser


def _run(args: argparse.Namespace) -> int:
    cfg = load_config(args.config)
    tables = run_scenario(cfg, max_workers=1 if args.serial else None)
    for path in write_outputs(cfg, tables, args.output_dir):
        print(path)
    if breached(tables):
        message = f"scenario {cfg.scenario} left its validity window"
        if cfg.fail_on_breach:
            raise ValidityBreachError(message)
        logger.warning(message)
    return EXIT_OK


def _validate(args: argparse.Namespace) -> int:
    cfg = RunConfig(scenario="validate", seed=args.seed, validate={"quick": args.quick})
    tables = run_scenario(cfg, max_workers=1)
    table = tables["validate"]
    if args.output:
        table.write(args.output)
    else:
        sys.stdout.write(table.to_csv_text())
    return EXIT_BREACH if breached(tables) else EXIT_OK


def _plot(args: argparse.Namespace) -> int:
    table = CsvTable.read(args.table)
    emit_svg(table, args.x, args.y, args.output)
    print(args.output)
    return EXIT_OK


COMMANDS = {"run": _run, "validate": _validate, "plot": _plot}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except InvalidConfigError as exc:
        logger.error("configuration error", extra={"key": exc.key, "error": str(exc)})
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (IntegrationError, ValidityBreachError) as exc:
        logger.error("numerical validity breach", extra={"error": str(exc)})
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BREACH
    except Exception as exc:
        logger.exception("internal error")
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())

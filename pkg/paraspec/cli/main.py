"""paraspec command-line entry point."""

import argparse
import logging
import sys
from collections.abc import Callable, Sequence
from pathlib import Path

import orjson
from pydantic import ValidationError

from paraspec.base.exceptions import DomainError, NumericalError
from paraspec.cli import commands
from paraspec.cli.constants import Command, ExitCode, OutputFormat
from paraspec.cli.schemas import RunConfig

logger = logging.getLogger(__name__)

HANDLERS: dict[Command, Callable[[RunConfig, int | None], list[Path]]] = {
    Command.SPECTRUM: commands.cmd_spectrum,
    Command.SWEEP: commands.cmd_sweep,
    Command.QPT: commands.cmd_qpt,
    Command.RELAXATION: commands.cmd_relaxation,
    Command.CLASSIFY: commands.cmd_classify,
    Command.CONVERGE: commands.cmd_converge,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="paraspec", description="Liouvillian spectra of harmonic, Kerr and squeezed Kerr oscillators"
    )
    parser.add_argument("command", choices=[command.value for command in Command])
    parser.add_argument("--config", required=True, type=Path, help="JSON run configuration")
    parser.add_argument("--out", type=Path, help="output directory, overrides output.path")
    parser.add_argument("--workers", type=int, default=None, help="parallel tasks, defaults to the core count")
    parser.add_argument("--seed", type=int, default=None, help="reserved, no command is stochastic")
    parser.add_argument("--format", choices=[fmt.value for fmt in OutputFormat], help="overrides output.format")
    parser.add_argument("--log-level", default="WARNING", choices=["DEBUG", "INFO", "WARNING", "ERROR"])
    return parser


def load_config(args: argparse.Namespace) -> RunConfig:
    config = RunConfig.from_file(args.config)
    output = config.output
    if args.out is not None:
        output = output.model_copy(update={"path": str(args.out)})
    if args.format is not None:
        output = output.model_copy(update={"format": OutputFormat(args.format)})
    return config.model_copy(update={"output": output})


def _describe(error: ValidationError) -> str:
    return "; ".join(
        f"{'.'.join(str(part) for part in detail['loc']) or '<root>'}: {detail['msg']}" for detail in error.errors()
    )


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=args.log_level, format="%(asctime)s %(levelname)s %(name)s: %(message)s")

    try:
        config = load_config(args)
    except FileNotFoundError:
        print(f"config error: {args.config} not found", file=sys.stderr)  # noqa: T201
        return ExitCode.CONFIG_ERROR
    except orjson.JSONDecodeError as e:
        print(f"config error: {args.config} is not valid JSON: {e}", file=sys.stderr)  # noqa: T201
        return ExitCode.CONFIG_ERROR
    except ValidationError as e:
        print(f"config error: {_describe(e)}", file=sys.stderr)  # noqa: T201
        return ExitCode.CONFIG_ERROR

    try:
        files = HANDLERS[Command(args.command)](config, args.workers)
    except ValidationError as e:
        print(f"config error: {_describe(e)}", file=sys.stderr)  # noqa: T201
        return ExitCode.CONFIG_ERROR
    except DomainError as e:
        print(f"config error [{e.code.value}]: {e.error.message}", file=sys.stderr)  # noqa: T201
        return ExitCode.CONFIG_ERROR
    except NumericalError as e:
        print(f"numerical failure [{e.code.value}]: {e.error.message}", file=sys.stderr)  # noqa: T201
        return ExitCode.NUMERICAL_FAILURE

    for path in files:
        logger.info("Wrote %s", path)
    return ExitCode.SUCCESS


if __name__ == "__main__":
    sys.exit(main())

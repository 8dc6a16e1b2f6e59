"""
argparse entry point.

Exit codes: 0 on success, 1 when a verification fails, 2 on bad input.
"""
import argparse
import sys
from pathlib import Path
from typing import List, Optional

from pydantic import ValidationError

from app import logger
from app.cli.commands import ARGUMENTS, COMMAND_HELP, COMMANDS
from app.config.settings import settings
from app.core.exceptions import (
    ConfigurationError,
    DiagramError,
    ExportError,
    MatchingError,
    VerificationError,
)
from app.core.logging import setup_logging
from app.models.schemas import RunConfig
from app.services.export import ReportService

EXIT_OK = 0
EXIT_VERIFICATION = 1
EXIT_INPUT = 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="khovanov", description=settings.APP_NAME)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--jobs", type=int, default=settings.JOBS, help="worker processes")
    common.add_argument("--fixtures", type=Path, default=settings.FIXTURES_DIR, help="corpus directory")
    common.add_argument("--verify", action="store_true", default=settings.VERIFY, help="run the verification checks")
    common.add_argument("--degree", type=int, default=settings.HOCHSCHILD_DEGREE, help="Hochschild truncation k")
    common.add_argument("--output", type=Path, default=None, help="write the report here instead of stdout")
    common.add_argument("--format", dest="fmt", default="text", help="text, json or csv")
    common.add_argument("--ladybug-rule", default=settings.LADYBUG_RULE, help="right, left or alternating")
    common.add_argument("--quiet", action="store_true", help="only log warnings and errors")

    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in COMMAND_HELP.items():
        command = sub.add_parser(name, help=help_text, parents=[common])
        for argument in ARGUMENTS[name]:
            if argument.endswith("*"):
                command.add_argument("inputs", nargs="*", metavar=argument[:-1])
            else:
                command.add_argument(argument, metavar=argument)
    return parser


def _run_config(args: argparse.Namespace) -> RunConfig:
    names = [a for a in ARGUMENTS[args.command] if not a.endswith("*")]
    inputs = [str(getattr(args, a)) for a in names] if names else list(args.inputs)
    if args.ladybug_rule not in ("right", "left", "alternating"):
        raise ConfigurationError(f"Unknown ladybug rule: {args.ladybug_rule}")
    formats = ReportService.get_export_formats()
    if args.fmt not in formats:
        raise ConfigurationError(f"Unknown output format: {args.fmt} (choose from {', '.join(formats)})")
    return RunConfig(
        command=args.command,
        inputs=inputs,
        verify=args.verify,
        jobs=args.jobs,
        degree=args.degree,
        output=args.output,
        fmt=args.fmt,
        fixtures=args.fixtures,
        ladybug_rule=args.ladybug_rule,
    )


def main(argv: Optional[List[str]] = None) -> int:
    """
    Run one subcommand.

    Args:
        argv: Arguments without the program name (defaults to sys.argv[1:])

    Returns:
        The process exit code
    """
    args = build_parser().parse_args(argv)
    if args.quiet:
        setup_logging("WARNING")
    try:
        config = _run_config(args)
        result = COMMANDS[config.command](config)
        text = result.report.export(config.output, config.fmt)
    except (DiagramError, MatchingError, ConfigurationError, ValidationError, ExportError) as e:
        logger.error(f"Input error: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except VerificationError as e:
        logger.error(f"Verification failed: {e}")
        print(f"verification failed: {e}", file=sys.stderr)
        if e.report is not None:
            print("\n".join(e.report.counterexamples), file=sys.stderr)
        return EXIT_VERIFICATION
    if config.output is None:
        sys.stdout.write(text)
    if not result.ok:
        logger.warning(f"{config.command}: verification failed")
        return EXIT_VERIFICATION
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())

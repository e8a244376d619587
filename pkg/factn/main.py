"""
Command-line entry point
Lightweight application with all logic delegated to the command modules.
Exit codes: 0 all checks pass, 1 some check failed, 2 usage, IO or
validation error.
"""
import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional

from pydantic import ValidationError

from factn import __description__, __version__
from factn.commands import ROUTERS, Command, CommandContext
from factn.config import get_settings
from factn.exceptions import FactnError, _ReportError
from factn.schemas.report import Report
from factn.utils.logging import setup_logging
from factn.utils.seeding import inputs_digest

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_ERROR = 2

# options that name files or tune output; never part of the digest
_UNDIGESTED = {"input", "input_path", "backend", "out", "log_level", "command", "handler"}


# ============================================
# Parser
# ============================================

def _common_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("input_path", nargs="?", metavar="DOCUMENT", help="Input document (JSON)")
    common.add_argument("--input", help="Input document (JSON), same as the positional argument")
    common.add_argument("--seed", type=int, help="Seed for randomized commands")
    common.add_argument("--bound", type=int, help="Degree bound for witness and morphism searches")
    common.add_argument("--out", help="Write the report here instead of stdout")
    common.add_argument("--samples", type=int, help="Number of random samples")
    common.add_argument("--log-level", help="Override FACTN_LOG_LEVEL")
    names = common.add_argument_group("named inputs")
    for flag in ("x", "y", "f", "g", "h", "l", "p"):
        names.add_argument(f"--{flag}", metavar="NAME", help=f"Document entry used as {flag}")
    return common


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="factn", description=__description__)
    parser.add_argument("--version", action="version", version=f"factn {__version__}")
    subparsers = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")
    common = _common_parser()
    for router in ROUTERS:
        for command in router.commands:
            sub = subparsers.add_parser(command.name, help=command.help, description=command.help, parents=[common])
            if command.arguments is not None:
                command.arguments(sub)
            sub.set_defaults(handler=command)
    return parser


def command_table() -> List[Command]:
    return [command for router in ROUTERS for command in router.commands]


# ============================================
# Running
# ============================================

def _digest(ctx: CommandContext) -> str:
    options = {
        key: value for key, value in sorted(vars(ctx.args).items())
        if key not in _UNDIGESTED and value is not None
    }
    return inputs_digest({
        "document": ctx.inputs.get("document"),
        "backend": ctx.inputs.get("backend"),
        "command": ctx.args.command,
        "options": options,
    })


def _emit(report: Report, out: Optional[str]) -> None:
    text = report.to_json()
    if out:
        Path(out).write_text(text, encoding="utf-8")
        logger.info(f"💾 Report written to {out}")
    else:
        sys.stdout.write(text)


def run_command(argv: List[str]) -> int:
    """
    Parse argv, run one command and write its report

    Returns:
        Exit code
    """
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_ERROR

    try:
        settings = get_settings()
    except ValidationError as e:
        sys.stderr.write(f"factn: invalid configuration: {e.errors()[0]['loc'][0]}: {e.errors()[0]['msg']}\n")
        return EXIT_ERROR

    setup_logging(args.log_level or settings.LOG_LEVEL, settings.log_file_path, settings.LOG_FORMAT)
    if args.input and args.input_path and args.input != args.input_path:
        sys.stderr.write("factn: two different input documents given\n")
        return EXIT_ERROR
    args.input = args.input or args.input_path

    command: Command = args.handler
    ctx = CommandContext(args=args, settings=settings)
    logger.info(f"🚀 factn {command.name}")
    try:
        report = command.handler(ctx)
    except _ReportError as e:
        sys.stderr.write(f"factn: {e}\n")
        if e.report is not None:
            _emit(e.report, args.out)
        return EXIT_ERROR
    except (FactnError, OSError) as e:
        sys.stderr.write(f"factn: {e}\n")
        return EXIT_ERROR
    except Exception as e:
        logger.error(f"❌ Unexpected error in {command.name}: {type(e).__name__}: {e}")
        sys.stderr.write(f"factn: internal error: {e}\n")
        return EXIT_ERROR

    digest = _digest(ctx)
    report.checks = [c.model_copy(update={"inputs_digest": digest}) for c in report.checks]
    if command.randomized and report.seed is None:
        report.seed = args.seed
    try:
        _emit(report, args.out)
    except OSError as e:
        sys.stderr.write(f"factn: {e}\n")
        return EXIT_ERROR

    if report.ok:
        logger.info(f"✅ {command.name}: {report.summary['pass']} checks pass")
        return EXIT_OK
    logger.warning(f"⚠️ {command.name}: {report.describe_failure()}")
    return EXIT_FAILED


def main() -> None:
    sys.exit(run_command(sys.argv[1:]))


if __name__ == "__main__":
    main()

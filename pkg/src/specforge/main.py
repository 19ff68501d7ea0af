from dotenv import load_dotenv

# Load environment variables FIRST before any other imports
load_dotenv()

from typing import List, Optional
import argparse
import logging
import sys

from pydantic import ValidationError

from specforge.commands import construction, factorization, tiling, verify
from specforge.commands.common import common_flags, emit
from specforge.core.config import settings
from specforge.core.errors import InputError, SpecforgeError
from specforge.schemas.report import EXIT_CHECK_FAILED, EXIT_INPUT_ERROR, CheckResult, RunReport

logger = logging.getLogger(__name__)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog=settings.app_name,
        description="Exact construction and verification of complementary spectral pairs",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    parents = [common_flags()]

    construction.register(subparsers, parents)   # decompose, ft-grid
    verify.register(subparsers, parents)         # verify, qplot
    factorization.register(subparsers, parents)  # factor-sets, factor-measures, enumerate-pairs
    tiling.register(subparsers, parents)         # tile-extract
    return parser


def run(args: argparse.Namespace) -> RunReport:
    """Dispatch to the handler; errors become reports with the matching exit code"""
    try:
        return args.handler(args)
    except (InputError, ValidationError) as e:
        logger.error(f"Invalid input: {e}")
        return RunReport(
            command=args.command,
            results=[CheckResult(name="input", passed=False, detail=str(e))],
            exit_code=EXIT_INPUT_ERROR,
        )
    except SpecforgeError as e:
        logger.error(f"{args.command} failed: {e}")
        return RunReport(
            command=args.command,
            results=[CheckResult(name=args.command, passed=False, detail=str(e))],
            exit_code=EXIT_CHECK_FAILED,
        )


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)

    # Configure logging
    logging.basicConfig(
        level=logging.WARNING if args.json_only else getattr(logging, settings.log_level.upper(), logging.INFO),
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        stream=sys.stderr,
    )

    report = run(args)
    emit(report, args.json_only)
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())

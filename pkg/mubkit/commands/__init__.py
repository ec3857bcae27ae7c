"""Command-line surface: one sub-command per module, assembled into one parser."""

import argparse
import logging
import sys
from typing import List, Optional

from pydantic import ValidationError

from mubkit import __version__
from mubkit.commands import export, generate, info, verify
from mubkit.configs.settings import configure_logging
from mubkit.enums import ExitCode
from mubkit.services.errors import (
    FamilyError,
    MubkitError,
    SpectralError,
    VerificationError,
    error_context,
)

logger = logging.getLogger(__name__)


def build_parser() -> argparse.ArgumentParser:
    """The root parser with generate, verify, export and info registered."""
    parser = argparse.ArgumentParser(
        prog="mubkit",
        description="Mutually unbiased bases for prime-power dimensions.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    subparsers = parser.add_subparsers(dest="command", required=True)
    generate.register(subparsers)
    verify.register(subparsers)
    export.register(subparsers)
    info.register(subparsers)
    return parser


def _fail(code: ExitCode, e: Exception) -> int:
    logger.error(
        f"{e.__class__.__name__}: {e}",
        exc_info=True,
        extra={
            "component": "cli",
            "operation": "dispatch",
            "extra_fields": error_context(e),
        },
    )
    sys.stderr.write(f"mubkit: error: {e}\n")
    return int(code)


def main(argv: Optional[List[str]] = None) -> int:
    """Run the command line and return its exit code.

    Args:
        argv: Arguments without the program name; defaults to sys.argv[1:].

    Returns:
        0 on success, 1 on a verification failure, 2 on malformed input or
        an unsupported dimension, 3 on a spectral failure. argparse errors
        exit with 2 through SystemExit.
    """
    configure_logging()
    args = build_parser().parse_args(argv)
    try:
        return int(args.func(args))
    except SpectralError as e:
        return _fail(ExitCode.SPECTRAL_FAILURE, e)
    except (VerificationError, FamilyError) as e:
        return _fail(ExitCode.VERIFY_FAILED, e)
    except (MubkitError, ValidationError, ValueError, OSError) as e:
        return _fail(ExitCode.BAD_INPUT, e)

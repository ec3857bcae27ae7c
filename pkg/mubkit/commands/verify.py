import argparse
import logging

from mubkit.commands.output import positive_float, read_mub_file, write_output
from mubkit.enums import ExitCode
from mubkit.services.verify import (
    check_mub_set,
    check_orthogonal_classes,
    merge_reports,
    mub_to_classes,
)

logger = logging.LoggerAdapter(
    logging.getLogger(__name__),
    {"component": "cli", "operation": "verify"},
)


def register(subparsers: argparse._SubParsersAction) -> None:
    """Add the verify sub-command.

    Args:
        subparsers: The action returned by add_subparsers on the root parser.
    """
    parser = subparsers.add_parser(
        "verify",
        help="certify a MUB file",
        description="Check orthonormality, unbiasedness and the d+1 bound of a MUB file.",
    )
    parser.add_argument("--in", dest="input", required=True, help="mub/1 file")
    parser.add_argument(
        "--tol",
        type=positive_float,
        help="tolerance (default: the tolerance stored in the file)",
    )
    parser.add_argument(
        "--classes",
        action="store_true",
        help="also derive the operator classes and check their orthogonality",
    )
    parser.set_defaults(func=run)


def run(args: argparse.Namespace) -> ExitCode:
    """Certify a mub/1 file and print the report as JSON.

    Args:
        args: The parsed verify arguments.

    Returns:
        ExitCode.OK when every check passes, ExitCode.VERIFY_FAILED otherwise.

    Raises:
        OSError: If the file cannot be read.
        pydantic.ValidationError: If the file violates the schema.
    """
    mub_set = read_mub_file(args.input).to_mub_set()
    tol = args.tol if args.tol is not None else mub_set.meta.tol

    report = check_mub_set(mub_set, tol)
    if args.classes and report.passed:
        classes = mub_to_classes(mub_set, tol)
        report = merge_reports([report, check_orthogonal_classes(classes, tol)])

    write_output(report.model_dump_json(indent=2))
    if report.passed:
        logger.info(f"{args.input} passed at tol {tol}")
        return ExitCode.OK
    failed = ", ".join(c.name for c in report.checks if not c.passed)
    logger.warning(f"{args.input} failed: {failed}")
    return ExitCode.VERIFY_FAILED

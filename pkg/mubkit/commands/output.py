"""Argument types, reading MUB files and writing command output."""

import argparse
import logging
import sys
from pathlib import Path
from typing import Optional

from mubkit.models.mub_file import MubFileV1

logger = logging.getLogger(__name__)


def positive_int(text: str) -> int:
    """argparse type for a strictly positive integer.

    Args:
        text: The raw command-line value.

    Returns:
        The parsed integer.

    Raises:
        argparse.ArgumentTypeError: If the value is not an integer or is below 1.
    """
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be positive, got {value}")
    return value


def positive_float(text: str) -> float:
    """argparse type for a strictly positive, finite tolerance.

    Args:
        text: The raw command-line value.

    Returns:
        The parsed float.

    Raises:
        argparse.ArgumentTypeError: If the value is not a positive finite number.
    """
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number, got {text!r}")
    if not 0 < value < float("inf"):
        raise argparse.ArgumentTypeError(f"must be a positive number, got {text}")
    return value


def read_mub_file(path: str) -> MubFileV1:
    """Parse and validate a "mub/1" file.

    Args:
        path: Location of the JSON file.

    Returns:
        The validated file model.

    Raises:
        OSError: the file cannot be read.
        pydantic.ValidationError: the content violates the schema.
    """
    text = Path(path).read_text(encoding="utf-8")
    return MubFileV1.model_validate_json(text)


def write_output(text: str, out: Optional[str] = None) -> None:
    """Write to the --out path, or stdout when none is given."""
    if not text.endswith("\n"):
        text += "\n"
    if out is None:
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    Path(out).write_text(text, encoding="utf-8")
    logger.info("Wrote %d bytes to %s", len(text.encode("utf-8")), out)

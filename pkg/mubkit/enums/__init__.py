"""Enums package."""

from mubkit.enums.cli_options import ExitCode, ExportFormat, ExportWhat, MethodOption
from mubkit.enums.construction import ClassKind, FieldOp, Method

__all__ = [
    "ClassKind",
    "ExitCode",
    "ExportFormat",
    "ExportWhat",
    "FieldOp",
    "Method",
    "MethodOption",
]

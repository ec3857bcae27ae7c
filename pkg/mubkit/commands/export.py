import argparse
import csv
import io
import json
import logging
from typing import Any, Dict, List

from mubkit.commands.output import read_mub_file, write_output
from mubkit.enums import ExitCode, ExportFormat, ExportWhat
from mubkit.models.family import SymmetricFamily
from mubkit.models.mub_set import MubSet
from mubkit.services.mub_primepower import family_for, realized_classes
from mubkit.services.pauli import enumerate_class, pauli_label
from mubkit.services.utils import encode_matrix, format_digits, to_json_serializable

logger = logging.LoggerAdapter(
    logging.getLogger(__name__),
    {"component": "cli", "operation": "export"},
)


def register(subparsers: argparse._SubParsersAction) -> None:
    """Add the export sub-command.

    Args:
        subparsers: The action returned by add_subparsers on the root parser.
    """
    parser = subparsers.add_parser(
        "export",
        help="export bases, class tables or the symmetric family",
        description="Export the bases, the symplectic class tables or the family of a MUB file.",
    )
    parser.add_argument("--in", dest="input", required=True, help="mub/1 file")
    parser.add_argument(
        "--format",
        choices=[f.value for f in ExportFormat],
        default=ExportFormat.JSON.value,
    )
    parser.add_argument(
        "--what",
        choices=[w.value for w in ExportWhat],
        default=ExportWhat.BASES.value,
    )
    parser.add_argument("--out", help="output path (default: stdout)")
    parser.set_defaults(func=run)


def _csv(header: List[str], rows: List[List[Any]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buffer.getvalue()


def _family(mub_set: MubSet) -> SymmetricFamily:
    """The family recorded by the set's method and metadata."""
    return family_for(mub_set.meta, mub_set.method)


def export_bases(mub_set: MubSet, fmt: ExportFormat) -> str:
    """Render the bases.

    Args:
        mub_set: The set to export.
        fmt: JSON gives column-major [re, im] arrays; CSV gives one row per
            entry, one block per basis.

    Returns:
        The rendered text.
    """
    if fmt is ExportFormat.JSON:
        doc = {"dim": mub_set.dim, "bases": [encode_matrix(b) for b in mub_set.bases]}
        return json.dumps(to_json_serializable(doc))
    rows = [
        [index, row, col, repr(float(basis[row, col].real)), repr(float(basis[row, col].imag))]
        for index, basis in enumerate(mub_set.bases)
        for col in range(mub_set.dim)
        for row in range(mub_set.dim)
    ]
    return _csv(["basis", "row", "column", "re", "im"], rows)


def export_classes(mub_set: MubSet, fmt: ExportFormat) -> str:
    """Render the symplectic class tables, identity included.

    Args:
        mub_set: The set whose family is rebuilt from its metadata.
        fmt: JSON lists each class with labelled vectors; CSV has one row
            per (class, x) pair.

    Returns:
        The rendered text.

    Raises:
        FieldError: If the stored modulus polynomial is not irreducible.
    """
    p, m = mub_set.meta.p, mub_set.meta.m
    classes = realized_classes(_family(mub_set))
    if fmt is ExportFormat.CSV:
        rows = []
        for index, spec in enumerate(classes):
            for vector in enumerate_class(spec, p, m):
                x = vector.beta if spec.matrix is None else vector.alpha
                rows.append([index, format_digits(x, p), vector.format()])
        return _csv(["class_index", "x_vector", "alpha|beta"], rows)

    doc: List[Dict[str, Any]] = []
    for index, spec in enumerate(classes):
        vectors = enumerate_class(spec, p, m)
        doc.append(
            {
                "class_index": index,
                **spec.to_json(),
                "vectors": [
                    {**v.to_json(), "label": pauli_label(v)} for v in vectors
                ],
            }
        )
    return json.dumps(doc, ensure_ascii=False)


def export_family(mub_set: MubSet, fmt: ExportFormat) -> str:
    """Family matrices in construction order, row-major F_p digits in CSV."""
    family = _family(mub_set)
    if fmt is ExportFormat.CSV:
        rows = [
            [index, format_digits(a.reshape(-1), family.p)]
            for index, a in enumerate(family.matrices)
        ]
        return _csv(["index", "matrix"], rows)
    doc = {
        "p": family.p,
        "m": family.m,
        "method": family.method,
        "matrices": family.matrices,
    }
    return json.dumps(to_json_serializable(doc))


_EXPORTERS = {
    ExportWhat.BASES: export_bases,
    ExportWhat.CLASSES: export_classes,
    ExportWhat.FAMILY: export_family,
}


def run(args: argparse.Namespace) -> ExitCode:
    """Export the requested part of a mub/1 file to --out or stdout."""
    mub_set = read_mub_file(args.input).to_mub_set()
    what, fmt = ExportWhat(args.what), ExportFormat(args.format)
    write_output(_EXPORTERS[what](mub_set, fmt), args.out)
    logger.info(f"Exported {what.value} of {args.input} as {fmt.value}")
    return ExitCode.OK

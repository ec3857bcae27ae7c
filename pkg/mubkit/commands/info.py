import argparse
import logging

from mubkit.commands.output import positive_int, write_output
from mubkit.enums import ExitCode
from mubkit.services.errors import FieldError, format_factorization
from mubkit.services.finite_field import factorize, find_irreducible

logger = logging.LoggerAdapter(
    logging.getLogger(__name__),
    {"component": "cli", "operation": "info"},
)


def register(subparsers: argparse._SubParsersAction) -> None:
    """Add the info sub-command.

    Args:
        subparsers: The action returned by add_subparsers on the root parser.
    """
    parser = subparsers.add_parser(
        "info",
        help="describe a dimension",
        description="Factorization, prime-power status and MUB count of a dimension.",
    )
    parser.add_argument("--dim", type=positive_int, required=True)
    parser.set_defaults(func=run)


def describe(dim: int) -> str:
    """Describe a dimension on one line.

    Exponents are written with a caret, e.g. '9 = 3^2; prime power; 10 MUBs
    constructible; bound 10; method p2; default polynomial x^2 + 1'.

    Args:
        dim: A positive dimension.

    Returns:
        The factorization, whether d is a prime power, the number of
        constructible bases, the d+1 bound and, for prime powers, the
        default method and modulus polynomial.
    """
    factors = factorize(dim)
    head = f"{dim} = {format_factorization(factors)}"
    bound = f"bound {dim + 1}"
    if len(factors) != 1:
        return f"{head}; not a prime power; construction unsupported; {bound}"

    p, m = factors[0]
    if m == 1:
        return f"{head}; prime; {dim + 1} MUBs constructible; {bound}; method prime"

    method = "p2" if m == 2 else "wf"
    try:
        poly = find_irreducible(p, m).format()
    except FieldError as e:
        logger.warning(f"No default polynomial for {dim}: {e}")
        poly = "unavailable"
    return (
        f"{head}; prime power; {dim + 1} MUBs constructible; {bound}; "
        f"method {method}; default polynomial {poly}"
    )


def run(args: argparse.Namespace) -> ExitCode:
    """Print the description of --dim; always succeeds for a positive dimension."""
    write_output(describe(args.dim))
    return ExitCode.OK

import argparse
import logging
from typing import Optional, Tuple

from mubkit.commands.output import positive_float, write_output
from mubkit.configs.settings import settings
from mubkit.enums import ExitCode, Method, MethodOption
from mubkit.models.mub_file import MubFileV1
from mubkit.models.mub_set import MubSet
from mubkit.models.spectral import SpectralConfig
from mubkit.services.errors import ConstructionError, DimensionError, VerificationError
from mubkit.services.finite_field import FpPoly, factorize, prime_power, require_prime
from mubkit.services.mub_prime import prime_mub
from mubkit.services.mub_primepower import primepower_mub
from mubkit.services.verify import check_mub_set

logger = logging.LoggerAdapter(
    logging.getLogger(__name__),
    {"component": "cli", "operation": "generate"},
)

_METHODS = {
    MethodOption.PRIME: Method.PRIME_FORMULA,
    MethodOption.P2: Method.P2_QUADRATIC,
    MethodOption.WF: Method.WOOTTERS_FIELDS,
}


def register(subparsers: argparse._SubParsersAction) -> None:
    """Add the generate sub-command.

    Args:
        subparsers: The action returned by add_subparsers on the root parser.
    """
    parser = subparsers.add_parser(
        "generate",
        help="construct a complete set of MUBs",
        description="Construct d+1 mutually unbiased bases for d = p^m.",
    )
    parser.add_argument("--dim", type=int, help="dimension d (a prime power)")
    parser.add_argument("--p", type=int, help="characteristic p (with --m)")
    parser.add_argument("--m", type=int, help="extension degree m (with --p)")
    parser.add_argument(
        "--method",
        choices=[o.value for o in MethodOption],
        default=MethodOption.AUTO.value,
        help="construction (default: prime for m=1, p2 for m=2, wf otherwise)",
    )
    parser.add_argument(
        "--poly", help="modulus polynomial as coefficients c0,c1,...,cm lowest first"
    )
    parser.add_argument(
        "--seed", type=int, default=settings.DEFAULT_SEED, help="spectral rng seed"
    )
    parser.add_argument(
        "--tol",
        type=positive_float,
        default=settings.GENERATE_TOL,
        help="tolerance recorded in the file and used for the self-check",
    )
    parser.add_argument("--out", help="output path (default: stdout)")
    parser.set_defaults(func=run)


def resolve_dimension(
    dim: Optional[int], p: Optional[int], m: Optional[int]
) -> Tuple[int, int]:
    """Resolve (p, m) from either --dim or --p/--m.

    Args:
        dim: The --dim value, if given.
        p: The --p value, if given.
        m: The --m value, if given.

    Returns:
        The characteristic and extension degree.

    Raises:
        ConstructionError: If both forms or neither are given, or m < 1.
        DimensionError: If dim is not a prime power.
        FieldError: If p is not prime.
    """
    if dim is not None:
        if p is not None or m is not None:
            raise ConstructionError("use either --dim or --p/--m, not both")
        if dim < 1:
            raise ConstructionError(f"dimension must be positive, got {dim}")
        pm = prime_power(dim)
        if pm is None:
            raise DimensionError(dim, factorize(dim))
        return pm
    if p is None or m is None:
        raise ConstructionError("either --dim or both --p and --m are required")
    if m < 1:
        raise ConstructionError(f"--m must be at least 1, got {m}")
    return require_prime(p), m


def resolve_method(option: MethodOption, m: int) -> Method:
    """Map a --method choice to a construction for extension degree m.

    Args:
        option: The parsed --method value; AUTO picks by m.
        m: The extension degree.

    Returns:
        PRIME_FORMULA for m = 1, P2_QUADRATIC for m = 2 and WOOTTERS_FIELDS
        otherwise, unless the option names one explicitly.

    Raises:
        ConstructionError: If the named method does not apply to m.
    """
    if option is MethodOption.AUTO:
        if m == 1:
            return Method.PRIME_FORMULA
        return Method.P2_QUADRATIC if m == 2 else Method.WOOTTERS_FIELDS
    method = _METHODS[option]
    if method is Method.PRIME_FORMULA and m != 1:
        raise ConstructionError(f"--method prime needs a prime dimension, got m = {m}")
    if method is Method.P2_QUADRATIC and m != 2:
        raise ConstructionError(f"--method p2 needs m = 2, got m = {m}")
    return method


def build(args: argparse.Namespace) -> MubSet:
    """Construct the MUB set the parsed arguments describe."""
    p, m = resolve_dimension(args.dim, args.p, args.m)
    method = resolve_method(MethodOption(args.method), m)
    if method is Method.PRIME_FORMULA:
        if args.poly:
            logger.warning("Ignoring --poly for the prime construction")
        return prime_mub(p, args.tol)
    poly = FpPoly.parse(args.poly, p) if args.poly else None
    cfg = SpectralConfig(
        tol=settings.DEFAULT_TOL,
        max_retries=settings.SPECTRAL_MAX_RETRIES,
        rng_seed=args.seed,
    )
    return primepower_mub(p, m, method, cfg, modulus_poly=poly, tol=args.tol)


def run(args: argparse.Namespace) -> ExitCode:
    """Build, self-check and write a mub/1 file.

    Args:
        args: The parsed generate arguments.

    Returns:
        ExitCode.OK once the file is written.

    Raises:
        VerificationError: If the generated set fails check_mub_set at --tol.
    """
    mub_set = build(args)
    report = check_mub_set(mub_set, args.tol)
    if not report.passed:
        raise VerificationError(
            f"generated set at d = {mub_set.dim} failed its self-check", report
        )
    logger.info(
        f"Generated {len(mub_set.bases)} bases at d = {mub_set.dim} "
        f"with {mub_set.method.value}"
    )
    write_output(MubFileV1.from_mub_set(mub_set).model_dump_json(), args.out)
    return ExitCode.OK

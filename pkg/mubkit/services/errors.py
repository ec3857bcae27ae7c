"""Exception hierarchy shared by the services and the command line."""

from typing import Any, Dict, List, Optional, Tuple


class MubkitError(Exception):
    """Base class for every error raised by mubkit."""


class FieldError(MubkitError, ValueError):
    """Invalid finite-field input (modulus, division, reducibility)."""


class PauliError(MubkitError, ValueError):
    """Invalid Pauli-layer input (dimensions, class matrix, size guard)."""


class DimensionError(MubkitError, ValueError):
    """Dimension is not a prime power."""

    def __init__(self, dim: int, factorization: List[Tuple[int, int]]):
        self.dim = dim
        self.factorization = factorization
        super().__init__(f"{dim} = {format_factorization(factorization)} is not a prime power")


class SpectralError(MubkitError):
    """Joint diagonalization failed."""

    def __init__(self, message: str, seed: Optional[Any] = None, attempts: int = 0):
        self.reason = message
        self.seed = seed
        self.attempts = attempts
        super().__init__(f"{message} (seed={seed}, attempts={attempts})")


class FamilyError(MubkitError):
    """A generated symmetric family violates its invariants."""

    def __init__(self, message: str, report: Any = None):
        self.report = report
        super().__init__(message)


class VerificationError(MubkitError):
    """A MUB set failed verification where a verified set is required."""

    def __init__(self, message: str, report: Any = None):
        self.report = report
        super().__init__(message)


def format_factorization(factorization: List[Tuple[int, int]]) -> str:
    """Render [(2, 1), (3, 1)] as '2·3' and [(3, 2)] as '3^2'."""
    if not factorization:
        return "1"
    parts = [f"{p}^{e}" if e > 1 else f"{p}" for p, e in factorization]
    return "·".join(parts)


def error_context(e: Exception) -> Dict[str, Any]:
    """Structured log fields for an exception."""
    context: Dict[str, Any] = {
        "error": str(e),
        "error_type": e.__class__.__name__,
    }
    seed = getattr(e, "seed", None)
    if seed is not None:
        context["seed"] = seed
    return context


class ConstructionError(MubkitError, ValueError):
    """Arguments a construction cannot accept (ranges, method/dimension combination)."""

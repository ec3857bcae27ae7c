"""Closed-form MUBs for prime dimensions.

Basis 0 is the standard basis (eigenvectors of Z_d); basis k+1 is the
eigenbasis {ψ^k_t}_t of X_d Z_d^k with components

    ψ^k_t[j] = ω^{t(d-j) - k s_j} / √d,   s_j = j + (j+1) + ... + (d-1).

For odd d this vector has eigenvalue ω^t. For d = 2 the formula is not
periodic in j, so each component is corrected by η_k^{-j} with
η_k = exp(-iπk(d-1)/d), and the eigenvalue becomes ω^t η_k.
"""

import logging
from typing import List, Optional

import numpy as np

from mubkit.configs.settings import settings
from mubkit.enums import Method
from mubkit.models.mub_set import MubMeta, MubSet
from mubkit.services.errors import ConstructionError
from mubkit.services.finite_field import require_prime
from mubkit.services.monitoring import monitor_performance
from mubkit.services.pauli import PauliOp, SymplecticVector, omega_powers, to_matrix

logger = logging.getLogger(__name__)


def _require_index(name: str, value: int, d: int) -> int:
    if not 0 <= value < d:
        raise ConstructionError(f"{name} must lie in [0, {d}), got {value}")
    return int(value)


def resolve_tol(tol: Optional[float]) -> float:
    """The tolerance recorded on a generated set.

    Args:
        tol: An explicit tolerance, or None for settings.GENERATE_TOL.

    Returns:
        A positive tolerance.

    Raises:
        ConstructionError: If an explicit tolerance is not positive.
    """
    if tol is None:
        return settings.GENERATE_TOL
    if not tol > 0:
        raise ConstructionError(f"tolerance must be positive, got {tol}")
    return float(tol)


def _eta(d: int, k: int) -> complex:
    """Per-class phase correction η_k; 1 for odd d."""
    if d % 2:
        return 1.0 + 0j
    return complex(np.exp(-1j * np.pi * k * (d - 1) / d))


def prime_eigenvalue(d: int, k: int, t: int) -> complex:
    """Eigenvalue of X_d Z_d^k on ψ^k_t."""
    require_prime(d)
    return complex(omega_powers(d)[t % d] * _eta(d, k % d))


def prime_eigenvector(d: int, k: int, t: int) -> np.ndarray:
    """The unit eigenvector ψ^k_t of X_d Z_d^k.

    Args:
        d: A prime dimension.
        k: Class index in [0, d).
        t: Eigenvector index in [0, d).

    Returns:
        A complex vector of length d with every component of modulus 1/√d.

    Raises:
        FieldError: If d is not prime.
        ConstructionError: If k or t lies outside [0, d).
    """
    require_prime(d)
    k = _require_index("k", k, d)
    t = _require_index("t", t, d)
    j = np.arange(d)
    s = (d * (d - 1) - j * (j - 1)) // 2
    exponents = (t * (d - j) - k * s) % d
    vector = omega_powers(d)[exponents] / np.sqrt(d)
    if d % 2 == 0:
        # η_k^{-j}
        vector = vector * np.exp(1j * np.pi * k * (d - 1) * j / d)
    return vector


def prime_basis(d: int, k: int) -> np.ndarray:
    """Columns ψ^k_0, ..., ψ^k_{d-1}."""
    return np.column_stack([prime_eigenvector(d, k, t) for t in range(d)])


def prime_class_ops(d: int) -> List[np.ndarray]:
    """Z_d, X_d, X_d Z_d, ..., X_d Z_d^{d-1}."""
    require_prime(d)
    ops = [to_matrix(PauliOp(SymplecticVector((0,), (1,), d)), d, 1)]
    ops.extend(
        to_matrix(PauliOp(SymplecticVector((1,), (k,), d)), d, 1) for k in range(d)
    )
    return ops


def shift_deviation(d: int, k: int, ell: int) -> float:
    """Worst deviation from X_d Z_d^ℓ ψ^k_t = λ^k_{t+k-ℓ} ψ^k_{t+k-ℓ} over t."""
    require_prime(d)
    k = _require_index("k", k, d)
    ell = _require_index("ell", ell, d)
    op = to_matrix(PauliOp(SymplecticVector((1,), (ell,), d)), d, 1)
    worst = 0.0
    for t in range(d):
        shifted = (t + k - ell) % d
        lhs = op @ prime_eigenvector(d, k, t)
        rhs = prime_eigenvalue(d, k, shifted) * prime_eigenvector(d, k, shifted)
        worst = max(worst, float(np.max(np.abs(lhs - rhs))))
    return worst


def shift_property_check(d: int, k: int, ell: int, tol: float = 1e-10) -> bool:
    """True iff X_d Z_d^ℓ cyclically shifts the eigenbasis of X_d Z_d^k modulo phase."""
    return shift_deviation(d, k, ell) <= tol


@monitor_performance
def prime_mub(d: int, tol: Optional[float] = None) -> MubSet:
    """The d+1 bases of the prime construction.

    Args:
        d: A prime dimension.
        tol: Tolerance recorded in the metadata; defaults to GENERATE_TOL.

    Returns:
        The standard basis followed by the eigenbases of X_d Z_d^k, k = 0..d-1.

    Raises:
        FieldError: If d is not prime.
        ConstructionError: If tol is not positive.
    """
    require_prime(d)
    tol = resolve_tol(tol)
    bases = [np.eye(d, dtype=np.complex128)]
    bases.extend(prime_basis(d, k) for k in range(d))
    logger.debug("Built %d bases for prime dimension %d", len(bases), d)
    return MubSet(
        dim=d,
        bases=bases,
        method=Method.PRIME_FORMULA,
        meta=MubMeta(p=d, m=1, tol=tol),
    )

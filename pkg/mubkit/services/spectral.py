"""Common eigenbases of commuting unitaries.

A random Hermitian combination H = Σ c_t (U_t + U_t†)/2 + r_t (U_t - U_t†)/(2i)
separates the joint eigenspaces of the U_t for almost every draw of (c, r).
Its eigenvectors are accepted only after every U_t is checked to be diagonal
in them; a degenerate draw is retried with fresh coefficients.
"""

import logging
from typing import List, Optional, Sequence

import numpy as np
import scipy.linalg

from mubkit.models.spectral import SpectralConfig
from mubkit.services.errors import PauliError, SpectralError

logger = logging.getLogger(__name__)

# Threshold for "first nonzero component" when fixing column phases
PHASE_EPS = 1e-8
# Eigenvalue angles are compared after rounding to this many decimals
ANGLE_DECIMALS = 8


def _dagger(matrix: np.ndarray) -> np.ndarray:
    return matrix.conj().T


def is_unitary(matrix: np.ndarray, tol: float) -> bool:
    """True for a square matrix with max |U†U - 1| <= tol."""
    u = np.asarray(matrix)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        return False
    return bool(np.max(np.abs(_dagger(u) @ u - np.eye(u.shape[0]))) <= tol)


def is_diagonal_in(matrix: np.ndarray, basis: np.ndarray, tol: float) -> bool:
    """True iff every off-diagonal entry of B†UB has modulus <= tol."""
    u = np.asarray(matrix)
    b = np.asarray(basis)
    if u.shape != b.shape:
        raise PauliError(f"dimension mismatch: {u.shape} vs {b.shape}")
    conjugated = _dagger(b) @ u @ b
    off_diagonal = conjugated - np.diag(np.diag(conjugated))
    return bool(np.max(np.abs(off_diagonal), initial=0.0) <= tol)


def eigenvalues_in(matrix: np.ndarray, basis: np.ndarray) -> np.ndarray:
    """Diagonal of B†UB: the eigenvalue of U on each column of B."""
    return np.diag(_dagger(basis) @ matrix @ basis).copy()


def reconstruct(basis: np.ndarray, eigenvalues: Sequence[complex]) -> np.ndarray:
    """Σ_k λ_k |ψ_k⟩⟨ψ_k|."""
    return (basis * np.asarray(eigenvalues)) @ _dagger(basis)


def fix_phases(basis: np.ndarray) -> np.ndarray:
    """Normalize columns and make each first nonzero component real positive."""
    out = np.array(basis, dtype=np.complex128)
    out /= np.linalg.norm(out, axis=0)
    for k in range(out.shape[1]):
        column = out[:, k]
        lead = column[np.argmax(np.abs(column) > PHASE_EPS)]
        out[:, k] = column * (np.conj(lead) / abs(lead))
    return out


def _angle_keys(ops: Sequence[np.ndarray], basis: np.ndarray) -> np.ndarray:
    """Eigenvalue angles in [0, 2π) per operator, rounded for stable sorting."""
    keys = []
    for op in ops:
        angles = np.mod(np.angle(eigenvalues_in(op, basis)), 2 * np.pi)
        angles = np.round(angles, ANGLE_DECIMALS)
        angles[angles >= np.round(2 * np.pi, ANGLE_DECIMALS)] = 0.0
        keys.append(angles)
    return np.array(keys)


def sort_by_eigenvalues(basis: np.ndarray, ops: Sequence[np.ndarray]) -> np.ndarray:
    """Order columns by their eigenvalue-angle tuples, first operator most significant."""
    if not ops:
        return np.array(basis)
    keys = _angle_keys(ops, basis)
    # np.lexsort treats its last key as primary
    order = np.lexsort(keys[::-1])
    return np.array(basis)[:, order]


def standard_eigenbasis(ops: Sequence[np.ndarray]) -> np.ndarray:
    """Standard basis ordered by the eigenvalues of diagonal operators."""
    d = np.asarray(ops[0]).shape[0]
    return sort_by_eigenvalues(np.eye(d, dtype=np.complex128), ops)


def _check_inputs(ops: List[np.ndarray], cfg: SpectralConfig) -> None:
    """Raise SpectralError unless ops are commuting square unitaries of one shape."""
    if not ops:
        raise SpectralError("no operators to diagonalize", seed=cfg.rng_seed)
    shape = ops[0].shape
    if len(shape) != 2 or shape[0] != shape[1]:
        raise SpectralError(f"operators must be square, got {shape}", seed=cfg.rng_seed)
    d = shape[0]
    for i, u in enumerate(ops):
        if u.shape != shape:
            raise SpectralError(
                f"operator {i} has shape {u.shape}, expected {shape}", seed=cfg.rng_seed
            )
        if not is_unitary(u, cfg.tol * d):
            raise SpectralError(f"operator {i} is not unitary", seed=cfg.rng_seed)
    for i in range(len(ops)):
        for j in range(i + 1, len(ops)):
            commutator = ops[i] @ ops[j] - ops[j] @ ops[i]
            if np.max(np.abs(commutator)) > cfg.tol * d:
                raise SpectralError(
                    f"operators {i} and {j} do not commute", seed=cfg.rng_seed
                )


def joint_eigenbasis(
    ops: Sequence[np.ndarray], cfg: Optional[SpectralConfig] = None
) -> np.ndarray:
    """Orthonormal basis diagonalizing every operator in a commuting family.

    Columns are phase-fixed (first nonzero component real positive) and
    sorted by the angles of their eigenvalue tuples across ops.

    Args:
        ops: Pairwise commuting unitaries of one shape.
        cfg: Solver settings; defaults to SpectralConfig().

    Returns:
        A unitary whose columns are common eigenvectors of every operator.

    Raises:
        SpectralError: non-commuting or non-unitary input, or no draw
            separated the eigenspaces within cfg.max_retries attempts.
    """
    cfg = cfg or SpectralConfig()
    ops = [np.asarray(u, dtype=np.complex128) for u in ops]
    _check_inputs(ops, cfg)

    if all(is_diagonal_in(u, np.eye(u.shape[0]), cfg.tol) for u in ops):
        return standard_eigenbasis(ops)

    rng = np.random.default_rng(cfg.rng_seed)
    for attempt in range(1, cfg.max_retries + 1):
        c = rng.standard_normal(len(ops))
        r = rng.standard_normal(len(ops))
        h = sum(
            c_t * (u + _dagger(u)) / 2 + r_t * (u - _dagger(u)) / 2j
            for c_t, r_t, u in zip(c, r, ops)
        )
        h = (h + _dagger(h)) / 2
        _, vectors = scipy.linalg.eigh(h)
        if all(is_diagonal_in(u, vectors, cfg.tol) for u in ops):
            logger.debug(
                "Joint eigenbasis of %d operators found on attempt %d", len(ops), attempt
            )
            return sort_by_eigenvalues(fix_phases(vectors), ops)
        logger.debug("Attempt %d left off-diagonal residue; retrying", attempt)

    raise SpectralError(
        f"no separating combination for {len(ops)} operators",
        seed=cfg.rng_seed,
        attempts=cfg.max_retries,
    )

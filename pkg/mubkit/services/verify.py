"""Brute-force certification of MUB sets and their operator classes.

Every check reports its worst max-norm deviation and where it occurred.
Inner-product checks on operator classes are normalized by d, so a
deviation of tol corresponds to an absolute error of tol·d in Tr(A†B).
"""

import itertools
import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

from mubkit.configs.settings import settings
from mubkit.models.mub_set import MubSet
from mubkit.models.report import CheckRecord, VerifyReport
from mubkit.services.errors import VerificationError
from mubkit.services.monitoring import monitor_performance

logger = logging.getLogger(__name__)

# Seed of the pair sampler used above EXHAUSTIVE_MAX_DIM
SAMPLING_SEED = 0


def _worst(deviation: np.ndarray) -> Tuple[float, List[int]]:
    """Largest entry and its index; (0.0, []) for an empty array."""
    if deviation.size == 0:
        return 0.0, []
    flat = int(np.argmax(deviation))
    location = [int(i) for i in np.unravel_index(flat, deviation.shape)]
    return float(deviation.flat[flat]), location


def _record(
    name: str,
    deviation: float,
    location: Sequence[int],
    tol: float,
    count: Optional[int] = None,
    detail: Optional[str] = None,
) -> CheckRecord:
    """A record that passes iff deviation <= tol."""
    return CheckRecord(
        name=name,
        worst_deviation=deviation,
        location=list(location),
        passed=deviation <= tol,
        count=count,
        detail=detail,
    )


def _structural(name: str, passed: bool, count: int, detail: str) -> CheckRecord:
    """A pass/fail record with no numeric deviation."""
    return CheckRecord(
        name=name,
        worst_deviation=0.0,
        passed=passed,
        structural=True,
        count=count,
        detail=detail,
    )


def _report(checks: List[CheckRecord], tol: float, coverage: float = 1.0) -> VerifyReport:
    """A report that passes iff every check does."""
    return VerifyReport(
        passed=all(c.passed for c in checks),
        checks=checks,
        tolerance=tol,
        coverage=coverage,
    )


def _orthonormal_deviation(basis: np.ndarray) -> np.ndarray:
    """Entrywise |B†B - 1|."""
    b = np.asarray(basis)
    return np.abs(b.conj().T @ b - np.eye(b.shape[1]))


def _unbiased_deviation(b1: np.ndarray, b2: np.ndarray) -> np.ndarray:
    """Entrywise ||B1†B2| - 1/√d|."""
    d = b1.shape[0]
    return np.abs(np.abs(b1.conj().T @ b2) - 1 / np.sqrt(d))


def check_orthonormal(basis: np.ndarray, tol: float) -> VerifyReport:
    """max |(B†B - 1)_{jk}|."""
    deviation, location = _worst(_orthonormal_deviation(basis))
    return _report([_record("orthonormal", deviation, location, tol, count=1)], tol)


def check_unbiased_pair(b1: np.ndarray, b2: np.ndarray, tol: float) -> VerifyReport:
    """max over (i, j) of ||⟨φ_i|ψ_j⟩| - 1/√d|."""
    b1, b2 = np.asarray(b1), np.asarray(b2)
    if b1.shape != b2.shape:
        return _report(
            [_structural("dimension", False, 2, f"shapes {b1.shape} and {b2.shape} differ")],
            tol,
        )
    deviation, location = _worst(_unbiased_deviation(b1, b2))
    return _report([_record("unbiased", deviation, location, tol, count=1)], tol)


def _select_pairs(
    n_bases: int, dim: int, exhaustive: Optional[bool]
) -> Tuple[List[Tuple[int, int]], float]:
    """Pairs (i, j) to examine and the fraction of all pairs they cover."""
    pairs = list(itertools.combinations(range(n_bases), 2))
    if not pairs:
        return pairs, 1.0
    if exhaustive is None:
        exhaustive = dim <= settings.EXHAUSTIVE_MAX_DIM
    if exhaustive or len(pairs) <= settings.SPOT_CHECK_PAIRS:
        return pairs, 1.0
    rng = np.random.default_rng(SAMPLING_SEED)
    chosen = np.sort(rng.choice(len(pairs), size=settings.SPOT_CHECK_PAIRS, replace=False))
    logger.info(
        "Sampling %d of %d basis pairs at d = %d", len(chosen), len(pairs), dim
    )
    return [pairs[i] for i in chosen], len(chosen) / len(pairs)


@monitor_performance
def check_mub_set(
    mub_set: MubSet, tol: Optional[float] = None, exhaustive: Optional[bool] = None
) -> VerifyReport:
    """Orthonormality of every basis, unbiasedness of every pair, and |bases| <= d+1.

    Above settings.EXHAUSTIVE_MAX_DIM only a sample of pairs is examined
    unless exhaustive is set; the fraction examined is the report coverage.

    Args:
        mub_set: The set to certify.
        tol: Max-norm tolerance; defaults to mub_set.meta.tol.
        exhaustive: Force (True) or forbid (False) checking every pair.

    Returns:
        A report with cardinality, orthonormal and unbiased checks.
    """
    tol = tol if tol is not None else mub_set.meta.tol
    d = mub_set.dim
    n = len(mub_set.bases)

    operator_count = 1 + n * (d - 1)
    checks = [
        _structural(
            "cardinality",
            n <= d + 1,
            n,
            f"{n} bases, bound {d + 1}; 1 + {n}({d}-1) = {operator_count} vs d^2 = {d * d}",
        )
    ]

    worst, where = 0.0, []
    for index, basis in enumerate(mub_set.bases):
        deviation, location = _worst(_orthonormal_deviation(basis))
        if deviation > worst or not where:
            worst, where = deviation, [index] + location
    checks.append(_record("orthonormal", worst, where, tol, count=n))

    pairs, coverage = _select_pairs(n, d, exhaustive)
    with ThreadPoolExecutor(max_workers=settings.THREADS) as executor:
        results = list(
            executor.map(
                lambda pair: _worst(
                    _unbiased_deviation(mub_set.bases[pair[0]], mub_set.bases[pair[1]])
                ),
                pairs,
            )
        )
    worst, where = 0.0, []
    for (i, j), (deviation, location) in zip(pairs, results):
        if deviation > worst or not where:
            worst, where = deviation, [i, j] + location
    checks.append(_record("unbiased", worst, where, tol, count=len(pairs)))

    report = _report(checks, tol, coverage)
    if not report.passed:
        failed = [c.name for c in report.checks if not c.passed]
        logger.warning("MUB set at d = %d failed checks: %s", d, ", ".join(failed))
    return report


def mub_to_classes(mub_set: MubSet, tol: Optional[float] = None) -> List[List[np.ndarray]]:
    """For each basis, U_t = Σ_k ω^{tk} |ψ_k⟩⟨ψ_k| for t = 0..d-1 (k = 1..d), U_0 = 1.

    Args:
        mub_set: A set that passes check_mub_set.
        tol: Tolerance of that check; defaults to the set's own.

    Returns:
        One class of d commuting unitaries per basis, identity first.

    Raises:
        VerificationError: the set does not pass check_mub_set.
    """
    report = check_mub_set(mub_set, tol)
    if not report.passed:
        raise VerificationError("cannot derive classes from an unverified MUB set", report)

    d = mub_set.dim
    k = np.arange(1, d + 1)
    classes = []
    for basis in mub_set.bases:
        members = [np.eye(d, dtype=np.complex128)]
        for t in range(1, d):
            phases = np.exp(2j * np.pi * t * k / d)
            members.append((basis * phases) @ basis.conj().T)
        classes.append(members)
    return classes


def root_of_unity_sum(m: int, n: int) -> complex:
    """Σ_{k=1..n} exp(2πi mk/n); zero unless n divides m."""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    k = np.arange(1, n + 1)
    return complex(np.sum(np.exp(2j * np.pi * m * k / n)))


def _commutator_deviation(ops: Sequence[np.ndarray]) -> Tuple[float, List[int]]:
    """Worst |[U_i, U_j]| over pairs i < j, with the offending pair."""
    worst, where = 0.0, []
    for i, j in itertools.combinations(range(len(ops)), 2):
        deviation = float(np.max(np.abs(ops[i] @ ops[j] - ops[j] @ ops[i])))
        if deviation > worst or not where:
            worst, where = deviation, [i, j]
    return worst, where


def _gram_deviation(ops: Sequence[np.ndarray]) -> Tuple[float, List[int]]:
    """max |Tr(U_a† U_b) - d δ_ab| / d."""
    if not ops:
        return 0.0, []
    d = ops[0].shape[0]
    stacked = np.stack([np.asarray(u).reshape(-1) for u in ops])
    gram = stacked.conj() @ stacked.T
    return _worst(np.abs(gram - d * np.eye(len(ops))) / d)


def check_commuting_class(ops: Sequence[np.ndarray], tol: float) -> VerifyReport:
    """Pairwise commuting, pairwise orthogonal, and no more than d members."""
    ops = [np.asarray(u, dtype=np.complex128) for u in ops]
    d = ops[0].shape[0] if ops else 0
    checks = [
        _structural("class_size", len(ops) <= d, len(ops), f"{len(ops)} members, bound {d}")
    ]
    deviation, location = _commutator_deviation(ops)
    checks.append(_record("commuting", deviation, location, tol, count=len(ops)))
    deviation, location = _gram_deviation(ops)
    checks.append(_record("orthogonal", deviation, location, tol, count=len(ops)))
    return _report(checks, tol)


def check_orthogonal_classes(
    classes: Sequence[Sequence[np.ndarray]], tol: float
) -> VerifyReport:
    """Trace-orthogonality across all classes, identity counted once.

    Checks ⟨U_{j,s}, U_{k,t}⟩ = d δ_jk δ_st, commutation within each class,
    class sizes <= d and the count 1 + Σ(|C_j| - 1) <= d^2.
    """
    classes = [[np.asarray(u, dtype=np.complex128) for u in members] for members in classes]
    members_all = [u for members in classes for u in members]
    if not members_all:
        return _report([_structural("count", True, 0, "no matrices")], tol)
    d = members_all[0].shape[0]
    identity = np.eye(d)

    largest = max(len(members) for members in classes)
    checks = [
        _structural(
            "class_size", largest <= d, largest, f"largest class has {largest} members, bound {d}"
        )
    ]

    worst, where = 0.0, []
    for index, members in enumerate(classes):
        deviation, location = _commutator_deviation(members)
        if deviation > worst or not where:
            worst, where = deviation, [index] + location
    checks.append(_record("commuting", worst, where, tol, count=len(classes)))

    matrices = [identity]
    for members in classes:
        matrices.extend(u for u in members if np.max(np.abs(u - identity)) > tol)
    count = len(matrices)
    checks.append(
        _structural("count", count <= d * d, count, f"{count} matrices, bound d^2 = {d * d}")
    )
    deviation, location = _gram_deviation(matrices)
    checks.append(_record("orthogonal", deviation, location, tol, count=count))

    report = _report(checks, tol)
    logger.debug("Orthogonal-class check over %d matrices: passed=%s", count, report.passed)
    return report


def merge_reports(reports: Iterable[VerifyReport]) -> VerifyReport:
    """Concatenate checks of reports sharing one tolerance.

    Raises:
        ValueError: If there are no reports or their tolerances differ.
    """
    reports = list(reports)
    if not reports:
        raise ValueError("no reports to merge")
    tolerances = {r.tolerance for r in reports}
    if len(tolerances) != 1:
        raise ValueError(f"cannot merge reports with tolerances {sorted(tolerances)}")
    checks = [check for r in reports for check in r.checks]
    return _report(checks, reports[0].tolerance, min(r.coverage for r in reports))

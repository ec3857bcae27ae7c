"""MUBs for d = p^m from symmetric families.

Pipeline: a family {A_j} of symmetric matrices over F_p with every
det(A_j - A_k) nonzero gives the linear classes (0|1), (1|A_1), ...; each
class is realized as commuting Pauli matrices and its joint eigenbasis is
one basis of the set.
"""

import itertools
import logging
from concurrent.futures import ThreadPoolExecutor
from typing import List, Optional, Sequence

import numpy as np

from mubkit.configs.settings import settings
from mubkit.enums import Method
from mubkit.models.family import FamilyReport, PairDeterminant, SymmetricFamily
from mubkit.models.mub_set import MubMeta, MubSet
from mubkit.models.spectral import SpectralConfig
from mubkit.services.errors import ConstructionError, FamilyError, SpectralError
from mubkit.services.finite_field import (
    FpPoly,
    det_mod_p,
    find_irreducible,
    is_symmetric,
    require_modulus,
    require_prime,
    wf_structure_matrices,
)
from mubkit.services.monitoring import monitor_performance
from mubkit.services.mub_prime import prime_mub, resolve_tol
from mubkit.services.pauli import ClassSpec, class_matrices
from mubkit.services.spectral import joint_eigenbasis, standard_eigenbasis

logger = logging.getLogger(__name__)


def _resolve_modulus(p: int, m: int, modulus_poly: Optional[FpPoly]) -> FpPoly:
    """The given modulus checked against (p, m), or the default one."""
    if modulus_poly is None:
        return find_irreducible(p, m)
    if modulus_poly.p != p:
        raise ConstructionError(
            f"modulus polynomial is over F_{modulus_poly.p}, expected F_{p}"
        )
    return require_modulus(modulus_poly, degree=m)


def _require_valid(family: SymmetricFamily) -> SymmetricFamily:
    """Raise FamilyError unless validate_family passes."""
    report = validate_family(family)
    if not report.passed:
        logger.error(
            "Family over F_%d violates its invariants: %d singular differences",
            family.p,
            len(report.failures),
        )
        raise FamilyError(
            f"{family.method.value} family over F_{family.p} has "
            f"{len(report.failures)} singular differences",
            report,
        )
    return family


def symmetric_family_p2(p: int, modulus_poly: Optional[FpPoly] = None) -> SymmetricFamily:
    """The p^2 matrices [[a, b], [b, sa + tb]] for γ^2 - tγ - s irreducible.

    For a monic modulus x^2 + c_1 x + c_0, t = -c_1 and s = -c_0. Matrices
    are listed with b as the outer and a as the inner index.

    Args:
        p: The characteristic.
        modulus_poly: A monic irreducible quadratic; defaults to find_irreducible(p, 2).

    Returns:
        The validated family of p^2 matrices.

    Raises:
        ConstructionError: If the modulus is over another field.
        FieldError: If the modulus is reducible or not a monic quadratic.
        FamilyError: If some difference A_j - A_k is singular.
    """
    require_prime(p)
    poly = _resolve_modulus(p, 2, modulus_poly)
    c0, c1 = poly.coeffs[0], poly.coeffs[1]
    t, s = (-c1) % p, (-c0) % p
    matrices = [
        np.array([[a, b], [b, (s * a + t * b) % p]], dtype=np.int64)
        for b in range(p)
        for a in range(p)
    ]
    family = SymmetricFamily(p=p, m=2, matrices=matrices, method=Method.P2_QUADRATIC)
    return _require_valid(family)


def symmetric_family_from_generators(
    p: int,
    m: int,
    generators: Sequence[np.ndarray],
    method: Method = Method.WOOTTERS_FIELDS,
) -> SymmetricFamily:
    """All F_p-combinations Σ a_l G_l, coefficient tuples in lexicographic order.

    The result is returned unvalidated so that arbitrary generator sets can
    be inspected with validate_family.

    Raises:
        ConstructionError: If a generator is not m x m.
    """
    require_prime(p)
    gens = [np.asarray(g, dtype=np.int64) % p for g in generators]
    for g in gens:
        if g.shape != (m, m):
            raise ConstructionError(f"generator shape {g.shape} does not match m = {m}")
    matrices = []
    for coeffs in itertools.product(range(p), repeat=len(gens)):
        total = np.zeros((m, m), dtype=np.int64)
        for a, g in zip(coeffs, gens):
            total += a * g
        matrices.append(total % p)
    return SymmetricFamily(p=p, m=m, matrices=matrices, method=method)


def symmetric_family_wf(
    p: int, m: int, modulus_poly: Optional[FpPoly] = None
) -> SymmetricFamily:
    """Span of the structure-constant matrices of F_{p^m}.

    Args:
        p: The characteristic.
        m: The extension degree.
        modulus_poly: A monic irreducible polynomial of degree m; defaults to
            find_irreducible(p, m).

    Returns:
        The validated family of p^m matrices.

    Raises:
        ConstructionError: If the modulus is over another field.
        FieldError: If the modulus cannot define F_{p^m}.
        FamilyError: If some difference A_j - A_k is singular.
    """
    require_prime(p)
    poly = _resolve_modulus(p, m, modulus_poly)
    generators = wf_structure_matrices(p, m, poly)
    family = symmetric_family_from_generators(p, m, generators, Method.WOOTTERS_FIELDS)
    return _require_valid(family)


def validate_family(family: SymmetricFamily) -> FamilyReport:
    """Symmetry of each member and det(A_j - A_k) over F_p for every pair j < k.

    Args:
        family: The family to check exhaustively.

    Returns:
        A report listing every pairwise determinant; it passes when all
        members are symmetric and no determinant is zero.
    """
    symmetric = [is_symmetric(a) for a in family.matrices]
    determinants = [
        PairDeterminant(j=j, k=k, det=det_mod_p(family.matrices[j] - family.matrices[k], family.p))
        for j, k in itertools.combinations(range(len(family.matrices)), 2)
    ]
    passed = all(symmetric) and all(pair.det != 0 for pair in determinants)
    return FamilyReport(passed=passed, symmetric=symmetric, determinants=determinants)


def realized_classes(family: SymmetricFamily) -> List[ClassSpec]:
    """Z class first, then (1 | A_j) in family order."""
    return [ClassSpec.z_class()] + [ClassSpec.x_class(a) for a in family.matrices]


def family_for(meta: MubMeta, method: Method) -> SymmetricFamily:
    """Rebuild the family a MubSet was generated from.

    Args:
        meta: The set metadata; a missing modulus means the default one.
        method: The construction recorded on the set.

    Returns:
        The family, with scalars 0..p-1 standing in for the prime formula.

    Raises:
        FieldError: If the stored modulus is unusable.
    """
    poly = (
        FpPoly.from_coefficients(meta.modulus_poly, meta.p)
        if meta.modulus_poly is not None
        else None
    )
    if method is Method.PRIME_FORMULA:
        # X Z^a for a = 0..p-1 is the class (1 | [a])
        matrices = [np.array([[a]], dtype=np.int64) for a in range(meta.p)]
        return SymmetricFamily(p=meta.p, m=1, matrices=matrices, method=method)
    if method is Method.P2_QUADRATIC:
        return symmetric_family_p2(meta.p, poly)
    return symmetric_family_wf(meta.p, meta.m, poly)


def class_seed(seed: int, class_index: int) -> int:
    """Per-class seed, independent of scheduling."""
    state = np.random.SeedSequence([seed, class_index]).generate_state(1, dtype=np.uint64)
    return int(state[0])


def _class_basis(spec: ClassSpec, p: int, m: int, cfg: SpectralConfig) -> np.ndarray:
    """Joint eigenbasis of a class without its identity."""
    ops = class_matrices(spec, p, m, include_identity=False)
    return joint_eigenbasis(ops, cfg)


@monitor_performance
def primepower_mub(
    p: int,
    m: int,
    method: Optional[Method] = None,
    cfg: Optional[SpectralConfig] = None,
    modulus_poly: Optional[FpPoly] = None,
    tol: Optional[float] = None,
) -> MubSet:
    """p^m + 1 bases from the classes (0|1), (1|A_1), ..., (1|A_{p^m}).

    m = 1 delegates to prime_mub. method defaults to P2_QUADRATIC for m = 2
    and WOOTTERS_FIELDS otherwise.

    Args:
        p: The characteristic.
        m: The extension degree.
        method: P2_QUADRATIC or WOOTTERS_FIELDS.
        cfg: Spectral settings; the seed of class i is class_seed(cfg.rng_seed, i).
        modulus_poly: The modulus of F_{p^m}; defaults to find_irreducible(p, m).
        tol: Tolerance recorded in the metadata; defaults to GENERATE_TOL.

    Returns:
        p^m + 1 bases, basis 0 a permutation of the standard basis.

    Raises:
        ConstructionError: P2_QUADRATIC with m != 2, a bad modulus or tol <= 0.
        SpectralError: a class could not be diagonalized; carries the base seed.
    """
    require_prime(p)
    if m < 1:
        raise ConstructionError(f"extension degree must be at least 1, got {m}")
    tol = resolve_tol(tol)
    if m == 1:
        return prime_mub(p, tol)
    if method is None:
        method = Method.P2_QUADRATIC if m == 2 else Method.WOOTTERS_FIELDS
    method = Method(method)
    if method is Method.PRIME_FORMULA:
        raise ConstructionError(f"the prime formula needs a prime dimension, got {p}^{m}")
    if method is Method.P2_QUADRATIC and m != 2:
        raise ConstructionError(f"P2_QUADRATIC requires m = 2, got m = {m}")

    cfg = cfg or SpectralConfig(
        tol=settings.DEFAULT_TOL,
        max_retries=settings.SPECTRAL_MAX_RETRIES,
        rng_seed=settings.DEFAULT_SEED,
    )
    poly = _resolve_modulus(p, m, modulus_poly)
    if method is Method.P2_QUADRATIC:
        family = symmetric_family_p2(p, poly)
    else:
        family = symmetric_family_wf(p, m, poly)
    classes = realized_classes(family)

    z_ops = class_matrices(classes[0], p, m, include_identity=False)
    bases = [standard_eigenbasis(z_ops)]

    class_cfgs = [
        cfg.model_copy(update={"rng_seed": class_seed(cfg.rng_seed, i)})
        for i in range(1, len(classes))
    ]
    with ThreadPoolExecutor(max_workers=settings.THREADS) as executor:
        futures = [
            executor.submit(_class_basis, spec, p, m, class_cfg)
            for spec, class_cfg in zip(classes[1:], class_cfgs)
        ]
        for index, future in enumerate(futures, start=1):
            try:
                bases.append(future.result())
            except SpectralError as e:
                raise SpectralError(
                    f"class {index} of {p}^{m}: {e.reason}", seed=cfg.rng_seed, attempts=e.attempts
                ) from e

    logger.debug("Built %d bases for %d^%d with %s", len(bases), p, m, method.value)
    return MubSet(
        dim=p**m,
        bases=bases,
        method=method,
        meta=MubMeta(
            p=p,
            m=m,
            modulus_poly=poly.to_json(),
            seed=cfg.rng_seed,
            tol=tol,
        ),
    )

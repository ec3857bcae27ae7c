"""Tests for the prime-power construction."""

import itertools

import numpy as np
import pytest

from mubkit.configs.settings import settings
from mubkit.enums import ClassKind, Method
from mubkit.models.family import SymmetricFamily
from mubkit.models.mub_set import MubMeta
from mubkit.models.spectral import SpectralConfig
from mubkit.services.errors import ConstructionError, FieldError, SpectralError
from mubkit.services.finite_field import FpPoly
from mubkit.services.mub_primepower import (
    class_seed,
    family_for,
    primepower_mub,
    realized_classes,
    symmetric_family_from_generators,
    symmetric_family_p2,
    symmetric_family_wf,
    validate_family,
)
from mubkit.services.pauli import enumerate_class, pauli_label, vector_matrix
from mubkit.services.verify import check_mub_set


def as_set(matrices):
    return {tuple(np.asarray(a).reshape(-1).tolist()) for a in matrices}


class TestSymmetricFamilyP2:
    """The quadratic-polynomial family."""

    def test_d4_family_exact(self, d4_family):
        """Test p = 2 reproduces the four reference matrices in order."""
        family = symmetric_family_p2(2)
        assert [a.tolist() for a in family.matrices] == [a.tolist() for a in d4_family]
        assert family.method is Method.P2_QUADRATIC

    def test_d9_family(self):
        """Test x^2 + x + 2 gives [[a, b], [b, a + 2b]]."""
        family = symmetric_family_p2(3, FpPoly((2, 1, 1), 3))
        expected = [[[a, b], [b, (a + 2 * b) % 3]] for b in range(3) for a in range(3)]
        assert [a.tolist() for a in family.matrices] == expected
        assert validate_family(family).passed

    def test_p5(self):
        """Test 25 matrices with 300 nonzero difference determinants."""
        report = validate_family(symmetric_family_p2(5))
        assert len(report.determinants) == 300
        assert report.passed

    def test_rejects_reducible(self):
        """Test a reducible quadratic is refused."""
        with pytest.raises(FieldError):
            symmetric_family_p2(3, FpPoly((2, 0, 1), 3))  # x^2 + 2 = (x+1)(x+2)

    def test_rejects_wrong_field(self):
        """Test a modulus over another field."""
        with pytest.raises(ConstructionError):
            symmetric_family_p2(3, FpPoly((1, 1, 1), 2))


class TestSymmetricFamilyWf:
    """The structure-constant family."""

    def test_m1(self):
        """Test (2, 1, x + 1) gives {[0], [1]}."""
        family = symmetric_family_wf(2, 1, FpPoly((1, 1), 2))
        assert [a.tolist() for a in family.matrices] == [[[0]], [[1]]]

    def test_d4_same_as_p2(self, d4_family):
        """Test the F_4 family equals the reference family as a set."""
        family = symmetric_family_wf(2, 2, FpPoly((1, 1, 1), 2))
        assert as_set(family.matrices) == as_set(d4_family)

    @pytest.mark.parametrize("p, m", [(2, 3), (3, 2), (2, 4), (5, 2), (3, 3)])
    def test_family_valid(self, p, m):
        """Test every generated family passes exhaustively."""
        family = symmetric_family_wf(p, m)
        assert len(family.matrices) == p**m
        report = validate_family(family)
        assert report.passed
        assert len(report.determinants) == p**m * (p**m - 1) // 2

    @pytest.mark.parametrize("p, m", [(2, 2), (2, 3), (3, 2), (2, 4)])
    def test_class_disjointness(self, p, m):
        """Test xA_j != xA_k for every nonzero x and j != k."""
        family = symmetric_family_wf(p, m)
        xs = [np.array(x) for x in itertools.product(range(p), repeat=m) if any(x)]
        for a, b in itertools.combinations(family.matrices, 2):
            for x in xs:
                assert not np.array_equal((x @ a) % p, (x @ b) % p)


class TestValidateFamily:
    """Family reports."""

    def test_d4_passes(self, d4_family):
        """Test the reference d = 4 family."""
        family = SymmetricFamily(p=2, m=2, matrices=d4_family, method=Method.P2_QUADRATIC)
        report = validate_family(family)
        assert report.passed
        assert all(report.symmetric)
        assert report.failures == []

    def test_duplicate_fails(self):
        """Test {0, 0} fails with det 0."""
        zero = np.zeros((1, 1), dtype=np.int64)
        family = SymmetricFamily(p=2, m=1, matrices=[zero, zero], method=Method.WOOTTERS_FIELDS)
        report = validate_family(family)
        assert not report.passed
        assert report.failures[0].det == 0

    def test_non_symmetric_fails(self):
        """Test a non-symmetric member is flagged."""
        family = SymmetricFamily(
            p=2,
            m=2,
            matrices=[np.zeros((2, 2)), np.array([[1, 1], [0, 1]])],
            method=Method.WOOTTERS_FIELDS,
        )
        report = validate_family(family)
        assert report.symmetric == [True, False]
        assert not report.passed

    def test_d8_family(self, d8_generators):
        """Test the d = 8 example family: 8 matrices, 28 nonzero determinants."""
        family = symmetric_family_from_generators(2, 3, d8_generators)
        report = validate_family(family)
        assert len(family.matrices) == 8
        assert len(report.determinants) == 28
        assert report.passed

    def test_d8_generators_span_explicit_family(self, d8_family, d8_generators):
        """Test the three generators span exactly A_1..A_8."""
        family = symmetric_family_from_generators(2, 3, d8_generators)
        assert as_set(family.matrices) == as_set(d8_family)

    def test_d8_explicit_family(self, d8_family):
        """Test A_1..A_8 as listed are symmetric with 28 nonzero determinants."""
        family = SymmetricFamily(p=2, m=3, matrices=d8_family, method=Method.WOOTTERS_FIELDS)
        report = validate_family(family)
        assert report.passed
        assert all(report.symmetric)
        assert len(report.determinants) == 28
        assert all(pair.det == 1 for pair in report.determinants)

    def test_generator_shape(self):
        """Test generators of the wrong order are rejected."""
        with pytest.raises(ConstructionError):
            symmetric_family_from_generators(2, 3, [np.eye(2)])


class TestRealizedClasses:
    """Classes of the d = 4 construction."""

    def test_d4_classes(self, d4_family):
        """Test C_0..C_4 as operator sets."""
        family = SymmetricFamily(p=2, m=2, matrices=d4_family, method=Method.P2_QUADRATIC)
        classes = realized_classes(family)
        assert classes[0].kind is ClassKind.Z_CLASS
        got = [{pauli_label(v) for v in enumerate_class(c, 2, 2)} - {"I⊗I"} for c in classes]
        assert got == [
            {"Z⊗I", "I⊗Z", "Z⊗Z"},
            {"X⊗I", "I⊗X", "X⊗X"},
            {"Y⊗I", "I⊗Y", "Y⊗Y"},
            {"X⊗Z", "Z⊗Y", "Y⊗X"},
            {"Y⊗Z", "Z⊗X", "X⊗Y"},
        ]

    @pytest.mark.parametrize("p, m", [(2, 2), (3, 2), (2, 3)])
    def test_operator_basis_complete(self, p, m):
        """Test the classes cover all p^{2m} vectors exactly once (identity shared)."""
        classes = realized_classes(symmetric_family_wf(p, m))
        vectors = [v for c in classes for v in enumerate_class(c, p, m) if not v.is_identity()]
        d = p**m
        assert len(vectors) == (d + 1) * (d - 1)
        assert len({(v.alpha, v.beta) for v in vectors}) == d * d - 1


class TestFamilyFor:
    """Rebuilding families from metadata."""

    def test_p2(self, d4_family):
        """Test P2 metadata rebuilds the reference family."""
        meta = MubMeta(p=2, m=2, modulus_poly=[1, 1, 1], tol=1e-8)
        family = family_for(meta, Method.P2_QUADRATIC)
        assert [a.tolist() for a in family.matrices] == [a.tolist() for a in d4_family]

    def test_prime(self):
        """Test the prime construction maps to scalars 0..p-1."""
        family = family_for(MubMeta(p=3, m=1, tol=1e-8), Method.PRIME_FORMULA)
        assert [a.tolist() for a in family.matrices] == [[[0]], [[1]], [[2]]]

    def test_wf_default_modulus(self):
        """Test missing modulus falls back to find_irreducible."""
        family = family_for(MubMeta(p=2, m=3, tol=1e-8), Method.WOOTTERS_FIELDS)
        assert len(family.matrices) == 8


class TestPrimepowerMub:
    """End-to-end construction."""

    def test_d4(self, mub4):
        """Test 5 bases with every cross Gram modulus 1/2."""
        assert len(mub4.bases) == 5
        assert mub4.method is Method.P2_QUADRATIC
        assert mub4.meta.modulus_poly == [1, 1, 1]
        for i, j in itertools.combinations(range(5), 2):
            gram = np.abs(mub4.bases[i].conj().T @ mub4.bases[j])
            np.testing.assert_allclose(gram, 0.5, atol=1e-9)

    def test_d4_basis0_is_standard_up_to_order(self, mub4):
        """Test basis 0 is a permutation of the standard basis."""
        b0 = mub4.bases[0]
        assert sorted(np.argmax(np.abs(b0), axis=0).tolist()) == [0, 1, 2, 3]
        np.testing.assert_array_equal(np.abs(b0).sum(axis=0), np.ones(4))

    def test_bases_diagonalize_classes(self, mub4):
        """Test basis j diagonalizes every operator of class j."""
        classes = realized_classes(symmetric_family_p2(2))
        for basis, spec in zip(mub4.bases, classes):
            for v in enumerate_class(spec, 2, 2):
                m = basis.conj().T @ vector_matrix(v) @ basis
                assert np.max(np.abs(m - np.diag(np.diag(m)))) <= 1e-10

    def test_d9(self, mub9):
        """Test 10 bases, 45 pairs unbiased with modulus 1/3."""
        assert len(mub9.bases) == 10
        for i, j in itertools.combinations(range(10), 2):
            gram = np.abs(mub9.bases[i].conj().T @ mub9.bases[j])
            np.testing.assert_allclose(gram, 1 / 3, atol=1e-9)

    def test_methods_agree_on_d4(self):
        """Test P2 and WF both pass at d = 4."""
        p2 = primepower_mub(2, 2, Method.P2_QUADRATIC)
        wf = primepower_mub(2, 2, Method.WOOTTERS_FIELDS)
        assert check_mub_set(p2, 1e-8).passed
        assert check_mub_set(wf, 1e-8).passed
        assert as_set(symmetric_family_p2(2).matrices) == as_set(
            symmetric_family_wf(2, 2).matrices
        )

    @pytest.mark.slow
    @pytest.mark.parametrize("p, m", [(2, 2), (2, 3), (3, 2), (2, 4), (5, 2), (3, 3)])
    def test_passes_verification(self, p, m):
        """Test p^m + 1 bases at tol 1e-8."""
        mub_set = primepower_mub(p, m)
        assert len(mub_set.bases) == p**m + 1
        assert check_mub_set(mub_set, 1e-8).passed

    def test_m1_delegates(self):
        """Test m = 1 uses the prime formula."""
        assert primepower_mub(5, 1).method is Method.PRIME_FORMULA

    def test_p2_requires_m2(self):
        """Test P2_QUADRATIC only for m = 2."""
        with pytest.raises(ConstructionError):
            primepower_mub(2, 3, Method.P2_QUADRATIC)

    def test_rejects_bad_m(self):
        """Test m must be positive."""
        with pytest.raises(ConstructionError):
            primepower_mub(2, 0)

    @pytest.mark.parametrize("m", [1, 2])
    def test_rejects_zero_tol(self, mocker, m):
        """Test tol = 0 fails before any class is diagonalized."""
        diagonalize = mocker.patch("mubkit.services.mub_primepower.joint_eigenbasis")
        with pytest.raises(ConstructionError, match="tolerance"):
            primepower_mub(2, m, tol=0.0)
        diagonalize.assert_not_called()

    def test_deterministic_across_thread_counts(self, mocker):
        """Test the output does not depend on MUBKIT_THREADS."""
        cfg = SpectralConfig(rng_seed=42)
        single = primepower_mub(3, 2, cfg=cfg)
        mocker.patch.object(settings, "THREADS", 4)
        parallel = primepower_mub(3, 2, cfg=cfg)
        for a, b in zip(single.bases, parallel.bases):
            np.testing.assert_array_equal(a, b)

    def test_spectral_failure_reports_base_seed(self, mocker):
        """Test a class failure is re-raised with the base seed."""
        mocker.patch(
            "mubkit.services.mub_primepower.joint_eigenbasis",
            side_effect=SpectralError("stuck", seed=123, attempts=8),
        )
        with pytest.raises(SpectralError) as excinfo:
            primepower_mub(2, 2, cfg=SpectralConfig(rng_seed=9))
        assert excinfo.value.seed == 9
        assert excinfo.value.attempts == 8
        assert "class 1" in str(excinfo.value)

    def test_class_seed(self):
        """Test per-class seeds are stable and distinct."""
        assert class_seed(0, 1) == class_seed(0, 1)
        assert class_seed(0, 1) != class_seed(0, 2)
        assert 0 <= class_seed(2**64 - 1, 3) < 2**64

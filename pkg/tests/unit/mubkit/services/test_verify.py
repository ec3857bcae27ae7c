"""Tests for MUB and operator-class verification."""

import itertools

import numpy as np
import pytest

from mubkit.configs.settings import settings
from mubkit.enums import Method
from mubkit.models.mub_set import MubMeta, MubSet
from mubkit.services.errors import VerificationError
from mubkit.services.mub_prime import prime_class_ops, prime_mub
from mubkit.services.mub_primepower import realized_classes, symmetric_family_p2
from mubkit.services.pauli import class_matrices
from mubkit.services.verify import (
    check_commuting_class,
    check_mub_set,
    check_orthogonal_classes,
    check_orthonormal,
    check_unbiased_pair,
    merge_reports,
    mub_to_classes,
    root_of_unity_sum,
)


def random_unitary(d: int, seed: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    z = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    q, _ = np.linalg.qr(z)
    return q


def mub_set_of(bases, p, m, method=Method.WOOTTERS_FIELDS):
    return MubSet(
        dim=p**m,
        bases=bases,
        method=method,
        meta=MubMeta(p=p, m=m, tol=1e-8),
    )


class TestCheckOrthonormal:
    """Single-basis orthonormality."""

    def test_standard_basis(self):
        """Test the identity has zero deviation."""
        report = check_orthonormal(np.eye(3), 1e-12)
        assert report.passed
        assert report.check("orthonormal").worst_deviation == 0.0

    def test_duplicated_column(self):
        """Test a repeated vector fails at the off-diagonal entry."""
        basis = np.array([[1, 1], [0, 0]], dtype=complex)
        record = check_orthonormal(basis, 1e-8).check("orthonormal")
        assert not record.passed
        assert record.worst_deviation == pytest.approx(1.0)
        assert record.location == [0, 1]


class TestCheckUnbiasedPair:
    """Pairwise unbiasedness."""

    def test_standard_and_fourier(self, mub3):
        """Test the standard and Fourier bases are unbiased."""
        assert check_unbiased_pair(mub3.bases[0], mub3.bases[1], 1e-12).passed

    def test_self_fails(self):
        """Test a basis is not unbiased with itself; the zero overlap is worst."""
        record = check_unbiased_pair(np.eye(2), np.eye(2), 1e-8).check("unbiased")
        assert not record.passed
        assert record.worst_deviation == pytest.approx(1 / np.sqrt(2))
        assert record.location == [0, 1]

    @pytest.mark.parametrize("seed", range(5))
    def test_random_pairs_fail(self, seed):
        """Test random unitaries are not unbiased, in either order."""
        u, v = random_unitary(4, seed), random_unitary(4, seed + 100)
        forward = check_unbiased_pair(u, v, 1e-6)
        backward = check_unbiased_pair(v, u, 1e-6)
        assert not forward.passed
        assert forward.checks[0].worst_deviation == pytest.approx(
            backward.checks[0].worst_deviation
        )

    def test_shape_mismatch(self):
        """Test different dimensions give a structural failure."""
        report = check_unbiased_pair(np.eye(2), np.eye(3), 1e-8)
        assert not report.passed
        assert report.checks[0].structural


class TestCheckMubSet:
    """Whole-set certification."""

    def test_prime_7(self):
        """Test the d = 7 set passes with exhaustive coverage."""
        report = check_mub_set(prime_mub(7), 1e-9)
        assert report.passed
        assert report.coverage == 1.0
        assert report.check("unbiased").count == 28
        assert report.check("orthonormal").count == 8

    def test_default_tolerance_from_meta(self, mub2):
        """Test the tolerance defaults to the set's own."""
        assert check_mub_set(mub2).tolerance == mub2.meta.tol

    @pytest.mark.parametrize("p", [2, 3])
    def test_too_many_bases(self, p):
        """Test d + 2 bases fail the cardinality check."""
        base = prime_mub(p)
        bases = list(base.bases) + [random_unitary(p, 7)]
        report = check_mub_set(mub_set_of(bases, p, 1), 1e-8)
        record = report.check("cardinality")
        assert not report.passed
        assert record.structural
        assert not record.passed
        assert record.count == p + 2

    def test_too_many_bases_d4(self, mub4):
        """Test six bases in C^4 are rejected."""
        bases = list(mub4.bases) + [random_unitary(4, 3)]
        report = check_mub_set(mub_set_of(bases, 2, 2), 1e-8)
        assert not report.check("cardinality").passed

    def test_scaled_vector(self, mub2):
        """Test a vector scaled by 1.01 fails orthonormality by about 2e-2."""
        bases = [b.copy() for b in mub2.bases]
        bases[1][:, 0] *= 1.01
        report = check_mub_set(mub_set_of(bases, 2, 1, Method.PRIME_FORMULA), 1e-8)
        record = report.check("orthonormal")
        assert not record.passed
        assert record.worst_deviation == pytest.approx(0.0201, abs=1e-6)
        assert record.location[0] == 1

    def test_location_of_biased_pair(self, mub3):
        """Test the worst unbiased entry names the offending pair."""
        bases = list(mub3.bases)
        bases[3] = bases[1]
        record = check_mub_set(mub_set_of(bases, 3, 1), 1e-8).check("unbiased")
        assert not record.passed
        assert record.location[:2] == [1, 3]

    def test_sampling_above_threshold(self, mocker, mub3):
        """Test only a sample of pairs is examined above EXHAUSTIVE_MAX_DIM."""
        mocker.patch.object(settings, "EXHAUSTIVE_MAX_DIM", 2)
        mocker.patch.object(settings, "SPOT_CHECK_PAIRS", 4)
        report = check_mub_set(mub3, 1e-9)
        assert report.passed
        assert report.check("unbiased").count == 4
        assert report.coverage == pytest.approx(4 / 6)

    def test_exhaustive_override(self, mocker, mub3):
        """Test exhaustive=True checks every pair regardless of d."""
        mocker.patch.object(settings, "EXHAUSTIVE_MAX_DIM", 2)
        mocker.patch.object(settings, "SPOT_CHECK_PAIRS", 4)
        report = check_mub_set(mub3, 1e-9, exhaustive=True)
        assert report.coverage == 1.0
        assert report.check("unbiased").count == 6

    def test_thread_count_does_not_change_result(self, mocker, mub4):
        """Test the report is the same with several workers."""
        single = check_mub_set(mub4, 1e-8)
        mocker.patch.object(settings, "THREADS", 3)
        assert check_mub_set(mub4, 1e-8) == single


class TestMubToClasses:
    """Commuting unitary classes from a MUB set."""

    def test_standard_basis_t1(self, mub3):
        """Test U_1 of the standard basis is diag(ω, ω^2, ω^3)."""
        classes = mub_to_classes(mub3)
        omega = np.exp(2j * np.pi / 3)
        np.testing.assert_allclose(classes[0][1], np.diag([omega, omega**2, 1]), atol=1e-12)
        np.testing.assert_array_equal(classes[0][0], np.eye(3))

    def test_shape(self, mub3):
        """Test d + 1 classes of d members."""
        classes = mub_to_classes(mub3)
        assert len(classes) == 4
        assert all(len(members) == 3 for members in classes)

    def test_members_commute_and_are_unitary(self, mub4):
        """Test every class is a commuting family of unitaries."""
        for members in mub_to_classes(mub4):
            for u in members:
                np.testing.assert_allclose(u.conj().T @ u, np.eye(4), atol=1e-10)
            for a, b in itertools.combinations(members, 2):
                assert np.max(np.abs(a @ b - b @ a)) <= 1e-10

    def test_prime_classes_are_pauli_powers(self, mub3):
        """Test U_{j,1} is a phase times Z_3 or a power of X_3 Z_3^k."""
        classes = mub_to_classes(mub3)
        for members, op in zip(classes, prime_class_ops(3)):
            overlaps = [
                abs(np.vdot(np.linalg.matrix_power(op, e), members[1])) for e in (1, 2)
            ]
            assert max(overlaps) == pytest.approx(3.0)

    def test_d4_classes_span_pauli_classes(self, mub4):
        """Test each derived class spans the same operators as C_0..C_4."""
        pauli_classes = realized_classes(symmetric_family_p2(2))
        for members, spec in zip(mub_to_classes(mub4), pauli_classes):
            stacked = np.stack([u.reshape(-1) for u in members])
            paulis = np.stack([v.reshape(-1) for v in class_matrices(spec, 2, 2)])
            gram = stacked.conj() @ paulis.T
            # gram / 4 is unitary iff the spans agree
            np.testing.assert_allclose(gram @ gram.conj().T, 16 * np.eye(4), atol=1e-9)

    def test_unverified_rejected(self):
        """Test a set with a repeated basis is refused."""
        mub_set = mub_set_of([np.eye(2), np.eye(2)], 2, 1)
        with pytest.raises(VerificationError) as excinfo:
            mub_to_classes(mub_set)
        assert not excinfo.value.report.passed


class TestCheckOrthogonalClasses:
    """Trace-orthogonal operator bases."""

    @pytest.mark.parametrize("d, expected", [(3, 9), (5, 25)])
    def test_prime_count(self, d, expected):
        """Test 1 + (d+1)(d-1) = d^2 matrices, all orthogonal."""
        report = check_orthogonal_classes(mub_to_classes(prime_mub(d)), 1e-9)
        assert report.passed
        assert report.check("count").count == expected
        assert report.check("orthogonal").worst_deviation <= 1e-9

    def test_d4(self, mub4):
        """Test the d = 4 classes give 16 orthogonal matrices."""
        report = check_orthogonal_classes(mub_to_classes(mub4), 1e-9)
        assert report.passed
        assert report.check("count").count == 16

    def test_non_orthogonal(self):
        """Test Z and Z repeated across classes fail."""
        z = np.diag([1, -1]).astype(complex)
        report = check_orthogonal_classes([[np.eye(2), z], [np.eye(2), z]], 1e-9)
        assert not report.check("orthogonal").passed

    def test_empty(self):
        """Test no classes is trivially fine."""
        assert check_orthogonal_classes([], 1e-9).passed


class TestCheckCommutingClass:
    """A single commuting class."""

    def test_diagonal_class(self):
        """Test {1, Z} passes."""
        z = np.diag([1, -1]).astype(complex)
        assert check_commuting_class([np.eye(2), z], 1e-12).passed

    def test_too_many_members(self):
        """Test more than d members fails structurally."""
        z = np.diag([1, -1]).astype(complex)
        report = check_commuting_class([np.eye(2), z, -z], 1e-12)
        assert not report.check("class_size").passed
        assert not report.passed

    def test_non_commuting(self):
        """Test {X, Z} fails the commutator check at [0, 1]."""
        x = np.array([[0, 1], [1, 0]], dtype=complex)
        z = np.diag([1, -1]).astype(complex)
        record = check_commuting_class([x, z], 1e-12).check("commuting")
        assert not record.passed
        assert record.location == [0, 1]


class TestRootOfUnitySum:
    """Σ_k exp(2πi mk/n)."""

    def test_vanishes(self):
        """Test the sum is zero for 0 < m < n <= 64."""
        for n in range(2, 65):
            for m in range(1, n):
                assert abs(root_of_unity_sum(m, n)) <= 1e-9

    @pytest.mark.parametrize("n", [1, 2, 7, 64])
    def test_m_equals_n(self, n):
        """Test every term is one when n divides m."""
        assert root_of_unity_sum(n, n) == pytest.approx(n)

    def test_rejects_non_positive_n(self):
        """Test n must be positive."""
        with pytest.raises(ValueError):
            root_of_unity_sum(1, 0)


class TestMergeReports:
    """Combining reports."""

    def test_merge(self, mub3):
        """Test checks are concatenated and coverage is the minimum."""
        first = check_mub_set(mub3, 1e-9)
        second = check_orthogonal_classes(mub_to_classes(mub3, 1e-9), 1e-9)
        merged = merge_reports([first, second])
        assert merged.passed
        assert len(merged.checks) == len(first.checks) + len(second.checks)

    def test_tolerance_mismatch(self, mub3):
        """Test reports at different tolerances cannot be merged."""
        with pytest.raises(ValueError):
            merge_reports([check_mub_set(mub3, 1e-9), check_mub_set(mub3, 1e-8)])

    def test_empty(self):
        """Test merging nothing is an error."""
        with pytest.raises(ValueError):
            merge_reports([])

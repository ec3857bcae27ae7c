"""Generalized Pauli operators on (C^p)^{⊗m}.

An operator ω^j X_p(α) Z_p(β) is stored as its exponent vector (α|β) in
F_p^{2m} plus the phase exponent j. The matrix realization is

    X_p(α) Z_p(β) = Σ_a ω^{a·β} |a+α⟩⟨a|,   ω = exp(2πi/p),

with computational-basis index a = (a_1, ..., a_m) read as a base-p number,
a_1 most significant.
"""

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from mubkit.configs.settings import settings
from mubkit.enums import ClassKind
from mubkit.services.errors import PauliError
from mubkit.services.finite_field import is_symmetric, require_prime
from mubkit.services.utils import format_digits

_QUBIT_LABELS: Dict[Tuple[int, int], str] = {
    (0, 0): "I",
    (1, 0): "X",
    (0, 1): "Z",
    (1, 1): "Y",
}


@dataclass(frozen=True)
class SymplecticVector:
    """Exponent vector (α|β) of X_p(α) Z_p(β)."""

    alpha: Tuple[int, ...]
    beta: Tuple[int, ...]
    p: int

    def __post_init__(self):
        require_prime(self.p)
        object.__setattr__(self, "alpha", tuple(int(a) for a in self.alpha))
        object.__setattr__(self, "beta", tuple(int(b) for b in self.beta))
        if len(self.alpha) != len(self.beta):
            raise PauliError(
                f"alpha and beta lengths differ: {len(self.alpha)} vs {len(self.beta)}"
            )
        if any(not 0 <= v < self.p for v in self.alpha + self.beta):
            raise PauliError(f"entries must be residues modulo {self.p}")

    @classmethod
    def of(cls, alpha: Sequence[int], beta: Sequence[int], p: int) -> "SymplecticVector":
        """Build a vector, reducing entries modulo p."""
        return cls(
            tuple(int(a) % p for a in alpha), tuple(int(b) % p for b in beta), p
        )

    @property
    def m(self) -> int:
        """Number of tensor factors."""
        return len(self.alpha)

    def is_identity(self) -> bool:
        """True for (0|0)."""
        return not any(self.alpha) and not any(self.beta)

    def __add__(self, other: "SymplecticVector") -> "SymplecticVector":
        _require_compatible(self, other)
        return SymplecticVector.of(
            [a + b for a, b in zip(self.alpha, other.alpha)],
            [a + b for a, b in zip(self.beta, other.beta)],
            self.p,
        )

    def to_json(self) -> Dict[str, object]:
        """JSON form {alpha, beta, p}."""
        return {"alpha": list(self.alpha), "beta": list(self.beta), "p": self.p}

    def format(self) -> str:
        """'k_1..k_m|l_1..l_m' digits, as in class tables."""
        return f"{format_digits(self.alpha, self.p)}|{format_digits(self.beta, self.p)}"


@dataclass(frozen=True)
class PauliOp:
    """ω^phase_exp X_p(α) Z_p(β)."""

    vector: SymplecticVector
    phase_exp: int = 0

    def __post_init__(self):
        object.__setattr__(self, "phase_exp", int(self.phase_exp) % self.vector.p)

    @property
    def p(self) -> int:
        return self.vector.p

    @property
    def m(self) -> int:
        return self.vector.m

    def multiply(self, other: "PauliOp") -> "PauliOp":
        """Operator product self · other.

        Z(β) X(α') = ω^{α'·β} X(α') Z(β), so the product picks up that phase.
        """
        u, v = self.vector, other.vector
        _require_compatible(u, v)
        phase = self.phase_exp + other.phase_exp + _dot(v.alpha, u.beta)
        return PauliOp(u + v, phase)

    def __matmul__(self, other: "PauliOp") -> "PauliOp":
        return self.multiply(other)


@dataclass(frozen=True)
class ClassSpec:
    """Generator of a linear commuting class: (0_m | 1_m) or (1_m | A)."""

    kind: ClassKind
    A: Optional[Tuple[Tuple[int, ...], ...]] = field(default=None)

    def __post_init__(self):
        object.__setattr__(self, "kind", ClassKind(self.kind))
        if self.kind is ClassKind.Z_CLASS:
            if self.A is not None:
                raise PauliError("Z_CLASS takes no matrix")
            return
        if self.A is None:
            raise PauliError("X_CLASS requires a matrix A")
        matrix = np.asarray(self.A, dtype=np.int64)
        if not is_symmetric(matrix):
            raise PauliError(f"class matrix must be symmetric, got {matrix.tolist()}")
        object.__setattr__(self, "A", tuple(tuple(int(v) for v in row) for row in matrix))

    @classmethod
    def z_class(cls) -> "ClassSpec":
        """The class (0_m | 1_m) of diagonal operators."""
        return cls(ClassKind.Z_CLASS)

    @classmethod
    def x_class(cls, matrix: np.ndarray) -> "ClassSpec":
        """The class (1_m | A) for a symmetric A."""
        return cls(ClassKind.X_CLASS, tuple(map(tuple, np.asarray(matrix).tolist())))

    @property
    def matrix(self) -> Optional[np.ndarray]:
        """A as an int64 array, None for Z_CLASS."""
        if self.A is None:
            return None
        return np.array(self.A, dtype=np.int64)

    def to_json(self) -> Dict[str, object]:
        """JSON form with A as nested lists or null."""
        return {
            "kind": self.kind.value,
            "A": None if self.A is None else [list(row) for row in self.A],
        }


def _dot(x: Sequence[int], y: Sequence[int]) -> int:
    """Integer dot product, not reduced."""
    return sum(a * b for a, b in zip(x, y))


def _require_compatible(u: SymplecticVector, v: SymplecticVector) -> None:
    """Both vectors must share p and m."""
    if u.p != v.p or u.m != v.m:
        raise PauliError(
            f"dimension mismatch: (p={u.p}, m={u.m}) vs (p={v.p}, m={v.m})"
        )


def weyl_phase(u: SymplecticVector, v: SymplecticVector) -> int:
    """(α·β' - α'·β) mod p, the exponent in U_v U_u = ω^k U_u U_v."""
    _require_compatible(u, v)
    return (_dot(u.alpha, v.beta) - _dot(v.alpha, u.beta)) % u.p


def commutes(u: SymplecticVector, v: SymplecticVector) -> bool:
    """True iff α·β' - α'·β ≡ 0 (mod p)."""
    return weyl_phase(u, v) == 0


@lru_cache(maxsize=64)
def omega_powers(p: int) -> np.ndarray:
    """ω^k for k = 0..p-1 with ω = exp(2πi/p); axis values are exact."""
    powers = np.exp(2j * np.pi * np.arange(p) / p)
    re, im = powers.real.copy(), powers.imag.copy()
    re[np.abs(re) < 1e-15] = 0.0
    im[np.abs(im) < 1e-15] = 0.0
    out = re + 1j * im
    out.setflags(write=False)
    return out


@lru_cache(maxsize=64)
def _digits(p: int, m: int) -> np.ndarray:
    """Base-p digits of 0..p^m-1, most significant first, shape (p^m, m)."""
    d = p**m
    idx = np.arange(d)
    out = np.empty((d, m), dtype=np.int64)
    for i in range(m):
        out[:, i] = (idx // p ** (m - 1 - i)) % p
    out.setflags(write=False)
    return out


def _require_storage(p: int, m: int) -> int:
    """p^m, provided a dense d x d matrix is allowed."""
    d = p**m
    if d > settings.MAX_MATRIX_DIM:
        raise PauliError(
            f"dimension {p}^{m} = {d} exceeds the dense-matrix bound {settings.MAX_MATRIX_DIM}"
        )
    return d


def to_matrix(op: PauliOp, p: int, m: int) -> np.ndarray:
    """Dense d x d realization of ω^j X_p(α) Z_p(β).

    Args:
        op: The operator.
        p: The characteristic it must be defined over.
        m: The number of tensor factors.

    Returns:
        A complex128 monomial matrix with a single root of unity per column.

    Raises:
        PauliError: If op does not match (p, m) or p^m exceeds MAX_MATRIX_DIM.
    """
    if op.p != p or op.m != m:
        raise PauliError(f"operator over (p={op.p}, m={op.m}) used as (p={p}, m={m})")
    d = _require_storage(p, m)
    digits = _digits(p, m)
    alpha = np.array(op.vector.alpha, dtype=np.int64)
    beta = np.array(op.vector.beta, dtype=np.int64)
    weights = p ** np.arange(m - 1, -1, -1, dtype=np.int64)

    rows = ((digits + alpha) % p) @ weights
    phases = (digits @ beta + op.phase_exp) % p

    matrix = np.zeros((d, d), dtype=np.complex128)
    matrix[rows, np.arange(d)] = omega_powers(p)[phases]
    return matrix


def vector_matrix(vector: SymplecticVector) -> np.ndarray:
    """to_matrix for a phase-free operator."""
    return to_matrix(PauliOp(vector), vector.p, vector.m)


def trace_inner(a: np.ndarray, b: np.ndarray) -> complex:
    """Tr(A†B)."""
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != b.shape:
        raise PauliError(f"dimension mismatch: {a.shape} vs {b.shape}")
    return complex(np.vdot(a, b))


def _x_vectors(p: int, m: int) -> Iterator[Tuple[int, ...]]:
    """All x in F_p^m, lexicographic."""
    return itertools.product(range(p), repeat=m)


def enumerate_class(spec: ClassSpec, p: int, m: int) -> List[SymplecticVector]:
    """The p^m vectors of a linear class, x in lexicographic order, identity first.

    Z_CLASS gives (0|x), X_CLASS(A) gives (x | xA).

    Args:
        spec: The class generator.
        p: The characteristic.
        m: The number of tensor factors.

    Returns:
        p^m vectors, pairwise commuting.

    Raises:
        PauliError: If A is not an m x m matrix of residues modulo p.
    """
    require_prime(p)
    if spec.kind is ClassKind.Z_CLASS:
        zero = (0,) * m
        return [SymplecticVector(zero, x, p) for x in _x_vectors(p, m)]

    a = spec.matrix
    if a.shape != (m, m):
        raise PauliError(f"class matrix has shape {a.shape}, expected ({m}, {m})")
    if np.any(a < 0) or np.any(a >= p):
        raise PauliError(f"class matrix entries must be residues modulo {p}")
    return [
        SymplecticVector(x, tuple(int(v) for v in (np.array(x, dtype=np.int64) @ a) % p), p)
        for x in _x_vectors(p, m)
    ]


def class_matrices(
    spec: ClassSpec, p: int, m: int, include_identity: bool = True
) -> List[np.ndarray]:
    """Dense matrices of every operator in a class, in enumerate_class order.

    Args:
        spec: The class generator.
        p: The characteristic.
        m: The number of tensor factors.
        include_identity: Keep the leading identity.

    Returns:
        p^m matrices, or p^m - 1 without the identity.
    """
    vectors = enumerate_class(spec, p, m)
    if not include_identity:
        vectors = [v for v in vectors if not v.is_identity()]
    return [vector_matrix(v) for v in vectors]


def class_generators(spec: ClassSpec, p: int, m: int) -> np.ndarray:
    """The m x 2m generator matrix (0_m | 1_m) or (1_m | A)."""
    eye = np.eye(m, dtype=np.int64)
    if spec.kind is ClassKind.Z_CLASS:
        return np.hstack([np.zeros((m, m), dtype=np.int64), eye])
    return np.hstack([eye, spec.matrix % p])


def all_vectors(p: int, m: int) -> List[SymplecticVector]:
    """Every vector of F_p^{2m}, i.e. the exponents of P_0(p, m), lexicographic in (α|β)."""
    require_prime(p)
    return [
        SymplecticVector(v[:m], v[m:], p)
        for v in itertools.product(range(p), repeat=2 * m)
    ]


def _qudit_token(k: int, ell: int) -> str:
    """'X^kZ^l' for one qudit factor, 'I' for the identity."""
    if not k and not ell:
        return "I"
    token = ""
    if k:
        token += "X" if k == 1 else f"X^{k}"
    if ell:
        token += "Z" if ell == 1 else f"Z^{ell}"
    return token


def pauli_label(vector: SymplecticVector) -> str:
    """Tensor-factor label, e.g. 'Y⊗Z' for p = 2 or 'XZ^2⊗I' for p = 3.

    For p = 2, Y stands for XZ = [[0, -1], [1, 0]].
    """
    pairs = zip(vector.alpha, vector.beta)
    if vector.p == 2:
        return "⊗".join(_QUBIT_LABELS[pair] for pair in pairs)
    return "⊗".join(_qudit_token(k, ell) for k, ell in pairs)

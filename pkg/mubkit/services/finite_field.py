"""Exact arithmetic in F_p and F_{p^m}.

Polynomials over F_p are coefficient tuples, lowest degree first, with the
zero polynomial represented by the empty tuple. F_{p^m} is realized as
F_p[x] / (f) for a monic irreducible f of degree m, and its elements are
coordinate vectors with respect to the power basis 1, γ, ..., γ^{m-1} of a
root γ of f.
"""

import itertools
import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, List, Optional, Sequence, Tuple

import numpy as np

from mubkit.configs.settings import settings
from mubkit.enums import FieldOp
from mubkit.services.errors import FieldError

logger = logging.getLogger(__name__)


@lru_cache(maxsize=None)
def is_prime(n: int) -> bool:
    """Trial-division primality test."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def require_prime(p: int) -> int:
    """Check that p is a prime within settings.MAX_PRIME.

    Args:
        p: Candidate characteristic.

    Returns:
        p as a plain int.

    Raises:
        FieldError: If p is not a prime integer within the bound.
    """
    if not isinstance(p, (int, np.integer)) or isinstance(p, bool):
        raise FieldError(f"modulus must be an integer, got {type(p).__name__}")
    p = int(p)
    if p > settings.MAX_PRIME:
        raise FieldError(f"prime {p} exceeds the supported bound {settings.MAX_PRIME}")
    if not is_prime(p):
        raise FieldError(f"{p} is not prime")
    return p


def factorize(n: int) -> List[Tuple[int, int]]:
    """Prime factorization by trial division.

    Args:
        n: A positive integer; 1 factorizes as the empty list.

    Returns:
        [(prime, exponent), ...] in ascending order of prime.

    Raises:
        FieldError: If n < 1.
    """
    if n < 1:
        raise FieldError(f"cannot factorize {n}")
    factors: List[Tuple[int, int]] = []
    f = 2
    while f * f <= n:
        e = 0
        while n % f == 0:
            n //= f
            e += 1
        if e:
            factors.append((f, e))
        f += 1 if f == 2 else 2
    if n > 1:
        factors.append((n, 1))
    return factors


def prime_power(n: int) -> Optional[Tuple[int, int]]:
    """(p, m) with n = p^m, or None when n is not a prime power."""
    if n < 2:
        return None
    factors = factorize(n)
    if len(factors) != 1:
        return None
    return factors[0]


@dataclass(frozen=True)
class FieldElement:
    """An element of F_p."""

    value: int
    modulus: int

    def __post_init__(self):
        require_prime(self.modulus)
        if not 0 <= self.value < self.modulus:
            raise FieldError(f"{self.value} is not a residue modulo {self.modulus}")

    @classmethod
    def of(cls, value: int, modulus: int) -> "FieldElement":
        """Reduce any integer into F_modulus."""
        return cls(int(value) % modulus, modulus)

    def __add__(self, other: "FieldElement") -> "FieldElement":
        return fp_arith(self, other, FieldOp.ADD)

    def __sub__(self, other: "FieldElement") -> "FieldElement":
        return fp_arith(self, other, FieldOp.SUB)

    def __mul__(self, other: "FieldElement") -> "FieldElement":
        return fp_arith(self, other, FieldOp.MUL)

    def __truediv__(self, other: "FieldElement") -> "FieldElement":
        return fp_arith(self, other, FieldOp.DIV)

    def __int__(self) -> int:
        return self.value


def fp_arith(a: FieldElement, b: FieldElement, kind: FieldOp) -> FieldElement:
    """Exact arithmetic in F_p.

    Args:
        a: Left operand.
        b: Right operand over the same prime.
        kind: Which of the four operations to apply.

    Returns:
        The result as a FieldElement.

    Raises:
        FieldError: On a modulus mismatch or division by zero.
    """
    if a.modulus != b.modulus:
        raise FieldError(f"modulus mismatch: {a.modulus} vs {b.modulus}")
    p = a.modulus
    kind = FieldOp(kind)
    if kind is FieldOp.ADD:
        return FieldElement((a.value + b.value) % p, p)
    if kind is FieldOp.SUB:
        return FieldElement((a.value - b.value) % p, p)
    if kind is FieldOp.MUL:
        return FieldElement((a.value * b.value) % p, p)
    if b.value == 0:
        raise FieldError("division by zero in F_%d" % p)
    return FieldElement((a.value * pow(b.value, -1, p)) % p, p)


def _trim(coeffs: Sequence[int], p: int) -> Tuple[int, ...]:
    """Reduce mod p and drop leading zeros."""
    values = [int(c) % p for c in coeffs]
    while values and values[-1] == 0:
        values.pop()
    return tuple(values)


@dataclass(frozen=True)
class FpPoly:
    """Polynomial over F_p, coefficients lowest degree first."""

    coeffs: Tuple[int, ...]
    p: int

    def __post_init__(self):
        require_prime(self.p)
        object.__setattr__(self, "coeffs", _trim(self.coeffs, self.p))

    @classmethod
    def from_coefficients(cls, coeffs: Sequence[int], p: int) -> "FpPoly":
        """Build from any integer coefficients, lowest first."""
        return cls(tuple(coeffs), p)

    @classmethod
    def parse(cls, text: str, p: int) -> "FpPoly":
        """Parse the command-line form 'c0,c1,...,cn', lowest degree first.

    Args:
        text: Comma-separated coefficients, e.g. "2,1,1" for x^2 + x + 2.
        p: The characteristic.

    Returns:
        The parsed polynomial.

    Raises:
        FieldError: If a coefficient is not an integer in [0, p).
    """
        try:
            coeffs = [int(part) for part in text.split(",") if part.strip()]
        except ValueError:
            raise FieldError(f"invalid polynomial coefficients: {text!r}")
        if any(c < 0 or c >= p for c in coeffs):
            raise FieldError(f"coefficients of {text!r} must lie in [0, {p})")
        return cls(tuple(coeffs), p)

    @classmethod
    def monomial(cls, degree: int, p: int) -> "FpPoly":
        """x^degree."""
        return cls((0,) * degree + (1,), p)

    @property
    def coefficients(self) -> Tuple[FieldElement, ...]:
        """Coefficients as FieldElements, lowest first."""
        return tuple(FieldElement(c, self.p) for c in self.coeffs)

    @property
    def degree(self) -> int:
        """Degree, -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        """True if the leading coefficient is 1."""
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def _check(self, other: "FpPoly") -> None:
        if self.p != other.p:
            raise FieldError(f"modulus mismatch: {self.p} vs {other.p}")

    def __add__(self, other: "FpPoly") -> "FpPoly":
        self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return FpPoly(tuple(x + y for x, y in zip(a, b)), self.p)

    def __neg__(self) -> "FpPoly":
        return FpPoly(tuple(-c for c in self.coeffs), self.p)

    def __sub__(self, other: "FpPoly") -> "FpPoly":
        return self + (-other)

    def __mul__(self, other: "FpPoly") -> "FpPoly":
        self._check(other)
        if self.is_zero() or other.is_zero():
            return FpPoly((), self.p)
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            if x:
                for j, y in enumerate(other.coeffs):
                    out[i + j] += x * y
        return FpPoly(tuple(out), self.p)

    def __divmod__(self, other: "FpPoly") -> Tuple["FpPoly", "FpPoly"]:
        self._check(other)
        if other.is_zero():
            raise FieldError("polynomial division by zero")
        p = self.p
        rem = list(self.coeffs)
        lead_inv = pow(other.coeffs[-1], -1, p)
        dq = other.degree
        quot = [0] * max(len(rem) - dq, 0)
        for shift in range(len(rem) - dq - 1, -1, -1):
            c = (rem[shift + dq] * lead_inv) % p
            if c:
                quot[shift] = c
                for j, y in enumerate(other.coeffs):
                    rem[shift + j] = (rem[shift + j] - c * y) % p
        return FpPoly(tuple(quot), p), FpPoly(tuple(rem), p)

    def __mod__(self, other: "FpPoly") -> "FpPoly":
        return divmod(self, other)[1]

    def __floordiv__(self, other: "FpPoly") -> "FpPoly":
        return divmod(self, other)[0]

    def evaluate(self, x: int) -> int:
        """Horner evaluation at x, reduced mod p."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * x + c) % self.p
        return acc

    def has_root(self) -> bool:
        """True if some x in F_p is a root."""
        return any(self.evaluate(x) == 0 for x in range(self.p))

    def is_irreducible(self) -> bool:
        """Same as is_irreducible(self)."""
        return is_irreducible(self)

    def to_json(self) -> List[int]:
        """Coefficient array lowest-first, e.g. x^2+x+1 -> [1, 1, 1]."""
        return list(self.coeffs)

    def format(self) -> str:
        """Human-readable form, highest degree first: 'x^2 + x + 2'."""
        if self.is_zero():
            return "0"
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            if k == 0:
                terms.append(str(c))
                continue
            mono = "x" if k == 1 else f"x^{k}"
            terms.append(mono if c == 1 else f"{c}{mono}")
        return " + ".join(terms)

    def __str__(self) -> str:
        return self.format()


def poly_gcd(a: FpPoly, b: FpPoly) -> FpPoly:
    """Monic gcd (zero if both are zero)."""
    while not b.is_zero():
        a, b = b, a % b
    if a.is_zero():
        return a
    inv = pow(a.coeffs[-1], -1, a.p)
    return FpPoly(tuple(c * inv for c in a.coeffs), a.p)


def poly_powmod(base: FpPoly, exponent: int, modulus: FpPoly) -> FpPoly:
    """base^exponent mod modulus by square-and-multiply.

    Args:
        base: The polynomial to raise.
        exponent: A non-negative integer.
        modulus: A nonzero polynomial over the same field.

    Returns:
        The reduced power.
    """
    result = FpPoly((1,), base.p) % modulus
    base = base % modulus
    while exponent:
        if exponent & 1:
            result = (result * base) % modulus
        base = (base * base) % modulus
        exponent >>= 1
    return result


@lru_cache(maxsize=1024)
def is_irreducible(f: FpPoly) -> bool:
    """Rabin's test: x^{p^n} = x mod f and gcd(x^{p^{n/q}} - x, f) = 1 for q | n."""
    n = f.degree
    if n < 1:
        return False
    if n == 1:
        return True
    monic = f * FpPoly((pow(f.coeffs[-1], -1, f.p),), f.p)
    x = FpPoly.monomial(1, f.p)
    if poly_powmod(x, f.p**n, monic) != x % monic:
        return False
    for q, _ in factorize(n):
        h = poly_powmod(x, f.p ** (n // q), monic) - x
        if poly_gcd(h, monic).degree > 0:
            return False
    return True


@lru_cache(maxsize=None)
def find_irreducible(p: int, degree: int) -> FpPoly:
    """Smallest monic irreducible polynomial of the given degree.

    Candidates x^n + a_{n-1} x^{n-1} + ... + a_0 are scanned by the integer
    a_0 + a_1 p + ... + a_{n-1} p^{n-1}, so x^2+x+1 (p=2), x^2+1 (p=3) and
    x^3+x+1 (p=2) come first.

    Args:
        p: The characteristic.
        degree: The extension degree m >= 1.

    Returns:
        The first irreducible candidate.

    Raises:
        FieldError: If p is not prime or degree < 1.
    """
    require_prime(p)
    if degree < 1:
        raise FieldError(f"degree must be at least 1, got {degree}")
    for code in range(p**degree):
        low = [(code // p**i) % p for i in range(degree)]
        candidate = FpPoly(tuple(low) + (1,), p)
        if is_irreducible(candidate):
            logger.debug("Irreducible polynomial of degree %d over F_%d: %s", degree, p, candidate)
            return candidate
    raise FieldError(f"no irreducible polynomial of degree {degree} over F_{p}")


def require_modulus(modulus_poly: FpPoly, degree: Optional[int] = None) -> FpPoly:
    """Check that a polynomial can serve as the modulus of F_{p^m}.

    Args:
        modulus_poly: The candidate modulus.
        degree: The expected degree m, if any.

    Returns:
        modulus_poly unchanged.

    Raises:
        FieldError: If it is not monic irreducible of the expected degree.
    """
    if degree is not None and modulus_poly.degree != degree:
        raise FieldError(
            f"modulus polynomial {modulus_poly} has degree {modulus_poly.degree}, expected {degree}"
        )
    if not modulus_poly.is_monic():
        raise FieldError(f"modulus polynomial {modulus_poly} must be monic")
    if not is_irreducible(modulus_poly):
        raise FieldError(f"{modulus_poly} is reducible over F_{modulus_poly.p}")
    return modulus_poly


@dataclass(frozen=True)
class ExtFieldElement:
    """An element of F_{p^m} in power-basis coordinates."""

    coeffs: Tuple[int, ...]
    modulus_poly: FpPoly = field(repr=False)

    def __post_init__(self):
        require_modulus(self.modulus_poly)
        m = self.modulus_poly.degree
        if len(self.coeffs) != m:
            raise FieldError(f"expected {m} coordinates, got {len(self.coeffs)}")
        p = self.modulus_poly.p
        object.__setattr__(self, "coeffs", tuple(int(c) % p for c in self.coeffs))

    @classmethod
    def from_poly(cls, poly: FpPoly, modulus_poly: FpPoly) -> "ExtFieldElement":
        """Reduce a polynomial modulo the field modulus."""
        reduced = (poly % modulus_poly).coeffs
        m = modulus_poly.degree
        return cls(reduced + (0,) * (m - len(reduced)), modulus_poly)

    @classmethod
    def basis_element(cls, i: int, modulus_poly: FpPoly) -> "ExtFieldElement":
        """γ^i for 0 <= i < m."""
        return cls.from_poly(FpPoly.monomial(i, modulus_poly.p), modulus_poly)

    @classmethod
    def zero(cls, modulus_poly: FpPoly) -> "ExtFieldElement":
        """The additive identity."""
        return cls((0,) * modulus_poly.degree, modulus_poly)

    @classmethod
    def one(cls, modulus_poly: FpPoly) -> "ExtFieldElement":
        """The multiplicative identity, γ^0."""
        return cls.basis_element(0, modulus_poly)

    @property
    def p(self) -> int:
        return self.modulus_poly.p

    def as_poly(self) -> FpPoly:
        """The element as a polynomial of degree < m."""
        return FpPoly(self.coeffs, self.p)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def _check(self, other: "ExtFieldElement") -> None:
        if self.modulus_poly != other.modulus_poly:
            raise FieldError("modulus polynomial mismatch")

    def __add__(self, other: "ExtFieldElement") -> "ExtFieldElement":
        self._check(other)
        return ExtFieldElement(
            tuple(a + b for a, b in zip(self.coeffs, other.coeffs)), self.modulus_poly
        )

    def __neg__(self) -> "ExtFieldElement":
        return ExtFieldElement(tuple(-a for a in self.coeffs), self.modulus_poly)

    def __sub__(self, other: "ExtFieldElement") -> "ExtFieldElement":
        return self + (-other)

    def __mul__(self, other: "ExtFieldElement") -> "ExtFieldElement":
        return ext_mul(self, other)

    def __pow__(self, exponent: int) -> "ExtFieldElement":
        order = self.p**self.modulus_poly.degree - 1
        if exponent < 0:
            if self.is_zero():
                raise FieldError("zero has no inverse")
            exponent %= order
        power = poly_powmod(self.as_poly(), exponent, self.modulus_poly)
        return ExtFieldElement.from_poly(power, self.modulus_poly)

    def inverse(self) -> "ExtFieldElement":
        """Multiplicative inverse via x^{p^m - 2}."""
        if self.is_zero():
            raise FieldError("zero has no inverse")
        return self ** (self.p**self.modulus_poly.degree - 2)


def ext_mul(x: ExtFieldElement, y: ExtFieldElement) -> ExtFieldElement:
    """Product in F_{p^m}, reduced modulo the modulus polynomial."""
    x._check(y)
    return ExtFieldElement.from_poly(x.as_poly() * y.as_poly(), x.modulus_poly)


def field_elements(modulus_poly: FpPoly) -> Iterator[ExtFieldElement]:
    """All p^m elements, coordinates in lexicographic order."""
    m = modulus_poly.degree
    for coords in itertools.product(range(modulus_poly.p), repeat=m):
        yield ExtFieldElement(coords, modulus_poly)


def is_symmetric(matrix: np.ndarray) -> bool:
    """True for a square matrix equal to its transpose."""
    a = np.asarray(matrix)
    return a.ndim == 2 and a.shape[0] == a.shape[1] and bool(np.array_equal(a, a.T))


def det_mod_p(matrix: np.ndarray, p: int) -> int:
    """Exact determinant over F_p via Bareiss fraction-free elimination.

    Args:
        matrix: A square integer matrix; entries are reduced mod p first.
        p: The characteristic.

    Returns:
        The determinant as a residue in [0, p).

    Raises:
        FieldError: If the matrix is not square.
    """
    rows = [[int(v) % p for v in row] for row in np.asarray(matrix).tolist()]
    n = len(rows)
    if n == 0:
        return 1 % p
    if any(len(r) != n for r in rows):
        raise FieldError("determinant requires a square matrix")
    sign = 1
    prev = 1
    for k in range(n - 1):
        if rows[k][k] == 0:
            pivot = next((i for i in range(k + 1, n) if rows[i][k] != 0), None)
            if pivot is None:
                return 0
            rows[k], rows[pivot] = rows[pivot], rows[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                rows[i][j] = (rows[i][j] * rows[k][k] - rows[i][k] * rows[k][j]) // prev
        prev = rows[k][k]
    return (sign * rows[n - 1][n - 1]) % p


def wf_structure_matrices(p: int, m: int, modulus_poly: FpPoly) -> List[np.ndarray]:
    """Structure-constant matrices B_1..B_m of multiplication in F_{p^m}.

    (B_l)_{ij} is the coordinate of γ^i γ^j along γ^l in the power basis.

    Args:
        p: The characteristic.
        m: The extension degree.
        modulus_poly: A monic irreducible polynomial of degree m over F_p.

    Returns:
        m symmetric m×m integer matrices.

    Raises:
        FieldError: If the modulus is over another field or unusable.
    """
    require_prime(p)
    if modulus_poly.p != p:
        raise FieldError(f"modulus polynomial is over F_{modulus_poly.p}, expected F_{p}")
    require_modulus(modulus_poly, degree=m)

    basis = [ExtFieldElement.basis_element(i, modulus_poly) for i in range(m)]
    matrices = [np.zeros((m, m), dtype=np.int64) for _ in range(m)]
    for i in range(m):
        for j in range(m):
            product = ext_mul(basis[i], basis[j])
            for ell, c in enumerate(product.coeffs):
                matrices[ell][i, j] = c
    return matrices

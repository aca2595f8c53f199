"""Rational quaternion algebras (a, b / Q).

Elements are coordinate 4-tuples in the basis 1, x, y, xy with
x^2 = a, y^2 = b, xy = -yx.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Literal

from .exact import J2, ExactMatrix, QuadScalar, as_fraction

INF = "inf"

BASIS_NAMES = ("1", "x", "y", "xy")


@dataclass(frozen=True)
class QuaternionAlgebra:
    a: Fraction
    b: Fraction

    def __post_init__(self):
        a, b = as_fraction(self.a), as_fraction(self.b)
        if a == 0 or b == 0:
            raise ValueError("quaternion algebra parameters must be nonzero")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    def element(self, t=0, u=0, v=0, w=0) -> "QuaternionElement":
        return QuaternionElement(self, (t, u, v, w))

    def one(self) -> "QuaternionElement":
        return self.element(1)

    def basis(self) -> tuple["QuaternionElement", ...]:
        return tuple(self.element(*[int(i == k) for i in range(4)]) for k in range(4))

    @property
    def x(self):
        return self.element(0, 1)

    @property
    def y(self):
        return self.element(0, 0, 1)

    @property
    def xy(self):
        return self.element(0, 0, 0, 1)

    def __str__(self):
        return f"({self.a}, {self.b} / Q)"


@dataclass(frozen=True)
class QuaternionElement:
    algebra: QuaternionAlgebra
    coords: tuple[Fraction, Fraction, Fraction, Fraction]

    def __post_init__(self):
        c = tuple(as_fraction(x) for x in self.coords)
        if len(c) != 4:
            raise ValueError("a quaternion has four coordinates")
        object.__setattr__(self, "coords", c)

    def _check(self, other: "QuaternionElement"):
        if other.algebra != self.algebra:
            raise ValueError(f"elements of {self.algebra} and {other.algebra} do not combine")

    def _lift(self, other):
        if isinstance(other, QuaternionElement):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.algebra.element(other)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return QuaternionElement(self.algebra, tuple(p + q for p, q in zip(self.coords, o.coords)))

    __radd__ = __add__

    def __neg__(self):
        return QuaternionElement(self.algebra, tuple(-p for p in self.coords))

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        if isinstance(other, QuaternionElement):
            return quat_mul(self, other)
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return QuaternionElement(self.algebra, tuple(p * other for p in self.coords))
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return QuaternionElement(self.algebra, tuple(other * p for p in self.coords))
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return QuaternionElement(self.algebra, tuple(p / other for p in self.coords))
        return NotImplemented

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = self.algebra.one()
        for _ in range(n):
            out = out * self
        return out

    def conj(self) -> "QuaternionElement":
        t, u, v, w = self.coords
        return QuaternionElement(self.algebra, (t, -u, -v, -w))

    def nrd(self) -> Fraction:
        t, u, v, w = self.coords
        a, b = self.algebra.a, self.algebra.b
        return t * t - a * u * u - b * v * v + a * b * w * w

    def trd(self) -> Fraction:
        return 2 * self.coords[0]

    def inverse(self) -> "QuaternionElement":
        n = self.nrd()
        if n == 0:
            raise ZeroDivisionError(f"{self} has reduced norm 0")
        return self.conj() / n

    def is_scalar(self) -> bool:
        return self.coords[1] == self.coords[2] == self.coords[3] == 0

    def __str__(self):
        terms = []
        for c, name in zip(self.coords, BASIS_NAMES):
            if c == 0:
                continue
            if name == "1":
                terms.append(str(c))
            elif c == 1:
                terms.append(name)
            elif c == -1:
                terms.append("-" + name)
            else:
                terms.append(f"{c}*{name}")
        return " + ".join(terms).replace("+ -", "- ") if terms else "0"


def quat_mul(p: QuaternionElement, q: QuaternionElement) -> QuaternionElement:
    """Product under x^2 = a, y^2 = b, xy = -yx."""
    p._check(q)
    a, b = p.algebra.a, p.algebra.b
    t1, u1, v1, w1 = p.coords
    t2, u2, v2, w2 = q.coords
    return QuaternionElement(p.algebra, (
        t1 * t2 + a * u1 * u2 + b * v1 * v2 - a * b * w1 * w2,
        t1 * u2 + u1 * t2 - b * v1 * w2 + b * w1 * v2,
        t1 * v2 + v1 * t2 + a * u1 * w2 - a * w1 * u2,
        t1 * w2 + w1 * t2 + u1 * v2 - v1 * u2,
    ))


def quat_conj_norm_trace(p: QuaternionElement) -> tuple[QuaternionElement, Fraction, Fraction]:
    return p.conj(), p.nrd(), p.trd()


# local invariants

def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_factors(n: int) -> list[int]:
    n = abs(n)
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _square_class_integer(x: Fraction) -> int:
    # n/d and n*d differ by the square d^2
    return x.numerator * x.denominator


def _split_valuation(n: int, p: int) -> tuple[int, int]:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v, n


def _legendre(u: int, p: int) -> int:
    r = pow(u % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


def hilbert_symbol(a, b, place) -> int:
    """Hilbert symbol (a, b)_v for nonzero rationals at a prime or at ``INF``.

    Closed formulas: Legendre symbols at odd primes, the units-invariants
    eps(u) = (u-1)/2 and omega(u) = (u^2-1)/8 (mod 2) at 2.
    """
    a, b = as_fraction(a), as_fraction(b)
    if a == 0 or b == 0:
        raise ValueError("Hilbert symbol needs nonzero arguments")
    if place == INF or place == float("inf"):
        return -1 if (a < 0 and b < 0) else 1
    if not isinstance(place, int) or isinstance(place, bool) or not is_prime(place):
        raise ValueError(f"place must be a prime or 'inf', got {place!r}")
    p = place
    alpha, u = _split_valuation(_square_class_integer(a), p)
    beta, v = _split_valuation(_square_class_integer(b), p)
    if p == 2:
        def eps(z):
            return ((z - 1) // 2) % 2

        def omega(z):
            return ((z * z - 1) // 8) % 2

        e = eps(u) * eps(v) + alpha * omega(v) + beta * omega(u)
        return -1 if e % 2 else 1
    sign = -1 if (alpha * beta * ((p - 1) // 2)) % 2 else 1
    return sign * _legendre(u, p) ** beta * _legendre(v, p) ** alpha


@dataclass(frozen=True)
class PlaceSet:
    finite: frozenset[int]
    infinite: bool

    def __len__(self):
        return len(self.finite) + int(self.infinite)

    def __contains__(self, place):
        if place == INF:
            return self.infinite
        return place in self.finite

    def sorted_places(self) -> list:
        return sorted(self.finite) + ([INF] if self.infinite else [])

    def finite_product(self) -> int:
        out = 1
        for p in self.finite:
            out *= p
        return out

    def __str__(self):
        return "{" + ", ".join(str(p) for p in self.sorted_places()) + "}"


def candidate_places(A: QuaternionAlgebra) -> list[int]:
    """Primes dividing 2ab; the symbol is +1 at every other finite prime."""
    n = 2 * A.a.numerator * A.a.denominator * A.b.numerator * A.b.denominator
    return prime_factors(n)


def ramification_set(A: QuaternionAlgebra) -> PlaceSet:
    finite = frozenset(p for p in candidate_places(A) if hilbert_symbol(A.a, A.b, p) == -1)
    return PlaceSet(finite, hilbert_symbol(A.a, A.b, INF) == -1)


def classify_algebra(A: QuaternionAlgebra) -> tuple[bool, bool]:
    """``(division, indefinite)``."""
    ram = ramification_set(A)
    return len(ram) > 0, not ram.infinite


ArchimedeanType = Literal["matrix-real", "matrix-hamiltonian"]


@dataclass(frozen=True)
class CorestrictionClass:
    """Archimedean data of the rational corestriction of a degree-d algebra.

    ``split`` is None unless supplied by the caller: the finite part of the
    corestriction is not computed here.
    """

    degree: int
    archimedean_type: ArchimedeanType
    split: bool | None = None

    @property
    def b_definite(self) -> bool:
        return self.degree % 2 == 1

    @property
    def b_indefinite(self) -> bool:
        return not self.b_definite


def archimedean_corestriction(d: int, split: bool | None = None) -> CorestrictionClass:
    """Real type of Cor(A) for A split at one real place of a degree-d field.

    Real matrices for odd d, Hamiltonian matrices for even d. The derived
    rational algebra is reported definite for odd d and indefinite for even d.
    """
    if not isinstance(d, int) or d < 1:
        raise ValueError(f"degree must be a positive integer, got {d!r}")
    kind = "matrix-real" if d % 2 else "matrix-hamiltonian"
    return CorestrictionClass(d, kind, split)


class MatrixEmbedding:
    """B -> M_2(R): x -> diag(sqrt a, -sqrt a), y -> [[0, b], [1, 0]]."""

    def __init__(self, algebra: QuaternionAlgebra):
        if algebra.a <= 0:
            raise ValueError(
                f"matrix embedding needs x^2 = a > 0 (got a = {algebra.a}); "
                "re-present the algebra with a positive first parameter, e.g. swap a and b")
        self.algebra = algebra
        self.sqrt_a = QuadScalar.sqrt(algebra.a)

    def __call__(self, q: QuaternionElement) -> ExactMatrix:
        if q.algebra != self.algebra:
            raise ValueError("element from another algebra")
        t, u, v, w = q.coords
        r, b = self.sqrt_a, self.algebra.b
        return ExactMatrix([[t + u * r, b * v + b * w * r],
                            [v - w * r, t - u * r]])

    def preimage(self, m: ExactMatrix) -> QuaternionElement:
        """Inverse on the image; raises if ``m`` is not the image of an element."""
        (m11, m12), (m21, m22) = m.rows
        r, b = self.sqrt_a, self.algebra.b
        t = (m11 + m22) / 2
        u = (m11 - m22) / (2 * r)
        v = (m12 / b + m21) / 2
        w = (m12 / b - m21) / (2 * r)
        coords = []
        for c in (t, u, v, w):
            if isinstance(c, QuadScalar):
                if c.coeff != 0:
                    raise ValueError("matrix is not in the image of the algebra")
                c = c.base
            coords.append(c)
        q = QuaternionElement(self.algebra, tuple(coords))
        if self(q) != m:
            raise ValueError("matrix is not in the image of the algebra")
        return q


def matrix_embedding(A: QuaternionAlgebra) -> MatrixEmbedding:
    return MatrixEmbedding(A)


def conjugation_matrix_form(alpha: ExactMatrix) -> ExactMatrix:
    """The involution alpha -> J2^-1 alpha^T J2 (the adjugate on 2x2 matrices)."""
    if alpha.shape != (2, 2):
        raise ValueError("expected a 2x2 matrix")
    return (-J2) @ alpha.T @ J2

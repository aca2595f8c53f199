"""Z-orders in rational quaternion algebras and their norm-one units."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Literal, Sequence

from .exact import ExactMatrix, exact_linear_solve, is_integral
from .quaternion import (
    QuaternionAlgebra,
    QuaternionElement,
    matrix_embedding,
    ramification_set,
)

TORSION_ORDER_BOUND = 12


class OrderDataError(ValueError):
    """Input that cannot be an order (or contradicts the algebra's invariants)."""


@dataclass(frozen=True)
class QuatOrder:
    algebra: QuaternionAlgebra
    basis: tuple[QuaternionElement, ...]

    def __post_init__(self):
        basis = tuple(self.basis)
        if len(basis) != 4:
            raise OrderDataError("an order needs exactly 4 basis elements")
        if any(e.algebra != self.algebra for e in basis):
            raise OrderDataError("basis elements belong to another algebra")
        object.__setattr__(self, "basis", basis)
        if self.coordinate_matrix().det() == 0:
            raise OrderDataError("basis is linearly dependent")

    @classmethod
    def standard(cls, algebra: QuaternionAlgebra) -> "QuatOrder":
        return cls(algebra, algebra.basis())

    @classmethod
    def from_coordinates(cls, algebra: QuaternionAlgebra, rows: Sequence[Sequence]) -> "QuatOrder":
        return cls(algebra, tuple(QuaternionElement(algebra, tuple(r)) for r in rows))

    def coordinate_matrix(self) -> ExactMatrix:
        """Rows are the basis elements in coordinates 1, x, y, xy."""
        return ExactMatrix([e.coords for e in self.basis])

    def coordinates(self, q: QuaternionElement) -> tuple[Fraction, ...]:
        """Coordinates of ``q`` in the lattice basis (rational in general)."""
        sol = exact_linear_solve(self.coordinate_matrix().T, ExactMatrix.column(q.coords))
        return tuple(sol.col(0))

    def contains(self, q: QuaternionElement) -> bool:
        return all(c.denominator == 1 for c in self.coordinates(q))

    def element(self, coeffs: Sequence[int]) -> QuaternionElement:
        out = self.algebra.element()
        for c, e in zip(coeffs, self.basis):
            out = out + e * c
        return out


@dataclass
class OrderCertificate:
    is_order: bool
    violations: list[dict] = field(default_factory=list)

    def __bool__(self):
        return self.is_order


def verify_order(L: QuatOrder) -> OrderCertificate:
    """Check 1 in L, integrality of trd/nrd on the basis, closure of the 16 products."""
    violations = []
    for k, e in enumerate(L.basis):
        if not is_integral(e.trd()):
            violations.append({"kind": "trd not integral", "basis_index": k + 1,
                               "element": str(e), "value": str(e.trd())})
        if not is_integral(e.nrd()):
            violations.append({"kind": "nrd not integral", "basis_index": k + 1,
                               "element": str(e), "value": str(e.nrd())})
    if not L.contains(L.algebra.one()):
        violations.append({"kind": "1 not in lattice",
                           "coordinates": [str(c) for c in L.coordinates(L.algebra.one())]})
    for i, j in itertools.product(range(4), repeat=2):
        prod = L.basis[i] * L.basis[j]
        coords = L.coordinates(prod)
        if not all(c.denominator == 1 for c in coords):
            violations.append({"kind": "product not in lattice", "pair": [i + 1, j + 1],
                               "product": str(prod), "coordinates": [str(c) for c in coords]})
    return OrderCertificate(not violations, violations)


def trace_gram_matrix(L: QuatOrder) -> ExactMatrix:
    return ExactMatrix([[(ei * ej).trd() for ej in L.basis] for ei in L.basis])


def reduced_discriminant(L: QuatOrder) -> int:
    """Positive square root of |det(trd(e_i e_j))|."""
    cert = verify_order(L)
    if not cert:
        raise OrderDataError(f"not an order: {cert.violations[0]}")
    d = abs(trace_gram_matrix(L).det())
    if d.denominator != 1:
        raise OrderDataError(f"trace Gram determinant {d} is not an integer")
    r = math.isqrt(d.numerator)
    if r * r != d.numerator:
        raise OrderDataError(f"trace Gram determinant {d} is not a perfect square")
    return r


def is_maximal(L: QuatOrder) -> bool:
    disc = reduced_discriminant(L)
    ram = ramification_set(L.algebra)
    if disc == 1 and len(ram) > 0:
        raise OrderDataError("discriminant 1 is impossible in a division algebra")
    return disc == ram.finite_product()


@dataclass(frozen=True)
class FuchsianElement:
    """A norm-one quaternion together with its SL_2 image (None when a <= 0)."""

    quaternion: QuaternionElement
    matrix: ExactMatrix | None

    def __post_init__(self):
        if self.quaternion.nrd() != 1:
            raise ValueError(f"{self.quaternion} has reduced norm {self.quaternion.nrd()}, not 1")
        if self.matrix is not None and self.matrix.det() != 1:
            raise ValueError("matrix image must have determinant 1")

    @classmethod
    def of(cls, q: QuaternionElement) -> "FuchsianElement":
        m = matrix_embedding(q.algebra)(q) if q.algebra.a > 0 else None
        return cls(q, m)

    def __mul__(self, other: "FuchsianElement") -> "FuchsianElement":
        m = None
        if self.matrix is not None and other.matrix is not None:
            m = self.matrix @ other.matrix
        return FuchsianElement(self.quaternion * other.quaternion, m)

    def inverse(self) -> "FuchsianElement":
        m = None
        if self.matrix is not None:
            (a, b), (c, d) = self.matrix.rows
            m = ExactMatrix([[d, -b], [-c, a]])
        return FuchsianElement(self.quaternion.conj(), m)

    def is_identity(self) -> bool:
        return self.quaternion == self.quaternion.algebra.one()

    def __str__(self):
        return str(self.quaternion)


def norm_one_search(L: QuatOrder, height: int) -> list[FuchsianElement]:
    """All nrd = 1 lattice elements with basis coordinates in [-height, height].

    Enumeration order is lexicographic in the coordinates.
    """
    out = []
    rng = range(-height, height + 1)
    for coeffs in itertools.product(rng, repeat=4):
        q = L.element(coeffs)
        if q.nrd() == 1:
            out.append(FuchsianElement.of(q))
    return out


ElementType = Literal["elliptic", "parabolic", "hyperbolic", "central"]


def element_type(gamma: FuchsianElement) -> ElementType:
    q = gamma.quaternion
    if q.nrd() != 1:
        raise ValueError("element_type needs reduced norm 1")
    if q.is_scalar():
        return "central"
    t = abs(q.trd())
    if t < 2:
        return "elliptic"
    if t == 2:
        return "parabolic"
    return "hyperbolic"


def torsion_certificate(gamma: FuchsianElement) -> tuple[bool, int | None]:
    """``(True, order)`` for torsion elements, ``(False, None)`` otherwise.

    Torsion needs |trd| <= 2; its order then divides 12 or is checked up to 12.
    """
    q = gamma.quaternion
    if q.nrd() != 1:
        raise ValueError("torsion_certificate needs reduced norm 1")
    if abs(q.trd()) > 2:
        return False, None
    one = q.algebra.one()
    power = q
    for n in range(1, TORSION_ORDER_BOUND + 1):
        if power == one:
            return True, n
        power = power * q
    return False, None


def congruence_membership(gamma: FuchsianElement, L: QuatOrder, N: int) -> bool:
    """True iff gamma = 1 mod N*L, i.e. (gamma - 1)/N lies in L."""
    if N == 0:
        raise ValueError("level must be nonzero")
    q = gamma.quaternion
    if not L.contains(q):
        raise ValueError(f"{q} is not in the order")
    return L.contains((q - 1) / N)


def reduced_words(n_gens: int, radius: int):
    """Reduced words over generators and inverses, as tuples of (index, +-1).

    Shortlex order: by length, then by letters (generator index, inverse after).
    """
    letters = [(i, s) for i in range(n_gens) for s in (1, -1)]
    frontier = [()]
    yield ()
    for _ in range(radius):
        nxt = []
        for w in frontier:
            for let in letters:
                if w and w[-1] == (let[0], -let[1]):
                    continue
                nw = w + (let,)
                nxt.append(nw)
                yield nw
        frontier = nxt


def evaluate_word(word, gens: Sequence[FuchsianElement], identity: FuchsianElement) -> FuchsianElement:
    out = identity
    for i, s in word:
        out = out * (gens[i] if s == 1 else gens[i].inverse())
    return out


def torsion_screen(gens: Sequence[FuchsianElement], radius: int = 4) -> list[dict]:
    """Torsion elements other than 1 found in the word ball of the given radius.

    A bounded certificate: an empty result says nothing beyond the ball.
    """
    if not gens:
        return []
    identity = FuchsianElement.of(gens[0].quaternion.algebra.one())
    seen = set()
    found = []
    for word in reduced_words(len(gens), radius):
        g = evaluate_word(word, gens, identity)
        key = g.quaternion.coords
        if key in seen:
            continue
        seen.add(key)
        if g.is_identity():
            continue
        tors, order = torsion_certificate(g)
        if tors:
            found.append({"word": [[i + 1, s] for i, s in word], "element": str(g),
                          "order": order})
    return found


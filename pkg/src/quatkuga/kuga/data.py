"""Kuga data (Gamma, rho, Lambda, S) and the symplectic form E."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from ..exact import (
    J2,
    ExactMatrix,
    QuadScalar,
    integer_row_basis,
    is_integral,
    qf_sign,
    radicand_of,
    rank,
    solve_in_span,
)
from ..orders import FuchsianElement, reduced_words
from ..report import Entry, entry


class DegenerateLatticeError(ValueError):
    def __init__(self, message: str, witness: dict | None = None):
        super().__init__(message)
        self.witness = witness or {}


def symplectic_form_E(S: ExactMatrix, alpha: ExactMatrix, beta: ExactMatrix):
    """E(alpha, beta) = tr(alpha^T S beta J2) on g x 2 matrices."""
    g = S.nrows
    if S.shape != (g, g) or alpha.shape != (g, 2) or beta.shape != (g, 2):
        raise ValueError(f"shape mismatch: S {S.shape}, alpha {alpha.shape}, beta {beta.shape}")
    return (alpha.T @ S @ beta @ J2).trace()


def _flatten(alpha: ExactMatrix) -> list[Fraction]:
    out = []
    for x in alpha.entries():
        if isinstance(x, QuadScalar):
            out.extend((x.base, x.coeff))
        else:
            out.extend((Fraction(x), Fraction(0)))
    return out


class LatticeBasis:
    """Z-basis of the span of g x 2 lattice generators, with membership tests.

    Entries may lie in one real quadratic field; coordinates are computed
    over Q after splitting each entry into its rational and sqrt parts.
    """

    def __init__(self, generators: Sequence[ExactMatrix]):
        if not generators:
            raise DegenerateLatticeError("no lattice generators")
        self.shape = generators[0].shape
        radicands = {radicand_of(x) for m in generators for x in m.entries()} - {None}
        if len(radicands) > 1:
            raise DegenerateLatticeError(f"lattice mixes radicands {sorted(radicands)}")
        self.radicand = radicands.pop() if radicands else None
        flat = [_flatten(m) for m in generators]
        r = rank(flat)
        dim = 2 * self.shape[0]
        if r != dim:
            raise DegenerateLatticeError(
                f"lattice generators have Z-rank {r}, expected {dim}", {"rank": r, "expected": dim})
        if len(generators) == r:
            self.vectors = flat
            self.basis = tuple(generators)
        else:
            den = math.lcm(*(c.denominator for v in flat for c in v))
            ints = integer_row_basis([[int(c * den) for c in v] for v in flat])
            self.vectors = [[Fraction(c, den) for c in v] for v in ints]
            self.basis = tuple(self._unflatten(v) for v in self.vectors)
        real = ExactMatrix([m.entries() for m in self.basis])
        if real.det() == 0:
            raise DegenerateLatticeError("lattice generators are R-linearly dependent",
                                         {"real_determinant": "0"})

    def _unflatten(self, v: Sequence[Fraction]) -> ExactMatrix:
        vals = []
        for p, q in zip(v[0::2], v[1::2]):
            vals.append(p if q == 0 else QuadScalar(p, q, self.radicand))
        g, c = self.shape
        return ExactMatrix([vals[i * c:(i + 1) * c] for i in range(g)])

    def coordinates(self, alpha: ExactMatrix) -> list[Fraction] | None:
        """Rational coordinates in the basis, or None outside the rational span."""
        if alpha.shape != self.shape:
            raise ValueError(f"expected shape {self.shape}, got {alpha.shape}")
        try:
            flat = _flatten(alpha)
        except (TypeError, ValueError):
            return None
        if self.radicand is None and any(isinstance(x, QuadScalar) and x.coeff != 0
                                         for x in alpha.entries()):
            return None
        return solve_in_span(self.vectors, flat)

    def integer_coordinates(self, alpha: ExactMatrix) -> list[int] | None:
        c = self.coordinates(alpha)
        if c is None or any(x.denominator != 1 for x in c):
            return None
        return [int(x) for x in c]

    def contains(self, alpha: ExactMatrix) -> bool:
        return self.integer_coordinates(alpha) is not None

    def __len__(self):
        return len(self.basis)


@dataclass(frozen=True)
class GammaElement:
    """An element of Gamma together with its rho-image."""

    fuchsian: FuchsianElement
    rho: ExactMatrix

    @property
    def matrix(self) -> ExactMatrix:
        return self.fuchsian.matrix

    def __mul__(self, other: "GammaElement") -> "GammaElement":
        return GammaElement(self.fuchsian * other.fuchsian, self.rho @ other.rho)

    def inverse(self) -> "GammaElement":
        return GammaElement(self.fuchsian.inverse(), self.rho.inverse())

    def act(self, alpha: ExactMatrix) -> ExactMatrix:
        """alpha -> rho(gamma) alpha gamma^-1."""
        return self.rho @ alpha @ self.fuchsian.inverse().matrix

    def __eq__(self, other):
        if not isinstance(other, GammaElement):
            return NotImplemented
        return self.matrix == other.matrix and self.rho == other.rho

    def __hash__(self):
        return hash((self.matrix, self.rho))


@dataclass(frozen=True)
class KugaData:
    g: int
    gamma_gens: tuple[FuchsianElement, ...]
    rho_images: tuple[ExactMatrix, ...]
    lattice: tuple[ExactMatrix, ...]
    S: ExactMatrix
    flags: tuple[str, ...] = ()
    meta: dict = field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "gamma_gens", tuple(self.gamma_gens))
        object.__setattr__(self, "rho_images", tuple(self.rho_images))
        object.__setattr__(self, "lattice", tuple(self.lattice))
        object.__setattr__(self, "flags", tuple(self.flags))
        if len(self.gamma_gens) != len(self.rho_images):
            raise ValueError("need one rho image per Gamma generator")
        if any(m.shape != (self.g, self.g) for m in self.rho_images):
            raise ValueError(f"rho images must be {self.g}x{self.g}")
        if any(m.shape != (self.g, 2) for m in self.lattice):
            raise ValueError(f"lattice generators must be {self.g}x2")
        if self.S.shape != (self.g, self.g):
            raise ValueError(f"S must be {self.g}x{self.g}")
        if any(f.matrix is None for f in self.gamma_gens):
            raise ValueError("Gamma generators need SL_2(R) images")

    @cached_property
    def lattice_basis(self) -> LatticeBasis:
        return LatticeBasis(self.lattice)

    def E(self, alpha: ExactMatrix, beta: ExactMatrix):
        return symplectic_form_E(self.S, alpha, beta)

    def generator(self, i: int) -> GammaElement:
        return GammaElement(self.gamma_gens[i], self.rho_images[i])

    def generators(self) -> list[GammaElement]:
        return [self.generator(i) for i in range(len(self.gamma_gens))]

    def identity(self) -> GammaElement:
        one = self.gamma_gens[0].quaternion.algebra.one()
        return GammaElement(FuchsianElement(one, ExactMatrix.identity(2)),
                            ExactMatrix.identity(self.g))

    def word(self, word) -> GammaElement:
        out = self.identity()
        for i, s in word:
            gen = self.generator(i)
            out = out * (gen if s == 1 else gen.inverse())
        return out

    def gram_E(self, basis: Sequence[ExactMatrix] | None = None) -> ExactMatrix:
        basis = self.lattice_basis.basis if basis is None else basis
        return ExactMatrix([[self.E(a, b) for b in basis] for a in basis])

    def with_S(self, S: ExactMatrix) -> "KugaData":
        return KugaData(self.g, self.gamma_gens, self.rho_images, self.lattice, S,
                        self.flags, dict(self.meta))


def leading_minors(m: ExactMatrix) -> list:
    return [m.leading(k).det() for k in range(1, m.nrows + 1)]


def positive_definite_witness(m: ExactMatrix) -> tuple[bool, dict]:
    """Exact leading-minor test; on failure returns a vector v with v^T m v <= 0."""
    minors = leading_minors(m)
    for k, d in enumerate(minors):
        if qf_sign(d) <= 0:
            # v = (-M_{k}^{-1} h, 1, 0...) gives v^T M v = det M_{k+1} / det M_k
            if k == 0:
                v = [Fraction(1)] + [Fraction(0)] * (m.nrows - 1)
            else:
                head = m.leading(k)
                h = ExactMatrix.column([m[i, k] for i in range(k)])
                sol = (head.inverse() @ h).col(0)
                v = [-x for x in sol] + [Fraction(1)] + [Fraction(0)] * (m.nrows - k - 1)
            vec = ExactMatrix.column(v)
            value = (vec.T @ m @ vec)[0, 0]
            return False, {"minor_index": k + 1, "minor": d, "vector": v, "value": value}
    return True, {"minors": minors}


def check_kuga_data(data: KugaData) -> list[Entry]:
    """Verify the invariants of Kuga data; failures carry witnesses."""
    out = []
    S = data.S
    asym = next(((i + 1, j + 1) for i in range(data.g) for j in range(i + 1, data.g)
                 if S[i, j] != S[j, i]), None)
    out.append(entry("kuga.S_symmetric", asym is None,
                     {"indices": list(asym), "S": S} if asym else {}))
    if asym is None:
        ok, w = positive_definite_witness(S)
        out.append(entry("kuga.S_positive_definite", ok, w))
    else:
        out.append(entry("kuga.S_positive_definite", False, {"reason": "S not symmetric"}))

    for k, gen in enumerate(data.generators()):
        det_ok = gen.matrix.det() == 1
        out.append(entry("kuga.gamma_in_SL2", det_ok, {} if det_ok else {"det": gen.matrix.det()},
                         (k + 1,)))
        orth = gen.rho.T @ S @ gen.rho == S
        out.append(entry("kuga.rho_preserves_S", orth,
                         {} if orth else {"rho": gen.rho}, (k + 1,)))

    try:
        basis = data.lattice_basis
    except DegenerateLatticeError as exc:
        out.append(entry("kuga.lattice_rank", False, {"reason": str(exc), **exc.witness}))
        return out
    out.append(entry("kuga.lattice_rank", True, {"rank": len(basis)}))

    for k, gen in enumerate(data.generators()):
        bad = None
        for j, alpha in enumerate(data.lattice):
            for img in (gen.act(alpha), gen.inverse().act(alpha)):
                if not basis.contains(img):
                    bad = {"lattice_index": j + 1, "image": img,
                           "coordinates": basis.coordinates(img)}
                    break
            if bad:
                break
        out.append(entry("kuga.lattice_invariant", bad is None, bad or {}, (k + 1,)))

    gens = data.lattice
    bad_int = bad_alt = None
    for i, j in itertools.product(range(len(gens)), repeat=2):
        v = data.E(gens[i], gens[j])
        if bad_int is None and not is_integral(v):
            bad_int = {"pair": [i + 1, j + 1], "value": v}
        if i == j and v != 0 and bad_alt is None:
            bad_alt = {"index": i + 1, "value": v}
    out.append(entry("kuga.E_integral", bad_int is None, bad_int or {}))
    out.append(entry("kuga.E_alternating", bad_alt is None, bad_alt or {}))

    for k, gen in enumerate(data.generators()):
        bad = None
        for i, j in itertools.product(range(len(gens)), repeat=2):
            lhs = data.E(gen.act(gens[i]), gen.act(gens[j]))
            rhs = data.E(gens[i], gens[j])
            if lhs != rhs:
                bad = {"pair": [i + 1, j + 1], "lhs": lhs, "rhs": rhs}
                break
        out.append(entry("kuga.E_invariant", bad is None, bad or {}, (k + 1,)))
    return out


def words_ball(data: KugaData, radius: int):
    """Yield ``(word, GammaElement)`` over reduced words of length <= radius."""
    for w in reduced_words(len(data.gamma_gens), radius):
        yield w, data.word(w)


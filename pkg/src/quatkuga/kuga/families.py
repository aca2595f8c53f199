"""Concrete families: false elliptic curves, fiber products, elliptic modular curves."""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from typing import Sequence

from ..exact import J2, ExactMatrix, QuadScalar
from ..orders import FuchsianElement, QuatOrder, is_maximal, torsion_screen
from ..quaternion import (
    QuaternionAlgebra,
    QuaternionElement,
    classify_algebra,
    conjugation_matrix_form,
    matrix_embedding,
)
from ..report import Entry, entry
from .data import KugaData, symplectic_form_E

PAPER_ALGEBRA = QuaternionAlgebra(2, -3)


def paper_order(B: QuaternionAlgebra = PAPER_ALGEBRA) -> QuatOrder:
    """Z + 1/2 Z(x + xy) + 1/2 Z(1 + y) + Z xy."""
    h = Fraction(1, 2)
    return QuatOrder.from_coordinates(B, [(1, 0, 0, 0), (0, h, 0, h), (h, 0, h, 0), (0, 0, 0, 1)])


def paper_generators(B: QuaternionAlgebra = PAPER_ALGEBRA) -> list[FuchsianElement]:
    """3 + 2x and 5 + 2xy; both have reduced norm 1 and are congruent to 1 mod 2."""
    return [FuchsianElement.of(B.element(3, 2)), FuchsianElement.of(B.element(5, 0, 0, 2))]


def shimura_matrix(B: QuaternionAlgebra) -> ExactMatrix:
    """S_1 = J2 * (image of y)."""
    return J2 @ matrix_embedding(B)(B.y)


def _denominator(v) -> int:
    if isinstance(v, QuadScalar):
        return math.lcm(v.base.denominator, v.coeff.denominator)
    return Fraction(v).denominator


def build_false_elliptic(B: QuaternionAlgebra, L: QuatOrder, gens: Sequence[FuchsianElement],
                         scale: int | str = "auto", radius: int = 4) -> KugaData:
    """Kuga data for the false elliptic family: g = 2, rho trivial, S = scale * J2 y.

    ``scale="auto"`` picks the least positive integer making E integral on the
    16 pairs of order basis images; the raw values and their denominator LCM
    are kept in ``meta``.
    """
    division, indefinite = classify_algebra(B)
    if not division:
        raise ValueError(f"{B} is split; a false elliptic family needs a division algebra")
    if not indefinite:
        raise ValueError(f"{B} is definite; its unit group is finite")
    if L.algebra != B:
        raise ValueError("order lives in another algebra")
    if not gens:
        raise ValueError("need at least one Gamma generator")
    torsion = torsion_screen(list(gens), radius)
    if torsion:
        raise ValueError(f"generators produce torsion within radius {radius}: {torsion[0]}")
    emb = matrix_embedding(B)
    lattice = [emb(e) for e in L.basis]
    S1 = shimura_matrix(B)
    E1 = ExactMatrix([[symplectic_form_E(S1, a, b) for b in lattice] for a in lattice])
    den = math.lcm(*(_denominator(v) for v in E1.entries()))
    if scale == "auto":
        mu = den
    elif isinstance(scale, int) and not isinstance(scale, bool) and scale > 0:
        mu = scale
    else:
        raise ValueError(f"scale must be a positive integer or 'auto', got {scale!r}")
    flags = () if is_maximal(L) else ("non-maximal-order",)
    meta = {"algebra": [B.a, B.b], "E1": E1, "denominator_lcm": den, "scale": mu,
            "generators": [str(g) for g in gens]}
    identity = ExactMatrix.identity(2)
    return KugaData(2, tuple(gens), tuple(identity for _ in gens), tuple(lattice),
                    S1 * mu, flags, meta)


def shimura_form_identity(B: QuaternionAlgebra, alpha: ExactMatrix, beta: ExactMatrix):
    """(tr(alpha^T S1 beta J2), tr(y alpha beta'), equal)."""
    y = matrix_embedding(B)(B.y)
    lhs = symplectic_form_E(J2 @ y, alpha, beta)
    rhs = (y @ alpha @ conjugation_matrix_form(beta)).trace()
    return lhs, rhs, lhs == rhs


def endomorphism_commutation(B: QuaternionAlgebra, data: KugaData,
                             beta: QuaternionElement, label: str | None = None) -> list[Entry]:
    """The order acts on M_2(R) by left multiplication with its matrix image.

    Certify that this commutes with alpha -> rho(gamma) alpha gamma^-1 for
    every generator, on every lattice generator.
    """
    label = label or str(beta)
    bt = matrix_embedding(B)(beta)
    out = []
    for k, gen in enumerate(data.generators()):
        bad = None
        for j, alpha in enumerate(data.lattice):
            lhs = gen.act(bt @ alpha)
            rhs = bt @ gen.act(alpha)
            if lhs != rhs:
                bad = {"lattice_index": j + 1, "lhs": lhs, "rhs": rhs}
                break
        out.append(entry("endomorphism.commutes", bad is None, bad or {}, (label, k + 1)))
    return out


def _place(alpha: ExactMatrix, k: int, copies: int) -> ExactMatrix:
    g = alpha.nrows
    blocks = [[alpha if i == k else ExactMatrix.zeros(g, 2)] for i in range(copies)]
    return ExactMatrix.block(blocks)


def fiber_product_data(data: KugaData, copies: int) -> KugaData:
    """rho -> rho + ... + rho, Lambda -> direct sum, S -> block diagonal."""
    if not isinstance(copies, int) or copies < 1:
        raise ValueError(f"copies must be a positive integer, got {copies!r}")
    if copies == 1:
        return data
    rho = tuple(ExactMatrix.block_diag([r] * copies) for r in data.rho_images)
    lattice = tuple(_place(a, k, copies) for k, a in itertools.product(range(copies), data.lattice))
    S = ExactMatrix.block_diag([data.S] * copies)
    meta = {**data.meta, "copies": copies}
    return KugaData(data.g * copies, data.gamma_gens, rho, lattice, S, data.flags, meta)


SPLIT_ALGEBRA = QuaternionAlgebra(1, 1)


def congruence_generators(N: int) -> list[ExactMatrix]:
    """A fixed table of elements of Gamma(N): two unipotents and one hyperbolic."""
    return [ExactMatrix([[1, N], [0, 1]]), ExactMatrix([[1, 0], [N, 1]]),
            ExactMatrix([[1 + N, N], [-N, 1 - N]])]


def build_elliptic_family(N: int) -> KugaData:
    """g = 1 family over Gamma(N): rho trivial, Lambda = Z^2, S = (1)."""
    if not isinstance(N, int) or N < 3:
        raise ValueError(f"level must be an integer >= 3 (Gamma(N) has torsion below), got {N!r}")
    emb = matrix_embedding(SPLIT_ALGEBRA)
    gens = [FuchsianElement(emb.preimage(m), m) for m in congruence_generators(N)]
    one = ExactMatrix([[1]])
    lattice = (ExactMatrix([[1, 0]]), ExactMatrix([[0, 1]]))
    return KugaData(1, tuple(gens), tuple(one for _ in gens), lattice, one,
                    ("non-cocompact",), {"level": N})

"""H (x) H = M_4(R) via p (x) q -> (v -> p v q'), and SU(2) x SU(2) -> SO(4)."""

from __future__ import annotations

import itertools

from ..exact import ExactMatrix, rank
from ..quaternion import QuaternionAlgebra, QuaternionElement

HAMILTON = QuaternionAlgebra(-1, -1)


def _matrix_of(f) -> ExactMatrix:
    """Matrix of a Q-linear map H -> H in the basis 1, i, j, k (columns are images)."""
    cols = [f(e).coords for e in HAMILTON.basis()]
    return ExactMatrix(cols).T


def bimodule_matrix(p: QuaternionElement, q: QuaternionElement) -> ExactMatrix:
    """Matrix of v -> p v q'."""
    qc = q.conj()
    return _matrix_of(lambda v: p * v * qc)


def h_tensor_h_iso() -> dict[tuple[int, int], ExactMatrix]:
    """Images of the 16 basis tensors e_i (x) e_j."""
    basis = HAMILTON.basis()
    return {(i, j): bimodule_matrix(basis[i], basis[j]) for i in range(4) for j in range(4)}


def _decompose(q: QuaternionElement) -> tuple[int, object]:
    """A basis product e_i e_k is +-e_m; return (m, sign)."""
    nz = [(k, c) for k, c in enumerate(q.coords) if c != 0]
    if len(nz) != 1:
        raise ValueError(f"{q} is not a signed basis element")
    return nz[0]


def structure_rank(images: dict | None = None) -> int:
    images = h_tensor_h_iso() if images is None else images
    return rank([m.entries() for _, m in sorted(images.items())])


def multiplicativity_failures(images: dict | None = None) -> list[tuple[int, int, int, int]]:
    """All (i, j, k, l) with phi(e_i e_k (x) e_j e_l) != phi(e_i (x) e_j) phi(e_k (x) e_l)."""
    images = h_tensor_h_iso() if images is None else images
    basis = HAMILTON.basis()
    bad = []
    for i, j, k, l in itertools.product(range(4), repeat=4):
        m1, s1 = _decompose(basis[i] * basis[k])
        m2, s2 = _decompose(basis[j] * basis[l])
        lhs = images[(m1, m2)] * (s1 * s2)
        if lhs != images[(i, j)] @ images[(k, l)]:
            bad.append((i, j, k, l))
    return bad


def su2su2_to_so4(p: QuaternionElement, q: QuaternionElement) -> ExactMatrix:
    """The orthogonal matrix of v -> p v q' for unit quaternions p, q."""
    for name, u in (("p", p), ("q", q)):
        if u.algebra != HAMILTON:
            raise ValueError(f"{name} must lie in (-1, -1 / Q)")
        if u.nrd() != 1:
            raise ValueError(f"{name} = {u} is not a unit quaternion (nrd {u.nrd()})")
    return bimodule_matrix(p, q)

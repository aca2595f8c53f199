"""Complex structures J_tau, Riemann conditions, fiber lattices and period matrices."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from ..exact import (
    J2,
    ExactComplex,
    ExactMatrix,
    qf_sign,
    radicand_of,
    symplectic_frobenius_basis,
    to_int,
)
from ..numeric import (
    DEFAULT_BITS,
    contains_zero,
    enclose,
    enclose_matrix,
    interval_leading_minors,
    interval_precision,
    interval_sign,
)
from ..report import Entry, entry
from .action import tau_column
from .data import DegenerateLatticeError, KugaData, leading_minors, positive_definite_witness

I = ExactComplex(0, 1)


@dataclass(frozen=True)
class ComplexStructureAtTau:
    tau: ExactComplex
    J: ExactMatrix

    @property
    def J_inv(self) -> ExactMatrix:
        return -self.J


def complex_structure(tau: ExactComplex) -> ComplexStructureAtTau:
    """J_tau = (1/Im tau) [[-Re tau, |tau|^2], [-1, Re tau]]."""
    if qf_sign(tau.im) != 1:
        raise ValueError(f"Im tau must be positive, got {tau}")
    re, im = tau.re, tau.im
    J = ExactMatrix([[-re / im, (re * re + im * im) / im],
                     [Fraction(-1) / im, re / im]])
    return ComplexStructureAtTau(tau, J)


def _radicands(*things) -> set[int]:
    out = set()
    for t in things:
        if isinstance(t, ExactMatrix):
            out |= {radicand_of(x) for x in t.entries()}
        else:
            out.add(radicand_of(t))
    return out - {None}


def needs_numeric(data: KugaData, tau: ExactComplex) -> bool:
    """True when tau and the data live in different quadratic fields."""
    return len(_radicands(data.S, *data.lattice, tau)) > 1


def riemann_conditions(data: KugaData, tau: ExactComplex, bits: int = DEFAULT_BITS,
                       label: str | None = None) -> list[Entry]:
    """Compatibility of E with J_tau and positivity of E(a, b J_tau^-1).

    Exact whenever tau shares the data's scalar field; otherwise interval
    enclosures at ``bits`` precision, reported as numeric.
    """
    label = label or str(tau)
    if needs_numeric(data, tau):
        return _riemann_numeric(data, tau, bits, label)
    basis = data.lattice_basis.basis
    Jinv = complex_structure(tau).J_inv
    out = []
    bad = None
    for i, j in itertools.product(range(len(basis)), repeat=2):
        a, b = basis[i], basis[j]
        lhs, rhs = data.E(a @ Jinv, b @ Jinv), data.E(a, b)
        if lhs != rhs:
            bad = {"pair": [i + 1, j + 1], "lhs": lhs, "rhs": rhs}
            break
    out.append(entry("riemann.compatibility", bad is None, bad or {}, (label,)))
    H = riemann_gram(data, tau)
    if not H.is_symmetric():
        out.append(entry("riemann.positivity", False, {"reason": "form not symmetric", "gram": H},
                         (label,)))
        return out
    ok, w = positive_definite_witness(H)
    out.append(entry("riemann.positivity", ok, w if not ok else {"gram": H}, (label,)))
    return out


def riemann_gram(data: KugaData, tau: ExactComplex) -> ExactMatrix:
    """Gram matrix of (a, b) -> E(a, b J_tau^-1) on the lattice basis."""
    basis = data.lattice_basis.basis
    Jinv = complex_structure(tau).J_inv
    return ExactMatrix([[data.E(a, b @ Jinv) for b in basis] for a in basis])


def _riemann_numeric(data: KugaData, tau: ExactComplex, bits: int, label: str) -> list[Entry]:
    basis = data.lattice_basis.basis
    with interval_precision(bits):
        re, im = enclose(tau.re), enclose(tau.im)
        if interval_sign(im) != 1:
            return [entry("riemann.positivity", False,
                          {"reason": "cannot certify Im tau > 0", "bits": bits}, (label,))]
        Jinv = -ExactMatrix([[-re / im, (re * re + im * im) / im], [-1 / im, re / im]])
        S = enclose_matrix(data.S)
        J2i = enclose_matrix(J2)
        B = [enclose_matrix(a) for a in basis]

        def E(a, b):
            return (a.T @ S @ b @ J2i).trace()

        out = []
        bad = None
        for i, j in itertools.product(range(len(B)), repeat=2):
            d = E(B[i] @ Jinv, B[j] @ Jinv) - E(B[i], B[j])
            if not contains_zero(d):
                bad = {"pair": [i + 1, j + 1], "difference": str(d)}
                break
        out.append(entry("riemann.compatibility", bad is None,
                         {"bits": bits, **(bad or {})}, (label,), numeric=True))
        H = ExactMatrix([[E(a, b @ Jinv) for b in B] for a in B])
        minors = interval_leading_minors(H)
        signs = [interval_sign(m) for m in minors]
        ok = len(minors) == H.nrows and all(s == 1 for s in signs)
        w = {"bits": bits, "minors": [str(m) for m in minors]}
        if not ok:
            w["reason"] = ("nonpositive minor" if any(s == -1 for s in signs)
                           else "interval enclosure inconclusive")
        out.append(entry("riemann.positivity", ok, w, (label,), numeric=True))
    return out


@dataclass(frozen=True)
class FiberLattice:
    tau: ExactComplex
    vectors: tuple[ExactMatrix, ...]

    def real_period_matrix(self) -> ExactMatrix:
        """Rows (Re v, Im v) for each lattice vector v."""
        rows = []
        for v in self.vectors:
            col = v.col(0)
            rows.append([x.re for x in col] + [x.im for x in col])
        return ExactMatrix(rows)


def fiber_lattice(data: KugaData, tau: ExactComplex, basis=None) -> FiberLattice:
    """Lambda_tau: the vectors alpha (tau, 1)^T for a lattice basis."""
    if qf_sign(tau.im) != 1:
        raise ValueError(f"Im tau must be positive, got {tau}")
    basis = data.lattice_basis.basis if basis is None else basis
    col = tau_column(tau)
    fl = FiberLattice(tau, tuple(a @ col for a in basis))
    if fl.real_period_matrix().det() == 0:
        raise DegenerateLatticeError("fiber lattice vectors are R-linearly dependent",
                                     {"tau": str(tau)})
    return fl


@dataclass(frozen=True)
class PeriodMatrix:
    tau: ExactComplex
    pi: ExactMatrix
    deltas: tuple[int, ...]
    change_of_basis: ExactMatrix
    symplectic_basis: tuple[ExactMatrix, ...]

    @property
    def g(self) -> int:
        return len(self.deltas)

    def form_matrix(self) -> ExactMatrix:
        """[[0, D], [-D, 0]]."""
        D = ExactMatrix.diag(list(self.deltas))
        Z = ExactMatrix.zeros(self.g, self.g)
        return ExactMatrix.block([[Z, D], [-D, Z]])

    def relation_matrix(self) -> ExactMatrix:
        """[[0, D^-1], [-D^-1, 0]], the transposed inverse of the form matrix."""
        Dinv = ExactMatrix.diag([Fraction(1, d) for d in self.deltas])
        Z = ExactMatrix.zeros(self.g, self.g)
        return ExactMatrix.block([[Z, Dinv], [-Dinv, Z]])

    def bilinear_relations(self, K: ExactMatrix | None = None) -> dict:
        """Pi K Pi^T = 0 and i Pi K conj(Pi)^T > 0 (exact)."""
        K = self.relation_matrix() if K is None else K
        P = self.pi
        first = P @ K @ P.T
        herm = (P @ K @ P.conjugate().T).map(lambda x: I * x)
        minors = leading_minors(herm)
        hermitian = herm == herm.conjugate().T
        positive = hermitian and all(m.im == 0 and qf_sign(m.re) == 1 for m in minors)
        return {"first_zero": first.is_zero(), "first": first, "hermitian": hermitian,
                "positive": positive, "minors": minors, "H": herm}


def period_matrix(data: KugaData, tau: ExactComplex) -> PeriodMatrix:
    """Period matrix in a symplectic basis of E on the lattice, and the type."""
    failed = [e for e in riemann_conditions(data, tau) if not e.ok]
    if failed:
        raise ValueError(f"Riemann conditions fail at {tau}: {failed[0].name} {failed[0].witness}")
    if needs_numeric(data, tau):
        raise ValueError("period matrices are computed at exact points only")
    basis = data.lattice_basis.basis
    G = data.gram_E(basis)
    U, deltas = symplectic_frobenius_basis(G)
    n = len(basis)
    sbasis = []
    for j in range(n):
        acc = None
        for k in range(n):
            c = to_int(U[k, j])
            if c:
                term = basis[k] * c
                acc = term if acc is None else acc + term
        sbasis.append(acc)
    fl = fiber_lattice(data, tau, sbasis)
    pi = ExactMatrix([[v[r, 0] for v in fl.vectors] for r in range(data.g)])
    return PeriodMatrix(tau, pi, deltas, U, tuple(sbasis))

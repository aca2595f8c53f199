"""Gamma_Lambda, its projective action on C^g x H, and the fiber isomorphisms."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from ..exact import ExactComplex, ExactMatrix, as_complex, qf_sign
from .data import GammaElement, KugaData


def _check_upper(tau: ExactComplex):
    if not isinstance(tau, ExactComplex) or qf_sign(tau.im) != 1:
        raise ValueError(f"tau must lie in the upper half plane, got {tau}")


def automorphy_factor(gamma: ExactMatrix, tau: ExactComplex) -> ExactComplex:
    """c*tau + d."""
    (_, _), (c, d) = gamma.rows
    return c * tau + d


def mobius(gamma: ExactMatrix, tau: ExactComplex) -> ExactComplex:
    (a, b), (c, d) = gamma.rows
    den = c * tau + d
    if den == 0:
        raise ValueError("c*tau + d vanishes")
    return (a * tau + b) / den


def tau_column(tau: ExactComplex) -> ExactMatrix:
    return ExactMatrix.column([tau, ExactComplex(1)])


@dataclass(frozen=True)
class GammaLambdaElement:
    """gamma_lambda = [[rho(gamma), rho(gamma) lambda], [0, gamma]]."""

    gamma: GammaElement
    lam: ExactMatrix

    @property
    def block(self) -> ExactMatrix:
        rho, gam = self.gamma.rho, self.gamma.matrix
        g = rho.nrows
        return ExactMatrix.block([[rho, rho @ self.lam], [ExactMatrix.zeros(2, g), gam]])

    def __mul__(self, other: "GammaLambdaElement") -> "GammaLambdaElement":
        # (gamma_lambda)(gamma'_lambda') = (gamma gamma')_{lambda' + rho(gamma')^-1 lambda gamma'}
        g2 = other.gamma
        lam = other.lam + g2.rho.inverse() @ self.lam @ g2.matrix
        return GammaLambdaElement(self.gamma * g2, lam)

    def inverse(self) -> "GammaLambdaElement":
        ginv = self.gamma.inverse()
        return GammaLambdaElement(ginv, -(self.gamma.rho @ self.lam @ ginv.matrix))

    def projection(self) -> GammaElement:
        return self.gamma


def gamma_lambda(gamma: GammaElement, lam: ExactMatrix, data: KugaData) -> GammaLambdaElement:
    """Build gamma_lambda after checking lambda lies in the lattice."""
    if not data.lattice_basis.contains(lam):
        raise ValueError("lambda is not in the lattice")
    return GammaLambdaElement(gamma, lam)


def translation(lam: ExactMatrix, data: KugaData) -> GammaLambdaElement:
    """The kernel element 1_lambda."""
    return gamma_lambda(data.identity(), lam, data)


def projective_action(gl: GammaLambdaElement, z: Sequence, tau: ExactComplex):
    """(z, tau) -> (rho(gamma)(z + lambda (tau, 1)^T)/(c tau + d), gamma(tau))."""
    _check_upper(tau)
    gam = gl.gamma.matrix
    j = automorphy_factor(gam, tau)
    if j == 0:
        raise ValueError("c*tau + d vanishes")
    zcol = ExactMatrix.column([as_complex(x) for x in z])
    shifted = zcol + gl.lam @ tau_column(tau)
    znew = (gl.gamma.rho @ shifted) / j
    return tuple(znew.col(0)), mobius(gam, tau)


def fiber_isomorphism(data: KugaData, gamma: GammaElement, tau: ExactComplex) -> ExactMatrix:
    """phi = rho(gamma)/(c tau + d) : C^g -> C^g."""
    _check_upper(tau)
    j = automorphy_factor(gamma.matrix, tau)
    return gamma.rho.map(lambda x: ExactComplex(x) / j)


def fiber_isomorphism_report(data: KugaData, gamma: GammaElement, tau: ExactComplex) -> dict:
    """Check that phi maps Lambda_tau onto Lambda_{gamma tau} and preserves E.

    Returns ``{"ok": bool, ...}`` with the integer matrix of the induced map
    on the lattice basis and any failing index.
    """
    phi = fiber_isomorphism(data, gamma, tau)
    tau2 = mobius(gamma.matrix, tau)
    lb = data.lattice_basis
    cols = []
    for k, alpha in enumerate(lb.basis):
        lhs = phi @ (alpha @ tau_column(tau))
        image = gamma.act(alpha)
        rhs = image @ tau_column(tau2)
        if lhs != rhs:
            return {"ok": False, "reason": "phi(alpha_tau) != (gamma.alpha)_{gamma tau}",
                    "lattice_index": k + 1}
        coords = lb.integer_coordinates(image)
        if coords is None:
            return {"ok": False, "reason": "gamma.alpha not in lattice", "lattice_index": k + 1}
        cols.append(coords)
    M = ExactMatrix(cols).T
    det = M.det()
    if abs(det) != 1:
        return {"ok": False, "reason": "induced lattice map not unimodular", "det": det}
    for i, a in enumerate(lb.basis):
        for j, b in enumerate(lb.basis):
            if data.E(gamma.act(a), gamma.act(b)) != data.E(a, b):
                return {"ok": False, "reason": "E not preserved", "pair": [i + 1, j + 1]}
    return {"ok": True, "lattice_map": M, "tau_image": tau2}

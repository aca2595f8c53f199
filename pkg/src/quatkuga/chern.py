"""Scalar shadows of the Chern-class identities.

Only the numerical relations are checked here, never the class-level
statements behind them; report labels say "scalar identity".
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .exact import as_fraction

LABEL = "scalar identity"


@dataclass(frozen=True)
class ChernProfile:
    m: int
    coefficients: tuple[Fraction, ...]

    def coefficient(self, r: int) -> Fraction:
        return self.coefficients[r]

    def chen_ogiue_consistent(self) -> bool:
        """2(m+1) c_2 = m c_1^2 in coefficient form."""
        if self.m < 2:
            return True
        return 2 * (self.m + 1) * self.coefficients[2] == self.m * self.coefficients[1] ** 2


@dataclass(frozen=True)
class FibrationProfile:
    m: int
    n: int
    degE: Fraction
    genus: int

    def __post_init__(self):
        object.__setattr__(self, "degE", as_fraction(self.degE))
        if not 0 < self.n < self.m:
            raise ValueError(f"need 0 < n < m, got m={self.m}, n={self.n}")
        if self.genus < 2:
            raise ValueError(f"base genus must be >= 2, got {self.genus}")


def chern_profile(m: int) -> ChernProfile:
    """c_r = binom(m+1, r)/(m+1)^r c_1^r for r = 0..m."""
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    return ChernProfile(m, tuple(Fraction(comb(m + 1, r), (m + 1) ** r) for r in range(m + 1)))


def chen_ogiue_gap(m: int, c1sq, c2) -> Fraction:
    """m c_1^2 - 2(m+1) c_2; zero exactly in the equality case."""
    if m < 2:
        raise ValueError(f"m must be >= 2, got {m}")
    return m * as_fraction(c1sq) - 2 * (m + 1) * as_fraction(c2)


def relative_canonical_factors(m: int, n: int) -> tuple[Fraction, Fraction]:
    """(deg E factor (m-n)/(n+1), canonical factor (m+1)/(n+1))."""
    if not 0 <= n < m:
        raise ValueError(f"need 0 <= n < m, got m={m}, n={n}")
    return Fraction(m - n, n + 1), Fraction(m + 1, n + 1)


def arakelov_gap(profile: FibrationProfile) -> Fraction:
    """(m-1)(2 genus - 2) - 2 deg E; negative values violate the Arakelov inequality."""
    return (profile.m - 1) * (2 * profile.genus - 2) - 2 * profile.degE


def slope_forces_curve(n: int) -> tuple[Fraction, Fraction, bool]:
    """(2/(n+1), 1/n, equal); the comparison 2/(n+1) <= 1/n only holds for n = 1."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    lhs, rhs = Fraction(2, n + 1), Fraction(1, n)
    return lhs, rhs, lhs == rhs

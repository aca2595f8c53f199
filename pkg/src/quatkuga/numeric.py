"""Interval fallback for points outside the exact scalar fields.

Used only when exact arithmetic is impossible (e.g. a test point with
``sqrt(3)`` against a lattice over ``Q(sqrt(2))``). Verdicts built on these
enclosures are reported as numeric, never as exact.
"""

from __future__ import annotations

from contextlib import contextmanager
from fractions import Fraction

from mpmath import iv

from .exact import ExactComplex, ExactMatrix, QuadScalar

DEFAULT_BITS = 106


@contextmanager
def interval_precision(bits: int = DEFAULT_BITS):
    old = iv.prec
    iv.prec = bits
    try:
        yield
    finally:
        iv.prec = old


def enclose(x):
    """Interval enclosure of an exact real scalar (call inside interval_precision)."""
    if isinstance(x, QuadScalar):
        return enclose(x.base) + enclose(x.coeff) * iv.sqrt(x.radicand)
    if isinstance(x, ExactComplex):
        raise TypeError("enclose() handles real scalars only")
    if isinstance(x, (int, Fraction)):
        x = Fraction(x)
        return iv.mpf(x.numerator) / x.denominator
    return x


def enclose_matrix(m: ExactMatrix) -> ExactMatrix:
    return m.map(enclose)


def interval_sign(x) -> int | None:
    """Sign if the enclosure excludes zero, else None."""
    if x.a > 0:
        return 1
    if x.b < 0:
        return -1
    return None


def contains_zero(x) -> bool:
    return x.a <= 0 <= x.b


def interval_leading_minors(m: ExactMatrix) -> list:
    """Leading principal minors of an interval matrix via LU without pivoting.

    Returns the enclosures computed so far; stops early when a pivot
    enclosure touches zero (the caller treats that as inconclusive).
    """
    n = m.nrows
    a = [list(r) for r in m.rows]
    minors = []
    prod = None
    for k in range(n):
        p = a[k][k]
        prod = p if prod is None else prod * p
        minors.append(prod)
        if contains_zero(p):
            break
        for i in range(k + 1, n):
            f = a[i][k] / p
            for j in range(k, n):
                a[i][j] = a[i][j] - f * a[k][j]
    return minors

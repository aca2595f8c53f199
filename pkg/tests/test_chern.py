from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from quatkuga.chern import (
    FibrationProfile,
    arakelov_gap,
    chen_ogiue_gap,
    chern_profile,
    relative_canonical_factors,
    slope_forces_curve,
)


def test_profiles():
    assert chern_profile(1).coefficients == (1, 1)
    assert chern_profile(2).coefficients == (1, 1, Fraction(1, 3))
    assert chern_profile(3).coefficients == (1, 1, Fraction(3, 8), Fraction(1, 16))


@pytest.mark.parametrize("m", range(2, 31))
def test_chen_ogiue_identity(m):
    prof = chern_profile(m)
    assert prof.chen_ogiue_consistent()
    assert chen_ogiue_gap(m, 1, prof.coefficient(2)) == 0


def test_chen_ogiue_examples():
    assert chen_ogiue_gap(2, 9, 3) == 0
    assert chen_ogiue_gap(2, 8, 4) == -8


def test_relative_factors():
    assert relative_canonical_factors(3, 1) == (1, 2)
    with pytest.raises(ValueError):
        relative_canonical_factors(2, 2)


@given(st.integers(1, 20).flatmap(lambda m: st.tuples(st.just(m), st.integers(0, m - 1))))
def test_relative_factor_identity(mn):
    e, k = relative_canonical_factors(*mn)
    assert k - e == 1
    assert e == Fraction(1, mn[1] + 1) or mn[0] != mn[1] + 1


def test_arakelov():
    assert arakelov_gap(FibrationProfile(3, 1, 2, 2)) == 0
    assert arakelov_gap(FibrationProfile(2, 1, 0, 5)) == 8
    assert arakelov_gap(FibrationProfile(3, 1, 3, 2)) == -2


@given(st.integers(2, 10), st.integers(2, 30), st.fractions(min_value=0, max_value=50))
def test_arakelov_linearity(m, genus, degE):
    base = arakelov_gap(FibrationProfile(m, 1, degE, genus))
    assert arakelov_gap(FibrationProfile(m, 1, degE + 1, genus)) - base == -2
    assert arakelov_gap(FibrationProfile(m, 1, degE, genus + 1)) - base == 2 * (m - 1)


def test_profile_ranges():
    with pytest.raises(ValueError):
        FibrationProfile(3, 3, 0, 2)
    with pytest.raises(ValueError):
        FibrationProfile(3, 1, 0, 1)


def test_slope():
    assert slope_forces_curve(1) == (1, 1, True)
    assert slope_forces_curve(2) == (Fraction(2, 3), Fraction(1, 2), False)
    assert slope_forces_curve(5)[:2] == (Fraction(1, 3), Fraction(1, 5))
    with pytest.raises(ValueError):
        slope_forces_curve(0)


@given(st.integers(2, 1000))
def test_slope_strict(n):
    lhs, rhs, eq = slope_forces_curve(n)
    assert lhs > rhs and not eq

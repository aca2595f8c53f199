from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from quatkuga.exact import ExactMatrix
from quatkuga.kuga.hh import (
    HAMILTON,
    h_tensor_h_iso,
    multiplicativity_failures,
    structure_rank,
    su2su2_to_so4,
)


def test_unit_tensor():
    assert h_tensor_h_iso()[(0, 0)] == ExactMatrix.identity(4)


def test_isomorphism():
    assert structure_rank() == 16
    assert multiplicativity_failures() == []


def test_i_i():
    assert su2su2_to_so4(HAMILTON.x, HAMILTON.x) == ExactMatrix.diag([1, 1, -1, -1])


def test_non_unit_rejected():
    with pytest.raises(ValueError):
        su2su2_to_so4(HAMILTON.element(1, 1), HAMILTON.one())


# rational points on S^3 from the inverse stereographic projection
def _unit(a, b, c):
    n = a * a + b * b + c * c
    return HAMILTON.element((n - 1) / (n + 1), 2 * a / (n + 1), 2 * b / (n + 1), 2 * c / (n + 1))


rat = st.fractions(min_value=-6, max_value=6, max_denominator=7)
units = st.builds(_unit, rat, rat, rat)


@settings(max_examples=100, deadline=None)
@given(units, units)
def test_so4(p, q):
    assert p.nrd() == 1 and q.nrd() == 1
    M = su2su2_to_so4(p, q)
    assert M.T @ M == ExactMatrix.identity(4)
    assert M.det() == 1


def test_unit_parametrization_example():
    assert _unit(Fraction(0), Fraction(0), Fraction(0)) == -HAMILTON.one()

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from oracles import reduced_discriminant_oracle
from quatkuga.orders import (
    FuchsianElement,
    OrderDataError,
    QuatOrder,
    congruence_membership,
    element_type,
    is_maximal,
    norm_one_search,
    reduced_discriminant,
    reduced_words,
    torsion_certificate,
    torsion_screen,
    verify_order,
)
from quatkuga.quaternion import QuaternionAlgebra

h = Fraction(1, 2)


def test_standard_order(B):
    L = QuatOrder.standard(B)
    assert verify_order(L)
    # trd Gram is diag(2, 4, -6, 12): determinant -576
    assert reduced_discriminant(L) == 24
    assert reduced_discriminant(L) == reduced_discriminant_oracle([e.coords for e in L.basis], 2, -3)
    assert not is_maximal(L)


def test_paper_order(L):
    assert verify_order(L)
    assert reduced_discriminant(L) == 6
    assert reduced_discriminant_oracle([e.coords for e in L.basis], 2, -3) == 6
    assert is_maximal(L)


def test_split_standard_order():
    assert reduced_discriminant(QuatOrder.standard(QuaternionAlgebra(1, 1))) == 4


def test_non_order_witness(B):
    L = QuatOrder.from_coordinates(B, [(1, 0, 0, 0), (0, h, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)])
    cert = verify_order(L)
    assert not cert.is_order
    v = cert.violations[0]
    assert v["kind"] == "nrd not integral" and v["value"] == "-1/2" and v["basis_index"] == 2


def test_dependent_basis_rejected(B):
    with pytest.raises(OrderDataError):
        QuatOrder.from_coordinates(B, [(1, 0, 0, 0), (2, 0, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)])


def test_norm_one_search(B):
    units = norm_one_search(QuatOrder.standard(B), 3)
    assert B.element(3, 2) in [u.quaternion for u in units]
    assert all(u.quaternion.nrd() == 1 for u in units)
    # height 0 is the zero vector only
    assert norm_one_search(QuatOrder.standard(B), 0) == []
    assert {u.quaternion for u in norm_one_search(QuatOrder.standard(B), 1)} >= {B.one(), -B.one()}


def test_hamilton_units():
    A = QuaternionAlgebra(-1, -1)
    found = {u.quaternion for u in norm_one_search(QuatOrder.standard(A), 2)}
    expected = {s * e for s in (1, -1) for e in A.basis()}
    assert found == expected


def test_element_types(B):
    assert element_type(FuchsianElement.of(-B.one())) == "central"
    assert element_type(FuchsianElement.of(B.element(3, 2))) == "hyperbolic"
    assert element_type(FuchsianElement.of(B.element(h, 0, h))) == "elliptic"


def test_torsion(B):
    assert torsion_certificate(FuchsianElement.of(-B.one())) == (True, 2)
    assert torsion_certificate(FuchsianElement.of(B.element(h, 0, h))) == (True, 6)
    assert torsion_certificate(FuchsianElement.of(B.element(3, 2))) == (False, None)


def test_congruence(B):
    L = QuatOrder.standard(B)
    g = FuchsianElement.of(B.element(3, 2))
    assert congruence_membership(FuchsianElement.of(B.one()), L, 7)
    assert congruence_membership(g, L, 2)
    assert not congruence_membership(g, L, 4)


def test_reduced_words_counts():
    words = list(reduced_words(2, 3))
    # 1 + 4 + 4*3 + 4*9
    assert len(words) == 53
    assert words[0] == ()
    for w in words:
        assert all(not (a[0] == b[0] and a[1] == -b[1]) for a, b in zip(w, w[1:]))


def test_torsion_screen(B, L):
    gens = [FuchsianElement.of(B.element(3, 2)), FuchsianElement.of(B.element(5, 0, 0, 2))]
    assert torsion_screen(gens, 4) == []
    found = torsion_screen([FuchsianElement.of(B.element(h, 0, h))], 1)
    assert found and found[0]["order"] == 6


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([(2, -3), (3, -1), (5, 2), (-1, -1), (1, 1), (7, -5)]))
def test_discriminant_matches_oracle(ab):
    A = QuaternionAlgebra(*ab)
    L = QuatOrder.standard(A)
    assert reduced_discriminant(L) == reduced_discriminant_oracle([e.coords for e in L.basis], *ab)

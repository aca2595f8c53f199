import pytest
from hypothesis import HealthCheck, given, settings, strategies as st

from quatkuga.exact import J2, ExactComplex, ExactMatrix
from quatkuga.kuga.data import check_kuga_data
from quatkuga.kuga.families import (
    build_elliptic_family,
    build_false_elliptic,
    endomorphism_commutation,
    fiber_product_data,
    paper_generators,
    shimura_form_identity,
    shimura_matrix,
)
from quatkuga.kuga.periods import riemann_conditions
from quatkuga.orders import FuchsianElement, QuatOrder
from quatkuga.quaternion import QuaternionAlgebra, matrix_embedding

rat = st.fractions(min_value=-20, max_value=20, max_denominator=12)
mat2 = st.lists(rat, min_size=4, max_size=4).map(lambda v: ExactMatrix([v[:2], v[2:]]))


def test_shimura_matrix(B):
    assert shimura_matrix(B) == ExactMatrix.diag([1, 3])
    assert shimura_matrix(B) == J2 @ matrix_embedding(B)(B.y)


def test_auto_scale(fek):
    assert fek.meta["denominator_lcm"] == 1
    assert fek.meta["scale"] == 1
    E1 = fek.meta["E1"]
    assert E1 == ExactMatrix([[0, 0, 3, 0], [0, 0, 0, 6], [-3, 0, 0, 0], [0, -6, 0, 0]])


def test_standard_order_flagged_non_maximal(B):
    data = build_false_elliptic(B, QuatOrder.standard(B), paper_generators())
    assert "non-maximal-order" in data.flags
    assert [e for e in check_kuga_data(data) if not e.ok] == []


def test_explicit_scale(B, L):
    data = build_false_elliptic(B, L, paper_generators(), scale=2)
    assert data.S == ExactMatrix.diag([2, 6])


@pytest.mark.parametrize("ab", [(1, 7), (-1, -1)])
def test_rejects_split_or_definite(ab):
    A = QuaternionAlgebra(*ab)
    with pytest.raises(ValueError):
        build_false_elliptic(A, QuatOrder.standard(A), [])


def test_rejects_torsion(B, L):
    gens = [FuchsianElement.of(B.element("1/2", 0, "1/2"))]
    with pytest.raises(ValueError, match="torsion"):
        build_false_elliptic(B, L, gens)


def test_shimura_examples(B):
    emb = matrix_embedding(B)
    I2 = ExactMatrix.identity(2)
    assert shimura_form_identity(B, I2, I2) == (0, 0, True)
    lhs, rhs, eq = shimura_form_identity(B, emb(B.one()), emb(B.y))
    assert lhs == rhs == 6 and eq


@settings(max_examples=200, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(mat2, mat2)
def test_shimura_identity_random(alpha, beta):
    B = QuaternionAlgebra(2, -3)
    assert shimura_form_identity(B, alpha, beta)[2]


@pytest.mark.parametrize("beta", ["1", "x", "y", "xy"])
def test_endomorphism_commutation(B, fek, beta):
    q = {"1": B.one(), "x": B.x, "y": B.y, "xy": B.xy}[beta]
    assert all(e.ok for e in endomorphism_commutation(B, fek, q))


def test_right_multiplication_does_not_commute(B, fek):
    # the literal right action alpha -> alpha beta' fails to commute with alpha gamma^-1
    bt = matrix_embedding(B)(B.y)
    g = fek.generator(0)
    a = fek.lattice[0]
    from quatkuga.quaternion import conjugation_matrix_form
    bc = conjugation_matrix_form(bt)
    assert g.act(a @ bc) != g.act(a) @ bc


def test_fiber_product(fek):
    assert fiber_product_data(fek, 1) is fek
    d2 = fiber_product_data(fek, 2)
    assert d2.g == 4 and len(d2.lattice) == 8
    assert [e for e in check_kuga_data(d2) if not e.ok] == []
    assert all(e.ok for e in riemann_conditions(d2, ExactComplex(0, 1)))
    G = d2.gram_E()
    assert G == ExactMatrix.block_diag([fek.gram_E(), fek.gram_E()])
    with pytest.raises(ValueError):
        fiber_product_data(fek, 0)


def test_elliptic_family():
    data = build_elliptic_family(3)
    assert data.flags == ("non-cocompact",)
    assert [e for e in check_kuga_data(data) if not e.ok] == []
    for g in data.generators():
        m = g.matrix
        assert all(int(x) % 3 == 0 for x in (m - ExactMatrix.identity(2)).entries())
    with pytest.raises(ValueError):
        build_elliptic_family(2)

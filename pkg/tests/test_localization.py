from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from aleinst.lattice import FixedPointDatum, dimension_formula, discriminant, rank_formula
from aleinst.localization import (
    FactoredClass,
    LinearForm,
    VanishingFactor,
    edge_context,
    edge_factor,
    edge_factor_closed_k2,
    edge_total_degree,
    edge_value,
    eps_forms,
    euler_class,
    restriction_character,
    vertex_fund_value,
    vertex_value,
)
from aleinst.young import enumerate_partitions

E1, E2, A = F(1, 5), F(1, 7), F(7, 3)


def vertex_oracle(y, z, e1, e2, x):
    """Product formula written directly from row and column lengths."""
    def col(p, i):
        return p[i - 1] if 1 <= i <= len(p) else 0

    def row(p, j):
        return sum(1 for c in p if c >= j)

    out = F(1)
    for i in range(1, len(y) + 1):
        for j in range(1, col(y, i) + 1):
            out *= x - (row(z, j) - i) * e1 + (col(y, i) - j + 1) * e2
    for i in range(1, len(z) + 1):
        for j in range(1, col(z, i) + 1):
            out *= x + (row(y, j) - i + 1) * e1 - (col(z, i) - j) * e2
    return out


small_parts = st.integers(0, 5).flatmap(lambda n: st.sampled_from([p.cols for p in enumerate_partitions(n)]))


@given(small_parts, small_parts)
@settings(max_examples=80)
def test_vertex_factor_matches_product_formula(y, z):
    assert vertex_value(y, z, E1, E2, A) == vertex_oracle(y, z, E1, E2, A)


def test_vertex_fund_single_box():
    assert vertex_fund_value((1,), E1, E2, A) == A
    assert vertex_fund_value((2,), E1, E2, A) == A * (A - E2)


def test_linear_form_arithmetic():
    a, e = LinearForm.var("a"), LinearForm.var("e1")
    f = a - e * 2 + 3
    assert f.evaluate({"a": F(1), "e1": F(1, 2)}) == 3
    assert (f - f).is_zero()


def test_factored_class_vanishing():
    x = LinearForm.var("x")
    cls = FactoredClass([(x, -1)])
    with pytest.raises(VanishingFactor):
        cls.evaluate({"x": F(0)})
    with pytest.raises(VanishingFactor):
        FactoredClass([(x - x, 1)])


def _k2(v, e1, e2, a):
    (e11, e21), = [eps_forms(2, 1)]
    point = {"e1": e1, "e2": e2, "a": a}
    closed = edge_factor_closed_k2(F(v), e11, e21, LinearForm.var("a")).evaluate(point)
    general = edge_factor(edge_context(2, (F(v),), 1), 2, eps_forms(2, 1), LinearForm.var("a")).evaluate(point)
    return closed, general


def test_edge_k2_v_one_is_a():
    closed, general = _k2(1, E1, E2, A)
    assert closed == general == A


def test_edge_k2_minus_three_halves():
    # (a − ε1' − ε2')(a − ε1' − 2ε2') at the patch-one weights ε1' = 2ε1, ε2' = ε2 − ε1
    e1p, e2p = 2 * E1, E2 - E1
    closed, general = _k2(F(-3, 2), E1, E2, A)
    assert closed == general == (A - e1p - e2p) * (A - e1p - 2 * e2p)


def test_edge_value_trivial_sector():
    for k in (2, 3, 4):
        assert edge_value(k, (F(0),) * (k - 1), E1, E2, A) == 1


def test_edge_total_degree_k2():
    # the k = 2 closed form has floor(v)(floor(v)+ 2 frac(v)) factors for v ≥ 0
    assert edge_total_degree(2, (F(2),)) == 4
    assert edge_total_degree(2, (F(5, 2),)) == 6


def test_restriction_character_counts():
    assert sum(restriction_character(1, 3).values()) == 4
    assert sum(restriction_character(1, -3).values()) == -2
    assert restriction_character(1, -1) == {}


@pytest.mark.parametrize("k,w,v", [(2, (1, 0), (F(0),)), (2, (1, 1), (F(1, 2),)), (3, (1, 1, 0), (F(2, 3), F(1, 3)))])
def test_euler_class_degrees(k, w, v):
    from aleinst.lattice import enumerate_sector_data

    r = sum(w)
    for d in enumerate_sector_data(k, w, v, 2):
        delta = discriminant(d)
        assert euler_class("tangent", d).net_degree == dimension_formula(k, r, w, delta)
        assert euler_class("natural", d).net_degree == rank_formula(k, r, w, v, delta)


def test_euler_class_rejects_unknown_kind():
    d = FixedPointDatum(2, (1, 0), (((), ()),), ((F(0),),))
    with pytest.raises(ValueError):
        euler_class("cotangent", d)

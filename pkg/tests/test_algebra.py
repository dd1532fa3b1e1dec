import cmath
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from aleinst.algebra import (
    CutoffMismatch,
    Cyclotomic,
    GradedSeries,
    Jet,
    MixedFieldError,
    NonUnitConstantTerm,
    PoleAtOrigin,
    UniRatFunc,
    cyclotomic_polynomial,
    limit_at_origin,
    series_exp,
    series_inverse,
    series_log,
)

small = st.fractions(min_value=-20, max_value=20, max_denominator=12)
polys = st.lists(small, min_size=0, max_size=4)


def nonzero_polys():
    return st.lists(small, min_size=1, max_size=4).filter(lambda p: any(p))


@st.composite
def ratfuncs(draw):
    return UniRatFunc(draw(polys), draw(nonzero_polys()))


def numeric(c: Cyclotomic) -> complex:
    z = cmath.exp(2j * cmath.pi / c.order)
    return sum(complex(float(a)) * z ** i for i, a in enumerate(c.rep))


# ---------------------------------------------------------------------------
# UniRatFunc


def test_ratfunc_normal_form_cancels_common_factor():
    x = UniRatFunc.x()
    f = (x * x - 1) / (2 * x - 2)
    assert f.num == (F(1, 2), F(1, 2)) and f.den == (F(1),)
    assert f.is_polynomial


def test_ratfunc_zero_denominator():
    with pytest.raises(ZeroDivisionError):
        UniRatFunc((1,), ())


@given(ratfuncs(), ratfuncs(), ratfuncs())
@settings(max_examples=60, deadline=None)
def test_ratfunc_field_axioms(f, g, h):
    assert (f + g) + h == f + (g + h)
    assert f * (g + h) == f * g + f * h
    assert f - f == UniRatFunc()
    if f:
        assert f * f.inverse() == UniRatFunc.const(1)


@given(ratfuncs(), small)
@settings(max_examples=60, deadline=None)
def test_ratfunc_evaluation_is_a_homomorphism(f, x0):
    g = f * f + 3
    try:
        assert g(x0) == f(x0) * f(x0) + 3
    except ZeroDivisionError:
        pass


def test_denominator_is_monic():
    f = UniRatFunc((1,), (0, 3))
    assert f.den[-1] == 1 and f.num == (F(1, 3),)


def test_limit_at_origin():
    x = UniRatFunc.x()
    assert limit_at_origin((x * x + 2 * x) / (3 * x)) == F(2, 3)
    with pytest.raises(PoleAtOrigin):
        limit_at_origin(1 / x)


def test_ratfunc_rejects_cyclotomic():
    with pytest.raises(MixedFieldError):
        UniRatFunc.x() + Cyclotomic.omega(5)


# ---------------------------------------------------------------------------
# Cyclotomic


# Φ_n coefficient lists in ascending degree, copied from standard tables
PHI = {
    1: [-1, 1],
    2: [1, 1],
    6: [1, -1, 1],
    8: [1, 0, 0, 0, 1],
    12: [1, 0, -1, 0, 1],
    15: [1, -1, 0, 1, -1, 1, 0, -1, 1],
}


@pytest.mark.parametrize("n", sorted(PHI))
def test_cyclotomic_polynomial_table(n):
    assert list(cyclotomic_polynomial(n)) == [F(c) for c in PHI[n]]


@pytest.mark.parametrize("k", [2, 3, 5, 6, 12])
def test_primitive_root_order(k):
    w = Cyclotomic.omega(k)
    assert w ** k == 1
    assert all(w ** j != 1 for j in range(1, k))


@given(st.integers(2, 16), st.lists(small, min_size=1, max_size=6).filter(any))
@settings(max_examples=60, deadline=None)
def test_cyclotomic_inverse_matches_complex(k, rep):
    c = Cyclotomic(k, rep)
    if not c:
        return
    inv = c.inverse()
    assert c * inv == 1
    assert abs(numeric(inv) - 1 / numeric(c)) < 1e-8


def test_sum_of_roots_vanishes():
    for k in range(2, 10):
        assert sum((Cyclotomic.omega(k, j) for j in range(k)), Cyclotomic.const(k, 0)) == 0


# ---------------------------------------------------------------------------
# Jets and series


def test_jet_exp_log_consistency():
    t = Jet.symbol(("t",), 4, "t")
    e = (t * 2).exp()
    assert [e.coefficient((i,)) for i in range(5)] == [1, 2, 2, F(4, 3), F(2, 3)]
    assert e * (-t * 2).exp() == Jet.const(("t",), 4, 1)


def test_jet_exp_rejects_constant():
    with pytest.raises(NonUnitConstantTerm):
        Jet.const(("t",), 2, 1).exp()


def test_jet_inverse_stays_exact():
    t = Jet.symbol(("t",), 3, "t")
    inv = (1 + t).inverse()
    assert [inv.coefficient((i,)) for i in range(4)] == [1, -1, 1, -1]
    assert all(isinstance(inv.coefficient((i,)), (int, F)) for i in range(4))


def test_series_truncation_and_product():
    a = GradedSeries({(F(0), F(0)): 1, (F(1, 2), F(0)): 1}, 1)
    sq = a * a
    assert sq.coefficient(1) == 1 and sq.coefficient(F(1, 2)) == 2
    with pytest.raises(CutoffMismatch):
        a + GradedSeries.zero(2)


def test_series_exp_log_roundtrip():
    s = GradedSeries({(F(1), F(0)): F(3), (F(2), F(0)): F(-1, 2), (F(1, 3), F(0)): F(1)}, 3)
    back = series_log(series_exp(s))
    assert back == s


def test_series_inverse_of_geometric():
    s = GradedSeries({(F(0), F(0)): 1, (F(1), F(0)): -1}, 5)
    inv = series_inverse(s)
    assert all(inv.coefficient(n) == 1 for n in range(6))
    with pytest.raises(NonUnitConstantTerm):
        series_inverse(GradedSeries({(F(1), F(0)): 1}, 2))

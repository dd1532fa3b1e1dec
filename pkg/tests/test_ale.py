from fractions import Fraction as F

import pytest

from aleinst.algebra import GradedSeries, Jet, UniRatFunc
from aleinst.ale import (
    AleParams,
    KNotTwo,
    SectorExcluded,
    classical_tau_coefficient,
    z_ale,
    z_ale_sector,
    z_bullet_k2,
    z_circ,
    z_circ_sector,
    z_deformed_sector,
    z_vw,
    z_vw_factored,
)
from aleinst.lattice import CongruenceViolation, LatticeError
from aleinst.nekrasov import ADJOINT, FUNDAMENTAL, z_c2

E1, E2 = F(1, 5), F(1, 7)
A = F(7, 3)


def params(k, w, cutoff, a=None, **kw):
    r = sum(w)
    if a is None:
        a = (A, -A) if r == 2 else tuple(F(3 * i + 1, 2 + i) for i in range(r))
    return AleParams(k, w, E1, E2, a, cutoff=cutoff, **kw)


def test_trivial_sector_starts_at_one():
    z = z_ale_sector(params(2, (1, 0), 2), (F(0),))
    assert z.coefficient(0) == 1


def test_k3_u2_lowest_coefficient_closed_form():
    z = z_ale_sector(params(3, (2, 0, 0), 1), (F(1), F(1)))
    s = E1 + E2
    want = -1 / (2 * A * (2 * A - s)) - 1 / (2 * A * (2 * A + s))
    assert z.min_exponent() == 1 and z.coefficient(1) == want


def test_k3_single_monomial_sector():
    z = z_ale_sector(params(3, (1, 0, 1), F(1, 3)), (F(1, 3), F(2, 3)))
    assert z.terms == {(F(1, 3), F(0)): 1}


def test_k3_frozen_three_term_row():
    # derived value, frozen: lowest term of w = (0,1,1), v = (0,0)
    z = z_ale_sector(params(3, (0, 1, 1), F(2, 3)), (F(0), F(0)))
    assert z.coefficient(F(2, 3)) == F(-1525095, 10626778)


def test_congruence_violation():
    with pytest.raises(CongruenceViolation):
        z_ale_sector(params(2, (1, 1), 1), (F(0),))


def test_params_validation():
    with pytest.raises(LatticeError):
        AleParams(3, (1, 1), E1, E2, (A, -A))
    with pytest.raises(LatticeError):
        AleParams(2, (1, 1), E1, E2, (A,))
    with pytest.raises(ValueError):
        AleParams(2, (1, 0), E1, E2, (A,), matter=ADJOINT)


def test_full_sum_contains_listed_sectors():
    p = params(2, (1, 1), F(3, 2))
    z = z_ale(p)
    assert set(z) == {(F(-1, 2),), (F(1, 2),), (F(3, 2),), (F(-3, 2),)}
    assert z[(F(1, 2),)] == z_ale_sector(p, (F(1, 2),))


def test_sector_bound_drops_sectors():
    p = params(2, (1, 1), F(3, 2), sector_bound=F(1, 4))
    z = z_ale(p)
    assert set(z) == {(F(-1, 2),), (F(1, 2),)}
    assert set(z.dropped) == {(F(-3, 2),), (F(3, 2),)}


def test_fundamental_gate_excludes():
    p = AleParams(2, (1, 0), E1, E2, (A,), matter=FUNDAMENTAL, mu=(F(1, 3),), cutoff=2)
    z = z_ale(p)
    assert (F(1),) in z.excluded and (F(1),) not in z
    with pytest.raises(SectorExcluded):
        z_ale_sector(p, (F(1),))


def test_workers_do_not_change_result():
    p = params(3, (1, 1, 0), 1)
    assert z_ale(p, workers=1) == z_ale(p, workers=3)


@pytest.mark.parametrize("k,r,w", [(2, 2, (1, 1)), (3, 2, (1, 1, 0)), (3, 3, (1, 1, 1)), (4, 1, (0, 1, 0, 0))])
def test_vw_direct_equals_factored(k, r, w):
    assert z_vw(k, r, w, 2) == z_vw_factored(k, r, w, 2)


def test_massless_adjoint_limit_is_vw_count():
    x = UniRatFunc.x()
    p = AleParams(2, (1, 1), E1, E2, (A, -A), matter=ADJOINT, mu=x, cutoff=F(3, 2))
    counts = z_vw(2, 2, (1, 1), F(3, 2))
    for v, series in z_ale(p).items():
        limited = {e: c(F(0)) if isinstance(c, UniRatFunc) else c for e, c in series.terms.items()}
        assert limited == counts[v].terms


def test_circ_collapses_to_ale():
    p = params(3, (1, 1, 0), F(4, 3))
    plain = z_ale(p)
    for v, series in z_circ(p).items():
        assert series.collapse_u() == plain[v]


def _tau_route(p, v, tau):
    cl = classical_tau_coefficient(p)
    terms = {}
    for (eq, eu), c in z_circ_sector(p, v, cross_term=False).terms.items():
        j = (tau * (eu + cl)).exp() * c
        terms[(eq, F(0))] = terms[(eq, F(0))] + j if (eq, F(0)) in terms else j
    return GradedSeries(terms, p.cutoff)


def test_first_time_deformation_matches_u_grading():
    p = params(3, (1, 1, 0), F(4, 3), a=(A, F(-2, 3)))
    v = (F(2, 3), F(1, 3))
    tau = Jet.symbol(("tau",), 2, "tau")
    dj = z_deformed_sector(p, v, taus={1: -tau})
    want = _tau_route(p, v, tau)
    for d in range(3):
        assert dj.component((d,)) == want.map_coeffs(lambda j, d=d: j.coefficient((d,)))


def test_cross_term_variant_differs():
    p = params(3, (1, 1, 0), F(4, 3), a=(A, F(-2, 3)))
    v = (F(2, 3), F(1, 3))
    assert z_circ_sector(p, v, cross_term=True) != z_circ_sector(p, v, cross_term=False)


def test_blowup_function_matches_general_deformation():
    p = params(2, (1, 1), F(3, 2))
    t = Jet.symbol(("t",), 2, "t")
    bullet = z_bullet_k2(p)
    for v, jet in bullet.items():
        general = z_deformed_sector(p, v, ts={(1, 1): -t})
        assert jet == general


def test_blowup_function_needs_k2():
    with pytest.raises(KNotTwo):
        z_bullet_k2(params(3, (1, 1, 0), 1))


def test_blowup_degree_zero_is_partition_function():
    p = params(2, (2, 0), 1)
    plain = z_ale(p)
    for v, jet in z_bullet_k2(p).items():
        assert jet.component((0,)) == plain[v]


def test_u1_k2_leading_block():
    # trivial sector, q^1: two patches each contributing one box
    p = AleParams(2, (1, 0), E1, E2, (A,), cutoff=1)
    z = z_ale_sector(p, (F(0),))
    w1 = (2 * E1, E2 - E1)
    w2 = (E1 - E2, 2 * E2)
    want = 1 / (w1[0] * w1[1]) + 1 / (w2[0] * w2[1])
    assert z.coefficient(1) == want
    assert z_c2(e1=E1, e2=E2, a=(A,), cutoff=1).coefficient(1) == 1 / (E1 * E2)

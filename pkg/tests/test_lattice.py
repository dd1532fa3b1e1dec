from fractions import Fraction as F
from itertools import product

import pytest

from aleinst.lattice import (
    CongruenceViolation,
    FixedPointDatum,
    IndexOutOfRange,
    KTooSmall,
    block_classes,
    cartan,
    check_sector,
    cyclic_shift,
    dimension_formula,
    discriminant,
    enumerate_sector_data,
    fundamental_gate,
    holonomy_class,
    list_sectors,
    rank_formula,
    sector_decompositions,
    slope_is_valid,
    toric_weights,
    vector_class,
)


@pytest.mark.parametrize("k", range(2, 9))
def test_cartan_inverse(k):
    cd = cartan(k)
    n = k - 1
    for i, j in product(range(n), repeat=2):
        entry = sum(cd.C[i][m] * cd.Cinv[m][j] for m in range(n))
        assert entry == (1 if i == j else 0)


def test_cartan_inverse_k3_frozen():
    assert cartan(3).Cinv == ((F(2, 3), F(1, 3)), (F(1, 3), F(2, 3)))
    assert cartan(4).ktilde == 2 and cartan(5).ktilde == 5


def test_k_too_small():
    with pytest.raises(KTooSmall):
        cartan(1)


@pytest.mark.parametrize("k", range(2, 8))
def test_toric_weights_glue(k):
    # adjacent patches share a divisor: ε2 at i is minus ε1 at i + 1
    for i in range(1, k):
        e2_i = toric_weights(k, i)[1]
        e1_next = toric_weights(k, i + 1)[0]
        assert e2_i == (-e1_next[0], -e1_next[1])
    assert toric_weights(k, 1)[0] == (k, 0)
    assert toric_weights(k, k)[1] == (0, k)
    with pytest.raises(IndexOutOfRange):
        toric_weights(k, k + 1)


def test_slope_validity():
    assert not slope_is_valid(2, F(1))
    assert not slope_is_valid(3, F(2))  # ε1^(2) = 2ε1 − ε2 vanishes
    assert slope_is_valid(3, F(-3, 7))


def test_list_sectors_k2():
    got = list_sectors(2, (1, 1), 2)
    assert sorted(v[0] for v in got) == [F(-3, 2), F(-1, 2), F(1, 2), F(3, 2)]


@pytest.mark.parametrize("k,w", [(3, (1, 1, 0)), (3, (0, 1, 1)), (4, (1, 0, 1, 0)), (2, (2, 0))])
def test_listed_sectors_satisfy_congruence(k, w):
    cd = cartan(k)
    r = sum(w)
    for v in list_sectors(k, w, 2):
        check_sector(k, w, v)
        assert cd.pair(v, v) / (2 * r) <= 2


def test_sector_congruence_rejects():
    with pytest.raises(CongruenceViolation):
        check_sector(2, (1, 1), (F(0),))
    assert vector_class((F(1, 3), F(2, 3)), 3) == 2
    assert holonomy_class((0, 1, 1)) == 0


@pytest.mark.parametrize("k,w,v", [
    (3, (2, 0, 0), (F(1), F(1))),
    (3, (1, 1, 0), (F(2, 3), F(1, 3))),
    (2, (1, 1), (F(1, 2),)),
])
def test_decompositions_match_brute_force(k, w, v):
    bound = F(3)
    fast = sorted(sector_decompositions(k, w, v, bound))
    wide = sorted(sector_decompositions(k, w, v, bound, radius=8))
    assert fast == wide and fast


@pytest.mark.parametrize("k,w", [(2, (1, 1)), (3, (1, 1, 0)), (3, (2, 0, 0)), (4, (0, 1, 1, 0))])
def test_discriminant_grid(k, w):
    r = sum(w)
    for v in list_sectors(k, w, 1):
        for d in enumerate_sector_data(k, w, v, 2):
            delta = discriminant(d)
            assert (delta * 2 * r * k).denominator == 1
            assert delta >= 0


def test_dimension_formula_examples():
    for n in range(4):
        assert dimension_formula(2, 1, (1, 0), n) == 2 * n
    assert dimension_formula(2, 2, (2, 0), 1) == 4
    # minimal datum for k = 3, w = (1,1,0) has Δ = 1/3, giving 4Δ − 2/3
    assert dimension_formula(3, 2, (1, 1, 0), F(1, 3)) == F(4, 3) - F(2, 3)


def test_rank_formula_trivial_holonomy():
    assert rank_formula(2, 1, (1, 0), (F(0),), 3) == 3


def test_cyclic_shift():
    assert cyclic_shift((1, 2, 3), 1) == (2, 3, 1)


def test_fixed_point_datum_checks_classes():
    classes = block_classes((1, 1, 0))
    assert classes == (0, 1)
    with pytest.raises(CongruenceViolation):
        FixedPointDatum(3, (1, 1, 0), (((), (), ()), ((), (), ())), ((F(0), F(0)), (F(0), F(0))))


def test_fundamental_gate_states():
    assert fundamental_gate(2, 1, (1, 0), (F(0),), 1) == "allowed"
    assert fundamental_gate(2, 1, (1, 0), (F(1),), 1) == "excluded"

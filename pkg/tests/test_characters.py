from fractions import Fraction as F

import pytest

from aleinst.characters import affine_char, eta_inverse_power, vw_character_check, vw_from_characters
from aleinst.ale import z_vw

PARTITION_NUMBERS = [1, 1, 2, 3, 5, 7, 11, 15, 22, 30]


def test_eta_inverse_is_partition_generating_function():
    s = eta_inverse_power(1, 9)
    assert s.min_exponent() == F(-1, 24)
    assert [s.coefficient(F(-1, 24) + n) for n in range(9)] == PARTITION_NUMBERS[:9]


def test_eta_inverse_power_two():
    # bipartitions, OEIS A000712
    s = eta_inverse_power(2, 6)
    assert [s.coefficient(F(-2, 24) + n) for n in range(6)] == [1, 2, 5, 10, 20, 36]


def test_eta_rejects_negative_power():
    with pytest.raises(ValueError):
        eta_inverse_power(-1, 2)


def test_k2_theta_exponents():
    vac = affine_char(2, 0, 3)
    assert sorted(set(vac.theta.values())) == [0, 1]  # 4 lies beyond 3 + 1/24
    spin = affine_char(2, 1, 3)
    assert sorted(set(spin.theta.values())) == [F(1, 4), F(9, 4)]


def test_character_weights_have_right_class():
    ch = affine_char(3, 1, 2)
    for key in ch.theta:
        assert (key[0] - F(2, 3)).denominator == 1 and (key[1] - F(1, 3)).denominator == 1


@pytest.mark.parametrize("k,r,w", [
    (2, 1, (1, 0)), (2, 2, (1, 1)), (2, 2, (2, 0)), (3, 1, (0, 1, 0)), (3, 2, (1, 1, 0)),
    (4, 2, (0, 1, 0, 1)), (5, 1, (0, 0, 1, 0, 0)),
])
def test_counting_equals_character_product(k, r, w):
    report = vw_character_check(k, r, w, 2)
    assert report.status == "pass", report.details


def test_character_product_sectors_match_counting_keys():
    counted = z_vw(3, 2, (1, 1, 0), 2)
    assert set(vw_from_characters(3, (1, 1, 0), 2)) == set(counted)


def test_rank_mismatch():
    with pytest.raises(ValueError):
        vw_character_check(2, 3, (1, 1), 1)

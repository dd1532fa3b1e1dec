import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from aleinst import _kernels_py
from aleinst.kernels import BACKEND
from aleinst.young import (
    BoxOutsideTableau,
    Partition,
    box_stats,
    compositions,
    enumerate_partitions,
    enumerate_young_tuples,
)

try:
    from aleinst import _kernels as compiled
except ImportError:
    compiled = None

# p(n), OEIS A000041
PARTITION_NUMBERS = [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77, 101, 135]
# number of 2-colored partitions, OEIS A000712
BIPARTITION_NUMBERS = [1, 2, 5, 10, 20, 36, 65, 110, 185]


@st.composite
def partitions_st(draw, max_n=12):
    n = draw(st.integers(0, max_n))
    parts = enumerate_partitions(n)
    return draw(st.sampled_from(parts))


@pytest.mark.parametrize("n", range(len(PARTITION_NUMBERS)))
def test_partition_counts(n):
    assert len(enumerate_partitions(n)) == PARTITION_NUMBERS[n]


@pytest.mark.parametrize("n", range(len(BIPARTITION_NUMBERS)))
def test_pair_counts(n):
    assert len(enumerate_young_tuples(2, n)) == BIPARTITION_NUMBERS[n]


def test_partitions_are_distinct_and_sorted():
    ps = enumerate_partitions(9)
    assert len(set(ps)) == len(ps)
    assert all(sum(p.cols) == 9 for p in ps)


@given(partitions_st())
def test_conjugation_is_an_involution(y):
    assert y.conjugate().conjugate() == y
    assert y.conjugate().weight == y.weight


@given(partitions_st())
def test_hook_lengths_via_stats(y):
    # hook = arm + leg + 1 with the self leg; the multiset of hooks is conjugation invariant
    hooks = sorted(box_stats(y, None, b).arm + box_stats(y, None, b).leg + 1 for b in y.boxes())
    yc = y.conjugate()
    hooks_c = sorted(box_stats(yc, None, b).arm + box_stats(yc, None, b).leg + 1 for b in yc.boxes())
    assert hooks == hooks_c


def test_box_stats_example():
    y = Partition((3, 1))
    s = box_stats(y, None, (1, 1))
    assert (s.arm, s.leg, s.arm_colength, s.leg_colength) == (2, 1, 0, 0)
    foreign = box_stats(y, Partition(()), (1, 2))
    assert foreign.leg == -1
    with pytest.raises(BoxOutsideTableau):
        box_stats(y, None, (2, 2))


def test_invalid_partition():
    with pytest.raises(ValueError):
        Partition((1, 2))


def test_compositions_count():
    # C(n + parts - 1, parts - 1)
    assert len(list(compositions(4, 3))) == 15


@pytest.mark.skipif(compiled is None, reason="compiled kernels not built")
@given(partitions_st(8), partitions_st(8))
@settings(max_examples=80)
def test_compiled_kernels_match_fallback(y, z):
    a, b = y.cols, z.cols
    assert compiled.conjugate(a) == _kernels_py.conjugate(a)
    assert compiled.vertex_pairs(a, b) == _kernels_py.vertex_pairs(a, b)
    assert compiled.fund_pairs(a) == _kernels_py.fund_pairs(a)


@pytest.mark.skipif(compiled is None, reason="compiled kernels not built")
def test_compiled_partitions_match_fallback():
    for n in range(12):
        assert compiled.partitions(n) == _kernels_py.partitions(n)


def test_backend_is_reported():
    assert BACKEND in ("python", "cython")


@given(partitions_st(7), partitions_st(7))
def test_vertex_pair_count(y, z):
    assert len(_kernels_py.vertex_pairs(y.cols, z.cols)) == y.weight + z.weight

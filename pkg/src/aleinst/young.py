"""Young diagrams with arm/leg statistics and tableau-tuple enumeration.

Convention: a diagram is stored by its column lengths ``cols`` with
``cols[i-1]`` the length of column i.  A box is ``(i, j)`` with column index
i and row index j, both 1-based, so the arm of ``(i, j)`` is
``cols[i-1] - j`` and the leg is ``rows[j-1] - i``.  This is the transpose of
the usual row-major convention.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Iterator, Sequence

from aleinst import kernels


class BoxOutsideTableau(ValueError):
    """Own-diagram statistics were requested for a box not in the diagram."""


@dataclass(frozen=True, order=True)
class Partition:
    cols: tuple = ()

    def __post_init__(self) -> None:
        cols = tuple(int(c) for c in self.cols)
        if any(c <= 0 for c in cols) or any(a < b for a, b in zip(cols, cols[1:])):
            raise ValueError(f"column lengths must be positive and weakly decreasing: {cols}")
        object.__setattr__(self, "cols", cols)

    @property
    def weight(self) -> int:
        return sum(self.cols)

    def __len__(self) -> int:
        return self.weight

    def conjugate(self) -> "Partition":
        return Partition(kernels.conjugate(self.cols))

    @property
    def rows(self) -> tuple:
        return kernels.conjugate(self.cols)

    def col_length(self, i: int) -> int:
        """λ_i, zero outside the diagram."""
        return self.cols[i - 1] if 1 <= i <= len(self.cols) else 0

    def row_length(self, j: int) -> int:
        """λ'_j, zero outside the diagram."""
        return sum(1 for c in self.cols if c >= j) if j >= 1 else 0

    def __contains__(self, box) -> bool:
        i, j = box
        return 1 <= j <= self.col_length(i)

    def boxes(self) -> Iterator[tuple]:
        for i, col in enumerate(self.cols, start=1):
            for j in range(1, col + 1):
                yield (i, j)

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.cols)) + ")" if self.cols else "∅"


EMPTY = Partition(())


@dataclass(frozen=True)
class BoxStats:
    arm: int
    leg: int
    arm_colength: int
    leg_colength: int


def box_stats(y: Partition, other: Partition | None, box: tuple) -> BoxStats:
    """Arm of ``box`` in ``y``, leg measured against ``other``, and colengths.

    ``other`` defaults to ``y``.  The foreign leg may be negative.
    """
    if box not in y:
        raise BoxOutsideTableau(f"box {box} is not in {y}")
    i, j = box
    ref = y if other is None else other
    return BoxStats(
        arm=y.col_length(i) - j,
        leg=ref.row_length(j) - i,
        arm_colength=j - 1,
        leg_colength=i - 1,
    )


def enumerate_partitions(n: int) -> list[Partition]:
    """All partitions of n, ascending lexicographic in column lengths."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return [Partition(c) for c in _partition_tuples(n)]


@lru_cache(maxsize=None)
def _partition_tuples(n: int) -> tuple:
    return tuple(kernels.partitions(n))


def compositions(n: int, parts: int) -> Iterator[tuple]:
    """Weak compositions of n into ``parts`` nonnegative summands."""
    if parts == 0:
        if n == 0:
            yield ()
        return
    if parts == 1:
        yield (n,)
        return
    for first in range(n + 1):
        for rest in compositions(n - first, parts - 1):
            yield (first,) + rest


def enumerate_young_tuples(k: int, n: int) -> list[tuple]:
    """All k-tuples of partitions (as column tuples) of total weight n."""
    if k < 1 or n < 0:
        raise ValueError("need k >= 1 and n >= 0")
    return list(_young_tuples(k, n))


@lru_cache(maxsize=None)
def _young_tuples(k: int, n: int) -> tuple:
    out = []
    for sizes in compositions(n, k):
        out.extend(product(*(_partition_tuples(s) for s in sizes)))
    return tuple(out)


def tuples_up_to(k: int, max_weight: int) -> Iterator[tuple]:
    """(weight, tuple) pairs for all k-tuples of weight at most ``max_weight``."""
    for n in range(max_weight + 1):
        for t in _young_tuples(k, n):
            yield n, t


def weight(t: Sequence[tuple]) -> int:
    return sum(sum(c) for c in t)

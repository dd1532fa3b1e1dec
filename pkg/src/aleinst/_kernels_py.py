"""Pure-Python combinatorial kernels.

Partitions are tuples of column lengths in weakly decreasing order.  The
compiled module ``_kernels`` exports the same functions with identical
results; ``aleinst.kernels`` picks whichever is available.
"""

from __future__ import annotations


def conjugate(cols: tuple) -> tuple:
    """Row lengths of a diagram given its column lengths."""
    if not cols:
        return ()
    return tuple(sum(1 for c in cols if c >= j) for j in range(1, cols[0] + 1))


def partitions(n: int) -> list:
    """All partitions of n in ascending lexicographic order."""
    out: list = []

    def rec(remaining: int, cap: int, prefix: list) -> None:
        if remaining == 0:
            out.append(tuple(prefix))
            return
        for part in range(1, min(cap, remaining) + 1):
            prefix.append(part)
            rec(remaining - part, part, prefix)
            prefix.pop()

    rec(n, n, [])
    return out


def vertex_pairs(cols: tuple, other: tuple) -> list:
    """Coefficient pairs (p, s) with m_{Y,Y'} = prod (x + p*e1 + s*e2).

    The first |Y| pairs are (-L_{Y'}(s), A_Y(s) + 1) over boxes of Y and the
    remaining |Y'| pairs are (L_Y(s') + 1, -A_{Y'}(s')) over boxes of Y'.
    """
    rows = conjugate(cols)
    other_rows = conjugate(other)
    n_rows_other = len(other_rows)
    n_rows = len(rows)
    out = []
    for i, col in enumerate(cols, start=1):
        for j in range(1, col + 1):
            foreign_row = other_rows[j - 1] if j <= n_rows_other else 0
            out.append((-(foreign_row - i), col - j + 1))
    for i, col in enumerate(other, start=1):
        for j in range(1, col + 1):
            own_row = rows[j - 1] if j <= n_rows else 0
            out.append((own_row - i + 1, -(col - j)))
    return out


def fund_pairs(cols: tuple) -> list:
    """Coefficient pairs (-L'(s), -A'(s)) over the boxes of Y."""
    return [(-(i - 1), -(j - 1)) for i, col in enumerate(cols, start=1) for j in range(1, col + 1)]

# cython: boundscheck=False, wraparound=False
"""Compiled versions of the combinatorial kernels in _kernels_py."""


cpdef tuple conjugate(tuple cols):
    cdef Py_ssize_t n = len(cols)
    cdef long top, j, count, c
    cdef Py_ssize_t i
    if n == 0:
        return ()
    top = cols[0]
    out = []
    for j in range(1, top + 1):
        count = 0
        for i in range(n):
            c = cols[i]
            if c >= j:
                count += 1
            else:
                break
        out.append(count)
    return tuple(out)


cdef void _rec(long remaining, long cap, list prefix, list out):
    cdef long part, upper
    if remaining == 0:
        out.append(tuple(prefix))
        return
    upper = cap if cap < remaining else remaining
    for part in range(1, upper + 1):
        prefix.append(part)
        _rec(remaining - part, part, prefix, out)
        prefix.pop()


cpdef list partitions(long n):
    cdef list out = []
    _rec(n, n, [], out)
    return out


cpdef list vertex_pairs(tuple cols, tuple other):
    cdef tuple rows = conjugate(cols)
    cdef tuple other_rows = conjugate(other)
    cdef Py_ssize_t n_rows_other = len(other_rows)
    cdef Py_ssize_t n_rows = len(rows)
    cdef Py_ssize_t n_cols = len(cols)
    cdef long i, j, col, foreign_row, own_row
    cdef list out = []
    for i in range(1, n_cols + 1):
        col = cols[i - 1]
        for j in range(1, col + 1):
            foreign_row = other_rows[j - 1] if j <= n_rows_other else 0
            out.append((-(foreign_row - i), col - j + 1))
    for i in range(1, len(other) + 1):
        col = other[i - 1]
        for j in range(1, col + 1):
            own_row = rows[j - 1] if j <= n_rows else 0
            out.append((own_row - i + 1, -(col - j)))
    return out


cpdef list fund_pairs(tuple cols):
    cdef long i, j, col
    cdef list out = []
    for i in range(1, len(cols) + 1):
        col = cols[i - 1]
        for j in range(1, col + 1):
            out.append((-(i - 1), -(j - 1)))
    return out

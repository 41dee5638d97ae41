# cython: language_level=3
"""Compiled window fill: the hot kernel of the series oracle.

For every integer row vector m in a dense box, computes
prod_j y_j with y = (m + 1) @ adj, writing 0 when some y_j < 1
(the monomial t^m then has no square-integrable representative).
Pure int64 arithmetic; the caller guarantees no overflow via an
a-priori bound computed in exact big-int arithmetic.
"""


def fill_products_int64(long long[:, ::1] adj,
                        long long[::1] lo,
                        long long[::1] hi,
                        long long[::1] out):
    """Fill `out` (flat, C-order over the box lo..hi) in place."""
    cdef Py_ssize_t n = adj.shape[0]
    cdef Py_ssize_t total = out.shape[0]
    cdef long long[64] m
    cdef long long[64] y
    cdef Py_ssize_t i, j, idx
    cdef long long p
    cdef bint ok

    if n > 64:
        raise ValueError("dimension too large for the compiled backend")
    if total == 0:
        return

    with nogil:
        for j in range(n):
            y[j] = 0
        for i in range(n):
            m[i] = lo[i]
            for j in range(n):
                y[j] += (lo[i] + 1) * adj[i, j]
        for idx in range(total):
            ok = True
            for j in range(n):
                if y[j] < 1:
                    ok = False
                    break
            if ok:
                p = 1
                for j in range(n):
                    p *= y[j]
                out[idx] = p
            else:
                out[idx] = 0
            if idx + 1 == total:
                break
            # odometer: advance the last coordinate, carrying leftwards
            i = n - 1
            while True:
                if m[i] < hi[i]:
                    m[i] += 1
                    for j in range(n):
                        y[j] += adj[i, j]
                    break
                for j in range(n):
                    y[j] -= (m[i] - lo[i]) * adj[i, j]
                m[i] = lo[i]
                i -= 1

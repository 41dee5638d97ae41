"""Pure-Python window fill, mirroring bergpoly._core exactly.

Two paths: a numpy-vectorized int64 sweep (used when the caller's
overflow bound fits) and an exact big-integer sweep returning an object
array (used otherwise; arbitrarily large entries, no overflow ever).
"""

from __future__ import annotations

import itertools

import numpy as np


def fill_products_int64(adj, lo, hi, out):
    """Same contract as the compiled version: flat C-order fill of
    prod_j ((m+1) @ adj)_j, zeroed where some coordinate is < 1."""
    a = np.asarray(adj, dtype=np.int64)
    n = a.shape[0]
    lo = list(lo)
    hi = list(hi)
    tail_axes = [np.arange(lo[i], hi[i] + 1, dtype=np.int64) for i in range(1, n)]
    if tail_axes:
        mesh = np.meshgrid(*tail_axes, indexing="ij")
        tail = np.stack([g.reshape(-1) for g in mesh], axis=1)
    else:
        tail = np.zeros((1, 0), dtype=np.int64)
    block = tail.shape[0]
    pos = 0
    for v0 in np.arange(lo[0], hi[0] + 1, dtype=np.int64):
        coords = np.concatenate(
            [np.full((block, 1), v0, dtype=np.int64), tail], axis=1
        )
        y = (coords + 1) @ a
        vals = np.where((y >= 1).all(axis=1), y.prod(axis=1), 0)
        out[pos : pos + block] = vals
        pos += block


def fill_products_object(adj, lo, hi):
    """Exact big-int sweep; returns a flat object-dtype array in C-order."""
    n = len(adj)
    ranges = [range(int(l), int(h) + 1) for l, h in zip(lo, hi)]
    total = 1
    for r in ranges:
        total *= len(r)
    out = np.empty(total, dtype=object)
    cols = [[int(adj[i][j]) for i in range(n)] for j in range(n)]
    for idx, m in enumerate(itertools.product(*ranges)):
        p = 1
        for j in range(n):
            colj = cols[j]
            y = 0
            for i in range(n):
                y += (m[i] + 1) * colj[i]
            if y < 1:
                p = 0
                break
            p *= y
        out[idx] = p
    return out

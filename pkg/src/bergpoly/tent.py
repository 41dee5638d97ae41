"""Triangular ("tent") coefficient sequence and box-product evaluation.

tent(k, r) is the coefficient of x^r in ((1 - x^k)/(1 - x))^2, i.e. in
(1 + x + ... + x^(k-1))^2: it climbs 1, 2, ..., k at r = 0..k-1, descends
back to 1 at r = 2k-2 and vanishes outside [0, 2k-2].  Every numerator
coefficient produced in this package is a product of tent values with
affine integer arguments, so the module also provides a vectorized
evaluator of such products over an integer box.
"""

from __future__ import annotations

import itertools
from typing import Sequence

import numpy as np

from .errors import InvalidKError

_INT64_SAFE = 2**62


def tent(k: int, r: int) -> int:
    """Closed-form branch evaluation; r may be any integer, also far outside
    the support (the box scans rely on that)."""
    if k < 1:
        raise InvalidKError(f"k must be >= 1, got {k}")
    if 0 <= r <= k - 1:
        return 1 + r
    if k <= r <= 2 * k - 2:
        return 2 * k - (1 + r)
    return 0


def tent_coefficients(k: int) -> list[int]:
    """Independent oracle: expand (1 + x + ... + x^(k-1))^2 by convolution
    and return the coefficients of x^0 .. x^(2k-2)."""
    if k < 1:
        raise InvalidKError(f"k must be >= 1, got {k}")
    box = [1] * k
    out = [0] * (2 * k - 1)
    for i, a in enumerate(box):
        for j, b in enumerate(box):
            out[i + j] += a * b
    return out


def _tent_vec(ks: np.ndarray, r: np.ndarray) -> np.ndarray:
    up = (r >= 0) & (r <= ks - 1)
    down = (r >= ks) & (r <= 2 * ks - 2)
    return np.where(up, 1 + r, np.where(down, 2 * ks - (1 + r), 0))


def tent_product_over_box(
    lower: Sequence[int],
    upper: Sequence[int],
    ks: Sequence[int],
    weights: Sequence[Sequence[int]],
    offsets: Sequence[int],
) -> dict[tuple[int, ...], int]:
    """Evaluate prod_j tent(ks[j], (v @ weights)_j + offsets[j]) over the box
    lower <= v <= upper, returning only the nonzero values keyed by v.

    weights has one row per box coordinate and one column per factor.
    Runs vectorized in int64 when an a-priori bound (computed in exact
    Python integers from the box corners) fits; otherwise falls back to
    an exact scalar sweep, so results are always exact.
    """
    lower = tuple(int(x) for x in lower)
    upper = tuple(int(x) for x in upper)
    if any(lo > hi for lo, hi in zip(lower, upper)):
        return {}
    for k in ks:
        if k < 1:
            raise InvalidKError(f"k must be >= 1, got {k}")

    nvars = len(lower)
    nfac = len(ks)
    # Affine arguments are extremal at box corners; coordinates separate.
    safe = all(k < _INT64_SAFE for k in ks)
    for j in range(nfac):
        hi_arg = sum(max(lower[i] * weights[i][j], upper[i] * weights[i][j]) for i in range(nvars))
        lo_arg = sum(min(lower[i] * weights[i][j], upper[i] * weights[i][j]) for i in range(nvars))
        if max(abs(hi_arg + offsets[j]), abs(lo_arg + offsets[j])) >= _INT64_SAFE:
            safe = False
    prod_bound = 1
    for k in ks:
        prod_bound *= k
    if prod_bound >= _INT64_SAFE:
        safe = False

    if not safe:
        return _scalar_sweep(lower, upper, ks, weights, offsets)

    w = np.asarray(weights, dtype=np.int64)
    off = np.asarray(offsets, dtype=np.int64)
    karr = np.asarray(ks, dtype=np.int64)
    out: dict[tuple[int, ...], int] = {}
    # Slab over the first coordinate to bound peak memory.
    tail_axes = [np.arange(lower[i], upper[i] + 1, dtype=np.int64) for i in range(1, nvars)]
    if tail_axes:
        mesh = np.meshgrid(*tail_axes, indexing="ij")
        tail = np.stack([g.reshape(-1) for g in mesh], axis=1)
    else:
        tail = np.zeros((1, 0), dtype=np.int64)
    for v0 in range(lower[0], upper[0] + 1):
        coords = np.concatenate(
            [np.full((tail.shape[0], 1), v0, dtype=np.int64), tail], axis=1
        )
        args = coords @ w + off
        vals = _tent_vec(karr, args).prod(axis=1)
        for idx in np.nonzero(vals)[0]:
            out[tuple(int(c) for c in coords[idx])] = int(vals[idx])
    return out


def _scalar_sweep(lower, upper, ks, weights, offsets):
    out = {}
    ranges = [range(lo, hi + 1) for lo, hi in zip(lower, upper)]
    nfac = len(ks)
    for v in itertools.product(*ranges):
        val = 1
        for j in range(nfac):
            arg = offsets[j] + sum(v[i] * weights[i][j] for i in range(len(v)))
            val *= tent(ks[j], arg)
            if val == 0:
                break
        if val:
            out[v] = val
    return out

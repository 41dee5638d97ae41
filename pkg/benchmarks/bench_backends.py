"""Benchmark: compiled (Cython) vs pure-Python oracle window fill.

The window fill is the hot kernel of the series oracle: for every lattice
point m of a box it forms y = (m+1) @ adjB and multiplies the entries.
Run:

    python benchmarks/bench_backends.py
"""

import os
import time

import numpy as np

os.environ.pop("BERGPOLY_PURE", None)

from bergpoly import IntMatrix, Window, _backend, compare_with_closed_form, prepare
from bergpoly.kernel import assemble_kernel


def timed(fn, repeats=3):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def bench_fill(vm, radius):
    adj = [list(r) for r in vm.adj.rows]
    lo = (-radius,) * vm.n
    hi = (radius,) * vm.n
    size = (2 * radius + 1) ** vm.n

    results = {}
    for mode, env in (("compiled", None), ("python", "1")):
        if mode == "compiled" and not _backend.compiled_available():
            continue
        if env:
            os.environ["BERGPOLY_PURE"] = env
        else:
            os.environ.pop("BERGPOLY_PURE", None)
        secs, out = timed(lambda: _backend.fill_products(adj, lo, hi))
        results[mode] = (secs, out)
    os.environ.pop("BERGPOLY_PURE", None)

    outs = [o for _, o in results.values()]
    if len(outs) == 2:
        assert np.array_equal(outs[0], outs[1]), "backends disagree"
    return size, {m: s for m, (s, _) in results.items()}


def bench_compare(vm, radius):
    form = assemble_kernel(vm)
    window = Window.cube(vm.n, radius)
    results = {}
    for mode, env in (("compiled", None), ("python", "1")):
        if mode == "compiled" and not _backend.compiled_available():
            continue
        if env:
            os.environ["BERGPOLY_PURE"] = env
        else:
            os.environ.pop("BERGPOLY_PURE", None)
        secs, rep = timed(
            lambda: compare_with_closed_form(vm, window, form=form), repeats=2
        )
        assert rep.ok
        results[mode] = secs
    os.environ.pop("BERGPOLY_PURE", None)
    return results


def main():
    print(f"compiled extension available: {_backend.compiled_available()}")
    cases = [
        ("2x2 Hartogs", prepare(IntMatrix(((1, -1), (0, 1)))), (50, 200, 800)),
        ("2x2 dense", prepare(IntMatrix(((3, -2), (-1, 1)))), (50, 200, 800)),
        ("3x3 chain", prepare(IntMatrix(((2, -3, 0), (0, 3, -1), (0, 0, 1)))), (20, 40, 60)),
    ]
    print("\n-- raw window fill --")
    print(f"{'case':<12} {'radius':>6} {'points':>10} {'compiled':>10} {'python':>10} {'speedup':>8}")
    for name, vm, radii in cases:
        for radius in radii:
            size, res = bench_fill(vm, radius)
            c = res.get("compiled")
            p = res["python"]
            ratio = f"{p / c:6.1f}x" if c else "n/a"
            ctxt = f"{c * 1e3:8.2f}ms" if c else "n/a"
            print(f"{name:<12} {radius:>6} {size:>10} {ctxt:>10} {p * 1e3:8.2f}ms {ratio:>8}")

    print("\n-- end-to-end oracle comparison --")
    print(f"{'case':<12} {'radius':>6} {'compiled':>10} {'python':>10}")
    for name, vm, radii in cases:
        radius = radii[1]
        res = bench_compare(vm, radius)
        c = res.get("compiled")
        ctxt = f"{c * 1e3:8.2f}ms" if c else "n/a"
        print(f"{name:<12} {radius:>6} {ctxt:>10} {res['python'] * 1e3:8.2f}ms")


if __name__ == "__main__":
    main()

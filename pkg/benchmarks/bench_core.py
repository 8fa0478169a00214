"""Compare the compiled core against the pure-Python fallback.

    python3 benchmarks/bench_core.py [--sizes 32 64 128] [--repeat 3]

Times the two hot loops (grid Dijkstra and the boundary self-intersection
test) on identical inputs and checks that both backends agree.
"""
import argparse
import time

import numpy as np

from planimetric import _fallback
from planimetric.distances import STENCIL16

try:
    from planimetric import _core
except ImportError:
    _core = None


def _grid(n, seed=0):
    rng = np.random.default_rng(seed)
    w = rng.uniform(0.5, 1.5, (n, n, len(STENCIL16)))
    # stencil moves that leave the grid carry infinite weight
    ii, jj = np.meshgrid(np.arange(n), np.arange(n), indexing="ij")
    for k, (di, dj) in enumerate(STENCIL16):
        out = (ii + di < 0) | (ii + di >= n) | (jj + dj < 0) | (jj + dj >= n)
        w[out, k] = np.inf
    return np.ascontiguousarray(w)


def _best(fn, repeat):
    best = np.inf
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t)
    return best, out


def main():
    ap = argparse.ArgumentParser(description=__doc__.split("\n\n")[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[32, 64, 128])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if _core is None:
        print("compiled core not built; only the fallback is timed")
    print(f"{'kernel':<28}{'size':>8}{'cython s':>12}{'python s':>12}{'speedup':>10}")
    for n in args.sizes:
        w = _grid(n)
        start, targets = 0, np.array([n * n - 1], dtype=np.int64)
        tp, (dp, _) = _best(lambda: _fallback.dijkstra_grid(w, STENCIL16, start, targets), args.repeat)
        if _core is not None:
            tc, (dc, _) = _best(lambda: _core.dijkstra_grid(w, STENCIL16, start, targets), args.repeat)
            assert np.allclose(dc, dp, rtol=1e-12, equal_nan=True), "backends disagree"
            print(f"{'dijkstra_grid':<28}{n:>8}{tc:>12.4f}{tp:>12.4f}{tp / tc:>10.1f}")
        else:
            print(f"{'dijkstra_grid':<28}{n:>8}{'-':>12}{tp:>12.4f}{'-':>10}")
    for m in (256, 1024, 4096):
        t = 2 * np.pi * np.arange(m) / m
        b = np.exp(1j * t) + 0.2 * np.exp(2j * t)
        x, y = np.ascontiguousarray(b.real), np.ascontiguousarray(b.imag)
        tp, sp = _best(lambda: _fallback.closed_polyline_is_simple(x, y), args.repeat)
        if _core is not None:
            tc, sc = _best(lambda: _core.closed_polyline_is_simple(x, y), args.repeat)
            assert bool(sc) == bool(sp), "backends disagree"
            print(f"{'closed_polyline_is_simple':<28}{m:>8}{tc:>12.4f}{tp:>12.4f}{tp / tc:>10.1f}")
        else:
            print(f"{'closed_polyline_is_simple':<28}{m:>8}{'-':>12}{tp:>12.4f}{'-':>10}")


if __name__ == "__main__":
    main()

"""Benchmark the compiled kernels against the pure numpy fallback.

Run with:  python3 benchmarks/bench_kernels.py
"""

import time

import numpy as np

from masscut import _kernels_py

try:
    from masscut import _kernels
except ImportError:
    _kernels = None

CASES = [
    # (points, dim, planes) per kernel call
    (400, 2, 2),
    (4116, 2, 1),
    (20000, 3, 3),
    (100000, 5, 4),
]


def make_inputs(n, d, h, seed=0):
    rng = np.random.default_rng(seed)
    points = rng.standard_normal((n, d))
    weights = rng.uniform(0.5, 2.0, n)
    normals = rng.standard_normal((h, d))
    normals /= np.linalg.norm(normals, axis=1, keepdims=True)
    offsets = rng.uniform(-1.0, 1.0, h)
    return points, weights, np.ascontiguousarray(normals), offsets


def best_of(fn, args, repeats=5):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def run_case(name, py_fn, cy_fn, args):
    t_py = best_of(py_fn, args)
    if cy_fn is None:
        print(f"{name}: python {t_py * 1e6:9.1f} us   (compiled kernel unavailable)")
        return
    t_cy = best_of(cy_fn, args)
    mu_py = py_fn(*args)
    mu_cy = cy_fn(*args)
    ref = mu_py[0] if isinstance(mu_py, tuple) else mu_py
    out = mu_cy[0] if isinstance(mu_cy, tuple) else mu_cy
    agree = np.allclose(ref, out, rtol=1e-10, atol=1e-10)
    print(
        f"{name}: python {t_py * 1e6:9.1f} us   cython {t_cy * 1e6:9.1f} us   "
        f"speedup {t_py / t_cy:5.1f}x   agree={agree}"
    )


def main():
    print(f"compiled kernel present: {_kernels is not None}")
    for n, d, h in CASES:
        points, weights, normals, offsets = make_inputs(n, d, h)
        run_case(
            f"orthant_accumulate n={n:6d} d={d} h={h}",
            _kernels_py.orthant_accumulate,
            _kernels.orthant_accumulate if _kernels else None,
            (points, weights, normals, offsets, 1e-9),
        )
    for n, d, h in CASES:
        points, weights, normals, offsets = make_inputs(n, d, h)
        run_case(
            f"smoothed_measures  n={n:6d} d={d} h={h}",
            _kernels_py.smoothed_orthant_measures,
            _kernels.smoothed_orthant_measures if _kernels else None,
            (points, weights, normals, offsets, 0.05),
        )


if __name__ == "__main__":
    main()

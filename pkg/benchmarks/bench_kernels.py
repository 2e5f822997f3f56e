"""Compare the compiled kernels against the pure-Python fallback.

Run from the repository root:

    python3 benchmarks/bench_kernels.py
"""

import math
import time

import numpy as np

from padeforge.kernels import _pykernels

try:
    from padeforge.kernels import _ckernels
except ImportError:
    _ckernels = None


def _series(m):
    return np.array([1 / math.factorial(k) for k in range(m)], dtype=np.complex128)


def _grid(n_pts):
    rng = np.random.default_rng(7)
    z = rng.random(n_pts) + 1j * rng.random(n_pts)
    z.setflags(write=False)
    return z


def bench(label, fn, *args, repeats=5):
    best = math.inf
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    print(f"  {label:<12} {best * 1e3:8.3f} ms")
    return best


def main():
    coeffs = _series(30)
    num = coeffs[:9].copy()
    den = np.array([1.0, -0.5, 0.04], dtype=np.complex128)
    for a in (num, den):
        a.setflags(write=False)
    z = _grid(200_000)
    target = _pykernels.horner_eval(coeffs, z)

    cases = [
        ("horner_eval", lambda k: k.horner_eval(coeffs, z)),
        ("rational_eval", lambda k: k.rational_eval(num, den, z)),
        (
            "partial_sum_order",
            lambda k: k.smallest_partial_sum_order(coeffs, target, z, 1e-6, 29),
        ),
    ]
    for name, call in cases:
        print(name)
        py = bench("python", call, _pykernels)
        if _ckernels is None:
            print("  cython       (extension not built)")
            continue
        cy = bench("cython", call, _ckernels)
        print(f"  speedup      {py / cy:8.1f}x")


if __name__ == "__main__":
    main()

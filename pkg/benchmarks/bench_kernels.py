"""Benchmark the compiled kernels against the pure-numpy fallback.

Run:  python3 benchmarks/bench_kernels.py [n_graphs]
"""

import sys
import time

import numpy as np

from qgdream import _kernels_py
from qgdream.states import random_graph

try:
    from qgdream import _kernels_cy
except ImportError:
    _kernels_cy = None


def timeit(fn, *args, repeats=5):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    n = int(sys.argv[1]) if len(sys.argv) > 1 else 200_000
    rng = np.random.default_rng(0)
    w = rng.uniform(-1.0, 1.0, (n, 24))
    g = random_graph(0)

    backends = [("python", _kernels_py)]
    if _kernels_cy is not None:
        backends.append(("cython", _kernels_cy))
    else:
        print("compiled extension not available; benchmarking fallback only")

    print(f"{n} graphs per call\n")
    print(f"{'kernel':<24}" + "".join(f"{name:>12}" for name, _ in backends)
          + f"{'speedup':>10}")
    for kernel, args in [("build_state_batch", (w,)),
                         ("pm_probability_batch", (w,)),
                         ("state_jacobian", (g,))]:
        times = [timeit(getattr(mod, kernel), *args) for _, mod in backends]
        row = f"{kernel:<24}" + "".join(f"{t * 1e3:>10.2f}ms" for t in times)
        if len(times) == 2:
            row += f"{times[0] / times[1]:>9.1f}x"
        print(row)

    # parity sanity
    if _kernels_cy is not None:
        assert np.allclose(_kernels_py.build_state_batch(w[:100]),
                           _kernels_cy.build_state_batch(w[:100]))
        print("\nparity check passed")


if __name__ == "__main__":
    main()

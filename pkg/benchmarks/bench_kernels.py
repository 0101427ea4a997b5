"""Compare the compiled and numpy sweep backends on full right-hand sides.

    python3 benchmarks/bench_kernels.py [--repeat 5]

Times one rhs evaluation per backend on a 1-D and a 2-D problem and checks
that both backends produce the same result.
"""
import argparse
import time

import numpy as np

from ldcu import kernels
from ldcu.integrator import SchemeConfig, rhs
from ldcu.problems import get_problem

CASES = [("shock_entropy", 8000), ("riemann2d_config3", 200), ("implosion", 300)]


def best_time(fn, repeat):
    best = np.inf
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()
    backends = sorted(kernels.BACKENDS)
    print(f"backends available: {', '.join(backends)} (default: {kernels.BACKEND})")
    print(f"{'case':<26}" + "".join(f"{b:>14}" for b in backends) + f"{'speedup':>10}")
    for name, n in CASES:
        p = get_problem(name)
        grid = p.grid(n, n if p.ndim == 2 else None)
        U = p.initial_field(grid)
        times, outs = {}, {}
        for b in backends:
            scheme = SchemeConfig(backend=b)
            outs[b] = rhs(U.copy(), grid, scheme, p.bc)
            times[b] = best_time(lambda: rhs(U.copy(), grid, scheme, p.bc), args.repeat)
        label = f"{name} ({n}{'^2' if p.ndim == 2 else ''})"
        row = f"{label:<26}" + "".join(f"{times[b] * 1e3:>11.2f} ms" for b in backends)
        if len(backends) == 2:
            row += f"{times['python'] / times['compiled']:>9.1f}x"
            diff = np.abs(outs["python"] - outs["compiled"]).max()
            row += f"   max |diff| {diff:.1e}"
        print(row)


if __name__ == "__main__":
    main()

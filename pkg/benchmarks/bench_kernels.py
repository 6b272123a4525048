"""Time the pure-Python and compiled kernels on the same inputs.

    python3 benchmarks/bench_kernels.py --sizes 5 6 7 --repeat 3

Prints one line per (kernel, grid size) with the best time of each backend
and the speed-up, after checking that both backends return the same arrays.
"""

import argparse
import sys
import time

import numpy as np

from gridlock import kernels
from gridlock.complex import enumerate_states, grading_tables
from gridlock.grid import trace_components, validate


def knot_grid(n: int, seed: int):
    rng = np.random.default_rng(seed)
    while True:
        x, o = rng.permutation(n) + 1, rng.permutation(n) + 1
        if np.any(x == o):
            continue
        g = validate(n, x.tolist(), o.tolist())
        if trace_components(g) == 1:
            return g


def best_of(fn, repeat: int):
    best, out = float("inf"), None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def same(a, b) -> bool:
    if isinstance(a, tuple):
        return all(same(u, v) for u, v in zip(a, b))
    if isinstance(a, np.ndarray):
        return np.array_equal(a, b)
    return a == b


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[5, 6, 7, 8])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    py, cy = kernels.python_backend, kernels.compiled_backend
    if cy is None:
        print("compiled extension not available; build it with `pip install -e . --no-build-isolation`")
        return 1
    print(f"{'kernel':<12} {'n':>2} {'states':>7} {'python s':>10} {'compiled s':>11} {'speed-up':>9}")
    for n in args.sizes:
        g = knot_grid(n, args.seed + n)
        t = grading_tables(g)
        states = enumerate_states(g)
        xs = np.asarray(g.x0, dtype=np.int64)
        os_ = np.asarray(g.o0, dtype=np.int64)
        big = 1 << 40
        jobs = {
            "enumerate": lambda b: b.enumerate_states(t.a2_weights, -big, big, 10**9),
            "maslov": lambda b: b.maslov(states.perms, t.o_corner, t.o_const),
            "rectangles": lambda b: b.rectangles(states.perms, states.codes, xs, os_, True, 0, len(states)),
        }
        for name, job in jobs.items():
            tp, rp = best_of(lambda: job(py), args.repeat)
            tc, rc = best_of(lambda: job(cy), args.repeat)
            if not same(rp, rc):
                print(f"{name}: backends disagree at n={n}", file=sys.stderr)
                return 2
            print(f"{name:<12} {n:>2} {len(states):>7} {tp:>10.4f} {tc:>11.5f} {tp / max(tc, 1e-9):>8.0f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())

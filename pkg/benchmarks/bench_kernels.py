#!/usr/bin/env python3
"""Benchmark the compiled torque-gain kernel against the numpy fallback.

The gain evaluation is the hot loop of the toolkit: every fitting run,
Monte Carlo repetition and batch torque command reduces to it. This
script times both backends over a range of batch sizes and reports the
speedup, checking agreement on the fly.

Usage: python benchmarks/bench_kernels.py [--nodes 32] [--repeats 5]
"""

import argparse
import time

import numpy as np

from uwleg import EnvParams, LegGeometry, QuadratureSpec, backend


def sample_states(rng, n):
    return np.column_stack([
        rng.uniform(-np.pi, np.pi, n),
        rng.uniform(-np.pi / 2, np.pi / 2, n),
        rng.uniform(-np.pi / 4, np.pi, n),
        rng.uniform(-1.0, 1.0, (n, 3)),
        rng.uniform(-2.0, 2.0, (n, 3)),
    ])


def time_backend(states, geom, env, quad, which, repeats):
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        result = backend.gains_batch(states, geom, env, quad,
                                     force_backend=which)
        best = min(best, time.perf_counter() - start)
    return best, result


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--nodes", type=int, default=32)
    parser.add_argument("--repeats", type=int, default=5)
    parser.add_argument("--sizes", type=int, nargs="+",
                        default=[100, 1000, 10_000, 100_000])
    args = parser.parse_args()

    if not backend.HAS_COMPILED:
        raise SystemExit("compiled kernel not built; nothing to compare")

    geom, env = LegGeometry(), EnvParams()
    quad = QuadratureSpec(args.nodes)
    rng = np.random.default_rng(2024)

    print(f"torque-gain kernel, {args.nodes} nodes/link, best of "
          f"{args.repeats} runs")
    print(f"{'batch':>9} {'numpy [ms]':>12} {'compiled [ms]':>14} "
          f"{'speedup':>8} {'max rel diff':>13}")
    for n in args.sizes:
        states = sample_states(rng, n)
        t_py, (a_p, b_p, f_p) = time_backend(states, geom, env, quad,
                                             "python", args.repeats)
        t_cy, (a_c, b_c, f_c) = time_backend(states, geom, env, quad,
                                             "compiled", args.repeats)
        scale = max(np.max(np.abs(a_p)), np.max(np.abs(b_p)), 1e-300)
        diff = max(np.max(np.abs(a_c - a_p)), np.max(np.abs(b_c - b_p)),
                   np.max(np.abs(f_c - f_p))) / scale
        print(f"{n:>9} {1e3 * t_py:>12.3f} {1e3 * t_cy:>14.3f} "
              f"{t_py / t_cy:>7.2f}x {diff:>13.2e}")


if __name__ == "__main__":
    main()

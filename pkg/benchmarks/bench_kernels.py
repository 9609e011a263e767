"""Compare the compiled kernels with the numpy fallback.

    python benchmarks/bench_kernels.py [--p 1009] [--repeat 3]
"""
import argparse
import time

import numpy as np

from primesums import _kernels_py
from primesums.expsums import batch_S_all_s
from primesums.prime_field import build_field_context

try:
    from primesums import _kernels as compiled
except ImportError:
    compiled = None


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--p", type=int, default=1009)
    ap.add_argument("--k", type=int, default=6)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    ctx = build_field_context(args.p)
    pts = ctx.powers(args.k)
    ones, zeros = np.ones(ctx.p), np.zeros(ctx.p)
    svals = np.arange(ctx.p, dtype=np.int64)
    backends = [("numpy", _kernels_py)] + ([("cython", compiled)] if compiled else [])

    print(f"p={ctx.p} k={args.k}")
    print(f"{'kernel':<28}{'backend':<10}{'seconds':>12}")
    for name, mod in backends:
        t = best_of(lambda: mod.weighted_exp_sums(ctx.cos_table, ctx.sin_table, pts, ones, zeros, svals),
                    args.repeat)
        print(f"{'S_k(s) for all s (Kahan)':<28}{name:<10}{t:>12.5f}")
    for name, mod in backends:
        t = best_of(lambda: mod.index_table(ctx.p, ctx.g), args.repeat)
        print(f"{'index table':<28}{name:<10}{t:>12.5f}")
    for name, mod in backends:
        t = best_of(lambda: mod.power_table(ctx.p, args.k), args.repeat)
        print(f"{'power table':<28}{name:<10}{t:>12.5f}")
    t = best_of(lambda: batch_S_all_s(ctx, args.k, "fast"), args.repeat)
    print(f"{'batch chirp-z transform':<28}{'numpy':<10}{t:>12.5f}")
    t = best_of(lambda: batch_S_all_s(ctx, args.k, "naive"), args.repeat)
    print(f"{'batch naive DFT':<28}{'active':<10}{t:>12.5f}")


if __name__ == "__main__":
    main()

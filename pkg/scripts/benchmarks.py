"""Time the fast transform (and the direct one where it is allowed) for CM functions."""

from __future__ import annotations

import argparse
import time

from cmbent import gf3, trits, walsh


def best_of(fn, repeat: int) -> float:
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        times.append(time.perf_counter() - start)
    return min(times)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-n", type=int, default=12)
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--naive-max-n", type=int, default=5, help="direct sum is cubic in 3^n; capped at 6")
    args = parser.parse_args()
    print(f"{'n':>3} {'k':>3} {'field':>8} {'fast (s)':>10} {'direct (s)':>11}")
    for n in range(1, args.max_n + 1):
        t0 = time.perf_counter()
        ctx = gf3.ctx_new(n)
        setup = time.perf_counter() - t0
        k = trits.valid_ks(n)[-1]
        f = walsh.cm_function(ctx, ctx.generator, k)
        fast = best_of(lambda: walsh.walsh_fast(f), args.repeat)
        slow = f"{best_of(lambda: walsh.walsh_naive(f), 1):11.3f}" if n <= min(args.naive_max_n, 6) else f"{'-':>11}"
        print(f"{n:>3} {k:>3} {ctx.q:>8} {fast:10.4f} {slow}   (context {setup:.2f}s)")


if __name__ == "__main__":
    main()

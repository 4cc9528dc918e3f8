"""Empirical running time of the two dynamic programs as n grows."""

import argparse
import time

from flamecast.circular_dp import solve_circular
from flamecast.convex_dp import solve_convex
from flamecast.generators import circular_instance, convex_instance


def timed(fn, inst) -> float:
    start = time.perf_counter()
    fn(inst)
    return time.perf_counter() - start


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--circular-max", type=int, default=256)
    parser.add_argument("--convex-max", type=int, default=16)
    args = parser.parse_args()

    print("circular DP (c1 = n, alpha = 0.5)")
    n = 8
    while n <= args.circular_max:
        print(f"  n={n:5d}  {timed(solve_circular, circular_instance(n, alpha=0.5)):.4f} s")
        n *= 2
    print("convex DP (alpha = 0)")
    for n in range(4, args.convex_max + 1, 2):
        print(f"  n={n:5d}  {timed(solve_convex, convex_instance(n, seed=n)):.4f} s")


if __name__ == "__main__":
    main()

"""Tabulate n^3 log(n) (1 - alpha_threshold(n, n)) against its limit pi^2 / 2."""

import math

import mpmath

from flamecast.reductions.bounds import alpha_threshold, alpha_threshold_gap


def main() -> None:
    mpmath.mp.dps = 80
    limit = math.pi**2 / 2
    print(f"{'n':>9} {'stable':>12} {'naive':>14} {'mpmath':>12} {'rel. to limit':>14}")
    for k in range(1, 7):
        n = 10**k
        stable = n**3 * math.log(n) * alpha_threshold_gap(n, n)
        naive = n**3 * math.log(n) * (1 - alpha_threshold(n, n))
        m = mpmath.mpf(n)
        exact = float(m**3 * mpmath.log(m) * (1 - mpmath.log(m - 1 + mpmath.cos(mpmath.pi / m)) / mpmath.log(m)))
        print(f"{n:>9} {stable:>12.6f} {naive:>14.6g} {exact:>12.6f} {stable / limit - 1:>14.2e}")
    print(f"limit pi^2/2 = {limit:.6f}")


if __name__ == "__main__":
    main()

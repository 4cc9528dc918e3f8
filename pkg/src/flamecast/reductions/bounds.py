"""Closed-form quantities from the hardness arguments, for numeric checks."""

from __future__ import annotations

import math


def cost_gap_f(alpha: float, a: int, b: int, d_t: float, d_a: float, d_b: float) -> float:
    """(a+b)^alpha d_t + a d_a + b d_b - a^alpha - b^alpha.

    The extra cost of routing groups of sizes a and b through one shared
    Steiner vertex (edge lengths d_t to the sink, d_a and d_b to the groups)
    instead of attaching each group to its own sink at distance 1.
    """
    return (a + b) ** alpha * d_t + a * d_a + b * d_b - a**alpha - b**alpha


def critical_distance(a: int, b: int) -> float:
    """(a log a + b log b) / ((a+b) log(a+b))."""
    return (a * math.log(a) + b * math.log(b)) / ((a + b) * math.log(a + b))


def gap_lower_bound(a: int, b: int, d_t: float, d_a: float, d_b: float) -> float:
    """Minimum of the gap function over the boundary and stationary cases."""
    return min(
        cost_gap_f(0.0, a, b, d_t, d_a, d_b),
        cost_gap_f(1.0, a, b, critical_distance(a, b), d_a, d_b),
        cost_gap_f(1.0, a, b, d_t, d_a, d_b),
    )


def split_gain_bound(a: int, b: int, d_t: float, d_a: float, d_b: float) -> float:
    """Guaranteed saving from splitting two groups at distance >= sqrt(2).

    Valid for b >= max(a, 7) and d_a <= 1; d_t + d_b and d_a + d_t stand in
    for the group-to-sink distances they bound from above.
    """
    return min(
        1.0,
        math.sqrt(2.0) * a + (d_t + d_b) - 2.0,
        a * (d_a + d_t - 1.0) + b * (d_b + d_t - 1.0),
    )


def bundling_increment(z: float, alpha: float) -> float:
    """h(z) = (z+1)^alpha - z^alpha, evaluated without cancellation."""
    if z <= 0:
        return (z + 1.0) ** alpha - z**alpha
    return z**alpha * math.expm1(alpha * math.log1p(1.0 / z))


def alpha_threshold(n: int, m: int) -> float:
    """log(m - 1 + cos(pi/m)) / log(n)."""
    if n < 2 or m < 2:
        raise ValueError("need n >= 2 and m >= 2")
    return math.log(m - 1 + math.cos(math.pi / m)) / math.log(n)


def alpha_threshold_gap(n: int, m: int) -> float:
    """1 - alpha_threshold(n, m), accurate even when the threshold is near 1."""
    if n < 2 or m < 2:
        raise ValueError("need n >= 2 and m >= 2")
    shift = (m - n) - 2.0 * math.sin(math.pi / (2 * m)) ** 2
    return -math.log1p(shift / n) / math.log(n)


def inapprox_factor(n: int, g: int, alpha: float) -> float:
    """1 + (1 + (g-1)^alpha - g^alpha) / (n (2g)^alpha)."""
    if n < 1 or g < 1:
        raise ValueError("need n >= 1 and g >= 1")
    return 1.0 + (1.0 + (g - 1) ** alpha - g**alpha) / (n * (2 * g) ** alpha)

"""Dynamic program for sources evenly spaced on a circle around one sink.

Some optimal layout groups consecutive sources, and every block of k
consecutive sources costs the same, so an optimal layout is a composition
of n into block sizes of at most c1.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass

from .errors import Infeasible, WrongCase
from .geometry import weber_point
from .model import (
    Algorithm,
    Instance,
    InstanceClass,
    Layout,
    SolveReport,
    Topology,
    classify,
    evaluate_cost,
)


@dataclass(frozen=True)
class DpTable:
    w: tuple[float, ...]  # w[k] for k = 0..c1, w[0] unused (0.0)
    dp: tuple[float, ...]
    choice: tuple[int, ...]


def angular_order(instance: Instance) -> list[int]:
    """Sources counterclockwise around the (first) sink, starting at source 0."""
    if not instance.sources:
        return []
    c = instance.sinks[0]
    base = math.atan2(instance.sources[0].y - c.y, instance.sources[0].x - c.x)

    def key(i):
        s = instance.sources[i]
        a = (math.atan2(s.y - c.y, s.x - c.x) - base) % (2.0 * math.pi)
        if a > 2.0 * math.pi - 1e-12:
            a = 0.0
        return (a, i)

    return sorted(range(instance.n_sources), key=key)


def _check_case(instance: Instance) -> None:
    if instance.n_sinks != 1 or instance.n_layers != 1:
        raise WrongCase("circular DP needs exactly one sink and one intermediate layer")
    if classify(instance) is not InstanceClass.SOURCE_EQUALLY_SPACED:
        raise WrongCase("circular DP needs sources evenly spaced on a circle around the sink")


def _block_star_cost(block, instance: Instance, epsilon: float):
    k = len(block)
    pts = [(instance.sources[i], 1.0) for i in block]
    pts.append((instance.sinks[0], float(k) ** instance.alpha))
    return weber_point(pts, epsilon=epsilon)


def block_cost(k: int, instance: Instance, epsilon: float = 1e-9, start: int = 0) -> float:
    """Cost of joining ``k`` consecutive sources to the sink through one Steiner vertex."""
    _check_case(instance)
    n = instance.n_sources
    if not 1 <= k <= min(instance.capacities[1], n):
        raise ValueError(f"block size must lie in 1..{min(instance.capacities[1], n)}, got {k}")
    order = angular_order(instance)
    block = [order[(start + j) % n] for j in range(k)]
    return _block_star_cost(block, instance, epsilon).cost


def dp_table(instance: Instance, epsilon: float = 1e-9) -> DpTable:
    _check_case(instance)
    n = instance.n_sources
    c1 = min(instance.capacities[1], n)
    order = angular_order(instance)
    w = [0.0] + [_block_star_cost(order[:k], instance, epsilon).cost for k in range(1, c1 + 1)]
    dp = [0.0] * (n + 1)
    choice = [0] * (n + 1)
    for j in range(1, n + 1):
        best, arg = math.inf, 0
        for k in range(1, min(c1, j) + 1):
            val = dp[j - k] + w[k]
            if val < best:
                best, arg = val, k
        dp[j], choice[j] = best, arg
    return DpTable(tuple(w), tuple(dp), tuple(choice))


def solve_circular(instance: Instance, epsilon: float = 1e-9) -> SolveReport:
    start = time.perf_counter()
    _check_case(instance)
    n = instance.n_sources
    if instance.capacities[0] < n:
        raise Infeasible(f"sink capacity {instance.capacities[0]} is below {n} sources")
    table = dp_table(instance, epsilon)
    order = angular_order(instance)

    blocks = []
    j = n
    while j > 0:
        k = table.choice[j]
        blocks.append(order[j - k : j])
        j -= k
    blocks.reverse()

    sink_id = n
    parents: list = [None] * (n + 1 + len(blocks))
    positions: list = list(instance.sources) + [instance.sinks[0]] + [None] * len(blocks)
    converged = True
    for b, block in enumerate(blocks):
        v = n + 1 + b
        parents[v] = sink_id
        for s in block:
            parents[s] = v
        res = _block_star_cost(block, instance, epsilon)
        positions[v] = res.position
        converged &= res.converged
    layout = Layout(Topology(n, 1, parents), tuple(positions), converged)
    cost = evaluate_cost(layout, instance)
    return SolveReport(
        cost, layout, Algorithm.CIRCULAR_DP, epsilon, time.perf_counter() - start, converged
    )

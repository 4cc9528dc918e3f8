"""Interval dynamic program for convex instances (alpha = 0, one sink).

Some optimal layout is 3-consecutive: every Steiner vertex collects at most
three runs of sources in the cyclic hull order. For a source interval the
DP therefore chooses four split points giving A1, S1, A2, S2, A3, attaches
A1 u A2 u A3 to one Steiner vertex and recurses on the intervals S1 and S2.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

from .errors import Infeasible, NotConvex, WrongCase
from .geometry import convex_hull, dist, point_segment_distance, weber_point
from .model import (
    GEOMETRY_TOLERANCE,
    Algorithm,
    Instance,
    Layout,
    SolveReport,
    Topology,
    evaluate_cost,
)


def cyclic_order(instance: Instance, tol: float = GEOMETRY_TOLERANCE) -> list[int]:
    """Sources counterclockwise along the hull of sources and sinks.

    The walk is rotated to begin at source 0; co-located sources keep their
    index order.
    """
    n = instance.n_sources
    if n == 0:
        return []
    hull = convex_hull(instance.sources + instance.sinks)
    if len(hull) == 1:
        return list(range(n))
    if len(hull) == 2:
        a, b = hull
        dx, dy = b.x - a.x, b.y - a.y
        keys = {i: ((s.x - a.x) * dx + (s.y - a.y) * dy, i) for i, s in enumerate(instance.sources)}
        return sorted(range(n), key=keys.__getitem__)

    edges = list(zip(hull, hull[1:] + hull[:1]))
    offsets = [0.0]
    for a, b in edges:
        offsets.append(offsets[-1] + dist(a, b))
    perimeter = offsets[-1]
    param = []
    for i, s in enumerate(instance.sources):
        best = math.inf
        for e, (a, b) in enumerate(edges):
            if point_segment_distance(s, a, b) <= tol:
                best = min(best, offsets[e] + dist(a, s))
        if best == math.inf:
            raise NotConvex(f"source {i} at {tuple(s)} lies inside the hull")
        param.append(best % perimeter)
    base = param[0]
    return sorted(range(n), key=lambda i: ((param[i] - base) % perimeter, i))


def runs_in_order(members, order) -> int:
    """Number of maximal cyclic runs formed by ``members`` in ``order``."""
    rank = {s: k for k, s in enumerate(order)}
    n = len(order)
    idx = sorted(rank[s] for s in members)
    if not idx:
        return 0
    if len(idx) == n:
        return 1
    marks = set(idx)
    return sum(1 for k in idx if (k - 1) % n not in marks)


@dataclass
class _Memo:
    instance: Instance
    order: list[int]
    epsilon: float
    # group costs keyed on per-location counts, so co-located sources share entries
    location_of: list[int] = field(default_factory=list)
    costs: dict = field(default_factory=dict)

    def __post_init__(self):
        index: dict = {}
        for k, s in enumerate(self.order):
            self.location_of.append(index.setdefault(tuple(self.instance.sources[s]), len(index)))
        self.n_locations = len(index)

    def cost(self, slots: list[int]) -> float:
        if not slots:
            return 0.0
        counts = [0] * self.n_locations
        for k in slots:
            counts[self.location_of[k]] += 1
        key = tuple(counts)
        hit = self.costs.get(key)
        if hit is None:
            hit = group_cost([self.order[k] for k in slots], self.instance, self.epsilon)
            self.costs[key] = hit
        return hit


def group_cost(members, instance: Instance, epsilon: float = 1e-9) -> float:
    """Cost of the star joining ``members`` (source ids) to the sink via one Steiner vertex."""
    if not members:
        return 0.0
    return _group_weber(members, instance, epsilon).cost


def _group_weber(members, instance: Instance, epsilon: float):
    pts = [(instance.sources[s], 1.0) for s in members]
    pts.append((instance.sinks[0], float(len(members)) ** instance.alpha))
    return weber_point(pts, epsilon=epsilon)


def _check_case(instance: Instance) -> None:
    n = instance.n_sources
    if instance.n_sinks != 1 or instance.n_layers != 1:
        raise WrongCase("convex DP needs exactly one sink and one intermediate layer")
    if instance.alpha != 0.0:
        raise WrongCase("convex DP needs alpha = 0")
    if instance.capacities[0] < n:
        raise Infeasible(f"sink capacity {instance.capacities[0]} is below {n} sources")
    if instance.capacities[1] < n:
        raise WrongCase("convex DP needs an uncapacitated intermediate layer (c1 >= n)")


def _splits(length: int):
    """Split points (p1, p2, p3, p4) in lexicographic order, no part equal to the whole."""
    L = length
    for p1 in range(L + 1):
        for p2 in range(p1, L + 1):
            if p1 == 0 and p2 == L:
                continue
            for p3 in range(p2, L + 1):
                if p1 == L or (p2 == 0 and p3 == L):
                    continue
                for p4 in range(p3, L + 1):
                    if (p3 == 0 and p4 == L) or p4 == 0:
                        continue
                    yield p1, p2, p3, p4


@dataclass(frozen=True)
class ConvexDpTable:
    order: tuple[int, ...]
    dp: dict
    back: dict


def dp_table(instance: Instance, epsilon: float = 1e-9) -> ConvexDpTable:
    _check_case(instance)
    order = cyclic_order(instance)
    n = len(order)
    memo = _Memo(instance, order, epsilon)
    sink = instance.sinks[0]
    dp: dict[tuple[int, int], float] = {}
    back: dict[tuple[int, int], tuple[int, int, int, int] | None] = {}
    for i in range(n):
        dp[(i, 0)] = 0.0
        back[(i, 0)] = None
        if n:
            dp[(i, 1)] = dist(instance.sources[order[i]], sink)
            back[(i, 1)] = None
    splits_by_len = {L: list(_splits(L)) for L in range(2, n + 1)}
    for L in range(2, n + 1):
        for i in range(n):
            best, arg = math.inf, None
            for p1, p2, p3, p4 in splits_by_len[L]:
                val = dp[((i + p1) % n, p2 - p1)] + dp[((i + p3) % n, p4 - p3)]
                if val >= best:
                    continue
                slots = [(i + k) % n for k in (*range(0, p1), *range(p2, p3), *range(p4, L))]
                val += memo.cost(slots)
                if val < best:
                    best, arg = val, (p1, p2, p3, p4)
            dp[(i, L)] = best
            back[(i, L)] = arg
    return ConvexDpTable(tuple(order), dp, back)


def solve_convex(instance: Instance, epsilon: float = 1e-9) -> SolveReport:
    start = time.perf_counter()
    _check_case(instance)
    n = instance.n_sources
    if n == 0:
        layout = Layout(Topology(0, 1, [None]), (instance.sinks[0],))
        return SolveReport(0.0, layout, Algorithm.CONVEX_DP, epsilon, time.perf_counter() - start)
    table = dp_table(instance, epsilon)
    order = table.order
    cut = min(range(n), key=lambda i: (table.dp[(i, n)], i))

    parents: list = [None] * (n + 1)
    positions: list = list(instance.sources) + [instance.sinks[0]]
    converged = True

    def build(i: int, L: int) -> None:
        nonlocal converged
        if L == 0:
            return
        split = table.back[(i, L)]
        if split is None:  # single source straight to the sink
            parents[order[i]] = n
            return
        p1, p2, p3, p4 = split
        members = [order[(i + k) % n] for k in (*range(0, p1), *range(p2, p3), *range(p4, L))]
        if members:
            res = _group_weber(members, instance, epsilon)
            converged &= res.converged
            v = len(parents)
            parents.append(n)
            positions.append(res.position)
            for s in members:
                parents[s] = v
        build((i + p1) % n, p2 - p1)
        build((i + p3) % n, p4 - p3)

    build(cut, n)
    layout = Layout(Topology(n, 1, parents), tuple(positions), converged)
    cost = evaluate_cost(layout, instance)
    return SolveReport(cost, layout, Algorithm.CONVEX_DP, epsilon, time.perf_counter() - start, converged)

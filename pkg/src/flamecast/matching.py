"""Exact solver for instances without effective intermediate layers.

With no intermediate layer, or with alpha = 1 where bundling never pays,
an optimal layout connects every source straight to a sink, so the problem
is a minimum-weight assignment of sources to ``c0`` copies of each sink.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from typing import Sequence

from .errors import Infeasible, ShapeError, WrongCase
from .geometry import dist
from .model import Algorithm, Instance, Layout, SolveReport, Topology, evaluate_cost, is_feasible


@dataclass(frozen=True)
class Assignment:
    columns: tuple[int, ...]
    cost: float


def hungarian(cost_matrix: Sequence[Sequence[float]]) -> Assignment:
    """Minimum-cost assignment of every row to a distinct column.

    Shortest augmenting paths with dual potentials, O(rows^2 * cols). When
    several columns tie for the next step the lowest index is taken.
    """
    rows = [list(map(float, r)) for r in cost_matrix]
    n = len(rows)
    m = len(rows[0]) if n else 0
    if any(len(r) != m for r in rows):
        raise ShapeError("cost matrix rows differ in length")
    if n > m:
        raise ShapeError(f"{n} rows cannot be assigned to {m} columns")
    if n == 0:
        return Assignment((), 0.0)
    for r in rows:
        for x in r:
            if not math.isfinite(x):
                raise ValueError("cost matrix entries must be finite")

    inf = math.inf
    u = [0.0] * (n + 1)
    v = [0.0] * (m + 1)
    owner = [0] * (m + 1)  # owner[j] = 1-based row matched to column j, 0 = free
    way = [0] * (m + 1)
    for i in range(1, n + 1):
        owner[0] = i
        j0 = 0
        minv = [inf] * (m + 1)
        used = [False] * (m + 1)
        while True:
            used[j0] = True
            i0 = owner[j0]
            delta, j1 = inf, 0
            row = rows[i0 - 1]
            for j in range(1, m + 1):
                if used[j]:
                    continue
                cur = row[j - 1] - u[i0] - v[j]
                if cur < minv[j]:
                    minv[j] = cur
                    way[j] = j0
                if minv[j] < delta:
                    delta, j1 = minv[j], j
            for j in range(m + 1):
                if used[j]:
                    u[owner[j]] += delta
                    v[j] -= delta
                else:
                    minv[j] -= delta
            j0 = j1
            if owner[j0] == 0:
                break
        while j0:
            j1 = way[j0]
            owner[j0] = owner[j1]
            j0 = j1

    columns = [0] * n
    for j in range(1, m + 1):
        if owner[j]:
            columns[owner[j] - 1] = j - 1
    total = sum(rows[i][columns[i]] for i in range(n))
    return Assignment(tuple(columns), total)


def direct_layout(instance: Instance, sink_of: Sequence[int]) -> Layout:
    """Layout joining source i straight to sink ``sink_of[i]``."""
    n = instance.n_sources
    parents = [n + t for t in sink_of] + [None] * instance.n_sinks
    topo = Topology(n, instance.n_sinks, parents)
    return Layout(topo, tuple(instance.sources) + tuple(instance.sinks))


def solve_matching(instance: Instance) -> SolveReport:
    """Exact optimum when lambda = 0 or alpha = 1."""
    if not (instance.n_layers == 0 or instance.alpha == 1.0):
        raise WrongCase("matching needs lambda = 0 or alpha = 1")
    if not is_feasible(instance):
        raise Infeasible(
            f"{instance.n_sinks} sinks of capacity {instance.capacities[0]} "
            f"cannot serve {instance.n_sources} sources"
        )
    start = time.perf_counter()
    n = instance.n_sources
    copies = min(instance.capacities[0], n)
    column_sink = [t for t in range(instance.n_sinks) for _ in range(copies)]
    matrix = [[dist(s, instance.sinks[t]) for t in column_sink] for s in instance.sources]
    result = hungarian(matrix)
    layout = direct_layout(instance, [column_sink[j] for j in result.columns])
    cost = evaluate_cost(layout, instance)
    return SolveReport(cost, layout, Algorithm.MATCHING, 0.0, time.perf_counter() - start)

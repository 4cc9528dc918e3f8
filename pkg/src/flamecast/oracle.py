"""Exhaustive solver for small instances, used as ground truth.

The cost of a layout splits over the subtrees hanging below the layer-1
vertices, so the search enumerates labeled partitions of the sources into
layer-1 groups (each group tied to a sink) and memoizes the best subtree
cost of every (group, sink) pair. A source attached to a higher layer than
the bottom one costs the same as a chain of single-child Steiner vertices
laid out on the straight segment, so only full-height trees are searched.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Iterator, Optional

from .embedder import EmbedConfig, embed, subtree_lower_bound
from .errors import Infeasible, TooLarge
from .geometry import dist, weber_point
from .model import (
    Algorithm,
    Instance,
    Layout,
    SolveReport,
    Topology,
    evaluate_cost,
    is_feasible,
)

MAX_ORACLE_SOURCES = 10


@dataclass(frozen=True)
class OracleConfig:
    max_sources: int = 8
    weber_epsilon: float = 1e-12
    prune: bool = False
    # None: treat co-located sources as one block whenever no capacity binds
    group_colocated: Optional[bool] = None

    def __post_init__(self):
        if self.max_sources > MAX_ORACLE_SOURCES:
            raise ValueError(f"max_sources is capped at {MAX_ORACLE_SOURCES}")
        if self.weber_epsilon <= 0:
            raise ValueError("weber_epsilon must be positive")


@dataclass
class OracleStats:
    leaves: int = 0
    pruned: int = 0
    subtree_solves: int = 0


def _check_size(instance: Instance, config: OracleConfig, n_units: int | None = None) -> None:
    """The limit applies to the search units (co-located blocks count once)."""
    n_units = instance.n_sources if n_units is None else n_units
    if n_units > config.max_sources:
        raise TooLarge(f"{n_units} search units exceed the oracle limit of {config.max_sources}")
    if instance.n_layers > 2:
        raise TooLarge("the oracle handles at most two intermediate layers")


def capacities_bind(instance: Instance) -> bool:
    n = instance.n_sources
    return any(c < n for c in instance.capacities[: instance.n_layers + 1])


def source_units(instance: Instance, group_colocated: Optional[bool] = None) -> list[tuple[int, ...]]:
    """Sources that the search keeps together, in order of first index."""
    if group_colocated is None:
        group_colocated = not capacities_bind(instance)
    if not group_colocated:
        return [(i,) for i in range(instance.n_sources)]
    blocks: dict = {}
    for i, s in enumerate(instance.sources):
        blocks.setdefault(tuple(s), []).append(i)
    return [tuple(b) for b in blocks.values()]


def _labeled_partitions(units, instance: Instance) -> Iterator[list[tuple[list, int]]]:
    """Partitions of ``units`` into layer-1 groups, each assigned a sink.

    Yields lists of (units in group, sink index). Groups respect c1 (when an
    intermediate layer exists) and sinks respect c0.
    """
    lam = instance.n_layers
    c0 = instance.capacities[0]
    c1 = instance.capacities[1] if lam >= 1 else None
    groups: list[list] = []
    group_load: list[int] = []
    group_sink: list[int] = []
    sink_load = [0] * instance.n_sinks

    def rec(k: int):
        if k == len(units):
            yield [(list(g), t) for g, t in zip(groups, group_sink)]
            return
        unit = units[k]
        size = len(unit)
        if lam >= 1:
            for g in range(len(groups)):
                t = group_sink[g]
                if group_load[g] + size <= c1 and sink_load[t] + size <= c0:
                    groups[g].append(unit)
                    group_load[g] += size
                    sink_load[t] += size
                    yield from rec(k + 1)
                    groups[g].pop()
                    group_load[g] -= size
                    sink_load[t] -= size
        if c1 is not None and size > c1:
            return
        for t in range(instance.n_sinks):
            if sink_load[t] + size <= c0:
                groups.append([unit])
                group_load.append(size)
                group_sink.append(t)
                sink_load[t] += size
                yield from rec(k + 1)
                groups.pop()
                group_load.pop()
                group_sink.pop()
                sink_load[t] -= size

    yield from rec(0)


def _set_partitions(items: list, limit: int) -> Iterator[list[list]]:
    """Set partitions of ``items`` (tuples of sources) with part loads <= limit."""
    parts: list[list] = []
    loads: list[int] = []

    def rec(k: int):
        if k == len(items):
            yield [list(p) for p in parts]
            return
        item = items[k]
        for j in range(len(parts)):
            if loads[j] + len(item) <= limit:
                parts[j].append(item)
                loads[j] += len(item)
                yield from rec(k + 1)
                parts[j].pop()
                loads[j] -= len(item)
        if len(item) <= limit:
            parts.append([item])
            loads.append(len(item))
            yield from rec(k + 1)
            parts.pop()
            loads.pop()

    yield from rec(0)


def _flatten(units) -> list[int]:
    return sorted(s for u in units for s in u)


@dataclass
class _Subtree:
    cost: float
    # lambda = 1: Steiner position (None for a direct edge)
    # lambda = 2: (layer-1 position, [(sources, layer-2 position), ...])
    detail: object = None
    converged: bool = True


@dataclass
class _Search:
    instance: Instance
    config: OracleConfig
    memo: dict = field(default_factory=dict)
    stats: OracleStats = field(default_factory=OracleStats)

    def subtree(self, group_units, t: int) -> _Subtree:
        key = (tuple(_flatten(group_units)), t)
        hit = self.memo.get(key)
        if hit is None:
            self.stats.subtree_solves += 1
            hit = self._solve_subtree(group_units, t)
            self.memo[key] = hit
        return hit

    def _solve_subtree(self, group_units, t: int) -> _Subtree:
        inst = self.instance
        members = _flatten(group_units)
        sink = inst.sinks[t]
        if inst.n_layers == 0:
            return _Subtree(sum(dist(inst.sources[s], sink) for s in members))
        if inst.n_layers == 1:
            if len(members) == 1:
                return _Subtree(dist(inst.sources[members[0]], sink))
            pts = [(inst.sources[s], 1.0) for s in members]
            pts.append((sink, float(len(members)) ** inst.alpha))
            res = weber_point(pts, epsilon=self.config.weber_epsilon)
            return _Subtree(res.cost, res.position, res.converged)
        return self._solve_two_level(group_units, members, sink)

    def _solve_two_level(self, group_units, members, sink) -> _Subtree:
        inst = self.instance
        k = len(members)
        local = {s: i for i, s in enumerate(members)}
        mini = Instance([inst.sources[s] for s in members], [sink], (k, k, k, 1), inst.alpha)
        cfg = EmbedConfig(
            epsilon=max(self.config.weber_epsilon, 1e-9), weber_epsilon=self.config.weber_epsilon
        )
        best: Optional[_Subtree] = None
        for parts in _set_partitions(list(group_units), inst.capacities[2]):
            parents: list = [None] * (k + 2 + len(parts))
            parents[k + 1] = k
            for j, part in enumerate(parts):
                parents[k + 2 + j] = k + 1
                for s in _flatten(part):
                    parents[local[s]] = k + 2 + j
            layout = embed(Topology(k, 1, parents), mini, cfg)
            cost = evaluate_cost(layout, mini)
            if best is None or cost < best.cost:
                detail = (
                    layout.positions[k + 1],
                    [(_flatten(p), layout.positions[k + 2 + j]) for j, p in enumerate(parts)],
                )
                best = _Subtree(cost, detail, layout.converged)
        assert best is not None
        return best


def _assemble(instance: Instance, chosen) -> Layout:
    n, m = instance.n_sources, instance.n_sinks
    parents: list = [None] * (n + m)
    positions: list = list(instance.sources) + list(instance.sinks)
    lam = instance.n_layers

    def new_vertex(parent, pos) -> int:
        parents.append(parent)
        positions.append(pos)
        return len(parents) - 1

    for members, t, sub in chosen:
        if lam == 0 or (lam == 1 and sub.detail is None):
            for s in members:
                parents[s] = n + t
        elif lam == 1:
            v = new_vertex(n + t, sub.detail)
            for s in members:
                parents[s] = v
        else:
            top, parts = sub.detail
            v1 = new_vertex(n + t, top)
            for srcs, pos in parts:
                v2 = new_vertex(v1, pos)
                for s in srcs:
                    parents[s] = v2
    return Layout(Topology(n, m, parents), tuple(positions))


def solve_oracle(
    instance: Instance, config: OracleConfig | None = None, stats: OracleStats | None = None
) -> SolveReport:
    """Minimum cost over all topologies (exact up to the embedding tolerance)."""
    config = config or OracleConfig()
    units = source_units(instance, config.group_colocated)
    _check_size(instance, config, len(units))
    if not is_feasible(instance):
        raise Infeasible(
            f"{instance.n_sinks} sinks of capacity {instance.capacities[0]} "
            f"cannot serve {instance.n_sources} sources"
        )
    start = time.perf_counter()
    search = _Search(instance, config, stats=stats or OracleStats())
    best_cost, best_choice = float("inf"), None
    for partition in _labeled_partitions(units, instance):
        search.stats.leaves += 1
        if config.prune:
            bound = sum(
                subtree_lower_bound(
                    (dist(instance.sources[s], instance.sinks[t]) for s in _flatten(g)), instance.alpha
                )
                for g, t in partition
            )
            if bound >= best_cost:
                search.stats.pruned += 1
                continue
        total = 0.0
        subs = []
        for g, t in partition:
            sub = search.subtree(g, t)
            subs.append((_flatten(g), t, sub))
            total += sub.cost
            if total >= best_cost:
                break
        else:
            if total < best_cost:
                best_cost, best_choice = total, subs
    if best_choice is None:
        best_choice = []
    layout = _assemble(instance, best_choice)
    converged = all(sub.converged for _, _, sub in best_choice)
    layout = Layout(layout.topology, layout.positions, converged)
    cost = evaluate_cost(layout, instance)
    return SolveReport(
        cost, layout, Algorithm.ORACLE, config.weber_epsilon, time.perf_counter() - start, converged
    )


def enumerate_topologies(
    instance: Instance, config: OracleConfig | None = None, direct_singletons: bool = True
) -> Iterator[Topology]:
    """Every full-height topology, one per labeled partition and sub-partition.

    With ``direct_singletons`` and one intermediate layer, a partition that
    has singleton parts is emitted a second time with those sources wired
    straight to their sinks.
    """
    config = config or OracleConfig()
    _check_size(instance, config)
    n, m = instance.n_sources, instance.n_sinks
    lam = instance.n_layers
    units = [(i,) for i in range(n)]
    for partition in _labeled_partitions(units, instance):
        if lam == 0:
            parents = [None] * (n + m)
            for g, t in partition:
                for s in _flatten(g):
                    parents[s] = n + t
            yield Topology(n, m, parents)
        elif lam == 1:
            variants = [False]
            if direct_singletons and any(len(g) == 1 for g, _ in partition):
                variants.append(True)
            for direct in variants:
                parents = [None] * (n + m)
                for g, t in partition:
                    members = _flatten(g)
                    if direct and len(members) == 1:
                        parents[members[0]] = n + t
                        continue
                    parents.append(n + t)
                    for s in members:
                        parents[s] = len(parents) - 1
                yield Topology(n, m, parents)
        else:
            yield from _two_level_topologies(instance, partition)


def _two_level_topologies(instance: Instance, partition) -> Iterator[Topology]:
    n, m = instance.n_sources, instance.n_sinks
    options = [list(_set_partitions(list(g), instance.capacities[2])) for g, _ in partition]

    def rec(k: int, parents: list):
        if k == len(partition):
            yield Topology(n, m, list(parents))
            return
        t = partition[k][1]
        for parts in options[k]:
            extended = list(parents)
            extended.append(n + t)
            v1 = len(extended) - 1
            for part in parts:
                extended.append(v1)
                for s in _flatten(part):
                    extended[s] = len(extended) - 1
            yield from rec(k + 1, extended)

    yield from rec(0, [None] * (n + m))

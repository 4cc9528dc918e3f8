"""Instances, topologies, layouts, validity and cost evaluation."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional, Sequence

from .errors import MissingPosition, StructureError
from .geometry import Point, convex_hull, dist, point_segment_distance

GEOMETRY_TOLERANCE = 1e-9


def _as_point(p) -> Point:
    x, y = float(p[0]), float(p[1])
    if not (math.isfinite(x) and math.isfinite(y)):
        raise ValueError(f"coordinates must be finite, got {p!r}")
    return Point(x, y)


@dataclass(frozen=True)
class Instance:
    """Sources, sinks, per-layer capacities ``(c0, ..., c_{lambda+1})`` and alpha."""

    sources: tuple[Point, ...]
    sinks: tuple[Point, ...]
    capacities: tuple[int, ...]
    alpha: float

    def __post_init__(self):
        object.__setattr__(self, "sources", tuple(_as_point(p) for p in self.sources))
        object.__setattr__(self, "sinks", tuple(_as_point(p) for p in self.sinks))
        caps = tuple(self.capacities)
        if len(caps) < 2:
            raise ValueError("capacities need at least two entries (c0 and the source layer)")
        for c in caps:
            if isinstance(c, bool) or int(c) != c or c < 1:
                raise ValueError(f"capacities must be integers >= 1, got {c!r}")
        caps = tuple(int(c) for c in caps)
        if any(a < b for a, b in zip(caps, caps[1:])):
            raise ValueError(f"capacities must be non-increasing, got {list(caps)}")
        object.__setattr__(self, "capacities", caps)
        alpha = float(self.alpha)
        if not 0.0 <= alpha <= 1.0:
            raise ValueError(f"alpha must lie in [0, 1], got {alpha}")
        object.__setattr__(self, "alpha", alpha)

    @property
    def n_sources(self) -> int:
        return len(self.sources)

    @property
    def n_sinks(self) -> int:
        return len(self.sinks)

    @property
    def n_layers(self) -> int:
        """Number of intermediate (Steiner) layers, lambda."""
        return len(self.capacities) - 2

    def capacity(self, layer: int) -> int:
        return self.capacities[min(layer, len(self.capacities) - 1)]

    def diameter(self) -> float:
        pts = self.sources + self.sinks
        if len(pts) < 2:
            return 0.0
        xs = [p.x for p in pts]
        ys = [p.y for p in pts]
        return math.hypot(max(xs) - min(xs), max(ys) - min(ys))


class VertexKind(str, enum.Enum):
    SOURCE = "source"
    SINK = "sink"
    STEINER = "steiner"


@dataclass(frozen=True)
class Topology:
    """A rooted S-T-forest.

    Vertex ids are dense: sources ``0..n-1``, sinks ``n..n+m-1`` and Steiner
    vertices after that. ``parents[v]`` is the parent id or None for sinks.
    Unused sinks are isolated roots.
    """

    n_sources: int
    n_sinks: int
    parents: tuple[Optional[int], ...]

    def __post_init__(self):
        object.__setattr__(self, "parents", tuple(self.parents))
        n, m, total = self.n_sources, self.n_sinks, len(self.parents)
        if n < 0 or m < 0 or total < n + m:
            raise StructureError("vertex table is shorter than sources plus sinks")
        for v, p in enumerate(self.parents):
            kind = self.kind(v)
            if kind is VertexKind.SINK:
                if p is not None:
                    raise StructureError(f"sink {v} has a parent")
                continue
            if p is None:
                raise StructureError(f"{kind.value} {v} has no parent")
            if not 0 <= p < total or p == v:
                raise StructureError(f"vertex {v} has invalid parent {p}")
            if self.kind(p) is VertexKind.SOURCE:
                raise StructureError(f"vertex {v} hangs below source {p}")
        self.layers  # raises on cycles
        for v in range(n + m, total):
            if not self.children[v]:
                raise StructureError(f"Steiner vertex {v} has no children")

    def kind(self, v: int) -> VertexKind:
        if v < self.n_sources:
            return VertexKind.SOURCE
        if v < self.n_sources + self.n_sinks:
            return VertexKind.SINK
        return VertexKind.STEINER

    @property
    def n_vertices(self) -> int:
        return len(self.parents)

    @property
    def steiner_ids(self) -> range:
        return range(self.n_sources + self.n_sinks, self.n_vertices)

    @cached_property
    def children(self) -> tuple[tuple[int, ...], ...]:
        kids: list[list[int]] = [[] for _ in self.parents]
        for v, p in enumerate(self.parents):
            if p is not None:
                kids[p].append(v)
        return tuple(tuple(k) for k in kids)

    @cached_property
    def layers(self) -> tuple[int, ...]:
        layer: list[Optional[int]] = [None] * self.n_vertices
        for start in range(self.n_vertices):
            path = []
            v = start
            while layer[v] is None:
                path.append(v)
                p = self.parents[v]
                if p is None:
                    layer[v] = 0
                    path.pop()
                    break
                if p in path:
                    raise StructureError(f"cycle through vertex {p}")
                v = p
            base = layer[v]
            for u in reversed(path):
                base += 1
                layer[u] = base
        return tuple(layer)  # type: ignore[arg-type]

    @cached_property
    def roots(self) -> tuple[int, ...]:
        """The sink each vertex hangs below (itself for sinks)."""
        root = [0] * self.n_vertices
        for v in sorted(range(self.n_vertices), key=lambda u: self.layers[u]):
            p = self.parents[v]
            root[v] = v if p is None else root[p]
        return tuple(root)

    @cached_property
    def loads(self) -> tuple[int, ...]:
        load = [1 if v < self.n_sources else 0 for v in range(self.n_vertices)]
        for v in sorted(range(self.n_vertices), key=lambda u: -self.layers[u]):
            p = self.parents[v]
            if p is not None:
                load[p] += load[v]
        return tuple(load)

    @property
    def height(self) -> int:
        return max(self.layers, default=0)

    def leaves_below(self, v: int) -> list[int]:
        out, stack = [], [v]
        while stack:
            u = stack.pop()
            if u < self.n_sources:
                out.append(u)
            stack.extend(self.children[u])
        return sorted(out)

    def edges(self) -> list[tuple[int, int]]:
        """(child, parent) pairs in child id order."""
        return [(v, p) for v, p in enumerate(self.parents) if p is not None]


@dataclass(frozen=True)
class Layout:
    topology: Topology
    positions: tuple[Optional[Point], ...]
    converged: bool = field(default=True, compare=False)

    def __post_init__(self):
        pos = tuple(None if p is None else _as_point(p) for p in self.positions)
        if len(pos) != self.topology.n_vertices:
            raise StructureError("positions must cover every vertex")
        object.__setattr__(self, "positions", pos)


class Algorithm(str, enum.Enum):
    MATCHING = "matching"
    CIRCULAR_DP = "circular_dp"
    CONVEX_DP = "convex_dp"
    ORACLE = "oracle"


@dataclass(frozen=True)
class SolveReport:
    cost: float
    layout: Layout
    algorithm: Algorithm
    epsilon: float
    wall_time: float
    converged: bool = True


@dataclass(frozen=True)
class Violation:
    vertex: int
    layer: int
    load: int
    capacity: int

    def __str__(self) -> str:
        return f"vertex {self.vertex} in layer {self.layer}: load {self.load} > capacity {self.capacity}"


@dataclass(frozen=True)
class ValidityReport:
    violations: tuple[Violation, ...] = ()

    @property
    def valid(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.valid


def check_structure(topology: Topology, instance: Instance) -> None:
    """Raise StructureError unless ``topology`` is a forest over ``instance``."""
    if topology.n_sources != instance.n_sources or topology.n_sinks != instance.n_sinks:
        raise StructureError(
            f"topology has {topology.n_sources} sources and {topology.n_sinks} sinks, "
            f"instance has {instance.n_sources} and {instance.n_sinks}"
        )
    limit = instance.n_layers + 1
    for v, layer in enumerate(topology.layers):
        if layer > limit:
            raise StructureError(f"vertex {v} sits in layer {layer}, height bound is {limit}")


def validate(topology: Topology, instance: Instance) -> ValidityReport:
    """Capacity check: load(v) <= c_i for every vertex v in layer i."""
    check_structure(topology, instance)
    violations = []
    for v in range(topology.n_vertices):
        if v < topology.n_sources:
            continue
        layer, load = topology.layers[v], topology.loads[v]
        cap = instance.capacity(layer)
        if load > cap:
            violations.append(Violation(v, layer, load, cap))
    return ValidityReport(tuple(violations))


def evaluate_cost(layout: Layout, instance: Instance) -> float:
    """Sum over edges of dist(child, parent) * load(child)^alpha."""
    topo = layout.topology
    pos = layout.positions
    for v in topo.steiner_ids:
        if pos[v] is None:
            raise MissingPosition(f"Steiner vertex {v} has no position")
    total = 0.0
    loads = topo.loads
    for v, p in topo.edges():
        total += dist(pos[v], pos[p]) * loads[v] ** instance.alpha
    return total


def fixed_positions(instance: Instance, n_steiner: int = 0) -> list[Optional[Point]]:
    return list(instance.sources) + list(instance.sinks) + [None] * n_steiner


def is_feasible(instance: Instance) -> bool:
    return instance.n_sinks * instance.capacities[0] >= instance.n_sources


class InstanceClass(str, enum.Enum):
    GENERAL = "general"
    CONVEX = "convex"
    CIRCULAR = "circular"
    GROUP_EQUALLY_SPACED = "group_equally_spaced"
    SOURCE_EQUALLY_SPACED = "source_equally_spaced"


def _evenly_spaced(angles: Sequence[float], tol: float) -> bool:
    m = len(angles)
    if m <= 1:
        return True
    ordered = sorted(angles)
    step = 2.0 * math.pi / m
    gaps = [b - a for a, b in zip(ordered, ordered[1:])]
    gaps.append(ordered[0] + 2.0 * math.pi - ordered[-1])
    return all(abs(g - step) <= tol for g in gaps)


def _group_positions(points: Sequence[Point], tol: float) -> list[Point]:
    groups: list[Point] = []
    for p in points:
        if not any(dist(p, q) <= tol for q in groups):
            groups.append(p)
    return groups


def is_convex(instance: Instance, tol: float = GEOMETRY_TOLERANCE) -> bool:
    """Every source lies on the boundary of the hull of sources and sinks."""
    if not instance.sources:
        return True
    hull = convex_hull(instance.sources + instance.sinks)
    if len(hull) <= 2:
        return True
    edges = list(zip(hull, hull[1:] + hull[:1]))
    return all(min(point_segment_distance(s, a, b) for a, b in edges) <= tol for s in instance.sources)


def classify(instance: Instance, tol: float = GEOMETRY_TOLERANCE) -> InstanceClass:
    """Strongest geometric class of ``instance``."""
    sources, sinks = instance.sources, instance.sinks
    if sources and sinks and all(dist(t, sinks[0]) <= tol for t in sinks):
        center = sinks[0]
        radii = [dist(s, center) for s in sources]
        if radii[0] > tol and all(abs(r - radii[0]) <= tol for r in radii):
            groups = _group_positions(sources, tol)
            angles = [math.atan2(p.y - center.y, p.x - center.x) for p in groups]
            if _evenly_spaced(angles, tol):
                if len(groups) == len(sources):
                    return InstanceClass.SOURCE_EQUALLY_SPACED
                return InstanceClass.GROUP_EQUALLY_SPACED
            return InstanceClass.CIRCULAR
    if is_convex(instance, tol):
        return InstanceClass.CONVEX
    return InstanceClass.GENERAL

"""Optimal placement of the Steiner vertices of a fixed topology."""

from __future__ import annotations

from dataclasses import dataclass

from .geometry import SNAP_TOLERANCE, Point, dist, weber_point
from .model import Instance, Layout, Topology, check_structure, fixed_positions


@dataclass(frozen=True)
class EmbedConfig:
    epsilon: float = 1e-9
    max_rounds: int = 10000
    weber_epsilon: float = 1e-10

    def __post_init__(self):
        if self.epsilon <= 0 or self.weber_epsilon <= 0:
            raise ValueError("tolerances must be positive")
        if self.weber_epsilon > self.epsilon:
            raise ValueError("weber_epsilon must not exceed epsilon")
        if self.max_rounds < 1:
            raise ValueError("max_rounds must be at least 1")


@dataclass(frozen=True)
class EmbedTrace:
    """Cost after initialization and after every sweep."""

    costs: tuple[float, ...]
    rounds: int
    converged: bool


def _neighbourhood(topology: Topology, alpha: float) -> list[list[tuple[int, float]]]:
    """Per vertex: (neighbour, edge weight), parent first, then children."""
    loads = topology.loads
    out: list[list[tuple[int, float]]] = [[] for _ in range(topology.n_vertices)]
    for v in topology.steiner_ids:
        out[v].append((topology.parents[v], loads[v] ** alpha))
        out[v].extend((c, loads[c] ** alpha) for c in topology.children[v])
    return out


def _total_cost(topology: Topology, pos, alpha: float) -> float:
    loads = topology.loads
    return sum(dist(pos[v], pos[p]) * loads[v] ** alpha for v, p in topology.edges())


def _initial_positions(topology: Topology, instance: Instance) -> list:
    pos = fixed_positions(instance, topology.n_vertices - instance.n_sources - instance.n_sinks)
    for v in topology.steiner_ids:
        pts = [instance.sources[s] for s in topology.leaves_below(v)]
        pts.append(pos[topology.roots[v]])
        pos[v] = Point(sum(p.x for p in pts) / len(pts), sum(p.y for p in pts) / len(pts))
    return pos


def _clusters(topology: Topology, pos, tol: float) -> list[list[int]]:
    """Groups of Steiner vertices joined by zero-length Steiner edges."""
    parent = {v: v for v in topology.steiner_ids}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for v in topology.steiner_ids:
        p = topology.parents[v]
        if p in parent and dist(pos[v], pos[p]) <= tol:
            parent[find(v)] = find(p)
    groups: dict[int, list[int]] = {}
    for v in topology.steiner_ids:
        groups.setdefault(find(v), []).append(v)
    return [g for g in groups.values() if len(g) > 1]


def _cluster_move(cluster, neigh, pos, epsilon) -> float:
    """Move a coincident cluster jointly; returns the max displacement."""
    members = set(cluster)
    outside = [(pos[u], w) for v in cluster for u, w in neigh[v] if u not in members]
    here = pos[cluster[0]]
    before = sum(w * dist(here, p) for p, w in outside)
    res = weber_point(outside, epsilon=epsilon)
    if res.cost < before:
        for v in cluster:
            pos[v] = res.position
        return dist(here, res.position)
    return 0.0


def _extrapolate(topology, pos, before, steiner, alpha) -> float:
    """Doubling line search along the last sweep's displacement.

    Coordinate sweeps zig-zag along narrow valleys; pushing further in the
    net sweep direction is accepted only while the total cost keeps falling.
    """
    base = list(pos)
    best = _total_cost(topology, pos, alpha)
    step = 1.0
    while step < 1e6:
        step *= 2.0
        trial = list(base)
        for v in steiner:
            b, p = before[v], base[v]
            trial[v] = Point(b.x + step * (p.x - b.x), b.y + step * (p.y - b.y))
        c = _total_cost(topology, trial, alpha)
        if c >= best:
            break
        best = c
        pos[:] = trial
    return best


def embed(
    topology: Topology,
    instance: Instance,
    config: EmbedConfig | None = None,
    trace: list | None = None,
) -> Layout:
    """Place the Steiner vertices of ``topology`` at minimum total cost.

    Block coordinate descent: each sweep re-solves every Steiner vertex's
    weighted Weber problem in id order with the others held fixed. Vertices
    glued together by zero-length edges are additionally moved as one block,
    since single-vertex moves cannot separate a non-optimal coincident pair.
    If ``trace`` is a list, an :class:`EmbedTrace` is appended to it.
    """
    config = config or EmbedConfig()
    check_structure(topology, instance)
    alpha = instance.alpha
    pos = _initial_positions(topology, instance)
    steiner = list(topology.steiner_ids)
    cost = _total_cost(topology, pos, alpha)
    costs = [cost]
    if not steiner:
        if trace is not None:
            trace.append(EmbedTrace(tuple(costs), 0, True))
        return Layout(topology, tuple(pos), True)

    neigh = _neighbourhood(topology, alpha)
    diam = max(instance.diameter(), 1e-300)
    snap = SNAP_TOLERANCE * diam
    converged = False
    rounds = 0
    for rounds in range(1, config.max_rounds + 1):
        moved = 0.0
        before = list(pos)
        for v in steiner:
            old = pos[v]
            res = weber_point([(pos[u], w) for u, w in neigh[v]], epsilon=config.weber_epsilon, start=old)
            local_old = sum(w * dist(old, pos[u]) for u, w in neigh[v])
            if res.cost < local_old:
                pos[v] = res.position
                moved = max(moved, dist(old, res.position))
        for cluster in _clusters(topology, pos, snap):
            moved = max(moved, _cluster_move(cluster, neigh, pos, config.weber_epsilon))
        new_cost = _extrapolate(topology, pos, before, steiner, alpha)
        improvement = cost - new_cost
        cost = min(cost, new_cost)
        costs.append(new_cost)
        if improvement <= config.epsilon**2 * cost and moved < config.epsilon * diam:
            converged = True
            break

    if trace is not None:
        trace.append(EmbedTrace(tuple(costs), rounds, converged))
    return Layout(topology, tuple(pos), converged)


def subtree_lower_bound(distances, alpha: float) -> float:
    """Lower bound on the cost of one subtree hanging from a sink.

    ``distances`` are the straight-line distances of its sources to the sink.
    Every edge load lies in [1, k] for k sources, so each edge weight is at
    least 1 and at least load * k^(alpha - 1); a source's path is never
    shorter than its straight line.
    """
    distances = list(distances)
    if not distances:
        return 0.0
    k = len(distances)
    return max(max(distances), k ** (alpha - 1.0) * sum(distances))


def embedding_lower_bound(topology: Topology, instance: Instance) -> float:
    """Sum of subtree_lower_bound over the subtrees hanging from the sinks.

    At alpha = 1 this is the sum of source-to-sink distances.
    """
    n = instance.n_sources
    groups: dict[int, list[float]] = {}
    for s in range(topology.n_sources):
        top = s
        while topology.parents[top] >= n + instance.n_sinks:  # climb while the parent is Steiner
            top = topology.parents[top]
        sink = topology.roots[s]
        groups.setdefault(top, []).append(dist(instance.sources[s], instance.sinks[sink - n]))
    return sum(subtree_lower_bound(d, instance.alpha) for d in groups.values())

"""Shared helpers for the test suite."""

from __future__ import annotations

import itertools
import math

import numpy as np

from flamecast.convex_dp import cyclic_order
from flamecast.generators import random_instance
from flamecast.geometry import orient
from flamecast.matching import direct_layout
from flamecast.model import Instance, Layout, evaluate_cost


def rel_gap(a: float, b: float) -> float:
    return abs(a - b) / max(abs(b), 1e-300)


def brute_force_assignment(instance: Instance) -> float:
    """Cheapest direct source-to-sink wiring, by enumerating every assignment."""
    n, m, c0 = instance.n_sources, instance.n_sinks, instance.capacities[0]
    best = math.inf
    for sink_of in itertools.product(range(m), repeat=n):
        if any(sink_of.count(t) > c0 for t in range(m)):
            continue
        best = min(best, evaluate_cost(direct_layout(instance, sink_of), instance))
    return best


def proper_crossing(a1, a2, b1, b2, tol: float = 1e-9) -> bool:
    """Segments cross at a point interior to both (touching does not count)."""
    scale = max(1.0, *(abs(c) for p in (a1, a2, b1, b2) for c in p))
    eps = tol * scale * scale
    d1, d2 = orient(b1, b2, a1), orient(b1, b2, a2)
    d3, d4 = orient(a1, a2, b1), orient(a1, a2, b2)
    return ((d1 > eps and d2 < -eps) or (d1 < -eps and d2 > eps)) and (
        (d3 > eps and d4 < -eps) or (d3 < -eps and d4 > eps)
    )


def crossing_source_edges(layout: Layout) -> list[tuple[int, int]]:
    topo, pos = layout.topology, layout.positions
    out = []
    for a, b in itertools.combinations(range(topo.n_sources), 2):
        va, vb = topo.parents[a], topo.parents[b]
        if va is None or vb is None or va == vb or pos[a] == pos[b]:
            continue
        if proper_crossing(pos[a], pos[va], pos[b], pos[vb]):
            out.append((a, b))
    return out


def convex_angle_configurations(layout: Layout, instance: Instance):
    """Hubs (u, v, w) whose children appear as u, v, w, v in the cyclic order.

    Hubs are the parents of sources; with alpha = 0 and no capacities every
    source in an optimum hangs from its nearest hub, so the children of a hub
    are the sources in its Voronoi cell.
    """
    order = cyclic_order(instance)
    parent = layout.topology.parents
    seq = [parent[s] for s in order]
    hubs = sorted(set(seq))
    n = len(seq)
    found = []
    for v in hubs:
        for u, w in itertools.permutations([h for h in hubs if h != v], 2):
            if _pattern(seq, n, (u, v, w, v)):
                found.append((u, v, w))
    return found


def _pattern(seq, n, pattern) -> bool:
    for start in range(n):
        k = 0
        for i in range(n):
            if seq[(start + i) % n] == pattern[k]:
                k += 1
                if k == len(pattern):
                    return True
    return False


def planted_triangle(seed: int) -> Instance:
    """Triangle instance with jittered side sources and group sizes.

    Two heavy groups at the base corners and one light source on each side
    tend to produce a hub whose children interleave with two other hubs.
    """
    rng = np.random.default_rng(seed)
    A, B, apex = (0.0, 0.0), (4.0, 0.0), (2.0, -2.0)
    ka, kb = (int(k) for k in rng.integers(3, 6, size=2))
    s1, s2, s3 = rng.uniform(0.3, 0.7, size=3)
    c = (A[0] + s1 * (apex[0] - A[0]), A[1] + s1 * (apex[1] - A[1]))
    d = (A[0] + s2 * (B[0] - A[0]), 0.0)
    e = (B[0] + s3 * (apex[0] - B[0]), B[1] + s3 * (apex[1] - B[1]))
    sources = [A] * ka + [c, d, e] + [B] * kb + [apex]
    n = len(sources)
    return Instance(sources, [apex], (n, n, 1), 0.0)


def random_case(seed):
    """Small general instance with one intermediate layer and a random c1."""
    rng = np.random.default_rng(seed)
    n = int(rng.integers(3, 7))
    m = int(rng.integers(1, 3))
    c0 = n
    c1 = int(rng.integers(1, n + 1))
    return random_instance(n, m, seed=seed, alpha=float(rng.uniform(0, 1)), capacities=(c0, c1, 1))


def planted_duplicates(seed):
    """Uncapacitated instance where some sources repeat an earlier position."""
    rng = np.random.default_rng(1000 + seed)
    base = rng.uniform(0, 1, size=(int(rng.integers(2, 5)), 2))
    picks = list(base) + [base[int(rng.integers(len(base)))] for _ in range(int(rng.integers(1, 3)))]
    sinks = rng.uniform(0, 1, size=(int(rng.integers(1, 3)), 2))
    n = len(picks)
    return Instance([tuple(p) for p in picks], [tuple(t) for t in sinks], (n, n, 1), float(rng.uniform(0.05, 0.95)))


def random_formula(rng):
    """A random monotone formula that the naive router can draw, or None."""
    from flamecast.errors import DrawingInvalid
    from flamecast.reductions.sat import draw_formula

    n_vars = int(rng.integers(3, 7))
    clauses = []
    for _ in range(int(rng.integers(1, 4))):
        vs = sorted(rng.choice(n_vars, size=3, replace=False) + 1)
        sign = 1 if rng.uniform() < 0.5 else -1
        clauses.append(tuple(sign * int(v) for v in vs))
    try:
        return draw_formula(clauses, n_vars)
    except DrawingInvalid:
        return None

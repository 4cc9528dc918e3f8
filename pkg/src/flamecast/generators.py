"""Deterministic instance generators."""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np

from .model import Instance

# ids of the named sources in triangle_instance()
TRIANGLE_LABELS = {"A": (0, 1, 2, 3), "c": (4,), "d": (5,), "e": (6,), "B": (7, 8, 9, 10), "f": (11,)}


def default_capacities(n: int, layers: int = 1, c1: int | None = None) -> tuple[int, ...]:
    """``(n, c1, ..., 1)``: uncapacitated sinks, optional bound for layer 1."""
    n = max(n, 1)
    mids = [n] * layers
    if layers and c1 is not None:
        mids = [min(c1, n)] * layers
    return (n, *mids, 1)


def circular_instance(
    n: int,
    radius: float = 1.0,
    alpha: float = 0.0,
    capacities: Sequence[int] | None = None,
    center: tuple[float, float] = (0.0, 0.0),
) -> Instance:
    """``n`` sources evenly spaced on a circle, one sink at its center."""
    if n < 1 or radius <= 0:
        raise ValueError("need n >= 1 and a positive radius")
    cx, cy = center
    sources = [
        (cx + radius * math.cos(2.0 * math.pi * k / n), cy + radius * math.sin(2.0 * math.pi * k / n))
        for k in range(n)
    ]
    caps = tuple(capacities) if capacities is not None else default_capacities(n)
    return Instance(sources, [center], caps, alpha)


def convex_instance(
    n: int,
    seed: int = 0,
    alpha: float = 0.0,
    capacities: Sequence[int] | None = None,
    axes: tuple[float, float] = (2.0, 1.0),
) -> Instance:
    """``n`` sources at sorted random angles on an ellipse, sink strictly inside."""
    if n < 1:
        raise ValueError("need n >= 1")
    rng = np.random.default_rng(seed)
    a, b = axes
    angles = np.sort(rng.uniform(0.0, 2.0 * math.pi, size=n))
    sources = [(a * math.cos(t), b * math.sin(t)) for t in angles]
    r = 0.5 * math.sqrt(rng.uniform())
    phi = rng.uniform(0.0, 2.0 * math.pi)
    sink = (a * r * math.cos(phi), b * r * math.sin(phi))
    caps = tuple(capacities) if capacities is not None else default_capacities(n)
    return Instance(sources, [sink], caps, alpha)


def random_instance(
    n: int,
    n_sinks: int = 1,
    seed: int = 0,
    alpha: float = 0.5,
    capacities: Sequence[int] | None = None,
) -> Instance:
    """Sources and sinks uniform in the unit square."""
    if n < 0 or n_sinks < 1:
        raise ValueError("need n >= 0 and at least one sink")
    rng = np.random.default_rng(seed)
    pts = rng.uniform(0.0, 1.0, size=(n + n_sinks, 2))
    caps = tuple(capacities) if capacities is not None else default_capacities(n)
    return Instance([tuple(p) for p in pts[:n]], [tuple(p) for p in pts[n:]], caps, alpha)


def triangle_instance() -> Instance:
    """Convex instance whose optimum has a Steiner vertex with three runs.

    Isosceles triangle of base 4 and height 2 with the apex pointing down:
    four sources at each base corner (A, B), one source at the midpoint of
    each side (c, d, e) and one source f together with the sink at the apex.
    The optimum costs 4 + 4*sqrt(2), with c, d, e sharing one Steiner vertex.
    """
    A, B, apex = (0.0, 0.0), (4.0, 0.0), (2.0, -2.0)
    c, d, e = (1.0, -1.0), (2.0, 0.0), (3.0, -1.0)
    sources = [A] * 4 + [c, d, e] + [B] * 4 + [apex]
    return Instance(sources, [apex], (12, 12, 1), 0.0)

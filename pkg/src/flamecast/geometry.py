"""Planar primitives and the weighted geometric median (Weber point)."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

from .errors import AllZeroWeights, EmptyInput

# An iterate closer than this (relative to the input diameter) to an input
# location is treated as sitting on it.
SNAP_TOLERANCE = 1e-12


class Point(NamedTuple):
    x: float
    y: float


class WeightedPoint(NamedTuple):
    point: Point
    weight: float


@dataclass(frozen=True)
class WeberResult:
    position: Point
    cost: float
    iterations: int
    converged: bool
    history: tuple[float, ...] = ()


def dist(p: Sequence[float], q: Sequence[float]) -> float:
    return math.hypot(p[0] - q[0], p[1] - q[1])


def orient(a: Sequence[float], b: Sequence[float], c: Sequence[float]) -> float:
    """Twice the signed area of triangle abc (positive for a left turn)."""
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])


def weighted_distance_sum(p: Sequence[float], points: Iterable[WeightedPoint]) -> float:
    return sum(w * dist(p, q) for q, w in points)


def _merge_locations(points) -> tuple[list[tuple[float, float]], list[float]]:
    locs: list[tuple[float, float]] = []
    weights: list[float] = []
    index: dict[tuple[float, float], int] = {}
    for q, w in points:
        w = float(w)
        if not math.isfinite(w) or w < 0:
            raise ValueError(f"weights must be finite and non-negative, got {w}")
        if w == 0:
            continue
        key = (float(q[0]), float(q[1]))
        if key in index:
            weights[index[key]] += w
        else:
            index[key] = len(locs)
            locs.append(key)
            weights.append(w)
    return locs, weights


def _diameter(locs) -> float:
    best = 0.0
    for i in range(len(locs)):
        for j in range(i + 1, len(locs)):
            best = max(best, dist(locs[i], locs[j]))
    return best


def _residual(i, locs, weights) -> tuple[float, float]:
    """Pull exerted on location i by all other locations."""
    xi, yi = locs[i]
    rx = ry = 0.0
    for j, (xj, yj) in enumerate(locs):
        if j == i:
            continue
        d = math.hypot(xj - xi, yj - yi)
        rx += weights[j] * (xj - xi) / d
        ry += weights[j] * (yj - yi) / d
    return rx, ry


def weber_point(
    points: Iterable[WeightedPoint] | Iterable[tuple[Sequence[float], float]],
    epsilon: float = 1e-9,
    max_iterations: int = 10000,
    record_history: bool = False,
    start: Sequence[float] | None = None,
) -> WeberResult:
    """Minimize the weighted sum of distances to ``points``.

    Damped Weiszfeld iteration. Input locations that are optimal (the
    majority rule, or more generally a residual pull no larger than the
    location's own weight) are detected up front and returned exactly.
    Identical locations are merged and zero weights dropped; among tied
    majority locations the first one given wins. Iteration starts at the
    weighted centroid unless ``start`` is given.
    """
    points = list(points)
    if not points:
        raise EmptyInput("weber_point needs at least one point")
    locs, weights = _merge_locations(points)
    if not locs:
        raise AllZeroWeights("every weight is zero")

    def cost_at(px: float, py: float) -> float:
        return sum(w * math.hypot(px - x, py - y) for (x, y), w in zip(locs, weights))

    if len(locs) == 1:
        return WeberResult(Point(*locs[0]), 0.0, 0, True)

    total = sum(weights)
    for i, w in enumerate(weights):
        if 2.0 * w >= total:
            return WeberResult(Point(*locs[i]), cost_at(*locs[i]), 0, True)
    for i, w in enumerate(weights):
        rx, ry = _residual(i, locs, weights)
        if math.hypot(rx, ry) <= w * (1.0 + 1e-12):
            return WeberResult(Point(*locs[i]), cost_at(*locs[i]), 0, True)

    diam = _diameter(locs)
    snap = SNAP_TOLERANCE * diam
    if start is None:
        yx = sum(w * x for (x, _), w in zip(locs, weights)) / total
        yy = sum(w * y for (_, y), w in zip(locs, weights)) / total
    else:
        yx, yy = float(start[0]), float(start[1])
    cost = cost_at(yx, yy)
    history = [cost] if record_history else []
    converged = False
    iterations = 0

    for iterations in range(1, max_iterations + 1):
        sw = sx = sy = 0.0
        near = -1
        for j, ((x, y), w) in enumerate(zip(locs, weights)):
            d = math.hypot(x - yx, y - yy)
            if d <= snap:
                near = j
                continue
            sw += w / d
            sx += w * x / d
            sy += w * y / d
        tx, ty = sx / sw, sy / sw
        if near >= 0:
            # Sitting on a non-optimal input location: step off along the pull
            # of the remaining terms (Vardi-Zhang).
            rx, ry = sx - yx * sw, sy - yy * sw
            beta = min(1.0, weights[near] / math.hypot(rx, ry))
            nx, ny = (1.0 - beta) * tx + beta * yx, (1.0 - beta) * ty + beta * yy
        else:
            nx, ny = tx, ty

        new_cost = cost_at(nx, ny)
        step = 1.0
        while new_cost > cost and step > 1e-9:
            step *= 0.5
            nx, ny = yx + step * (tx - yx), yy + step * (ty - yy)
            new_cost = cost_at(nx, ny)
        if new_cost > cost:
            converged = True
            break

        move = math.hypot(nx - yx, ny - yy)
        decrease = cost - new_cost
        yx, yy, cost = nx, ny, new_cost
        if record_history:
            history.append(cost)
        if move < epsilon * diam and decrease <= epsilon * epsilon * cost:
            converged = True
            break

    return WeberResult(Point(yx, yy), cost, iterations, converged, tuple(history))


def convex_hull(points: Iterable[Sequence[float]], tolerance: float = 0.0) -> list[Point]:
    """Counterclockwise hull vertices (Andrew's monotone chain).

    Starts at the lexicographically smallest point. Collinear boundary points
    are dropped; ``tolerance`` is an absolute distance below which a point
    counts as collinear with its neighbours.
    """
    pts = sorted({(float(p[0]), float(p[1])) for p in points})
    if not pts:
        raise EmptyInput("convex_hull needs at least one point")
    if len(pts) <= 2:
        return [Point(*p) for p in pts]

    def turn_ok(a, b, c) -> bool:
        return orient(a, b, c) > tolerance * dist(a, c)

    lower: list[tuple[float, float]] = []
    for p in pts:
        while len(lower) >= 2 and not turn_ok(lower[-2], lower[-1], p):
            lower.pop()
        lower.append(p)
    upper: list[tuple[float, float]] = []
    for p in reversed(pts):
        while len(upper) >= 2 and not turn_ok(upper[-2], upper[-1], p):
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    if len(hull) < 2:
        # all points coincide up to tolerance
        hull = [pts[0], pts[-1]] if pts[0] != pts[-1] else [pts[0]]
    return [Point(*p) for p in hull]


def point_segment_distance(p: Sequence[float], a: Sequence[float], b: Sequence[float]) -> float:
    dx, dy = b[0] - a[0], b[1] - a[1]
    length2 = dx * dx + dy * dy
    if length2 == 0.0:
        return dist(p, a)
    t = ((p[0] - a[0]) * dx + (p[1] - a[1]) * dy) / length2
    t = min(1.0, max(0.0, t))
    return math.hypot(p[0] - (a[0] + t * dx), p[1] - (a[1] + t * dy))


def point_in_hull(p: Sequence[float], hull: Sequence[Sequence[float]], tolerance: float = 0.0) -> bool:
    """Whether ``p`` lies in the CCW ``hull`` or within ``tolerance`` of it."""
    if len(hull) == 1:
        return dist(p, hull[0]) <= tolerance
    if len(hull) == 2:
        return point_segment_distance(p, hull[0], hull[1]) <= tolerance
    for i in range(len(hull)):
        a, b = hull[i], hull[(i + 1) % len(hull)]
        if orient(a, b, p) < -tolerance * dist(a, b):
            return False
    return True


def segments_intersect(a1, a2, b1, b2, tolerance: float = 1e-12) -> bool:
    """Whether the closed segments a1-a2 and b1-b2 share a point."""
    scale = max(dist(a1, a2), dist(b1, b2), 1.0)
    tol = tolerance * scale

    def side(p, q, r) -> int:
        o = orient(p, q, r)
        length = dist(p, q)
        if abs(o) <= tol * max(length, 1.0):
            return 0
        return 1 if o > 0 else -1

    d1, d2 = side(b1, b2, a1), side(b1, b2, a2)
    d3, d4 = side(a1, a2, b1), side(a1, a2, b2)
    if d1 * d2 < 0 and d3 * d4 < 0:
        return True
    return (
        (d1 == 0 and point_segment_distance(a1, b1, b2) <= tol)
        or (d2 == 0 and point_segment_distance(a2, b1, b2) <= tol)
        or (d3 == 0 and point_segment_distance(b1, a1, a2) <= tol)
        or (d4 == 0 and point_segment_distance(b2, a1, a2) <= tol)
    )


def angle_at(u: Sequence[float], v: Sequence[float], w: Sequence[float]) -> float:
    """The angle uvw at ``v`` in degrees."""
    ax, ay = u[0] - v[0], u[1] - v[1]
    bx, by = w[0] - v[0], w[1] - v[1]
    return math.degrees(math.atan2(abs(ax * by - ay * bx), ax * bx + ay * by))

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.optimize import minimize

from flamecast.errors import AllZeroWeights, EmptyInput
from flamecast.geometry import (
    Point,
    angle_at,
    convex_hull,
    dist,
    point_in_hull,
    point_segment_distance,
    segments_intersect,
    weber_point,
    weighted_distance_sum,
)

coord = st.floats(-100, 100, allow_nan=False, allow_infinity=False)
point = st.tuples(coord, coord)
weight = st.floats(0.01, 10, allow_nan=False)


def test_equilateral_triangle_cost_is_sqrt3():
    pts = [((0.0, 0.0), 1.0), ((1.0, 0.0), 1.0), ((0.5, math.sqrt(3) / 2), 1.0)]
    res = weber_point(pts)
    assert res.converged
    assert abs(res.cost - math.sqrt(3)) <= 1e-9
    assert dist(res.position, (0.5, math.sqrt(3) / 6)) <= 1e-6


def test_majority_point_is_returned_exactly():
    res = weber_point([((0.0, 0.0), 3.0), ((1.0, 0.0), 1.0), ((0.0, 1.0), 1.0)])
    assert res.position == (0.0, 0.0)
    assert res.cost == 2.0
    assert res.iterations == 0


def test_tied_majority_prefers_first_location():
    res = weber_point([((2.0, 0.0), 1.0), ((0.0, 0.0), 1.0)])
    assert res.position == (2.0, 0.0)
    assert res.cost == 2.0


def test_single_point_and_zero_weights():
    assert weber_point([((3.0, 4.0), 2.0)]).position == (3.0, 4.0)
    res = weber_point([((3.0, 4.0), 2.0), ((9.0, 9.0), 0.0)])
    assert res.position == (3.0, 4.0) and res.cost == 0.0


def test_coincident_points_are_merged():
    res = weber_point([((0.0, 0.0), 1.0), ((0.0, 0.0), 1.0), ((5.0, 0.0), 1.0)])
    assert res.position == (0.0, 0.0)


def test_errors():
    with pytest.raises(EmptyInput):
        weber_point([])
    with pytest.raises(AllZeroWeights):
        weber_point([((0, 0), 0.0), ((1, 1), 0.0)])
    with pytest.raises(ValueError):
        weber_point([((0, 0), -1.0), ((1, 1), 1.0)])


def test_history_is_monotone():
    rng = np.random.default_rng(3)
    pts = [(tuple(p), float(w)) for p, w in zip(rng.normal(size=(9, 2)), rng.uniform(0.5, 2, 9))]
    res = weber_point(pts, record_history=True)
    costs = res.history
    assert len(costs) >= 2
    assert all(b <= a + 1e-12 for a, b in zip(costs, costs[1:]))


@settings(max_examples=60, deadline=None)
@given(st.lists(st.tuples(point, weight), min_size=2, max_size=8))
def test_weber_matches_scipy_minimizer(pts):
    res = weber_point(pts, epsilon=1e-10)
    f = lambda x: weighted_distance_sum(x, pts)  # noqa: E731
    ref = minimize(f, np.array(res.position), method="Nelder-Mead", options={"xatol": 1e-10, "fatol": 1e-12})
    total = sum(w for _, w in pts)
    scale = total * max(1.0, max(dist(p, q) for p, _ in pts for q, _ in pts))
    assert res.cost <= ref.fun + 1e-7 * scale


def test_hull_containment_on_random_inputs():
    rng = np.random.default_rng(2024)
    for _ in range(1000):
        k = int(rng.integers(1, 8))
        pts = [(tuple(p), float(w)) for p, w in zip(rng.uniform(-10, 10, (k, 2)), rng.uniform(0.1, 5, k))]
        res = weber_point(pts)
        hull = convex_hull([p for p, _ in pts])
        assert point_in_hull(res.position, hull, 1e-7)


def test_convex_hull_ccw_without_collinear():
    sq = [(0, 0), (2, 0), (2, 2), (0, 2), (1, 0), (1, 1)]
    hull = convex_hull(sq)
    assert set(hull) == {(0, 0), (2, 0), (2, 2), (0, 2)}
    area = sum(a.x * b.y - b.x * a.y for a, b in zip(hull, hull[1:] + hull[:1]))
    assert area > 0
    with pytest.raises(EmptyInput):
        convex_hull([])
    assert convex_hull([(1, 1), (1, 1)]) == [Point(1.0, 1.0)]


def test_point_in_hull_examples():
    tri = convex_hull([(0, 0), (1, 0), (0, 1)])
    assert point_in_hull((0.2, 0.2), tri)
    assert not point_in_hull((2, 2), tri)
    assert point_in_hull((0.5, 0.0), tri)


def test_segment_predicates():
    assert segments_intersect((0, 0), (2, 2), (0, 2), (2, 0))
    assert not segments_intersect((0, 0), (1, 0), (0, 1), (1, 1))
    assert segments_intersect((0, 0), (1, 0), (1, 0), (2, 5))
    assert point_segment_distance((0, 1), (-1, 0), (1, 0)) == 1.0
    assert point_segment_distance((3, 0), (-1, 0), (1, 0)) == 2.0


def test_angle_at():
    assert abs(angle_at((1, 0), (0, 0), (0, 1)) - 90.0) < 1e-12
    assert abs(angle_at((1, 0), (0, 0), (-1, 0)) - 180.0) < 1e-12

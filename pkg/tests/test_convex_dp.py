import math

import pytest

from flamecast.convex_dp import _splits, cyclic_order, group_cost, runs_in_order, solve_convex
from flamecast.errors import Infeasible, NotConvex, WrongCase
from flamecast.generators import TRIANGLE_LABELS, convex_instance, triangle_instance
from flamecast.model import Instance, validate
from flamecast.oracle import solve_oracle
from _support import rel_gap

L = TRIANGLE_LABELS


def test_triangle_cyclic_order():
    order = cyclic_order(triangle_instance())
    walk = []
    for s in order:
        name = next(k for k, ids in L.items() if s in ids)
        if not walk or walk[-1] != name:
            walk.append(name)
    assert walk == ["A", "c", "f", "e", "B", "d"]


def test_cde_group_cost_is_four():
    inst = triangle_instance()
    assert abs(group_cost(L["c"] + L["d"] + L["e"], inst) - 4.0) < 1e-9


def test_triangle_optimum_has_three_run_steiner_vertex():
    inst = triangle_instance()
    rep = solve_convex(inst)
    assert rel_gap(rep.cost, 4 + 4 * math.sqrt(2)) <= 1e-6
    topo = rep.layout.topology
    cde = {L["c"][0], L["d"][0], L["e"][0]}
    kids = [set(topo.children[v]) for v in topo.steiner_ids]
    assert cde in kids
    assert runs_in_order(cde, cyclic_order(inst)) == 3


def test_runs_in_order():
    order = list(range(8))
    assert runs_in_order([0, 7], order) == 1
    assert runs_in_order([0, 2, 4], order) == 3
    assert runs_in_order(order, order) == 1
    assert runs_in_order([], order) == 0


def test_splits_exclude_trivial_recursion():
    for length in range(2, 6):
        for p1, p2, p3, p4 in _splits(length):
            assert 0 <= p1 <= p2 <= p3 <= p4 <= length
            assert p2 - p1 < length and p4 - p3 < length


def test_errors():
    with pytest.raises(NotConvex):
        solve_convex(Instance([(0, 0), (4, 0), (0, 4), (1, 1)], [(0.5, 0.5)], (4, 4, 1), 0.0))
    with pytest.raises(WrongCase):
        solve_convex(convex_instance(5, alpha=0.5))
    with pytest.raises(WrongCase):
        solve_convex(convex_instance(5, capacities=(5, 2, 1)))
    with pytest.raises(Infeasible):
        solve_convex(convex_instance(5, capacities=(4, 4, 1)))


@pytest.mark.parametrize("seed", range(8))
def test_matches_oracle(seed):
    inst = convex_instance(4 + seed % 4, seed=100 + seed)
    rep = solve_convex(inst)
    assert validate(rep.layout.topology, inst).valid
    assert rel_gap(rep.cost, solve_oracle(inst).cost) <= 1e-6

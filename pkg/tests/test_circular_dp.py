import math

import pytest

from flamecast.circular_dp import angular_order, block_cost, dp_table, solve_circular
from flamecast.errors import Infeasible, WrongCase
from flamecast.generators import circular_instance
from flamecast.model import Instance, validate
from flamecast.oracle import solve_oracle
from _support import rel_gap


def test_four_sources_singletons_cost_four():
    rep = solve_circular(circular_instance(4, capacities=(4, 1, 1)))
    assert abs(rep.cost - 4.0) < 1e-12


def test_block_cost_examples():
    inst = circular_instance(4, capacities=(4, 4, 1))
    assert abs(block_cost(1, inst) - 1.0) < 1e-12
    # Fermat point of (1,0), (0,1), (0,0): sqrt((a^2+b^2+c^2)/2 + 2 sqrt(3) area)
    assert abs(block_cost(2, inst) - math.sqrt(2 + math.sqrt(3))) < 1e-9


def test_rotation_invariance_of_block_cost():
    inst = circular_instance(7, alpha=0.4, capacities=(7, 3, 1))
    base = block_cost(3, inst)
    for start in range(7):
        assert abs(block_cost(3, inst, start=start) - base) < 1e-9


def test_dp_is_monotone_in_n():
    inst = circular_instance(8, alpha=0.5, capacities=(8, 3, 1))
    table = dp_table(inst)
    assert all(a <= b for a, b in zip(table.dp, table.dp[1:]))
    assert len(table.w) == 4


def test_angular_order():
    inst = circular_instance(5)
    assert angular_order(inst) == [0, 1, 2, 3, 4]


def test_layout_is_valid_and_consecutive():
    inst = circular_instance(8, alpha=0.3, capacities=(8, 3, 1))
    rep = solve_circular(inst)
    assert validate(rep.layout.topology, inst).valid
    topo = rep.layout.topology
    for v in topo.steiner_ids:
        kids = sorted(topo.children[v])
        assert kids == list(range(kids[0], kids[0] + len(kids)))


def test_errors():
    with pytest.raises(WrongCase):
        solve_circular(Instance([(1, 0), (0, 1), (-1, 0)], [(0, 0)], (3, 3, 1), 0.0))
    with pytest.raises(WrongCase):
        solve_circular(circular_instance(4, capacities=(4, 1)))
    with pytest.raises(Infeasible):
        solve_circular(circular_instance(4, capacities=(3, 1, 1)))


@pytest.mark.parametrize("n", [4, 6])
@pytest.mark.parametrize("alpha", [0.0, 0.6])
def test_matches_oracle(n, alpha):
    inst = circular_instance(n, alpha=alpha, capacities=(n, 2, 1))
    assert rel_gap(solve_circular(inst).cost, solve_oracle(inst).cost) <= 1e-6

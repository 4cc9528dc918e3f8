"""Structural properties of optimal layouts, checked on oracle optima."""

import pytest

from _support import (
    _pattern,
    convex_angle_configurations,
    crossing_source_edges,
    planted_duplicates,
    planted_triangle,
    random_case,
)
from flamecast.convex_dp import cyclic_order
from flamecast.generators import convex_instance
from flamecast.geometry import angle_at, convex_hull, point_in_hull
from flamecast.oracle import OracleConfig, solve_oracle

N_CASES = 30


@pytest.mark.parametrize("seed", range(N_CASES))
def test_no_crossing_source_edges(seed):
    inst = random_case(seed)
    layout = solve_oracle(inst).layout
    assert crossing_source_edges(layout) == []


@pytest.mark.parametrize("seed", range(N_CASES))
def test_colocated_sources_share_parent(seed):
    inst = planted_duplicates(seed)
    layout = solve_oracle(inst, OracleConfig(group_colocated=False)).layout
    parents = layout.topology.parents
    for i in range(inst.n_sources):
        for j in range(i + 1, inst.n_sources):
            if inst.sources[i] == inst.sources[j]:
                assert parents[i] == parents[j]


@pytest.mark.parametrize("seed", range(N_CASES))
def test_steiner_vertices_inside_neighbour_hulls(seed):
    inst = random_case(seed)
    layout = solve_oracle(inst).layout
    topo, pos = layout.topology, layout.positions
    for v in topo.steiner_ids:
        nbrs = [pos[u] for u in topo.children[v]] + [pos[topo.parents[v]]]
        assert point_in_hull(pos[v], convex_hull(nbrs), 1e-7)


def test_convex_angle_configuration():
    exhibited = 0
    for seed in range(N_CASES):
        inst = planted_triangle(seed)
        layout = solve_oracle(inst).layout
        pos = layout.positions
        configs = convex_angle_configurations(layout, inst)
        exhibited += bool(configs)
        for u, v, w in configs:
            assert angle_at(pos[u], pos[v], pos[w]) >= 90.0 - 1e-6
    assert exhibited >= N_CASES // 3


@pytest.mark.parametrize("seed", range(N_CASES))
def test_convex_subtrees_do_not_interleave(seed):
    inst = convex_instance(4 + seed % 5, seed=500 + seed)
    layout = solve_oracle(inst).layout
    seq = [layout.topology.parents[s] for s in cyclic_order(inst)]
    hubs = set(seq)
    for u in hubs:
        for v in hubs - {u}:
            assert not _pattern(seq, len(seq), (u, v, u, v))

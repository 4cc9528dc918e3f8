"""Circular instances built from 3-Partition inputs.

Each number z_i becomes a group of z_i + c_hat co-located sources on the
unit circle, groups evenly spaced, with k sinks at the center. Sink capacity
t + 3 c_hat admits exactly three groups whose numbers sum to at most t.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Sequence, Union

from ..errors import NotThreePartition
from ..model import Instance, Layout, Topology, validate


@dataclass(frozen=True)
class PartitionInstance:
    instance: Instance
    z: tuple[int, ...]
    t: int
    k: int
    c_hat: int
    group_index: tuple[int, ...]  # source id -> group id
    canonical_cost: float

    @property
    def m(self) -> int:
        return len(self.z)

    def group_sources(self, i: int) -> list[int]:
        return [s for s, g in enumerate(self.group_index) if g == i]

    def group_position(self, i: int):
        return self.instance.sources[self.group_sources(i)[0]]


def _safe_ceil(x: float) -> int:
    r = round(x)
    return int(r) if abs(x - r) <= 1e-9 * max(1.0, abs(x)) else math.ceil(x)


def auto_c_hat(m: int, t: int, alpha: float) -> int:
    """max(ceil((2m)^(1/(1-alpha))), ceil(t/2))."""
    if not 0.0 <= alpha < 1.0:
        raise ValueError("automatic c_hat needs alpha < 1")
    return max(_safe_ceil((2 * m) ** (1.0 / (1.0 - alpha))), -(-t // 2))


def check_three_partition(z: Sequence[int], t: int, k: int) -> None:
    if k < 1 or len(z) != 3 * k:
        raise NotThreePartition(f"need 3k = {3 * k} numbers, got {len(z)}")
    if sum(z) != k * t:
        raise NotThreePartition(f"numbers sum to {sum(z)}, expected k*t = {k * t}")
    for x in z:
        if not 4 * x > t or not 2 * x < t:
            raise NotThreePartition(f"{x} is not strictly between t/4 and t/2")


def build_partition_instance(
    z: Sequence[int], t: int, k: int, alpha: float, c_hat: Union[int, str] = "auto"
) -> PartitionInstance:
    z = tuple(int(x) for x in z)
    check_three_partition(z, t, k)
    m = len(z)
    ch = auto_c_hat(m, t, alpha) if c_hat == "auto" else int(c_hat)
    if ch < 0:
        raise ValueError("c_hat must be non-negative")
    sources, group_index = [], []
    for i, zi in enumerate(z):
        angle = 2.0 * math.pi * i / m
        p = (math.cos(angle), math.sin(angle))
        sources.extend([p] * (zi + ch))
        group_index.extend([i] * (zi + ch))
    # odd t: the intermediate capacity t/2 + c_hat is rounded down
    capacities = (t + 3 * ch, (t + 2 * ch) // 2, 1)
    inst = Instance(sources, [(0.0, 0.0)] * k, capacities, alpha)
    cost = sum((zi + ch) ** alpha for zi in z)
    return PartitionInstance(inst, z, t, k, ch, tuple(group_index), cost)


def canonical_partition_layout(pi: PartitionInstance, sink_of_group: Sequence[int] | None = None) -> Layout:
    """One Steiner vertex per group, at the group, wired to the chosen sink."""
    if sink_of_group is None:
        sink_of_group = [i // 3 for i in range(pi.m)]
    inst = pi.instance
    n = inst.n_sources
    parents: list = [None] * (n + pi.k)
    positions: list = list(inst.sources) + list(inst.sinks)
    for i in range(pi.m):
        v = len(parents)
        parents.append(n + sink_of_group[i])
        positions.append(pi.group_position(i))
        for s in pi.group_sources(i):
            parents[s] = v
    return Layout(Topology(n, pi.k, parents), tuple(positions))


def recover_triples(pi: PartitionInstance) -> list[tuple[int, ...]] | None:
    """Search all group-to-sink assignments of the canonical layout for a valid one.

    Returns the groups at each sink (as tuples of group indices) for the first
    assignment that respects every sink capacity, or None.
    """
    cap = pi.instance.capacities[0]
    sizes = [zi + pi.c_hat for zi in pi.z]
    # group 0 goes to sink 0; sinks are interchangeable
    for rest in itertools.product(range(pi.k), repeat=pi.m - 1):
        assign = (0, *rest)
        loads = [0] * pi.k
        for i, t in enumerate(assign):
            loads[t] += sizes[i]
        if max(loads) > cap:
            continue
        layout = canonical_partition_layout(pi, assign)
        if validate(layout.topology, pi.instance).valid:
            return [tuple(i for i in range(pi.m) if assign[i] == t) for t in range(pi.k)]
    return None

"""Fixed benchmark suites comparing each fast solver with the oracle."""

from __future__ import annotations

import csv
import time
from dataclasses import dataclass
from typing import Callable, Iterator, TextIO

from .circular_dp import solve_circular
from .convex_dp import solve_convex
from .generators import circular_instance, convex_instance, random_instance
from .matching import solve_matching
from .model import Instance, SolveReport
from .oracle import solve_oracle

SUITES = ("circular-small", "convex-small", "matching-small")


@dataclass(frozen=True)
class BenchRow:
    instance_id: str
    algorithm: str
    cost: float
    oracle_cost: float
    ratio: float
    time: float


def _circular_cases() -> Iterator[tuple[str, Instance]]:
    for n in range(4, 9):
        for c1 in (1, 2, n):
            for alpha in (0.0, 0.5):
                yield f"circ-n{n}-c{c1}-a{alpha:g}", circular_instance(n, alpha=alpha, capacities=(n, c1, 1))


def _convex_cases() -> Iterator[tuple[str, Instance]]:
    for seed in range(20):
        n = 4 + seed % 5
        yield f"cvx-s{seed:02d}-n{n}", convex_instance(n, seed=seed)


def _matching_cases() -> Iterator[tuple[str, Instance]]:
    for seed in range(20):
        n = 2 + seed % 6
        m = 1 + seed % 3
        c0 = -(-n // m) + seed % 2
        yield f"match-s{seed:02d}-n{n}-t{m}", random_instance(n, m, seed=seed, capacities=(c0, 1))


CASES: dict[str, tuple[Callable[[], Iterator[tuple[str, Instance]]], Callable[[Instance], SolveReport]]] = {
    "circular-small": (_circular_cases, solve_circular),
    "convex-small": (_convex_cases, solve_convex),
    "matching-small": (_matching_cases, solve_matching),
}


def run_suite(name: str) -> list[BenchRow]:
    if name not in CASES:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    cases, solver = CASES[name]
    rows = []
    for iid, inst in cases():
        start = time.perf_counter()
        report = solver(inst)
        elapsed = time.perf_counter() - start
        oracle = solve_oracle(inst).cost
        ratio = report.cost / oracle if oracle > 0 else (1.0 if report.cost == 0 else float("inf"))
        rows.append(BenchRow(iid, report.algorithm.value, report.cost, oracle, ratio, elapsed))
    return sorted(rows, key=lambda r: r.instance_id)


def write_csv(rows: list[BenchRow], handle: TextIO) -> None:
    writer = csv.writer(handle, lineterminator="\n")
    writer.writerow(["instance_id", "algorithm", "cost", "oracle_cost", "ratio", "time"])
    for r in rows:
        writer.writerow([r.instance_id, r.algorithm, repr(r.cost), repr(r.oracle_cost), repr(r.ratio), f"{r.time:.6f}"])

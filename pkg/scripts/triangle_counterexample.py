"""Solve the 12-source triangle instance and show its three-run Steiner vertex."""

import argparse
import math

from flamecast.convex_dp import cyclic_order, runs_in_order, solve_convex
from flamecast.generators import TRIANGLE_LABELS, triangle_instance
from flamecast.oracle import solve_oracle
from flamecast.render import render_svg


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--svg", help="write the optimal layout as SVG")
    args = parser.parse_args()

    inst = triangle_instance()
    dp = solve_convex(inst)
    oracle = solve_oracle(inst)
    print(f"convex DP cost {dp.cost:.12f} in {dp.wall_time:.3f} s")
    print(f"oracle cost    {oracle.cost:.12f} in {oracle.wall_time:.3f} s")
    print(f"4 + 4 sqrt(2)  {4 + 4 * math.sqrt(2):.12f}")

    name = {s: k for k, ids in TRIANGLE_LABELS.items() for s in ids}
    order = cyclic_order(inst)
    print("cyclic order:", " ".join(name[s] for s in order))
    topo = dp.layout.topology
    for v in topo.steiner_ids:
        kids = topo.children[v]
        labels = sorted({name[s] for s in kids})
        print(f"Steiner vertex {v} at {tuple(round(c, 6) for c in dp.layout.positions[v])}: "
              f"{','.join(labels)} ({len(kids)} sources, {runs_in_order(kids, order)} runs)")
    if args.svg:
        with open(args.svg, "w", encoding="utf-8") as fh:
            fh.write(render_svg(inst, dp.layout))


if __name__ == "__main__":
    main()

"""Command-line interface: ``flamecast <subcommand> ...``.

Exit codes: 0 success, 2 parse error or bad parameters, 3 infeasible,
4 unsupported case, 5 invalid layout, 6 construction invariant violated.
"""

from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path
from typing import Callable, Optional, Sequence

from . import bench, fileio
from .circular_dp import solve_circular
from .convex_dp import solve_convex
from .errors import (
    DrawingInvalid,
    FlamecastError,
    Infeasible,
    MissingPosition,
    NotThreePartition,
    ParseError,
    StructureError,
    TooLarge,
    UnsupportedCase,
    WrongCase,
)
from .generators import circular_instance, convex_instance, random_instance
from .geometry import convex_hull, point_in_hull, segments_intersect
from .matching import solve_matching
from .model import (
    GEOMETRY_TOLERANCE,
    Instance,
    InstanceClass,
    Layout,
    SolveReport,
    classify,
    evaluate_cost,
    validate,
)
from .oracle import OracleConfig, solve_oracle
from .reductions.partition import build_partition_instance
from .reductions.sat import SatDrawing, build_sat_instance
from .render import render_svg

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_INFEASIBLE = 3
EXIT_UNSUPPORTED = 4
EXIT_INVALID = 5
EXIT_CONSTRUCTION = 6

ORACLE_AUTO_LIMIT = 8


def _out(text: str) -> None:
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _err(text: str) -> None:
    sys.stderr.write(f"flamecast: {text}\n")


# ---------------------------------------------------------------- solve


def _solve_oracle(instance: Instance, epsilon: float) -> SolveReport:
    return solve_oracle(instance, OracleConfig(weber_epsilon=min(epsilon, 1e-9)))


SOLVERS: dict[str, Callable[[Instance, float], SolveReport]] = {
    "matching": lambda inst, eps: solve_matching(inst),
    "circular-dp": solve_circular,
    "convex-dp": solve_convex,
    "oracle": _solve_oracle,
}


def _solver_conditions(instance: Instance) -> dict[str, list[str]]:
    """Unmet requirements of each solver for ``instance``."""
    n, lam = instance.n_sources, instance.n_layers
    one_sink = instance.n_sinks == 1
    cls = classify(instance)
    convex_like = cls in (
        InstanceClass.CONVEX,
        InstanceClass.CIRCULAR,
        InstanceClass.GROUP_EQUALLY_SPACED,
        InstanceClass.SOURCE_EQUALLY_SPACED,
    )
    uncapacitated = all(c >= n for c in instance.capacities[: lam + 1])
    checks = {
        "matching": [("alpha = 1 or no intermediate layer", instance.alpha == 1.0 or lam == 0)],
        "circular-dp": [
            ("sources evenly spaced on a circle around the sink", cls is InstanceClass.SOURCE_EQUALLY_SPACED),
            ("exactly one sink", one_sink),
            ("exactly one intermediate layer", lam == 1),
        ],
        "convex-dp": [
            ("sources in convex position", convex_like),
            ("alpha = 0", instance.alpha == 0.0),
            ("exactly one sink", one_sink),
            ("exactly one intermediate layer", lam == 1),
            ("no binding capacity", uncapacitated),
        ],
        "oracle": [
            (f"at most {ORACLE_AUTO_LIMIT} sources", n <= ORACLE_AUTO_LIMIT),
            ("at most two intermediate layers", lam <= 2),
        ],
    }
    return {name: [label for label, ok in conds if not ok] for name, conds in checks.items()}


def choose_algorithm(instance: Instance) -> str:
    """Automatic solver choice; raises UnsupportedCase naming the nearest solver."""
    unmet = _solver_conditions(instance)
    for name in ("matching", "circular-dp", "convex-dp", "oracle"):
        if not unmet[name]:
            return name
    nearest = min(unmet, key=lambda k: len(unmet[k]))
    raise UnsupportedCase(
        f"no solver applies; nearest is {nearest}, which needs: {', '.join(unmet[nearest])}"
    )


def _default_layout_path(input_path: str) -> Path:
    p = Path(input_path)
    return p.with_name(p.stem + ".layout.json")


def cmd_solve(args) -> int:
    instance = fileio.load_instance(args.input)
    name = choose_algorithm(instance) if args.algorithm == "auto" else args.algorithm
    try:
        report = SOLVERS[name](instance, args.epsilon)
    except (WrongCase, TooLarge) as exc:
        raise UnsupportedCase(f"{name}: {exc}") from exc
    out = Path(args.output) if args.output else _default_layout_path(args.input)
    fileio.write_json(out, fileio.layout_to_dict(report.layout, instance, report.cost))
    _out(
        f"algorithm: {name}\n"
        f"cost: {report.cost:.12g}\n"
        f"epsilon: {report.epsilon:g}\n"
        f"wall_time: {report.wall_time:.6f} s\n"
        f"converged: {str(report.converged).lower()}\n"
        f"layout: {out}"
    )
    return EXIT_OK


# ---------------------------------------------------------------- verify


def structural_warnings(layout: Layout, tol: float = GEOMETRY_TOLERANCE) -> list[str]:
    """Hull containment of Steiner vertices and crossings between source edges."""
    topo, pos = layout.topology, layout.positions
    warnings = []
    for v in topo.steiner_ids:
        nbrs = [pos[u] for u in topo.children[v]]
        if topo.parents[v] is not None:
            nbrs.append(pos[topo.parents[v]])
        if pos[v] is not None and nbrs and not point_in_hull(pos[v], convex_hull(nbrs), tol):
            warnings.append(f"Steiner vertex {v} lies outside the hull of its neighbours")
    src_edges = [(s, topo.parents[s]) for s in range(topo.n_sources) if topo.parents[s] is not None]
    for i, (a, pa) in enumerate(src_edges):
        for b, pb in src_edges[i + 1 :]:
            if pa == pb or len({pos[a], pos[pa], pos[b], pos[pb]}) < 4:
                continue
            if segments_intersect(pos[a], pos[pa], pos[b], pos[pb], tol):
                warnings.append(f"source edges {a}-{pa} and {b}-{pb} cross")
    return warnings


def cmd_verify(args) -> int:
    instance = fileio.load_instance(args.instance)
    try:
        layout, recorded, digest = fileio.layout_from_dict(fileio.read_json(args.layout), instance)
    except StructureError as exc:
        _out(f"violation: {exc}")
        _out("INVALID")
        return EXIT_INVALID
    problems: list[str] = []
    if digest and digest != fileio.instance_hash(instance):
        problems.append("instance hash does not match the instance file")
    for v, expected in enumerate(list(instance.sources) + list(instance.sinks)):
        if math.dist(layout.positions[v], expected) > args.tolerance:
            problems.append(f"{layout.topology.kind(v).value} {v} moved from its fixed position")
    try:
        report = validate(layout.topology, instance)
        problems.extend(str(v) for v in report.violations)
    except StructureError as exc:
        problems.append(str(exc))
    cost = None
    try:
        cost = evaluate_cost(layout, instance)
    except MissingPosition as exc:
        problems.append(str(exc))
    if cost is not None:
        _out(f"recomputed cost: {cost:.12g}")
        _out(f"recorded cost: {recorded:.12g}")
        if not abs(cost - recorded) <= args.tolerance * max(1.0, abs(cost)):
            problems.append(f"recorded cost {recorded:.12g} differs from recomputed {cost:.12g}")
        for w in structural_warnings(layout):
            _out(f"warning: {w}")
    if problems:
        for p in problems:
            _out(f"violation: {p}")
        _out("INVALID")
        return EXIT_INVALID
    _out("VALID")
    return EXIT_OK


# ---------------------------------------------------------------- generate


def _capacities(text: Optional[str]) -> Optional[tuple[int, ...]]:
    if text is None:
        return None
    try:
        return tuple(int(c) for c in text.split(","))
    except ValueError as exc:
        raise ParseError(f"capacities must be comma-separated integers: {text!r}") from exc


def cmd_generate(args) -> int:
    caps = _capacities(args.capacities)
    try:
        if args.kind == "circular":
            inst = circular_instance(args.n, radius=args.radius, alpha=args.alpha, capacities=caps)
        elif args.kind == "convex":
            inst = convex_instance(args.n, seed=args.seed, alpha=args.alpha, capacities=caps)
        else:
            inst = random_instance(args.n, args.sinks, seed=args.seed, alpha=args.alpha, capacities=caps)
    except FlamecastError:
        raise
    except ValueError as exc:
        raise ParseError(str(exc)) from exc
    text = fileio.dumps(fileio.instance_to_dict(inst)) + "\n"
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return EXIT_OK


# ---------------------------------------------------------------- reduce


def _partition_input(data) -> dict:
    try:
        c_hat = data.get("c_hat", "auto")
        if c_hat != "auto":
            c_hat = int(c_hat)
        return {
            "z": [int(x) for x in data["z"]],
            "t": int(data["t"]),
            "k": int(data["k"]),
            "alpha": float(data["alpha"]),
            "c_hat": c_hat,
        }
    except (AttributeError, KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"invalid partition input: {exc}") from exc


def cmd_reduce(args) -> int:
    data = fileio.read_json(args.input)
    if args.kind == "3partition":
        params = _partition_input(data)
        try:
            pi = build_partition_instance(**params)
        except ValueError as exc:
            if isinstance(exc, FlamecastError):
                raise
            raise NotThreePartition(str(exc)) from exc
        inst = pi.instance
        meta = {
            "kind": "3partition",
            "canonical_cost": pi.canonical_cost,
            "c_hat": pi.c_hat,
            "capacities": list(inst.capacities),
            "alpha": inst.alpha,
            "group_index": list(pi.group_index),
        }
    else:
        drawing = SatDrawing.from_dict(data)
        gi = build_sat_instance(drawing, args.g, args.alpha)
        inst = gi.instance
        meta = {
            "kind": "sat3",
            "canonical_cost": gi.canonical_cost,
            "g": gi.g,
            "alpha": inst.alpha,
            "n_g": gi.n_g,
            "n_2g": gi.n_2g,
            "capacities": list(inst.capacities),
            "group_index": list(gi.group_index),
            "gadget_index": {
                str(v): {"kind": gad.kind, "position": list(gad.position), "orientation": gad.orientation}
                for v, gad in gi.gadget_index.items()
            },
        }
    out = Path(args.output)
    fileio.save_instance(out, inst)
    meta_path = Path(args.metadata) if args.metadata else out.with_name(out.stem + ".meta.json")
    fileio.write_json(meta_path, meta)
    _out(f"instance: {out} ({inst.n_sources} sources, {inst.n_sinks} sinks)")
    _out(f"metadata: {meta_path}")
    _out(f"canonical_cost: {meta['canonical_cost']:.12g}")
    return EXIT_OK


# ---------------------------------------------------------------- render, bench


def cmd_render(args) -> int:
    instance = fileio.load_instance(args.instance)
    layout = None
    if args.layout:
        layout, _, _ = fileio.layout_from_dict(fileio.read_json(args.layout), instance)
    svg = render_svg(instance, layout)
    if args.output:
        Path(args.output).write_text(svg, encoding="utf-8")
    else:
        sys.stdout.write(svg)
    return EXIT_OK


def cmd_bench(args) -> int:
    rows = bench.run_suite(args.suite)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            bench.write_csv(rows, fh)
    else:
        bench.write_csv(rows, sys.stdout)
    return EXIT_OK


# ---------------------------------------------------------------- parser


def _positive_float(text: str) -> float:
    try:
        x = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if not x > 0 or not math.isfinite(x):
        raise argparse.ArgumentTypeError(f"must be positive: {text!r}")
    return x


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="flamecast", description="Layered capacitated Steiner forests in the plane.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve an instance file")
    p.add_argument("input")
    p.add_argument("--algorithm", choices=["auto", *SOLVERS], default="auto")
    p.add_argument("--epsilon", type=_positive_float, default=1e-9)
    p.add_argument("--output", help="layout file (default: <input>.layout.json)")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="check a layout against an instance")
    p.add_argument("instance")
    p.add_argument("layout")
    p.add_argument("--tolerance", type=_positive_float, default=1e-6)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("generate", help="write a generated instance")
    p.add_argument("kind", choices=["circular", "convex", "random"])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--sinks", type=int, default=1)
    p.add_argument("--radius", type=float, default=1.0)
    p.add_argument("--alpha", type=float, default=0.0)
    p.add_argument("--capacities", help="comma-separated, e.g. 6,2,1")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("reduce", help="build a hardness-reduction instance")
    p.add_argument("kind", choices=["sat3", "3partition"])
    p.add_argument("input")
    p.add_argument("--g", type=int, default=7)
    p.add_argument("--alpha", type=float, default=0.5)
    p.add_argument("--output", required=True)
    p.add_argument("--metadata", help="metadata file (default: <output>.meta.json)")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("render", help="draw an instance and optional layout as SVG")
    p.add_argument("instance")
    p.add_argument("layout", nargs="?")
    p.add_argument("--output")
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("bench", help="run a fixed benchmark suite")
    p.add_argument("suite", choices=bench.SUITES)
    p.add_argument("--out")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except ParseError as exc:
        _err(str(exc))
        return EXIT_PARSE
    except Infeasible as exc:
        _err(f"infeasible: {exc}")
        return EXIT_INFEASIBLE
    except (UnsupportedCase, WrongCase, TooLarge) as exc:
        _err(f"unsupported: {exc}")
        return EXIT_UNSUPPORTED
    except (DrawingInvalid, NotThreePartition) as exc:
        _err(f"construction: {exc}")
        return EXIT_CONSTRUCTION
    except FlamecastError as exc:
        _err(str(exc))
        return EXIT_PARSE
    except (OSError, ValueError) as exc:
        _err(str(exc))
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())

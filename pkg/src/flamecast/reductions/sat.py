"""Gadget instances built from rectilinear drawings of monotone 3-SAT formulas.

Every building block is a sink of capacity 2g at an even grid point with
source groups (g or 2g co-located sources) at distance 1 on some of its four
sides. Neighbouring blocks are two apart and share the group between them,
and each group has to pick one of its two blocks. In a canonical layout
every group gets its own Steiner vertex at the group, wired to the chosen
block, so all canonical layouts cost the same and only capacities decide
whether one is valid.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Mapping, Optional, Sequence

from ..errors import DrawingInvalid, ParseError
from ..geometry import dist, point_segment_distance, segments_intersect
from ..model import Instance, Layout, Topology, VertexKind

Coord = tuple[int, int]

STEPS = {"E": (1, 0), "W": (-1, 0), "N": (0, 1), "S": (0, -1)}
POLARITIES = ("pos", "neg")


@dataclass(frozen=True)
class Clause:
    polarity: str
    position: Coord
    legs: tuple[tuple[Coord, ...], ...]


@dataclass(frozen=True)
class SatDrawing:
    variables: tuple[tuple[int, int], ...]
    clauses: tuple[Clause, ...]

    def to_dict(self) -> dict:
        return {
            "variables": [list(v) for v in self.variables],
            "clauses": [
                {
                    "polarity": c.polarity,
                    "pos": list(c.position),
                    "legs": [[list(p) for p in leg] for leg in c.legs],
                }
                for c in self.clauses
            ],
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> "SatDrawing":
        try:
            variables = tuple((_int(a), _int(b)) for a, b in data["variables"])
            clauses = tuple(
                Clause(
                    str(c["polarity"]),
                    (_int(c["pos"][0]), _int(c["pos"][1])),
                    tuple(tuple((_int(p[0]), _int(p[1])) for p in leg) for leg in c["legs"]),
                )
                for c in data["clauses"]
            )
        except DrawingInvalid:
            raise
        except (KeyError, TypeError, ValueError, IndexError) as exc:
            raise ParseError(f"malformed drawing: {exc}") from exc
        return cls(variables, clauses)

    @classmethod
    def from_json(cls, text: str) -> "SatDrawing":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"malformed drawing: {exc}") from exc
        return cls.from_dict(data)


def _int(x) -> int:
    if isinstance(x, bool) or not isinstance(x, (int, float)):
        raise ParseError(f"coordinate {x!r} is not a number")
    if float(x) != int(x):
        raise DrawingInvalid(f"coordinate {x!r} is not an integer")
    return int(x)


@dataclass(frozen=True)
class Gadget:
    kind: str  # clause | literal | corner | line | end
    position: Coord
    orientation: str
    sides: tuple[str, ...]  # directions of its source groups


@dataclass(frozen=True)
class SourceGroup:
    id: int
    position: tuple[float, float]
    size: int
    # (first, second) gadget indices: (left, right) on a variable axis,
    # (literal side, clause side) on a leg
    gadgets: tuple[int, int]
    role: str  # axis | leg
    variable: int
    polarity: Optional[str] = None  # leg groups only


@dataclass(frozen=True)
class GadgetInstance:
    instance: Instance
    g: int
    drawing: SatDrawing
    gadgets: tuple[Gadget, ...]
    groups: tuple[SourceGroup, ...]
    group_index: tuple[int, ...]  # source id -> group id
    members: tuple[tuple[int, ...], ...] = field(repr=False, default=())

    @property
    def gadget_index(self) -> dict[int, Gadget]:
        """Sink vertex id -> gadget."""
        n = self.instance.n_sources
        return {n + i: gad for i, gad in enumerate(self.gadgets)}

    @property
    def n_g(self) -> int:
        return sum(1 for grp in self.groups if grp.size == self.g)

    @property
    def n_2g(self) -> int:
        return sum(1 for grp in self.groups if grp.size == 2 * self.g)

    @property
    def canonical_cost(self) -> float:
        a = self.instance.alpha
        return self.g**a * self.n_g + (2 * self.g) ** a * self.n_2g


# ---------------------------------------------------------------- validation


def _segments_of(points: Sequence[Coord]) -> list[tuple[Coord, Coord]]:
    return list(zip(points, points[1:]))


def _segment_distance(s, t) -> float:
    (a, b), (c, d) = s, t
    if segments_intersect(a, b, c, d):
        return 0.0
    return min(
        point_segment_distance(a, c, d),
        point_segment_distance(b, c, d),
        point_segment_distance(c, a, b),
        point_segment_distance(d, a, b),
    )


def _direction(p: Coord, q: Coord) -> str:
    dx, dy = q[0] - p[0], q[1] - p[1]
    if dx and dy or not (dx or dy):
        raise DrawingInvalid(f"leg step {p} -> {q} is not axis-parallel")
    if dx:
        return "E" if dx > 0 else "W"
    return "N" if dy > 0 else "S"


def _variable_at(drawing: SatDrawing, x: int) -> int:
    for i, (lo, hi) in enumerate(drawing.variables):
        if lo <= x <= hi:
            return i
    raise DrawingInvalid(f"leg ends at x = {x}, which is on no variable segment")


def attachments(drawing: SatDrawing) -> list[list[tuple[int, int]]]:
    """Per clause and leg: (variable index, attachment x)."""
    out = []
    for c in drawing.clauses:
        out.append([(_variable_at(drawing, leg[-1][0]), leg[-1][0]) for leg in c.legs])
    return out


def validate_drawing(drawing: SatDrawing) -> None:
    """Raise DrawingInvalid naming the first violated drawing invariant."""
    coords = [v for seg in drawing.variables for v in seg]
    for c in drawing.clauses:
        coords.extend(c.position)
        coords.extend(v for leg in c.legs for p in leg for v in p)
    odd = [v for v in coords if v % 2]
    if odd:
        raise DrawingInvalid(f"coordinates must be even integers, found {odd[0]}")

    for lo, hi in drawing.variables:
        if lo > hi:
            raise DrawingInvalid(f"variable segment [{lo}, {hi}] is reversed")

    # (segment, owner tag) for the distance check
    segments: list[tuple[tuple[Coord, Coord], tuple]] = []
    for i, (lo, hi) in enumerate(drawing.variables):
        segments.append((((lo, 0), (hi, 0)), ("var", i)))

    used_points: dict[Coord, int] = {}
    sides: dict[int, dict[str, list[int]]] = {}
    for ci, c in enumerate(drawing.clauses):
        if c.polarity not in POLARITIES:
            raise DrawingInvalid(f"clause {ci}: polarity must be 'pos' or 'neg'")
        sign = 1 if c.polarity == "pos" else -1
        if c.position[1] * sign <= 0:
            raise DrawingInvalid(f"clause {ci}: {c.polarity} clauses lie on the {'upper' if sign > 0 else 'lower'} side")
        if len(c.legs) != 3:
            raise DrawingInvalid(f"clause {ci}: needs exactly three legs")
        first_steps = set()
        variables = set()
        for li, leg in enumerate(c.legs):
            if len(leg) < 2 or tuple(leg[0]) != tuple(c.position):
                raise DrawingInvalid(f"clause {ci} leg {li}: must start at the clause position")
            dirs = [_direction(p, q) for p, q in _segments_of(leg)]
            if any(a == b for a, b in zip(dirs, dirs[1:])):
                raise DrawingInvalid(f"clause {ci} leg {li}: consecutive collinear segments")
            if dirs[-1] not in ("N", "S"):
                raise DrawingInvalid(f"clause {ci} leg {li}: must end with a vertical segment")
            if leg[-1][1] != 0:
                raise DrawingInvalid(f"clause {ci} leg {li}: must end on the x-axis")
            if any(p[1] * sign <= 0 for p in leg[:-1]):
                raise DrawingInvalid(f"clause {ci} leg {li}: leaves the {c.polarity} side of the axis")
            first_steps.add(dirs[0])
            end = leg[-1]
            if end in used_points:
                raise DrawingInvalid(f"clause {ci} leg {li}: attachment point {end} is used twice")
            used_points[end] = ci
            var = _variable_at(drawing, end[0])
            variables.add(var)
            sides.setdefault(var, {"pos": [], "neg": []})[c.polarity].append(end[0])
            for k, seg in enumerate(_segments_of(leg)):
                segments.append((seg, ("leg", ci, li, k, len(leg) - 2, var)))
        if len(first_steps) != 3:
            raise DrawingInvalid(f"clause {ci}: legs must leave in three different directions")
        if len(variables) != 3:
            raise DrawingInvalid(f"clause {ci}: legs must reach three different variables")

    for var, by in sides.items():
        if by["neg"] and by["pos"] and max(by["neg"]) >= min(by["pos"]):
            raise DrawingInvalid(f"variable {var}: negative attachments must lie left of positive ones")

    def adjacent(t1, t2) -> bool:
        if t1[0] == "var" and t2[0] == "var":
            return False
        if t1[0] == "var" or t2[0] == "var":
            v, leg = (t1, t2) if t1[0] == "var" else (t2, t1)
            return leg[3] == leg[4] and leg[5] == v[1]
        if t1[1] != t2[1]:
            return False
        if t1[2] == t2[2]:
            return abs(t1[3] - t2[3]) <= 1
        return t1[3] == 0 and t2[3] == 0

    for i in range(len(segments)):
        for j in range(i + 1, len(segments)):
            (s, t1), (u, t2) = segments[i], segments[j]
            if adjacent(t1, t2):
                continue
            if _segment_distance(s, u) < 6:
                raise DrawingInvalid(f"non-adjacent segments {s} and {u} are closer than 6")


# -------------------------------------------------------------- construction


_OPPOSITE = {"E": "W", "W": "E", "N": "S", "S": "N"}


def _literal_sides(polarity: str) -> dict[str, str]:
    """Side -> 'g' or '2g' for a literal gadget (positive ones are rotated 180 degrees)."""
    if polarity == "neg":
        return {"E": "2g", "W": "g", "S": "g"}
    return {"W": "2g", "E": "g", "N": "g"}


def build_sat_instance(drawing: SatDrawing, g: int, alpha: float) -> GadgetInstance:
    if g < 7:
        raise ValueError("group size g must be at least 7")
    if not 0.0 <= alpha < 1.0:
        raise ValueError("alpha must lie in [0, 1)")
    validate_drawing(drawing)
    att = attachments(drawing)

    gadgets: list[Gadget] = []
    at: dict[Coord, int] = {}

    def place(kind, pos, orientation, sides) -> int:
        if pos in at:
            raise DrawingInvalid(f"two building blocks overlap at {pos}")
        at[pos] = len(gadgets)
        gadgets.append(Gadget(kind, pos, orientation, tuple(sides)))
        return at[pos]

    # (position, size label, first gadget, second gadget, role, variable, polarity)
    pending: list[tuple] = []

    literal_at: dict[Coord, str] = {}
    for ci, c in enumerate(drawing.clauses):
        for leg in c.legs:
            literal_at[leg[-1]] = c.polarity

    for vi, (lo, hi) in enumerate(drawing.variables):
        row = [place("end", (lo - 2, 0), "left", ("E",))]
        for x in range(lo, hi + 1, 2):
            if (x, 0) in literal_at:
                pol = literal_at[(x, 0)]
                row.append(place("literal", (x, 0), pol, tuple(_literal_sides(pol))))
            else:
                row.append(place("line", (x, 0), "horizontal", ("W", "E")))
        row.append(place("end", (hi + 2, 0), "right", ("W",)))
        for left, right in zip(row, row[1:]):
            gl, gr = gadgets[left], gadgets[right]
            small = (gl.kind == "literal" and _literal_sides(gl.orientation).get("E") == "g") or (
                gr.kind == "literal" and _literal_sides(gr.orientation).get("W") == "g"
            )
            pos = (gl.position[0] + 1, 0)
            pending.append((pos, "g" if small else "2g", left, right, "axis", vi, None))

    for ci, c in enumerate(drawing.clauses):
        clause_id = place("clause", c.position, c.polarity, tuple(_direction(leg[0], leg[1]) for leg in c.legs))
        for li, leg in enumerate(c.legs):
            pts = _unit_walk(leg)
            chain = [clause_id]
            for k in range(1, len(pts) - 1):
                back, ahead = _direction(pts[k], pts[k - 1]), _direction(pts[k], pts[k + 1])
                if _OPPOSITE[back] == ahead:
                    orient = "horizontal" if ahead in ("E", "W") else "vertical"
                    chain.append(place("line", pts[k], orient, (back, ahead)))
                else:
                    chain.append(place("corner", pts[k], f"{back}{ahead}", (back, ahead)))
            chain.append(at[pts[-1]])  # literal gadget
            var = att[ci][li][0]
            last = len(chain) - 2
            for k in range(len(chain) - 1):
                a, b = pts[k], pts[k + 1]
                pos = ((a[0] + b[0]) // 2, (a[1] + b[1]) // 2)
                size = "g" if k in (0, last) else "2g"
                pending.append((pos, size, chain[k + 1], chain[k], "leg", var, c.polarity))

    groups: list[SourceGroup] = []
    sources: list[tuple[float, float]] = []
    group_index: list[int] = []
    members: list[tuple[int, ...]] = []
    seen: dict[Coord, int] = {}
    incidence = [0] * len(gadgets)
    for pos, label, first, second, role, var, pol in pending:
        if pos in seen:
            raise DrawingInvalid(f"two source groups coincide at {pos}")
        seen[pos] = len(groups)
        size = g if label == "g" else 2 * g
        gid = len(groups)
        groups.append(SourceGroup(gid, (float(pos[0]), float(pos[1])), size, (first, second), role, var, pol))
        start = len(sources)
        sources.extend([(float(pos[0]), float(pos[1]))] * size)
        group_index.extend([gid] * size)
        members.append(tuple(range(start, start + size)))
        incidence[first] += 1
        incidence[second] += 1
    for i, gad in enumerate(gadgets):
        if incidence[i] != len(gad.sides):
            raise DrawingInvalid(f"{gad.kind} block at {gad.position} has {incidence[i]} groups, expected {len(gad.sides)}")

    instance = Instance(sources, [gad.position for gad in gadgets], (2 * g, 2 * g, 1), alpha)
    return GadgetInstance(instance, g, drawing, tuple(gadgets), tuple(groups), tuple(group_index), tuple(members))


def _unit_walk(leg: Sequence[Coord]) -> list[Coord]:
    """All even grid points along a leg, two apart, from the clause to the axis."""
    pts = [tuple(leg[0])]
    for a, b in _segments_of(leg):
        dx, dy = STEPS[_direction(a, b)]
        x, y = a
        while (x, y) != tuple(b):
            x, y = x + 2 * dx, y + 2 * dy
            pts.append((x, y))
    return pts


# ----------------------------------------------------------- canonical layouts


def truth_assignment(gi: GadgetInstance, truth: Sequence[bool]) -> list[int]:
    """Sink (gadget index) per group for the configuration of a truth assignment.

    Axis groups of a true variable go to their left block, otherwise right.
    Leg groups go to the literal side when the literal is true, otherwise
    toward the clause.
    """
    out = []
    for grp in gi.groups:
        value = bool(truth[grp.variable])
        if grp.role == "leg" and grp.polarity == "neg":
            value = not value
        out.append(grp.gadgets[0] if value else grp.gadgets[1])
    return out


def greedy_assignment(gi: GadgetInstance) -> list[int]:
    """Each group in turn picks the less loaded of its blocks that still has room."""
    load = [0] * len(gi.gadgets)
    out = []
    cap = 2 * gi.g
    for grp in gi.groups:
        options = sorted(grp.gadgets, key=lambda t: (load[t] + grp.size > cap, load[t]))
        t = options[0]
        load[t] += grp.size
        out.append(t)
    return out


def canonical_layout(gi: GadgetInstance, assignment: Optional[Sequence[int]] = None) -> Layout:
    """One Steiner vertex per group at the group's position, wired to its chosen block."""
    if assignment is None:
        assignment = greedy_assignment(gi)
    inst = gi.instance
    n, m = inst.n_sources, inst.n_sinks
    parents: list = [None] * (n + m)
    positions: list = list(inst.sources) + list(inst.sinks)
    for grp, t in zip(gi.groups, assignment):
        if t not in grp.gadgets:
            raise ValueError(f"group {grp.id} cannot use block {t}")
        v = len(parents)
        parents.append(n + t)
        positions.append(grp.position)
        for s in gi.members[grp.id]:
            parents[s] = v
    return Layout(Topology(n, m, parents), tuple(positions))


def is_canonical(layout: Layout, gi: GadgetInstance, tolerance: float = 1e-9) -> bool:
    topo = layout.topology
    pos = layout.positions
    used = set()
    for grp in gi.groups:
        parents = {topo.parents[s] for s in gi.members[grp.id]}
        if len(parents) != 1:
            return False
        v = parents.pop()
        if topo.kind(v) is not VertexKind.STEINER or v in used:
            return False
        used.add(v)
        if set(topo.children[v]) != set(gi.members[grp.id]):
            return False
        if pos[v] is None or dist(pos[v], grp.position) > tolerance:
            return False
        t = topo.parents[v]
        if topo.kind(t) is not VertexKind.SINK or abs(dist(pos[t], grp.position) - 1.0) > tolerance:
            return False
    return True


# ------------------------------------------------------------- naive drawings


def draw_formula(clauses: Sequence[Sequence[int]], n_variables: Optional[int] = None) -> SatDrawing:
    """Rectilinear drawing of a monotone formula by naive leg routing.

    Literals are signed 1-based variable numbers. Each clause needs three
    distinct variables, and on each side of the axis the clauses must nest:
    two clauses either span disjoint variable ranges (sharing at most an end
    variable) or one lies between two consecutive legs of the other.
    """
    n_variables = n_variables or max((abs(l) for c in clauses for l in c), default=0)
    info = []
    for ci, c in enumerate(clauses):
        if len(c) != 3 or len({abs(l) for l in c}) != 3:
            raise DrawingInvalid(f"clause {ci} needs three distinct variables")
        if all(l > 0 for l in c):
            pol = "pos"
        elif all(l < 0 for l in c):
            pol = "neg"
        else:
            raise DrawingInvalid(f"clause {ci} is not monotone")
        if max(abs(l) for l in c) > n_variables:
            raise DrawingInvalid(f"clause {ci} uses an unknown variable")
        info.append((pol, tuple(sorted(abs(l) - 1 for l in c))))

    def inside(inner, outer) -> bool:
        a1, a2, a3 = outer
        b1, _, b3 = inner
        return (a1 <= b1 and b3 <= a2) or (a2 <= b1 and b3 <= a3)

    nested: dict[int, list[int]] = {i: [] for i in range(len(info))}
    for i in range(len(info)):
        for j in range(len(info)):
            if i == j or info[i][0] != info[j][0]:
                continue
            a, b = info[i][1], info[j][1]
            if a[2] <= b[0] or b[2] <= a[0]:
                continue
            if inside(b, a):
                nested[i].append(j)
            elif not inside(a, b):
                raise DrawingInvalid(f"clauses {i} and {j} cross; naive routing cannot draw them")

    level: dict[int, int] = {}

    def lvl(i: int) -> int:
        if i not in level:
            level[i] = 1 + max((lvl(j) for j in nested[i]), default=0)
        return level[i]

    slots: list[list[tuple]] = [[] for _ in range(n_variables)]
    for ci, (pol, vs) in enumerate(info):
        for role, v in zip((0, 1, 2), vs):  # 0 left leg, 1 middle, 2 right leg
            key = {2: (0, lvl(ci)), 1: (1, 0), 0: (2, -lvl(ci))}[role]
            slots[v].append((0 if pol == "neg" else 1, key, ci, role))

    x_of: dict[tuple[int, int], int] = {}
    segments = []
    cursor = 0
    for v in range(n_variables):
        entries = sorted(slots[v])
        start = cursor
        for k, (_, _, ci, role) in enumerate(entries):
            x_of[(ci, role)] = cursor + k
        end = start + max(len(entries), 1) - 1
        segments.append((6 * start, 6 * end))
        cursor = end + 3

    out = []
    for ci, (pol, _) in enumerate(info):
        y = 6 * lvl(ci) * (1 if pol == "pos" else -1)
        xl, xm, xr = (6 * x_of[(ci, r)] for r in (0, 1, 2))
        legs = (
            ((xm, y), (xl, y), (xl, 0)),
            ((xm, y), (xm, 0)),
            ((xm, y), (xr, y), (xr, 0)),
        )
        out.append(Clause(pol, (xm, y), legs))
    drawing = SatDrawing(tuple(segments), tuple(out))
    validate_drawing(drawing)
    return drawing


def example_drawing() -> SatDrawing:
    """(x1 v x2 v x3), (~x1 v ~x2 v ~x4), (~x2 v ~x3 v ~x4)."""
    return draw_formula([(1, 2, 3), (-1, -2, -4), (-2, -3, -4)])

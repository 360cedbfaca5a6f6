"""Even and odd GKM graphs, and their validators."""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Hashable, Iterable, Sequence

from ..polyring import LinearForm, ZeroVector

Weight = LinearForm
VertexId = Hashable


class InvalidGraph(ValueError):
    pass


def canonical_weight(v: Iterable) -> Weight:
    """Primitive integral representative of ``[v]`` with first nonzero entry positive.

    Rational entries are cleared of denominators first, so images of integral
    weights under rational reflections stay well defined.
    """
    if isinstance(v, LinearForm):
        return v
    v = [Fraction(x) for x in v]
    if not any(v):
        raise ZeroVector(f"zero vector {v!r} has no canonical weight")
    scale = lcm(*(x.denominator for x in v))
    return LinearForm(int(x * scale) for x in v)


@dataclass(frozen=True)
class SolidEdge:
    u: VertexId
    v: VertexId
    weight: Weight


@dataclass(frozen=True)
class DottedEdge:
    v: VertexId
    weight: Weight


@dataclass(frozen=True)
class EvenGkmGraph:
    torus_rank: int
    gkm_degree: int
    vertices: tuple
    solid_edges: tuple[SolidEdge, ...] = ()
    dotted_edges: tuple[DottedEdge, ...] = ()

    kind = "even"

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "solid_edges", tuple(self.solid_edges))
        object.__setattr__(self, "dotted_edges", tuple(self.dotted_edges))

    def incident_weights(self, vertex) -> list[Weight]:
        ws = [e.weight for e in self.solid_edges if e.u == vertex]
        ws += [e.weight for e in self.solid_edges if e.v == vertex]
        ws += [d.weight for d in self.dotted_edges if d.v == vertex]
        return ws

    def solid_components(self) -> list[list]:
        parent = {v: v for v in self.vertices}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for e in self.solid_edges:
            if e.u in parent and e.v in parent:
                parent[find(e.u)] = find(e.v)
        groups: dict = defaultdict(list)
        for v in self.vertices:
            groups[find(v)].append(v)
        return list(groups.values())


@dataclass(frozen=True)
class Box:
    id: VertexId
    weight: Weight
    orientable: bool


@dataclass(frozen=True)
class Incidence:
    box: VertexId
    circle: VertexId
    sign: int | None


@dataclass(frozen=True)
class OddGkmGraph:
    torus_rank: int
    gkm_degree: int
    vertices: tuple
    boxes: tuple[Box, ...] = ()
    incidences: tuple[Incidence, ...] = ()

    kind = "odd"

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "boxes", tuple(self.boxes))
        object.__setattr__(self, "incidences", tuple(self.incidences))

    @property
    def circles(self) -> tuple:
        return self.vertices

    def box(self, box_id) -> Box:
        for b in self.boxes:
            if b.id == box_id:
                return b
        raise KeyError(box_id)

    def box_incidences(self, box_id) -> list[Incidence]:
        return [i for i in self.incidences if i.box == box_id]

    def circle_incidences(self, circle) -> list[Incidence]:
        return [i for i in self.incidences if i.circle == circle]


@dataclass(frozen=True)
class Violation:
    code: str
    message: str
    where: tuple = ()

    def __str__(self):
        return f"{self.code}: {self.message}"


@dataclass
class ValidationReport:
    violations: list[Violation] = field(default_factory=list)

    def add(self, code: str, message: str, *where):
        self.violations.append(Violation(code, message, tuple(where)))

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        # truthy iff there is something to report
        return bool(self.violations)

    def __len__(self):
        return len(self.violations)

    def __iter__(self):
        return iter(self.violations)

    def codes(self) -> set[str]:
        return {v.code for v in self.violations}


def _check_weight(report, w, n, *where):
    if not isinstance(w, LinearForm):
        report.add("bad weight", f"weight {w!r} is not a canonical weight", *where)
        return False
    if len(w) != n:
        report.add("rank mismatch", f"weight {list(w)} has length {len(w)}, torus rank is {n}", *where)
        return False
    return True


def _check_independent(report, weights: Sequence[Weight], vertex):
    # canonical primitive weights are dependent iff equal
    for w, count in Counter(weights).items():
        if count > 1:
            report.add(
                "dependent weights",
                f"vertex {vertex!r} has {count} incident edges of weight {list(w)}",
                vertex,
            )


def validate_even(g: EvenGkmGraph) -> ValidationReport:
    report = ValidationReport()
    verts = set(g.vertices)
    if len(verts) != len(g.vertices):
        dupes = [v for v, c in Counter(g.vertices).items() if c > 1]
        report.add("duplicate vertex", f"vertex ids repeated: {dupes}", *dupes)
    incident: dict = defaultdict(list)
    for idx, e in enumerate(g.solid_edges):
        _check_weight(report, e.weight, g.torus_rank, ("solid", idx))
        if e.u == e.v:
            report.add("loop", f"solid edge {idx} is a loop at {e.u!r}", ("solid", idx))
        for x in (e.u, e.v):
            if x not in verts:
                report.add("unknown vertex", f"solid edge {idx} references {x!r}", ("solid", idx))
        incident[e.u].append(e.weight)
        if e.v != e.u:
            incident[e.v].append(e.weight)
    for idx, d in enumerate(g.dotted_edges):
        _check_weight(report, d.weight, g.torus_rank, ("dotted", idx))
        if d.v not in verts:
            report.add("unknown vertex", f"dotted edge {idx} references {d.v!r}", ("dotted", idx))
        incident[d.v].append(d.weight)
    for v in g.vertices:
        ws = incident.get(v, [])
        if len(ws) != g.gkm_degree:
            report.add(
                "degree mismatch",
                f"vertex {v!r} has {len(ws)} incident edges, expected {g.gkm_degree}",
                v,
            )
        _check_independent(report, ws, v)
    return report


def validate_odd(g: OddGkmGraph) -> ValidationReport:
    report = ValidationReport()
    circles = set(g.vertices)
    if len(circles) != len(g.vertices):
        report.add("duplicate vertex", "circle ids repeated")
    boxes = {}
    for b in g.boxes:
        if b.id in boxes:
            report.add("duplicate box", f"box id {b.id!r} repeated", b.id)
        boxes[b.id] = b
        _check_weight(report, b.weight, g.torus_rank, b.id)
    seen_pairs = Counter()
    per_circle: dict = defaultdict(list)
    per_box = Counter()
    for idx, inc in enumerate(g.incidences):
        if inc.circle not in circles:
            report.add("unknown vertex", f"incidence {idx} references circle {inc.circle!r}", idx)
        b = boxes.get(inc.box)
        if b is None:
            report.add("unknown box", f"incidence {idx} references box {inc.box!r}", idx)
            continue
        seen_pairs[(inc.box, inc.circle)] += 1
        per_circle[inc.circle].append(b)
        per_box[inc.box] += 1
        if b.orientable and inc.sign not in (1, -1):
            report.add(
                "missing sign",
                f"incidence {idx} of orientable box {b.id!r} needs sign +1 or -1",
                idx,
            )
        if not b.orientable and inc.sign is not None:
            report.add(
                "unexpected sign",
                f"incidence {idx} of non-orientable box {b.id!r} carries a sign",
                idx,
            )
    for (box_id, circle), count in seen_pairs.items():
        if count > 1:
            report.add(
                "repeated incidence",
                f"circle {circle!r} meets box {box_id!r} {count} times",
                box_id,
                circle,
            )
    for b in g.boxes:
        if per_box[b.id] == 0:
            report.add("isolated box", f"box {b.id!r} has no incidences", b.id)
    for c in g.vertices:
        bs = per_circle.get(c, [])
        if len(bs) != g.gkm_degree:
            report.add(
                "degree mismatch",
                f"circle {c!r} has {len(bs)} incidences, expected {g.gkm_degree}",
                c,
            )
        _check_independent(report, [b.weight for b in bs if isinstance(b.weight, LinearForm)], c)
    return report


def validate(g) -> ValidationReport:
    if isinstance(g, EvenGkmGraph):
        return validate_even(g)
    if isinstance(g, OddGkmGraph):
        return validate_odd(g)
    raise TypeError(f"not a GKM graph: {type(g).__name__}")


def require_valid(g):
    report = validate(g)
    if report:
        raise InvalidGraph("; ".join(str(v) for v in report))
    return g

"""Finite automorphism groups of even GKM graphs, quotients, and isomorphism tests."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Mapping, Sequence

from .model import DottedEdge, EvenGkmGraph, OddGkmGraph, SolidEdge


class NotAutomorphism(ValueError):
    pass


class QuotientError(ValueError):
    pass


@dataclass(frozen=True)
class GraphAutomorphism:
    """A vertex permutation together with the induced permutations of edge indices."""

    vertex_map: tuple[tuple, ...]  # sorted (source, image) pairs
    solid_map: tuple[int, ...]
    dotted_map: tuple[int, ...]

    @property
    def vertices(self) -> dict:
        return dict(self.vertex_map)

    def is_identity(self) -> bool:
        return (
            all(a == b for a, b in self.vertex_map)
            and all(i == j for i, j in enumerate(self.solid_map))
            and all(i == j for i, j in enumerate(self.dotted_map))
        )


def _vertex_key(v):
    return (type(v).__name__, v)


def make_automorphism(
    g: EvenGkmGraph,
    vertex_map: Mapping,
    solid_map: Sequence[int] | None = None,
    dotted_map: Sequence[int] | None = None,
) -> GraphAutomorphism:
    """Build and check an automorphism; missing edge maps are inferred.

    Inference is unambiguous for a GKM-valid graph: at any vertex the incident
    weights are distinct, so an edge is pinned down by its endpoints and weight.
    """
    vmap = {v: vertex_map.get(v, v) for v in g.vertices}
    if sorted(map(_vertex_key, vmap.values())) != sorted(map(_vertex_key, g.vertices)):
        raise NotAutomorphism(f"vertex map {vmap} is not a permutation of the vertices")

    if solid_map is None:
        lookup: dict = {}
        for idx, e in enumerate(g.solid_edges):
            lookup.setdefault((frozenset((e.u, e.v)), e.weight), []).append(idx)
        solid_map = []
        for e in g.solid_edges:
            cands = lookup.get((frozenset((vmap[e.u], vmap[e.v])), e.weight), [])
            if len(cands) != 1:
                raise NotAutomorphism(f"cannot map solid edge {e} under {vmap}")
            solid_map.append(cands[0])
    if dotted_map is None:
        lookup = {}
        for idx, d in enumerate(g.dotted_edges):
            lookup.setdefault((d.v, d.weight), []).append(idx)
        dotted_map = []
        for d in g.dotted_edges:
            cands = lookup.get((vmap[d.v], d.weight), [])
            if len(cands) != 1:
                raise NotAutomorphism(f"cannot map dotted edge {d} under {vmap}")
            dotted_map.append(cands[0])

    solid_map, dotted_map = tuple(solid_map), tuple(dotted_map)
    if sorted(solid_map) != list(range(len(g.solid_edges))):
        raise NotAutomorphism("solid edge map is not a permutation")
    if sorted(dotted_map) != list(range(len(g.dotted_edges))):
        raise NotAutomorphism("dotted edge map is not a permutation")
    for idx, e in enumerate(g.solid_edges):
        f = g.solid_edges[solid_map[idx]]
        if {vmap[e.u], vmap[e.v]} != {f.u, f.v} or e.weight != f.weight:
            raise NotAutomorphism(f"solid edge {idx} is not carried to edge {solid_map[idx]}")
    for idx, d in enumerate(g.dotted_edges):
        f = g.dotted_edges[dotted_map[idx]]
        if vmap[d.v] != f.v or d.weight != f.weight:
            raise NotAutomorphism(f"dotted edge {idx} is not carried to edge {dotted_map[idx]}")
    return GraphAutomorphism(
        tuple(sorted(vmap.items(), key=lambda kv: _vertex_key(kv[0]))), solid_map, dotted_map
    )


def compose(a: GraphAutomorphism, b: GraphAutomorphism) -> GraphAutomorphism:
    """``a`` after ``b``."""
    av, bv = a.vertices, b.vertices
    return GraphAutomorphism(
        tuple((v, av[bv[v]]) for v, _ in b.vertex_map),
        tuple(a.solid_map[i] for i in b.solid_map),
        tuple(a.dotted_map[i] for i in b.dotted_map),
    )


def identity_automorphism(g: EvenGkmGraph) -> GraphAutomorphism:
    return make_automorphism(g, {v: v for v in g.vertices})


def generate_group(g: EvenGkmGraph, generators: Sequence[GraphAutomorphism]) -> list[GraphAutomorphism]:
    """Closure of ``generators`` under composition; the identity comes first."""
    elements = [identity_automorphism(g)]
    seen = set(elements)
    frontier = list(elements)
    while frontier:
        nxt = []
        for x in frontier:
            for s in generators:
                y = compose(s, x)
                if y not in seen:
                    seen.add(y)
                    elements.append(y)
                    nxt.append(y)
        frontier = nxt
    return elements


def check_group(g: EvenGkmGraph, group: Sequence[GraphAutomorphism]) -> list[GraphAutomorphism]:
    """Re-validate every element against ``g`` and check closure."""
    checked = [make_automorphism(g, x.vertices, x.solid_map, x.dotted_map) for x in group]
    members = set(checked)
    if not any(x.is_identity() for x in checked):
        raise NotAutomorphism("group does not contain the identity")
    for a in checked:
        for b in checked:
            if compose(a, b) not in members:
                raise NotAutomorphism("group is not closed under composition")
    return checked


def _orbits(items, image_lists):
    orbit_of: dict = {}
    orbits: list[list] = []
    for x in items:
        if x in orbit_of:
            continue
        members = []
        for imgs in image_lists(x):
            if imgs not in orbit_of:
                orbit_of[imgs] = len(orbits)
                members.append(imgs)
        orbits.append(members)
    return orbit_of, orbits


def vertex_orbits(g: EvenGkmGraph, group: Sequence[GraphAutomorphism]) -> list[list]:
    return _orbits(g.vertices, lambda v: [x.vertices[v] for x in group])[1]


def quotient_graph(g: EvenGkmGraph, group: Sequence[GraphAutomorphism]) -> EvenGkmGraph:
    """Quotient by a finite automorphism group.

    Free solid-edge orbits stay solid; an orbit whose edges have a nontrivial
    stabilizer (some element flips the edge onto itself) becomes a dotted edge.
    Each orbit is named after its first member in the original ordering.
    """
    group = check_group(g, group)
    v_orbit, _ = _orbits(g.vertices, lambda v: [x.vertices[v] for x in group])
    rep = {}
    for v in g.vertices:
        rep.setdefault(v_orbit[v], v)
    name = {v: rep[v_orbit[v]] for v in g.vertices}

    s_orbit, s_orbits = _orbits(
        range(len(g.solid_edges)), lambda i: [x.solid_map[i] for x in group]
    )
    d_orbit, d_orbits = _orbits(
        range(len(g.dotted_edges)), lambda i: [x.dotted_map[i] for x in group]
    )

    solid, dotted = [], []
    for members in s_orbits:
        first = min(members)
        e = g.solid_edges[first]
        stabilized = any(x.solid_map[first] == first and not x.is_identity() for x in group)
        if stabilized:
            dotted.append(DottedEdge(name[e.u], e.weight))
            continue
        u, v = name[e.u], name[e.v]
        if u == v:
            raise QuotientError(f"free orbit of solid edge {first} closes up into a loop")
        solid.append(SolidEdge(u, v, e.weight))
    for members in d_orbits:
        d = g.dotted_edges[min(members)]
        dotted.append(DottedEdge(name[d.v], d.weight))

    return EvenGkmGraph(
        torus_rank=g.torus_rank,
        gkm_degree=g.gkm_degree,
        vertices=tuple(v for v in g.vertices if name[v] == v),
        solid_edges=tuple(solid),
        dotted_edges=tuple(dotted),
    )


# isomorphism


def _even_signature(g: EvenGkmGraph, v):
    solid = sorted(e.weight.coeffs for e in g.solid_edges if v in (e.u, e.v))
    dotted = sorted(d.weight.coeffs for d in g.dotted_edges if d.v == v)
    return (tuple(solid), tuple(dotted))


def _match(sources, targets, sig_a, sig_b, consistent):
    """Backtracking search for a bijection sources -> targets respecting signatures."""
    if len(sources) != len(targets):
        return None
    if Counter(map(sig_a, sources)) != Counter(map(sig_b, targets)):
        return None
    mapping: dict = {}
    used: set = set()

    def step(i):
        if i == len(sources):
            return True
        s = sources[i]
        for t in targets:
            if t in used or sig_a(s) != sig_b(t):
                continue
            mapping[s] = t
            used.add(t)
            if consistent(mapping, s) and step(i + 1):
                return True
            del mapping[s]
            used.discard(t)
        return False

    return dict(mapping) if step(0) else None


def find_isomorphism(a, b) -> dict | None:
    """A vertex bijection carrying ``a`` onto ``b`` (weights and edge multiplicities preserved).

    For odd graphs the bijection covers circles only; boxes must then match up
    by weight, orientability, and signed incidence sets.
    """
    if type(a) is not type(b) or a.torus_rank != b.torus_rank or a.gkm_degree != b.gkm_degree:
        return None
    if isinstance(a, EvenGkmGraph):
        return _even_iso(a, b)
    return _odd_iso(a, b)


def _even_iso(a: EvenGkmGraph, b: EvenGkmGraph):
    if len(a.solid_edges) != len(b.solid_edges) or len(a.dotted_edges) != len(b.dotted_edges):
        return None
    edges_b = Counter((frozenset((e.u, e.v)), e.weight) for e in b.solid_edges)

    def consistent(mapping, s):
        need = Counter()
        for e in a.solid_edges:
            if s in (e.u, e.v) and e.u in mapping and e.v in mapping:
                need[(frozenset((mapping[e.u], mapping[e.v])), e.weight)] += 1
        return all(edges_b[k] >= c for k, c in need.items())

    m = _match(
        list(a.vertices),
        list(b.vertices),
        lambda v: _even_signature(a, v),
        lambda v: _even_signature(b, v),
        consistent,
    )
    if m is None:
        return None
    mapped = Counter((frozenset((m[e.u], m[e.v])), e.weight) for e in a.solid_edges)
    return m if mapped == edges_b else None


def _odd_box_keys(g: OddGkmGraph, circle_map=None):
    keys = Counter()
    for box in g.boxes:
        incs = frozenset(
            ((circle_map or {}).get(i.circle, i.circle), i.sign) for i in g.incidences if i.box == box.id
        )
        keys[(box.weight, box.orientable, incs)] += 1
    return keys


def _odd_iso(a: OddGkmGraph, b: OddGkmGraph):
    if len(a.boxes) != len(b.boxes) or len(a.incidences) != len(b.incidences):
        return None

    def sig(g):
        def f(c):
            out = []
            for i in g.incidences:
                if i.circle == c:
                    box = g.box(i.box)
                    size = sum(1 for j in g.incidences if j.box == i.box)
                    out.append((box.weight.coeffs, box.orientable, i.sign, size))
            return tuple(sorted(out, key=repr))

        return f

    target = _odd_box_keys(b)
    m = _match(list(a.vertices), list(b.vertices), sig(a), sig(b), lambda mapping, s: True)
    if m is None:
        return None
    if _odd_box_keys(a, m) == target:
        return m
    # signatures tie: fall back to exhaustive search over circle bijections
    from itertools import permutations

    for perm in permutations(b.vertices):
        cand = dict(zip(a.vertices, perm))
        if _odd_box_keys(a, cand) == target:
            return cand
    return None


def graphs_isomorphic(a, b) -> bool:
    return find_isomorphism(a, b) is not None

"""Graph fixtures shared by the solver, oracle and acceptance tests."""

from dataclasses import replace

from gkmcohom.gkmgraph import (
    Box,
    DottedEdge,
    Incidence,
    build_even_rp,
    build_even_sphere,
    build_odd_sphere,
    cp2,
    flag_3,
    grassmannian_2_4_relations,
    grassmannian_2_5,
    grassmannian_3_6,
    ng7,
    oriented_grassmannian_2_5,
    product_with_circle,
)


def all_fixtures():
    return {
        "S2": build_even_sphere(1),
        "S4": build_even_sphere(2),
        "RP4": build_even_rp(2),
        "S3": build_odd_sphere(1),
        "S5": build_odd_sphere(2),
        "G2R5~": oriented_grassmannian_2_5(),
        "G2R5": grassmannian_2_5(),
        "G2R4": grassmannian_2_4_relations(),
        "G3R6": grassmannian_3_6(),
        "Fl3": flag_3(),
        "CP2": cp2(),
        "NG7": ng7(),
        "S2xS1": product_with_circle(build_even_sphere(1)),
        "G2R5xS1": product_with_circle(grassmannian_2_5()),
    }


def relax_edges(g, indices):
    """Trade each chosen solid edge for a dotted edge at both ends; degrees are unchanged."""
    keep = [e for i, e in enumerate(g.solid_edges) if i not in indices]
    extra = []
    for i in sorted(indices):
        e = g.solid_edges[i]
        extra += [DottedEdge(e.u, e.weight), DottedEdge(e.v, e.weight)]
    return replace(g, solid_edges=tuple(keep), dotted_edges=g.dotted_edges + tuple(extra))


def flip_box(g, box_id):
    incs = tuple(
        Incidence(i.box, i.circle, -i.sign) if i.box == box_id and i.sign is not None else i for i in g.incidences
    )
    return replace(g, incidences=incs)


def flip_circle(g, circle):
    incs = tuple(
        Incidence(i.box, i.circle, -i.sign) if i.circle == circle and i.sign is not None else i
        for i in g.incidences
    )
    return replace(g, incidences=incs)


def make_unorientable(g, box_id):
    boxes = tuple(Box(b.id, b.weight, False) if b.id == box_id else b for b in g.boxes)
    incs = tuple(Incidence(i.box, i.circle, None) if i.box == box_id else i for i in g.incidences)
    return replace(g, boxes=boxes, incidences=incs)

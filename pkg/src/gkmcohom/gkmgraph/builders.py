"""Graph builders: sphere and projective-space families, products with a circle,
and the Grassmannian / flag / cohomogeneity-one fixtures."""

from __future__ import annotations

from math import gcd

from .model import (
    Box,
    DottedEdge,
    EvenGkmGraph,
    Incidence,
    InvalidGraph,
    OddGkmGraph,
    SolidEdge,
    canonical_weight,
    validate_even,
)


def basis_vector(n: int, i: int) -> tuple[int, ...]:
    return tuple(1 if j == i else 0 for j in range(n))


def root(n: int, i: int, j: int) -> tuple[int, ...]:
    """The difference ``a_j - a_i`` (1-based indices) in rank ``n``."""
    v = [0] * n
    v[j - 1] += 1
    v[i - 1] -= 1
    return tuple(v)


def _check_n(n: int):
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")


def build_even_sphere(n: int) -> EvenGkmGraph:
    _check_n(n)
    return EvenGkmGraph(
        torus_rank=n,
        gkm_degree=n,
        vertices=("N", "S"),
        solid_edges=tuple(SolidEdge("N", "S", canonical_weight(basis_vector(n, i))) for i in range(n)),
    )


def build_even_rp(n: int) -> EvenGkmGraph:
    _check_n(n)
    return EvenGkmGraph(
        torus_rank=n,
        gkm_degree=n,
        vertices=("p",),
        dotted_edges=tuple(DottedEdge("p", canonical_weight(basis_vector(n, i))) for i in range(n)),
    )


def build_odd_sphere(n: int) -> OddGkmGraph:
    _check_n(n)
    boxes = tuple(Box(f"b{i + 1}", canonical_weight(basis_vector(n, i)), True) for i in range(n))
    return OddGkmGraph(
        torus_rank=n,
        gkm_degree=n,
        vertices=("c",),
        boxes=boxes,
        incidences=tuple(Incidence(b.id, "c", 1) for b in boxes),
    )


def build_lens_space(n: int, m: int = 2, ls: tuple[int, ...] | None = None) -> OddGkmGraph:
    """Lens space ``L_m(1, l_1..l_n)``; its 1-skeleton is that of the odd sphere."""
    ls = tuple(ls) if ls is not None else (1,) * n
    if m < 2:
        raise ValueError("lens space needs m > 1")
    if len(ls) != n or any(x < 1 for x in ls):
        raise ValueError(f"need {n} positive integers l_i, got {ls}")
    g = 0
    for x in ls:
        g = gcd(g, x)
    if g != 1:
        raise ValueError(f"l_i must have gcd 1, got {ls}")
    return build_odd_sphere(n)


def product_with_circle(g: EvenGkmGraph) -> OddGkmGraph:
    report = validate_even(g)
    if report:
        raise InvalidGraph("product_with_circle needs a valid even graph: " + "; ".join(map(str, report)))
    boxes, incidences = [], []
    for idx, e in enumerate(g.solid_edges):
        bid = f"s{idx}"
        boxes.append(Box(bid, e.weight, True))
        incidences += [Incidence(bid, e.u, 1), Incidence(bid, e.v, -1)]
    for idx, d in enumerate(g.dotted_edges):
        bid = f"d{idx}"
        boxes.append(Box(bid, d.weight, False))
        incidences.append(Incidence(bid, d.v, None))
    return OddGkmGraph(
        torus_rank=g.torus_rank,
        gkm_degree=g.gkm_degree,
        vertices=g.vertices,
        boxes=tuple(boxes),
        incidences=tuple(incidences),
    )


def _even(n, degree, vertices, solid=(), dotted=()):
    return EvenGkmGraph(
        torus_rank=n,
        gkm_degree=degree,
        vertices=tuple(vertices),
        solid_edges=tuple(SolidEdge(u, v, canonical_weight(w)) for u, v, w in solid),
        dotted_edges=tuple(DottedEdge(v, canonical_weight(w)) for v, w in dotted),
    )


A1, A2 = (1, 0), (0, 1)
A2_MINUS_A1, A2_PLUS_A1 = (-1, 1), (1, 1)


def oriented_grassmannian_2_5() -> EvenGkmGraph:
    """Oriented Grassmannian of 2-planes in R^5 under T^2: four vertices, each of degree 3."""
    return _even(
        2,
        3,
        ["v1+", "v1-", "v2+", "v2-"],
        solid=[
            ("v1+", "v2+", A2_MINUS_A1),
            ("v1+", "v2-", A2_PLUS_A1),
            ("v1-", "v2-", A2_MINUS_A1),
            ("v1-", "v2+", A2_PLUS_A1),
            ("v1+", "v1-", A1),
            ("v2+", "v2-", A2),
        ],
    )


def grassmannian_2_5() -> EvenGkmGraph:
    return _even(
        2,
        3,
        ["v1", "v2"],
        solid=[("v1", "v2", A2_MINUS_A1), ("v1", "v2", A2_PLUS_A1)],
        dotted=[("v1", A1), ("v2", A2)],
    )


def grassmannian_2_4_relations() -> EvenGkmGraph:
    """Two vertices joined by edges of weight a2-a1 and a2+a1."""
    return _even(2, 2, ["v1", "v2"], solid=[("v1", "v2", A2_MINUS_A1), ("v1", "v2", A2_PLUS_A1)])


def grassmannian_3_6() -> OddGkmGraph:
    """1-skeleton of the (oriented or unoriented) Grassmannian of 3-planes in R^6 under T^2."""
    boxes = [
        Box("b+", canonical_weight(A2_PLUS_A1), True),
        Box("b-", canonical_weight(A2_MINUS_A1), True),
        Box("b1.1", canonical_weight(A1), True),
        Box("b1.2", canonical_weight(A2), True),
        Box("b2.1", canonical_weight(A1), True),
        Box("b2.2", canonical_weight(A2), True),
    ]
    incidences = [
        Incidence("b+", "C1", 1),
        Incidence("b+", "C2", -1),
        Incidence("b-", "C1", 1),
        Incidence("b-", "C2", -1),
        Incidence("b1.1", "C1", 1),
        Incidence("b1.2", "C1", 1),
        Incidence("b2.1", "C2", 1),
        Incidence("b2.2", "C2", 1),
    ]
    return OddGkmGraph(2, 4, ("C1", "C2"), tuple(boxes), tuple(incidences))


oriented_grassmannian_3_6 = grassmannian_3_6


def flag_3() -> EvenGkmGraph:
    """Complete flags in C^3, vertices labelled by permutations."""
    a21, a31, a32 = root(3, 1, 2), root(3, 1, 3), root(3, 2, 3)
    return _even(
        3,
        3,
        ["213", "123", "132", "312", "321", "231"],
        solid=[
            ("213", "123", a21),
            ("132", "231", a21),
            ("312", "321", a21),
            ("132", "312", a31),
            ("123", "321", a31),
            ("213", "231", a31),
            ("321", "231", a32),
            ("213", "312", a32),
            ("123", "132", a32),
        ],
    )


def cp2() -> EvenGkmGraph:
    return _even(
        3,
        2,
        ["1", "2", "3"],
        solid=[("3", "2", root(3, 2, 3)), ("3", "1", root(3, 1, 3)), ("1", "2", root(3, 1, 2))],
    )


def ng7() -> OddGkmGraph:
    """1-skeleton of the cohomogeneity-one manifold with group diagram U(3) > U(2)xU(1) > T^3.

    Boxes joining two circles are the S^2 x S^1 pieces over the edges of CP^2;
    the single-circle boxes are the S^3 pieces from the collapsing fibre spheres.

    Signs around the triangle 1-2-3 must multiply out so that the Q-parts
    (a3-a2, a3-a1, a2-a1) form a class; no choice of circle or box
    orientations can change that parity, so box ``b31`` carries (+1, +1).
    With (+1, -1) on all three two-circle boxes, degree 3 would be empty.
    """
    a21, a31, a32 = (canonical_weight(root(3, i, j)) for i, j in ((1, 2), (1, 3), (2, 3)))
    boxes = [
        Box("b21", a21, True),
        Box("b32", a32, True),
        Box("b31", a31, True),
        Box("s1", a32, True),
        Box("s2", a31, True),
        Box("s3", a21, True),
    ]
    incidences = [
        Incidence("b21", "1", 1),
        Incidence("b21", "2", -1),
        Incidence("b32", "2", 1),
        Incidence("b32", "3", -1),
        Incidence("b31", "1", 1),
        Incidence("b31", "3", 1),
        Incidence("s1", "1", 1),
        Incidence("s2", "2", 1),
        Incidence("s3", "3", 1),
    ]
    return OddGkmGraph(3, 3, ("1", "2", "3"), tuple(boxes), tuple(incidences))


def sphere_antipodal_group(n: int = 1):
    """Z/2 swapping the poles of the even sphere; the quotient is RP^{2n}."""
    from .covering import generate_group, make_automorphism

    g = build_even_sphere(n)
    return g, generate_group(g, [make_automorphism(g, {"N": "S", "S": "N"})])


def oriented_grassmannian_2_5_deck_group():
    """The deck group of the double cover of the unoriented Grassmannian."""
    from .covering import generate_group, make_automorphism

    g = oriented_grassmannian_2_5()
    flip = make_automorphism(g, {"v1+": "v1-", "v1-": "v1+", "v2+": "v2-", "v2-": "v2+"})
    return g, generate_group(g, [flip])

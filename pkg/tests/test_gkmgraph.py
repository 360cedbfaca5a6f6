import json
import warnings

import pytest
from hypothesis import given
from hypothesis import strategies as st

from gkmcohom.gkmgraph import (
    Box,
    DottedEdge,
    EvenGkmGraph,
    Incidence,
    InvalidGraph,
    NonCanonicalWeight,
    NotAutomorphism,
    OddGkmGraph,
    ParseError,
    RootDatum,
    SolidEdge,
    build_even_rp,
    build_even_sphere,
    build_lens_space,
    build_odd_sphere,
    build_weyl_coset_graph,
    canonical_weight,
    cp2,
    flag_3,
    generate_group,
    graph_to_dict,
    graphs_isomorphic,
    grassmannian_2_4_relations,
    grassmannian_2_5,
    grassmannian_3_6,
    make_automorphism,
    ng7,
    oriented_grassmannian_2_5,
    oriented_grassmannian_2_5_deck_group,
    parse_graph,
    parse_group,
    parse_root_datum,
    product_with_circle,
    quotient_graph,
    serialize_graph,
    serialize_root_datum,
    sphere_antipodal_group,
    validate,
    vertex_orbits,
)
from gkmcohom.gkmgraph.weyl import GroupTooLarge, unitary_roots, weyl_cosets

FIXTURES = [
    build_even_sphere(1),
    build_even_sphere(3),
    build_even_rp(2),
    build_odd_sphere(2),
    oriented_grassmannian_2_5(),
    grassmannian_2_5(),
    grassmannian_2_4_relations(),
    grassmannian_3_6(),
    flag_3(),
    cp2(),
    ng7(),
    product_with_circle(grassmannian_2_5()),
]


@pytest.mark.parametrize("g", FIXTURES, ids=lambda g: f"{g.kind}-{len(g.vertices)}")
def test_fixtures_valid(g):
    assert validate(g).ok, list(validate(g))


@pytest.mark.parametrize("g", FIXTURES, ids=lambda g: f"{g.kind}-{len(g.vertices)}")
def test_serialize_roundtrip(g):
    text = serialize_graph(g)
    assert parse_graph(text) == g
    assert serialize_graph(parse_graph(text)) == text


@given(st.lists(st.integers(-20, 20), min_size=1, max_size=4).filter(any), st.integers(-5, 5).filter(bool))
def test_canonical_weight_idempotent_and_scale_free(v, k):
    w = canonical_weight(v)
    assert canonical_weight(w.coeffs) == w
    assert canonical_weight([k * x for x in v]) == w
    first = next(c for c in w.coeffs if c)
    assert first > 0


def test_even_violations():
    w = canonical_weight((1, 0))
    g = EvenGkmGraph(2, 2, ("a", "a", "b"), (SolidEdge("a", "a", w), SolidEdge("a", "z", w)), ())
    codes = validate(g).codes()
    assert {"duplicate vertex", "loop", "unknown vertex"} <= codes


def test_even_degree_and_independence():
    w = canonical_weight((1, 0))
    g = EvenGkmGraph(2, 2, ("a", "b"), (SolidEdge("a", "b", w), SolidEdge("a", "b", w)), ())
    report = validate(g)
    assert "dependent weights" in report.codes()
    g = EvenGkmGraph(2, 3, ("a", "b"), (SolidEdge("a", "b", w),), ())
    assert "degree mismatch" in validate(g).codes()


def test_odd_violations():
    w = canonical_weight((1,))
    g = OddGkmGraph(
        1,
        1,
        ("c",),
        (Box("b", w, True), Box("lonely", w, True), Box("n", w, False)),
        (Incidence("b", "c", None), Incidence("n", "c", 1), Incidence("x", "c", 1)),
    )
    codes = validate(g).codes()
    assert {"missing sign", "unexpected sign", "unknown box", "isolated box"} <= codes


def test_product_rejects_invalid():
    w = canonical_weight((1,))
    bad = EvenGkmGraph(1, 1, ("a",), (SolidEdge("a", "a", w),), ())
    with pytest.raises(InvalidGraph):
        product_with_circle(bad)


def test_product_structure():
    g = product_with_circle(grassmannian_2_5())
    assert g.circles == ("v1", "v2")
    orientable = [b for b in g.boxes if b.orientable]
    assert len(orientable) == 2 and len(g.boxes) == 4


def test_lens_space_is_odd_sphere():
    assert build_lens_space(2, 3, (1, 2)) == build_odd_sphere(2)
    with pytest.raises(ValueError):
        build_lens_space(2, 1)
    with pytest.raises(ValueError):
        build_lens_space(2, 4, (2, 2))


def test_parse_errors():
    with pytest.raises(ParseError):
        parse_graph("{not json")
    with pytest.raises(ParseError):
        parse_graph(json.dumps({"kind": "even", "torus_rank": 1}))
    with pytest.raises(ParseError):
        parse_graph(json.dumps({"kind": "cubic", "torus_rank": 1, "vertices": []}))
    doc = graph_to_dict(build_odd_sphere(1))
    doc["boxes"][0]["orientable"] = False
    with pytest.raises(ParseError):
        parse_graph(json.dumps(doc))


def test_parse_canonicalizes_with_warning():
    doc = graph_to_dict(build_even_sphere(1))
    doc["solid_edges"][0]["weight"] = [-3]
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        g = parse_graph(json.dumps(doc))
    assert any(issubclass(w.category, NonCanonicalWeight) for w in caught)
    assert g == build_even_sphere(1)


def test_odd_degree_inferred():
    doc = graph_to_dict(ng7())
    del doc["gkm_degree"]
    assert parse_graph(json.dumps(doc)).gkm_degree == 3


# Weyl coset graphs


def test_unitary_3_full_flag():
    g = build_weyl_coset_graph(RootDatum(3, unitary_roots(3), []))
    assert len(g.vertices) == 6 and len(g.solid_edges) == 9 and not g.dotted_edges
    assert {e.weight.coeffs for e in g.solid_edges} == {(1, -1, 0), (1, 0, -1), (0, 1, -1)}
    assert graphs_isomorphic(g, flag_3())


def test_unitary_3_projective_plane():
    roots = unitary_roots(3)
    g = build_weyl_coset_graph(RootDatum(3, roots, [roots[0]]))
    assert len(g.vertices) == 3
    assert graphs_isomorphic(g, cp2())


def test_k_equals_g_single_vertex():
    roots = unitary_roots(3)
    g = build_weyl_coset_graph(RootDatum(3, roots, roots))
    assert len(g.vertices) == 1 and not g.solid_edges
    assert validate(g).ok


def test_b2_reproduces_oriented_grassmannian():
    g = build_weyl_coset_graph(RootDatum(2, [(1, 0), (0, 1), (1, 1), (-1, 1)], [(0, 1)]))
    assert graphs_isomorphic(g, oriented_grassmannian_2_5())


def test_weyl_group_orders():
    W_G, W_K, coset_of, reps = weyl_cosets(RootDatum(3, unitary_roots(3), [unitary_roots(3)[0]]))
    assert (len(W_G), len(W_K), len(reps)) == (6, 2, 3)
    assert len(coset_of) == 6
    with pytest.raises(GroupTooLarge):
        build_weyl_coset_graph(RootDatum(4, unitary_roots(4), []), cap=10)


def test_root_datum_roundtrip_and_errors():
    r = RootDatum(3, unitary_roots(3), [unitary_roots(3)[0]])
    assert parse_root_datum(serialize_root_datum(r)) == r
    with pytest.raises(ValueError):
        RootDatum(2, [(1, 0)], [(0, 1)])
    with pytest.raises(ValueError):
        RootDatum(2, [(1, 0, 0)], [])


# covering and quotients


def test_quotient_grassmannian():
    g, group = oriented_grassmannian_2_5_deck_group()
    assert len(group) == 2
    q = quotient_graph(g, group)
    assert graphs_isomorphic(q, grassmannian_2_5())
    assert not graphs_isomorphic(q, grassmannian_2_4_relations())


def test_quotient_sphere():
    g, group = sphere_antipodal_group(2)
    q = quotient_graph(g, group)
    assert graphs_isomorphic(q, build_even_rp(2))
    assert len(vertex_orbits(g, group)) == 1


def test_non_automorphism_rejected():
    g = oriented_grassmannian_2_5()
    with pytest.raises(NotAutomorphism):
        make_automorphism(g, {"v1+": "v2+", "v2+": "v1+", "v1-": "v1-", "v2-": "v2-"})


def test_non_free_edge_orbit_becomes_dotted():
    g = build_even_sphere(1)
    group = generate_group(g, [make_automorphism(g, {"N": "S", "S": "N"})])
    q = quotient_graph(g, group)
    assert q.dotted_edges and not q.solid_edges


def test_parse_group_document():
    g = oriented_grassmannian_2_5()
    doc = {"generators": [{"vertices": {"v1+": "v1-", "v1-": "v1+", "v2+": "v2-", "v2-": "v2+"}}]}
    group = parse_group(json.dumps(doc), g)
    assert len(group) == 2
    with pytest.raises(ParseError):
        parse_group(json.dumps({"generators": [{"vertices": {"zz": "v1+"}}]}), g)


def test_isomorphism_negative():
    assert not graphs_isomorphic(flag_3(), cp2())
    assert not graphs_isomorphic(build_odd_sphere(2), grassmannian_3_6())
    assert graphs_isomorphic(ng7(), ng7())

from .builders import (
    build_even_rp,
    build_even_sphere,
    build_lens_space,
    build_odd_sphere,
    cp2,
    flag_3,
    grassmannian_2_4_relations,
    grassmannian_2_5,
    grassmannian_3_6,
    ng7,
    oriented_grassmannian_2_5,
    oriented_grassmannian_2_5_deck_group,
    oriented_grassmannian_3_6,
    product_with_circle,
    sphere_antipodal_group,
)
from .covering import (
    GraphAutomorphism,
    NotAutomorphism,
    QuotientError,
    check_group,
    find_isomorphism,
    generate_group,
    graphs_isomorphic,
    identity_automorphism,
    make_automorphism,
    quotient_graph,
    vertex_orbits,
)
from .model import (
    Box,
    DottedEdge,
    EvenGkmGraph,
    Incidence,
    InvalidGraph,
    OddGkmGraph,
    SolidEdge,
    ValidationReport,
    Violation,
    Weight,
    canonical_weight,
    require_valid,
    validate,
    validate_even,
    validate_odd,
)
from .serialize import (
    NonCanonicalWeight,
    ParseError,
    graph_from_dict,
    graph_to_dict,
    group_to_dict,
    parse_graph,
    parse_group,
    parse_root_datum,
    serialize_graph,
    serialize_root_datum,
)
from .weyl import (
    GroupTooLarge,
    NotClosed,
    RootDatum,
    build_weyl_coset_graph,
    unitary_roots,
    weyl_cosets,
)

"""Command-line front end.

Graphs flow through stdin/stdout as JSON documents, so commands compose::

    gkm build sphere-odd --n 1 | gkm series --max-degree 5
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import warnings

from . import oracle
from .gkmgraph import (
    EvenGkmGraph,
    GroupTooLarge,
    NotAutomorphism,
    NotClosed,
    ParseError,
    QuotientError,
    build_even_rp,
    build_even_sphere,
    build_lens_space,
    build_odd_sphere,
    build_weyl_coset_graph,
    cp2,
    flag_3,
    generate_group,
    graph_to_dict,
    grassmannian_2_4_relations,
    grassmannian_2_5,
    grassmannian_3_6,
    make_automorphism,
    ng7,
    oriented_grassmannian_2_5,
    oriented_grassmannian_3_6,
    parse_graph,
    parse_group,
    parse_root_datum,
    product_with_circle,
    quotient_graph,
    serialize_graph,
    validate,
)
from .gkmgraph.model import InvalidGraph as GraphInvalid
from .polyring import parse_poly, serialize_poly
from .solver import (
    DEFAULT_MAX_DEGREE,
    EvenClass,
    InvalidGraph,
    KindMismatch,
    OddClass,
    VertexMismatch,
    betti_polynomial,
    degree_component,
    membership,
    module_generators,
    poincare_series,
    render_t_polynomial,
    series_factor_check,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

FIXTURES = {
    "g2r5-oriented": oriented_grassmannian_2_5,
    "g2r5": grassmannian_2_5,
    "g2r4": grassmannian_2_4_relations,
    "g3r6-oriented": oriented_grassmannian_3_6,
    "g3r6": grassmannian_3_6,
    "fl3": flag_3,
    "cp2": cp2,
    "ng7": ng7,
}
N_FAMILIES = {
    "sphere-even": build_even_sphere,
    "sphere-odd": build_odd_sphere,
    "rp-even": build_even_rp,
}
FAMILIES = sorted([*N_FAMILIES, "lens", "product-circle", "weyl", *FIXTURES])

BUILTIN_GROUPS = {
    "sphere-antipodal": {"N": "S", "S": "N"},
    "g2r5-deck": {"v1+": "v1-", "v1-": "v1+", "v2+": "v2-", "v2-": "v2+"},
}


class UsageError(Exception):
    pass


class Failure(Exception):
    """Validation or verification failure: exit status 1."""


def _read(path: str | None) -> str:
    if path in (None, "-"):
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _hash(*texts: str) -> str:
    h = hashlib.sha256()
    for t in texts:
        h.update(t.encode("utf-8"))
    return h.hexdigest()


def _load_graph(path):
    text = _read(path)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        g = parse_graph(text)
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    return g, text


def _emit(args, command: str, input_hash: str, results, text: str):
    if args.format == "json":
        print(json.dumps({"command": command, "input_hash": input_hash, "results": results}))
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _require_valid(g):
    report = validate(g)
    if report:
        raise Failure("invalid graph:\n" + "\n".join(f"  {v}" for v in report))


def class_to_dict(c) -> dict:
    if isinstance(c, EvenClass):
        return {"kind": "even", "assignment": {str(v): serialize_poly(p) for v, p in c.assignment.items()}}
    return {
        "kind": "odd",
        "assignment": {
            str(v): {"P": serialize_poly(p), "Q": serialize_poly(q)} for v, (p, q) in c.assignment.items()
        },
    }


def class_from_dict(doc, g):
    if not isinstance(doc, dict) or "assignment" not in doc:
        raise ParseError("class document needs an 'assignment' object")
    by_str = {str(v): v for v in g.vertices}
    out = {}
    n = g.torus_rank
    try:
        for key, val in doc["assignment"].items():
            v = by_str.get(key, key)
            if isinstance(g, EvenGkmGraph):
                out[v] = parse_poly(val, n)
            else:
                out[v] = (parse_poly(val.get("P", []), n), parse_poly(val.get("Q", []), n))
    except (ValueError, TypeError, AttributeError) as exc:
        raise ParseError(f"bad polynomial data: {exc}") from None
    return EvenClass(out) if isinstance(g, EvenGkmGraph) else OddClass(out)


def _render_class(c) -> str:
    if isinstance(c, EvenClass):
        return ", ".join(f"{v}: {p}" for v, p in c.assignment.items())
    return ", ".join(f"{v}: ({p}) + ({q})*theta" for v, (p, q) in c.assignment.items())


# commands


def cmd_validate(args):
    text = _read(args.graph)
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            violations = [{"code": v.code, "message": str(v)} for v in validate(parse_graph(text))]
    except ParseError as exc:
        violations = [{"code": "parse", "message": str(exc)}]
    ok = not violations
    results = {"valid": ok, "violations": violations}
    lines = ["valid"] if ok else [f"invalid: [{v['code']}] {v['message']}" for v in violations]
    _emit(args, "validate", _hash(text), results, "\n".join(lines))
    return EXIT_OK if ok else EXIT_FAIL


def _cross_check(g, series, args) -> list[str]:
    cfg = oracle.OracleConfig(seed=args.seed)
    diffs = []
    for d in range(min(args.max_degree, oracle.DEFAULT_DEGREE_CAP) + 1):
        expected = oracle.brute_force_dimension(g, d)
        if expected != series[d]:
            diffs.append(f"degree {d}: solver {series[d]} != oracle {expected}")
        for i, c in enumerate(degree_component(g, d)):
            if not oracle.class_satisfies_congruences(g, c, cfg):
                diffs.append(f"degree {d}: basis class {i} fails a sampled congruence")
    return diffs


def cmd_series(args):
    g, text = _load_graph(args.graph)
    _require_valid(g)
    s = poincare_series(g, args.max_degree, parallel=args.parallel)
    results = {"series": list(s)}
    if args.cross_check:
        diffs = _cross_check(g, s, args)
        results["cross_check"] = {"ok": not diffs, "diffs": diffs}
        if diffs:
            _emit(args, "series", _hash(text), results, "cross-check FAILED\n" + "\n".join(diffs))
            return EXIT_FAIL
    _emit(args, "series", _hash(text), results, " ".join(f"{d}:{c}" for d, c in enumerate(s)))
    return EXIT_OK


def cmd_betti(args):
    g, text = _load_graph(args.graph)
    _require_valid(g)
    rank = args.rank if args.rank is not None else g.torus_rank
    s = poincare_series(g, args.max_degree, parallel=args.parallel)
    b = betti_polynomial(s, rank, args.max_degree)
    results = {
        "coefficients": list(b.coefficients),
        "polynomial": render_t_polynomial(b.coefficients),
        "verdict": b.verdict,
        "max_degree": b.max_degree,
    }
    _emit(args, "betti", _hash(text), results, f"{results['polynomial']}\n{b.verdict}")
    return EXIT_OK


def cmd_basis(args):
    g, text = _load_graph(args.graph)
    _require_valid(g)
    basis = degree_component(g, args.degree)
    results = {"degree": args.degree, "dimension": len(basis), "classes": [class_to_dict(c) for c in basis]}
    lines = [f"degree {args.degree}: dimension {len(basis)}"]
    lines += [f"  [{i}] {_render_class(c)}" for i, c in enumerate(basis)]
    _emit(args, "basis", _hash(text), results, "\n".join(lines))
    return EXIT_OK


def cmd_generators(args):
    g, text = _load_graph(args.graph)
    _require_valid(g)
    gens = module_generators(g, args.max_degree)
    results = {
        "max_degree": args.max_degree,
        "generators": [{"degree": d, "class": class_to_dict(c)} for d, c in gens],
    }
    lines = [f"generators up to degree {args.max_degree}: {len(gens)}"]
    lines += [f"  deg {d}: {_render_class(c)}" for d, c in gens]
    _emit(args, "generators", _hash(text), results, "\n".join(lines))
    return EXIT_OK


def cmd_member(args):
    g, text = _load_graph(args.graph)
    _require_valid(g)
    class_text = _read(args.cls)
    try:
        doc = json.loads(class_text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, line=exc.lineno) from None
    c = class_from_dict(doc, g)
    ok = membership(g, c)
    _emit(args, "member", _hash(text, class_text), {"member": ok}, "true" if ok else "false")
    return EXIT_OK if ok else EXIT_FAIL


def _build(args):
    family = args.family
    if family in N_FAMILIES or family == "lens":
        if args.n is None:
            raise UsageError(f"build {family} needs --n")
        if family == "lens":
            ls = tuple(int(x) for x in args.l.split(",")) if args.l else None
            return build_lens_space(args.n, args.m, ls), ""
        return N_FAMILIES[family](args.n), ""
    if family in FIXTURES:
        return FIXTURES[family](), ""
    if family == "product-circle":
        g, text = _load_graph(args.input)
        if not isinstance(g, EvenGkmGraph):
            raise Failure("product-circle needs an even graph")
        return product_with_circle(g), text
    if family == "weyl":
        text = _read(args.input)
        return build_weyl_coset_graph(parse_root_datum(text)), text
    raise UsageError(f"unknown family {family!r}")


def cmd_build(args):
    try:
        g, text = _build(args)
    except ValueError as exc:
        if isinstance(exc, (ParseError, GraphInvalid)):
            raise
        raise UsageError(str(exc)) from None
    _emit(args, "build", _hash(args.family, text), graph_to_dict(g), serialize_graph(g))
    return EXIT_OK


def cmd_weyl(args):
    text = _read(args.datum)
    g = build_weyl_coset_graph(parse_root_datum(text))
    _emit(args, "weyl", _hash(text), graph_to_dict(g), serialize_graph(g))
    return EXIT_OK


def cmd_quotient(args):
    g, text = _load_graph(args.graph)
    if not isinstance(g, EvenGkmGraph):
        raise Failure("quotient needs an even graph")
    _require_valid(g)
    if args.group in BUILTIN_GROUPS and not os.path.exists(args.group):
        group_text = args.group
        group = generate_group(g, [make_automorphism(g, BUILTIN_GROUPS[args.group])])
    else:
        group_text = _read(args.group)
        group = parse_group(group_text, g)
    q = quotient_graph(g, group)
    _emit(args, "quotient", _hash(text, group_text), graph_to_dict(q), serialize_graph(q))
    return EXIT_OK


def cmd_compare_series(args):
    a, ta = _load_graph(args.a)
    b, tb = _load_graph(args.b)
    _require_valid(a)
    _require_valid(b)
    sa = poincare_series(a, args.max_degree, parallel=args.parallel)
    sb = poincare_series(b, args.max_degree, parallel=args.parallel)
    ok = series_factor_check(sa, sb, args.shift, args.max_degree)
    results = {"match": ok, "shift": args.shift, "a": list(sa), "b": list(sb)}
    lines = ["true" if ok else "false"]
    if not ok:
        for d in range(args.max_degree + 1):
            want = sb[d] + (sb[d - args.shift] if d >= args.shift else 0)
            if sa[d] != want:
                lines.append(f"degree {d}: {sa[d]} != {sb[d]} + {want - sb[d]}")
    _emit(args, "compare-series", _hash(ta, tb), results, "\n".join(lines))
    return EXIT_OK if ok else EXIT_FAIL


def _nonneg(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return v


def make_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "json"], default="text")
    common.add_argument("--max-degree", type=_nonneg, default=DEFAULT_MAX_DEGREE)
    common.add_argument("--cross-check", action="store_true", help="run the oracle alongside (degrees <= 8)")
    common.add_argument("--parallel", action="store_true", help="evaluate degrees in worker processes")
    common.add_argument("--seed", type=int, default=oracle.DEFAULT_SEED)

    parser = argparse.ArgumentParser(prog="gkm", description="Equivariant cohomology from GKM graphs.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common], help="check GKM graph invariants")
    p.add_argument("graph", nargs="?")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("series", parents=[common], help="graded dimensions up to --max-degree")
    p.add_argument("graph", nargs="?")
    p.set_defaults(func=cmd_series)

    p = sub.add_parser("betti", parents=[common], help="series times (1-t^2)^rank, with a formality verdict")
    p.add_argument("graph", nargs="?")
    p.add_argument("--rank", type=_nonneg)
    p.set_defaults(func=cmd_betti)

    p = sub.add_parser("basis", parents=[common], help="canonical basis of one degree")
    p.add_argument("graph", nargs="?")
    p.add_argument("--degree", type=_nonneg, required=True)
    p.set_defaults(func=cmd_basis)

    p = sub.add_parser("generators", parents=[common], help="module generators up to --max-degree")
    p.add_argument("graph", nargs="?")
    p.set_defaults(func=cmd_generators)

    p = sub.add_parser("member", parents=[common], help="test a class against the congruences")
    p.add_argument("graph", nargs="?")
    p.add_argument("--class", dest="cls", required=True, help="class document (JSON)")
    p.set_defaults(func=cmd_member)

    p = sub.add_parser("build", parents=[common], help="emit a builtin graph document")
    p.add_argument("family", choices=FAMILIES)
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int, default=2, help="lens space order")
    p.add_argument("--l", help="lens space weights, comma separated")
    p.add_argument("--input", help="input document for product-circle / weyl (default stdin)")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("weyl", parents=[common], help="coset graph from a root-datum document")
    p.add_argument("datum", nargs="?")
    p.set_defaults(func=cmd_weyl)

    p = sub.add_parser("quotient", parents=[common], help="quotient by a finite automorphism group")
    p.add_argument("graph", nargs="?")
    p.add_argument(
        "--group", required=True, help=f"group document, or one of {', '.join(BUILTIN_GROUPS)}"
    )
    p.set_defaults(func=cmd_quotient)

    p = sub.add_parser("compare-series", parents=[common], help="check a[d] == b[d] + b[d-shift]")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--shift", type=_nonneg, required=True)
    p.set_defaults(func=cmd_compare_series)
    return parser


def run(argv=None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (Failure, ParseError, InvalidGraph, GraphInvalid, VertexMismatch, KindMismatch) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (NotAutomorphism, QuotientError, GroupTooLarge, NotClosed) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()

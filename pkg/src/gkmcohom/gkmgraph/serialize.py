"""JSON documents for even/odd GKM graphs, root data, and automorphism groups."""

from __future__ import annotations

import json
import warnings

from jsonschema import Draft202012Validator

from ..polyring import LinearForm, ZeroVector
from .model import Box, DottedEdge, EvenGkmGraph, Incidence, OddGkmGraph, SolidEdge
from .weyl import RootDatum


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None, field: str | None = None):
        self.line = line
        self.field = field
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field:
            where.append(f"field {field}")
        super().__init__(f"{', '.join(where)}: {message}" if where else message)


class NonCanonicalWeight(UserWarning):
    pass


_ID = {"type": ["string", "integer"]}
_WEIGHT = {"type": "array", "items": {"type": "integer"}, "minItems": 1}

EVEN_SCHEMA = {
    "type": "object",
    "required": ["kind", "torus_rank", "gkm_degree", "vertices", "solid_edges", "dotted_edges"],
    "additionalProperties": False,
    "properties": {
        "kind": {"const": "even"},
        "torus_rank": {"type": "integer", "minimum": 1},
        "gkm_degree": {"type": "integer", "minimum": 0},
        "vertices": {"type": "array", "items": _ID},
        "solid_edges": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["u", "v", "weight"],
                "additionalProperties": False,
                "properties": {"u": _ID, "v": _ID, "weight": _WEIGHT},
            },
        },
        "dotted_edges": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["v", "weight"],
                "additionalProperties": False,
                "properties": {"v": _ID, "weight": _WEIGHT},
            },
        },
    },
}

ODD_SCHEMA = {
    "type": "object",
    "required": ["kind", "torus_rank", "vertices", "boxes", "incidences"],
    "additionalProperties": False,
    "properties": {
        "kind": {"const": "odd"},
        "torus_rank": {"type": "integer", "minimum": 1},
        "gkm_degree": {"type": "integer", "minimum": 0},
        "vertices": {"type": "array", "items": _ID},
        "boxes": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["id", "weight", "orientable"],
                "additionalProperties": False,
                "properties": {"id": _ID, "weight": _WEIGHT, "orientable": {"type": "boolean"}},
            },
        },
        "incidences": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["box", "circle", "sign"],
                "additionalProperties": False,
                "properties": {"box": _ID, "circle": _ID, "sign": {"enum": [1, -1, None]}},
            },
        },
    },
}

ROOT_DATUM_SCHEMA = {
    "type": "object",
    "required": ["torus_rank", "positive_roots_G"],
    "properties": {
        "torus_rank": {"type": "integer", "minimum": 1},
        "positive_roots_G": {"type": "array", "items": _WEIGHT},
        "positive_roots_K": {"type": "array", "items": _WEIGHT},
    },
}

GROUP_SCHEMA = {
    "type": "object",
    "required": ["generators"],
    "properties": {
        "generators": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["vertices"],
                "properties": {
                    "vertices": {"type": "object"},
                    "solid_edges": {"type": "array", "items": {"type": "integer"}},
                    "dotted_edges": {"type": "array", "items": {"type": "integer"}},
                },
            },
        }
    },
}


def _load(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, line=exc.lineno) from None


def _line_of(text: str, path) -> int | None:
    # best effort: locate the deepest key of the failing path in the source
    for key in reversed(list(path)):
        if isinstance(key, str):
            needle = json.dumps(key) + ":"
            pos = text.find(needle)
            if pos < 0:
                pos = text.find(json.dumps(key))
            if pos >= 0:
                return text.count("\n", 0, pos) + 1
    return None


def _check_schema(doc, schema, text: str):
    errors = sorted(Draft202012Validator(schema).iter_errors(doc), key=lambda e: list(e.path))
    if errors:
        err = errors[0]
        field = "/".join(str(p) for p in err.path) or "<root>"
        raise ParseError(err.message, line=_line_of(text, err.path), field=field)


def _weight(raw, field: str) -> LinearForm:
    try:
        w = LinearForm(raw)
    except ZeroVector:
        raise ParseError("weight must be nonzero", field=field) from None
    if list(w.coeffs) != list(raw):
        warnings.warn(f"{field}: weight {raw} canonicalized to {list(w.coeffs)}", NonCanonicalWeight, stacklevel=3)
    return w


def _check_rank(w: LinearForm, n: int, field: str):
    if len(w) != n:
        raise ParseError(f"weight has length {len(w)}, torus_rank is {n}", field=field)


def graph_from_dict(doc, text: str = ""):
    if not isinstance(doc, dict):
        raise ParseError("graph document must be a JSON object")
    kind = doc.get("kind")
    if kind == "even":
        _check_schema(doc, EVEN_SCHEMA, text)
        n = doc["torus_rank"]
        solid = []
        for i, e in enumerate(doc["solid_edges"]):
            w = _weight(e["weight"], f"solid_edges/{i}/weight")
            _check_rank(w, n, f"solid_edges/{i}/weight")
            solid.append(SolidEdge(e["u"], e["v"], w))
        dotted = []
        for i, d in enumerate(doc["dotted_edges"]):
            w = _weight(d["weight"], f"dotted_edges/{i}/weight")
            _check_rank(w, n, f"dotted_edges/{i}/weight")
            dotted.append(DottedEdge(d["v"], w))
        return EvenGkmGraph(n, doc["gkm_degree"], tuple(doc["vertices"]), tuple(solid), tuple(dotted))
    if kind == "odd":
        _check_schema(doc, ODD_SCHEMA, text)
        n = doc["torus_rank"]
        boxes = []
        orientable = {}
        for i, b in enumerate(doc["boxes"]):
            w = _weight(b["weight"], f"boxes/{i}/weight")
            _check_rank(w, n, f"boxes/{i}/weight")
            boxes.append(Box(b["id"], w, b["orientable"]))
            orientable[b["id"]] = b["orientable"]
        incidences = []
        for i, inc in enumerate(doc["incidences"]):
            if inc["sign"] is not None and orientable.get(inc["box"]) is False:
                raise ParseError(
                    f"sign given for non-orientable box {inc['box']!r}",
                    line=_line_of(text, ["incidences"]),
                    field=f"incidences/{i}/sign",
                )
            incidences.append(Incidence(inc["box"], inc["circle"], inc["sign"]))
        degree = doc.get("gkm_degree")
        if degree is None:
            counts = {}
            for inc in incidences:
                counts[inc.circle] = counts.get(inc.circle, 0) + 1
            degree = max(counts.values(), default=0)
        return OddGkmGraph(n, degree, tuple(doc["vertices"]), tuple(boxes), tuple(incidences))
    raise ParseError(f"unknown graph kind {kind!r}", line=_line_of(text, ["kind"]), field="kind")


def parse_graph(text: str):
    return graph_from_dict(_load(text), text)


def graph_to_dict(g) -> dict:
    if isinstance(g, EvenGkmGraph):
        return {
            "kind": "even",
            "torus_rank": g.torus_rank,
            "gkm_degree": g.gkm_degree,
            "vertices": list(g.vertices),
            "solid_edges": [{"u": e.u, "v": e.v, "weight": list(e.weight.coeffs)} for e in g.solid_edges],
            "dotted_edges": [{"v": d.v, "weight": list(d.weight.coeffs)} for d in g.dotted_edges],
        }
    if isinstance(g, OddGkmGraph):
        return {
            "kind": "odd",
            "torus_rank": g.torus_rank,
            "gkm_degree": g.gkm_degree,
            "vertices": list(g.vertices),
            "boxes": [{"id": b.id, "weight": list(b.weight.coeffs), "orientable": b.orientable} for b in g.boxes],
            "incidences": [{"box": i.box, "circle": i.circle, "sign": i.sign} for i in g.incidences],
        }
    raise TypeError(f"not a GKM graph: {type(g).__name__}")


def serialize_graph(g) -> str:
    return json.dumps(graph_to_dict(g), indent=2) + "\n"


def parse_root_datum(text: str) -> RootDatum:
    doc = _load(text)
    _check_schema(doc, ROOT_DATUM_SCHEMA, text)
    try:
        return RootDatum(doc["torus_rank"], doc["positive_roots_G"], doc.get("positive_roots_K", []))
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def serialize_root_datum(r: RootDatum) -> str:
    return json.dumps(
        {
            "torus_rank": r.torus_rank,
            "positive_roots_G": [list(x) for x in r.positive_roots_G],
            "positive_roots_K": [list(x) for x in r.positive_roots_K],
        }
    ) + "\n"


def parse_group(text: str, g: EvenGkmGraph):
    """Parse ``{"generators": [{"vertices": {id: id}, ...}]}`` and close it into a group."""
    from .covering import generate_group, make_automorphism

    doc = _load(text)
    _check_schema(doc, GROUP_SCHEMA, text)
    # JSON object keys are strings; map them back onto the graph's own ids
    by_str = {str(v): v for v in g.vertices}
    gens = []
    for i, gen in enumerate(doc["generators"]):
        vmap = {}
        for k, v in gen["vertices"].items():
            if k not in by_str or str(v) not in by_str:
                raise ParseError(f"unknown vertex in generator map {k!r} -> {v!r}", field=f"generators/{i}/vertices")
            vmap[by_str[k]] = by_str[str(v)]
        gens.append(make_automorphism(g, vmap, gen.get("solid_edges"), gen.get("dotted_edges")))
    return generate_group(g, gens)


def group_to_dict(group) -> dict:
    return {
        "generators": [
            {
                "vertices": {str(a): b for a, b in x.vertex_map},
                "solid_edges": list(x.solid_map),
                "dotted_edges": list(x.dotted_map),
            }
            for x in group
            if not x.is_identity()
        ]
    }

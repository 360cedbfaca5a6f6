"""Degree-by-degree solution of the GKM congruences over Q.

A degree-``d`` class of an even graph assigns to every vertex a homogeneous
polynomial of exponent degree ``d/2``; odd ``d`` is always zero.  For odd
graphs, even ``d`` carries the P-parts (exponent degree ``d/2``) and odd ``d``
the Q-parts (exponent degree ``(d-1)/2``), with the orientation class of the
fixed circle supplying the remaining degree.

Every congruence ``p = q mod alpha`` is linearized as
``restrict_to_hyperplane(p - q, alpha) == 0`` on monomial coefficients, and the
solution space is the exact kernel of the stacked system.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Sequence, Union

from . import linalg
from .gkmgraph.covering import GraphAutomorphism, check_group
from .gkmgraph.model import EvenGkmGraph, OddGkmGraph, validate
from .polyring import LinearForm, Polynomial, divisible_by, monomial_basis, restrict_to_hyperplane

DEFAULT_MAX_DEGREE = 16


class InvalidGraph(ValueError):
    pass


class VertexMismatch(ValueError):
    pass


class KindMismatch(TypeError):
    pass


@dataclass(frozen=True)
class EvenClass:
    assignment: dict

    def __getitem__(self, v) -> Polynomial:
        return self.assignment[v]


@dataclass(frozen=True)
class OddClass:
    """Per circle a pair (P, Q) standing for P + Q*theta, with theta^2 = 0."""

    assignment: dict

    def __getitem__(self, v) -> tuple[Polynomial, Polynomial]:
        return self.assignment[v]


GkmClass = Union[EvenClass, OddClass]


@dataclass
class GradedBasis:
    degree: int
    classes: list
    vectors: list = field(default_factory=list, repr=False)
    pivots: list = field(default_factory=list, repr=False)

    def __len__(self):
        return len(self.classes)

    def __iter__(self):
        return iter(self.classes)

    @property
    def dimension(self) -> int:
        return len(self.classes)


@dataclass(frozen=True)
class PoincareSeries:
    coefficients: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coefficients", tuple(self.coefficients))

    def __getitem__(self, d):
        return self.coefficients[d]

    def __len__(self):
        return len(self.coefficients)

    def __iter__(self):
        return iter(self.coefficients)

    @property
    def max_degree(self) -> int:
        return len(self.coefficients) - 1

    def get(self, d: int) -> int:
        return self.coefficients[d] if 0 <= d < len(self.coefficients) else 0


@dataclass(frozen=True)
class BettiResult:
    coefficients: tuple[int, ...]
    verdict: str
    max_degree: int

    @property
    def consistent(self) -> bool:
        return self.verdict == CONSISTENT


CONSISTENT = "consistent-with-formal"
INCONSISTENT = "inconsistent"


# layout of unknowns


def _check_graph(g):
    if not isinstance(g, (EvenGkmGraph, OddGkmGraph)):
        raise TypeError(f"not a GKM graph: {type(g).__name__}")
    report = validate(g)
    if report:
        raise InvalidGraph("; ".join(str(v) for v in report))


def layer(g, d: int) -> tuple[str, int] | None:
    """Which part lives in degree ``d`` and at what exponent degree; None if the layer is empty."""
    if d < 0:
        return None
    if isinstance(g, EvenGkmGraph):
        return ("f", d // 2) if d % 2 == 0 else None
    return ("P", d // 2) if d % 2 == 0 else ("Q", (d - 1) // 2)


@lru_cache(maxsize=None)
def _restriction(alpha: LinearForm, k: int) -> tuple[dict, ...]:
    """Per monomial of exponent degree k: its restriction as {target monomial: coeff}."""
    out = []
    for mono in monomial_basis(alpha.num_vars, k):
        r = restrict_to_hyperplane(Polynomial.monomial(mono), alpha)
        out.append(dict(r.terms))
    return tuple(out)


def _constraint_rows(g, d: int) -> tuple[list[dict], int]:
    part, k = layer(g, d)
    n = g.torus_rank
    size = comb(n + k - 1, k)
    index = {v: i for i, v in enumerate(g.vertices)}
    rows: list[dict] = []

    def add(alpha, signed_vertices):
        # one row per target monomial of sum_i s_i * restrict(f_{v_i})
        R = _restriction(alpha, k)
        acc: dict = {}
        for v, s in signed_vertices:
            base = index[v] * size
            for m, targets in enumerate(R):
                for t, c in targets.items():
                    row = acc.setdefault(t, {})
                    col = base + m
                    row[col] = row.get(col, 0) + s * c
        rows.extend(acc.values())

    if isinstance(g, EvenGkmGraph):
        for e in g.solid_edges:
            add(e.weight, [(e.u, 1), (e.v, -1)])
    else:
        for box in g.boxes:
            incs = [i for i in g.incidences if i.box == box.id]
            if part == "P":
                first = incs[0].circle
                for inc in incs[1:]:
                    add(box.weight, [(first, 1), (inc.circle, -1)])
            elif box.orientable:
                add(box.weight, [(inc.circle, inc.sign) for inc in incs])
    return rows, size * len(g.vertices)


@lru_cache(maxsize=256)
def _solve(g, d: int) -> tuple[tuple, tuple]:
    if layer(g, d) is None:
        return (), ()
    rows, ncols = _constraint_rows(g, d)
    basis = linalg.kernel(rows, ncols)
    _, pivots = linalg.rref(basis, ncols)
    return tuple(basis), tuple(pivots)


def vector_to_class(g, d: int, vec: dict) -> GkmClass:
    part, k = layer(g, d)
    n = g.torus_rank
    monos = monomial_basis(n, k)
    size = len(monos)
    polys = []
    for i, _ in enumerate(g.vertices):
        terms = {monos[m]: vec[i * size + m] for m in range(size) if (i * size + m) in vec}
        polys.append(Polynomial(n, terms))
    if isinstance(g, EvenGkmGraph):
        return EvenClass(dict(zip(g.vertices, polys)))
    zero = Polynomial.zero(n)
    if part == "P":
        return OddClass({v: (p, zero) for v, p in zip(g.vertices, polys)})
    return OddClass({v: (zero, q) for v, q in zip(g.vertices, polys)})


def class_to_vector(g, d: int, c: GkmClass) -> dict:
    """Coefficient vector of the degree-``d`` homogeneous layer of ``c``."""
    lay = layer(g, d)
    if lay is None:
        return {}
    part, k = lay
    monos = monomial_basis(g.torus_rank, k)
    pos = {m: i for i, m in enumerate(monos)}
    size = len(monos)
    vec = {}
    for i, v in enumerate(g.vertices):
        if isinstance(c, EvenClass):
            p = c.assignment[v]
        else:
            p = c.assignment[v][0 if part == "P" else 1]
        for mono, coeff in p.terms.items():
            if sum(mono) == k:
                vec[i * size + pos[mono]] = coeff
    return vec


def degree_component(g, d: int) -> GradedBasis:
    _check_graph(g)
    if d < 0:
        raise ValueError("degree must be nonnegative")
    basis, pivots = _solve(g, d)
    return GradedBasis(d, [vector_to_class(g, d, v) for v in basis], list(basis), list(pivots))


def degree_component_even(g: EvenGkmGraph, d: int) -> GradedBasis:
    if not isinstance(g, EvenGkmGraph):
        raise TypeError("expected an even GKM graph")
    return degree_component(g, d)


def degree_component_odd(g: OddGkmGraph, d: int) -> GradedBasis:
    if not isinstance(g, OddGkmGraph):
        raise TypeError("expected an odd GKM graph")
    return degree_component(g, d)


def dimension(g, d: int) -> int:
    _check_graph(g)
    return len(_solve(g, d)[0])


# membership and arithmetic


def _check_vertices(g, c: GkmClass):
    if set(c.assignment) != set(g.vertices):
        raise VertexMismatch(
            f"class covers {sorted(map(str, c.assignment))}, graph has {sorted(map(str, g.vertices))}"
        )


def membership(g, c: GkmClass) -> bool:
    _check_vertices(g, c)
    if isinstance(g, EvenGkmGraph):
        if not isinstance(c, EvenClass):
            raise KindMismatch("even graph needs an EvenClass")
        return all(divisible_by(c[e.u] - c[e.v], e.weight) for e in g.solid_edges)
    if not isinstance(c, OddClass):
        raise KindMismatch("odd graph needs an OddClass")
    for box in g.boxes:
        incs = [i for i in g.incidences if i.box == box.id]
        first = c[incs[0].circle][0]
        for inc in incs[1:]:
            if not divisible_by(first - c[inc.circle][0], box.weight):
                return False
        if box.orientable:
            total = Polynomial.zero(g.torus_rank)
            for inc in incs:
                total = total + c[inc.circle][1] * inc.sign
            if not divisible_by(total, box.weight):
                return False
    return True


def class_mul(a: GkmClass, b: GkmClass) -> GkmClass:
    if type(a) is not type(b):
        raise KindMismatch("cannot multiply even and odd classes")
    if set(a.assignment) != set(b.assignment):
        raise VertexMismatch("classes live on different vertex sets")
    if isinstance(a, EvenClass):
        return EvenClass({v: a[v] * b[v] for v in a.assignment})
    out = {}
    for v in a.assignment:
        p, q = a[v]
        pb, qb = b[v]
        out[v] = (p * pb, p * qb + pb * q)
    return OddClass(out)


def class_scale(r: Polynomial, c: GkmClass) -> GkmClass:
    if isinstance(c, EvenClass):
        return EvenClass({v: r * p for v, p in c.assignment.items()})
    return OddClass({v: (r * p, r * q) for v, (p, q) in c.assignment.items()})


def class_add(a: GkmClass, b: GkmClass) -> GkmClass:
    if type(a) is not type(b):
        raise KindMismatch("cannot add even and odd classes")
    if isinstance(a, EvenClass):
        return EvenClass({v: a[v] + b[v] for v in a.assignment})
    return OddClass({v: (a[v][0] + b[v][0], a[v][1] + b[v][1]) for v in a.assignment})


def unit_class(g) -> GkmClass:
    n = g.torus_rank
    one, zero = Polynomial.constant(n), Polynomial.zero(n)
    if isinstance(g, EvenGkmGraph):
        return EvenClass({v: one for v in g.vertices})
    return OddClass({v: (one, zero) for v in g.vertices})


def in_degree_span(g, d: int, c: GkmClass) -> bool:
    """Whether the degree-``d`` layer of ``c`` lies in the computed solution space."""
    basis, pivots = _solve(g, d)
    return linalg.in_span(class_to_vector(g, d, c), basis, pivots)


# series


def _dim_worker(args):
    g, d = args
    return len(_solve(g, d)[0])


def poincare_series(g, max_degree: int = DEFAULT_MAX_DEGREE, parallel: bool = False) -> PoincareSeries:
    _check_graph(g)
    if max_degree < 0:
        raise ValueError("max_degree must be nonnegative")
    degrees = range(max_degree + 1)
    if parallel:
        with ProcessPoolExecutor() as pool:
            dims = list(pool.map(_dim_worker, [(g, d) for d in degrees]))
    else:
        dims = [len(_solve(g, d)[0]) for d in degrees]
    return PoincareSeries(dims)


def point_series(rank: int, max_degree: int) -> PoincareSeries:
    """Graded dimensions of the polynomial ring itself."""
    return PoincareSeries(
        comb(rank + d // 2 - 1, d // 2) if d % 2 == 0 else 0 for d in range(max_degree + 1)
    )


def betti_polynomial(s: PoincareSeries | Sequence[int], rank: int, max_degree: int | None = None) -> BettiResult:
    """Multiply the series by (1 - t^2)^rank.

    Coefficient j of the product only uses series coefficients of degree <= j,
    so every coefficient up to the truncation degree is exact.
    """
    coeffs = list(s)
    top = len(coeffs) - 1 if max_degree is None else min(max_degree, len(coeffs) - 1)
    out = []
    for j in range(top + 1):
        total = 0
        for i in range(rank + 1):
            if 2 * i > j:
                break
            total += (-1) ** i * comb(rank, i) * coeffs[j - 2 * i]
        out.append(total)
    verdict = CONSISTENT if all(c >= 0 for c in out) else INCONSISTENT
    return BettiResult(tuple(out), verdict, top)


def render_t_polynomial(coeffs: Sequence[int]) -> str:
    parts = []
    for d, c in enumerate(coeffs):
        if not c:
            continue
        mono = "" if d == 0 else ("t" if d == 1 else f"t^{d}")
        mag = abs(c)
        body = mono if mag == 1 and mono else (f"{mag}" + (f"*{mono}" if mono else ""))
        parts.append(("-" if c < 0 else "+", body))
    if not parts:
        return "0"
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def series_factor_check(a, b, shift: int, max_degree: int) -> bool:
    """a[d] == b[d] + b[d - shift] for all d <= max_degree."""
    a, b = list(a), list(b)
    if len(a) <= max_degree or len(b) <= max_degree:
        raise ValueError("series not computed up to max_degree")
    for d in range(max_degree + 1):
        extra = b[d - shift] if d - shift >= 0 else 0
        if a[d] != b[d] + extra:
            return False
    return True


def free_module_series(generator_degrees: Sequence[int], rank: int, max_degree: int) -> PoincareSeries:
    """Series of a free module with the given generator degrees."""
    pt = point_series(rank, max_degree)
    out = [0] * (max_degree + 1)
    for e in generator_degrees:
        for d in range(e, max_degree + 1):
            out[d] += pt[d - e]
    return PoincareSeries(out)


# generators


def module_generators(g, max_degree: int = DEFAULT_MAX_DEGREE) -> list[tuple[int, GkmClass]]:
    """Minimal module generators found up to ``max_degree``.

    In each degree the solution space is reduced modulo the span of monomial
    multiples of generators found earlier; the surviving canonical basis
    vectors become new generators.  Nothing is claimed beyond ``max_degree``.
    """
    _check_graph(g)
    n = g.torus_rank
    gens: list[tuple[int, GkmClass]] = []
    for d in range(max_degree + 1):
        basis, _ = _solve(g, d)
        if not basis:
            continue
        lay = layer(g, d)
        ncols = comb(n + lay[1] - 1, lay[1]) * len(g.vertices)
        spanning = []
        for e, c in gens:
            if (d - e) % 2:
                continue
            for mono in monomial_basis(n, (d - e) // 2):
                spanning.append(class_to_vector(g, d, class_scale(Polynomial.monomial(mono), c)))
        span, pivots = linalg.rref(spanning, ncols)
        span, pivots = list(span), list(pivots)
        for vec in basis:
            if not linalg.in_span(vec, span, pivots):
                gens.append((d, vector_to_class(g, d, vec)))
                span, pivots = linalg.rref(span + [vec], ncols)
    return gens


# group actions


def act(gamma: GraphAutomorphism, c: GkmClass) -> GkmClass:
    """(gamma . f)_v = f_{gamma^{-1} v}."""
    vmap = gamma.vertices
    return type(c)({vmap[v]: val for v, val in c.assignment.items()})


def invariant_dimension(g: EvenGkmGraph, group: Sequence[GraphAutomorphism], d: int) -> int:
    """Rank of the group-averaging projector on the degree-``d`` solution space."""
    _check_graph(g)
    group = check_group(g, group)
    basis, _ = _solve(g, d)
    if not basis:
        return 0
    lay = layer(g, d)
    size = comb(g.torus_rank + lay[1] - 1, lay[1])
    index = {v: i for i, v in enumerate(g.vertices)}
    order = Fraction(1, len(group))
    averaged = []
    for vec in basis:
        acc: dict = {}
        for gamma in group:
            vmap = gamma.vertices
            for col, x in vec.items():
                block, m = divmod(col, size)
                target = index[vmap[g.vertices[block]]] * size + m
                acc[target] = acc.get(target, 0) + x * order
        averaged.append(acc)
    ncols = size * len(g.vertices)
    return linalg.rank(averaged, ncols)

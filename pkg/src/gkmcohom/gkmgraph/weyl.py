"""GKM graphs of equal-rank homogeneous spaces G/K from root data."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .model import DottedEdge, EvenGkmGraph, SolidEdge, canonical_weight

DEFAULT_GROUP_CAP = 10080

Matrix = tuple[tuple[Fraction, ...], ...]


class GroupTooLarge(RuntimeError):
    pass


class NotClosed(ValueError):
    pass


@dataclass(frozen=True)
class RootDatum:
    torus_rank: int
    positive_roots_G: tuple[tuple[int, ...], ...]
    positive_roots_K: tuple[tuple[int, ...], ...] = ()

    def __post_init__(self):
        g = tuple(tuple(int(x) for x in r) for r in self.positive_roots_G)
        k = tuple(tuple(int(x) for x in r) for r in self.positive_roots_K)
        object.__setattr__(self, "positive_roots_G", g)
        object.__setattr__(self, "positive_roots_K", k)
        for r in g + k:
            if len(r) != self.torus_rank:
                raise ValueError(f"root {r} does not have length {self.torus_rank}")
            if not any(r):
                raise ValueError("roots must be nonzero")
        g_canon = {canonical_weight(r) for r in g}
        for r in k:
            if canonical_weight(r) not in g_canon:
                raise ValueError(f"K-root {r} is not a G-root")


def reflection(alpha) -> Matrix:
    """Matrix of x -> x - 2 (x.alpha)/(alpha.alpha) alpha for the standard inner product."""
    n = len(alpha)
    norm = sum(a * a for a in alpha)
    return tuple(
        tuple(Fraction(int(i == j)) - Fraction(2 * alpha[i] * alpha[j], norm) for j in range(n))
        for i in range(n)
    )


def identity(n: int) -> Matrix:
    return tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))


def matmul(a: Matrix, b: Matrix) -> Matrix:
    n = len(a)
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)) for i in range(n))


def apply(m: Matrix, v) -> tuple[Fraction, ...]:
    return tuple(sum(row[j] * v[j] for j in range(len(v))) for row in m)


def close_group(n: int, generators, cap: int = DEFAULT_GROUP_CAP) -> list[Matrix]:
    """All products of ``generators``, in breadth-first discovery order."""
    gens = list(generators)
    elements = [identity(n)]
    seen = {elements[0]}
    frontier = [elements[0]]
    while frontier:
        nxt = []
        for w in frontier:
            for s in gens:
                ws = matmul(w, s)
                if ws not in seen:
                    seen.add(ws)
                    elements.append(ws)
                    nxt.append(ws)
                    if len(elements) > cap:
                        raise GroupTooLarge(f"reflection group exceeds {cap} elements")
        frontier = nxt
    return elements


def weyl_cosets(r: RootDatum, cap: int = DEFAULT_GROUP_CAP):
    """Return (W_G elements, W_K elements, coset index per W_G element, coset representatives)."""
    n = r.torus_rank
    W_G = close_group(n, [reflection(a) for a in r.positive_roots_G], cap)
    W_K = close_group(n, [reflection(a) for a in r.positive_roots_K], cap)
    members = set(W_G)
    for k in W_K:
        if k not in members:
            raise NotClosed("K-root reflections generate elements outside W_G")
    coset_of: dict[Matrix, int] = {}
    reps: list[Matrix] = []
    for w in W_G:
        if w in coset_of:
            continue
        idx = len(reps)
        reps.append(w)
        for k in W_K:
            coset_of[matmul(w, k)] = idx
    return W_G, W_K, coset_of, reps


def build_weyl_coset_graph(r: RootDatum, cap: int = DEFAULT_GROUP_CAP, prefix: str = "w") -> EvenGkmGraph:
    _, _, coset_of, reps = weyl_cosets(r, cap)
    k_canon = {canonical_weight(a) for a in r.positive_roots_K}
    edge_roots = [a for a in r.positive_roots_G if canonical_weight(a) not in k_canon]
    ids = [f"{prefix}{i}" for i in range(len(reps))]
    solid: dict[tuple, SolidEdge] = {}
    dotted: list[DottedEdge] = []
    for i, w in enumerate(reps):
        for a in edge_roots:
            weight = canonical_weight(apply(w, a))
            j = coset_of[matmul(w, reflection(a))]
            if j == i:
                dotted.append(DottedEdge(ids[i], weight))
                continue
            key = (min(i, j), max(i, j), weight)
            if key not in solid:
                solid[key] = SolidEdge(ids[key[0]], ids[key[1]], weight)
    return EvenGkmGraph(
        torus_rank=r.torus_rank,
        gkm_degree=len(edge_roots),
        vertices=tuple(ids),
        solid_edges=tuple(solid[k] for k in sorted(solid, key=lambda k: (k[0], k[1], k[2].coeffs))),
        dotted_edges=tuple(dotted),
    )


def unitary_roots(n: int) -> list[tuple[int, ...]]:
    """Positive roots a_j - a_i (i < j) of U(n)."""
    out = []
    for i in range(n):
        for j in range(i + 1, n):
            v = [0] * n
            v[j] += 1
            v[i] -= 1
            out.append(tuple(v))
    return out

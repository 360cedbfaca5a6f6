"""Independent cross-checks for the solver.

Everything here deliberately takes the other road: divisibility by long
division in the *last* variable of the linear form, congruences encoded with
explicit auxiliary quotients ``p - q = alpha * h``, and ranks computed by
sympy's exact domain matrices instead of the package's own elimination.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from .gkmgraph.model import EvenGkmGraph, OddGkmGraph
from .polyring import LinearForm, Polynomial

DEFAULT_SEED = 20240917
DEFAULT_DEGREE_CAP = 8


class DegreeTooLarge(ValueError):
    pass


@dataclass(frozen=True)
class OracleConfig:
    trials: int = 20
    seed: int = DEFAULT_SEED
    coefficient_bound: int = 50

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if self.coefficient_bound < 1:
            raise ValueError("coefficient_bound must be >= 1")


def _form(alpha) -> tuple[int, ...]:
    return tuple(alpha.coeffs) if isinstance(alpha, LinearForm) else tuple(alpha)


def divisibility_by_division(p: Polynomial, alpha) -> bool:
    """Long division by ``alpha`` in its last variable; True iff the remainder vanishes."""
    a = _form(alpha)
    if not any(a):
        raise ValueError("alpha must be nonzero")
    k = max(i for i, c in enumerate(a) if c)
    lead = Fraction(a[k])
    rem = dict(p.terms)
    while True:
        tops = [m for m in rem if m[k] > 0]
        if not tops:
            break
        m = max(tops, key=lambda m: (m[k], m))
        c = rem.pop(m) / lead
        q = m[:k] + (m[k] - 1,) + m[k + 1 :]
        for i, ai in enumerate(a):
            if i == k or not ai:
                continue
            t = q[:i] + (q[i] + 1,) + q[i + 1 :]
            v = rem.get(t, 0) - c * ai
            if v:
                rem[t] = v
            else:
                rem.pop(t, None)
    # what is left is free of x_k; it must vanish identically
    return not rem


def random_hyperplane_check(p: Polynomial, alpha, cfg: OracleConfig = OracleConfig()) -> bool:
    """Evaluate ``p`` at random rational points of ``alpha = 0``; False on any nonzero value."""
    a = _form(alpha)
    if not any(a):
        raise ValueError("alpha must be nonzero")
    k = max(i for i, c in enumerate(a) if c)
    rng = random.Random(cfg.seed)
    b = cfg.coefficient_bound
    for _ in range(cfg.trials):
        point = [Fraction(0)] * len(a)
        for i in range(len(a)):
            if i != k:
                point[i] = Fraction(rng.randint(-b, b), rng.randint(1, b))
        point[k] = -sum(a[i] * point[i] for i in range(len(a)) if i != k) / a[k]
        if p.evaluate(point) != 0:
            return False
    return True


def _monomials(n: int, k: int) -> list[tuple[int, ...]]:
    # plain lexicographic enumeration, independent of polyring's ordering
    out = set()
    for combo in combinations_with_replacement(range(n), k):
        m = [0] * n
        for i in combo:
            m[i] += 1
        out.add(tuple(m))
    return sorted(out)


def _congruences(g, d: int):
    """(alpha, [(vertex, sign), ...], exponent degree) for every congruence in degree d."""
    if isinstance(g, EvenGkmGraph):
        if d % 2:
            return None
        k = d // 2
        return k, [(e.weight.coeffs, [(e.u, 1), (e.v, -1)]) for e in g.solid_edges]
    out = []
    if d % 2 == 0:
        k = d // 2
        for box in g.boxes:
            circles = [i.circle for i in g.incidences if i.box == box.id]
            for c in circles[1:]:
                out.append((box.weight.coeffs, [(circles[0], 1), (c, -1)]))
    else:
        k = (d - 1) // 2
        for box in g.boxes:
            if box.orientable:
                out.append(
                    (box.weight.coeffs, [(i.circle, i.sign) for i in g.incidences if i.box == box.id])
                )
    return k, out


def brute_force_dimension(g, d: int, cap: int = DEFAULT_DEGREE_CAP) -> int:
    """Dimension of the degree-``d`` solution space via auxiliary unknowns.

    Each congruence ``sum s_i f_i = 0 mod alpha`` becomes ``sum s_i f_i - alpha*h = 0``
    with a fresh unknown ``h`` of exponent degree one less.  Multiplication by
    a nonzero ``alpha`` is injective, so the kernel dimension of the stacked
    system equals the dimension of the admissible ``f``.
    """
    if not isinstance(g, (EvenGkmGraph, OddGkmGraph)):
        raise TypeError("not a GKM graph")
    if d > cap:
        raise DegreeTooLarge(f"degree {d} exceeds oracle cap {cap}")
    if d < 0:
        return 0
    layout = _congruences(g, d)
    if layout is None:
        return 0
    k, congruences = layout
    n = g.torus_rank
    monos = _monomials(n, k)
    lower = _monomials(n, k - 1) if k >= 1 else []
    mpos = {m: i for i, m in enumerate(monos)}
    vpos = {v: i for i, v in enumerate(g.vertices)}
    nf = len(g.vertices) * len(monos)
    ncols = nf + len(congruences) * len(lower)
    rows = []
    for ci, (alpha, signed) in enumerate(congruences):
        eqs: dict[tuple, dict[int, int]] = {m: {} for m in monos}
        for v, s in signed:
            for m in monos:
                col = vpos[v] * len(monos) + mpos[m]
                eqs[m][col] = eqs[m].get(col, 0) + s
        hbase = nf + ci * len(lower)
        for j, hm in enumerate(lower):
            for i, ai in enumerate(alpha):
                if ai:
                    t = hm[:i] + (hm[i] + 1,) + hm[i + 1 :]
                    eqs[t][hbase + j] = eqs[t].get(hbase + j, 0) - ai
        for eq in eqs.values():
            row = [QQ(0)] * ncols
            for col, val in eq.items():
                row[col] = QQ(val)
            rows.append(row)
    if not rows or ncols == 0:
        return ncols
    r = DomainMatrix(rows, (len(rows), ncols), QQ).rank()
    return ncols - r


def class_satisfies_congruences(g, c, cfg: OracleConfig = OracleConfig()) -> bool:
    """Check a solver class by sampling each congruence on its hyperplane."""
    if isinstance(g, EvenGkmGraph):
        f = c.assignment
        return all(random_hyperplane_check(f[e.u] - f[e.v], e.weight, cfg) for e in g.solid_edges)
    parts = c.assignment
    for box in g.boxes:
        inc = [i for i in g.incidences if i.box == box.id]
        p0 = parts[inc[0].circle][0]
        for i in inc[1:]:
            if not random_hyperplane_check(p0 - parts[i.circle][0], box.weight, cfg):
                return False
        if box.orientable:
            total = Polynomial.zero(g.torus_rank)
            for i in inc:
                total = total + parts[i.circle][1] * i.sign
            if not random_hyperplane_check(total, box.weight, cfg):
                return False
    return True


def product_congruence_dimension(n: int, factors, d: int) -> int:
    """Dimension in degree ``d`` of pairs (f, g) with f - g divisible by the product of ``factors``.

    Encoded as ``f - g - (prod factors) * h = 0`` and ranked with sympy.
    """
    if d < 0 or d % 2:
        return 0
    k = d // 2
    modulus = Polynomial.constant(n)
    for a in factors:
        modulus = modulus * Polynomial.linear(_form(a))
    monos = _monomials(n, k)
    hk = k - modulus.degree()
    lower = _monomials(n, hk) if hk >= 0 else []
    pos = {m: i for i, m in enumerate(monos)}
    ncols = 2 * len(monos) + len(lower)
    eqs = {m: {pos[m]: 1, len(monos) + pos[m]: -1} for m in monos}
    for j, hm in enumerate(lower):
        for mm, c in modulus.terms.items():
            t = tuple(x + y for x, y in zip(hm, mm))
            col = 2 * len(monos) + j
            eqs[t][col] = eqs[t].get(col, 0) - c
    rows = []
    for eq in eqs.values():
        row = [QQ(0)] * ncols
        for col, val in eq.items():
            row[col] = QQ(val.numerator, val.denominator) if isinstance(val, Fraction) else QQ(val)
        rows.append(row)
    return ncols - DomainMatrix(rows, (len(rows), ncols), QQ).rank()

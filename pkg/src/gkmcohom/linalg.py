"""Sparse exact Gaussian elimination over Q.

Rows are ``dict[column, Fraction]`` with no zero entries.  Everything here is
deterministic: pivot rows are picked by largest absolute numerator, ties by
first occurrence, and outputs are in reduced row echelon form.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

Row = dict[int, Fraction]


def _clean(row: dict) -> Row:
    return {j: Fraction(v) for j, v in row.items() if v}


def rref(rows: Iterable[dict], ncols: int) -> tuple[list[Row], list[int]]:
    """Reduced row echelon form. Returns (nonzero rows, pivot columns), both ordered by pivot."""
    work = [_clean(r) for r in rows]
    work = [r for r in work if r]
    # column -> rows touching it, maintained lazily
    pivots: list[tuple[int, Row]] = []
    remaining = work
    for col in range(ncols):
        if not remaining:
            break
        best = None
        for idx, r in enumerate(remaining):
            v = r.get(col)
            if v is not None and (best is None or abs(v.numerator) > abs(remaining[best][col].numerator)):
                best = idx
        if best is None:
            continue
        prow = remaining.pop(best)
        inv = 1 / prow[col]
        prow = {j: v * inv for j, v in prow.items()}
        nxt = []
        for r in remaining:
            f = r.get(col)
            if f is not None:
                for j, v in prow.items():
                    nv = r.get(j, 0) - f * v
                    if nv:
                        r[j] = nv
                    else:
                        r.pop(j, None)
            if r:
                nxt.append(r)
        remaining = nxt
        pivots.append((col, prow))
    # back substitution
    for i in range(len(pivots) - 1, -1, -1):
        col, prow = pivots[i]
        for k in range(i):
            _, r = pivots[k]
            f = r.get(col)
            if f is not None:
                for j, v in prow.items():
                    nv = r.get(j, 0) - f * v
                    if nv:
                        r[j] = nv
                    else:
                        r.pop(j, None)
    return [r for _, r in pivots], [c for c, _ in pivots]


def rank(rows: Iterable[dict], ncols: int) -> int:
    return len(rref(rows, ncols)[0])


def kernel(rows: Iterable[dict], ncols: int) -> list[Row]:
    """Basis of the null space, normalized to reduced row echelon form."""
    reduced, pivot_cols = rref(rows, ncols)
    pivot_set = set(pivot_cols)
    vectors = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        v: Row = {free: Fraction(1)}
        for col, r in zip(pivot_cols, reduced):
            x = r.get(free)
            if x:
                v[col] = -x
        vectors.append(v)
    basis, _ = rref(vectors, ncols)
    return basis


def in_span(vector: dict, basis_rref: Sequence[Row], pivot_cols: Sequence[int]) -> bool:
    """Membership test against a basis already in reduced row echelon form."""
    v = _clean(vector)
    for col, r in zip(pivot_cols, basis_rref):
        f = v.get(col)
        if f:
            for j, x in r.items():
                nv = v.get(j, 0) - f * x
                if nv:
                    v[j] = nv
                else:
                    v.pop(j, None)
    return not v


def to_dense(row: Row, ncols: int) -> list[Fraction]:
    out = [Fraction(0)] * ncols
    for j, v in row.items():
        out[j] = v
    return out

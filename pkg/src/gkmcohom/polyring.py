"""Exact multivariate polynomials over the rationals.

Variables ``a1..an`` stand for a basis of the weight lattice; each carries
cohomological degree 2.  Polynomials are immutable, keyed by exponent tuples,
and never touch floating point.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement
from math import gcd
from typing import Iterable, Mapping

Monomial = tuple[int, ...]


class NotDivisible(ArithmeticError):
    pass


def _glex_key(mono: Monomial):
    # graded-lex: lower total degree first, then lex-descending exponents
    return (sum(mono), tuple(-e for e in mono))


class LinearForm:
    """Primitive integer covector, sign-normalized so the first nonzero entry is positive."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int]):
        coeffs = tuple(int(c) for c in coeffs)
        if not coeffs or not any(coeffs):
            raise ZeroVector(f"zero vector {coeffs!r} has no canonical form")
        g = 0
        for c in coeffs:
            g = gcd(g, c)
        coeffs = tuple(c // g for c in coeffs)
        if next(c for c in coeffs if c) < 0:
            coeffs = tuple(-c for c in coeffs)
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, name, value):
        raise AttributeError("LinearForm is immutable")

    def __reduce__(self):
        return (LinearForm, (self.coeffs,))

    @property
    def num_vars(self) -> int:
        return len(self.coeffs)

    @property
    def first_index(self) -> int:
        return next(i for i, c in enumerate(self.coeffs) if c)

    def __eq__(self, other):
        return isinstance(other, LinearForm) and self.coeffs == other.coeffs

    def __lt__(self, other):
        return self.coeffs < other.coeffs

    def __hash__(self):
        return hash(("LinearForm", self.coeffs))

    def __iter__(self):
        return iter(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    def __repr__(self):
        return f"LinearForm({list(self.coeffs)})"

    def __str__(self):
        return str(self.lift())

    def is_parallel(self, other: "LinearForm") -> bool:
        return self.coeffs == other.coeffs

    def lift(self) -> "Polynomial":
        return Polynomial.linear(self.coeffs)


class ZeroVector(ValueError):
    pass


class Polynomial:
    __slots__ = ("num_vars", "terms", "_hash")

    def __init__(self, num_vars: int, terms: Mapping[Monomial, object] | None = None):
        if num_vars < 0:
            raise ValueError("num_vars must be nonnegative")
        clean: dict[Monomial, Fraction] = {}
        for mono, c in (terms or {}).items():
            mono = tuple(int(e) for e in mono)
            if len(mono) != num_vars:
                raise ValueError(f"monomial {mono} does not have {num_vars} exponents")
            if any(e < 0 for e in mono):
                raise ValueError(f"negative exponent in {mono}")
            c = Fraction(c)
            if c:
                clean[mono] = clean.get(mono, Fraction(0)) + c
                if not clean[mono]:
                    del clean[mono]
        object.__setattr__(self, "num_vars", num_vars)
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    def __reduce__(self):
        return (Polynomial, (self.num_vars, self.terms))

    # constructors

    @classmethod
    def zero(cls, n: int) -> "Polynomial":
        return cls(n)

    @classmethod
    def constant(cls, n: int, c=1) -> "Polynomial":
        return cls(n, {(0,) * n: c})

    @classmethod
    def variable(cls, n: int, i: int) -> "Polynomial":
        mono = [0] * n
        mono[i] = 1
        return cls(n, {tuple(mono): 1})

    @classmethod
    def monomial(cls, mono: Monomial, c=1) -> "Polynomial":
        return cls(len(mono), {tuple(mono): c})

    @classmethod
    def linear(cls, coeffs: Iterable[int]) -> "Polynomial":
        coeffs = tuple(coeffs)
        n = len(coeffs)
        terms = {}
        for i, c in enumerate(coeffs):
            mono = [0] * n
            mono[i] = 1
            terms[tuple(mono)] = c
        return cls(n, terms)

    # queries

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def degree(self) -> int:
        """Exponent degree (half the cohomological degree); -1 for the zero polynomial."""
        return max((sum(m) for m in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self.terms}) <= 1

    def homogeneous_part(self, k: int) -> "Polynomial":
        return Polynomial(self.num_vars, {m: c for m, c in self.terms.items() if sum(m) == k})

    def coefficient(self, mono: Monomial) -> Fraction:
        return self.terms.get(tuple(mono), Fraction(0))

    def sorted_terms(self) -> list[tuple[Monomial, Fraction]]:
        return sorted(self.terms.items(), key=lambda t: _glex_key(t[0]))

    def evaluate(self, point) -> Fraction:
        total = Fraction(0)
        for mono, c in self.terms.items():
            v = c
            for x, e in zip(point, mono):
                if e:
                    v *= Fraction(x) ** e
            total += v
        return total

    # arithmetic

    def _check(self, other: "Polynomial"):
        if self.num_vars != other.num_vars:
            raise ValueError(f"variable-count mismatch: {self.num_vars} vs {other.num_vars}")

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(self.num_vars, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = dict(self.terms)
        for m, c in other.terms.items():
            terms[m] = terms.get(m, 0) + c
        return Polynomial(self.num_vars, terms)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.num_vars, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Polynomial(self.num_vars, {m: c * other for m, c in self.terms.items()})
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check(other)
        terms: dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                terms[m] = terms.get(m, 0) + c1 * c2
        return Polynomial(self.num_vars, terms)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        result = Polynomial.constant(self.num_vars)
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(self.num_vars, other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.num_vars == other.num_vars and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(
                self, "_hash", hash((self.num_vars, frozenset(self.terms.items())))
            )
        return self._hash

    def __repr__(self):
        return f"Polynomial({self.num_vars}, {str(self)!r})"

    def __str__(self):
        return render(self)


def poly_add(a: Polynomial, b: Polynomial) -> Polynomial:
    a._check(b)
    return a + b


def poly_mul(a: Polynomial, b: Polynomial) -> Polynomial:
    a._check(b)
    return a * b


@lru_cache(maxsize=None)
def _monomial_basis(n: int, k: int) -> tuple[Monomial, ...]:
    monos = []
    for combo in combinations_with_replacement(range(n), k):
        mono = [0] * n
        for i in combo:
            mono[i] += 1
        monos.append(tuple(mono))
    monos.sort(key=_glex_key)
    return tuple(monos)


def monomial_basis(n: int, k: int) -> list[Monomial]:
    """All exponent vectors of length ``n`` summing to ``k``, in graded-lex order."""
    if n < 1 or k < 0:
        raise ValueError("need n >= 1 and k >= 0")
    return list(_monomial_basis(n, k))


def _as_form(alpha) -> LinearForm:
    return alpha if isinstance(alpha, LinearForm) else LinearForm(alpha)


def restrict_to_hyperplane(p: Polynomial, alpha) -> Polynomial:
    """Substitute away the first variable with nonzero coefficient in ``alpha``.

    The result stays in the same ambient ring (the eliminated variable simply
    no longer appears) and vanishes exactly when ``alpha`` divides ``p``.
    """
    alpha = _as_form(alpha)
    if alpha.num_vars != p.num_vars:
        raise ValueError("variable-count mismatch")
    k = alpha.first_index
    ak = alpha.coeffs[k]
    # x_k = sum_{i != k} r_i x_i
    sub = Polynomial(
        p.num_vars,
        {
            tuple(1 if j == i else 0 for j in range(p.num_vars)): Fraction(-c, ak)
            for i, c in enumerate(alpha.coeffs)
            if i != k and c
        },
    )
    powers = [Polynomial.constant(p.num_vars)]
    result = Polynomial.zero(p.num_vars)
    for mono, c in p.terms.items():
        e = mono[k]
        while len(powers) <= e:
            powers.append(powers[-1] * sub)
        rest = mono[:k] + (0,) + mono[k + 1 :]
        result = result + powers[e] * Polynomial.monomial(rest, c)
    return result


def divisible_by(p: Polynomial, alpha) -> bool:
    return restrict_to_hyperplane(p, alpha).is_zero()


def divide_by_linear(p: Polynomial, alpha) -> Polynomial:
    """Exact quotient ``p / alpha``; raises :class:`NotDivisible` otherwise."""
    alpha = _as_form(alpha)
    if alpha.num_vars != p.num_vars:
        raise ValueError("variable-count mismatch")
    k = alpha.first_index
    ak = Fraction(alpha.coeffs[k])
    remainder = dict(p.terms)
    quotient: dict[Monomial, Fraction] = {}
    while True:
        # leading term w.r.t. the power of x_k, ties broken by graded-lex
        candidates = [m for m in remainder if m[k] > 0]
        if not candidates:
            break
        lead = max(candidates, key=lambda m: (m[k], _glex_key(m)))
        c = remainder[lead] / ak
        q_mono = lead[:k] + (lead[k] - 1,) + lead[k + 1 :]
        quotient[q_mono] = quotient.get(q_mono, 0) + c
        for i, a in enumerate(alpha.coeffs):
            if not a:
                continue
            m = q_mono[:i] + (q_mono[i] + 1,) + q_mono[i + 1 :]
            v = remainder.get(m, 0) - c * a
            if v:
                remainder[m] = v
            else:
                remainder.pop(m, None)
    if remainder:
        raise NotDivisible(f"{render(p)} is not divisible by {alpha}")
    return Polynomial(p.num_vars, quotient)


# serialization


def serialize_poly(p: Polynomial) -> list:
    return [[list(m), c.numerator, c.denominator] for m, c in p.sorted_terms()]


def parse_poly(data, num_vars: int) -> Polynomial:
    terms: dict[Monomial, Fraction] = {}
    for entry in data:
        if len(entry) != 3:
            raise ValueError(f"polynomial term must be [exponents, num, den], got {entry!r}")
        mono, num, den = entry
        if len(mono) != num_vars:
            raise ValueError(f"term {entry!r} does not have {num_vars} exponents")
        if not isinstance(num, int) or not isinstance(den, int) or den <= 0:
            raise ValueError(f"bad coefficient in term {entry!r}")
        mono = tuple(mono)
        terms[mono] = terms.get(mono, 0) + Fraction(num, den)
    return Polynomial(num_vars, terms)


def render(p: Polynomial, names: list[str] | None = None) -> str:
    if p.is_zero():
        return "0"
    names = names or [f"a{i + 1}" for i in range(p.num_vars)]
    parts = []
    for mono, c in sorted(p.terms.items(), key=lambda t: (-sum(t[0]), tuple(-e for e in t[0]))):
        factors = []
        for name, e in zip(names, mono):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}^{e}")
        body = "*".join(factors)
        mag = abs(c)
        if not body:
            text = str(mag)
        elif mag == 1:
            text = body
        else:
            text = f"{mag}*{body}"
        parts.append(("-" if c < 0 else "+", text))
    sign, text = parts[0]
    out = ("-" if sign == "-" else "") + text
    for sign, text in parts[1:]:
        out += f" {sign} {text}"
    return out

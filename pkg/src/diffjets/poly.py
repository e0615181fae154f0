"""Sparse exact multivariate polynomials over a fixed, small set of variables.

Exponent vectors are dense tuples of naturals; coefficients are exact
rationals (``gmpy2.mpq``).  Orderings follow the convention
``x_0 < x_1 < ... < x_N`` (for grids ``x_{0,0} < x_{0,1} < ... < x_{m,n}``).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterable, Mapping

import gmpy2
from gmpy2 import mpq

ExpVec = tuple[int, ...]

LT, EQ, GT = -1, 0, 1


def to_rational(c) -> mpq:
    """Coerce ints, Fractions, mpq and "num/den" strings to ``mpq``."""
    if isinstance(c, str):
        c = Fraction(c)
    return mpq(c)


def format_rational(c) -> str:
    c = mpq(c)
    return f"{c.numerator}/{c.denominator}"


@dataclass(frozen=True)
class VarSpace:
    """Either a chain ``x_0..x_n`` or a grid ``x_{k,l}``, 0<=k<=m, 0<=l<=n.

    Grid variables are flattened row-major: ``flat = k*(n+1) + l``.
    """

    n: int
    m: int | None = None

    @classmethod
    def chain(cls, n: int) -> VarSpace:
        if n < 0:
            raise ValueError("chain length must be >= 0")
        return cls(n=n)

    @classmethod
    def grid(cls, m: int, n: int) -> VarSpace:
        if m < 0 or n < 0:
            raise ValueError("grid bounds must be >= 0")
        return cls(n=n, m=m)

    @property
    def is_grid(self) -> bool:
        return self.m is not None

    @property
    def size(self) -> int:
        if self.m is None:
            return self.n + 1
        return (self.m + 1) * (self.n + 1)

    def index(self, k: int, l: int | None = None) -> int:
        if self.m is None:
            if l is not None or not 0 <= k <= self.n:
                raise IndexError(k)
            return k
        if l is None or not (0 <= k <= self.m and 0 <= l <= self.n):
            raise IndexError((k, l))
        return k * (self.n + 1) + l

    def coords(self, i: int):
        if not 0 <= i < self.size:
            raise IndexError(i)
        if self.m is None:
            return i
        return divmod(i, self.n + 1)

    def name(self, i: int) -> str:
        if self.m is None:
            return f"x{i}"
        k, l = self.coords(i)
        return f"x{k}{l}" if self.m < 10 and self.n < 10 else f"x{k}_{l}"

    def describe(self) -> dict:
        if self.m is None:
            return {"shape": "chain", "n": self.n}
        return {"shape": "grid", "m": self.m, "n": self.n}

    @classmethod
    def from_description(cls, d: Mapping) -> VarSpace:
        if d["shape"] == "chain":
            return cls.chain(d["n"])
        if d["shape"] == "grid":
            return cls.grid(d["m"], d["n"])
        raise ValueError(f"unknown shape {d['shape']!r}")


def divides(a: ExpVec, b: ExpVec) -> bool:
    return all(x <= y for x, y in zip(a, b))


def exp_lcm(a: ExpVec, b: ExpVec) -> ExpVec:
    return tuple(max(x, y) for x, y in zip(a, b))


def exp_add(a: ExpVec, b: ExpVec) -> ExpVec:
    return tuple(x + y for x, y in zip(a, b))


def exp_sub(a: ExpVec, b: ExpVec) -> ExpVec:
    r = tuple(x - y for x, y in zip(a, b))
    if min(r, default=0) < 0:
        raise ValueError(f"{b} does not divide {a}")
    return r


@dataclass(frozen=True)
class MonomialOrdering:
    """Graded reverse lexicographic order, optionally refined by a weight.

    ``a > b`` under plain revlex iff ``deg a > deg b``, or the degrees agree
    and the first nonzero entry of ``a - b`` is negative (the variable of
    lowest index is the cheapest).  With weights, ``w.a`` is compared first.
    """

    space: VarSpace
    weights: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.weights is not None:
            w = tuple(int(x) for x in self.weights)
            if len(w) != self.space.size:
                raise ValueError("weight vector has wrong length")
            if min(w) < 0:
                raise ValueError("weights must be nonnegative")
            object.__setattr__(self, "weights", w)

    @classmethod
    def degrevlex(cls, space: VarSpace) -> MonomialOrdering:
        return cls(space)

    @classmethod
    def weighted(cls, space: VarSpace, weights: Iterable[int]) -> MonomialOrdering:
        return cls(space, tuple(weights))

    @property
    def kind(self) -> str:
        return "degrevlex" if self.weights is None else "weighted-revlex"

    def key(self, a: ExpVec) -> tuple:
        """Sort key, increasing along the order."""
        tail = (sum(a),) + tuple(-x for x in a)
        if self.weights is None:
            return tail
        return (sum(w * x for w, x in zip(self.weights, a)),) + tail

    def compare(self, a: ExpVec, b: ExpVec) -> int:
        if len(a) != self.space.size or len(b) != self.space.size:
            raise ValueError("exponent vector length mismatch")
        ka, kb = self.key(a), self.key(b)
        return (ka > kb) - (ka < kb)

    def describe(self) -> dict:
        d = {"kind": self.kind}
        if self.weights is not None:
            d["weights"] = list(self.weights)
        return d


class Polynomial:
    """Immutable sparse polynomial: exponent tuple -> nonzero ``mpq``."""

    __slots__ = ("space", "terms")

    def __init__(self, space: VarSpace, terms: Mapping | Iterable = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean: dict[ExpVec, mpq] = {}
        size = space.size
        for e, c in items:
            e = tuple(int(x) for x in e)
            if len(e) != size or min(e, default=0) < 0:
                raise ValueError(f"bad exponent vector {e} for {size} variables")
            c = to_rational(c)
            if e in clean:
                c += clean[e]
            if c:
                clean[e] = c
            else:
                clean.pop(e, None)
        self.space = space
        self.terms = clean

    @classmethod
    def _raw(cls, space: VarSpace, terms: dict) -> Polynomial:
        p = object.__new__(cls)
        p.space = space
        p.terms = terms
        return p

    @classmethod
    def zero(cls, space: VarSpace) -> Polynomial:
        return cls._raw(space, {})

    @classmethod
    def constant(cls, space: VarSpace, c=1) -> Polynomial:
        return cls(space, {(0,) * space.size: c})

    @classmethod
    def monomial(cls, space: VarSpace, exp: Iterable[int], c=1) -> Polynomial:
        return cls(space, {tuple(exp): c})

    @classmethod
    def var(cls, space: VarSpace, i: int) -> Polynomial:
        e = [0] * space.size
        e[i] = 1
        return cls._raw(space, {tuple(e): mpq(1)})

    def _check(self, other: Polynomial):
        if not isinstance(other, Polynomial):
            return NotImplemented
        if other.space != self.space:
            raise ValueError("polynomials live in different variable spaces")
        return None

    def _lift(self, other):
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction, type(mpq(0)), type(gmpy2.mpz(0)))):
            return Polynomial.constant(self.space, other)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return Polynomial._raw(self.space, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.space, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            try:
                c = to_rational(other)
            except TypeError:
                return NotImplemented
            if not c:
                return Polynomial.zero(self.space)
            return Polynomial._raw(self.space, {e: c * v for e, v in self.terms.items()})
        self._check(other)
        out: dict[ExpVec, mpq] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return Polynomial._raw(self.space, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative exponent")
        result = Polynomial.constant(self.space, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def mul_term(self, exp: ExpVec, c=1) -> Polynomial:
        c = to_rational(c)
        if not c:
            return Polynomial.zero(self.space)
        return Polynomial._raw(
            self.space,
            {tuple(x + y for x, y in zip(e, exp)): c * v for e, v in self.terms.items()},
        )

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.space == other.space and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == Polynomial.constant(self.space, other) if other else not self.terms
        return NotImplemented

    def __hash__(self):
        return hash((self.space, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def is_homogeneous(self, weights: Iterable[int] | None = None) -> bool:
        if weights is None:
            degs = {sum(e) for e in self.terms}
        else:
            w = tuple(weights)
            degs = {sum(a * b for a, b in zip(w, e)) for e in self.terms}
        return len(degs) <= 1

    def coefficient(self, exp: Iterable[int]) -> mpq:
        return self.terms.get(tuple(exp), mpq(0))

    def sorted_terms(self, order: MonomialOrdering) -> list[tuple[ExpVec, mpq]]:
        """Terms from largest to smallest under ``order``."""
        return sorted(self.terms.items(), key=lambda t: order.key(t[0]), reverse=True)

    def leading_term(self, order: MonomialOrdering) -> tuple[ExpVec, mpq]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self.terms, key=order.key)
        return e, self.terms[e]

    def leading_monomial(self, order: MonomialOrdering) -> ExpVec:
        return self.leading_term(order)[0]

    def monic(self, order: MonomialOrdering) -> Polynomial:
        return self * (1 / self.leading_term(order)[1])

    def support(self) -> set[int]:
        """Indices of variables occurring in some term."""
        return {i for e in self.terms for i, x in enumerate(e) if x}

    def substitute_scaling(self, factors: Iterable) -> Polynomial:
        """Replace each ``x_i`` by ``factors[i] * x_i``."""
        f = [to_rational(c) for c in factors]
        out = {}
        for e, c in self.terms.items():
            s = c
            for fi, x in zip(f, e):
                if x:
                    s *= fi**x
            if s:
                out[e] = s
        return Polynomial._raw(self.space, out)

    def to_json(self, order: MonomialOrdering | None = None) -> dict:
        order = order or MonomialOrdering.degrevlex(self.space)
        return {
            "vars": self.space.describe(),
            "terms": [{"e": list(e), "c": format_rational(c)} for e, c in self.sorted_terms(order)],
        }

    @classmethod
    def from_json(cls, d: Mapping) -> Polynomial:
        space = VarSpace.from_description(d["vars"])
        return cls(space, [(tuple(t["e"]), t["c"]) for t in d["terms"]])

    def format(self, order: MonomialOrdering | None = None) -> str:
        if not self.terms:
            return "0"
        order = order or MonomialOrdering.degrevlex(self.space)
        parts = []
        for e, c in self.sorted_terms(order):
            mono = "*".join(
                self.space.name(i) + (f"^{x}" if x > 1 else "") for i, x in enumerate(e) if x
            )
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if not mono:
                body = str(a)
            elif a == 1:
                body = mono
            else:
                body = f"{a}*{mono}"
            parts.append((sign, body))
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s

    def __repr__(self):
        return f"Polynomial({self.format()})"


def monomials_of_degree(nvars: int, d: int):
    """All exponent vectors of total degree ``d`` in ``nvars`` variables."""
    if nvars == 0:
        if d == 0:
            yield ()
        return
    if nvars == 1:
        yield (d,)
        return
    for first in range(d, -1, -1):
        for rest in monomials_of_degree(nvars - 1, d - first):
            yield (first,) + rest


def all_exponents(bounds: Iterable[int]):
    """Every exponent vector with ``0 <= e_i <= bounds[i]``."""
    return product(*(range(b + 1) for b in bounds))

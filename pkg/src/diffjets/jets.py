"""Truncated differential polynomial rings and jet-ideal generators of x^p.

The chain ring identifies ``x^(k)`` with variable ``x_k`` (0 <= k <= n); the
grid ring identifies ``x^(k,l)`` with ``x_{k,l}``.  Derivations drop every
term that would leave the truncation box.

Generators of ``C_{p,n}`` (resp. ``C_{p,(m,n)}``) come from two independent
routes: expanding ``(x_0 + x_1 t + ... + x_n t^n)^p`` by the multinomial
formula, and differentiating ``x^p`` with the Leibniz rule.  They agree after
the rescaling ``x^(k) -> k! x_k``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import factorial

from gmpy2 import mpq

from .poly import Polynomial, VarSpace

EXPANSION = "expansion"
DIFFERENTIATION = "differentiation"

D_T = "t"
D_S = "s"


@dataclass(frozen=True)
class TruncatedDiffRing:
    space: VarSpace

    @classmethod
    def chain(cls, n: int) -> TruncatedDiffRing:
        return cls(VarSpace.chain(n))

    @classmethod
    def grid(cls, m: int, n: int) -> TruncatedDiffRing:
        return cls(VarSpace.grid(m, n))

    def successor(self, i: int, direction: str) -> int | None:
        """Index of the derivative of variable ``i``, or None when truncated."""
        sp = self.space
        if not sp.is_grid:
            if direction != D_T:
                raise ValueError("a chain ring only carries the derivation d/dt")
            return i + 1 if i < sp.n else None
        k, l = sp.coords(i)
        if direction == D_S:
            return sp.index(k + 1, l) if k < sp.m else None
        if direction == D_T:
            return sp.index(k, l + 1) if l < sp.n else None
        raise ValueError(f"unknown derivation {direction!r}")


def derive(p: Polynomial, ring: TruncatedDiffRing, direction: str = D_T) -> Polynomial:
    """Leibniz-rule derivative, truncated to the ring's order bounds."""
    if p.space != ring.space:
        raise ValueError("polynomial does not live in this ring")
    succ = [ring.successor(i, direction) for i in range(ring.space.size)]
    out: dict = {}
    for e, c in p.terms.items():
        for i, a in enumerate(e):
            j = succ[i]
            if not a or j is None:
                continue
            ne = list(e)
            ne[i] -= 1
            ne[j] += 1
            ne = tuple(ne)
            out[ne] = out.get(ne, 0) + a * c
    return Polynomial(ring.space, out)


@dataclass
class GeneratorSet:
    """Ordered jet generators with their index labels.

    Chain labels are ints ``k``; grid labels are pairs ``(a, b)`` with ``a``
    the s-weight and ``b`` the t-weight.
    """

    ring: TruncatedDiffRing
    p: int
    labels: list
    generators: list[Polynomial]
    provenance: str = EXPANSION
    meta: dict = field(default_factory=dict)

    def __len__(self):
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    def __getitem__(self, i):
        return self.generators[i]

    def by_label(self, label) -> Polynomial:
        return self.generators[self.labels.index(label)]

    def to_json(self, order=None) -> list[dict]:
        out = []
        for lab, g in zip(self.labels, self.generators):
            entry = {"index": list(lab) if isinstance(lab, tuple) else lab}
            entry.update(g.to_json(order))
            out.append(entry)
        return out


def _compositions(total: int, parts: int):
    """Weak compositions of ``total`` into ``parts`` parts with their
    multinomial coefficients, built incrementally with exact integers."""
    if parts == 1:
        yield (total,), 1
        return

    def rec(remaining, slots, prefix, coeff):
        if slots == 1:
            yield prefix + (remaining,), coeff
            return
        # choosing k of the remaining positions multiplies by C(remaining, k)
        binom = 1
        for k in range(remaining + 1):
            yield from rec(remaining - k, slots - 1, prefix + (k,), coeff * binom)
            binom = binom * (remaining - k) // (k + 1)

    yield from rec(total, parts, (), 1)


def _chain_space(shape) -> VarSpace:
    if isinstance(shape, VarSpace):
        return shape
    if isinstance(shape, int):
        return VarSpace.chain(shape)
    m, n = shape
    return VarSpace.grid(m, n)


def jet_generators_expansion(p: int, shape) -> GeneratorSet:
    """Coefficients of ``f_{p,n}`` in ``t`` (or of ``f_{p,(m,n)}`` in ``s, t``).

    ``shape`` is ``n`` for a chain, ``(m, n)`` for a grid, or a ``VarSpace``.
    """
    if p < 0:
        raise ValueError("p must be >= 0")
    space = _chain_space(shape)
    ring = TruncatedDiffRing(space)
    size = space.size
    if space.is_grid:
        coords = [space.coords(i) for i in range(size)]
        sw = [k for k, _ in coords]
        tw = [l for _, l in coords]
        labels = [(a, b) for a in range(space.m * p + 1) for b in range(space.n * p + 1)]
    else:
        tw = list(range(size))
        labels = list(range(space.n * p + 1))
    buckets: dict = {lab: {} for lab in labels}
    for e, c in _compositions(p, size):
        t = sum(w * x for w, x in zip(tw, e))
        lab = (sum(w * x for w, x in zip(sw, e)), t) if space.is_grid else t
        buckets[lab][e] = c
    gens = [Polynomial(space, buckets[lab]) for lab in labels]
    return GeneratorSet(ring, p, labels, gens, EXPANSION)


def jet_generators_differentiation(p: int, shape) -> GeneratorSet:
    """``(x^p)^(k)`` for 0 <= k <= np (or ``(x^p)^(a,b)``), by repeated
    truncated differentiation of ``x^p``."""
    if p < 1:
        raise ValueError("the differentiation route needs p >= 1")
    space = _chain_space(shape)
    ring = TruncatedDiffRing(space)
    base = Polynomial.var(space, 0) ** p
    if not space.is_grid:
        gens = [base]
        for _ in range(space.n * p):
            gens.append(derive(gens[-1], ring, D_T))
        return GeneratorSet(ring, p, list(range(space.n * p + 1)), gens, DIFFERENTIATION)
    labels, gens = [], []
    row = base
    for a in range(space.m * p + 1):
        g = row
        for b in range(space.n * p + 1):
            labels.append((a, b))
            gens.append(g)
            g = derive(g, ring, D_T)
        row = derive(row, ring, D_S)
    return GeneratorSet(ring, p, labels, gens, DIFFERENTIATION)


def jet_generators(p: int, shape, route: str = EXPANSION) -> GeneratorSet:
    if route == EXPANSION:
        return jet_generators_expansion(p, shape)
    if route == DIFFERENTIATION:
        return jet_generators_differentiation(p, shape)
    raise ValueError(f"unknown route {route!r}")


def _scaling_factors(space: VarSpace) -> list[int]:
    if space.is_grid:
        return [factorial(k) * factorial(l) for k, l in map(space.coords, range(space.size))]
    return [factorial(k) for k in range(space.size)]


def iso_scaling_mismatch(p: int, shape):
    """First label where the two generator routes disagree, else None.

    Substituting ``x^(j) -> j! x_j`` into ``(x^p)^(k)`` must give
    ``k! f_k`` (grid: ``x^(j,i) -> j! i! x_{j,i}`` and ``a! b! f_{a,b}``).
    """
    expd = jet_generators_expansion(p, shape)
    diff = jet_generators_differentiation(p, shape)
    if expd.labels != diff.labels:
        return "labels"
    factors = _scaling_factors(expd.ring.space)
    for lab, f, g in zip(expd.labels, expd.generators, diff.generators):
        if isinstance(lab, tuple):
            scale = factorial(lab[0]) * factorial(lab[1])
        else:
            scale = factorial(lab)
        if g.substitute_scaling(factors) != f * mpq(scale):
            return lab
    return None


def check_iso_scaling(p: int, shape) -> bool:
    return iso_scaling_mismatch(p, shape) is None


def multidegree(e, space: VarSpace) -> tuple:
    """(total degree, s-weight, t-weight) of an exponent vector."""
    if space.is_grid:
        cs = [space.coords(i) for i in range(space.size)]
        return (
            sum(e),
            sum(k * x for (k, _), x in zip(cs, e)),
            sum(l * x for (_, l), x in zip(cs, e)),
        )
    return (sum(e), 0, sum(i * x for i, x in enumerate(e)))

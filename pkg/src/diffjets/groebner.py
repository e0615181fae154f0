"""Division, S-pairs, Buchberger verification/completion, initial ideals and
standard-monomial counting.

The hot loops run on packed monomial keys: each exponent vector maps to one
integer that is linear in the exponents (so multiplying monomials adds keys)
and increasing along the monomial order (so the leading term is a max).
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field
from typing import Sequence

from gmpy2 import mpq

from .poly import ExpVec, MonomialOrdering, Polynomial, VarSpace, divides, exp_lcm

_FIELD_BITS = 16
_DEG_BITS = 40


class _Packer:
    """Order-compatible linear encoding of exponent vectors.

    ``key(e) = (w.e << S2) + (deg e << S1) - F(e)`` where ``F`` packs the
    exponents with ``x_0`` in the most significant field.
    """

    def __init__(self, order: MonomialOrdering):
        self.order = order
        self.n = n = order.space.size
        self.weights = order.weights
        B = _FIELD_BITS
        self.shifts = [B * (n - 1 - i) for i in range(n)]
        self.s1 = B * n
        self.s2 = self.s1 + _DEG_BITS
        self.mask = (1 << self.s1) - 1
        self.guard = sum((1 << (B - 1)) << s for s in self.shifts)
        self.field_mask = (1 << B) - 1
        self.max_exp = (1 << (B - 1)) - 1

    def encode(self, e: ExpVec) -> int:
        f = 0
        for x, s in zip(e, self.shifts):
            if x > self.max_exp:
                raise OverflowError("exponent too large for packed monomials")
            f |= x << s
        key = (sum(e) << self.s1) - f
        if self.weights is not None:
            key += sum(w * x for w, x in zip(self.weights, e)) << self.s2
        return key

    def fields(self, key: int) -> int:
        return (-key) & self.mask

    def decode(self, key: int) -> ExpVec:
        f = (-key) & self.mask
        fm = self.field_mask
        return tuple((f >> s) & fm for s in self.shifts)

    def divides(self, fa: int, fb: int) -> bool:
        """Does the monomial with packed fields ``fa`` divide ``fb``?"""
        g = self.guard
        return ((fb | g) - fa) & g == g

    def lcm(self, ka: int, kb: int) -> int:
        return self.encode(exp_lcm(self.decode(ka), self.decode(kb)))

    def degree(self, key: int) -> int:
        return ((key + self.fields(key)) >> self.s1) & ((1 << _DEG_BITS) - 1)


class _Basis:
    """Monic generators in packed form, with a divisor lookup cache."""

    def __init__(self, packer: _Packer, polys: Sequence[Polynomial]):
        self.packer = packer
        self.lm: list[int] = []
        self.lm_fields: list[int] = []
        self.lc: list[mpq] = []
        self.tails: list[list[tuple[int, mpq]]] = []
        self._cache: dict[int, int] = {}
        for p in polys:
            self.add(p)

    def add(self, p: Polynomial | dict) -> int:
        enc = self.packer.encode
        if isinstance(p, Polynomial):
            items = [(enc(e), c) for e, c in p.terms.items()]
        else:
            items = list(p.items())
        if not items:
            raise ValueError("zero generator")
        items.sort(key=lambda t: t[0], reverse=True)
        lk, lc = items[0]
        inv = 1 / lc
        self.lm.append(lk)
        self.lm_fields.append(self.packer.fields(lk))
        self.lc.append(lc)
        self.tails.append([(k, c * inv) for k, c in items[1:]])
        self._cache = {k: v for k, v in self._cache.items() if v >= 0}
        return len(self.lm) - 1

    def __len__(self):
        return len(self.lm)

    def divisor(self, key: int) -> int:
        j = self._cache.get(key)
        if j is None:
            fk = self.packer.fields(key)
            div = self.packer.divides
            j = -1
            for i, fl in enumerate(self.lm_fields):
                if div(fl, fk):
                    j = i
                    break
            self._cache[key] = j
        return j

    def spoly(self, i: int, j: int, lcm_key: int) -> dict[int, mpq]:
        out: dict[int, mpq] = {}
        qi = lcm_key - self.lm[i]
        for k, c in self.tails[i]:
            out[k + qi] = c
        qj = lcm_key - self.lm[j]
        for k, c in self.tails[j]:
            nk = k + qj
            v = out.get(nk)
            if v is None:
                out[nk] = -c
            else:
                v -= c
                if v:
                    out[nk] = v
                else:
                    del out[nk]
        return out

    def reduce(self, f: dict[int, mpq], early_exit=False, quotients=None):
        """Full reduction of ``f`` (consumed).  Returns the remainder dict.

        With ``early_exit`` the first irreducible term is returned alone.
        ``quotients`` (a list of dicts) collects multipliers per generator,
        in terms of the original (non-monic) generators.
        """
        heap = [-k for k in f]
        heapq.heapify(heap)
        rem: dict[int, mpq] = {}
        pop, push = heapq.heappop, heapq.heappush
        lm, tails, lcs = self.lm, self.tails, self.lc
        while heap:
            k = -pop(heap)
            c = f.pop(k, None)
            if c is None:
                continue
            j = self.divisor(k)
            if j < 0:
                rem[k] = c
                if early_exit:
                    return rem
                continue
            q = k - lm[j]
            if quotients is not None:
                qd = quotients[j]
                qd[q] = qd.get(q, 0) + c / lcs[j]
            for tk, tc in tails[j]:
                nk = tk + q
                v = f.get(nk)
                if v is None:
                    f[nk] = -c * tc
                    push(heap, -nk)
                else:
                    v -= c * tc
                    if v:
                        f[nk] = v
                    else:
                        del f[nk]
        return rem

    def to_poly(self, d: dict[int, mpq], space: VarSpace) -> Polynomial:
        dec = self.packer.decode
        return Polynomial._raw(space, {dec(k): c for k, c in d.items()})

    def generator(self, i: int, space: VarSpace) -> Polynomial:
        d = {k: c for k, c in self.tails[i]}
        d[self.lm[i]] = mpq(1)
        return self.to_poly(d, space)


def _as_list(G) -> list[Polynomial]:
    gens = list(getattr(G, "generators", G))
    if not gens:
        raise ValueError("empty generator list")
    space = gens[0].space
    for g in gens:
        if g.space != space:
            raise ValueError("generators live in different variable spaces")
        if g.is_zero():
            raise ValueError("zero generator")
    return gens


@dataclass
class ReductionResult:
    remainder: Polynomial
    quotients: list[tuple[int, Polynomial]]


def reduce(f: Polynomial, G, order: MonomialOrdering) -> ReductionResult:
    """Multivariate division of ``f`` by ``G``.

    The reducer of each leading term is the lowest-index generator whose
    leading monomial divides it.
    """
    gens = _as_list(G)
    if f.space != gens[0].space or order.space != f.space:
        raise ValueError("variable space mismatch")
    packer = _Packer(order)
    basis = _Basis(packer, gens)
    quots = [dict() for _ in gens]
    fd = {packer.encode(e): c for e, c in f.terms.items()}
    rem = basis.reduce(fd, quotients=quots)
    space = f.space
    quotients = [(i, basis.to_poly(q, space)) for i, q in enumerate(quots) if q]
    return ReductionResult(basis.to_poly(rem, space), quotients)


def s_polynomial(f: Polynomial, g: Polynomial, order: MonomialOrdering) -> Polynomial:
    if f.is_zero() or g.is_zero():
        raise ValueError("S-polynomial of a zero polynomial")
    ef, cf = f.leading_term(order)
    eg, cg = g.leading_term(order)
    L = exp_lcm(ef, eg)
    mf = tuple(a - b for a, b in zip(L, ef))
    mg = tuple(a - b for a, b in zip(L, eg))
    return f.mul_term(mf, 1 / cf) - g.mul_term(mg, 1 / cg)


@dataclass
class GBReport:
    is_gb: bool
    failing_pair: tuple[int, int, Polynomial] | None = None
    failing_lcm: ExpVec | None = None
    pairs_checked: int = 0
    pairs_skipped_by_criteria: int = 0
    failures: list[tuple[int, int]] = field(default_factory=list)
    order: MonomialOrdering | None = None

    def to_json(self, labels=None) -> dict:
        def lab(i):
            if labels is None:
                return i
            x = labels[i]
            return list(x) if isinstance(x, tuple) else x

        d = {
            "is_gb": self.is_gb,
            "pairs_checked": self.pairs_checked,
            "pairs_skipped_by_criteria": self.pairs_skipped_by_criteria,
            "failing_pair": None,
        }
        if self.failing_pair is not None:
            i, j, r = self.failing_pair
            d["failing_pair"] = {
                "i": lab(i),
                "j": lab(j),
                "lcm": list(self.failing_lcm),
                "remainder": r.to_json(self.order),
            }
        return d


def _ordered_pairs(basis: _Basis):
    """All pairs, sorted by lcm degree, then lcm in the monomial order, then
    index."""
    packer = basis.packer
    n = len(basis)
    pairs = []
    for j in range(n):
        for i in range(j):
            L = packer.lcm(basis.lm[i], basis.lm[j])
            pairs.append((packer.degree(L), L, i, j))
    pairs.sort()
    return pairs


def verify_groebner(
    G, order: MonomialOrdering, paranoid: bool = False, full_scan: bool = False
) -> GBReport:
    """Buchberger's criterion: every S-pair must reduce to zero.

    Pairs run by increasing lcm degree, then increasing lcm under ``order``,
    then by ``(i, j)``.  Unless
    ``paranoid`` is set, pairs with coprime leading monomials and pairs
    covered by the chain criterion are skipped.  The reported failure is the
    first one in processing order; ``full_scan`` keeps going and records all
    failing pairs in ``failures``.
    """
    gens = _as_list(G)
    space = gens[0].space
    if order.space != space:
        raise ValueError("ordering is over a different variable space")
    packer = _Packer(order)
    basis = _Basis(packer, gens)
    n = len(basis)
    done = [bytearray(n) for _ in range(n)]
    report = GBReport(is_gb=True, order=order)
    lmf = basis.lm_fields
    div = packer.divides
    for _, L, i, j in _ordered_pairs(basis):
        if not paranoid:
            fi, fj = lmf[i], lmf[j]
            # coprime leading monomials: lcm is the product
            if L == basis.lm[i] + basis.lm[j]:
                done[i][j] = done[j][i] = 1
                report.pairs_skipped_by_criteria += 1
                continue
            fl = packer.fields(L)
            chain = False
            for k in range(n):
                if k != i and k != j and done[i][k] and done[j][k] and div(lmf[k], fl):
                    chain = True
                    break
            if chain:
                done[i][j] = done[j][i] = 1
                report.pairs_skipped_by_criteria += 1
                continue
        report.pairs_checked += 1
        rem = basis.reduce(basis.spoly(i, j, L), early_exit=True)
        if rem:
            report.failures.append((i, j))
            if report.is_gb:
                report.is_gb = False
                full = basis.reduce(basis.spoly(i, j, L))
                report.failing_pair = (i, j, basis.to_poly(full, space))
                report.failing_lcm = packer.decode(L)
            if not full_scan:
                break
            continue
        done[i][j] = done[j][i] = 1
    return report


@dataclass
class CompletionResult:
    basis: list[Polynomial]
    complete: bool
    added: int


def buchberger_complete(G, order: MonomialOrdering, degree_cap: int | None = None) -> CompletionResult:
    """Capped Buchberger completion (first and chain criteria).

    Pairs whose lcm degree exceeds ``degree_cap`` are left untreated and the
    result is flagged incomplete.
    """
    gens = _as_list(G)
    space = gens[0].space
    packer = _Packer(order)
    basis = _Basis(packer, gens)
    out = list(gens)
    queue: list = []
    treated: set = set()

    def push_pairs(j):
        for i in range(j):
            L = packer.lcm(basis.lm[i], basis.lm[j])
            heapq.heappush(queue, (packer.degree(L), L, i, j))

    for j in range(len(basis)):
        push_pairs(j)
    complete = True
    while queue:
        deg, L, i, j = heapq.heappop(queue)
        if degree_cap is not None and deg > degree_cap:
            complete = False
            break
        treated.add((i, j))
        if L == basis.lm[i] + basis.lm[j]:
            continue
        fl = packer.fields(L)
        if any(
            k != i
            and k != j
            and (min(i, k), max(i, k)) in treated
            and (min(j, k), max(j, k)) in treated
            and packer.divides(basis.lm_fields[k], fl)
            for k in range(len(basis))
        ):
            continue
        rem = basis.reduce(basis.spoly(i, j, L))
        if rem:
            new = basis.to_poly(rem, space)
            idx = basis.add(new)
            out.append(new.monic(order))
            push_pairs(idx)
    return CompletionResult(out, complete, len(out) - len(gens))


def reduced_basis(G, order: MonomialOrdering) -> list[Polynomial]:
    """Monic, minimal, tail-reduced form of a Gröbner basis (sorted by LM)."""
    gens = [g.monic(order) for g in _as_list(G)]
    gens.sort(key=lambda g: order.key(g.leading_monomial(order)))
    minimal = []
    for g in gens:
        lm = g.leading_monomial(order)
        if not any(divides(h.leading_monomial(order), lm) for h in minimal):
            minimal = [h for h in minimal if not divides(lm, h.leading_monomial(order))]
            minimal.append(g)
    out = []
    for idx, g in enumerate(minimal):
        others = minimal[:idx] + minimal[idx + 1 :]
        if others:
            lt_e, lt_c = g.leading_term(order)
            tail = g - Polynomial.monomial(g.space, lt_e, lt_c)
            r = reduce(tail, others, order).remainder if tail else tail
            g = r + Polynomial.monomial(g.space, lt_e, lt_c)
        out.append(g)
    return out


@dataclass(frozen=True)
class MonomialIdeal:
    """Monomial ideal given by a minimal antichain of exponent vectors."""

    nvars: int
    generators: tuple[ExpVec, ...]

    @classmethod
    def from_monomials(cls, nvars: int, monomials) -> MonomialIdeal:
        mons = sorted(set(tuple(m) for m in monomials), key=lambda e: (sum(e), e))
        minimal: list[ExpVec] = []
        for e in mons:
            if len(e) != nvars:
                raise ValueError("exponent length mismatch")
            if not any(divides(g, e) for g in minimal):
                minimal.append(e)
        return cls(nvars, tuple(sorted(minimal, reverse=True)))

    def contains(self, e: ExpVec) -> bool:
        return any(divides(g, e) for g in self.generators)


def initial_ideal(G, order: MonomialOrdering, report: GBReport | None) -> MonomialIdeal:
    """Minimal generators of the ideal of leading monomials of a verified GB."""
    if report is None or not report.is_gb:
        raise ValueError("initial_ideal needs a positive Gröbner-basis report")
    gens = _as_list(G)
    return MonomialIdeal.from_monomials(gens[0].space.size, [g.leading_monomial(order) for g in gens])


def count_standard_monomials(I: MonomialIdeal):
    """Number of monomials outside ``I``; ``math.inf`` if that is infinite.

    Staircase backtracking over the variables in index order.  Each generator
    is tested once its last variable has been assigned; since raising an
    exponent can only create divisibility, the scan of a variable stops at
    the first divisible value.
    """
    n = I.nvars
    gens = I.generators
    if any(sum(g) == 0 for g in gens):
        return 0
    if n == 0:
        return 1
    bounds = [None] * n
    for g in gens:
        supp = [i for i, x in enumerate(g) if x]
        if len(supp) == 1:
            i = supp[0]
            bounds[i] = g[i] if bounds[i] is None else min(bounds[i], g[i])
    if any(b is None for b in bounds):
        return math.inf
    closing: list[list[ExpVec]] = [[] for _ in range(n)]
    for g in gens:
        last = max(i for i, x in enumerate(g) if x)
        closing[last].append(g)
    u = [0] * n

    def blocked(i):
        for g in closing[i]:
            if all(g[j] <= u[j] for j in range(i + 1)):
                return True
        return False

    def rec(i):
        total = 0
        for v in range(bounds[i]):
            u[i] = v
            if blocked(i):
                break
            total += 1 if i == n - 1 else rec(i + 1)
        u[i] = 0
        return total

    return rec(0)


def standard_monomial_count_of(G, order: MonomialOrdering, paranoid: bool = False):
    """Verify ``G`` and count the standard monomials of its initial ideal."""
    report = verify_groebner(G, order, paranoid=paranoid)
    if not report.is_gb:
        raise ValueError("generators are not a Gröbner basis for this ordering")
    return count_standard_monomials(initial_ideal(G, order, report))

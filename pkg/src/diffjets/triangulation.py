"""Triangulations of the lattice rectangle [0,m] x [0,n].

Points are indexed in the flat grid order ``k*(n+1) + l``, the same order as
the grid variables ``x_{k,l}``.  All geometric predicates use exact integer
arithmetic.
"""

from __future__ import annotations

import math
import random
import re
from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

from .groebner import verify_groebner
from .jets import jet_generators_expansion
from .lp import OPTIMAL, maximize
from .poly import MonomialOrdering, VarSpace

LOWER = "lower"
UPPER = "upper"

MAX_ENUM_POINTS = 16
MAX_SEARCH_POINTS = 16


def orient(p, q, r) -> int:
    """Twice the signed area of (p, q, r); positive when counter-clockwise."""
    return (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])


@dataclass(frozen=True)
class GridConfig:
    m: int
    n: int

    def __post_init__(self):
        if self.m < 0 or self.n < 0:
            raise ValueError("grid sides must be nonnegative")

    @property
    def size(self) -> int:
        return (self.m + 1) * (self.n + 1)

    @property
    def points(self) -> list[tuple[int, int]]:
        return [(k, l) for k in range(self.m + 1) for l in range(self.n + 1)]

    def index(self, k: int, l: int) -> int:
        if not (0 <= k <= self.m and 0 <= l <= self.n):
            raise ValueError(f"point ({k},{l}) is outside the grid")
        return k * (self.n + 1) + l

    def coords(self, i: int) -> tuple[int, int]:
        return divmod(i, self.n + 1)

    def space(self) -> VarSpace:
        return VarSpace.grid(self.m, self.n)

    def on_boundary_segment(self, i: int, j: int) -> bool:
        """Do points i and j lie on a common side of the rectangle?"""
        (a, b), (c, d) = self.coords(i), self.coords(j)
        return (a == c and a in (0, self.m)) or (b == d and b in (0, self.n))


def _canon(tri: Iterable[int]) -> tuple[int, int, int]:
    t = tuple(sorted(tri))
    if len(t) != 3 or len(set(t)) != 3:
        raise ValueError(f"a triangle needs three distinct points, got {t}")
    return t


@dataclass(frozen=True, eq=False)
class Triangulation:
    """A set of triangles (index triples) validated to triangulate the grid
    rectangle: positive areas summing to the rectangle, every boundary edge
    in one triangle and every other edge in two triangles on opposite sides."""

    config: GridConfig
    triangles: frozenset
    _key: tuple = field(repr=False, default=())

    def __init__(self, config: GridConfig, triangles: Iterable[Sequence[int]], validate: bool = True):
        tris = frozenset(_canon(t) for t in triangles)
        object.__setattr__(self, "config", config)
        object.__setattr__(self, "triangles", tris)
        object.__setattr__(self, "_key", tuple(sorted(tris)))
        if validate:
            problem = self.validation_error()
            if problem:
                raise ValueError(f"not a triangulation: {problem}")

    def __eq__(self, other):
        return isinstance(other, Triangulation) and self.config == other.config and self.triangles == other.triangles

    def __hash__(self):
        return hash((self.config, self.triangles))

    def __lt__(self, other):
        return self._key < other._key

    def __len__(self):
        return len(self.triangles)

    @property
    def sorted_triangles(self) -> tuple:
        return self._key

    def validation_error(self) -> str | None:
        cfg = self.config
        if cfg.m == 0 or cfg.n == 0:
            return "the rectangle is degenerate"
        pts = cfg.points
        total = 0
        edges: dict = {}
        for tri in self.triangles:
            if max(tri) >= cfg.size or min(tri) < 0:
                return f"triangle {tri} uses an unknown point"
            a, b, c = (pts[i] for i in tri)
            area = orient(a, b, c)
            if area == 0:
                return f"triangle {tri} is degenerate"
            total += abs(area)
            for u, v, w in ((tri[0], tri[1], tri[2]), (tri[0], tri[2], tri[1]), (tri[1], tri[2], tri[0])):
                edges.setdefault((u, v), []).append(w)
        if total != 2 * cfg.m * cfg.n:
            return f"areas sum to {total}/2 instead of {2 * cfg.m * cfg.n}/2"
        for (u, v), opp in edges.items():
            if cfg.on_boundary_segment(u, v):
                if len(opp) != 1:
                    return f"boundary edge {(u, v)} lies in {len(opp)} triangles"
            else:
                if len(opp) != 2:
                    return f"interior edge {(u, v)} lies in {len(opp)} triangles"
                s1 = orient(pts[u], pts[v], pts[opp[0]])
                s2 = orient(pts[u], pts[v], pts[opp[1]])
                if s1 * s2 >= 0:
                    return f"triangles at edge {(u, v)} overlap"
        return None

    def edges(self) -> list[tuple[int, int]]:
        out = set()
        for tri in self.triangles:
            out.update(combinations(tri, 2))
        return sorted(out)

    def interior_edges(self) -> list[tuple[int, int, int, int]]:
        """``(a, b, c, d)``: edge ab shared by triangles abc and abd."""
        opp: dict = {}
        for tri in self.triangles:
            for e in combinations(tri, 2):
                w = next(x for x in tri if x not in e)
                opp.setdefault(e, []).append(w)
        return sorted((a, b, ws[0], ws[1]) for (a, b), ws in opp.items() if len(ws) == 2)

    def used_points(self) -> set[int]:
        return {v for tri in self.triangles for v in tri}

    def contains_support(self, support: Iterable[int]) -> bool:
        s = set(support)
        return any(s.issubset(tri) for tri in self.triangles)

    def edge_graph(self):
        from .lattice import Graph

        return Graph.from_triangles(self.config.size, self.triangles)

    def format(self) -> str:
        pts = self.config.points
        lines = []
        for tri in self._key:
            lines.append(" ".join("({},{})".format(*pts[i]) for i in tri))
        return "\n".join(lines) + "\n"

    def to_json(self) -> list:
        pts = self.config.points
        return [[list(pts[i]) for i in tri] for tri in self._key]


_PAIR = re.compile(r"\(\s*(-?\d+)\s*,\s*(-?\d+)\s*\)")


def parse_triangulation(text: str, config: GridConfig) -> Triangulation:
    """One triangle per line, each written as three ``(k,l)`` pairs."""
    tris = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        pairs = _PAIR.findall(line)
        if len(pairs) != 3:
            raise ValueError(f"expected three (k,l) pairs: {line!r}")
        tris.append([config.index(int(k), int(l)) for k, l in pairs])
    return Triangulation(config, tris)


def from_segments(config: GridConfig, segments: Iterable) -> Triangulation:
    """Rebuild a unimodular triangulation from a drawing: segments are cut
    at lattice points into primitive edges and every unimodular triangle
    whose three edges are all drawn is taken."""
    prim = set()
    for (x0, y0), (x1, y1) in segments:
        g = math.gcd(x1 - x0, y1 - y0)
        dx, dy = (x1 - x0) // g, (y1 - y0) // g
        for s in range(g):
            a = config.index(x0 + s * dx, y0 + s * dy)
            b = config.index(x0 + (s + 1) * dx, y0 + (s + 1) * dy)
            prim.add((min(a, b), max(a, b)))
    pts = config.points
    tris = []
    for tri in combinations(range(config.size), 3):
        if abs(orient(*(pts[i] for i in tri))) == 1 and all(e in prim for e in combinations(tri, 2)):
            tris.append(tri)
    return Triangulation(config, tris)


# ------------------------------------------------------------ height vectors


def _lifted_excess(pts, h, i, j, k, l) -> int:
    """Positive iff lifted point l lies strictly above the plane through the
    lifted points i, j, k (the three must not be collinear)."""
    D = orient(pts[i], pts[j], pts[k])
    a = orient(pts[l], pts[j], pts[k])
    b = orient(pts[i], pts[l], pts[k])
    c = orient(pts[i], pts[j], pts[l])
    val = D * h[l] - (a * h[i] + b * h[j] + c * h[k])
    return val if D > 0 else -val


def regular_from_heights(cfg: GridConfig, heights: Sequence[int], hull: str = LOWER) -> Triangulation:
    """Project the lower (or upper) hull of the lifted points ``(k, l, h)``.

    Every triangle of the result has all other lifted points strictly on the
    far side of its plane; if the faces found this way do not tile the
    rectangle, some cell is not a triangle and the heights are rejected."""
    if len(heights) != cfg.size:
        raise ValueError("need one height per grid point")
    if hull == UPPER:
        h = [-int(x) for x in heights]
    elif hull == LOWER:
        h = [int(x) for x in heights]
    else:
        raise ValueError(f"unknown hull convention {hull!r}")
    pts = cfg.points
    N = cfg.size
    tris = []
    for i, j, k in combinations(range(N), 3):
        if orient(pts[i], pts[j], pts[k]) == 0:
            continue
        if all(_lifted_excess(pts, h, i, j, k, l) > 0 for l in range(N) if l not in (i, j, k)):
            tris.append((i, j, k))
    area = sum(abs(orient(*(pts[v] for v in t))) for t in tris)
    if area != 2 * cfg.m * cfg.n:
        raise ValueError("heights are not generic: the induced subdivision has a non-triangular cell")
    return Triangulation(cfg, tris)


def placing_triangulation(cfg: GridConfig) -> Triangulation:
    """``T_{m,n}``: per column strip j, the fan of ``(j, n)`` over the right
    side and the fan of ``(j+1, 0)`` over the left side."""
    m, n = cfg.m, cfg.n
    ix = cfg.index
    tris = []
    for j in range(m):
        for s in range(n):
            tris.append((ix(j, n), ix(j + 1, s), ix(j + 1, s + 1)))
            tris.append((ix(j + 1, 0), ix(j, s), ix(j, s + 1)))
    return Triangulation(cfg, tris)


def canonical_heights(cfg: GridConfig) -> list[int]:
    return [1 << i for i in range(cfg.size)]


def is_unimodular(T: Triangulation) -> bool:
    pts = T.config.points
    return all(abs(orient(*(pts[i] for i in tri))) == 1 for tri in T.triangles)


# ------------------------------------------------------------ regularity


def fold_forms(T: Triangulation) -> list[dict[int, int]]:
    """Linear forms in the heights, one per interior edge (and per unused
    point), that must all be positive for the heights to induce ``T`` in the
    lower hull convention."""
    pts = T.config.points
    forms = []

    def form(i, j, k, l):
        D = orient(pts[i], pts[j], pts[k])
        s = 1 if D > 0 else -1
        coef = {l: s * D}
        for v, c in ((i, orient(pts[l], pts[j], pts[k])), (j, orient(pts[i], pts[l], pts[k])), (k, orient(pts[i], pts[j], pts[l]))):
            coef[v] = coef.get(v, 0) - s * c
        return {v: c for v, c in coef.items() if c}

    for a, b, c, d in T.interior_edges():
        forms.append(form(a, b, c, d))
    used = T.used_points()
    for q in range(T.config.size):
        if q in used:
            continue
        for tri in T.sorted_triangles:
            a, b, c = (pts[i] for i in tri)
            signs = [orient(a, b, pts[q]), orient(b, c, pts[q]), orient(c, a, pts[q])]
            if min(signs) >= 0 or max(signs) <= 0:
                forms.append(form(*tri, q))
                break
    return forms


def induces(T: Triangulation, heights: Sequence[int], hull: str = LOWER) -> bool:
    """Exact check that ``heights`` induce ``T``."""
    h = [-x for x in heights] if hull == UPPER else list(heights)
    return all(sum(c * h[v] for v, c in f.items()) > 0 for f in fold_forms(T))


def is_regular(T: Triangulation) -> tuple[int, ...] | None:
    """Integer lower-hull witness for ``T`` or None if ``T`` is not regular.

    Solves ``max eps`` subject to ``fold(h) >= eps`` for every fold form,
    ``eps <= 1`` and ``h >= 0`` with exact rationals; ``eps > 0`` certifies
    regularity and the optimal ``h`` (denominators cleared) is a witness."""
    forms = fold_forms(T)
    N = T.config.size
    if not forms:
        return tuple([0] * N)
    A = []
    for f in forms:
        row = [0] * (N + 1)
        for v, c in f.items():
            row[v] = -c
        row[N] = 1
        A.append(row)
    A.append([0] * N + [1])
    b = [0] * len(forms) + [1]
    c = [0] * N + [1]
    res = maximize(c, A, b)
    if res.status != OPTIMAL or res.value <= 0:
        return None
    hs = res.x[:N]
    den = 1
    for v in hs:
        den = math.lcm(den, int(v.denominator))
    ints = [int(v * den) for v in hs]
    g = math.gcd(*ints) or 1
    witness = tuple(x // g for x in ints)
    if regular_from_heights(T.config, witness) != T:
        raise ArithmeticError("regularity witness does not reproduce the triangulation")
    return witness


# ------------------------------------------------------------ flips


def flips(T: Triangulation) -> list[Triangulation]:
    """All 2-2 flips across interior edges whose two triangles form a
    strictly convex quadrilateral."""
    pts = T.config.points
    out = []
    for a, b, c, d in T.interior_edges():
        o1 = orient(pts[c], pts[d], pts[a])
        o2 = orient(pts[c], pts[d], pts[b])
        if o1 * o2 >= 0:
            continue
        tris = set(T.triangles)
        tris.discard(_canon((a, b, c)))
        tris.discard(_canon((a, b, d)))
        tris.add(_canon((a, c, d)))
        tris.add(_canon((b, c, d)))
        out.append(Triangulation(T.config, tris))
    return sorted(out)


class _FlipEngine:
    """Bitmask flip graph over the unimodular triangles of a grid."""

    def __init__(self, cfg: GridConfig):
        self.cfg = cfg
        pts = cfg.points
        self.tris = [t for t in combinations(range(cfg.size), 3) if abs(orient(*(pts[i] for i in t))) == 1]
        self.tid = {t: i for i, t in enumerate(self.tris)}
        self.tedges = [list(combinations(t, 2)) for t in self.tris]
        self.partner: dict = {}
        by_edge: dict = {}
        for i, t in enumerate(self.tris):
            for e in combinations(t, 2):
                by_edge.setdefault(e, []).append(i)
        for (a, b), ids in by_edge.items():
            for i, j in combinations(ids, 2):
                c = next(x for x in self.tris[i] if x not in (a, b))
                d = next(x for x in self.tris[j] if x not in (a, b))
                if orient(pts[a], pts[b], pts[c]) * orient(pts[a], pts[b], pts[d]) >= 0:
                    continue
                if orient(pts[c], pts[d], pts[a]) * orient(pts[c], pts[d], pts[b]) >= 0:
                    continue
                new = (1 << self.tid[_canon((a, c, d))]) | (1 << self.tid[_canon((b, c, d))])
                self.partner[(a, b, min(i, j), max(i, j))] = new

    def encode(self, T: Triangulation) -> int:
        return sum(1 << self.tid[t] for t in T.triangles)

    def decode(self, mask: int, validate: bool = True) -> Triangulation:
        tris = []
        i = 0
        while mask:
            if mask & 1:
                tris.append(self.tris[i])
            mask >>= 1
            i += 1
        return Triangulation(self.cfg, tris, validate=validate)

    def neighbours(self, mask: int):
        at: dict = {}
        mm, i = mask, 0
        while mm:
            if mm & 1:
                for e in self.tedges[i]:
                    at.setdefault(e, []).append(i)
            mm >>= 1
            i += 1
        for (a, b), ids in at.items():
            if len(ids) == 2:
                i, j = sorted(ids)
                new = self.partner.get((a, b, i, j))
                if new is not None:
                    yield (mask ^ (1 << i) ^ (1 << j)) | new

    def closure(self, seeds: Iterable[int], seen: set | None = None) -> set:
        seen = set() if seen is None else seen
        queue = deque()
        for s in seeds:
            if s not in seen:
                seen.add(s)
                queue.append(s)
        while queue:
            cur = queue.popleft()
            for nb in self.neighbours(cur):
                if nb not in seen:
                    seen.add(nb)
                    queue.append(nb)
        return seen


def enumerate_unimodular(cfg: GridConfig) -> list[Triangulation]:
    """Every unimodular triangulation reachable by flips from ``T_{m,n}``."""
    if cfg.size > MAX_ENUM_POINTS:
        raise ValueError(f"flip enumeration is capped at {MAX_ENUM_POINTS} points")
    eng = _FlipEngine(cfg)
    masks = eng.closure([eng.encode(placing_triangulation(cfg))])
    return sorted(eng.decode(m) for m in masks)


def random_regular_unimodular(cfg: GridConfig, rng: random.Random, tries: int = 1000) -> Triangulation | None:
    for _ in range(tries):
        h = [rng.randrange(1 << 30) for _ in range(cfg.size)]
        try:
            T = regular_from_heights(cfg, h)
        except ValueError:
            continue
        if is_unimodular(T):
            return T
    return None


def completeness_guard(cfg: GridConfig, found: Iterable[Triangulation], samples: int = 100, seed: int = 0) -> int:
    """Number of random regular unimodular triangulations missing from
    ``found`` (0 means no new flip component was detected)."""
    have = set(found)
    rng = random.Random(seed)
    missing = 0
    for _ in range(samples):
        T = random_regular_unimodular(cfg, rng)
        if T is not None and T not in have:
            missing += 1
    return missing


def enumerate_regular_unimodular(cfg: GridConfig, with_total: bool = False):
    """Regular unimodular triangulations, sorted canonically.  With
    ``with_total`` also return the count before the regularity filter."""
    allT = enumerate_unimodular(cfg)
    regular = [T for T in allT if is_regular(T) is not None]
    return (regular, len(allT)) if with_total else regular


# ------------------------------------------------------------ T-orderings


def t_ordering_heights(T: Triangulation) -> tuple[int, ...]:
    """Lower-hull heights for ``T``: the powers of two for the placing
    triangulation when they induce it, otherwise the LP witness."""
    cfg = T.config
    if T == placing_triangulation(cfg):
        h = canonical_heights(cfg)
        if induces(T, h):
            return tuple(h)
    w = is_regular(T)
    if w is None:
        raise ValueError("triangulation is not regular")
    return w


def upper_weights(heights: Sequence[int]) -> tuple[int, ...]:
    """``W*1 - h`` with ``W = max(h) + 1``: induces in the upper convention
    what ``h`` induces in the lower one, and stays positive."""
    W = max(heights) + 1
    return tuple(W - x for x in heights)


def t_ordering_weights(T: Triangulation) -> MonomialOrdering:
    return MonomialOrdering.weighted(T.config.space(), upper_weights(t_ordering_heights(T)))


def t_ordering_violation(T: Triangulation, order: MonomialOrdering, p: int):
    """Label of the first generator whose leading monomial is not supported
    on a triangle of ``T``, or None."""
    gens = jet_generators_expansion(p, (T.config.m, T.config.n))
    for lab, g in zip(gens.labels, gens.generators):
        lm = g.leading_monomial(order)
        if not T.contains_support(i for i, a in enumerate(lm) if a):
            return lab
    return None


def is_t_ordering(T: Triangulation, order: MonomialOrdering, p: int) -> bool:
    return t_ordering_violation(T, order, p) is None


# ------------------------------------------------------------ search


@dataclass
class SearchEntry:
    triangulation: Triangulation
    weights: tuple
    is_gb: bool
    pairs_checked: int


@dataclass
class SearchResult:
    config: GridConfig
    p: int
    total: int
    regular_unimodular: int
    entries: list[SearchEntry]

    @property
    def winners(self) -> list[Triangulation]:
        return [e.triangulation for e in self.entries if e.is_gb]

    def to_json(self) -> dict:
        wins = [e for e in self.entries if e.is_gb]
        return {
            "m": self.config.m,
            "n": self.config.n,
            "p": self.p,
            "total": self.total,
            "regular_unimodular": self.regular_unimodular,
            "gb_count": len(wins),
            "gb_triangulations": [
                {"triangles": e.triangulation.to_json(), "weights": list(e.weights)} for e in wins
            ],
            "note": "one interior weight per triangulation; verdict is per (triangulation, weight) pair",
        }


def _search_one(args) -> SearchEntry:
    T, p, weights = args
    order = MonomialOrdering.weighted(T.config.space(), weights)
    bad = t_ordering_violation(T, order, p)
    if bad is not None:
        raise AssertionError(f"weights {weights} are not a T-ordering (generator {bad})")
    gens = jet_generators_expansion(p, (T.config.m, T.config.n))
    rep = verify_groebner(gens.generators, order)
    return SearchEntry(T, tuple(weights), rep.is_gb, rep.pairs_checked)


def gb_triangulation_search(cfg: GridConfig, p: int, jobs: int = 1, triangulations=None, weights=None) -> SearchResult:
    """Which regular unimodular triangulations make the jet generators a
    Groebner basis for the weighted revlex order of one of their weights."""
    if cfg.size > MAX_SEARCH_POINTS:
        raise ValueError(f"search is capped at {MAX_SEARCH_POINTS} points")
    total = None
    if triangulations is None:
        triangulations, total = enumerate_regular_unimodular(cfg, with_total=True)
    triangulations = sorted(triangulations)
    if total is None:
        total = len(triangulations)
    tasks = []
    for T in triangulations:
        w = weights if weights is not None else upper_weights(t_ordering_heights(T))
        tasks.append((T, p, tuple(w)))
    if jobs > 1 and len(tasks) > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=jobs) as ex:
            entries = list(ex.map(_search_one, tasks, chunksize=max(1, len(tasks) // (4 * jobs))))
    else:
        entries = [_search_one(t) for t in tasks]
    return SearchResult(cfg, p, total, len(triangulations), entries)

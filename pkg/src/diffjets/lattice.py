"""H-polytopes, lattice-point counts of dilates, Ehrhart interpolation,
vertex enumeration, and the graph utilities behind stable-set polytopes."""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, islice
from typing import Iterable, Sequence

import numpy as np

Row = tuple[tuple[int, ...], int]

MAX_VERTEX_DIM = 12
MAX_GRAPH_SIZE = 24


class UnboundedError(ValueError):
    pass


@dataclass(frozen=True)
class HPolytope:
    """``{u >= 0 : a.u <= b for every row (a, b)}``, rows kept sorted."""

    dim: int
    rows: tuple[Row, ...]

    def __init__(self, dim: int, rows: Iterable):
        clean = []
        for a, b in rows:
            a = tuple(int(x) for x in a)
            if len(a) != dim:
                raise ValueError("row length does not match the dimension")
            clean.append((a, int(b)))
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "rows", tuple(sorted(set(clean), reverse=True)))

    @property
    def nonnegative_rows(self) -> bool:
        return all(min(a) >= 0 for a, _ in self.rows)

    def is_bounded(self) -> bool:
        covered = set()
        for a, b in self.rows:
            if min(a) >= 0:
                covered.update(i for i, x in enumerate(a) if x > 0)
        return len(covered) == self.dim

    def contains(self, u: Sequence, t=1) -> bool:
        if len(u) != self.dim or min(u, default=0) < 0:
            return False
        return all(sum(x * y for x, y in zip(a, u)) <= t * b for a, b in self.rows)

    def is_path_polytope(self) -> bool:
        """Exactly the rows ``u_i + u_{i+1} <= 1``, 0 <= i < dim-1."""
        return self.rows == build_Pn(self.dim - 1).rows if self.dim >= 2 else False

    def to_json(self) -> dict:
        return {"dim": self.dim, "rows": [{"a": list(a), "b": b} for a, b in self.rows]}


def build_Pn(n: int) -> HPolytope:
    """``u_i + u_{i+1} <= 1`` for 0 <= i < n, in dimension n+1."""
    if n < 1:
        raise ValueError("P_n needs n >= 1: without rows the polytope is unbounded")
    rows = []
    for i in range(n):
        a = [0] * (n + 1)
        a[i] = a[i + 1] = 1
        rows.append((a, 1))
    return HPolytope(n + 1, rows)


def build_P_from_triangles(dim: int, triangles: Iterable[Sequence[int]]) -> HPolytope:
    rows = []
    for tri in triangles:
        a = [0] * dim
        for v in tri:
            a[v] = 1
        rows.append((a, 1))
    return HPolytope(dim, rows)


def build_P_from_triangulation(T) -> HPolytope:
    """One row ``u_a + u_b + u_c <= 1`` per triangle, one variable per point."""
    return build_P_from_triangles(T.config.size, T.triangles)


# ---------------------------------------------------------------- counting


def _check_bounded(P: HPolytope):
    if not P.is_bounded():
        raise UnboundedError("some coordinate has no nonnegative bounding row")


def lattice_count_chain(n: int, t: int) -> int:
    """Lattice points of ``t P_n``; DP over the value of the last coordinate."""
    if t < 0:
        return 0
    counts = [1] * (t + 1)
    for _ in range(n):
        prefix = 0
        acc = []
        for c in counts:
            prefix += c
            acc.append(prefix)
        # next coordinate w: previous value v must satisfy v <= t - w
        counts = [acc[t - w] for w in range(t + 1)]
    return sum(counts)


def lattice_count_backtrack(P: HPolytope, t: int) -> int:
    """Plain backtracking with per-coordinate upper bounds from the rows."""
    _check_bounded(P)
    d = P.dim
    rows = [(a, t * b) for a, b in P.rows]
    pos_rows = [[(r, a[i]) for r, (a, _) in enumerate(rows) if a[i] > 0 and min(a) >= 0] for i in range(d)]
    mixed = [r for r, (a, _) in enumerate(rows) if min(a) < 0]
    if any(rhs < 0 for a, rhs in rows if min(a) >= 0):
        return 0
    partial = [0] * len(rows)
    u = [0] * d

    def bound(i):
        return min((rows[r][1] - partial[r]) // c for r, c in pos_rows[i])

    def mixed_ok():
        return all(sum(x * y for x, y in zip(rows[r][0], u)) <= rows[r][1] for r in mixed)

    def rec(i):
        hi = bound(i)
        if hi < 0:
            return 0
        if i == d - 1 and not mixed:
            return hi + 1
        total = 0
        a_col = [(r, rows[r][0][i]) for r in range(len(rows)) if rows[r][0][i]]
        for v in range(hi + 1):
            u[i] = v
            for r, c in a_col:
                partial[r] += c * v
            if i == d - 1:
                total += mixed_ok()
            else:
                total += rec(i + 1)
            for r, c in a_col:
                partial[r] -= c * v
        u[i] = 0
        return total

    if d == 0:
        return 1
    return rec(0)


def lattice_count_frontier(P: HPolytope, t: int) -> int:
    """Layered DP over the coordinates; the state is the vector of partial
    row sums of rows that are still open.  Needs nonnegative rows."""
    _check_bounded(P)
    if not P.nonnegative_rows:
        raise ValueError("frontier counting needs nonnegative row coefficients")
    rows = [(a, t * b) for a, b in P.rows]
    if any(rhs < 0 for _, rhs in rows):
        return 0
    rows = [(a, rhs) for a, rhs in rows if any(a)]
    d = P.dim
    span = [(min(i for i, x in enumerate(a) if x), max(i for i, x in enumerate(a) if x)) for a, _ in rows]
    states: dict[tuple, int] = {(): 1}
    open_rows: list[int] = []
    for i in range(d):
        starting = [r for r, (lo, _) in enumerate(span) if lo == i]
        cur = open_rows + starting
        touching = [(pos, rows[r][0][i], rows[r][1]) for pos, r in enumerate(cur) if rows[r][0][i]]
        keep = [pos for pos, r in enumerate(cur) if span[r][1] > i]
        nxt: dict[tuple, int] = defaultdict(int)
        pad = (0,) * len(starting)
        for st, cnt in states.items():
            full = st + pad
            hi = min((rhs - full[pos]) // c for pos, c, rhs in touching)
            for v in range(hi + 1):
                vals = list(full)
                for pos, c, _ in touching:
                    vals[pos] += c * v
                nxt[tuple(vals[pos] for pos in keep)] += cnt
        states = nxt
        open_rows = [cur[pos] for pos in keep]
    return sum(states.values())


def lattice_count(P: HPolytope, t: int, method: str = "auto") -> int:
    """Number of integer ``u >= 0`` with ``a.u <= t*b`` for every row."""
    if method == "auto":
        if P.is_path_polytope():
            method = "chain"
        elif P.nonnegative_rows:
            method = "frontier"
        else:
            method = "backtrack"
    if method == "chain":
        if not P.is_path_polytope():
            raise ValueError("chain DP only applies to P_n")
        return lattice_count_chain(P.dim - 1, t)
    if method == "frontier":
        return lattice_count_frontier(P, t)
    if method == "backtrack":
        return lattice_count_backtrack(P, t)
    raise ValueError(f"unknown counting method {method!r}")


# ---------------------------------------------------------------- Ehrhart


@dataclass(frozen=True)
class EhrhartPolynomial:
    """``L(t) = sum coeffs[i] * t**i`` with exact rational coefficients."""

    coeffs: tuple[Fraction, ...]
    checked_points: int = 0

    @property
    def degree(self) -> int:
        d = len(self.coeffs) - 1
        while d > 0 and self.coeffs[d] == 0:
            d -= 1
        return d

    def __call__(self, t) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def shifted(self, s: int) -> EhrhartPolynomial:
        """Coefficients of ``q(p) = L(p + s)``."""
        out = [Fraction(0)] * len(self.coeffs)
        for k, c in enumerate(self.coeffs):
            for j in range(k + 1):
                out[j] += c * math.comb(k, j) * Fraction(s) ** (k - j)
        return EhrhartPolynomial(tuple(out), self.checked_points)

    def to_json(self) -> dict:
        return {
            "coeffs": [f"{c.numerator}/{c.denominator}" for c in self.coeffs],
            "checked_points": self.checked_points,
        }


def interpolate(points: Sequence[tuple[int, int]]) -> tuple[Fraction, ...]:
    """Monomial-basis coefficients of the interpolating polynomial (Newton)."""
    xs = [Fraction(x) for x, _ in points]
    table = [Fraction(y) for _, y in points]
    n = len(points)
    newton = [table[0]]
    for level in range(1, n):
        table = [(table[i + 1] - table[i]) / (xs[i + level] - xs[i]) for i in range(n - level)]
        newton.append(table[0])
    coeffs = [Fraction(0)] * n
    basis = [Fraction(1)]  # running product (t - x_0)...(t - x_{k-1})
    for k in range(n):
        for i, b in enumerate(basis):
            coeffs[i] += newton[k] * b
        nb = [Fraction(0)] * (len(basis) + 1)
        for i, b in enumerate(basis):
            nb[i + 1] += b
            nb[i] -= xs[k] * b
        basis = nb
    return tuple(coeffs)


def ehrhart_interpolate(P: HPolytope, extra_points: int = 2, method: str = "auto") -> EhrhartPolynomial:
    """Interpolate through ``t = 0..dim`` and confirm at ``extra_points`` more."""
    d = P.dim
    pts = [(t, lattice_count(P, t, method)) for t in range(d + 1)]
    L = EhrhartPolynomial(interpolate(pts))
    for t in range(d + 1, d + 1 + extra_points):
        got = lattice_count(P, t, method)
        if L(t) != got:
            raise ArithmeticError(f"Ehrhart check failed at t={t}: {L(t)} != {got}")
    return EhrhartPolynomial(L.coeffs, extra_points)


# ---------------------------------------------------------------- vertices


def _solve_exact(A: list[list[int]], b: list[int]) -> list[Fraction] | None:
    n = len(A)
    M = [[Fraction(x) for x in row] + [Fraction(r)] for row, r in zip(A, b)]
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col] != 0), None)
        if piv is None:
            return None
        M[col], M[piv] = M[piv], M[col]
        pv = M[col][col]
        for r in range(n):
            if r != col and M[r][col] != 0:
                f = M[r][col] / pv
                M[r] = [x - f * y for x, y in zip(M[r], M[col])]
    return [M[i][n] / M[i][i] for i in range(n)]


def _rank(rows: list[list[Fraction]]) -> int:
    M = [list(r) for r in rows]
    rank = 0
    ncols = len(M[0]) if M else 0
    for col in range(ncols):
        piv = next((r for r in range(rank, len(M)) if M[r][col] != 0), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        for r in range(len(M)):
            if r != rank and M[r][col] != 0:
                f = M[r][col] / M[rank][col]
                M[r] = [x - f * y for x, y in zip(M[r], M[rank])]
        rank += 1
    return rank


def enumerate_vertices(P: HPolytope, chunk: int = 40000) -> list[tuple[Fraction, ...]]:
    """All vertices, by solving every square subsystem of the constraints
    (rows plus nonnegativity).

    Subsystems are screened in floating point and every surviving point is
    re-solved and certified exactly (feasible, tight constraints of full
    rank).  Screening is safe: the systems are integral, so an infeasible
    basic solution violates some constraint by at least ``1/|det|``, far
    above the tolerance used.
    """
    d = P.dim
    if d > MAX_VERTEX_DIM:
        raise ValueError(f"vertex enumeration is capped at dimension {MAX_VERTEX_DIM}")
    cons_A = [list(a) for a, _ in P.rows] + [[-int(i == j) for j in range(d)] for i in range(d)]
    cons_b = [b for _, b in P.rows] + [0] * d
    A = np.array(cons_A, dtype=float)
    b = np.array(cons_b, dtype=float)
    norms = sorted((float(np.linalg.norm(r)) for r in A), reverse=True)
    hadamard = math.prod(norms[:d]) * max(1.0, float(np.max(np.abs(b))))
    tol = 0.25 / max(hadamard, 1.0)
    candidates: dict[tuple, tuple[int, ...]] = {}
    combos = combinations(range(len(cons_A)), d)
    while True:
        block = list(islice(combos, chunk))
        if not block:
            break
        idx = np.array(block, dtype=np.intp)
        sub = A[idx]
        dets = np.linalg.det(sub)
        ok = np.abs(dets) > 0.5
        if not ok.any():
            continue
        idx, sub = idx[ok], sub[ok]
        x = np.linalg.solve(sub, b[idx][:, :, None])[:, :, 0]
        feas = np.all(x @ A.T <= b + tol, axis=1)
        for row, pt in zip(idx[feas], x[feas]):
            candidates.setdefault(tuple(np.round(pt, 6)), tuple(row))
    vertices = set()
    for subset in candidates.values():
        sol = _solve_exact([cons_A[i] for i in subset], [cons_b[i] for i in subset])
        if sol is None:
            continue
        slack = [sum(a * x for a, x in zip(row, sol)) - rhs for row, rhs in zip(cons_A, cons_b)]
        if any(s > 0 for s in slack):
            continue
        tight = [[Fraction(a) for a in cons_A[i]] for i, s in enumerate(slack) if s == 0]
        if _rank(tight) == d:
            vertices.add(tuple(sol))
    return sorted(vertices)


# ---------------------------------------------------------------- graphs


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on ``0..n-1``."""

    n: int
    edges: tuple[tuple[int, int], ...]

    def __init__(self, n: int, edges: Iterable[Sequence[int]]):
        clean = set()
        for u, v in edges:
            if u == v:
                raise ValueError("loops are not allowed")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError("edge endpoint out of range")
            clean.add((min(u, v), max(u, v)))
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", tuple(sorted(clean)))

    def adjacency(self) -> list[set[int]]:
        adj = [set() for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return adj

    def complement(self) -> Graph:
        present = set(self.edges)
        return Graph(self.n, [e for e in combinations(range(self.n), 2) if e not in present])

    @classmethod
    def path(cls, k: int) -> Graph:
        return cls(k, [(i, i + 1) for i in range(k - 1)])

    @classmethod
    def cycle(cls, k: int) -> Graph:
        return cls(k, [(i, (i + 1) % k) for i in range(k)])

    @classmethod
    def from_triangles(cls, n: int, triangles: Iterable[Sequence[int]]) -> Graph:
        edges = set()
        for tri in triangles:
            for u, v in combinations(tri, 2):
                edges.add((min(u, v), max(u, v)))
        return cls(n, edges)

    @classmethod
    def from_edge_list_text(cls, text: str) -> Graph:
        """Whitespace-separated ``u v`` pairs, one per line; ``#`` comments.
        An optional first line ``n N`` fixes the vertex count."""
        n = None
        edges = []
        for line in text.splitlines():
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if parts[0] == "n":
                n = int(parts[1])
                continue
            edges.append((int(parts[0]), int(parts[1])))
        if n is None:
            n = 1 + max((max(e) for e in edges), default=-1)
        return cls(n, edges)


def _check_size(G: Graph):
    if G.n > MAX_GRAPH_SIZE:
        raise ValueError(f"graph algorithms are capped at {MAX_GRAPH_SIZE} vertices")


def stable_sets(G: Graph) -> list[tuple[int, ...]]:
    """Every stable set (including the empty set), by backtracking."""
    _check_size(G)
    adj = G.adjacency()
    out = []

    def rec(start, chosen, blocked):
        out.append(tuple(chosen))
        for v in range(start, G.n):
            if v not in blocked:
                chosen.append(v)
                rec(v + 1, chosen, blocked | adj[v])
                chosen.pop()

    rec(0, [], frozenset())
    return sorted(out, key=lambda s: (len(s), s))


def max_cliques(G: Graph) -> list[tuple[int, ...]]:
    """Maximal cliques (Bron-Kerbosch with pivoting)."""
    _check_size(G)
    adj = G.adjacency()
    out = []

    def bk(R, P, X):
        if not P and not X:
            out.append(tuple(sorted(R)))
            return
        pivot = max(P | X, key=lambda u: len(adj[u] & P))
        for v in list(P - adj[pivot]):
            bk(R | {v}, P & adj[v], X & adj[v])
            P = P - {v}
            X = X | {v}

    bk(set(), set(range(G.n)), set())
    return sorted(out)


def qstab(G: Graph) -> HPolytope:
    """Clique relaxation of the stable-set polytope (maximal cliques only)."""
    return build_P_from_triangles(G.n, max_cliques(G))


def _has_odd_hole(adj: list[set[int]], n: int) -> bool:
    """Is there an induced cycle of odd length >= 5?"""
    # grow induced paths s - v1 - ... whose vertices all exceed s
    for s in range(n):
        for v in adj[s]:
            if v > s and _extend_from(adj, s, [s, v]):
                return True
    return False


def _extend_from(adj, s, path) -> bool:
    last = path[-1]
    forbidden = set()
    for u in path[1:-1]:
        forbidden |= adj[u]
    for w in adj[last]:
        if w <= s or w in path or w in forbidden:
            continue
        closes = s in adj[w]
        if closes:
            k = len(path) + 1
            if k >= 5 and k % 2 == 1:
                return True
            continue
        if _extend_from(adj, s, path + [w]):
            return True
    return False


def is_perfect_desk(G: Graph) -> bool:
    """No odd hole and no odd antihole (strong perfect graph theorem)."""
    _check_size(G)
    if _has_odd_hole(G.adjacency(), G.n):
        return False
    H = G.complement()
    return not _has_odd_hole(H.adjacency(), H.n)

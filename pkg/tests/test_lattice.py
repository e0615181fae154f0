from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from diffjets.lattice import (
    EhrhartPolynomial,
    Graph,
    HPolytope,
    UnboundedError,
    build_P_from_triangles,
    build_P_from_triangulation,
    build_Pn,
    ehrhart_interpolate,
    enumerate_vertices,
    interpolate,
    is_perfect_desk,
    lattice_count,
    max_cliques,
    qstab,
    stable_sets,
)
from diffjets.triangulation import GridConfig, placing_triangulation

import oracles


def test_build_pn_rows():
    assert build_Pn(1).rows == (((1, 1), 1),)
    P2 = build_Pn(2)
    assert set(P2.rows) == {((1, 1, 0), 1), ((0, 1, 1), 1)}
    P6 = build_Pn(6)
    assert P6.dim == 7 and len(P6.rows) == 6
    with pytest.raises(ValueError):
        build_Pn(0)


def test_polytope_from_triangulation():
    T = placing_triangulation(GridConfig(1, 2))
    P = build_P_from_triangulation(T)
    assert P.dim == 6 and len(P.rows) == 4
    for m in (1, 2, 3):
        P = build_P_from_triangulation(placing_triangulation(GridConfig(m, 2)))
        assert P.dim == 3 * (m + 1) and len(P.rows) == 4 * m
    assert len(build_P_from_triangles(3, [(0, 1, 2)]).rows) == 1


def test_known_counts():
    P6 = build_Pn(6)
    assert lattice_count(P6, 0) == 1
    assert lattice_count(P6, 1) == 34
    assert lattice_count(P6, 4) == 8272
    assert lattice_count(P6, 5) == 26585
    assert lattice_count(build_Pn(2), 1) == oracles.count_box(build_Pn(2).rows, 3, 1) == 5
    assert lattice_count(P6, -1) == 0


def test_unbounded_rejected():
    P = HPolytope(3, [((1, 1, 0), 1)])
    with pytest.raises(UnboundedError):
        lattice_count(P, 2)


@pytest.mark.parametrize("n", range(1, 9))
def test_chain_dp_matches_backtracking(n):
    P = build_Pn(n)
    for t in range(0, 9):
        c = lattice_count(P, t, "chain")
        assert c == lattice_count(P, t, "backtrack")
        assert c == lattice_count(P, t, "frontier")


rows_strategy = st.lists(
    st.tuples(st.tuples(*[st.integers(0, 2)] * 3), st.integers(0, 3)), min_size=1, max_size=4
)


@given(rows_strategy, st.integers(0, 3))
def test_counting_matches_box_scan(rows, t):
    rows = list(rows) + [((1, 1, 1), 2)]
    P = HPolytope(3, rows)
    want = oracles.count_box(P.rows, 3, t)
    assert lattice_count(P, t, "backtrack") == want
    assert lattice_count(P, t, "frontier") == want


def test_mixed_sign_rows_by_backtracking():
    P = HPolytope(2, [((1, 1), 3), ((1, -1), 0)])
    # u0 <= u1 and u0 + u1 <= 3t
    want = sum(1 for a in range(7) for b in range(7) if a <= b and a + b <= 6)
    assert lattice_count(P, 2) == want


def test_ehrhart_p1():
    L = ehrhart_interpolate(build_Pn(1))
    pts = [(t, oracles.count_box(build_Pn(1).rows, 2, t)) for t in range(3)]
    assert L.coeffs == (Fraction(1), Fraction(3, 2), Fraction(1, 2))
    for t in range(8):
        assert L(t) == oracles.lagrange_eval(pts, t) == (t + 1) * (t + 2) // 2


@pytest.mark.parametrize("n", range(1, 6))
def test_ehrhart_degree_and_consistency(n):
    P = build_Pn(n)
    L = ehrhart_interpolate(P)
    assert L.degree == n + 1
    assert L(0) == 1
    assert L.checked_points == 2
    for t in range(n + 5):
        assert L(t) == lattice_count(P, t)


def test_ehrhart_of_triangulation_polytope_has_full_degree():
    P = build_P_from_triangulation(placing_triangulation(GridConfig(1, 2)))
    L = ehrhart_interpolate(P)
    assert L.degree == 6
    for t in range(P.dim + 4):
        assert L(t) == lattice_count(P, t)


def test_shift_and_interpolate():
    L = EhrhartPolynomial(interpolate([(0, 1), (1, 3), (2, 6)]))
    assert L.shifted(1)(4) == L(5)
    assert L.shifted(-1).shifted(1) == L


def test_interpolation_mismatch_raises(monkeypatch):
    import diffjets.lattice as lat

    bad = HPolytope(1, [((1,), 1)])
    assert ehrhart_interpolate(bad).coeffs == (1, 1)
    # quadratic counts cannot come from a one-dimensional polytope
    monkeypatch.setattr(lat, "lattice_count", lambda Q, t, method="auto": (t + 1) * (t + 2) // 2)
    with pytest.raises(ArithmeticError):
        lat.ehrhart_interpolate(bad)


def test_vertices_small():
    V1 = enumerate_vertices(build_Pn(1))
    assert set(V1) == {(0, 0), (1, 0), (0, 1)}
    V2 = enumerate_vertices(build_Pn(2))
    assert set(V2) == {(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 0, 1)}


def test_fractional_vertex_found():
    # the odd cycle's clique relaxation has the all-halves vertex
    V = enumerate_vertices(qstab(Graph.cycle(5)))
    assert (Fraction(1, 2),) * 5 in V


@pytest.mark.parametrize("n", range(1, 7))
def test_pn_vertices_are_no_consecutive_ones(n):
    V = {tuple(int(x) for x in v) for v in enumerate_vertices(build_Pn(n))}
    assert all(all(x.denominator == 1 for x in v) for v in enumerate_vertices(build_Pn(n)))
    assert V == set(oracles.no_consecutive_ones(n + 1))


def test_vertex_dimension_cap():
    with pytest.raises(ValueError):
        enumerate_vertices(build_Pn(12))


def test_path_graph_stable_sets():
    G = Graph.path(3)
    assert stable_sets(G) == [(), (0,), (1,), (2,), (0, 2)]
    assert sorted(stable_sets(G)) == sorted(oracles.stable_sets_brute(3, G.edges))


@given(st.integers(1, 8), st.lists(st.tuples(st.integers(0, 7), st.integers(0, 7)), max_size=14))
def test_stable_sets_brute(n, raw):
    edges = [(a, b) for a, b in raw if a < n and b < n and a != b]
    G = Graph(n, edges)
    assert sorted(stable_sets(G)) == sorted(oracles.stable_sets_brute(n, G.edges))
    # cliques of G are stable sets of the complement; maximal ones cover every edge
    H = G.complement()
    cl = max_cliques(G)
    for c in cl:
        assert c in stable_sets(H)
    covered = {e for c in cl for e in combinations(c, 2)}
    assert set(G.edges) <= covered


def test_qstab_of_path_is_pn():
    for n in range(1, 7):
        assert qstab(Graph.path(n + 1)) == build_Pn(n)


def test_cliques_of_triangulation_graph_are_triangles():
    for m in (1, 2, 3):
        T = placing_triangulation(GridConfig(m, 2))
        assert set(max_cliques(T.edge_graph())) == set(T.triangles)


def test_perfectness():
    assert is_perfect_desk(Graph.path(7))
    assert not is_perfect_desk(Graph.cycle(5))
    assert not is_perfect_desk(Graph.cycle(7))
    assert not is_perfect_desk(Graph.cycle(7).complement())
    assert is_perfect_desk(Graph.cycle(6))
    G = placing_triangulation(GridConfig(2, 2)).edge_graph()
    assert G.n == 9 and len(G.edges) == 16
    assert is_perfect_desk(G)
    with pytest.raises(ValueError):
        is_perfect_desk(Graph.path(25))


def test_odd_hole_inside_larger_graph():
    # a 5-cycle with a pendant chord-free tail still has the hole
    G = Graph(7, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (4, 5), (5, 6)])
    assert not is_perfect_desk(G)
    # adding a chord kills the hole and leaves triangles and a 4-cycle
    assert is_perfect_desk(Graph(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 2)]))


def test_edge_list_text():
    G = Graph.from_edge_list_text("# path\n0 1\n1 2\n")
    assert G == Graph.path(3)
    assert Graph.from_edge_list_text("n 4\n0 1\n").n == 4

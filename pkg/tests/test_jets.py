import pytest
from hypothesis import given
from hypothesis import strategies as st

from diffjets.jets import (
    D_S,
    D_T,
    TruncatedDiffRing,
    check_iso_scaling,
    derive,
    jet_generators,
    jet_generators_differentiation,
    jet_generators_expansion,
    multidegree,
)
from diffjets.poly import Polynomial

import oracles


def _as_int_dict(poly):
    return {e: int(c) for e, c in poly.terms.items()}


def test_c22_generators():
    gens = jet_generators_expansion(2, 2)
    x = [Polynomial.var(gens.ring.space, i) for i in range(3)]
    want = [x[0] ** 2, x[0] * x[1] * 2, x[1] ** 2 + x[0] * x[2] * 2, x[1] * x[2] * 2, x[2] ** 2]
    assert gens.generators == want
    assert gens.labels == [0, 1, 2, 3, 4]


@pytest.mark.parametrize("p,n", [(1, 3), (2, 2), (3, 4), (4, 3), (5, 2)])
def test_chain_expansion_matches_brute_product(p, n):
    gens = jet_generators_expansion(p, n)
    brute = oracles.expand_power_chain(p, n)
    assert len(gens) == n * p + 1
    for k, g in zip(gens.labels, gens.generators):
        assert _as_int_dict(g) == brute[k]


@pytest.mark.parametrize("p,m,n", [(1, 1, 1), (2, 1, 2), (2, 2, 2), (3, 1, 3), (3, 2, 1)])
def test_grid_expansion_matches_brute_product(p, m, n):
    gens = jet_generators_expansion(p, (m, n))
    brute = oracles.expand_power_grid(p, m, n)
    assert len(gens) == (m * p + 1) * (n * p + 1)
    for lab, g in zip(gens.labels, gens.generators):
        assert _as_int_dict(g) == brute[lab]


def test_p_zero_is_unit():
    gens = jet_generators_expansion(0, 3)
    assert gens.generators == [Polynomial.constant(gens.ring.space, 1)]
    with pytest.raises(ValueError):
        jet_generators_differentiation(0, 3)


def test_truncation_drops_top_variable():
    ring = TruncatedDiffRing.chain(2)
    x2 = Polynomial.var(ring.space, 2)
    assert derive(x2, ring).is_zero()
    with pytest.raises(ValueError):
        derive(x2, ring, D_S)
    grid = TruncatedDiffRing.grid(1, 1)
    x10 = Polynomial.var(grid.space, grid.space.index(1, 0))
    assert derive(x10, grid, D_S).is_zero()
    assert derive(x10, grid, D_T) == Polynomial.var(grid.space, grid.space.index(1, 1))


small = st.dictionaries(st.tuples(*[st.integers(0, 2)] * 4), st.integers(-3, 3), max_size=4)


@given(small, small, st.sampled_from([D_S, D_T]))
def test_leibniz_rule(a, b, d):
    ring = TruncatedDiffRing.grid(1, 1)
    f, g = Polynomial(ring.space, a), Polynomial(ring.space, b)
    assert derive(f * g, ring, d) == derive(f, ring, d) * g + f * derive(g, ring, d)


def test_derivations_commute_on_grid():
    ring = TruncatedDiffRing.grid(2, 2)
    f = Polynomial.var(ring.space, 0) ** 3
    assert derive(derive(f, ring, D_S), ring, D_T) == derive(derive(f, ring, D_T), ring, D_S)


@pytest.mark.parametrize("p", range(1, 6))
@pytest.mark.parametrize("n", [1, 2, 4, 6])
def test_iso_scaling_chain(p, n):
    assert check_iso_scaling(p, n)


@pytest.mark.parametrize("p", range(1, 4))
@pytest.mark.parametrize("shape", [(1, 1), (1, 3), (2, 2), (3, 2), (3, 3)])
def test_iso_scaling_grid(p, shape):
    assert check_iso_scaling(p, shape)


def test_generators_are_homogeneous_with_matching_weights():
    gens = jet_generators(3, (2, 2))
    sp = gens.ring.space
    for (a, b), g in zip(gens.labels, gens.generators):
        for e in g.terms:
            assert multidegree(e, sp) == (3, a, b)


def test_coefficients_are_multinomials():
    gens = jet_generators_expansion(4, 2)
    for g in gens:
        for e, c in g.terms.items():
            assert c == oracles.multinomial(4, e)

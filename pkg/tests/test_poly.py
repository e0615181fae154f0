from fractions import Fraction

import pytest
from gmpy2 import mpq
from hypothesis import given
from hypothesis import strategies as st

from diffjets.poly import MonomialOrdering, Polynomial, VarSpace, format_rational

SPACE = VarSpace.chain(3)

exps = st.tuples(*[st.integers(0, 4)] * 4)
coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=7)
polys = st.dictionaries(exps, coeffs, max_size=6).map(lambda d: Polynomial(SPACE, d))


def test_grid_space_layout():
    sp = VarSpace.grid(2, 2)
    assert sp.size == 9
    assert sp.index(1, 2) == 5
    assert sp.coords(5) == (1, 2)
    assert sp.name(5) == "x12"
    assert VarSpace.from_description(sp.describe()) == sp


def test_revlex_makes_higher_index_larger():
    o = MonomialOrdering.degrevlex(SPACE)
    assert o.compare((1, 0, 0, 0), (0, 1, 0, 0)) < 0
    assert o.compare((0, 0, 0, 1), (0, 0, 1, 0)) > 0
    # same degree: the monomial with less x0 wins
    assert o.compare((0, 2, 0, 0), (1, 0, 1, 0)) > 0
    assert o.compare((2, 0, 0, 0), (0, 0, 0, 1)) > 0


def test_weighted_compares_weight_first():
    o = MonomialOrdering.weighted(SPACE, (4, 3, 2, 1))
    assert o.compare((1, 0, 0, 0), (0, 0, 0, 3)) > 0
    # equal weight: total degree decides
    assert o.compare((0, 0, 0, 4), (1, 0, 0, 0)) > 0
    with pytest.raises(ValueError):
        MonomialOrdering.weighted(SPACE, (1, 2))
    with pytest.raises(ValueError):
        o.compare((1, 0), (0, 1))


@given(exps, exps, exps)
def test_revlex_is_multiplicative_total_order(a, b, c):
    o = MonomialOrdering.degrevlex(SPACE)
    ab = o.compare(a, b)
    assert ab == -o.compare(b, a)
    assert (ab == 0) == (a == b)
    ac = tuple(x + y for x, y in zip(a, c))
    bc = tuple(x + y for x, y in zip(b, c))
    assert o.compare(ac, bc) == ab
    if a != (0, 0, 0, 0):
        assert o.compare(a, (0, 0, 0, 0)) > 0


@given(exps, exps, st.tuples(*[st.integers(1, 6)] * 4))
def test_weighted_multiplicative(a, b, w):
    o = MonomialOrdering.weighted(SPACE, w)
    ab = o.compare(a, b)
    s = (1, 1, 0, 2)
    assert o.compare(tuple(x + y for x, y in zip(a, s)), tuple(x + y for x, y in zip(b, s))) == ab


@given(polys, polys, polys)
def test_ring_axioms(f, g, h):
    assert f + g == g + f
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert f - f == Polynomial.zero(SPACE)


@given(polys)
def test_json_round_trip(f):
    o = MonomialOrdering.degrevlex(SPACE)
    assert Polynomial.from_json(f.to_json(o)) == f


@given(polys)
def test_leading_term_is_maximal(f):
    o = MonomialOrdering.degrevlex(SPACE)
    if f.is_zero():
        return
    lm = f.leading_monomial(o)
    assert all(o.compare(lm, e) >= 0 for e in f.terms)
    ts = f.sorted_terms(o)
    assert ts[0][0] == lm
    assert all(o.compare(ts[i][0], ts[i + 1][0]) > 0 for i in range(len(ts) - 1))


def test_coefficients_are_exact_rationals():
    x0 = Polynomial.var(SPACE, 0)
    f = x0 * Fraction(1, 3) + x0 * Fraction(2, 3)
    assert f == x0
    assert f.coefficient((1, 0, 0, 0)) == mpq(1)
    assert format_rational(Fraction(-3, 6)) == "-1/2"
    assert format_rational(4) == "4/1"


def test_power_matches_repeated_product():
    x = Polynomial.var(SPACE, 0) + Polynomial.var(SPACE, 1) * 2
    assert x ** 3 == x * x * x
    assert (x ** 3).degree() == 3
    assert (x ** 3).is_homogeneous()

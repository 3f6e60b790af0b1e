from math import comb

import pytest
from hypothesis import given, strategies as st

from linea.multipoly import (GREVLEX, LEX, Polynomial, elim, format_polynomial,
                             monomials_of_degree, parse_polynomial)

NV = 4


def poly(text, nv=NV, order=GREVLEX):
    return parse_polynomial(text, nv, order)


def test_grevlex_leading_term():
    f = poly("x0*x2 + x1^2", 3)
    assert f.leading_monomial == (0, 2, 0)
    assert poly("x0*x2 + x1^2", 3, LEX).leading_monomial == (1, 0, 1)


def test_grevlex_degree_first():
    f = poly("x3^3 + x0^2")
    assert f.leading_monomial == (0, 0, 0, 3)


def test_elimination_order_prefers_block():
    f = poly("x0*x3 + x1^3")
    assert f.with_order(elim(1)).leading_monomial == (1, 0, 0, 1)


@pytest.mark.parametrize("n,d", [(2, 3), (3, 2), (4, 4), (6, 2)])
def test_monomial_counts(n, d):
    mons = monomials_of_degree(n, d)
    assert len(mons) == comb(n + d, d)
    keys = [GREVLEX.key(m) for m in mons]
    assert keys == sorted(keys, reverse=True)


def test_parse_forms():
    f = poly("2x0 - 3/4*x1*(x2 + 1)")
    assert f.terms[(1, 0, 0, 0)] == 2
    assert f.terms[(0, 1, 1, 0)] == parse_polynomial("-3/4", NV).terms[(0,) * NV]
    assert not f.is_homogeneous()
    with pytest.raises(ValueError):
        poly("x9")
    with pytest.raises(ValueError):
        poly("x0 $ x1")


def test_divide_exact():
    f = poly("x0 + x1")
    g = poly("x2^2 - x3")
    assert (f * g).divide_exact(f) == g
    with pytest.raises(ValueError):
        poly("x0^2 + 1").divide_exact(poly("x1"))


def test_substitution_and_evaluation():
    f = poly("x0*x1 - x2^2")
    x = [Polynomial.var(i, NV) for i in range(NV)]
    swapped = f.substitute_linear([x[1], x[0], x[2], x[3]])
    assert swapped == f
    assert f.evaluate([2, 3, 1, 7]) == 5


def test_embed():
    f = poly("x0*x1", 2)
    g = f.embed(4, 2)
    assert g == poly("x2*x3")


polys = st.builds(
    lambda terms: Polynomial({tuple(e): c for e, c in terms}, NV),
    st.lists(st.tuples(st.lists(st.integers(0, 2), min_size=NV, max_size=NV),
                       st.integers(-5, 5)), max_size=4))


@given(polys, polys, polys)
def test_ring_laws(f, g, h):
    assert f + g == g + f
    assert f * g == g * f
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert f - f == Polynomial.zero(NV)


@given(polys)
def test_format_roundtrip(f):
    assert parse_polynomial(format_polynomial(f), NV) == f


@given(polys, polys, st.lists(st.integers(-4, 4), min_size=NV, max_size=NV))
def test_evaluation_is_a_homomorphism(f, g, pt):
    assert (f * g).evaluate(pt) == f.evaluate(pt) * g.evaluate(pt)
    assert (f + g).evaluate(pt) == f.evaluate(pt) + g.evaluate(pt)

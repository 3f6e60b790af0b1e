import random

import pytest
import sympy
from hypothesis import given, strategies as st

from linea.arrangements import defining_ideal, named
from linea.ideals import (Ideal, NotHomogeneousError, buchberger, colon, colon_ideal,
                          ideal_from_json_text, ideal_to_json_text, intersect,
                          minimal_generators_up_to)
from linea.multipoly import mono_lcm, parse_polynomial

from conftest import random_form, random_linear


def sympy_gb(I: Ideal):
    xs = sympy.symbols(f"x0:{I.nvars}")
    exprs = [sum(sympy.Rational(int(c.numerator), int(c.denominator)) *
                 sympy.prod([x ** e for x, e in zip(xs, m)]) for m, c in g.terms.items())
             for g in I.generators]
    G = sympy.groebner(exprs, *xs, order="grevlex", domain="QQ")
    out = set()
    for g in G.exprs:
        terms = sympy.Poly(g, *xs, domain="QQ").terms(order="grevlex")
        lc = terms[0][1]
        out.add(frozenset((m, sympy.Rational(c) / lc) for m, c in terms))
    return out


def ours(I: Ideal):
    return {frozenset((m, sympy.Rational(int(c.numerator), int(c.denominator)))
                      for m, c in g.terms.items()) for g in I.gb().elements}


def test_reduced_basis_matches_sympy_fixed():
    I = Ideal.parse(["x0*x2 - x1^2", "x0*x3 - x1*x2", "x1*x3 - x2^2"], 3)
    assert ours(I) == sympy_gb(I)
    assert len(I.gb()) == 3


@pytest.mark.parametrize("seed", range(8))
def test_reduced_basis_matches_sympy_random(seed):
    rng = random.Random(seed)
    nv = rng.choice([3, 4])
    gens = [random_form(rng, nv, rng.choice([2, 2, 3]), terms=3) for _ in range(rng.choice([2, 3]))]
    I = Ideal(gens, nv)
    assert ours(I) == sympy_gb(I)


def test_s_pairs_reduce_to_zero():
    I = defining_ideal(named("three_p4"))
    G = I.gb()
    els = G.elements
    for i in range(len(els)):
        for j in range(i + 1, len(els)):
            f, g = els[i], els[j]
            L = mono_lcm(f.leading_monomial, g.leading_monomial)
            s = (f.mul_monomial(tuple(a - b for a, b in zip(L, f.leading_monomial)))
                 .scale(1 / f.leading_coefficient)
                 - g.mul_monomial(tuple(a - b for a, b in zip(L, g.leading_monomial)))
                 .scale(1 / g.leading_coefficient))
            assert not G.normal_form(s)


def test_membership_and_equality():
    I = Ideal.parse(["x0^2", "x0*x1"], 1)
    assert I.contains(parse_polynomial("x0^3 + 5*x0*x1", 2))
    assert not I.contains(parse_polynomial("x1^2", 2))
    assert I == Ideal.parse(["x0*x1 + x0^2", "x0^2"], 1)
    assert I <= Ideal.parse(["x0"], 1)


def test_homogeneity_guard():
    I = Ideal.parse(["x0^2 + x1"], 1)
    with pytest.raises(NotHomogeneousError):
        I.require_homogeneous()


def test_monomial_intersection_is_lcm():
    I = Ideal.parse(["x0^2", "x1*x2"], 2)
    J = Ideal.parse(["x0*x1", "x2^3"], 2)
    expected = Ideal.parse(["x0^2*x1", "x0^2*x2^3", "x0*x1*x2", "x1*x2^3"], 2)
    assert intersect(I, J) == expected


def test_colon_examples():
    I = Ideal.parse(["x0*x1", "x0*x2"], 2)
    assert colon(I, parse_polynomial("x0", 3)) == Ideal.parse(["x1", "x2"], 2)
    assert colon(I, parse_polynomial("x1", 3)) == Ideal.parse(["x0"], 2)
    unit = colon_ideal(I, Ideal.zero(3))
    assert unit.gb().is_unit()


@pytest.mark.parametrize("seed", range(10))
def test_colon_routes_agree(seed):
    rng = random.Random(100 + seed)
    nv = 4
    lines = [Ideal([random_linear(rng, nv) for _ in range(2)], nv) for _ in range(3)]
    I = lines[0]
    for L in lines[1:]:
        I = intersect(I, L)
    f = random_linear(rng, nv)
    A = colon(I, f, "linear")
    B = colon(I, f, "elimination")
    assert A == B
    assert all(I.contains(g * f) for g in A.generators)


def test_minimal_generators_of_three_lines():
    I = defining_ideal(named("three_p4"))
    assert minimal_generators_up_to(I, 4) == {2: 6, 3: 1}


def test_json_roundtrip():
    I = Ideal.parse(["x0*x1 - 1/2*x2^2", "x3^2"], 3)
    assert ideal_from_json_text(ideal_to_json_text(I)) == I


@given(st.integers(0, 10 ** 9))
def test_basis_is_invariant_under_shuffles(seed):
    r = random.Random(seed)
    nv = 3
    gens = [random_form(r, nv, 2) for _ in range(3)]
    I = Ideal(gens, nv)
    shuffled = gens[:]
    r.shuffle(shuffled)
    mixed = [shuffled[0] + shuffled[1], shuffled[1], shuffled[2].scale(3)]
    assert buchberger(Ideal(mixed, nv)) == I.gb()

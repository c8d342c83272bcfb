import itertools
import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from bilip.groebner import (
    BudgetExceeded,
    Ideal,
    groebner_basis,
    ideal_membership,
    is_groebner,
    limits,
    normal_form,
    s_polynomial,
)
from bilip.polyring import Polynomial, Ring, deglex, grevlex, lex

from conftest import rand_poly

R2 = Ring(["x", "y"])
R3 = Ring(["x", "y", "z"])
SYMPY_ORDER = {"lex": "lex", "grevlex": "grevlex", "deglex": "grlex"}


def test_normal_form_examples():
    g = R3.parse("y - x^2")
    assert normal_form(g, [g], grevlex).is_zero()
    G = groebner_basis([R3.parse("y - x^2"), R3.parse("z - x^3")], lex)
    f = R3.parse("y^3 - z^2")
    assert normal_form(f, list(G), lex).is_zero()
    # oracle: f vanishes on (t, t^2, t^3)
    assert all(f.evaluate((t, t**2, t**3)) == 0 for t in range(-5, 6))
    assert normal_form(R2.parse("x"), [R2.parse("y")]) == R2.parse("x")


def test_twisted_cubic_basis():
    G = groebner_basis([R3.parse("y - x^2"), R3.parse("z - x^3")], lex)
    assert not G.is_unit()
    for text in ["y - x^2", "z - x^3", "y^3 - z^2"]:
        assert normal_form(R3.parse(text), list(G), lex).is_zero()
    assert is_groebner(list(G), lex)


def test_unit_and_principal():
    assert groebner_basis([R2.parse("x"), R2.parse("1 - x")]).is_unit()
    G = groebner_basis([R2.parse("x^2")])
    assert list(G) == [R2.parse("x^2")]


def test_membership_examples():
    assert ideal_membership(R2.parse("x - y"), Ideal.parse(R2, "x", "y"))
    assert ideal_membership(R2.one(), Ideal.parse(R2, "x", "1 - x"))
    assert not ideal_membership(R2.parse("x"), Ideal.parse(R2, "x^2"))


def test_s_polynomial_examples():
    f = R3.parse("x^2 - y")
    g = R3.parse("x*y - z")
    assert s_polynomial(f, f).is_zero()
    # lcm(x^2, xy) = x^2 y, S = y f - x g
    assert s_polynomial(f, g, grevlex) == R3.parse("y") * f - R3.parse("x") * g
    assert s_polynomial(f, g, grevlex) == R3.parse("x*z - y^2")
    S = s_polynomial(R2.parse("x"), R2.parse("y"))
    assert normal_form(S, [R2.parse("x"), R2.parse("y")]).is_zero()


def _sympy_basis(gens, ring, order):
    syms = sympy.symbols(ring.variables)
    F = [sympy.sympify(str(g).replace("^", "**"), locals=dict(zip(ring.variables, syms))) for g in gens]
    H = sympy.groebner(F, *syms, order=SYMPY_ORDER[order.name])
    out = []
    for h in H.exprs:
        terms = {tuple(m): Fraction(int(c.p), int(c.q)) for m, c in sympy.Poly(h, *syms).terms()}
        out.append(Polynomial(ring, terms).monic(order))
    return sorted(out, key=str)


@pytest.mark.parametrize("order", [lex, grevlex, deglex], ids=lambda o: o.name)
def test_reduced_basis_matches_sympy(order):
    rng = random.Random(7)
    for _ in range(40):
        ring = [R2, R3][rng.randint(0, 1)]
        gens = [rand_poly(rng, ring, maxdeg=3, nterms=5) for _ in range(rng.randint(1, 3))]
        G = groebner_basis(gens, order)
        assert sorted(G, key=str) == _sympy_basis(gens, ring, order)


@settings(max_examples=40, deadline=None)
@given(st.randoms(use_true_random=False))
def test_buchberger_criterion_and_canonicity(r):
    ring = R3
    gens = [rand_poly(r, ring, maxdeg=3) for _ in range(r.randint(1, 3))]
    for order in (grevlex, lex):
        G = groebner_basis(gens, order)
        assert is_groebner(list(G), order)
        # every generator reduces to zero
        assert all(normal_form(g, list(G), order).is_zero() for g in gens)
        # invariance under permutation and rescaling
        H = groebner_basis([Fraction(-3, 2) * g for g in reversed(gens)], order)
        assert list(G) == list(H)
        # reduced: monic, and no term divisible by another leading monomial
        lms = G.leading_monomials()
        for g in G:
            assert g.leading_term(order)[1] == 1
            for m in g.terms:
                assert sum(all(a <= b for a, b in zip(l, m)) for l in lms) <= (1 if m == g.leading_monomial(order) else 0)


@settings(max_examples=30, deadline=None)
@given(st.randoms(use_true_random=False))
def test_membership_of_explicit_combinations(r):
    gens = [rand_poly(r, R3, maxdeg=2) for _ in range(2)]
    I = Ideal(R3, gens)
    f = sum((rand_poly(r, R3, maxdeg=2) * g for g in gens), R3.zero())
    assert I.contains(f)


def test_budget():
    gens = [R3.parse(t) for t in ["x^3 - y*z + 1", "y^3 - x*z^2", "z^3 - x^2*y + 2"]]
    with pytest.raises(BudgetExceeded):
        with limits(max_steps=2):
            groebner_basis(gens, lex)
    with limits(max_steps=10**6):
        assert is_groebner(list(groebner_basis(gens, grevlex)), grevlex)


def test_ideal_equality_and_sum():
    I = Ideal.parse(R2, "x^2 - y", "x*y")
    J = Ideal.parse(R2, "x*y", "x^2 - y", "x^3")
    assert I.same_as(J)
    assert (I + [R2.parse("y")]).same_as(Ideal.parse(R2, "x^2", "y"))


def test_all_pairs_reduce_for_small_corpus():
    rng = random.Random(99)
    for _ in range(10):
        gens = [rand_poly(rng, R2) for _ in range(3)]
        G = list(groebner_basis(gens, grevlex))
        for f, g in itertools.combinations(G, 2):
            assert normal_form(s_polynomial(f, g), G).is_zero()

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bilip.groebner import Ideal
from bilip.ideal_ops import (
    Parametrization,
    contains_ideal,
    dehomogenize,
    eliminate,
    homogenize,
    implicitize,
    intersect,
    radical_membership,
    saturate,
    saturate_ideal,
)
from bilip.polyring import Ring

from conftest import rand_poly

R2 = Ring(["x", "y"])
R3 = Ring(["x", "y", "z"])


def ideal(ring, *texts):
    return Ideal.parse(ring, *texts)


def test_eliminate_parabola():
    ring = Ring(["t", "x", "y"])
    E = eliminate(ideal(ring, "x - t", "y - t^2"), ["t"])
    assert E.ring.variables == ("x", "y")
    assert E.same_as(ideal(E.ring, "y - x^2"))


def test_eliminate_nothing_is_identity():
    I = ideal(R2, "y - x^2")
    assert eliminate(I, []).same_as(I)


def test_eliminate_twisted_cubic_variant():
    ring = Ring(["t", "x", "y", "z"])
    E = eliminate(ideal(ring, "x - t", "y - t^3", "z - t^2"), ["t"])
    assert E.contains("z - x^2") and E.contains("y - x*z")
    # every generator vanishes on the parametrization
    for g in E.generators:
        assert all(g.evaluate((t, t**3, t**2)) == 0 for t in range(-4, 5))


def test_eliminate_in_stages_matches_all_at_once():
    ring = Ring(["s", "t", "x", "y", "z"])
    I = ideal(ring, "x - s - t", "y - s*t", "z - s^2*t")
    once = eliminate(I, ["s", "t"])
    twice = eliminate(eliminate(I, ["s"]), ["t"])
    assert once.same_as(twice)


def test_eliminate_rejects_unknown_variable():
    with pytest.raises(ValueError):
        eliminate(ideal(R2, "x"), ["q"])


@pytest.mark.parametrize("comps,expected", [
    (("t^2", "t^3"), "y^2 - x^3"),
    (("t", "t^2"), "y - x^2"),
])
def test_implicitize_plane_curves(comps, expected):
    E = implicitize(Parametrization.parse("t", *comps))
    assert E.same_as(ideal(E.ring, expected))
    for k in range(20):
        t = Fraction(k - 10, 3)
        pt = (t ** 2, t ** 3) if comps[0] == "t^2" else (t, t ** 2)
        assert all(g.evaluate(pt) == 0 for g in E.generators)


def test_implicitize_dense_image():
    assert implicitize(Parametrization.parse("t", "t")).is_zero()


@pytest.mark.parametrize("comps", [("t", "t^3+t^2", "t^5"), ("t^4", "t^5", "t^6", "t^7"), ("s*t", "s", "t^2")])
def test_implicitize_vanishes_on_samples(comps):
    p = Parametrization.parse("s,t" if "s" in "".join(comps) else "t", *comps)
    E = implicitize(p)
    rng = random.Random(1)
    for _ in range(50):
        vals = [Fraction(rng.randint(-30, 30), rng.randint(1, 9)) for _ in range(p.params.nvars)]
        pt = p(*vals)
        assert all(g.evaluate(pt) == 0 for g in E.generators)


def test_saturate_examples():
    assert saturate(ideal(R2, "x*y"), R2.parse("x")).same_as(ideal(R2, "y"))
    assert saturate(ideal(R2, "x^2"), R2.parse("x")).is_unit()
    I = ideal(R2, "x^2*y - y^3", "x*y^2")
    assert saturate(I, R2.one()).same_as(I)


def test_saturate_ideal_examples():
    S = saturate_ideal(ideal(R3, "x*y", "x*z"), ideal(R3, "y", "z"))
    assert S.same_as(ideal(R3, "x"))
    I = ideal(R2, "x^2 - y")
    assert saturate_ideal(I, Ideal(R2, [R2.one()])).same_as(I)
    assert saturate_ideal(ideal(R2, "x"), ideal(R2, "x")).is_unit()


def test_saturate_ideal_brute_force():
    # <x^2 y, x y^2> = <xy> cap <x^2, y^2>; the embedded origin component goes away
    I = ideal(R2, "x^2*y", "x*y^2")
    J = ideal(R2, "x", "y")
    S = saturate_ideal(I, J)
    assert S.same_as(ideal(R2, "x*y"))
    # f in I : J^inf iff f * m^k in I for every generator m of J, some k
    for g in S.generators:
        assert all(I.contains(g * m ** 2) for m in J.generators)
    I = ideal(R3, "x*z", "y*z^2")
    S = saturate_ideal(I, ideal(R3, "z"))
    assert S.same_as(ideal(R3, "x", "y"))


@settings(max_examples=25, deadline=None)
@given(st.randoms(use_true_random=False))
def test_saturate_idempotent(r):
    I = Ideal(R2, [rand_poly(r, R2, maxdeg=3) for _ in range(2)])
    g = rand_poly(r, R2, maxdeg=2)
    if g.is_zero():
        return
    S = saturate(I, g)
    assert saturate(S, g).same_as(S)
    assert contains_ideal(S, I)


def test_intersect_examples():
    assert intersect(ideal(R2, "x"), ideal(R2, "y")).same_as(ideal(R2, "x*y"))
    I = ideal(R2, "x^2 - y", "x*y")
    assert intersect(I, Ideal(R2, [R2.one()])).same_as(I)
    assert intersect(ideal(R2, "x^2"), ideal(R2, "x")).same_as(ideal(R2, "x^2"))


@settings(max_examples=15, deadline=None)
@given(st.randoms(use_true_random=False))
def test_intersect_commutative_associative(r):
    A, B, C = (Ideal(R2, [rand_poly(r, R2, maxdeg=2, nterms=3)]) for _ in range(3))
    assert intersect(A, B).same_as(intersect(B, A))
    assert intersect(intersect(A, B), C).same_as(intersect(A, intersect(B, C)))
    AB = intersect(A, B)
    assert contains_ideal(A, AB) and contains_ideal(B, AB)


def test_homogenize_examples():
    H = homogenize(ideal(R2, "y - x^2"), "x0")
    assert H.same_as(ideal(H.ring, "x0*y - x^2"))
    assert dehomogenize(H, "x0").same_as(ideal(R2, "y - x^2"))


def test_homogenize_uses_a_graded_basis():
    # the twisted cubic: homogenizing the two generators is not enough
    H = homogenize(ideal(R3, "y - x^2", "z - x^3"), "w")
    assert H.contains("y^2 - x*z")
    assert all(g.is_homogeneous() for g in H.generators)


@settings(max_examples=25, deadline=None)
@given(st.randoms(use_true_random=False))
def test_homogenize_dehomogenize_roundtrip(r):
    I = Ideal(R2, [rand_poly(r, R2, maxdeg=3) for _ in range(r.randint(1, 2))])
    assert dehomogenize(homogenize(I, "h"), "h").same_as(I)


def test_radical_membership_examples():
    I = ideal(R2, "x^2")
    assert radical_membership(R2.parse("x"), I)
    assert not radical_membership(R2.parse("y"), I)
    assert radical_membership(R2.one(), Ideal(R2, [R2.one()]))
    assert radical_membership(R2.parse("x*y"), ideal(R2, "x^3", "y^5 - x"))

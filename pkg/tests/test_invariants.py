import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bilip.groebner import Ideal
from bilip.ideal_ops import Parametrization, implicitize
from bilip.invariants import (
    EmptyVariety,
    NotOnVariety,
    affine_hilbert_function,
    degree,
    dimension,
    hilbert_data,
    hilbert_series_numerator,
    multiplicity,
    rank,
    tangent_cone,
    zariski_tangent_dim,
)
from bilip.lipschitz import veronese_cone
from bilip.polyring import Polynomial, Ring

from conftest import curve_hyperplane_count, distinct_roots

R2 = Ring(["x", "y"])
R3 = Ring(["x", "y", "z"])

CURVES = {
    "twisted cubic": ("t", "t^2", "t^3"),
    "ex25 X": ("t", "t^3+t^2", "t^5"),
    "ex25 Y": ("t", "t^3+2*t^2", "t^5"),
    "ex24 m=4": ("t^4", "t^5", "t^6", "t^7"),
}


def test_hilbert_numerator_small_cases():
    # C[x,y]/<x^2, y^3>: 6 standard monomials, numerator (1-t^2)(1-t^3)
    assert hilbert_series_numerator([(2, 0), (0, 3)]) == [1, 0, -1, -1, 0, 1]
    assert hilbert_series_numerator([]) == [1]


def test_twisted_cubic_and_conic():
    assert hilbert_data(Ideal.parse(R3, "y - x^2", "z - x^3")) == (1, 3)
    assert hilbert_data(Ideal.parse(R2, "x^2 + y^2 - 1")) == (1, 2)
    assert hilbert_data(Ideal.parse(R3, "x", "y", "z")) == (0, 1)
    assert degree(Ideal.parse(R3, "x + y + z - 1")) == 1
    assert hilbert_data(Ideal(R2, [])) == (2, 1)


def test_unit_ideal_is_empty():
    with pytest.raises(EmptyVariety):
        dimension(Ideal.parse(R2, "x", "x - 1"))


@pytest.mark.parametrize("name", CURVES)
def test_curve_degree_matches_root_count(name):
    p = Parametrization.parse("t", *CURVES[name])
    I = implicitize(p)
    assert dimension(I) == 1
    counts = curve_hyperplane_count(p.components, random.Random(name))
    assert counts == [degree(I)] * 10


def test_conic_degree_matches_line_intersections():
    f = R2.parse("x^2 + y^2 - 1")
    rng = random.Random(3)
    t = Ring(["t"])
    for _ in range(10):
        a, b, c, d = (Fraction(rng.randint(-9, 9) or 1, rng.randint(1, 5)) for _ in range(4))
        line = f.compose([t.const(a) + t.const(b) * t.var("t"), t.const(c) + t.const(d) * t.var("t")], t)
        assert distinct_roots({m[0]: v for m, v in line.terms.items()}) == 2


def test_hypersurface_degree_is_total_degree():
    rng = random.Random(11)
    for _ in range(10):
        f = Polynomial(R3, {(rng.randint(0, 3), rng.randint(0, 3), rng.randint(0, 3)): rng.randint(1, 5) for _ in range(4)})
        f = f + R3.one()
        assert hilbert_data(Ideal(R3, [f])) == (2, f.total_degree())


def _random_linear_change(ring, rng):
    while True:
        M = [[rng.randint(-2, 2) for _ in range(ring.nvars)] for _ in range(ring.nvars)]
        if rank(M) == ring.nvars:
            break
    shift = [rng.randint(-2, 2) for _ in range(ring.nvars)]
    images = [sum((ring.var(v) * c for v, c in zip(ring.variables, row)), ring.const(s)) for row, s in zip(M, shift)]
    return images


@pytest.mark.parametrize("name", ["twisted cubic", "ex25 X"])
def test_dimension_degree_invariant_under_affine_change(name):
    I = implicitize(Parametrization.parse("t", *CURVES[name]))
    images = _random_linear_change(I.ring, random.Random(5))
    J = Ideal(I.ring, [g.compose(images, I.ring) for g in I.generators])
    assert hilbert_data(J) == hilbert_data(I)


def test_affine_hilbert_function_grows_like_degree():
    # a curve of degree d has affine Hilbert function d*s + const for large s
    I = implicitize(Parametrization.parse("t", *CURVES["ex25 X"]))
    values = [affine_hilbert_function(I, s) for s in range(8, 12)]
    assert {b - a for a, b in zip(values, values[1:])} == {5}


def test_tangent_cone_examples():
    cusp = Ideal.parse(R2, "y^2 - x^3")
    assert tangent_cone(cusp, (0, 0)).same_as(Ideal.parse(R2, "y^2"))
    assert tangent_cone(Ideal.parse(R2, "y - x^2"), (0, 0)).same_as(Ideal.parse(R2, "y"))
    C = tangent_cone(cusp, (1, 1))
    assert len(C.generators) == 1 and C.generators[0].total_degree() == 1
    assert C.same_as(Ideal.parse(R2, "3*x - 2*y"))


def test_tangent_cone_off_variety():
    with pytest.raises(NotOnVariety):
        tangent_cone(Ideal.parse(R2, "y - x^2"), (1, 2))


def _branch_order(components):
    # multiplicity of a unibranch parametrized germ at t=0: least order of vanishing
    return min(min(m[0] for m in c.terms) for c in components if c.terms)


@pytest.mark.parametrize("comps", [("t^2", "t^3"), ("t^4", "t^5", "t^6", "t^7"), ("t^3", "t^4", "t^5"), ("t", "t^2")])
def test_multiplicity_of_monomial_curves(comps):
    p = Parametrization.parse("t", *comps)
    I = implicitize(p)
    origin = (0,) * p.dim
    assert multiplicity(I, origin) == _branch_order(p.components)
    cone = tangent_cone(I, origin)
    assert all(g.is_homogeneous() for g in cone.generators)


@pytest.mark.parametrize("name", CURVES)
def test_smooth_points_have_multiplicity_one(name):
    p = Parametrization.parse("t", *CURVES[name])
    I = implicitize(p)
    for t in (1, -2, Fraction(1, 3)):
        pt = p(t)
        assert multiplicity(I, pt) == 1
        assert zariski_tangent_dim(I, pt) == 1


def test_zariski_tangent_dims():
    ex24 = implicitize(Parametrization.parse("t", *CURVES["ex24 m=4"]))
    assert zariski_tangent_dim(ex24, (0, 0, 0, 0)) == 4
    assert zariski_tangent_dim(Ideal.parse(R2, "y - x^2"), (0, 0)) == 1
    assert zariski_tangent_dim(Ideal.parse(R2, "y^2 - x^3"), (0, 0)) == 2
    assert zariski_tangent_dim(veronese_cone(1, 3), (0,) * 4) == 4
    assert zariski_tangent_dim(veronese_cone(1, 4), (0,) * 5) == 5


def _gauss_rank(rows):
    M = [[Fraction(x) for x in r] for r in rows]
    rk = 0
    ncols = len(M[0]) if M else 0
    for c in range(ncols):
        piv = next((i for i in range(rk, len(M)) if M[i][c]), None)
        if piv is None:
            continue
        M[rk], M[piv] = M[piv], M[rk]
        for i in range(len(M)):
            if i != rk and M[i][c]:
                f = M[i][c] / M[rk][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[rk])]
        rk += 1
    return rk


entries = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@settings(max_examples=300)
@given(st.integers(1, 5).flatmap(lambda n: st.lists(st.lists(entries, min_size=n, max_size=n), min_size=1, max_size=5)))
def test_bareiss_rank_matches_fraction_gauss(rows):
    assert rank(rows) == _gauss_rank(rows)


def test_rank_of_dependent_rows():
    assert rank([[1, 2, 3], [2, 4, 6], [0, 0, 1]]) == 2
    assert rank([[0, 0], [0, 0]]) == 0

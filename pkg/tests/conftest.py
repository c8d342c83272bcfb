import random
from fractions import Fraction

import pytest
import sympy

from bilip.polyring import Polynomial, Ring

PROBLEMS = __import__("pathlib").Path(__file__).resolve().parent.parent / "problems"


def rand_poly(rng: random.Random, ring: Ring, maxdeg=4, nterms=4, coeff=9) -> Polynomial:
    terms = {}
    for _ in range(rng.randint(1, nterms)):
        m = [0] * ring.nvars
        for _ in range(rng.randint(0, maxdeg)):
            m[rng.randrange(ring.nvars)] += 1
        terms[tuple(m)] = Fraction(rng.randint(-coeff, coeff) or 1, rng.randint(1, 3))
    return Polynomial(ring, terms)


def distinct_roots(coeffs_by_power: dict) -> int:
    """Number of distinct complex roots of a univariate polynomial with rational coefficients."""
    t = sympy.Symbol("t")
    f = sympy.Poly(sum(sympy.Rational(c.numerator, c.denominator) * t**k for k, c in coeffs_by_power.items()), t)
    g = sympy.gcd(f, f.diff(t))
    return sympy.degree(f, t) - sympy.degree(g, t)


def curve_hyperplane_count(components, rng, draws=10):
    """Root counts of a random hyperplane pulled back along a one-parameter curve.

    `components` are polynomials in a single parameter; the curve must be
    generically injective for the count to be the degree.
    """
    counts = []
    for _ in range(draws):
        a = [Fraction(rng.randint(-50, 50) or 1, rng.randint(1, 7)) for _ in components]
        d = Fraction(rng.randint(-50, 50), rng.randint(1, 7))
        total = {0: -d}
        for ai, c in zip(a, components):
            for m, v in c.terms.items():
                total[m[0]] = total.get(m[0], 0) + ai * v
        counts.append(distinct_roots({k: Fraction(v) for k, v in total.items() if v}))
    return counts


@pytest.fixture
def rng():
    return random.Random(12345)


ACCEPTANCE_LINES: list = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)

"""Dimension, degree, tangent cones, multiplicity and Zariski tangent spaces."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import factorial, gcd
from typing import NamedTuple, Sequence

from .groebner import Ideal
from .ideal_ops import homogenize_poly
from .polyring import MonomialOrder, Polynomial, Ring, grevlex


class NotOnVariety(ValueError):
    pass


class EmptyVariety(ValueError):
    pass


class HilbertData(NamedTuple):
    dimension: int
    degree: int


# ---------------------------------------------------------------------------
# Hilbert series of monomial ideals


def _minimalize(gens) -> tuple:
    gens = sorted(set(gens), key=sum)
    out = []
    for g in gens:
        if not any(all(a <= b for a, b in zip(h, g)) for h in out):
            out.append(g)
    return tuple(sorted(out))


def _poly_mul(a: list, b: list) -> list:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_add(a: list, b: list) -> list:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, y in enumerate(b):
        out[i] += y
    return out


@lru_cache(maxsize=65536)
def _hilbert_numerator(gens: tuple) -> tuple:
    """K(t) with HS(R/J) = K(t)/(1-t)^n for the monomial ideal J = <gens>."""
    if not gens:
        return (1,)
    # base case: generators are pure powers of distinct variables
    if all(sum(1 for e in g if e) == 1 for g in gens):
        out = [1]
        for g in gens:
            d = sum(g)
            out = _poly_mul(out, [1] + [0] * (d - 1) + [-1])
        return tuple(out)
    # pivot on the variable occurring in the most non-pure generators
    n = len(gens[0])
    counts = [0] * n
    for g in gens:
        if sum(1 for e in g if e) > 1:
            for i, e in enumerate(g):
                if e:
                    counts[i] += 1
    i = max(range(n), key=lambda k: counts[k])
    pivot = tuple(1 if k == i else 0 for k in range(n))
    # K(J) = K(J + <x_i>) + t * K(J : x_i)
    plus = _minimalize([g for g in gens if not g[i]] + [pivot])
    colon = _minimalize([tuple(e - 1 if (k == i and e) else e for k, e in enumerate(g)) for g in gens])
    return tuple(_poly_add(list(_hilbert_numerator(plus)), [0] + list(_hilbert_numerator(colon))))


def hilbert_series_numerator(leading: Sequence[tuple]) -> list:
    return list(_hilbert_numerator(_minimalize(leading)))


def _dim_degree_from_numerator(num: list, nvars: int) -> tuple[int, int]:
    num = list(num)
    while num and num[-1] == 0:
        num.pop()
    d = nvars
    # divide by (1 - t) while K(1) == 0
    while num and sum(num) == 0:
        q = []
        acc = 0
        for c in num[:-1]:
            acc += c
            q.append(acc)
        num = q
        d -= 1
    return d, sum(num)


def hilbert_data(I: Ideal) -> HilbertData:
    """Dimension and degree of V(I) from the leading-term ideal under grevlex."""
    if I.is_zero():
        return HilbertData(I.ring.nvars, 1)
    gb = I.groebner(grevlex)
    if gb.is_unit():
        raise EmptyVariety("the ideal is the unit ideal; V(I) is empty")
    lms = gb.leading_monomials()
    num = hilbert_series_numerator(lms)
    d, deg = _dim_degree_from_numerator(num, I.ring.nvars)
    return HilbertData(d, deg)


def dimension(I: Ideal) -> int:
    return hilbert_data(I).dimension


def degree(I: Ideal) -> int:
    return hilbert_data(I).degree


def affine_hilbert_function(I: Ideal, s: int) -> int:
    """Number of standard monomials of total degree <= s (brute force; small inputs)."""
    lms = I.groebner(grevlex).leading_monomials()
    n = I.ring.nvars

    def monos(k, left):
        if k == 0:
            yield ()
            return
        for e in range(left + 1):
            for rest in monos(k - 1, left - e):
                yield (e,) + rest

    return sum(1 for m in monos(n, s) if not any(all(a <= b for a, b in zip(l, m)) for l in lms))


# ---------------------------------------------------------------------------
# local invariants


def check_point(I: Ideal, point: Sequence) -> tuple:
    pt = tuple(Fraction(x) for x in point)
    if len(pt) != I.ring.nvars:
        raise ValueError(f"point has {len(pt)} coordinates, ring has {I.ring.nvars}")
    for g in I.generators:
        if g.evaluate(pt) != 0:
            raise NotOnVariety(f"{g} does not vanish at {tuple(str(x) for x in pt)}")
    return pt


class _LocalOrder(MonomialOrder):
    """Degree, then larger power of the homogenizing variable (index 0), then grevlex."""

    name = "tangent-cone"

    def key(self, m):
        return (sum(m), m[0]) + grevlex.key(m[1:])


_local_order = _LocalOrder()


def tangent_cone(I: Ideal, point: Sequence) -> Ideal:
    """Ideal of lowest-degree forms of I translated to the origin.

    Lazard's homogenization trick: the Gröbner basis of the homogenized
    generators under an order preferring high powers of the homogenizing
    variable dehomogenizes to a standard basis for a local degree order.
    """
    pt = check_point(I, point)
    ring = I.ring
    shifted = [g.translate(pt) for g in I.generators] if any(pt) else list(I.generators)
    if not shifted:
        return Ideal(ring, [])
    (h,) = ring.fresh("h_")
    hring = Ring((h,) + ring.variables)
    homog = Ideal(hring, [homogenize_poly(g, hring, h) for g in shifted])
    gb = homog.groebner(_local_order)
    images = [ring.one()] + ring.gens()
    forms = []
    for g in gb.elements:
        f = g.compose(images, ring)
        if not f.is_zero():
            forms.append(f.lowest_form())
    return Ideal(ring, forms)


def multiplicity(I: Ideal, point: Sequence) -> int:
    return hilbert_data(tangent_cone(I, point)).degree


def jacobian(polys: Sequence[Polynomial]) -> list[list[Polynomial]]:
    if not polys:
        return []
    ring = polys[0].ring
    return [[p.partial(i) for i in range(ring.nvars)] for p in polys]


def rank(matrix: Sequence[Sequence]) -> int:
    """Rank over Q by fraction-free (Bareiss) elimination."""
    rows = [list(r) for r in matrix if any(r)]
    if not rows:
        return 0
    # clear denominators row by row
    M = []
    for r in rows:
        den = 1
        for x in r:
            x = Fraction(x)
            den = den * x.denominator // gcd(den, x.denominator)
        M.append([int(Fraction(x) * den) for x in r])
    nrows, ncols = len(M), len(M[0])
    prev = 1
    rk = 0
    for col in range(ncols):
        if rk == nrows:
            break
        piv = next((i for i in range(rk, nrows) if M[i][col]), None)
        if piv is None:
            continue
        M[rk], M[piv] = M[piv], M[rk]
        p = M[rk][col]
        for i in range(rk + 1, nrows):
            a = M[i][col]
            for j in range(col, ncols):
                M[i][j] = (p * M[i][j] - a * M[rk][j]) // prev
        prev = p
        rk += 1
    return rk


def zariski_tangent_dim(I: Ideal, point: Sequence) -> int:
    """n - rank of the Jacobian of the reduced Gröbner basis at `point`."""
    pt = check_point(I, point)
    gens = list(I.groebner(grevlex).elements)
    J = [[d.evaluate(pt) for d in row] for row in jacobian(gens)]
    return I.ring.nvars - rank(J)

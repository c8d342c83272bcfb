"""Buchberger's algorithm, multivariate division and ideal membership.

Internally polynomials are dicts {monomial: int} kept primitive (content
removed); this avoids rational blow-up during reduction.  Everything
returned to callers is a monic `Polynomial` over Q.
"""

from __future__ import annotations

import contextlib
import contextvars
import heapq
import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from .polyring import (
    MonomialOrder,
    Polynomial,
    Ring,
    RingMismatch,
    divides,
    grevlex,
    lex,
    mono_div,
    mono_lcm,
)


class BudgetExceeded(RuntimeError):
    """A Gröbner computation ran past its step or time limit.

    Never a mathematical answer: callers must treat it as "unknown".
    """


@dataclass
class Budget:
    max_steps: int = 1_000_000
    timeout: float = 600.0
    steps: int = 0
    started: float = field(default_factory=time.monotonic)

    def tick(self):
        self.steps += 1
        if self.steps > self.max_steps:
            raise BudgetExceeded(f"exceeded {self.max_steps} pair reductions")
        if time.monotonic() - self.started > self.timeout:
            raise BudgetExceeded(f"exceeded {self.timeout:g} s")


_budget: contextvars.ContextVar[Budget | None] = contextvars.ContextVar("bilip_budget", default=None)


@contextlib.contextmanager
def limits(max_steps: int = 1_000_000, timeout: float = 600.0):
    """Shared budget for every Gröbner computation inside the block."""
    token = _budget.set(Budget(max_steps, timeout))
    try:
        yield _budget.get()
    finally:
        _budget.reset(token)


def _current_budget() -> Budget:
    b = _budget.get()
    return b if b is not None else Budget()


# ---------------------------------------------------------------------------
# integer-coefficient internals


def _to_int_terms(f: Polynomial) -> dict:
    den = 1
    for c in f.terms.values():
        den = den * c.denominator // gcd(den, c.denominator)
    terms = {m: int(c * den) for m, c in f.terms.items()}
    return _primitive(terms)


def _primitive(terms: dict) -> dict:
    g = 0
    for c in terms.values():
        g = gcd(g, c)
        if g == 1:
            return terms
    if g > 1:
        return {m: c // g for m, c in terms.items()}
    return terms


class _Keyer:
    """Caches order keys (and their negations, for max-heaps)."""

    def __init__(self, order: MonomialOrder):
        self.order = order
        self.cache: dict = {}

    def __call__(self, m):
        k = self.cache.get(m)
        if k is None:
            k = self.cache[m] = self.order.key(m)
        return k

    def neg(self, m):
        return tuple(-x for x in self(m))


class _Elt:
    __slots__ = ("lm", "lc", "terms", "sugar")

    def __init__(self, terms: dict, keyer: _Keyer, sugar: int | None = None):
        self.terms = terms
        self.lm = max(terms, key=keyer)
        self.lc = terms[self.lm]
        self.sugar = sugar if sugar is not None else max(sum(m) for m in terms)


def _reduce(terms: dict, basis: Sequence[_Elt], keyer: _Keyer, full: bool = True) -> dict:
    """Fraction-free normal form; the result is correct up to a nonzero scalar."""
    f = dict(terms)
    heap = [(keyer.neg(m), m) for m in f]
    heapq.heapify(heap)
    rem: dict = {}
    steps = 0
    while heap:
        _, m = heapq.heappop(heap)
        c = f.get(m)
        if c is None:
            continue
        for g in basis:
            if divides(g.lm, m):
                break
        else:
            del f[m]
            if not full:
                rem[m] = c
                rem.update(f)
                return _primitive(rem)
            rem[m] = c
            continue
        q = mono_div(m, g.lm)
        d = gcd(c, g.lc)
        a, b = g.lc // d, c // d
        if a != 1:
            if a == -1:
                f = {k: -v for k, v in f.items()}
                rem = {k: -v for k, v in rem.items()}
            else:
                f = {k: v * a for k, v in f.items()}
                rem = {k: v * a for k, v in rem.items()}
        for gm, gc in g.terms.items():
            mm = tuple(x + y for x, y in zip(gm, q))
            v = f.get(mm)
            if v is None:
                f[mm] = -b * gc
                heapq.heappush(heap, (keyer.neg(mm), mm))
            else:
                v -= b * gc
                if v:
                    f[mm] = v
                else:
                    del f[mm]
        steps += 1
        if (steps % 8 == 0 or abs(a) > 1) and (f or rem):
            g_ = 0
            for v in f.values():
                g_ = gcd(g_, v)
                if g_ == 1:
                    break
            if g_ != 1:
                for v in rem.values():
                    g_ = gcd(g_, v)
                    if g_ == 1:
                        break
            if g_ > 1:
                f = {k: v // g_ for k, v in f.items()}
                rem = {k: v // g_ for k, v in rem.items()}
    return _primitive(rem)


def _spoly_terms(f: _Elt, g: _Elt) -> dict:
    l = mono_lcm(f.lm, g.lm)
    qf, qg = mono_div(l, f.lm), mono_div(l, g.lm)
    d = gcd(f.lc, g.lc)
    a, b = g.lc // d, f.lc // d
    out: dict = {}
    for m, c in f.terms.items():
        mm = tuple(x + y for x, y in zip(m, qf))
        out[mm] = c * a
    for m, c in g.terms.items():
        mm = tuple(x + y for x, y in zip(m, qg))
        v = out.get(mm, 0) - c * b
        if v:
            out[mm] = v
        else:
            out.pop(mm, None)
    return _primitive(out) if out else out


def _from_int_terms(ring: Ring, terms: dict, keyer: _Keyer) -> Polynomial:
    lm = max(terms, key=keyer)
    lc = terms[lm]
    return Polynomial._raw(ring, {m: Fraction(c, lc) for m, c in terms.items()})


# ---------------------------------------------------------------------------
# public API


def _check_same_ring(ring: Ring, polys: Iterable[Polynomial]):
    for p in polys:
        if p.ring != ring:
            raise RingMismatch(f"{p.ring} vs {ring}")


def normal_form(f: Polynomial, G: Sequence[Polynomial], order: MonomialOrder = grevlex) -> Polynomial:
    """Remainder of f on division by G (divisors tried in list order)."""
    _check_same_ring(f.ring, G)
    if f.is_zero():
        return f
    G = [g for g in G if not g.is_zero()]
    if not G:
        return f
    return _exact_remainder(f, G, order)


def _exact_remainder(f: Polynomial, G: Sequence[Polynomial], order: MonomialOrder) -> Polynomial:
    keyer = _Keyer(order)
    lts = [g.leading_term(order) for g in G]
    p = dict(f.terms)
    rem: dict = {}
    heap = [(keyer.neg(m), m) for m in p]
    heapq.heapify(heap)
    while heap:
        _, m = heapq.heappop(heap)
        c = p.get(m)
        if c is None:
            continue
        for g, (lm, lc) in zip(G, lts):
            if divides(lm, m):
                break
        else:
            rem[m] = c
            del p[m]
            continue
        q = mono_div(m, lm)
        factor = c / lc
        for gm, gc in g.terms.items():
            mm = tuple(x + y for x, y in zip(gm, q))
            v = p.get(mm)
            if v is None:
                p[mm] = -factor * gc
                heapq.heappush(heap, (keyer.neg(mm), mm))
            else:
                v -= factor * gc
                if v:
                    p[mm] = v
                else:
                    del p[mm]
    return Polynomial._raw(f.ring, rem)


def s_polynomial(f: Polynomial, g: Polynomial, order: MonomialOrder = grevlex) -> Polynomial:
    """lcm-cancellation combination (L/lt(f))*f - (L/lt(g))*g."""
    if f.ring != g.ring:
        raise RingMismatch(f"{f.ring} vs {g.ring}")
    if f.is_zero() or g.is_zero():
        raise ValueError("S-polynomial of a zero polynomial")
    mf, cf = f.leading_term(order)
    mg, cg = g.leading_term(order)
    l = mono_lcm(mf, mg)
    return f.mul_monomial(mono_div(l, mf), 1 / cf) - g.mul_monomial(mono_div(l, mg), 1 / cg)


@dataclass(frozen=True)
class GroebnerBasis:
    ring: Ring
    order: MonomialOrder
    elements: tuple  # monic Polynomials, sorted by decreasing leading monomial

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def is_unit(self) -> bool:
        return len(self.elements) == 1 and self.elements[0].is_constant()

    def leading_monomials(self) -> list:
        return [g.leading_monomial(self.order) for g in self.elements]

    def reduce(self, f: Polynomial) -> Polynomial:
        return normal_form(f, self.elements, self.order)

    def contains(self, f: Polynomial) -> bool:
        if f.is_zero():
            return True
        if not self.elements:
            return False
        keyer = _Keyer(self.order)
        basis = [_Elt(_to_int_terms(g), keyer) for g in self.elements]
        return not _reduce(_to_int_terms(f), basis, keyer)


def _pair_sugar(f: _Elt, g: _Elt, l) -> int:
    d = sum(l)
    return max(f.sugar + d - sum(f.lm), g.sugar + d - sum(g.lm))


def _buchberger(polys: list[dict], keyer: _Keyer, budget: Budget) -> list[dict]:
    elts: list[_Elt] = []
    active: list[int] = []
    pairs: dict = {}  # (i, j) -> (sugar, key(lcm), lcm)

    def update(h: _Elt):
        nonlocal active
        k = len(elts)
        elts.append(h)
        lh = h.lm
        cand = {}
        for i in active:
            cand[i] = mono_lcm(elts[i].lm, lh)
        # chain criterion among the new pairs
        keep = {}
        items = list(cand.items())
        for i, l in items:
            coprime = all(a == 0 or b == 0 for a, b in zip(elts[i].lm, lh))
            if coprime:
                keep[i] = (l, True)
                continue
            dominated = False
            for j, l2 in items:
                if j != i and divides(l2, l) and (l2 != l or j < i):
                    dominated = True
                    break
            if not dominated:
                keep[i] = (l, False)
        # drop old pairs whose lcm is properly divisible via h
        for (i, j), (_, _, l) in list(pairs.items()):
            if divides(lh, l) and mono_lcm(elts[i].lm, lh) != l and mono_lcm(elts[j].lm, lh) != l:
                del pairs[(i, j)]
        for i, (l, coprime) in keep.items():
            if coprime:
                continue  # first criterion
            pairs[(i, k)] = (_pair_sugar(elts[i], h, l), keyer(l), l)
        active = [i for i in active if not divides(lh, elts[i].lm)]
        active.append(k)

    # sugar selection, except under pure lex where the normal strategy (smallest
    # lcm first) keeps intermediate coefficients far smaller
    if keyer.order is lex:
        def select(k):
            return pairs[k][1], pairs[k][0]
    else:
        def select(k):
            return pairs[k][0], pairs[k][1]

    for p in sorted(polys, key=lambda t: keyer(max(t, key=keyer))):
        r = _reduce(p, [elts[i] for i in active], keyer)
        if r:
            if len(r) == 1 and not any(next(iter(r))):
                return [{next(iter(r)): 1}]
            update(_Elt(r, keyer, max(sum(m) for m in p)))

    while pairs:
        budget.tick()
        ij = min(pairs, key=select)
        sugar = pairs.pop(ij)[0]
        i, j = ij
        s = _spoly_terms(elts[i], elts[j])
        if not s:
            continue
        r = _reduce(s, [elts[a] for a in active], keyer)
        if not r:
            continue
        if len(r) == 1 and not any(next(iter(r))):
            return [{next(iter(r)): 1}]
        update(_Elt(r, keyer, sugar))

    # full interreduction: lm of each element is irreducible by the others, so
    # reducing the whole element only rescales it and clears the tail
    out = []
    for n, i in enumerate(active):
        others = [elts[j] for m, j in enumerate(active) if m != n]
        out.append(_reduce(elts[i].terms, others, keyer) if others else elts[i].terms)
    return out


def groebner_basis(gens, order: MonomialOrder = grevlex, ring: Ring | None = None) -> GroebnerBasis:
    """Reduced Gröbner basis of the ideal generated by `gens`."""
    if isinstance(gens, Ideal):
        return gens.groebner(order)
    gens = [g for g in gens if not g.is_zero()]
    if ring is None:
        if not gens:
            raise ValueError("cannot infer the ring of an empty generator list")
        ring = gens[0].ring
    _check_same_ring(ring, gens)
    if not gens:
        return GroebnerBasis(ring, order, ())
    keyer = _Keyer(order)
    raw = _buchberger([_to_int_terms(g) for g in gens], keyer, _current_budget())
    elements = [_from_int_terms(ring, t, keyer) for t in raw]
    elements.sort(key=lambda g: keyer(g.leading_monomial(order)), reverse=True)
    return GroebnerBasis(ring, order, tuple(elements))


class Ideal:
    """Finite generator list in a fixed ring, with per-order Gröbner basis cache."""

    def __init__(self, ring: Ring, generators: Iterable[Polynomial | str] = ()):
        gens = []
        for g in generators:
            if isinstance(g, str):
                g = ring.parse(g)
            if g.ring != ring:
                g = g.to_ring(ring)
            if not g.is_zero():
                gens.append(g)
        self.ring = ring
        self.generators = tuple(gens)
        self._gb: dict = {}

    @classmethod
    def parse(cls, ring: Ring, *texts: str) -> Ideal:
        return cls(ring, [ring.parse(t) for t in texts])

    def groebner(self, order: MonomialOrder = grevlex) -> GroebnerBasis:
        gb = self._gb.get(order)
        if gb is None:
            gb = groebner_basis(list(self.generators), order, ring=self.ring)
            self._gb[order] = gb
        return gb

    def is_zero(self) -> bool:
        return not self.generators

    def is_unit(self) -> bool:
        return self.groebner().is_unit()

    def contains(self, f: Polynomial | str) -> bool:
        if isinstance(f, str):
            f = self.ring.parse(f)
        return ideal_membership(f, self)

    def __add__(self, other: Ideal | Iterable[Polynomial]) -> Ideal:
        extra = other.generators if isinstance(other, Ideal) else tuple(other)
        return Ideal(self.ring, self.generators + tuple(extra))

    def same_as(self, other: Ideal, order: MonomialOrder = grevlex) -> bool:
        """Equality of ideals (reduced-GB equality)."""
        if self.ring != other.ring:
            return False
        return self.groebner(order).elements == other.groebner(order).elements

    def __repr__(self):
        inner = ", ".join(str(g) for g in self.generators)
        return f"Ideal<{inner}> in {self.ring!r}"


def ideal_membership(f: Polynomial, I: Ideal) -> bool:
    if f.ring != I.ring:
        raise RingMismatch(f"{f.ring} vs {I.ring}")
    if f.is_zero():
        return True
    gb = I.groebner()
    if not gb.elements:
        return False
    return gb.contains(f)


def is_groebner(G: Sequence[Polynomial], order: MonomialOrder = grevlex) -> bool:
    """Buchberger criterion: every S-polynomial reduces to zero."""
    G = list(G)
    for i in range(len(G)):
        for j in range(i + 1, len(G)):
            if not normal_form(s_polynomial(G[i], G[j], order), G, order).is_zero():
                return False
    return True

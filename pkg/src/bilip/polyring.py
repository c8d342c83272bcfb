"""Sparse multivariate polynomials over Q with pluggable monomial orders."""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping, Sequence, Union

Monomial = tuple  # tuple[int, ...] of exponents, length = ring arity
Coeff = Union[int, Fraction]

LT, EQ, GT = -1, 0, 1


class ParseError(ValueError):
    def __init__(self, message: str, pos: int = 0, line: int | None = None):
        self.pos = pos
        self.line = line
        where = f"line {line}, col {pos + 1}" if line is not None else f"position {pos}"
        super().__init__(f"{message} at {where}")


class RingMismatch(ValueError):
    pass


# ---------------------------------------------------------------------------
# Monomial orders
#
# Every order exposes key(m) -> tuple of ints; comparing keys as tuples is
# the order.  Keys are cached per order instance.


class MonomialOrder:
    name = "order"

    def key(self, m: Monomial) -> tuple:
        raise NotImplementedError

    def compare(self, a: Monomial, b: Monomial) -> int:
        if len(a) != len(b):
            raise ValueError("monomial arity mismatch")
        ka, kb = self.key(a), self.key(b)
        return (ka > kb) - (ka < kb)

    def __repr__(self) -> str:
        return self.name


class _Lex(MonomialOrder):
    name = "lex"

    def key(self, m):
        return m


class _GrevLex(MonomialOrder):
    name = "grevlex"

    def key(self, m):
        return (sum(m),) + tuple(-e for e in reversed(m))


class _DegLex(MonomialOrder):
    name = "deglex"

    def key(self, m):
        return (sum(m),) + m


lex = _Lex()
grevlex = _GrevLex()
deglex = _DegLex()

ORDERS = {"lex": lex, "grevlex": grevlex, "deglex": deglex}


@dataclass(frozen=True, eq=True)
class BlockOrder(MonomialOrder):
    """Compare the first `split` variables by `first`; break ties on the rest with `second`."""

    split: int
    first: MonomialOrder = grevlex
    second: MonomialOrder = grevlex

    @property
    def name(self):
        return f"block({self.split},{self.first!r},{self.second!r})"

    def key(self, m):
        return self.first.key(m[: self.split]) + self.second.key(m[self.split:])

    def __repr__(self):
        return self.name


@dataclass(frozen=True, eq=True)
class WeightedOrder(MonomialOrder):
    weights: tuple
    tiebreak: MonomialOrder = grevlex

    @property
    def name(self):
        return f"weighted({','.join(map(str, self.weights))};{self.tiebreak!r})"

    def key(self, m):
        return (sum(w * e for w, e in zip(self.weights, m)),) + self.tiebreak.key(m)

    def __repr__(self):
        return self.name


def get_order(name: str | MonomialOrder) -> MonomialOrder:
    if isinstance(name, MonomialOrder):
        return name
    try:
        return ORDERS[name]
    except KeyError:
        raise ValueError(f"unknown monomial order {name!r}") from None


def compare(a: Monomial, b: Monomial, order: MonomialOrder = grevlex) -> int:
    return order.compare(a, b)


def divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x if x > y else y for x, y in zip(a, b))


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_div(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x - y for x, y in zip(a, b))


# ---------------------------------------------------------------------------
# Rings


@dataclass(frozen=True)
class Ring:
    variables: tuple

    def __init__(self, variables: Iterable[str]):
        names = tuple(variables)
        if not names:
            raise ValueError("a ring needs at least one variable")
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        for v in names:
            if not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", v):
                raise ValueError(f"bad variable name {v!r}")
        object.__setattr__(self, "variables", names)

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def index(self, name: str) -> int:
        return self.variables.index(name)

    def gens(self) -> list[Polynomial]:
        return [self.var(v) for v in self.variables]

    def var(self, name: str) -> Polynomial:
        i = self.index(name)
        m = tuple(1 if j == i else 0 for j in range(self.nvars))
        return Polynomial(self, {m: Fraction(1)})

    def zero(self) -> Polynomial:
        return Polynomial(self, {})

    def one(self) -> Polynomial:
        return self.const(1)

    def const(self, c: Coeff) -> Polynomial:
        return Polynomial(self, {self.unit_monomial(): Fraction(c)})

    def unit_monomial(self) -> Monomial:
        return (0,) * self.nvars

    def parse(self, text: str) -> Polynomial:
        return parse_polynomial(text, self)

    def fresh(self, base: str, count: int = 1) -> list[str]:
        """Variable names not already in this ring."""
        taken = set(self.variables)
        out = []
        i = 0
        while len(out) < count:
            name = base if (count == 1 and i == 0) else f"{base}{i}"
            i += 1
            if name not in taken:
                taken.add(name)
                out.append(name)
        return out

    def __repr__(self):
        return f"Ring({','.join(self.variables)})"


def _frac(c) -> Fraction:
    return c if isinstance(c, Fraction) else Fraction(c)


class Polynomial:
    """Immutable sparse polynomial; `terms` maps exponent tuples to nonzero Fractions."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: Ring, terms: Mapping[Monomial, Coeff] | None = None):
        self.ring = ring
        clean = {}
        if terms:
            n = ring.nvars
            for m, c in terms.items():
                if len(m) != n:
                    raise ValueError("monomial arity does not match ring")
                if c:
                    clean[tuple(m)] = _frac(c)
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, ring: Ring, terms: dict) -> Polynomial:
        p = object.__new__(cls)
        p.ring = ring
        p.terms = terms
        p._hash = None
        return p

    # basic predicates -----------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(m) for m in self.terms)

    def min_degree(self) -> int:
        if not self.terms:
            return -1
        return min(sum(m) for m in self.terms)

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self.terms}) <= 1

    def variables_used(self) -> set:
        used = set()
        for m in self.terms:
            for i, e in enumerate(m):
                if e:
                    used.add(self.ring.variables[i])
        return used

    def coefficient(self, m: Monomial) -> Fraction:
        return self.terms.get(tuple(m), Fraction(0))

    # ordering ---------------------------------------------------------------
    def sorted_terms(self, order: MonomialOrder = grevlex) -> list:
        return sorted(self.terms.items(), key=lambda mc: order.key(mc[0]), reverse=True)

    def leading_term(self, order: MonomialOrder = grevlex) -> tuple:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        m = max(self.terms, key=order.key)
        return m, self.terms[m]

    def leading_monomial(self, order: MonomialOrder = grevlex) -> Monomial:
        return self.leading_term(order)[0]

    # arithmetic -----------------------------------------------------------
    def _check(self, other: Polynomial):
        if other.ring != self.ring:
            raise RingMismatch(f"{self.ring} vs {other.ring}")

    def _coerce(self, other) -> Polynomial:
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = dict(self.terms)
        for m, c in other.terms.items():
            v = terms.get(m, 0) + c
            if v:
                terms[m] = v
            else:
                terms.pop(m, None)
        return Polynomial._raw(self.ring, terms)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                terms[m] = terms.get(m, 0) + c1 * c2
        return Polynomial._raw(self.ring, {m: c for m, c in terms.items() if c})

    __rmul__ = __mul__

    def scale(self, c: Coeff) -> Polynomial:
        c = _frac(c)
        if not c:
            return self.ring.zero()
        return Polynomial._raw(self.ring, {m: v * c for m, v in self.terms.items()})

    def mul_monomial(self, mono: Monomial, c: Coeff = 1) -> Polynomial:
        c = _frac(c)
        return Polynomial._raw(self.ring, {mono_mul(m, mono): v * c for m, v in self.terms.items()})

    def __truediv__(self, c):
        if isinstance(c, (int, Fraction)):
            return self.scale(Fraction(1) / _frac(c))
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == ({self.ring.unit_monomial(): Fraction(other)} if other else {})
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    # normalisation ----------------------------------------------------------
    def monic(self, order: MonomialOrder = grevlex) -> Polynomial:
        if not self.terms:
            return self
        return self.scale(1 / self.leading_term(order)[1])

    def primitive(self) -> tuple[Fraction, Polynomial]:
        """(content, primitive part) with integer primitive coefficients."""
        if not self.terms:
            return Fraction(0), self
        den = 1
        for c in self.terms.values():
            den = den * c.denominator // gcd(den, c.denominator)
        num = 0
        for c in self.terms.values():
            num = gcd(num, int(c * den))
        content = Fraction(num, den)
        return content, self.scale(1 / content)

    # substitution -----------------------------------------------------------
    def evaluate(self, point: Sequence[Coeff]) -> Fraction:
        if len(point) != self.ring.nvars:
            raise ValueError(f"point has {len(point)} coordinates, ring has {self.ring.nvars}")
        pt = [_frac(x) for x in point]
        total = Fraction(0)
        for m, c in self.terms.items():
            v = c
            for x, e in zip(pt, m):
                if e:
                    v *= x ** e
            total += v
        return total

    def evaluate_float(self, point: Sequence[float]) -> float:
        total = 0.0
        for m, c in self.terms.items():
            v = float(c)
            for x, e in zip(point, m):
                if e:
                    v *= x ** e
            total += v
        return total

    def compose(self, images: Sequence[Polynomial], target: Ring | None = None) -> Polynomial:
        """Substitute images[i] for the i-th variable."""
        if len(images) != self.ring.nvars:
            raise ValueError("need one image per variable")
        target = target or (images[0].ring if images else self.ring)
        result = target.zero()
        powers: dict = {}

        def power(i, e):
            key = (i, e)
            if key not in powers:
                powers[key] = images[i] ** e
            return powers[key]

        for m, c in self.terms.items():
            term = target.const(c)
            for i, e in enumerate(m):
                if e:
                    term = term * power(i, e)
            result = result + term
        return result

    def translate(self, shift: Sequence[Coeff]) -> Polynomial:
        """f(x + shift)."""
        gens = self.ring.gens()
        return self.compose([g + _frac(s) for g, s in zip(gens, shift)], self.ring)

    def partial(self, var: str | int) -> Polynomial:
        i = var if isinstance(var, int) else self.ring.index(var)
        terms = {}
        for m, c in self.terms.items():
            if m[i]:
                mm = list(m)
                mm[i] -= 1
                terms[tuple(mm)] = c * m[i]
        return Polynomial._raw(self.ring, terms)

    def homogeneous_part(self, degree: int) -> Polynomial:
        return Polynomial._raw(self.ring, {m: c for m, c in self.terms.items() if sum(m) == degree})

    def lowest_form(self) -> Polynomial:
        return self.homogeneous_part(self.min_degree()) if self.terms else self

    def to_ring(self, ring: Ring) -> Polynomial:
        """Re-embed into a ring containing every variable this polynomial uses."""
        if ring == self.ring:
            return self
        idx = []
        for i, v in enumerate(self.ring.variables):
            idx.append(ring.variables.index(v) if v in ring.variables else None)
        terms = {}
        for m, c in self.terms.items():
            mm = [0] * ring.nvars
            for i, e in enumerate(m):
                if e:
                    if idx[i] is None:
                        raise RingMismatch(f"variable {self.ring.variables[i]} not in {ring}")
                    mm[idx[i]] = e
            terms[tuple(mm)] = c
        return Polynomial._raw(ring, terms)

    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({format_polynomial(self)!r}, {self.ring!r})"


# ---------------------------------------------------------------------------
# Text format


def _format_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_polynomial(f: Polynomial, order: MonomialOrder = grevlex) -> str:
    if not f.terms:
        return "0"
    parts = []
    for k, (m, c) in enumerate(f.sorted_terms(order)):
        factors = []
        for v, e in zip(f.ring.variables, m):
            if e == 1:
                factors.append(v)
            elif e:
                factors.append(f"{v}^{e}")
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if not factors:
            body = _format_coeff(a)
        elif a == 1:
            body = "*".join(factors)
        else:
            body = _format_coeff(a) + "*" + "*".join(factors)
        if k == 0:
            parts.append(("-" if sign == "-" else "") + body)
        else:
            parts.append(f" {sign} {body}")
    return "".join(parts)


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        mt = _TOKEN.match(text, pos)
        if mt is None:  # only trailing whitespace
            break
        start = mt.start(mt.lastindex) if mt.lastindex else pos
        if mt.group(1) is not None:
            tokens.append(("int", int(mt.group(1)), start))
        elif mt.group(2) is not None:
            tokens.append(("name", mt.group(2), start))
        elif mt.group(3) is not None:
            ch = mt.group(3)
            if ch.isspace():
                pos = mt.end()
                continue
            if ch not in "+-*^/":
                raise ParseError(f"unexpected character {ch!r}", start)
            tokens.append((ch, ch, start))
        pos = mt.end()
    tokens.append(("end", None, len(text)))
    return tokens


def parse_polynomial(text: str, ring: Ring) -> Polynomial:
    """Parse `term (('+'|'-') term)*` with rational literals p/q and `^` powers."""
    tokens = _tokenize(text)
    i = 0
    n = ring.nvars
    index = {v: k for k, v in enumerate(ring.variables)}

    def peek():
        return tokens[i]

    def take(kind):
        nonlocal i
        tok = tokens[i]
        if tok[0] != kind:
            what = "end of input" if tok[0] == "end" else repr(tok[1])
            raise ParseError(f"expected {kind}, found {what}", tok[2])
        i += 1
        return tok

    def factor(mono):
        tok = take("name")
        if tok[1] not in index:
            raise ParseError(f"unknown variable {tok[1]!r}", tok[2])
        e = 1
        if peek()[0] == "^":
            take("^")
            e = take("int")[1]
        mono[index[tok[1]]] += e

    def term():
        mono = [0] * n
        coeff = Fraction(1)
        kind = peek()[0]
        if kind == "int":
            num = take("int")[1]
            den = 1
            if peek()[0] == "/":
                take("/")
                den = take("int")[1]
                if den == 0:
                    raise ParseError("zero denominator", tokens[i - 1][2])
            coeff = Fraction(num, den)
        elif kind == "name":
            factor(mono)
        else:
            tok = peek()
            what = "end of input" if tok[0] == "end" else repr(tok[1])
            raise ParseError(f"expected a term, found {what}", tok[2])
        while peek()[0] == "*":
            take("*")
            factor(mono)
        return tuple(mono), coeff

    terms: dict = {}
    sign = 1
    if peek()[0] in ("+", "-"):
        sign = -1 if take(peek()[0])[0] == "-" else 1
    while True:
        m, c = term()
        terms[m] = terms.get(m, 0) + sign * c
        kind = peek()[0]
        if kind == "end":
            break
        if kind not in ("+", "-"):
            raise ParseError(f"unexpected {peek()[1]!r}", peek()[2])
        sign = 1 if take(kind)[0] == "+" else -1
    return Polynomial(ring, terms)


def polys(ring: Ring, *texts: str) -> list[Polynomial]:
    return [parse_polynomial(t, ring) for t in texts]

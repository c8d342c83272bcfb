"""Ideal constructions: elimination, saturation, intersection, closures."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .groebner import Ideal, ideal_membership
from .polyring import BlockOrder, Polynomial, Ring, grevlex


@dataclass(frozen=True)
class Parametrization:
    """Polynomial map t -> (p_1(t), ..., p_n(t)) into affine space.

    `targets` names the coordinates of the image space.
    """

    params: Ring
    components: tuple
    targets: tuple = ()

    def __post_init__(self):
        comps = tuple(c if isinstance(c, Polynomial) else self.params.parse(c) for c in self.components)
        for c in comps:
            if c.ring != self.params:
                raise ValueError("parametrization components must live in the parameter ring")
        object.__setattr__(self, "components", comps)
        targets = tuple(self.targets) or tuple(_default_names(len(comps), set(self.params.variables)))
        if len(targets) != len(comps):
            raise ValueError("one target name per component")
        if set(targets) & set(self.params.variables):
            raise ValueError("target names clash with parameter names")
        object.__setattr__(self, "targets", targets)

    @classmethod
    def parse(cls, params: str | Sequence[str], *components: str, targets: Sequence[str] = ()) -> Parametrization:
        ring = Ring([v.strip() for v in params.split(",")] if isinstance(params, str) else params)
        return cls(ring, tuple(ring.parse(c) for c in components), tuple(targets))

    @property
    def dim(self) -> int:
        return len(self.components)

    @property
    def target_ring(self) -> Ring:
        return Ring(self.targets)

    def __call__(self, *values):
        return tuple(c.evaluate(values) for c in self.components)

    def compose(self, images: Sequence[Polynomial], targets: Sequence[str] = ()) -> Parametrization:
        """The parametrization t -> f(p(t)), f given in the target ring."""
        comps = tuple(f.compose(list(self.components), self.params) for f in images)
        return Parametrization(self.params, comps, tuple(targets))


def _default_names(n: int, taken: set) -> list[str]:
    base = ["x", "y", "z", "w"] if n <= 4 else []
    names = base[:n] if base and not taken & set(base[:n]) else [f"x{i + 1}" for i in range(n)]
    if taken & set(names):
        names = [f"X{i + 1}" for i in range(n)]
    return names


def elimination_order(nblock: int):
    return BlockOrder(nblock, grevlex, grevlex)


def eliminate(I: Ideal, drop: Iterable[str]) -> Ideal:
    """Generators of I intersected with the subring in the kept variables.

    The result lives in the ring of the kept variables (original order).
    """
    drop = list(dict.fromkeys(drop))
    ring = I.ring
    for v in drop:
        if v not in ring.variables:
            raise ValueError(f"{v!r} is not a variable of {ring}")
    if not drop:
        return I
    kept = [v for v in ring.variables if v not in drop]
    if not kept:
        raise ValueError("cannot eliminate every variable")
    work = Ring(drop + kept)
    order = elimination_order(len(drop))
    gb = Ideal(work, [g.to_ring(work) for g in I.generators]).groebner(order)
    target = Ring(kept)
    k = len(drop)
    gens = [g.to_ring(target) for g in gb.elements if not any(any(m[:k]) for m in g.terms)]
    return Ideal(target, gens)


def implicitize(p: Parametrization) -> Ideal:
    """Ideal of the Zariski closure of the image of p."""
    ring = Ring(p.params.variables + p.targets)
    graph = [ring.var(x) - c.to_ring(ring) for x, c in zip(p.targets, p.components)]
    return eliminate(Ideal(ring, graph), p.params.variables)


def _with_extra(I: Ideal, base: str) -> tuple[Ring, str]:
    (w,) = I.ring.fresh(base)
    return Ring((w,) + I.ring.variables), w


def saturate(I: Ideal, g: Polynomial) -> Ideal:
    """I : g^infinity via the Rabinowitsch variable."""
    if g.is_zero():
        raise ValueError("cannot saturate by the zero polynomial")
    if g.is_constant():
        return I
    ring, w = _with_extra(I, "w_")
    gens = [f.to_ring(ring) for f in I.generators]
    gens.append(ring.one() - ring.var(w) * g.to_ring(ring))
    return eliminate(Ideal(ring, gens), [w])


def intersect(I: Ideal, J: Ideal) -> Ideal:
    if I.ring != J.ring:
        raise ValueError("ideals live in different rings")
    if I.is_zero() or J.is_zero():
        return Ideal(I.ring, [])
    ring, w = _with_extra(I, "w_")
    wv = ring.var(w)
    gens = [wv * f.to_ring(ring) for f in I.generators]
    gens += [(ring.one() - wv) * f.to_ring(ring) for f in J.generators]
    return eliminate(Ideal(ring, gens), [w])


def saturate_ideal(I: Ideal, J: Ideal) -> Ideal:
    """I : J^infinity as the intersection of the saturations by each generator of J."""
    if J.is_zero():
        return Ideal(I.ring, [I.ring.one()])
    if any(g.is_constant() for g in J.generators):
        return I
    result = None
    for g in J.generators:
        S = saturate(I, g)
        result = S if result is None else intersect(result, S)
    return result


def homogenize_poly(f: Polynomial, ring: Ring, var: str) -> Polynomial:
    """f homogenized with `var` inside `ring` (which must contain var and f's variables)."""
    d = f.total_degree()
    i = ring.index(var)
    g = f.to_ring(ring)
    terms = {}
    for m, c in g.terms.items():
        mm = list(m)
        mm[i] = d - sum(m)
        terms[tuple(mm)] = c
    return Polynomial(ring, terms)


def homogenize(I: Ideal, newvar: str = "x0") -> Ideal:
    """Homogenization of the ideal (via a graded Gröbner basis), newvar placed first."""
    if newvar in I.ring.variables:
        raise ValueError(f"{newvar!r} already a variable")
    ring = Ring((newvar,) + I.ring.variables)
    gb = I.groebner(grevlex)
    return Ideal(ring, [homogenize_poly(g, ring, newvar) for g in gb.elements])


def dehomogenize(I: Ideal, var: str) -> Ideal:
    ring = Ring([v for v in I.ring.variables if v != var])
    images = [ring.one() if v == var else ring.var(v) for v in I.ring.variables]
    return Ideal(ring, [g.compose(images, ring) for g in I.generators])


def radical_membership(f: Polynomial, I: Ideal) -> bool:
    """f in sqrt(I), via 1 in I + <1 - w f>."""
    if f.is_zero():
        return True
    ring, w = _with_extra(I, "w_")
    gens = [g.to_ring(ring) for g in I.generators]
    gens.append(ring.one() - ring.var(w) * f.to_ring(ring))
    return Ideal(ring, gens).is_unit()


def contains_ideal(I: Ideal, J: Ideal) -> bool:
    """J subset of I."""
    return all(ideal_membership(g.to_ring(I.ring), I) for g in J.generators)


def translate(I: Ideal, point: Sequence) -> Ideal:
    """The ideal of V(I) - point (moves `point` to the origin)."""
    return Ideal(I.ring, [g.translate(point) for g in I.generators])

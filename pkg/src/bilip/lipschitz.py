"""Secant-direction varieties and bi-Lipschitz certificates for linear projections.

A linear projection x -> Mx restricted to X is bi-Lipschitz exactly when its
center P(ker M) misses the closure of the set of secant directions of X in
the hyperplane at infinity.  Everything here reduces that test, and the
degree/multiplicity invariance checks built on it, to Gröbner computations.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Sequence, Union

from .groebner import BudgetExceeded, Ideal
from .ideal_ops import (
    Parametrization,
    eliminate,
    implicitize,
    radical_membership,
    saturate,
    saturate_ideal,
)
from .invariants import (
    NotOnVariety,
    check_point,
    dimension,
    hilbert_data,
    multiplicity,
    rank,
    tangent_cone,
    zariski_tangent_dim,
)
from .polyring import Polynomial, Ring


class PreconditionError(ValueError):
    pass


class Verdict(enum.Enum):
    BILIPSCHITZ = "BiLipschitz"
    NOT_BILIPSCHITZ = "NotBiLipschitz"
    BUDGET = "Budget"

    def __str__(self):
        return self.value


# ---------------------------------------------------------------------------
# data types


@dataclass(frozen=True)
class LinearProjection:
    """x -> Mx.  Full rank; the center is the projectivized kernel."""

    matrix: tuple

    def __init__(self, matrix: Sequence[Sequence]):
        rows = tuple(tuple(Fraction(x) for x in row) for row in matrix)
        if not rows or not rows[0]:
            raise ValueError("empty projection matrix")
        if len({len(r) for r in rows}) != 1:
            raise ValueError("ragged projection matrix")
        object.__setattr__(self, "matrix", rows)
        if rank(rows) != min(self.k, self.n):
            raise ValueError("projection matrix must have full rank")

    @property
    def k(self) -> int:
        return len(self.matrix)

    @property
    def n(self) -> int:
        return len(self.matrix[0])

    def forms(self, ring: Ring) -> list[Polynomial]:
        """Rows as linear forms in the variables of `ring`; they cut out the center."""
        gens = ring.gens()
        out = []
        for row in self.matrix:
            f = ring.zero()
            for c, g in zip(row, gens):
                if c:
                    f = f + g.scale(c)
            if not f.is_zero():
                out.append(f)
        return out

    def apply(self, point: Sequence) -> tuple:
        return tuple(sum((c * x for c, x in zip(row, point)), Fraction(0)) for row in self.matrix)

    def apply_polys(self, polys: Sequence[Polynomial]) -> list[Polynomial]:
        ring = polys[0].ring
        out = []
        for row in self.matrix:
            f = ring.zero()
            for c, p in zip(row, polys):
                if c:
                    f = f + p.scale(c)
            out.append(f)
        return out

    def has_trivial_center(self) -> bool:
        return rank(self.matrix) == self.n

    @classmethod
    def coordinate(cls, n: int, keep: Sequence[int]) -> LinearProjection:
        return cls([[1 if j == i else 0 for j in range(n)] for i in keep])

    def to_lists(self) -> list:
        return [[str(x) for x in row] for row in self.matrix]


@dataclass(frozen=True)
class SecantCone:
    """Homogeneous ideal in direction variables; V(ideal) is the affine cone over Sigma."""

    ring: Ring
    ideal: Ideal

    def fills_space(self) -> bool:
        return not self.ideal.groebner().elements

    def contains_direction(self, v: Sequence) -> bool:
        return all(g.evaluate(v) == 0 for g in self.ideal.generators)


@dataclass(frozen=True)
class AlgebraicMap:
    """x -> f(x)/d(x) on X = V(source); components in the source ring."""

    source: Ideal
    components: tuple
    denominator: Polynomial | None = None
    targets: tuple = ()

    def __post_init__(self):
        ring = self.source.ring
        comps = tuple(c if isinstance(c, Polynomial) else ring.parse(c) for c in self.components)
        for c in comps:
            if c.ring != ring:
                raise ValueError("map components must live in the source ring")
        object.__setattr__(self, "components", comps)
        d = self.denominator
        if isinstance(d, str):
            d = ring.parse(d)
        if d is not None and d.is_constant():
            if d.is_zero():
                raise ValueError("zero denominator")
            comps = tuple(c.scale(1 / d.coefficient(ring.unit_monomial())) for c in comps)
            object.__setattr__(self, "components", comps)
            d = None
        object.__setattr__(self, "denominator", d)
        targets = tuple(self.targets) or tuple(ring.fresh("y", len(comps)) if len(comps) > 1
                                               else ring.fresh("y"))
        if len(targets) != len(comps) or set(targets) & set(ring.variables):
            raise ValueError("bad target names for the map")
        object.__setattr__(self, "targets", targets)
        if d is not None and radical_membership(d, self.source):
            raise PreconditionError("the denominator vanishes identically on X")

    @property
    def graph_ring(self) -> Ring:
        return Ring(self.source.ring.variables + self.targets)

    def at(self, point: Sequence) -> tuple:
        pt = tuple(Fraction(x) for x in point)
        d = Fraction(1) if self.denominator is None else self.denominator.evaluate(pt)
        if d == 0:
            raise PreconditionError("the map is not defined at this point (denominator vanishes)")
        return tuple(c.evaluate(pt) / d for c in self.components)


SecantSource = Union[Ideal, Parametrization, SecantCone]


# ---------------------------------------------------------------------------
# secant cones


def _direction_names(taken: Sequence[str], n: int) -> list[str]:
    names = [f"u{i + 1}" for i in range(n)]
    if set(names) & set(taken):
        names = [f"dir{i + 1}" for i in range(n)]
    return names


def _minors(us: Sequence[Polynomial], ds: Sequence[Polynomial]) -> list[Polynomial]:
    n = len(us)
    return [us[i] * ds[j] - us[j] * ds[i] for i in range(n) for j in range(i + 1, n)]


def secant_cone(I: Ideal) -> SecantCone:
    """Sigma for X = V(I): eliminate two copies of X after removing the diagonal."""
    if I.is_unit():
        raise PreconditionError("V(I) is empty")
    xs = list(I.ring.variables)
    n = len(xs)
    taken = set(xs)
    ys = []
    for x in xs:
        name = x + "_b"
        while name in taken:
            name += "_"
        taken.add(name)
        ys.append(name)
    us = _direction_names(sorted(taken), n)
    R = Ring(xs + ys + us)
    Ix = [g.to_ring(R) for g in I.generators]
    Iy = [g.compose([R.var(y) for y in ys], R) for g in I.generators]
    diffs = [R.var(x) - R.var(y) for x, y in zip(xs, ys)]
    J = Ideal(R, Ix + Iy + _minors([R.var(u) for u in us], diffs))
    S = saturate_ideal(J, Ideal(R, diffs))
    E = eliminate(S, xs + ys)
    return SecantCone(E.ring, E)


def divided_difference(p: Polynomial, ring: Ring, t: str, s: str) -> Polynomial:
    """(p(t) - p(s)) / (t - s) for univariate p, as a polynomial in `ring`."""
    tv, sv = ring.var(t), ring.var(s)
    out = ring.zero()
    for (e,), c in p.terms.items():
        h = ring.zero()
        for i in range(e):
            h = h + tv ** i * sv ** (e - 1 - i)
        out = out + h.scale(c)
    return out


def _difference_vectors(p: Parametrization, us_taken: Sequence[str]):
    params = list(p.params.variables)
    taken = set(params) | set(us_taken)
    copies = []
    for v in params:
        name = v + "_b"
        while name in taken:
            name += "_"
        taken.add(name)
        copies.append(name)
    us = _direction_names(sorted(taken | set(p.targets)), p.dim)
    R = Ring(params + copies + us)
    if len(params) == 1:
        diffs = [divided_difference(c, R, params[0], copies[0]) for c in p.components]
    else:
        diffs = [c.to_ring(R) - c.compose([R.var(v) for v in copies], R) for c in p.components]
    return R, params + copies, us, diffs


def secant_cone_parametric(p: Parametrization, method: str = "minors") -> SecantCone:
    """Sigma for the closure of the image of p.

    For one parameter the differences p(t) - p(s) are divided by t - s, so
    tangent directions appear on the diagonal.  method="minors" saturates the
    2x2 minors of [u; diffs] by the ideal of the differences; method="lambda"
    implicitizes u = lambda * diffs instead.  Both define the same cone.
    """
    R, drop, us, diffs = _difference_vectors(p, ())
    uvars = [R.var(u) for u in us]
    if method == "minors":
        S = saturate_ideal(Ideal(R, _minors(uvars, diffs)), Ideal(R, diffs))
        E = eliminate(S, drop)
    elif method == "lambda":
        (lam,) = R.fresh("lam")
        R2 = Ring((lam,) + R.variables)
        lv = R2.var(lam)
        gens = [R2.var(u) - lv * d.to_ring(R2) for u, d in zip(us, diffs)]
        E = eliminate(Ideal(R2, gens), [lam] + drop)
    else:
        raise ValueError(f"unknown method {method!r}")
    return SecantCone(E.ring, E)


def as_secant_cone(X: SecantSource) -> SecantCone:
    if isinstance(X, SecantCone):
        return X
    if isinstance(X, Parametrization):
        return secant_cone_parametric(X)
    if isinstance(X, Ideal):
        return secant_cone(X)
    raise TypeError(f"cannot build a secant cone from {type(X).__name__}")


# ---------------------------------------------------------------------------
# certificates


def projective_empty_intersection(A: Ideal, forms: Sequence[Polynomial], method: str = "radical") -> bool:
    """True iff V(A) and V(forms) share no point of projective space.

    method="radical" asks u_i in sqrt(A + forms) for every variable;
    method="dimension" asks that the affine cone V(A + forms) be zero-dimensional.
    """
    J = A + [f.to_ring(A.ring) for f in forms]
    if method == "radical":
        return all(radical_membership(u, J) for u in A.ring.gens())
    if method == "dimension":
        if J.is_unit():
            return True
        return dimension(J) == 0
    raise ValueError(f"unknown method {method!r}")


def certify_projection(X: SecantSource, M: LinearProjection, method: str = "radical") -> Verdict:
    """BiLipschitz iff the center of M misses Sigma(X)."""
    try:
        sigma = as_secant_cone(X)
        if M.n != sigma.ring.nvars:
            raise PreconditionError(f"projection expects {M.n} coordinates, X lives in {sigma.ring.nvars}")
        if M.has_trivial_center():
            return Verdict.BILIPSCHITZ
        ok = projective_empty_intersection(sigma.ideal, M.forms(sigma.ring), method)
    except BudgetExceeded:
        return Verdict.BUDGET
    return Verdict.BILIPSCHITZ if ok else Verdict.NOT_BILIPSCHITZ


# ---------------------------------------------------------------------------
# graphs and invariance pipelines


def graph_ideal(f: AlgebraicMap) -> Ideal:
    """Ideal of the Zariski closure of the graph of f in source x target space."""
    R = f.graph_ring
    gens = [g.to_ring(R) for g in f.source.generators]
    d = f.denominator.to_ring(R) if f.denominator is not None else None
    for y, c in zip(f.targets, f.components):
        lhs = R.var(y) if d is None else d * R.var(y)
        gens.append(lhs - c.to_ring(R))
    G = Ideal(R, gens)
    if d is not None:
        G = saturate(G, d)
    return G


def image_ideal(f: AlgebraicMap) -> Ideal:
    G = graph_ideal(f)
    return eliminate(G, f.source.ring.variables)


def _graph_parametrization(p: Parametrization, f: AlgebraicMap) -> Parametrization:
    if f.denominator is not None:
        raise PreconditionError("parametrized graphs need a polynomial map")
    src = f.source.ring
    if tuple(p.targets) != src.variables:
        p = Parametrization(p.params, p.components, src.variables)
    images = [c.compose(list(p.components), p.params) for c in f.components]
    return Parametrization(p.params, tuple(p.components) + tuple(images), src.variables + f.targets)


@dataclass
class DegreeReport:
    deg_x: int
    deg_graph: int
    deg_y: int
    certified: bool
    certificate: str  # "symbolic", "numeric" or "none"
    centers: dict = field(default_factory=dict)
    note: str = ""

    @property
    def degrees_equal(self) -> bool:
        return self.deg_x == self.deg_graph == self.deg_y

    @property
    def violated(self) -> bool:
        return self.certified and not self.degrees_equal

    def to_dict(self) -> dict:
        return {
            "deg_X": self.deg_x,
            "deg_Gamma": self.deg_graph,
            "deg_Y": self.deg_y,
            "certified": self.certified,
            "certificate": self.certificate,
            "centers": {k: str(v) for k, v in self.centers.items()},
            "note": self.note,
        }


def _center_forms(ring: Ring, names: Sequence[str]) -> list[Polynomial]:
    return [ring.var(v) for v in names]


def _numeric_center_check(p: Parametrization, nx: int, pairs: int, seed: int, tol: float) -> dict:
    from .sampler import secant_cloud

    cloud = secant_cloud(p, pairs=pairs, seed=seed)
    n = p.dim
    dist1 = min(max(abs(float(v[i])) for i in range(nx)) for v in cloud)
    dist2 = min(max(abs(float(v[i])) for i in range(nx, n)) for v in cloud)
    return {"S1": dist1 > tol, "S2": dist2 > tol, "min_dist_S1": dist1, "min_dist_S2": dist2}


def verify_degree_invariance(
    I_X: Ideal,
    f: AlgebraicMap,
    param: Parametrization | None = None,
    numeric_fallback: bool = True,
    pairs: int = 2000,
    seed: int = 0,
) -> DegreeReport:
    """deg X, deg Graph(f), deg f(X), certified by the two projection centers avoiding Sigma(Graph).

    Injectivity of f is not checked; the caller vouches for it.
    """
    if f.source.ring != I_X.ring:
        raise PreconditionError("map source ring differs from X's ring")
    G = graph_ideal(f)
    Y = eliminate(G, I_X.ring.variables)
    dx, dg, dy = hilbert_data(I_X).degree, hilbert_data(G).degree, hilbert_data(Y).degree
    xs, ys = I_X.ring.variables, f.targets
    centers: dict = {}
    try:
        if param is not None:
            sigma = secant_cone_parametric(_graph_parametrization(param, f))
        else:
            sigma = secant_cone(G)
        names = sigma.ring.variables
        for label, idx in (("S1", range(len(xs))), ("S2", range(len(xs), len(xs) + len(ys)))):
            forms = _center_forms(sigma.ring, [names[i] for i in idx])
            ok = projective_empty_intersection(sigma.ideal, forms)
            centers[label] = Verdict.BILIPSCHITZ if ok else Verdict.NOT_BILIPSCHITZ
        certified = all(v is Verdict.BILIPSCHITZ for v in centers.values())
        return DegreeReport(dx, dg, dy, certified, "symbolic", centers)
    except BudgetExceeded:
        if param is None or not numeric_fallback:
            return DegreeReport(dx, dg, dy, False, "none", {"S1": Verdict.BUDGET, "S2": Verdict.BUDGET},
                                "secant cone exceeded the budget")
        check = _numeric_center_check(_graph_parametrization(param, f), len(xs), pairs, seed, 1e-3)
        centers = {"S1": check["S1"], "S2": check["S2"]}
        return DegreeReport(dx, dg, dy, check["S1"] and check["S2"], "numeric", centers,
                            f"numeric certificate: min sup-distance to centers "
                            f"{check['min_dist_S1']:.3g}, {check['min_dist_S2']:.3g}")


@dataclass
class MultiplicityReport:
    point: tuple
    image_point: tuple
    mult_x: int
    mult_graph: int
    mult_y: int
    certified: bool
    centers: dict = field(default_factory=dict)

    @property
    def violated(self) -> bool:
        return self.certified and not (self.mult_x == self.mult_graph == self.mult_y)

    def to_dict(self) -> dict:
        return {
            "point": [str(x) for x in self.point],
            "image_point": [str(x) for x in self.image_point],
            "mult_X": self.mult_x,
            "mult_Gamma": self.mult_graph,
            "mult_Y": self.mult_y,
            "certified": self.certified,
            "centers": {k: str(v) for k, v in self.centers.items()},
        }


def verify_multiplicity_invariance(I_X: Ideal, f: AlgebraicMap, point: Sequence) -> MultiplicityReport:
    """mult at p of X, of the graph at (p, f(p)), and of f(X) at f(p).

    certified: the graph's tangent cone at (p, f(p)) meets neither projection
    center.
    """
    pt = check_point(I_X, point)
    fp = f.at(pt)
    G = graph_ideal(f)
    Y = eliminate(G, I_X.ring.variables)
    gp = pt + fp
    mx = multiplicity(I_X, pt)
    cone = tangent_cone(G, gp)
    mg = hilbert_data(cone).degree
    my = multiplicity(Y, fp)
    nx = I_X.ring.nvars
    names = G.ring.variables
    centers = {}
    for label, sel in (("S1", names[:nx]), ("S2", names[nx:])):
        ok = projective_empty_intersection(cone, _center_forms(G.ring, sel))
        centers[label] = Verdict.BILIPSCHITZ if ok else Verdict.NOT_BILIPSCHITZ
    certified = all(v is Verdict.BILIPSCHITZ for v in centers.values())
    return MultiplicityReport(pt, fp, mx, mg, my, certified, centers)


# ---------------------------------------------------------------------------
# generic projections


@dataclass
class SearchResult:
    projection: LinearProjection | None
    attempts: int
    status: str  # "certified", "trivial", "inconclusive", "impossible"
    verdicts: list = field(default_factory=list)

    @property
    def found(self) -> bool:
        return self.projection is not None

    def to_dict(self) -> dict:
        return {
            "status": self.status,
            "attempts": self.attempts,
            "matrix": self.projection.to_lists() if self.projection else None,
            "verdicts": [str(v) for v in self.verdicts],
        }


def random_center_search(
    X: Ideal | Parametrization,
    target: int,
    seed: int = 0,
    attempts: int = 20,
    cone: SecantCone | None = None,
    check_dimension: bool = True,
) -> SearchResult:
    """Random integer projections to C^target, each re-certified; the first certified one wins.

    Failure after `attempts` draws is inconclusive, never a proof of nonexistence,
    except when dim Sigma is too large for any center to miss it.
    """
    I = implicitize(X) if isinstance(X, Parametrization) else X
    n = I.ring.nvars
    if check_dimension:
        k = dimension(I)
        if target < 2 * k + 1:
            raise PreconditionError(f"target {target} < 2*dim+1 = {2 * k + 1}")
    if target < 1:
        raise PreconditionError("target must be positive")
    if target >= n:
        M = LinearProjection([[1 if i == j else 0 for j in range(n)] for i in range(target)])
        return SearchResult(M, 0, "trivial", [Verdict.BILIPSCHITZ])
    if cone is None:
        cone = as_secant_cone(X)
    # a center of projective dim n-target-1 always meets Sigma once the dimensions add up
    if cone.fills_space() or dimension(cone.ideal) > target:
        return SearchResult(None, 0, "impossible", [])
    rng = random.Random(seed)
    verdicts = []
    for attempt in range(attempts):
        box = 1 + attempt // 2
        rows = [[rng.randint(-box, box) for _ in range(n)] for _ in range(target)]
        if rank(rows) < target:
            verdicts.append(Verdict.NOT_BILIPSCHITZ)
            continue
        M = LinearProjection(rows)
        v = certify_projection(cone, M)
        verdicts.append(v)
        if v is Verdict.BILIPSCHITZ:
            return SearchResult(M, attempt + 1, "certified", verdicts)
    return SearchResult(None, attempts, "inconclusive", verdicts)


# ---------------------------------------------------------------------------
# Veronese cones


def veronese_monomials(r: int, d: int) -> list[tuple]:
    """Exponent vectors of degree d in r+1 variables, lex-descending."""
    def rec(k, left):
        if k == 1:
            yield (left,)
            return
        for e in range(left, -1, -1):
            for rest in rec(k - 1, left - e):
                yield (e,) + rest

    return list(rec(r + 1, d))


def veronese_parametrization(r: int, d: int) -> Parametrization:
    if r < 1 or d < 1:
        raise PreconditionError("need r >= 1 and d >= 1")
    params = Ring([f"a{i}" for i in range(r + 1)])
    comps = tuple(Polynomial(params, {m: 1}) for m in veronese_monomials(r, d))
    N = len(comps)
    return Parametrization(params, comps, tuple(f"z{i}" for i in range(N)))


def veronese_cone(r: int, d: int) -> Ideal:
    """Ideal of the affine cone over the d-uple embedding of P^r in C^binom(r+d, d)."""
    return implicitize(veronese_parametrization(r, d))


@dataclass
class NormalityProxyReport:
    r: int
    d: int
    target: int
    ambient: int
    cone_tangent_dim: int
    search: SearchResult
    image_tangent_dim: int | None
    conclusion: str

    def to_dict(self) -> dict:
        return {
            "r": self.r,
            "d": self.d,
            "target": self.target,
            "ambient": self.ambient,
            "cone_tangent_dim": self.cone_tangent_dim,
            "projection": self.search.to_dict(),
            "image_tangent_dim": self.image_tangent_dim,
            "conclusion": self.conclusion,
        }


def normality_proxy_report(r: int, d: int, target: int, seed: int = 0, attempts: int = 20) -> NormalityProxyReport:
    """Tangent dimension of the Veronese cone at 0 versus that of a bi-Lipschitz linear image."""
    if target < 1:
        raise PreconditionError("target must be positive")
    p = veronese_parametrization(r, d)
    N = comb(r + d, d)
    I = implicitize(p)
    origin = (0,) * N
    tdim = zariski_tangent_dim(I, origin)
    if target >= N:
        search = random_center_search(I, target, seed, attempts, check_dimension=False)
    else:
        cone = secant_cone_parametric(p, method="lambda")
        search = random_center_search(I, target, seed, attempts, cone=cone, check_dimension=False)
    image_dim = None
    if search.found:
        M = search.projection
        img = Parametrization(p.params, tuple(M.apply_polys(list(p.components))),
                              tuple(f"y{i + 1}" for i in range(M.k)))
        image_dim = zariski_tangent_dim(implicitize(img), (0,) * M.k)
    if not search.found:
        if search.status == "impossible":
            conclusion = (f"no linear projection C^{N} -> C^{target} is bi-Lipschitz on the cone: "
                          f"every center meets its secant directions at infinity")
        else:
            conclusion = "no certified projection found; inconclusive"
    elif image_dim < tdim:
        conclusion = ("tangent dimension drops under a bi-Lipschitz homeomorphism, so the map is not "
                      "biregular; implied (not computed): the cone is normal and its image is not")
    else:
        conclusion = "tangent dimension preserved; no normality conclusion"
    return NormalityProxyReport(r, d, target, N, tdim, search, image_dim, conclusion)

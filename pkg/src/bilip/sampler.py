"""Empirical bi-Lipschitz distortion and secant-direction clouds.

Parameters are sampled as exact rationals and all differences and ratios are
computed in exact arithmetic; floats only appear in the reports.
"""

from __future__ import annotations

import csv
import io
import json
import math
import random
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Sequence

from .ideal_ops import Parametrization

DEFAULT_SCALES = tuple(2 ** k for k in range(11))
_DENOMINATOR = 1024


class DegenerateParametrization(ValueError):
    pass


@dataclass
class ScaleRecord:
    scale: float
    min_ratio: float
    max_ratio: float
    argmin_t: str
    argmin_s: str
    pairs: int
    skipped: int = 0


@dataclass
class DistortionReport:
    norm: str
    records: list = field(default_factory=list)

    @property
    def min_ratios(self) -> list:
        return [r.min_ratio for r in self.records]

    @property
    def max_ratios(self) -> list:
        return [r.max_ratio for r in self.records]

    def to_dict(self) -> dict:
        return {"norm": self.norm, "records": [asdict(r) for r in self.records]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["scale", "min_ratio", "max_ratio", "argmin_t", "argmin_s"])
        for r in self.records:
            w.writerow([r.scale, repr(r.min_ratio), repr(r.max_ratio), r.argmin_t, r.argmin_s])
        return buf.getvalue()


class _Evaluator:
    """Exact evaluation at parameters k/_DENOMINATOR using integer arithmetic.

    Component j is returned as numerator N_j(k) over a fixed denominator L_j.
    """

    def __init__(self, p: Parametrization):
        self.comps = []
        self.denoms = []
        for c in p.components:
            top = max((sum(m) for m in c.terms), default=0)
            den = 1
            for v in c.terms.values():
                den = den * v.denominator // math.gcd(den, v.denominator)
            terms = [(m, int(v * den) * _DENOMINATOR ** (top - sum(m))) for m, v in c.terms.items()]
            self.comps.append(terms)
            self.denoms.append(den * _DENOMINATOR ** top)

    def numerators(self, ks: Sequence[int]) -> list:
        cache: dict = {}
        out = []
        for terms in self.comps:
            total = 0
            for m, c in terms:
                v = c
                for i, e in enumerate(m):
                    if e:
                        pw = cache.get((i, e))
                        if pw is None:
                            pw = cache[(i, e)] = ks[i] ** e
                        v *= pw
                total += v
            out.append(total)
        return out

    def difference(self, kt: Sequence[int], ks: Sequence[int]) -> list:
        a, b = self.numerators(kt), self.numerators(ks)
        return [Fraction(x - y, L) for x, y, L in zip(a, b, self.denoms)]


def _norm_sup(v) -> Fraction:
    return max(abs(x) for x in v)


def _norm(v, norm: str):
    """Sup norm exactly; Euclidean returned squared (exact) to defer the root."""
    if norm == "sup":
        return _norm_sup(v)
    if norm == "euclidean":
        return sum(x * x for x in v)
    raise ValueError(f"unknown norm {norm!r}")


def _draw(rng: random.Random, scale: Fraction, nparams: int) -> tuple:
    """Numerators k of parameters k/_DENOMINATOR with |k/_DENOMINATOR| <= scale."""
    lim = int(scale * _DENOMINATOR)
    return tuple(rng.randint(-lim, lim) for _ in range(nparams))


def distortion(
    p: Parametrization,
    q: Parametrization,
    pairs: int = 1000,
    scales: Sequence = DEFAULT_SCALES,
    seed: int = 0,
    norm: str = "sup",
) -> DistortionReport:
    """Min/max of |q(t)-q(s)| / |p(t)-p(s)| over random parameter pairs, per scale."""
    if p.params != q.params:
        raise ValueError("p and q must share parameters")
    ev_p, ev_q = _Evaluator(p), _Evaluator(q)
    rng = random.Random(seed)
    report = DistortionReport(norm)
    nparams = p.params.nvars
    for scale in scales:
        S = Fraction(scale)
        best_min = best_max = None
        arg = (None, None)
        skipped = 0
        done = 0
        while done < pairs:
            t, s = _draw(rng, S, nparams), _draw(rng, S, nparams)
            if t == s:
                continue
            dp = ev_p.difference(t, s)
            np_ = _norm(dp, norm)
            done += 1
            if np_ == 0:
                skipped += 1
                continue
            dq = ev_q.difference(t, s)
            ratio = _norm(dq, norm) / np_
            if best_min is None or ratio < best_min:
                best_min, arg = ratio, (t, s)
            if best_max is None or ratio > best_max:
                best_max = ratio
        if best_min is None:
            raise DegenerateParametrization("every sampled pair collapsed under p")
        if norm == "euclidean":
            lo, hi = math.sqrt(best_min), math.sqrt(best_max)
        else:
            lo, hi = float(best_min), float(best_max)
        fmt = lambda v: ",".join(str(Fraction(x, _DENOMINATOR)) for x in v)  # noqa: E731
        report.records.append(ScaleRecord(float(S), lo, hi, fmt(arg[0]), fmt(arg[1]), pairs, skipped))
    return report


def secant_cloud(p: Parametrization, pairs: int = 100, seed: int = 0, scale=1) -> list[tuple]:
    """Sup-norm normalized secant directions (exact rationals) of sampled pairs."""
    ev = _Evaluator(p)
    rng = random.Random(seed)
    S = Fraction(scale)
    nparams = p.params.nvars
    out = []
    misses = 0
    while len(out) < pairs:
        t, s = _draw(rng, S, nparams), _draw(rng, S, nparams)
        if t == s:
            continue
        d = ev.difference(t, s)
        m = _norm_sup(d)
        if m == 0:
            misses += 1
            if misses > 10 * pairs:
                raise DegenerateParametrization("parametrization collapses sampled pairs")
            continue
        out.append(tuple(x / m for x in d))
    return out

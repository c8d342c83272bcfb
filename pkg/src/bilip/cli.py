"""Command-line front end.

Exit codes: 0 success, 2 parse error, 3 budget exceeded, 4 precondition
violated, 5 an invariance check failed on a certified input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from fractions import Fraction

from . import ideal_ops, invariants, lipschitz, sampler
from .groebner import BudgetExceeded, Ideal, limits, normal_form
from .ideal_ops import Parametrization
from .invariants import EmptyVariety, NotOnVariety
from .lipschitz import LinearProjection, PreconditionError, Verdict
from .polyring import ParseError, format_polynomial, get_order
from .problem import parse_problem_file

EXIT_OK, EXIT_PARSE, EXIT_BUDGET, EXIT_PRECONDITION, EXIT_FAILED = 0, 2, 3, 4, 5


class _Failed(Exception):
    """Raised with a payload when a verification pipeline finds a violated invariant."""

    def __init__(self, payload, text):
        self.payload, self.text = payload, text


def _threads() -> int:
    # computations are single-threaded; the cap is read for interface compatibility
    try:
        return max(1, int(os.environ.get("BILIP_THREADS", "1")))
    except ValueError:
        return 1


def _ideal_payload(I: Ideal) -> dict:
    return {"ring": list(I.ring.variables), "generators": [str(g) for g in I.generators]}


def _ideal_text(I: Ideal) -> str:
    if not I.generators:
        return "0"
    return "\n".join(str(g) for g in I.generators)


def _variety(pf) -> Ideal:
    return pf.source_ideal()


def _parse_scales(text: str) -> list:
    text = text.strip()
    if ":" in text:
        lo, hi = text.split(":")
        return [2 ** k for k in range(int(lo), int(hi) + 1)]
    return [Fraction(x) for x in text.split(",")]


def _parse_poly(pf, text):
    ring = _variety(pf).ring
    return ring.parse(text)


# ---------------------------------------------------------------------------
# subcommands; each returns (payload, text)


def cmd_gb(args):
    pf = parse_problem_file(args.file)
    order = get_order(args.order)
    gb = _variety(pf).groebner(order)
    return {"order": repr(order), "basis": [str(g) for g in gb]}, "\n".join(str(g) for g in gb) or "0"


def cmd_nf(args):
    pf = parse_problem_file(args.file)
    I = _variety(pf)
    order = get_order(args.order)
    f = _parse_poly(pf, args.poly)
    r = normal_form(f, list(I.groebner(order).elements), order)
    return {"normal_form": str(r)}, str(r)


def cmd_eliminate(args):
    pf = parse_problem_file(args.file)
    E = ideal_ops.eliminate(_variety(pf), [v.strip() for v in args.drop.split(",") if v.strip()])
    return _ideal_payload(E), _ideal_text(E)


def cmd_implicitize(args):
    pf = parse_problem_file(args.file)
    if not pf.parametrizations:
        raise ParseError("implicitize needs a parametrization (`params` + `map:`)", 0)
    E = ideal_ops.implicitize(pf.parametrizations[0])
    return _ideal_payload(E), _ideal_text(E)


def cmd_saturate(args):
    pf = parse_problem_file(args.file)
    E = ideal_ops.saturate(_variety(pf), _parse_poly(pf, args.poly))
    return _ideal_payload(E), _ideal_text(E)


def cmd_intersect(args):
    a, b = parse_problem_file(args.file), parse_problem_file(args.other)
    E = ideal_ops.intersect(_variety(a), _variety(b))
    return _ideal_payload(E), _ideal_text(E)


def cmd_dim(args):
    d = invariants.dimension(_variety(parse_problem_file(args.file)))
    return {"dimension": d}, str(d)


def cmd_degree(args):
    d = invariants.degree(_variety(parse_problem_file(args.file)))
    return {"degree": d}, str(d)


def cmd_tangent_cone(args):
    pf = parse_problem_file(args.file)
    C = invariants.tangent_cone(_variety(pf), pf.require_point())
    return _ideal_payload(C), _ideal_text(C)


def cmd_mult(args):
    pf = parse_problem_file(args.file)
    m = invariants.multiplicity(_variety(pf), pf.require_point())
    return {"multiplicity": m}, str(m)


def cmd_tangent_dim(args):
    pf = parse_problem_file(args.file)
    d = invariants.zariski_tangent_dim(_variety(pf), pf.require_point())
    return {"tangent_dim": d}, str(d)


def _secant_source(pf):
    if pf.parametrizations and pf.ideal is None:
        return pf.parametrizations[0]
    return _variety(pf)


def cmd_secant(args):
    pf = parse_problem_file(args.file)
    cone = lipschitz.as_secant_cone(_secant_source(pf))
    payload = _ideal_payload(cone.ideal)
    payload["fills_space"] = cone.fills_space()
    return payload, _ideal_text(cone.ideal)


def cmd_certify(args):
    pf = parse_problem_file(args.file)
    if pf.matrix is None:
        raise ParseError("certify-projection needs a `matrix:` block", 0)
    v = lipschitz.certify_projection(_secant_source(pf), pf.matrix)
    if v is Verdict.BUDGET:
        raise BudgetExceeded("secant cone computation exceeded the budget")
    return {"verdict": str(v), "matrix": pf.matrix.to_lists()}, str(v)


def cmd_graph(args):
    pf = parse_problem_file(args.file)
    G = lipschitz.graph_ideal(pf.algebraic_map())
    return _ideal_payload(G), _ideal_text(G)


def cmd_verify_degree(args):
    pf = parse_problem_file(args.file)
    f = pf.algebraic_map()
    param = pf.parametrizations[0] if pf.parametrizations else None
    rep = lipschitz.verify_degree_invariance(f.source, f, param=param, pairs=args.pairs, seed=args.seed)
    text = (f"deg X={rep.deg_x} deg Γ={rep.deg_graph} deg Y={rep.deg_y} "
            f"certified={'true' if rep.certified else 'false'}\ncertificate: {rep.certificate}")
    if rep.note:
        text += f"\n{rep.note}"
    if rep.violated:
        raise _Failed(rep.to_dict(), text + "\nFAILED: degrees differ on a certified input")
    return rep.to_dict(), text


def cmd_verify_mult(args):
    pf = parse_problem_file(args.file)
    f = pf.algebraic_map()
    rep = lipschitz.verify_multiplicity_invariance(f.source, f, pf.require_point())
    text = (f"mult X={rep.mult_x} mult Γ={rep.mult_graph} mult Y={rep.mult_y} "
            f"certified={'true' if rep.certified else 'false'}")
    if rep.violated:
        raise _Failed(rep.to_dict(), text + "\nFAILED: multiplicities differ on a certified input")
    return rep.to_dict(), text


def cmd_center_search(args):
    pf = parse_problem_file(args.file)
    X = _secant_source(pf)
    res = lipschitz.random_center_search(X, args.target, seed=args.seed, attempts=args.attempts)
    payload = res.to_dict()
    if res.found:
        img = None
        if isinstance(X, Parametrization):
            p = X
            img = Parametrization(p.params, tuple(res.projection.apply_polys(list(p.components))),
                                  tuple(f"y{i + 1}" for i in range(res.projection.k)))
            Y = ideal_ops.implicitize(img)
            payload["image_ideal"] = [str(g) for g in Y.generators]
        lines = [res.status, f"attempts={res.attempts}"] + [" ".join(r) for r in res.projection.to_lists()]
    else:
        lines = [res.status, f"attempts={res.attempts}"]
    return payload, "\n".join(lines)


def cmd_veronese(args):
    I = lipschitz.veronese_cone(args.r, args.d)
    return _ideal_payload(I), _ideal_text(I)


def cmd_normality_proxy(args):
    rep = lipschitz.normality_proxy_report(args.r, args.d, args.target, seed=args.seed, attempts=args.attempts)
    text = [f"dim T0 cone={rep.cone_tangent_dim}",
            f"projection={rep.search.status}",
            f"dim T0 image={rep.image_tangent_dim if rep.image_tangent_dim is not None else 'n/a'}",
            rep.conclusion]
    return rep.to_dict(), "\n".join(text)


def _distortion_pair(pf):
    if not pf.parametrizations:
        raise ParseError("distortion needs a parametrization", 0)
    p = pf.parametrizations[0]
    if len(pf.parametrizations) > 1:
        return p, pf.parametrizations[1]
    if pf.maps:
        comps, denom = pf.maps[0]
        if denom is not None:
            raise PreconditionError("distortion needs a polynomial map")
        ring = comps[0].ring
        if tuple(p.targets) != ring.variables:
            p = Parametrization(p.params, p.components, ring.variables)
        return p, p.compose(comps)
    if pf.matrix is not None:
        return p, Parametrization(p.params, tuple(pf.matrix.apply_polys(list(p.components))))
    raise ParseError("distortion needs a second parametrization, a map or a matrix", 0)


def cmd_distortion(args):
    pf = parse_problem_file(args.file)
    p, q = _distortion_pair(pf)
    rep = sampler.distortion(p, q, pairs=args.pairs, scales=args.scales, seed=args.seed, norm=args.norm)
    if args.csv:
        with open(args.csv, "w", encoding="utf-8") as fh:
            fh.write(rep.to_csv())
    return rep.to_dict(), rep.to_csv().rstrip("\n")


def cmd_secant_cloud(args):
    pf = parse_problem_file(args.file)
    if not pf.parametrizations:
        raise ParseError("secant-cloud needs a parametrization", 0)
    cloud = sampler.secant_cloud(pf.parametrizations[0], pairs=args.pairs, seed=args.seed)
    payload = {"directions": [[str(x) for x in v] for v in cloud]}
    if args.check:
        cone = lipschitz.secant_cone_parametric(pf.parametrizations[0])
        bad = sum(1 for v in cloud if not cone.contains_direction(v))
        payload["outside_secant_cone"] = bad
    text = "\n".join(" ".join(str(x) for x in v) for v in cloud)
    if args.check:
        text += f"\noutside_secant_cone={payload['outside_secant_cone']}"
    return payload, text


# ---------------------------------------------------------------------------


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    S = argparse.SUPPRESS
    p.add_argument("--order", default=S, help="monomial order: grevlex, lex, deglex")
    p.add_argument("--seed", type=int, default=S)
    p.add_argument("--max-steps", type=int, default=S, help="max pair reductions per run")
    p.add_argument("--timeout-seconds", type=float, default=S)
    p.add_argument("--format", choices=["text", "json"], default=S)
    p.add_argument("--scales", type=_parse_scales, default=S, help="'lo:hi' for 2^lo..2^hi or a comma list")
    p.add_argument("--pairs", type=int, default=S)
    p.add_argument("--timing", action="store_true", default=S, help="add elapsed seconds to JSON output")
    return p


_DEFAULTS = {
    "order": "grevlex",
    "seed": 0,
    "max_steps": 1_000_000,
    "timeout_seconds": 600.0,
    "format": "text",
    "scales": list(sampler.DEFAULT_SCALES),
    "pairs": 1000,
    "timing": False,
}


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="bilip", parents=[common],
                                     description="Exact algebraic invariants and bi-Lipschitz projection certificates.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_, *positional):
        sp = sub.add_parser(name, parents=[common], help=help_)
        for pos in positional:
            sp.add_argument(pos)
        sp.set_defaults(func=func)
        return sp

    add("gb", cmd_gb, "reduced Gröbner basis", "file")
    add("nf", cmd_nf, "normal form of a polynomial", "file", "poly")
    add("eliminate", cmd_eliminate, "elimination ideal", "file").add_argument("--drop", required=True)
    add("implicitize", cmd_implicitize, "ideal of a parametrized variety", "file")
    add("saturate", cmd_saturate, "saturation I : g^inf", "file", "poly")
    add("intersect", cmd_intersect, "intersection of two ideals", "file", "other")
    add("dim", cmd_dim, "dimension", "file")
    add("degree", cmd_degree, "degree", "file")
    add("tangent-cone", cmd_tangent_cone, "tangent cone at the point block (default origin)", "file")
    add("mult", cmd_mult, "multiplicity at the point", "file")
    add("tangent-dim", cmd_tangent_dim, "Zariski tangent space dimension at the point", "file")
    add("secant", cmd_secant, "secant-direction cone", "file")
    add("certify-projection", cmd_certify, "bi-Lipschitz certificate for the matrix block", "file")
    add("graph", cmd_graph, "graph ideal of the map", "file")
    add("verify-degree", cmd_verify_degree, "degree invariance pipeline", "file")
    add("verify-mult", cmd_verify_mult, "multiplicity invariance pipeline", "file")
    sp = add("center-search", cmd_center_search, "random certified projection", "file")
    sp.add_argument("--target", type=int, required=True)
    sp.add_argument("--attempts", type=int, default=20)
    sp = add("veronese", cmd_veronese, "ideal of a Veronese cone")
    sp.add_argument("r", type=int)
    sp.add_argument("d", type=int)
    sp = add("normality-proxy", cmd_normality_proxy, "tangent dimensions of a Veronese cone and its projection")
    sp.add_argument("r", type=int)
    sp.add_argument("d", type=int)
    sp.add_argument("--target", type=int, required=True)
    sp.add_argument("--attempts", type=int, default=20)
    sp = add("distortion", cmd_distortion, "empirical distortion of a map", "file")
    sp.add_argument("--norm", choices=["sup", "euclidean"], default="sup")
    sp.add_argument("--csv", help="also write the report as CSV to this path")
    sp = add("secant-cloud", cmd_secant_cloud, "sampled secant directions", "file")
    sp.add_argument("--check", action="store_true", help="test each direction against the symbolic cone")
    return parser


def _emit(args, payload, text, out, elapsed):
    if args.format == "json":
        if args.timing:
            payload = dict(payload, elapsed_seconds=elapsed)
        out.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    else:
        out.write(text + "\n")


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_PARSE if e.code else EXIT_OK
    for k, v in _DEFAULTS.items():
        if not hasattr(args, k):
            setattr(args, k, v)
    _threads()
    start = time.monotonic()
    try:
        with limits(args.max_steps, args.timeout_seconds):
            payload, text = args.func(args)
    except ParseError as e:
        err.write(f"parse error: {e}\n")
        return EXIT_PARSE
    except BudgetExceeded as e:
        err.write(f"budget exceeded: {e}\n")
        return EXIT_BUDGET
    except _Failed as e:
        _emit(args, e.payload, e.text, out, time.monotonic() - start)
        return EXIT_FAILED
    except (PreconditionError, NotOnVariety, EmptyVariety, ValueError) as e:
        err.write(f"precondition violated: {e}\n")
        return EXIT_PRECONDITION
    _emit(args, payload, text, out, time.monotonic() - start)
    return EXIT_OK


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()

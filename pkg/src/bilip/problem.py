"""Problem files: a small line-oriented text format for ideals, maps, matrices and points.

    # comment
    vars x,y,z
    params t
    ideal:
    y^2 - x^3
    map: t; t^3+t^2; t^5
    map: x; y+x^2; z denom 1
    matrix: 2 3
    1 0 0
    0 1 0
    point: 0,0,0

A `map:` whose components only use parameters is a parametrization; one in
the `vars` ring is an algebraic map on X.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .groebner import Ideal
from .ideal_ops import Parametrization, implicitize
from .lipschitz import AlgebraicMap, LinearProjection
from .polyring import ParseError, Polynomial, Ring

@dataclass
class _MapSpec:
    texts: list
    denom: str | None
    line: int
    col: int


@dataclass
class ProblemFile:
    ring: Ring | None = None
    params: Ring | None = None
    ideal: Ideal | None = None
    parametrizations: list = field(default_factory=list)
    maps: list = field(default_factory=list)  # polynomial tuples in `ring`, with optional denominator
    matrix: LinearProjection | None = None
    point: tuple | None = None
    path: str = ""

    def source_ideal(self) -> Ideal:
        """X: the ideal block, else the closure of the first parametrization, else the whole space."""
        if self.ideal is not None:
            return self.ideal
        if self.parametrizations:
            return implicitize(self.parametrizations[0])
        if self.ring is not None:
            return Ideal(self.ring, [])
        raise ParseError("problem file defines no variety", 0)

    def algebraic_map(self, index: int = 0) -> AlgebraicMap:
        if len(self.maps) <= index:
            raise ParseError("problem file has no algebraic map", 0)
        comps, denom = self.maps[index]
        X = self.source_ideal()
        return AlgebraicMap(X, tuple(c.to_ring(X.ring) for c in comps),
                            denom.to_ring(X.ring) if denom is not None else None)

    def require_point(self) -> tuple:
        if self.point is not None:
            return self.point
        ring = self.source_ideal().ring
        return (Fraction(0),) * ring.nvars


def _names(text: str, line: int, col: int) -> list[str]:
    names = [v.strip() for v in text.split(",")]
    if not all(re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", v) for v in names):
        raise ParseError(f"bad variable list {text.strip()!r}", col, line)
    if len(set(names)) != len(names):
        raise ParseError(f"repeated variable in {text.strip()!r}", col, line)
    return names


def _poly(text: str, ring: Ring | None, line: int, col: int) -> Polynomial:
    if ring is None:
        raise ParseError("polynomial before any `vars`/`params` declaration", col, line)
    try:
        return ring.parse(text)
    except ParseError as e:
        raise ParseError(str(e).rsplit(" at ", 1)[0], col + e.pos, line) from None


def _rational(text: str, line: int, col: int) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"bad rational {text.strip()!r}", col, line) from None


def parse_problem_text(text: str, path: str = "<string>") -> ProblemFile:
    pf = ProblemFile(path=path)
    block = None
    ideal_lines: list = []
    has_ideal = False
    map_specs: list[_MapSpec] = []
    matrix_shape = None
    matrix_rows: list = []
    point_spec = None

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        stripped = line.strip()
        if not stripped:
            continue
        indent = len(line) - len(line.lstrip())
        head = stripped.split(None, 1)[0] if not stripped.startswith(("ideal:", "map:", "matrix:", "point:")) \
            else stripped.split(":", 1)[0] + ":"
        rest_col = indent + len(head)
        rest = stripped[len(head):]
        if head == "vars":
            pf.ring = Ring(_names(rest, lineno, rest_col))
            block = None
        elif head == "params":
            pf.params = Ring(_names(rest, lineno, rest_col))
            block = None
        elif head == "ideal:":
            has_ideal = True
            block = "ideal"
            if rest.strip():
                ideal_lines.append((rest, lineno, rest_col))
        elif head == "map:":
            block = None
            body, denom = rest, None
            if re.search(r"\bdenom\b", rest):
                body, denom = re.split(r"\bdenom\b", rest, maxsplit=1)
            map_specs.append(_MapSpec([t for t in body.split(";")], denom, lineno, rest_col))
        elif head == "matrix:":
            parts = rest.split()
            if len(parts) != 2 or not all(p.isdigit() for p in parts):
                raise ParseError("expected `matrix: k n`", rest_col, lineno)
            matrix_shape = (int(parts[0]), int(parts[1]))
            block = "matrix"
        elif head == "point:":
            point_spec = (rest, lineno, rest_col)
            block = None
        elif block == "ideal":
            ideal_lines.append((stripped, lineno, indent))
        elif block == "matrix":
            row = [_rational(x, lineno, indent) for x in stripped.replace(",", " ").split()]
            matrix_rows.append((row, lineno))
        else:
            raise ParseError(f"unexpected line {stripped!r}", indent, lineno)

    if has_ideal:
        ring = _require(pf.ring, "ideal:")
        pf.ideal = Ideal(ring, [_poly(t, ring, ln, c) for t, ln, c in ideal_lines])
    for spec in map_specs:
        texts = [t.strip() for t in spec.texts]
        if any(not t for t in texts):
            raise ParseError("empty map component", spec.col, spec.line)
        parsed = None
        if pf.params is not None:
            try:
                parsed = [pf.params.parse(t) for t in texts]
            except ParseError:
                if pf.ring is None:
                    raise
            if parsed is not None:
                if spec.denom is not None:
                    raise ParseError("parametrizations cannot have a denominator", spec.col, spec.line)
                targets = pf.ring.variables if pf.ring is not None and pf.ring.nvars == len(parsed) \
                    and not set(pf.ring.variables) & set(pf.params.variables) else ()
                pf.parametrizations.append(Parametrization(pf.params, tuple(parsed), tuple(targets)))
                continue
        comps = [_poly(t, pf.ring, spec.line, spec.col) for t in texts]
        denom = _poly(spec.denom.strip(), pf.ring, spec.line, spec.col) if spec.denom is not None else None
        pf.maps.append((tuple(comps), denom))
    if matrix_shape is not None:
        k, n = matrix_shape
        if len(matrix_rows) != k or any(len(r) != n for r, _ in matrix_rows):
            raise ParseError(f"matrix block must have {k} rows of {n} entries", 0,
                             matrix_rows[-1][1] if matrix_rows else None)
        try:
            pf.matrix = LinearProjection([r for r, _ in matrix_rows])
        except ValueError as e:
            raise ParseError(str(e), 0, matrix_rows[0][1]) from None
    if point_spec is not None:
        rest, ln, col = point_spec
        pf.point = tuple(_rational(x, ln, col) for x in rest.split(","))
    return pf


def _require(ring, what):
    if ring is None:
        raise ParseError(f"`{what}` needs a `vars` declaration", 0)
    return ring


def parse_problem_file(path: str | Path) -> ProblemFile:
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as e:
        raise ParseError(f"cannot read {path}: {e.strerror}", 0) from None
    return parse_problem_text(text, str(p))

"""Lattice documents in, report documents out.

A lattice document is one JSON object::

    {
      "schema": 1,
      "field": {"min_poly": ["1", "0", "1"],
                "embedding": ["-1/2", "1/2", "1/2", "3/2"]},
      "generators": [[["1"], ["0"]], [["0"], ["1"]], [["0"], ["0", "1"]]]
    }

``min_poly`` lists coefficients from the constant term up. ``embedding`` is
the rectangle [re_lo, re_hi] x [im_lo, im_hi] isolating the chosen root t.
Every field element is a list of power-basis coordinates (coefficients of
1, t, t^2, ...), shorter lists being padded with zeros. Rationals are
strings ``"p"`` or ``"p/q"``; JSON integers are accepted, floats are not,
and ``"decimal:0.25"`` opts in to an exact decimal.

Optional keys used by some commands: ``taus`` (list of elements),
``points`` (list of elements or null for the point at infinity) and
``witness`` ({"alpha": element, "tau": element}).
"""

from __future__ import annotations

import json
from typing import Any

import mpmath

from .errors import InvalidInput
from .exact.field import FieldElement, NumberField
from .exact.intervals import IntervalRect
from .exact.polynomial import RationalPolynomial
from .exact.rational import mpq, parse_rational

SCHEMA_VERSION = 1

__all__ = ["SCHEMA_VERSION", "DocumentError", "LatticeDocument", "parse_document", "load_document",
           "element_to_json", "element_from_json", "witness_to_json", "format_approx"]


class DocumentError(InvalidInput):
    """Input document problem, located by JSON path and, for syntax errors, line and column."""

    def __init__(self, message: str, path: str = "$", line: int | None = None,
                 column: int | None = None):
        where = f"line {line}, column {column}" if line is not None else path
        super().__init__(f"{where}: {message}")
        self.path = path
        self.line = line
        self.column = column


def _rational(value: Any, path: str) -> mpq:
    if isinstance(value, bool) or isinstance(value, float):
        raise DocumentError("floating-point numbers are not accepted; write \"p/q\"", path)
    if isinstance(value, int):
        return mpq(value)
    try:
        return parse_rational(value)
    except InvalidInput as exc:
        raise DocumentError(str(exc), path) from None


def _list(value: Any, path: str, length: int | None = None) -> list:
    if not isinstance(value, list):
        raise DocumentError("expected a list", path)
    if length is not None and len(value) != length:
        raise DocumentError(f"expected {length} entries, got {len(value)}", path)
    return value


def _element(field: NumberField, value: Any, path: str) -> FieldElement:
    if isinstance(value, dict):
        value, path = value.get("coords"), f"{path}.coords"
    coords = _list(value, path)
    if not coords:
        raise DocumentError("empty coordinate list", path)
    if len(coords) > field.degree:
        raise DocumentError(f"{len(coords)} coordinates for a field of degree {field.degree}", path)
    return field.element([_rational(c, f"{path}[{k}]") for k, c in enumerate(coords)])


class LatticeDocument:
    """Parsed document: the field, optional generators and optional extras."""

    def __init__(self, raw: dict, field: NumberField, generators, taus, points, witness):
        self.raw = raw
        self.field = field
        self.generators = generators
        self.taus = taus
        self.points = points
        self.witness = witness

    def require_generators(self):
        if self.generators is None:
            raise DocumentError("this command needs \"generators\"", "$.generators")
        return self.generators


def parse_document(raw: Any) -> LatticeDocument:
    if not isinstance(raw, dict):
        raise DocumentError("top level must be an object")
    if raw.get("schema") != SCHEMA_VERSION:
        raise DocumentError(f"unsupported or missing schema (expected {SCHEMA_VERSION})", "$.schema")
    fdoc = raw.get("field")
    if not isinstance(fdoc, dict):
        raise DocumentError("missing \"field\" object", "$.field")
    coeffs = [_rational(c, f"$.field.min_poly[{k}]")
              for k, c in enumerate(_list(fdoc.get("min_poly"), "$.field.min_poly"))]
    if len(coeffs) < 2 or coeffs[-1] == 0:
        raise DocumentError("min_poly needs degree >= 1 and a nonzero leading coefficient",
                            "$.field.min_poly")
    rect = [_rational(c, f"$.field.embedding[{k}]")
            for k, c in enumerate(_list(fdoc.get("embedding"), "$.field.embedding", 4))]
    if rect[0] > rect[1] or rect[2] > rect[3]:
        raise DocumentError("embedding must be [re_lo, re_hi, im_lo, im_hi]", "$.field.embedding")
    field = NumberField(RationalPolynomial(coeffs), IntervalRect(*rect))

    generators = None
    if "generators" in raw:
        gl = _list(raw["generators"], "$.generators", 3)
        generators = []
        for j, g in enumerate(gl):
            pair = _list(g, f"$.generators[{j}]", 2)
            generators.append(tuple(_element(field, z, f"$.generators[{j}][{c}]")
                                    for c, z in enumerate(pair)))
    taus = None
    if "taus" in raw:
        taus = [_element(field, t, f"$.taus[{k}]") for k, t in enumerate(_list(raw["taus"], "$.taus"))]
    points = None
    if "points" in raw:
        points = [None if p is None else _element(field, p, f"$.points[{k}]")
                  for k, p in enumerate(_list(raw["points"], "$.points"))]
    witness = None
    if "witness" in raw:
        w = raw["witness"]
        if not isinstance(w, dict) or "alpha" not in w or "tau" not in w:
            raise DocumentError("witness needs \"alpha\" and \"tau\"", "$.witness")
        witness = (_element(field, w["alpha"], "$.witness.alpha"),
                   _element(field, w["tau"], "$.witness.tau"))
    return LatticeDocument(raw, field, generators, taus, points, witness)


def load_document(text: str) -> LatticeDocument:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(exc.msg, line=exc.lineno, column=exc.colno) from None
    return parse_document(raw)


# --- output --------------------------------------------------------------

def format_approx(x: FieldElement, dps: int = 12) -> str:
    z = x.approx(dps)
    sign = "-" if z.imag < 0 else "+"
    return f"{mpmath.nstr(z.real, dps)} {sign} {mpmath.nstr(abs(z.imag), dps)}i"


def element_to_json(x: FieldElement) -> dict:
    """Exact coordinates plus two readable renderings (ignored when parsing back)."""
    text = str(x)[1:-1]
    return {"coords": [str(c) for c in x.coords], "text": text, "approx": format_approx(x)}


def element_from_json(field: NumberField, value: Any, path: str = "$") -> FieldElement:
    return _element(field, value, path)


def witness_to_json(w) -> list[str]:
    return [str(c) for c in w.as_tuple()]

"""JSON and text forms of fields, coefficients, jets and construction records.

Series document::

    {"field": {"kind": "cyclotomic", "n": 4}, "N": 2, "coeffs": [["0/1", "1/1"], ["0/1", "0/1"]]}

``coeffs[0]`` is a_1.  Rational coefficients are ``"p"`` or ``"p/q"``;
cyclotomic ones are coordinate arrays, lowest power of zeta first.
"""

from __future__ import annotations

import json

from .errors import DomainError, NotInGroupError, ParseError, SchemaError
from .exactfield import element_from_json, field_from_json
from .series import Jet, to_text


def jet_to_json(p: Jet) -> dict:
    return {"field": p.ctx.to_json(), "N": p.N, "coeffs": [a.to_json() for a in p.coeffs]}


def jet_from_json(obj, *, require_unit: bool = True) -> Jet:
    if not isinstance(obj, dict):
        raise SchemaError("series document must be a JSON object")
    for key in ("field", "N", "coeffs"):
        if key not in obj:
            raise SchemaError(f"series document lacks {key!r}")
    try:
        ctx = field_from_json(obj["field"])
    except (ParseError, DomainError) as exc:
        raise SchemaError(str(exc)) from None
    N, coeffs = obj["N"], obj["coeffs"]
    if not isinstance(N, int) or isinstance(N, bool) or N < 1:
        raise SchemaError(f"N must be a positive integer, got {N!r}")
    if not isinstance(coeffs, list) or len(coeffs) != N:
        got = len(coeffs) if isinstance(coeffs, list) else type(coeffs).__name__
        raise SchemaError(f"expected {N} coefficients, got {got}")
    values = []
    for k, c in enumerate(coeffs, 1):
        try:
            values.append(element_from_json(ctx, c))
        except ParseError as exc:
            raise SchemaError(f"coefficient a_{k}: {exc}") from None
    if require_unit and not values[0]:
        raise NotInGroupError("coefficient a_1 is zero: a_1 != 0 is required for membership in G")
    return Jet(ctx, values)


def parse_series(text: str) -> Jet:
    """Parse a series document; the result is a group element (a_1 != 0)."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed JSON: {exc}") from None
    return jet_from_json(obj)


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True)


def emit_series(p: Jet, format: str = "json") -> str:
    if format == "json":
        return dumps(jet_to_json(p))
    if format == "text":
        return to_text(p)
    raise ValueError(f"unknown format {format!r}")

"""Command-line front end.

Series arguments are file paths, ``-`` for standard input, or inline JSON.
Results go to standard output as JSON (sorted keys) or as text.

Exit codes: 0 success, 1 verification failed, 2 malformed input,
3 a_1 = 0, 4 internal assertion, 5 document does not fit the series
schema or its field, 6 operands from different fields or truncations,
7 other domain errors (for example a series of infinite order).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import construct, finiteorder
from .codec import dumps, jet_from_json, jet_to_json
from .errors import (
    ConsistencyError,
    ContextMismatchError,
    DomainError,
    NotInGroupError,
    ParseError,
    SchemaError,
)
from .exactfield import FieldContext, FieldElement, parse_field, primitive_root
from .series import Jet, compose, invert, is_identity_iterate, iterate, to_text, truncate

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_PARSE = 2
EXIT_NOT_IN_GROUP = 3
EXIT_INTERNAL = 4
EXIT_SCHEMA = 5
EXIT_CONTEXT = 6
EXIT_DOMAIN = 7


def _read_source(src: str) -> str:
    if src == "-":
        return sys.stdin.read()
    if src.lstrip().startswith("{"):
        return src
    try:
        return Path(src).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {src}: {exc.strerror}") from None


def _load_json(src: str):
    try:
        return json.loads(_read_source(src))
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed JSON in {src if len(src) < 40 else 'input'}: {exc}") from None


def _load_series(src: str, args) -> Jet:
    obj = _load_json(src)
    # a construction record carries its series under "series"
    if isinstance(obj, dict) and "series" in obj and "coeffs" not in obj:
        obj = obj["series"]
    f = jet_from_json(obj)
    if args.field is not None and parse_field(args.field) != f.ctx:
        raise ParseError(f"series field {f.ctx.to_json()} does not match --field {args.field}")
    if args.N is not None:
        if args.N > f.N:
            raise DomainError(f"--N {args.N} exceeds the series truncation N={f.N}")
        f = truncate(f, args.N)
    return f


def _split_top_level(text: str) -> list[str]:
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    if cur:
        parts.append("".join(cur))
    return [p.strip() for p in parts if p.strip()]


def parse_element(ctx: FieldContext, text: str) -> FieldElement:
    text = text.strip()
    if text.startswith("["):
        items = _split_top_level(text[1:-1]) if text.endswith("]") else None
        if items is None:
            raise ParseError(f"unterminated coordinate array {text!r}")
        return ctx.element([s.strip().strip('"') for s in items])
    return ctx.element(text)


def parse_assignments(ctx: FieldContext, text: str | None) -> dict[int, FieldElement]:
    """Parse ``k=v,k=v`` where v is ``p/q`` or a coordinate array ``[p/q,p/q]``."""
    out = {}
    if not text:
        return out
    for item in _split_top_level(text):
        if "=" not in item:
            raise ParseError(f"expected k=v, got {item!r}")
        k, v = item.split("=", 1)
        try:
            idx = int(k)
        except ValueError:
            raise ParseError(f"index must be an integer in {item!r}") from None
        out[idx] = parse_element(ctx, v)
    return out


def _require(value, flag: str):
    if value is None:
        raise ParseError(f"{flag} is required for this command")
    return value


def _spec_from_args(args) -> construct.FreeCoefficientSpec:
    ctx = parse_field(args.field or "rational")
    n = _require(args.order, "--order")
    N = _require(args.N, "--N")
    omega = parse_element(ctx, args.omega) if args.omega else primitive_root(ctx, n)
    free = parse_assignments(ctx, args.free)
    return construct.FreeCoefficientSpec.from_sparse(omega, n, N, free)


def _jsonable(obj):
    if isinstance(obj, Jet):
        return jet_to_json(obj)
    if isinstance(obj, FieldElement):
        return obj.to_json()
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if hasattr(obj, "to_json"):
        return obj.to_json()
    return obj


def _textual(obj, indent: str = "") -> str:
    if isinstance(obj, Jet):
        return to_text(obj)
    if isinstance(obj, FieldElement):
        return str(obj)
    if isinstance(obj, dict):
        lines = []
        for k, v in obj.items():
            if isinstance(v, dict):
                lines.append(f"{indent}{k}:")
                lines.append(_textual(v, indent + "  "))
            else:
                lines.append(f"{indent}{k}: {_textual(v)}")
        return "\n".join(lines)
    if obj is None:
        return "none"
    return str(obj)


def render(result, fmt: str) -> str:
    if fmt == "text":
        return _textual(result)
    return dumps(_jsonable(result))


def _record(rec: construct.ConstructionRecord) -> dict:
    return {"series": rec.series, "forced": rec.forced, "p_values": rec.p_values, "helper": rec.helper}


def run(args) -> tuple[int, object]:
    """Execute a parsed command; returns (exit code, result object)."""
    v = args.verb
    series = [_load_series(s, args) for s in args.inputs]
    if not series and v not in ("build", "build-existence", "growth"):
        series = [_load_series(args.input, args)]

    def one() -> Jet:
        if len(series) != 1:
            raise ParseError(f"{v} takes exactly one series, got {len(series)}")
        return series[0]

    if v == "compose":
        if len(series) != 2:
            raise ParseError(f"compose takes two series, got {len(series)}")
        return EXIT_OK, compose(series[0], series[1])
    if v == "invert":
        return EXIT_OK, invert(one())
    if v == "iterate":
        return EXIT_OK, iterate(one(), _require(args.count, "--count"))
    if v == "order":
        return EXIT_OK, {"order": finiteorder.compositional_order(one()).order}
    if v == "star":
        return EXIT_OK, finiteorder.star(one())
    if v == "linearize":
        conj, omega = finiteorder.linearize_finite(one())
        return EXIT_OK, {"conjugator": conj, "omega": omega}
    if v == "centralizer":
        n = _require(args.order, "--order")
        return EXIT_OK, {"in_centralizer": finiteorder.in_centralizer(one(), n)}
    if v == "complete-conjugator":
        f = one()
        prescribed = parse_assignments(f.ctx, _require(args.prescribed, "--prescribed"))
        return EXIT_OK, finiteorder.complete_conjugator(f, prescribed)
    if v == "build":
        return EXIT_OK, _record(construct.build_unique(_spec_from_args(args)))
    if v == "build-existence":
        spec = _spec_from_args(args)
        free_h = parse_assignments(spec.ctx, args.free_h)
        return EXIT_OK, _record(construct.build_existence(spec, free_h))
    if v == "forced":
        f = one()
        k = _require(args.index, "--index")
        a_k, p = construct.forced_coefficient(f, k, _require(args.order, "--order"))
        return EXIT_OK, {"index": k, "a_k": a_k, "p_value": p}
    if v == "schroder":
        return EXIT_OK, construct.schroder_linearize(one())
    if v == "normalize":
        g, c = construct.normal_form(one())
        return EXIT_OK, {"normal_form": g, "conjugator": c}
    if v == "stanley-check":
        return EXIT_OK, {"involution": construct.stanley_involution_check(one())}
    if v == "stanley-build":
        return EXIT_OK, construct.stanley_build(one())
    if v == "growth":
        if args.field not in (None, "rational"):
            raise DomainError("growth works over the rational field only")
        args.order = args.order or 2
        report = construct.growth_report(_spec_from_args(args))
        return EXIT_OK, report.to_json(args.bound)
    if v == "verify":
        n = _require(args.order, "--order")
        ok = is_identity_iterate(one(), n)
        return (EXIT_OK if ok else EXIT_VERIFY_FAILED), {"order": n, "identity_iterate": ok}
    raise ParseError(f"unknown command {v!r}")  # argparse prevents this


VERBS = {
    "compose": "f o g for two series",
    "invert": "compositional inverse",
    "iterate": "m-fold composite (--count m)",
    "order": "compositional order",
    "star": "averaged conjugator f* of a finite-order series",
    "linearize": "f* and omega with f* o f o inverse(f*) = omega z",
    "centralizer": "whether h commutes with omega z (--order n)",
    "complete-conjugator": "unique conjugator with prescribed g_{nj+1} (--prescribed)",
    "build": "order-n series from free coefficients (forced-coefficient route)",
    "build-existence": "order-n series via the conjugating helper h",
    "forced": "forced coefficient a_k from a prefix (--index k --order n)",
    "schroder": "linearizing conjugator for a non-torsion multiplier",
    "normalize": "normal form supported on exponents 1 mod n",
    "stanley-check": "whether f(-f(-z)) = z",
    "stanley-build": "f = gbar(-g(-z)) for g tangent to the identity",
    "growth": "|a_k|^(1/k) table for an order-two rational build",
    "verify": "exit 0 iff f^(n) = id (--order n)",
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="compseries", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="verb", required=True, metavar="command")
    for verb, help_text in VERBS.items():
        p = sub.add_parser(verb, help=help_text, description=help_text)
        p.add_argument("inputs", nargs="*", help="series: path, '-', or inline JSON")
        p.add_argument("--in", dest="input", default="-", help="series input when no positional is given")
        p.add_argument("--out", default="-")
        p.add_argument("--format", choices=("json", "text"), default="json")
        p.add_argument("--field", help="rational | cyclotomic:n")
        p.add_argument("--N", type=int)
        p.add_argument("--order", type=int)
        p.add_argument("--omega", help="multiplier for build commands (default: a primitive root)")
        p.add_argument("--free", help="free coefficients k=v,k=v (unlisted ones are 0)")
        p.add_argument("--free-h", dest="free_h", help="helper coefficients h_k for build-existence")
        p.add_argument("--prescribed", help="g_k values k=v at k = 1 mod n")
        p.add_argument("--count", type=int, help="iteration count")
        p.add_argument("--index", type=int, help="coefficient index k")
        p.add_argument("--bound", type=float, help="growth threshold")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        code, result = run(args)
    except SchemaError as exc:
        print(f"compseries: invalid series: {exc}", file=sys.stderr)
        return EXIT_SCHEMA
    except ParseError as exc:
        print(f"compseries: parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except NotInGroupError as exc:
        print(f"compseries: not a group element: {exc}", file=sys.stderr)
        return EXIT_NOT_IN_GROUP
    except ContextMismatchError as exc:
        print(f"compseries: operand mismatch: {exc}", file=sys.stderr)
        return EXIT_CONTEXT
    except (DomainError, ZeroDivisionError) as exc:
        print(f"compseries: domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except ConsistencyError as exc:
        print(f"compseries: internal assertion failed: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    text = render(result, args.format)
    if args.out == "-":
        print(text)
    else:
        Path(args.out).write_text(text + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())

"""Exact coefficient fields: the rationals and cyclotomic fields Q(zeta_n).

Rationals are ``gmpy2.mpq`` values (always reduced, positive denominator).
A cyclotomic number is stored densely as its coordinate vector in the power
basis 1, x, ..., x^(d-1) of Q[x]/(Phi_n), d = phi(n).

    >>> K = make_field("cyclotomic", 4)
    >>> z = K.zeta()
    >>> z * z == K.element(-1)
    True
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Sequence

import gmpy2
from gmpy2 import mpq

from .errors import ContextMismatchError, DomainError, ParseError

RATIONAL = "rational"
CYCLOTOMIC = "cyclotomic"

_ZERO = mpq(0)
_MPZ_ZERO = gmpy2.mpz(0)
_MPZ_ONE = gmpy2.mpz(1)
_ONE = mpq(1)


def to_rational(value) -> mpq:
    """Coerce an int, Fraction, mpq/mpz or ``"p/q"`` string to ``mpq``."""
    if isinstance(value, str):
        text = value.strip()
        try:
            if "/" in text:
                p, q = text.split("/")
                return mpq(int(p), int(q))
            return mpq(int(text))
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"not a rational number: {value!r}") from exc
    if isinstance(value, bool):
        raise TypeError("booleans are not field elements")
    if isinstance(value, Fraction):
        return mpq(value.numerator, value.denominator)
    if isinstance(value, (int, type(_ZERO), type(gmpy2.mpz(0)))):
        return mpq(value)
    raise TypeError(f"cannot interpret {type(value).__name__} as a rational")


def rational_text(q: mpq) -> str:
    """``"p"`` when the denominator is 1, else ``"p/q"``."""
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def _divisors(n: int) -> list[int]:
    small = [d for d in range(1, int(n**0.5) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


def totient(n: int) -> int:
    return sum(1 for k in range(1, n + 1) if gcd(k, n) == 1)


def _poly_mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_divexact(num: Sequence[int], den: Sequence[int]) -> list[int]:
    # den is monic; the remainder must vanish
    num = list(num)
    dq = len(den) - 1
    quot = [0] * (len(num) - dq)
    for i in range(len(quot) - 1, -1, -1):
        c = num[i + dq]
        quot[i] = c
        if c:
            for j, d in enumerate(den):
                num[i + j] -= c * d
    if any(num[:dq]):
        raise ArithmeticError("inexact polynomial division")
    return quot


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n, lowest degree first.

    Uses Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d.

    >>> cyclotomic_polynomial(6)
    (1, -1, 1)
    """
    if n < 1:
        raise ValueError("cyclotomic index must be >= 1")
    num = [-1] + [0] * (n - 1) + [1]
    den = [1]
    for d in _divisors(n)[:-1]:
        den = _poly_mul(den, cyclotomic_polynomial(d))
    return tuple(_poly_divexact(num, den))


class FieldContext:
    """Descriptor of a coefficient field; obtain instances via :func:`make_field`."""

    __slots__ = ("kind", "n", "phi", "degree", "_reduction", "_int_reduction", "zero", "one")

    def __init__(self, kind: str, n: int = 1):
        if kind == RATIONAL:
            n = 1
            phi: tuple[int, ...] = (0, 1)
        elif kind == CYCLOTOMIC:
            if not isinstance(n, int) or n < 1:
                raise DomainError(f"cyclotomic index must be a positive integer, got {n!r}")
            phi = cyclotomic_polynomial(n)
        else:
            raise DomainError(f"unknown field kind {kind!r}")
        self.kind = kind
        self.n = n
        self.phi = phi
        self.degree = len(phi) - 1
        self._reduction = self._reduction_table()
        self._int_reduction = [tuple(gmpy2.mpz(c) for c in row) for row in self._reduction]
        self.zero = FieldElement(self, (_ZERO,) * self.degree)
        self.one = FieldElement(self, (_ONE,) + (_ZERO,) * (self.degree - 1))

    def _reduction_table(self) -> list[tuple[mpq, ...]]:
        # row i holds x^(d+i) mod phi for i = 0 .. d-2
        d = self.degree
        rows = []
        cur = [mpq(-c) for c in self.phi[:d]]
        for _ in range(max(d - 1, 0)):
            rows.append(tuple(cur))
            top = cur[-1]
            cur = [_ZERO] + cur[:-1]
            if top:
                cur = [c - top * p for c, p in zip(cur, self.phi[:d])]
        return rows

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, FieldContext):
            return NotImplemented
        return self.kind == other.kind and self.n == other.n

    def __hash__(self):
        return hash((self.kind, self.n))

    def __repr__(self):
        if self.kind == RATIONAL:
            return "FieldContext('rational')"
        return f"FieldContext('cyclotomic', {self.n})"

    @property
    def is_rational(self) -> bool:
        return self.kind == RATIONAL

    def to_json(self) -> dict:
        if self.kind == RATIONAL:
            return {"kind": RATIONAL}
        return {"kind": CYCLOTOMIC, "n": self.n}

    def element(self, value) -> FieldElement:
        """Build an element from a scalar, a coordinate sequence or text."""
        if isinstance(value, FieldElement):
            if value.ctx != self:
                raise ContextMismatchError(f"element of {value.ctx!r} used in {self!r}")
            return value
        if isinstance(value, (list, tuple)):
            if len(value) != self.degree:
                raise ParseError(
                    f"expected {self.degree} coordinates for {self!r}, got {len(value)}"
                )
            return FieldElement(self, tuple(to_rational(v) for v in value))
        return FieldElement(self, (to_rational(value),) + (_ZERO,) * (self.degree - 1))

    def zeta(self) -> FieldElement:
        """The class of x: a primitive n-th root of unity (-1 for n = 2)."""
        if self.kind == RATIONAL:
            raise DomainError("the rational field has no distinguished root of unity")
        if self.degree == 1:
            return self.element(-self.phi[0])
        return FieldElement(self, (_ZERO, _ONE) + (_ZERO,) * (self.degree - 2))

    def _reduce(self, conv: list) -> tuple[mpq, ...]:
        d = self.degree
        out = conv[:d]
        for row, c in zip(self._reduction, conv[d:]):
            if c:
                for j in range(d):
                    out[j] += c * row[j]
        return tuple(out)


@lru_cache(maxsize=None)
def make_field(kind: str = RATIONAL, n: int = 1) -> FieldContext:
    """Cached constructor, so equal descriptors share one context object."""
    if kind == RATIONAL:
        n = 1
    return FieldContext(kind, n)


def field_from_json(obj) -> FieldContext:
    if not isinstance(obj, dict) or "kind" not in obj:
        raise ParseError(f"field descriptor must be an object with a 'kind', got {obj!r}")
    kind = obj["kind"]
    if kind == RATIONAL:
        return make_field(RATIONAL)
    if kind == CYCLOTOMIC:
        n = obj.get("n")
        if not isinstance(n, int) or isinstance(n, bool) or n < 1:
            raise ParseError(f"cyclotomic field needs a positive integer 'n', got {n!r}")
        return make_field(CYCLOTOMIC, n)
    raise ParseError(f"unknown field kind {kind!r}")


def parse_field(text: str) -> FieldContext:
    """Parse the command-line form ``rational`` or ``cyclotomic:n``."""
    text = text.strip()
    if text == RATIONAL:
        return make_field(RATIONAL)
    if text.startswith(CYCLOTOMIC + ":"):
        try:
            n = int(text.split(":", 1)[1])
        except ValueError as exc:
            raise ParseError(f"bad cyclotomic index in {text!r}") from exc
        if n < 1:
            raise ParseError(f"cyclotomic index must be >= 1 in {text!r}")
        return make_field(CYCLOTOMIC, n)
    raise ParseError(f"field must be 'rational' or 'cyclotomic:n', got {text!r}")


class FieldElement:
    """Immutable element of a :class:`FieldContext`."""

    __slots__ = ("ctx", "coords", "_scaled")

    def __init__(self, ctx: FieldContext, coords: tuple[mpq, ...]):
        self.ctx = ctx
        self.coords = coords
        self._scaled = None

    def scaled(self) -> tuple[tuple, object]:
        """Integer numerators over one positive common denominator (cached)."""
        s = self._scaled
        if s is None:
            den = _MPZ_ONE
            for c in self.coords:
                den = gmpy2.lcm(den, c.denominator)
            s = self._scaled = (tuple(c.numerator * (den // c.denominator) for c in self.coords), den)
        return s

    def _coerce(self, other) -> FieldElement:
        if isinstance(other, FieldElement):
            if other.ctx is not self.ctx and other.ctx != self.ctx:
                raise ContextMismatchError(f"cannot combine {self.ctx!r} with {other.ctx!r}")
            return other
        return self.ctx.element(other)

    def __add__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return FieldElement(self.ctx, tuple(x + y for x, y in zip(self.coords, other.coords)))

    __radd__ = __add__

    def __sub__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return FieldElement(self.ctx, tuple(x - y for x, y in zip(self.coords, other.coords)))

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return FieldElement(self.ctx, tuple(-x for x in self.coords))

    def __mul__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        a, b = self.coords, other.coords
        if len(a) == 1:
            return FieldElement(self.ctx, (a[0] * b[0],))
        conv = [_ZERO] * (2 * len(a) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        conv[i + j] += x * y
        return FieldElement(self.ctx, self.ctx._reduce(conv))

    __rmul__ = __mul__

    def __truediv__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.ctx.element(other) * self.inverse()

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        base = self
        if e < 0:
            base, e = self.inverse(), -e
        result = self.ctx.one
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def inverse(self) -> FieldElement:
        """Multiplicative inverse via extended Euclid against Phi_n."""
        if not self:
            raise ZeroDivisionError("inverse of zero field element")
        if len(self.coords) == 1:
            return FieldElement(self.ctx, (_ONE / self.coords[0],))
        u = _inverse_mod(list(self.coords), [mpq(c) for c in self.ctx.phi])
        d = self.ctx.degree
        return FieldElement(self.ctx, tuple(u + [_ZERO] * (d - len(u))))

    def __bool__(self):
        return any(self.coords)

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.ctx == other.ctx and self.coords == other.coords
        try:
            return self.coords == self.ctx.element(other).coords
        except (TypeError, ParseError):
            return NotImplemented

    def __hash__(self):
        if len(self.coords) == 1:
            return hash(self.coords[0])
        return hash((self.ctx, self.coords))

    def to_json(self) -> str | list[str]:
        """Rational text, or for cyclotomic fields a list of ``p/q`` strings."""
        if self.ctx.kind == RATIONAL:
            return rational_text(self.coords[0])
        return [f"{c.numerator}/{c.denominator}" for c in self.coords]

    def __str__(self):
        t = self.to_json()
        return t if isinstance(t, str) else "[" + ", ".join(t) + "]"

    def __repr__(self):
        return f"FieldElement({self.ctx!r}, {self})"

    def is_rational_scalar(self) -> bool:
        return not any(self.coords[1:])

    def __abs__(self):
        if self.ctx.kind != RATIONAL:
            raise DomainError("absolute value is only defined on the rational field")
        return FieldElement(self.ctx, (abs(self.coords[0]),))


def element_from_json(ctx: FieldContext, value) -> FieldElement:
    if ctx.kind == RATIONAL:
        if isinstance(value, bool) or not isinstance(value, (str, int)):
            raise ParseError(f"rational coefficient must be a string or integer, got {value!r}")
        return ctx.element(value)
    if isinstance(value, list):
        if len(value) != ctx.degree:
            raise ParseError(
                f"expected {ctx.degree} coordinates for cyclotomic field n={ctx.n}, "
                f"got {len(value)}"
            )
        if not all(isinstance(v, (str, int)) and not isinstance(v, bool) for v in value):
            raise ParseError(f"coordinates must be rational strings, got {value!r}")
        return ctx.element(value)
    if isinstance(value, (str, int)) and not isinstance(value, bool):
        return ctx.element(value)
    raise ParseError(f"cannot read cyclotomic coefficient {value!r}")


def dot(xs: Iterable[FieldElement], ys: Iterable[FieldElement], ctx: FieldContext) -> FieldElement:
    """Sum of products, reducing modulo Phi_n once at the end.

    Works on integer numerators over a running common denominator, so only
    one gcd is taken per term.
    """
    d = ctx.degree
    acc = [_MPZ_ZERO] * (2 * d - 1)
    acc_den = _MPZ_ONE
    for x, y in zip(xs, ys):
        xn, xd = x.scaled()
        if not any(xn):
            continue
        yn, yd = y.scaled()
        if not any(yn):
            continue
        if d == 1:
            t = [xn[0] * yn[0]]
        else:
            t = [_MPZ_ZERO] * (2 * d - 1)
            for i, a in enumerate(xn):
                if a:
                    for j, b in enumerate(yn):
                        if b:
                            t[i + j] += a * b
        t_den = xd * yd
        g = gmpy2.gcd(acc_den, t_den)
        up_acc, up_t = t_den // g, acc_den // g
        if up_acc == 1:
            acc = [a + c * up_t for a, c in zip(acc, t)]
        else:
            acc = [a * up_acc + c * up_t for a, c in zip(acc, t)]
            acc_den *= up_acc
    for row, c in zip(ctx._int_reduction, acc[d:]):
        if c:
            for j in range(d):
                acc[j] += c * row[j]
    return FieldElement(ctx, tuple(mpq(a, acc_den) for a in acc[:d]))


def _strip(p: list) -> list:
    while p and not p[-1]:
        p.pop()
    return p


def _inverse_mod(a: list, m: list) -> list:
    # extended Euclid over Q[x]; returns u with u*a = 1 mod m
    r0, r1 = _strip(list(m)), _strip(list(a))
    s0, s1 = [], [_ONE]
    while len(r1) > 1:
        q, r = _poly_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _poly_sub(s0, _poly_mul_q(q, s1))
    if not r1:
        raise ZeroDivisionError("element is not invertible")
    c = r1[0]
    return [x / c for x in s1]


def _poly_divmod(a: list, b: list) -> tuple[list, list]:
    a = list(a)
    lead = b[-1]
    q = [_ZERO] * max(len(a) - len(b) + 1, 1)
    for i in range(len(a) - len(b), -1, -1):
        c = a[i + len(b) - 1] / lead
        q[i] = c
        if c:
            for j, y in enumerate(b):
                a[i + j] -= c * y
    return _strip(q), _strip(a[: len(b) - 1])


def _poly_mul_q(a: list, b: list) -> list:
    if not a or not b:
        return []
    out = [_ZERO] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _strip(out)


def _poly_sub(a: list, b: list) -> list:
    n = max(len(a), len(b))
    a = a + [_ZERO] * (n - len(a))
    b = b + [_ZERO] * (n - len(b))
    return _strip([x - y for x, y in zip(a, b)])


def multiplicative_order(a: FieldElement) -> int | None:
    """Smallest m >= 1 with a**m == 1, or None when a is not a root of unity.

    Torsion in Q(zeta_n) lies among the 2n-th roots of unity, so only the
    divisors of 2n need testing (2 for the rationals).
    """
    if not a:
        raise DomainError("zero has no multiplicative order")
    bound = 2 * a.ctx.n
    if a ** bound != a.ctx.one:
        return None
    for m in _divisors(bound):
        if a ** m == a.ctx.one:
            return m
    return None  # unreachable


def is_primitive_root(a: FieldElement, n: int) -> bool:
    if not a:
        return False
    return multiplicative_order(a) == n


def primitive_root(ctx: FieldContext, n: int) -> FieldElement:
    """Some primitive n-th root of unity in ``ctx`` (deterministic choice)."""
    if ctx.kind == RATIONAL:
        if n == 1:
            return ctx.one
        if n == 2:
            return ctx.element(-1)
        raise DomainError(f"the rationals contain no primitive {n}-th root of unity")
    z = ctx.zeta()
    for j in range(2 * ctx.n):
        for cand in (z**j, -(z**j)):
            if multiplicative_order(cand) == n:
                return cand
    raise DomainError(f"Q(zeta_{ctx.n}) contains no primitive {n}-th root of unity")

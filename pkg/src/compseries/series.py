"""Truncated series with zero constant term and their composition algebra.

A :class:`Jet` stores a_1, ..., a_N of f(z) = a_1 z + ... + a_N z^N over a
:class:`~compseries.exactfield.FieldContext`.  Jets with a_1 != 0 represent
elements of the group G[[z]] modulo z^(N+1); composition, inversion and
iteration below are exact in that truncated group.

Indexing follows the mathematics: ``f[k]`` is a_k, with ``f[0]`` the
(always zero) constant term.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Sequence

from .errors import ContextMismatchError, DomainError, NotInGroupError
from .exactfield import FieldContext, FieldElement, dot


class Jet:
    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: FieldContext, coeffs: Iterable):
        coeffs = tuple(ctx.element(c) for c in coeffs)
        if not coeffs:
            raise DomainError("a jet needs truncation order N >= 1")
        self.ctx = ctx
        self.coeffs = coeffs

    @classmethod
    def _raw(cls, ctx: FieldContext, coeffs: tuple) -> Jet:
        obj = object.__new__(cls)
        obj.ctx = ctx
        obj.coeffs = coeffs
        return obj

    @classmethod
    def from_dict(cls, ctx: FieldContext, N: int, terms: dict) -> Jet:
        """Jet with a_k = terms[k] and zeros elsewhere."""
        coeffs = [ctx.zero] * N
        for k, v in terms.items():
            if not 1 <= k <= N:
                raise DomainError(f"exponent {k} outside 1..{N}")
            coeffs[k - 1] = ctx.element(v)
        return cls(ctx, coeffs)

    @property
    def N(self) -> int:
        return len(self.coeffs)

    @property
    def lead(self) -> FieldElement:
        return self.coeffs[0]

    @property
    def is_unit(self) -> bool:
        return bool(self.coeffs[0])

    def __getitem__(self, k: int) -> FieldElement:
        if k == 0:
            return self.ctx.zero
        if not 1 <= k <= self.N:
            raise IndexError(f"coefficient index {k} outside 0..{self.N}")
        return self.coeffs[k - 1]

    def __len__(self):
        return self.N

    def __eq__(self, other):
        if not isinstance(other, Jet):
            return NotImplemented
        return self.ctx == other.ctx and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.ctx, self.coeffs))

    def __repr__(self):
        return f"Jet({self.ctx!r}, N={self.N}, {to_text(self)!r})"

    def __add__(self, other: Jet) -> Jet:
        _check_pair(self, other)
        return Jet._raw(self.ctx, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: Jet) -> Jet:
        _check_pair(self, other)
        return Jet._raw(self.ctx, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> Jet:
        return Jet._raw(self.ctx, tuple(-a for a in self.coeffs))

    def scale(self, c) -> Jet:
        c = self.ctx.element(c)
        return Jet._raw(self.ctx, tuple(c * a for a in self.coeffs))

    def __call__(self, g: Jet) -> Jet:
        return compose(self, g)

    def support(self) -> list[int]:
        return [k for k, a in enumerate(self.coeffs, 1) if a]


def _check_pair(p: Jet, q: Jet) -> None:
    if p.ctx != q.ctx:
        raise ContextMismatchError(f"jets over different fields: {p.ctx!r} vs {q.ctx!r}")
    if p.N != q.N:
        raise ContextMismatchError(f"jets truncated at different orders: N={p.N} vs N={q.N}")


def require_unit(f: Jet) -> None:
    if not f.is_unit:
        raise NotInGroupError("linear coefficient a_1 is zero; not an element of G[[z]]")


def to_text(p: Jet) -> str:
    """Render as ``-1·z + 1·z^2``; zero terms are omitted."""
    terms = []
    for k, a in enumerate(p.coeffs, 1):
        if a:
            terms.append(f"{a}·z" if k == 1 else f"{a}·z^{k}")
    return " + ".join(terms) if terms else "0"


def linear(ctx: FieldContext, omega, N: int) -> Jet:
    """The jet of l_omega(z) = omega z."""
    omega = ctx.element(omega)
    if not omega:
        raise NotInGroupError("l_omega requires omega != 0")
    return Jet._raw(ctx, (omega,) + (ctx.zero,) * (N - 1))


def identity(ctx: FieldContext, N: int) -> Jet:
    return linear(ctx, ctx.one, N)


def _series_mul(p: Sequence, q: Sequence, length: int, ctx: FieldContext) -> list:
    # full coefficient lists (index = exponent), truncated to `length` terms
    out = []
    for t in range(length):
        lo = max(0, t - len(q) + 1)
        hi = min(t, len(p) - 1)
        if lo > hi:
            out.append(ctx.zero)
        else:
            out.append(dot(p[lo : hi + 1], q[t - hi : t - lo + 1][::-1], ctx))
    return out


def multiply(p: Jet, q: Jet) -> Jet:
    """Cauchy product truncated at z^N."""
    _check_pair(p, q)
    ctx, N = p.ctx, p.N
    full = _series_mul([ctx.zero, *p.coeffs], [ctx.zero, *q.coeffs], N + 1, ctx)
    return Jet._raw(ctx, tuple(full[1:]))


def compose(f: Jet, g: Jet) -> Jet:
    """f(g(z)) mod z^(N+1).

    Horner's scheme r_k = a_k + g r_{k+1}, keeping r_k only modulo
    z^(N-k+1) since it is later multiplied by a series of valuation k.
    """
    _check_pair(f, g)
    ctx, N = f.ctx, f.N
    a, b = f.coeffs, g.coeffs
    r = [a[N - 1]]
    for k in range(N - 1, -1, -1):
        m = N - k + 1
        nxt = [a[k - 1] if k else ctx.zero]
        for t in range(1, m):
            nxt.append(dot(b[:t], r[t - 1 :: -1], ctx))
        r = nxt
    return Jet._raw(ctx, tuple(r[1:]))


def power_table(f: Jet) -> list[list]:
    """``table[j][t]`` is the z^t coefficient of f(z)^j, for 1 <= j <= t <= N."""
    ctx, N = f.ctx, f.N
    base = [ctx.zero, *f.coeffs]
    table: list[list] = [[], base]
    for j in range(2, N + 1):
        prev = table[j - 1]
        row = [ctx.zero] * (N + 1)
        for t in range(j, N + 1):
            # prev[s] vanishes for s < j - 1
            row[t] = dot(base[1 : t - j + 2], prev[t - 1 : j - 2 : -1], ctx)
        table.append(row)
    return table


def invert(f: Jet) -> Jet:
    """Compositional inverse mod z^(N+1).

    Writing fbar = sum b_j z^j, the z^k coefficient of fbar(f(z)) = z reads
    sum_{j<k} b_j [f^j]_k + b_k a_1^k = 0, solved for b_k in turn.
    """
    require_unit(f)
    ctx, N = f.ctx, f.N
    table = power_table(f)
    b = [ctx.zero, f.lead.inverse()]
    for k in range(2, N + 1):
        s = dot(b[1:k], [table[j][k] for j in range(1, k)], ctx)
        b.append(-s / table[k][k])
    return Jet._raw(ctx, tuple(b[1:]))


def iterates(f: Jet, m: int) -> Iterator[Jet]:
    """Yield f^(1), ..., f^(m)."""
    cur = f
    for j in range(1, m + 1):
        if j > 1:
            cur = compose(f, cur)
        yield cur


def iterate(f: Jet, m: int) -> Jet:
    """The m-fold composite f^(m), with f^(0) = id."""
    if m < 0:
        raise DomainError("iteration count must be non-negative")
    require_unit(f)
    result = identity(f.ctx, f.N)
    for result in iterates(f, m):
        pass
    return result


def equals(p: Jet, q: Jet) -> bool:
    _check_pair(p, q)
    return p.coeffs == q.coeffs


def truncate(p: Jet, M: int) -> Jet:
    if not 1 <= M <= p.N:
        raise DomainError(f"cannot truncate a jet of order {p.N} to {M}")
    return Jet._raw(p.ctx, p.coeffs[:M])


def is_identity_iterate(f: Jet, m: int) -> bool:
    """True iff f^(m) = id mod z^(N+1)."""
    if m < 1:
        raise DomainError("m must be >= 1")
    return iterate(f, m) == identity(f.ctx, f.N)

"""Finite-order elements: order detection, the averaged conjugator f*, and conjugators.

For f of compositional order n with multiplier omega,

    f* = (1/n) * sum_{j=1}^{n} omega^(n-j) f^(j)

satisfies f* o f = l_omega o f*, so f* linearizes f.  Every other
linearizing conjugator is h o f* with h commuting with l_omega, i.e. h
supported on exponents congruent to 1 mod n.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .errors import ConsistencyError, DomainError, NotFiniteOrderError
from .exactfield import FieldElement, dot, multiplicative_order
from .series import (
    Jet,
    compose,
    identity,
    invert,
    is_identity_iterate,
    iterates,
    linear,
    power_table,
    require_unit,
    truncate,
)

INFINITE = "infinite"
INFINITE_UP_TO_TRUNCATION = "infinite-up-to-truncation"


@dataclass(frozen=True)
class OrderResult:
    """Compositional order of a jet.

    ``order`` is a positive int, or one of :data:`INFINITE` (multiplier is not
    a root of unity) and :data:`INFINITE_UP_TO_TRUNCATION` (multiplier has
    order ``witness`` but f^(witness) differs from id in the retained terms).
    """

    order: int | str
    witness: int | None

    @property
    def is_finite(self) -> bool:
        return isinstance(self.order, int)

    def to_json(self) -> dict:
        return {"order": self.order, "witness": self.witness}


def compositional_order(f: Jet) -> OrderResult:
    require_unit(f)
    m = multiplicative_order(f.lead)
    if m is None:
        return OrderResult(INFINITE, None)
    if is_identity_iterate(f, m):
        return OrderResult(m, m)
    return OrderResult(INFINITE_UP_TO_TRUNCATION, m)


def _finite_order(f: Jet) -> int:
    res = compositional_order(f)
    if not res.is_finite:
        raise NotFiniteOrderError(
            f"series does not have finite order at N={f.N} (order: {res.order})"
        )
    return res.order


def star(f: Jet) -> Jet:
    """The averaged conjugator f*; its linear coefficient is 1."""
    require_unit(f)
    n = multiplicative_order(f.lead)
    powers = list(iterates(f, n)) if n is not None else []
    if not powers or powers[-1] != identity(f.ctx, f.N):
        _finite_order(f)  # raises with the precise order label
    omega = f.lead
    total = None
    for j, fj in enumerate(powers, 1):
        term = fj.scale(omega ** (n - j))
        total = term if total is None else total + term
    return total.scale(f.ctx.one / n)


def linearize_finite(f: Jet) -> tuple[Jet, FieldElement]:
    """Return (f*, omega) with f* o f o inverse(f*) = l_omega."""
    s = star(f)
    omega = f.lead
    if compose(s, f) != compose(linear(f.ctx, omega, f.N), s):
        raise ConsistencyError("f* o f != l_omega o f* for a finite-order input")
    return s, omega


def in_centralizer(h: Jet, n: int) -> bool:
    """Whether h commutes with l_omega for omega primitive of order n."""
    if n < 1:
        raise DomainError("n must be >= 1")
    return all(not a for k, a in enumerate(h.coeffs, 1) if (k - 1) % n)


@dataclass(frozen=True)
class ConjugatorFamily:
    """All g with g o f o gbar = l_omega, as g = h o base with h in the centralizer."""

    base: Jet
    modulus: int

    def contains(self, g: Jet) -> bool:
        require_unit(g)
        return in_centralizer(compose(g, invert(self.base)), self.modulus)

    def member(self, h: Jet) -> Jet:
        """The conjugator h o base; h must commute with l_omega."""
        if not in_centralizer(h, self.modulus):
            raise DomainError(f"h has terms off the exponents 1 mod {self.modulus}")
        require_unit(h)
        return compose(h, self.base)


def conjugators(f: Jet) -> ConjugatorFamily:
    n = _finite_order(f)
    return ConjugatorFamily(star(f), n)


def complete_conjugator(f: Jet, prescribed: Mapping[int, object], N: int | None = None) -> Jet:
    """Unique linearizing conjugator g with g_k fixed at every k = 1 mod n.

    Solves g = h o f* one coefficient at a time: at k = 1 mod n the prescribed
    g_k determines h_k; elsewhere h_k = 0 and g_k is read off.
    """
    if N is None:
        N = f.N
    if N > f.N:
        raise DomainError(f"requested N={N} exceeds the input truncation N={f.N}")
    f = truncate(f, N)
    n = _finite_order(f)
    ctx = f.ctx
    wanted = {k for k in range(1, N + 1) if (k - 1) % n == 0}
    extra = sorted(set(prescribed) - wanted)
    if extra:
        raise DomainError(f"index {extra[0]} is not congruent to 1 mod {n}; it cannot be prescribed")
    missing = sorted(wanted - set(prescribed))
    if missing:
        raise DomainError(f"missing prescribed value for g_{missing[0]}")
    values = {k: ctx.element(v) for k, v in prescribed.items()}
    if not values[1]:
        raise DomainError("g_1 must be nonzero")

    table = power_table(star(f))
    h = [ctx.zero]
    g = []
    for k in range(1, N + 1):
        known = dot(h[1:k], [table[j][k] for j in range(1, k)], ctx)
        if k in wanted:
            # [f*^k]_k = 1
            h.append(values[k] - known)
            g.append(values[k])
        else:
            h.append(ctx.zero)
            g.append(known)
    return Jet(ctx, g)


def conjugates_to_linear(g: Jet, f: Jet) -> bool:
    """Direct check that g o f o gbar = l_{a_1(f)}."""
    return compose(compose(g, f), invert(g)) == linear(f.ctx, f.lead, f.N)


__all__ = [
    "INFINITE",
    "INFINITE_UP_TO_TRUNCATION",
    "ConjugatorFamily",
    "OrderResult",
    "complete_conjugator",
    "compositional_order",
    "conjugates_to_linear",
    "conjugators",
    "in_centralizer",
    "linearize_finite",
    "star",
]

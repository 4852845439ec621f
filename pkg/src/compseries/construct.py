"""Building series of prescribed finite order, plus conjugation normal forms.

Given a primitive n-th root omega and free coefficients a_k for k != 1 mod n,
there is exactly one way to fill in the a_k with k = 1 mod n so that
f = omega z + a_2 z^2 + ... has order n.  Two independent routes are
provided:

* :func:`build_unique` reads each forced coefficient off the n-fold iterate.
  The z^k coefficient of f^(n) is affine in a_k with slope n omega^(n-1)
  when k = 1 mod n, so a_k = -(omega / n) P where P is that coefficient
  computed with a_k = 0.
* :func:`build_existence` grows a conjugator h with h o f = l_omega o h,
  choosing h_k or a_k at each step.

No multivariate polynomial is ever expanded: every "polynomial in the earlier
coefficients" is evaluated by zeroing the unknown and reading a coefficient.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Mapping

from .errors import ConsistencyError, DomainError
from .exactfield import FieldElement, RATIONAL, is_primitive_root, multiplicative_order
from .series import Jet, compose, identity, invert, is_identity_iterate, iterate, linear, require_unit, truncate


def _free_indices(n: int, N: int) -> list[int]:
    return [k for k in range(2, N + 1) if (k - 1) % n]


@dataclass(frozen=True)
class FreeCoefficientSpec:
    n: int
    omega: FieldElement
    N: int
    free: Mapping[int, FieldElement]

    def __post_init__(self):
        if self.N < 1:
            raise DomainError("N must be >= 1")
        if not is_primitive_root(self.omega, self.n):
            raise DomainError(f"omega = {self.omega} is not a primitive {self.n}-th root of unity")
        expected = set(_free_indices(self.n, self.N))
        got = set(self.free)
        if got != expected:
            bad = sorted(got ^ expected)[0]
            raise DomainError(
                f"free coefficients must cover exactly the indices k <= {self.N} with "
                f"k != 1 mod {self.n}; index {bad} is "
                + ("missing" if bad in expected else "not free")
            )
        ctx = self.omega.ctx
        object.__setattr__(self, "free", {k: ctx.element(v) for k, v in sorted(self.free.items())})

    @classmethod
    def from_sparse(cls, omega: FieldElement, n: int, N: int, free: Mapping[int, object] = None):
        """Unspecified free indices default to zero."""
        free = dict(free or {})
        ctx = omega.ctx
        for k in free:
            if not 2 <= k <= N or (k - 1) % n == 0:
                raise DomainError(f"index {k} is not a free index for n={n}, N={N}")
        full = {k: ctx.element(free.get(k, 0)) for k in _free_indices(n, N)}
        return cls(n, omega, N, full)

    @property
    def ctx(self):
        return self.omega.ctx


@dataclass(frozen=True)
class ConstructionRecord:
    series: Jet
    forced: dict[int, FieldElement]
    p_values: dict[int, FieldElement]
    helper: Jet | None = None

    def to_json(self) -> dict:
        from .codec import jet_to_json

        return {
            "series": jet_to_json(self.series),
            "forced": {str(k): v.to_json() for k, v in self.forced.items()},
            "p_values": {str(k): v.to_json() for k, v in self.p_values.items()},
            "helper": None if self.helper is None else jet_to_json(self.helper),
        }


def _p_value(prefix: Jet, k: int, n: int) -> FieldElement:
    # z^k coefficient of f^(n) with a_k = 0
    ctx = prefix.ctx
    coeffs = list(prefix.coeffs[: k - 1]) + [ctx.zero]
    return iterate(Jet(ctx, coeffs), n)[k]


def forced_coefficient(prefix: Jet, k: int, n: int) -> tuple[FieldElement, FieldElement]:
    """The forced value of a_k (k = 1 mod n) and the evaluated P_k^(n).

    Only a_1, ..., a_{k-1} of ``prefix`` are read.
    """
    require_unit(prefix)
    if k < 2 or (k - 1) % n:
        raise DomainError(f"index {k} is not a forced index (need k > 1, k = 1 mod {n})")
    if prefix.N < k - 1:
        raise DomainError(f"prefix has only {prefix.N} coefficients; {k - 1} are needed")
    omega = prefix.lead
    if not is_primitive_root(omega, n):
        raise DomainError(f"a_1 = {omega} is not a primitive {n}-th root of unity")
    p = _p_value(prefix, k, n)
    return -(omega / n) * p, p


def build_unique(spec: FreeCoefficientSpec) -> ConstructionRecord:
    """The order-n series with the given free coefficients, via forced_coefficient."""
    ctx, n, N = spec.ctx, spec.n, spec.N
    coeffs = [spec.omega]
    forced, p_values = {}, {}
    for k in range(2, N + 1):
        if (k - 1) % n:
            coeffs.append(spec.free[k])
        else:
            a_k, p = forced_coefficient(Jet(ctx, coeffs), k, n)
            coeffs.append(a_k)
            forced[k], p_values[k] = a_k, p
    series = Jet(ctx, coeffs)
    if not is_identity_iterate(series, n):
        raise ConsistencyError(f"constructed series fails f^({n}) = id at N={N}")
    return ConstructionRecord(series, forced, p_values, None)


def build_existence(spec: FreeCoefficientSpec, free_h: Mapping[int, object] | None = None) -> ConstructionRecord:
    """The same series, built together with a helper h satisfying h o f = l_omega o h.

    At k != 1 mod n the equation fixes h_k; at k = 1 mod n it fixes a_k and
    h_k is free (``free_h``, default 0).
    """
    ctx, n, N, omega = spec.ctx, spec.n, spec.N, spec.omega
    free_h = {k: ctx.element(v) for k, v in (free_h or {}).items()}
    for k in free_h:
        if not 2 <= k <= N or (k - 1) % n:
            raise DomainError(f"h_{k} is not freely choosable (need 1 < k <= N, k = 1 mod {n})")
    a = [omega]
    h = [ctx.one]
    forced = {}
    for k in range(2, N + 1):
        f_k = Jet(ctx, a + [ctx.zero])
        h_k = Jet(ctx, h + [ctx.zero])
        q = compose(h_k, f_k)[k]
        if (k - 1) % n:
            a.append(spec.free[k])
            h.append((a[-1] + q) / (omega - omega**k))
        else:
            a.append(-q)
            h.append(free_h.get(k, ctx.zero))
            forced[k] = a[-1]
    series, helper = Jet(ctx, a), Jet(ctx, h)
    if compose(compose(invert(helper), linear(ctx, omega, N)), helper) != series:
        raise ConsistencyError("hbar o l_omega o h differs from the constructed series")
    p_values = {}
    for k, a_k in forced.items():
        p = _p_value(series, k, n)
        if a_k != -(omega / n) * p:
            raise ConsistencyError(f"forced a_{k} disagrees with the iterate formula")
        p_values[k] = p
    return ConstructionRecord(series, forced, p_values, helper)


def _conjugation_sweep(f: Jet, target_keeps: Callable[[int], bool]) -> tuple[Jet, Jet]:
    """Find (g, c) with c o f = g o c, c_1 = 1, g_1 = a_1.

    For each k >= 2 either the conjugator absorbs the z^k term (g_k = 0,
    needs omega != omega^k) or, where ``target_keeps(k)``, c_k = 0 and the
    residue stays in g.
    """
    ctx, N, omega = f.ctx, f.N, f.lead
    c = [ctx.one]
    g = [omega]
    for k in range(2, N + 1):
        fk = truncate(f, k)
        ck = Jet(ctx, c + [ctx.zero])
        gk = Jet(ctx, g + [ctx.zero])
        residual = compose(ck, fk)[k] - compose(gk, ck)[k]
        if target_keeps(k):
            c.append(ctx.zero)
            g.append(residual)
        else:
            c.append(residual / (omega - omega**k))
            g.append(ctx.zero)
    conj, normal = Jet(ctx, c), Jet(ctx, g)
    if compose(conj, f) != compose(normal, conj):
        raise ConsistencyError("conjugation sweep failed to satisfy c o f = g o c")
    return normal, conj


def schroder_linearize(f: Jet) -> Jet:
    """h with h_1 = 1 and h o f o hbar = l_{a_1}, for a_1 not a root of unity."""
    require_unit(f)
    if multiplicative_order(f.lead) is not None:
        raise DomainError(
            f"a_1 = {f.lead} is a root of unity; use linearize_finite or normal_form"
        )
    _, h = _conjugation_sweep(f, lambda k: False)
    return h


def normal_form(f: Jet) -> tuple[Jet, Jet]:
    """(g, c) with g = c o f o cbar supported on exponents 1 mod n, n = order(a_1)."""
    require_unit(f)
    n = multiplicative_order(f.lead)
    if n is None:
        raise DomainError(f"a_1 = {f.lead} is not a root of unity; use schroder_linearize")
    return _conjugation_sweep(f, lambda k: (k - 1) % n == 0)


def stanley_involution_check(f: Jet) -> bool:
    """Whether f(-f(-z)) = z."""
    require_unit(f)
    neg = linear(f.ctx, -1, f.N)
    return compose(f, compose(neg, compose(f, neg))) == identity(f.ctx, f.N)


def stanley_build(g: Jet) -> Jet:
    """f(z) = gbar(-g(-z)) for g tangent to the identity."""
    if g.lead != g.ctx.one:
        raise DomainError("stanley_build needs g_1 = 1")
    neg = linear(g.ctx, -1, g.N)
    return compose(invert(g), compose(neg, compose(g, neg)))


@dataclass
class GrowthReport:
    record: ConstructionRecord
    roots: dict[int, float] = field(default_factory=dict)

    @property
    def max_root(self) -> float:
        return max(self.roots.values(), default=0.0)

    def exceeds(self, bound: float) -> int | None:
        """First index whose root |a_k|^(1/k) exceeds ``bound``."""
        for k, r in self.roots.items():
            if r > bound:
                return k
        return None

    def to_json(self, bound: float | None = None) -> dict:
        out = {
            "roots": {str(k): r for k, r in self.roots.items()},
            "max_root": self.max_root,
            "record": self.record.to_json(),
        }
        if bound is not None:
            first = self.exceeds(bound)
            out["bound"] = bound
            out["exceeds_bound"] = first is not None
            out["first_exceeding_index"] = first
        return out


def _kth_root_magnitude(q, k: int) -> float:
    if not q:
        return 0.0
    num, den = abs(int(q.numerator)), int(q.denominator)
    return math.exp((math.log(num) - math.log(den)) / k)


def growth_report(spec: FreeCoefficientSpec) -> GrowthReport:
    """Build an order-two rational series and tabulate |a_k|^(1/k).

    Floats appear only in the report; the construction itself is exact.
    """
    if spec.ctx.kind != RATIONAL or spec.n != 2:
        raise DomainError("growth_report works over the rationals with n = 2, omega = -1")
    record = build_unique(spec)
    roots = {k: _kth_root_magnitude(a.coords[0], k) for k, a in enumerate(record.series.coeffs, 1)}
    return GrowthReport(record, roots)


__all__ = [
    "ConstructionRecord",
    "FreeCoefficientSpec",
    "GrowthReport",
    "build_existence",
    "build_unique",
    "forced_coefficient",
    "growth_report",
    "normal_form",
    "schroder_linearize",
    "stanley_build",
    "stanley_involution_check",
]

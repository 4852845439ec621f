"""Random generators and brute-force oracles shared by the test modules."""

from __future__ import annotations

import random
from fractions import Fraction
from math import gcd

from hypothesis import strategies as st

from compseries.exactfield import make_field
from compseries.series import Jet

QQ = make_field("rational")


def cyc(n):
    return make_field("cyclotomic", n)


def rand_rational(rng: random.Random, size: int = 4, den: int = 3) -> Fraction:
    return Fraction(rng.randint(-size, size), rng.randint(1, den))


def rand_element(ctx, rng: random.Random, size: int = 4, den: int = 3, nonzero: bool = False):
    while True:
        x = ctx.element([rand_rational(rng, size, den) for _ in range(ctx.degree)])
        if x or not nonzero:
            return x


def rand_jet(ctx, N, rng: random.Random, lead=None, size: int = 3, den: int = 2) -> Jet:
    a1 = ctx.element(lead) if lead is not None else rand_element(ctx, rng, size, den, nonzero=True)
    return Jet(ctx, [a1] + [rand_element(ctx, rng, size, den) for _ in range(N - 1)])


def random_primitive_root(ctx, rng: random.Random):
    n = ctx.n
    j = rng.choice([j for j in range(1, n + 1) if gcd(j, n) == 1])
    return ctx.zeta() ** j


# brute-force oracles, deliberately independent of the library kernels


def naive_compose(f: Jet, g: Jet) -> Jet:
    """sum_k a_k g^k with powers from schoolbook products of full lists."""
    ctx, N = f.ctx, f.N
    gl = [ctx.zero] + list(g.coeffs)
    power = [ctx.one] + [ctx.zero] * N
    total = [ctx.zero] * (N + 1)
    for k in range(1, N + 1):
        nxt = [ctx.zero] * (N + 1)
        for i in range(N + 1):
            if power[i]:
                for j in range(1, N + 1 - i):
                    nxt[i + j] = nxt[i + j] + power[i] * gl[j]
        power = nxt
        total = [t + f[k] * p for t, p in zip(total, power)]
    return Jet(ctx, total[1:])


def naive_iterate(f: Jet, m: int) -> Jet:
    cur = Jet(f.ctx, [f.ctx.one] + [f.ctx.zero] * (f.N - 1))
    for _ in range(m):
        cur = naive_compose(f, cur)
    return cur


# hypothesis strategies

small_fracs = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 4))
contexts = st.sampled_from([QQ, cyc(3), cyc(4), cyc(5), cyc(8), cyc(12)])


@st.composite
def elements(draw, ctx=None):
    ctx = ctx or draw(contexts)
    return ctx.element([draw(small_fracs) for _ in range(ctx.degree)])


@st.composite
def jets(draw, ctx=None, N=None, unit=True, max_N=6):
    ctx = ctx or draw(contexts)
    N = N or draw(st.integers(1, max_N))
    coeffs = [draw(elements(ctx)) for _ in range(N)]
    if unit and not coeffs[0]:
        coeffs[0] = ctx.one
    return Jet(ctx, coeffs)

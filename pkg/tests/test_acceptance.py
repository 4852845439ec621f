"""Exit criteria: exact (zero tolerance) property suites with fixed seeds.

Each test appends one PASS/FAIL line to the acceptance summary printed at the
end of the pytest run.
"""

import json
import random
import time
from contextlib import contextmanager
from fractions import Fraction

import pytest

from compseries.cli import main
from compseries.codec import emit_series, parse_series
from compseries.construct import (
    FreeCoefficientSpec,
    build_existence,
    build_unique,
    normal_form,
    schroder_linearize,
    stanley_build,
    stanley_involution_check,
)
from compseries.exactfield import multiplicative_order
from compseries.finiteorder import compositional_order, in_centralizer, star
from compseries.series import Jet, compose, identity, invert, is_identity_iterate, iterate, linear
from helpers import QQ, cyc, rand_element, rand_jet, random_primitive_root


@contextmanager
def criterion(log, number, title, budget=None):
    start = time.perf_counter()
    try:
        yield
    except BaseException:
        log.append(f"FAIL  {number}. {title}")
        raise
    elapsed = time.perf_counter() - start
    over = budget is not None and elapsed > budget
    status = "FAIL" if over else "PASS"
    limit = f" (budget {budget:.0f}s)" if budget else ""
    log.append(f"{status}  {number}. {title} [{elapsed:.1f}s{limit}]")
    assert not over, f"criterion {number} took {elapsed:.1f}s, budget {budget}s"


def conjugate_of_linear(ctx, omega, N, rng):
    h = rand_jet(ctx, N, rng)
    return compose(compose(invert(h), linear(ctx, omega, N)), h)


def test_c1_group_law(acceptance_log):
    rng = random.Random(1)
    N = 16
    with criterion(acceptance_log, 1, "group law mod z^17 over Q and Q(zeta_4), 200 triples each", budget=30):
        for ctx in (QQ, cyc(4)):
            e = identity(ctx, N)
            for _ in range(200):
                f, g, h = (rand_jet(ctx, N, rng, size=2, den=1) for _ in range(3))
                assert compose(compose(f, g), h) == compose(f, compose(g, h))
                assert compose(f, e) == f and compose(e, f) == f
                fbar = invert(f)
                assert compose(f, fbar) == e and compose(fbar, f) == e


def test_c2_composition_and_iterate_laws(acceptance_log):
    rng = random.Random(2)
    with criterion(acceptance_log, 2, "low-order composition closed forms and the m*a_k iterate law, 100 instances"):
        for i in range(100):
            ctx = QQ if i % 2 else cyc(3)
            f, g = rand_jet(ctx, 3, rng), rand_jet(ctx, 3, rng)
            a1, a2, a3 = f.coeffs
            b1, b2, b3 = g.coeffs
            fg = compose(f, g)
            assert fg[1] == a1 * b1
            assert fg[2] == a1 * b2 + a2 * b1 * b1
            assert fg[3] == a1 * b3 + 2 * a2 * b1 * b2 + a3 * b1 * b1 * b1

            k = rng.randint(2, 6)
            ak = rand_element(ctx, rng, nonzero=True)
            tail = rand_jet(ctx, k + 2, rng)
            p = Jet(ctx, [ctx.one] + [ctx.zero] * (k - 2) + [ak] + list(tail.coeffs[k:]))
            m = rng.randint(1, 10)
            pm = iterate(p, m)
            assert pm[k] == m * ak
            assert all(not pm[j] for j in range(2, k))


def test_c3_finite_order_linearization(acceptance_log):
    N = 24
    with criterion(acceptance_log, 3, "f* conjugates f to l_omega, n in {2,3,4,6,8,12}, 20 conjugates each at N=24", budget=60):
        for n in (2, 3, 4, 6, 8, 12):
            rng = random.Random(300 + n)
            K = cyc(n)
            for _ in range(20):
                w = random_primitive_root(K, rng)
                f = conjugate_of_linear(K, w, N, rng)
                assert compositional_order(f).order == n
                s = star(f)
                lw = linear(K, w, N)
                assert compose(s, f) == compose(lw, s)
                assert compose(compose(s, f), invert(s)) == lw


def test_c4_centralizer(acceptance_log):
    rng = random.Random(4)
    N = 12
    with criterion(acceptance_log, 4, "centralizer support test agrees with commutation, 200 h for n in {2,3,5}"):
        for n in (2, 3, 5):
            K = cyc(n)
            lw = linear(K, K.zeta(), N)
            agree_true = 0
            for i in range(200):
                h = rand_jet(K, N, rng, size=2, den=1)
                if i % 2:
                    h = Jet(K, [a if (k - 1) % n == 0 else K.zero for k, a in enumerate(h.coeffs, 1)])
                elif i % 4 == 0:
                    # a single stray term off the 1 mod n lattice
                    h = Jet(K, [a if (k - 1) % n == 0 else K.zero for k, a in enumerate(h.coeffs, 1)])
                    stray = rng.choice([k for k in range(2, N + 1) if (k - 1) % n])
                    h = Jet(K, [a if k != stray else K.one for k, a in enumerate(h.coeffs, 1)])
                support = in_centralizer(h, n)
                assert support == (compose(h, lw) == compose(lw, h))
                agree_true += support
            assert 0 < agree_true < 200


def _random_spec(K, n, N, rng):
    w = random_primitive_root(K, rng)
    free = {
        k: K.element([Fraction(rng.randint(-3, 3), rng.randint(1, 2)) for _ in range(K.degree)])
        for k in range(2, N + 1)
        if (k - 1) % n
    }
    return FreeCoefficientSpec(n, w, N, free)


@pytest.mark.parametrize("n", [2, 3, 4, 6])
def test_c5_construction(acceptance_log, n):
    rng = random.Random(500 + n)
    K = cyc(n)
    N = 24
    with criterion(acceptance_log, 5, f"unique and existence builds agree, n={n}, 25 specs at N=24"):
        for _ in range(25):
            spec = _random_spec(K, n, N, rng)
            free_h = {k: rng.randint(-2, 2) for k in range(2, N + 1) if (k - 1) % n == 0}
            u = build_unique(spec)
            e = build_existence(spec, free_h)
            assert u.series == e.series
            assert is_identity_iterate(u.series, n)
            assert all(u.series[k] == v for k, v in spec.free.items())
            assert u.series.lead == spec.omega
        if n == 2:
            fixture = FreeCoefficientSpec.from_sparse(QQ.element(-1), 2, N, {k: -1 for k in range(2, N + 1, 2)})
            assert build_unique(fixture).series == Jet(QQ, [-1] * N)
            assert build_existence(fixture).series == Jet(QQ, [-1] * N)


def test_c6_affinity(acceptance_log):
    rng = random.Random(6)
    with criterion(acceptance_log, 6, "slope of a_k -> f^(n)_k is n*omega^(n-1) or 0, 50 prefixes"):
        for _ in range(50):
            n = rng.choice([2, 3, 4, 6])
            K = cyc(n)
            w = random_primitive_root(K, rng)
            j = rng.randint(1, 2)
            forced_k = n * j + 1
            free_k = rng.choice([k for k in range(2, forced_k) if (k - 1) % n])
            prefix = rand_jet(K, forced_k, rng, lead=w)
            for k, expected in ((forced_k, n * w ** (n - 1)), (free_k, K.zero)):
                t1, t2 = rand_element(K, rng), rand_element(K, rng)
                while t1 == t2:
                    t2 = rand_element(K, rng)
                vals = []
                for t in (t1, t2):
                    coeffs = list(prefix.coeffs[:k])
                    coeffs[k - 1] = t
                    vals.append(iterate(Jet(K, coeffs), n)[k])
                assert (vals[0] - vals[1]) / (t1 - t2) == expected


def test_c7_schroder_and_normal_form(acceptance_log):
    rng = random.Random(7)
    N = 16
    with criterion(acceptance_log, 7, "Schroder linearization and normal forms, exact witnesses"):
        l2 = linear(QQ, 2, N)
        for _ in range(50):
            f = rand_jet(QQ, N, rng, lead=2)
            h = schroder_linearize(f)
            assert h.lead == QQ.one
            assert compose(compose(h, f), invert(h)) == l2
        for i in range(50):
            n = (1, 2, 3, 4, 6)[i % 5]
            K = QQ if n <= 2 else cyc(n)
            w = QQ.element(-1) if n == 2 else (QQ.one if n == 1 else random_primitive_root(K, rng))
            f = rand_jet(K, N, rng, lead=w)
            g, c = normal_form(f)
            assert multiplicative_order(f.lead) == n
            assert g.lead == w
            assert all(not g[k] for k in range(2, N + 1) if (k - 1) % n)
            assert compose(compose(c, f), invert(c)) == g
        for n in (2, 3, 4, 6):
            K = cyc(n)
            w = random_primitive_root(K, rng)
            f = conjugate_of_linear(K, w, N, rng)
            assert normal_form(f)[0] == linear(K, w, N)


def test_c8_stanley(acceptance_log):
    rng = random.Random(8)
    N = 12
    with criterion(acceptance_log, 8, "stanley_build(g) is a twisted involution, 50 random g"):
        for i in range(50):
            ctx = QQ if i % 2 else cyc(4)
            g = rand_jet(ctx, N, rng, lead=1)
            f = stanley_build(g)
            assert stanley_involution_check(f)
            assert compositional_order(compose(f, linear(ctx, -1, N))).order == 2


def test_c9_cli_golden(acceptance_log, capsys, tmp_path):
    rng = random.Random(9)
    with criterion(acceptance_log, 9, "CLI build/verify golden run and 100 bit-exact round trips"):
        assert main(["build", "--order", "2", "--N", "5", "--free", "2=-1,4=-1"]) == 0
        out = capsys.readouterr().out
        rec = json.loads(out)
        assert rec["forced"] == {"3": "-1", "5": "-1"}
        path = tmp_path / "record.json"
        path.write_text(out)
        assert main(["verify", str(path), "--order", "2"]) == 0
        capsys.readouterr()
        for i in range(100):
            ctx = (QQ, cyc(3), cyc(4), cyc(12))[i % 4]
            f = rand_jet(ctx, rng.randint(1, 10), rng, size=50, den=30)
            text = emit_series(f)
            back = parse_series(text)
            assert back == f
            assert emit_series(back) == text

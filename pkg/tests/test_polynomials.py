import cmath
import random
import threading
from fractions import Fraction

import pytest

from qhermite.exact import ONE, Q, SPoly, q_eval, qpoly
from qhermite.laurent import Kind, XPoly, ZFun, x_to_z
from qhermite.polynomials import (
    Family,
    PolyFamily,
    classical_hermite,
    genfun15_coeffs,
    genfun_hn_coeffs,
    hermite_leading_ok,
    qhermite,
    qinv_hermite,
    qpoch_symbolic,
)

HYP = Kind.HYPERBOLIC


def qbinom(n, k):
    """Gaussian binomial as an SPoly, by the q-Pascal rule."""
    row = [ONE]
    for m in range(1, n + 1):
        new = [ONE]
        for j in range(1, m):
            new.append(row[j - 1] + row[j] * SPoly.monomial(2 * j))
        new.append(ONE)
        row = new
    return row[k]


def test_qpoch_examples():
    assert qpoch_symbolic(1, 0) == ONE
    assert qpoch_symbolic(1, 2) == (ONE - Q) * (ONE - Q * Q)
    assert qpoch_symbolic(2, 1) == ONE - Q * Q


def test_qhermite_examples():
    assert qhermite(0) == XPoly([1])
    assert qhermite(2) == XPoly([-(ONE - Q), 0, 4])
    assert qhermite(3) == XPoly([0, qpoly([-4, 2, 2]), 0, 8])


def test_qhermite_matches_qbinomial_expansion():
    # H_n(cos t|q) = sum_k [n k]_q e^{i(n-2k)t}, a second independent oracle
    for n in range(10):
        want = ZFun({n - 2 * k: qbinom(n, k) for k in range(n + 1)})
        assert x_to_z(qhermite(n)) == want


def test_qinv_examples():
    assert qinv_hermite(1) == XPoly([0, 2], HYP)
    qi = SPoly.monomial(-2)
    assert qinv_hermite(2) == XPoly([ONE - qi, 0, 4], HYP)
    assert qinv_hermite(3) == XPoly([0, (ONE * 2 - qi - qi * qi) * 2, 0, 8], HYP)


def test_classical_examples():
    assert classical_hermite(1) == XPoly([0, 2])
    assert classical_hermite(2) == XPoly([-2, 0, 4])
    assert classical_hermite(3) == XPoly([0, -12, 0, 8])


@pytest.mark.parametrize("fn", [qhermite, qinv_hermite, classical_hermite])
def test_degree_leading_parity(fn):
    for n in range(16):
        p = fn(n)
        assert hermite_leading_ok(p, n)
        assert p.parity_ok(n)


def test_qhermite_coefficients_are_polynomials_in_q():
    for n in range(16):
        for c in qhermite(n).coeffs:
            assert c.only_even() and all(e >= 0 for e, _ in c.items())


def test_genfun15_examples():
    g = genfun15_coeffs(2)
    assert g[0] == ZFun.const(ONE)
    assert g[1] == ZFun({1: 1, -1: 1})
    assert g[2] == x_to_z(XPoly([-(ONE - Q), 0, 4]))


def test_genfun_hn_examples():
    g = genfun_hn_coeffs(2)
    assert g[0] == ZFun.const(ONE, HYP)
    assert g[1] == ZFun({1: 1, -1: -1}, HYP)
    assert g[2] == x_to_z(qinv_hermite(2))


def test_genfun_matches_recurrence_small():
    g15 = genfun15_coeffs(6)
    gh = genfun_hn_coeffs(6)
    for n in range(7):
        assert g15[n] == x_to_z(qhermite(n))
        assert gh[n] == x_to_z(qinv_hermite(n))


def test_genfun_numeric():
    # truncated power series in t vs. the raw product, at q = 0.3
    q, t, theta = 0.3, 0.25, 0.9
    z = cmath.exp(1j * theta)
    s = q ** 0.5
    series = 0
    for n in range(25):
        series += t**n * qhermite(n).evaluate(cmath.cos(theta), s) / qpoch_numeric(q, n)
    prod = 1
    for k in range(200):
        prod /= (1 - t * z * q**k) * (1 - t / z * q**k)
    assert abs(series - prod) < 1e-12


def qpoch_numeric(q, n):
    out = 1.0
    for j in range(1, n + 1):
        out *= 1 - q**j
    return out


def test_qinv_complex_identity():
    # h_n(x|q) = i^-n H_n(i x | 1/q), checked in complex floating point at q = 1/2
    rng = random.Random(17)
    q = 0.5
    for n in range(11):
        for _ in range(5):
            x0 = rng.uniform(-2, 2)
            lhs = qinv_hermite(n).evaluate(x0, q ** 0.5)
            rhs = (1j) ** (-n) * qhermite(n).evaluate(1j * x0, (1 / q) ** 0.5)
            assert abs(lhs - rhs) <= 1e-12 * max(1.0, abs(lhs))


def test_q_zero_specialization():
    for n in range(8):
        p = qhermite(n)
        assert q_eval(p.leading(), 0) == 2**n
    assert q_eval(qhermite(2).coeff(0), 0) == -1
    # at q = 0 the recurrence is Chebyshev-U: H_n(cos t|0) = U_n(cos t)
    for n in range(8):
        vals = [q_eval(c, 0) for c in qhermite(n).coeffs]
        t = 0.77
        import math

        u = math.sin((n + 1) * t) / math.sin(t)
        got = sum(float(v) * math.cos(t) ** k for k, v in enumerate(vals))
        assert abs(got - u) < 1e-12


def test_cache_is_thread_safe():
    fam = PolyFamily(Family.Q_HERMITE)
    results = {}

    def work(i):
        results[i] = fam[12 + i % 3]

    threads = [threading.Thread(target=work, args=(i,)) for i in range(12)]
    for th in threads:
        th.start()
    for th in threads:
        th.join()
    assert len(fam.cache) == 15
    for n in range(15):
        assert fam[n] == qhermite(n)


def test_negative_degree_rejected():
    with pytest.raises(ValueError):
        qhermite(-1)
    with pytest.raises(ValueError):
        genfun15_coeffs(-1)

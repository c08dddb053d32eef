import cmath
import random
from fractions import Fraction

import pytest

from qhermite.exact import NotDivisible, ONE, Q, S, SPoly
from qhermite.laurent import Dressed, Kind, XPoly, ZFun, x_to_z
from qhermite.operators import (
    OpReport,
    apply_Aq,
    apply_calD,
    apply_calD_dressed,
    apply_Dq,
    apply_tildeD,
    eq3_residual_dressed,
    eq3_scalar,
    eq7_lhs_cleared,
    eq12_residual,
    product_rule_residual,
)
from qhermite.polynomials import qhermite, qinv_hermite
from qhermite.verify import random_symmetric

HALF = Fraction(1, 2)
sinv = SPoly.monomial(-1)
z1 = ZFun({1: 1, -1: 1})
z2 = ZFun({2: 1, -2: 1})


def sm(k):
    return SPoly.monomial(k)


def H(n):
    return x_to_z(qhermite(n))


def h(n):
    return x_to_z(qinv_hermite(n))


# pointwise oracles on the raw shift definitions
Z0 = 0.83 * cmath.exp(0.61j)
S0 = 0.7


def ev(f, z=Z0):
    return f.evaluate(z, S0)


def num_calD(f, z=Z0, s=S0):
    return (z * f.evaluate(z / s, S0) - f.evaluate(s * z, S0) / z) / (z - 1 / z)


def num_Dq(f, z=Z0, s=S0):
    dx = ((s * z + 1 / (s * z)) - (z / s + s / z)) / 2
    return (f.evaluate(s * z, S0) - f.evaluate(z / s, S0)) / dx


def num_Aq(f, z=Z0, s=S0):
    return (f.evaluate(s * z, S0) + f.evaluate(z / s, S0)) / 2


def test_Aq_examples():
    assert apply_Aq(ZFun.const(ONE)) == ZFun.const(ONE)
    assert apply_Aq(z1) == z1 * ((S + sinv) * HALF)
    assert apply_Aq(z2) == z2 * ((sm(2) + sm(-2)) * HALF)


def test_Dq_examples():
    assert apply_Dq(z1 * HALF) == ZFun.const(ONE)
    assert apply_Dq(ZFun.const(ONE)).is_zero()
    # d/dx (4x^2 - 2) = 8x = 4(z + 1/z) in the q -> 1 limit
    assert apply_Dq(z2) == z1 * (S + sinv) * 2


def test_Dq_monomial_rule():
    # (s^k - s^-k)(z^k - z^-k) / ((s - 1/s)(z - 1/z)/2)
    for k in range(1, 9):
        got = apply_Dq(ZFun({k: 1, -k: 1}))
        sq = (sm(k) - sm(-k)) / (S - sinv)
        zq = ZFun({k - 1 - 2 * j: 1 for j in range(k)})
        assert got == zq * sq * 2


def test_calD_examples():
    assert apply_calD(ZFun.const(ONE)) == ZFun.const(ONE)
    assert apply_calD(z1) == z1 * sinv
    h2 = H(2)
    assert apply_calD(h2) == h2 * sm(-2)


def test_calD_dressed_examples():
    one1 = Dressed(ZFun.const(ONE), 1)
    assert apply_calD_dressed(one1, inverted=True) == Dressed(ZFun.const(sinv), 1)
    d = Dressed(H(1), 1)
    assert apply_calD_dressed(d, inverted=True) == Dressed(H(1) * sm(-2), 1)
    f = H(3) + H(2)
    assert apply_calD_dressed(Dressed(f, 0)) == Dressed(apply_calD(f), 0)


def test_tildeD_examples():
    assert apply_tildeD(ZFun.const(ONE, Kind.HYPERBOLIC)) == ZFun.const(ONE, Kind.HYPERBOLIC)
    w1 = ZFun({1: 1, -1: -1}, Kind.HYPERBOLIC)
    assert apply_tildeD(w1) == w1 * S
    assert apply_tildeD(h(2)) == h(2) * sm(2)


def test_kind_guard():
    with pytest.raises(ValueError):
        apply_calD(h(1))
    with pytest.raises(ValueError):
        apply_tildeD(H(1))


def test_asymmetric_input_not_divisible():
    with pytest.raises(NotDivisible):
        apply_Dq(ZFun({1: 1}))


def test_operators_match_pointwise_definitions():
    rng = random.Random(4)
    for _ in range(20):
        f = random_symmetric(rng, 6)
        for exact, oracle in ((apply_calD, num_calD), (apply_Dq, num_Dq), (apply_Aq, num_Aq)):
            want = oracle(f)
            assert abs(ev(exact(f)) - want) <= 1e-9 * max(1.0, abs(want))


def test_tildeD_matches_pointwise_definition():
    import math

    phi, s = 0.4, 0.7
    for n in range(6):
        p = qinv_hermite(n)
        g = lambda t: p.evaluate(math.sinh(t), s)
        want = (math.exp(phi) * g(phi + math.log(s)) + math.exp(-phi) * g(phi - math.log(s))) / (2 * math.cosh(phi))
        got = apply_tildeD(h(n)).evaluate(math.exp(phi), s)
        assert abs(got - want) < 1e-9 * max(1.0, abs(want))


def test_results_stay_symmetric():
    rng = random.Random(8)
    for _ in range(20):
        f = random_symmetric(rng, 7)
        for op in (apply_Aq, apply_Dq, apply_calD):
            assert op(f).is_symmetric()


def test_parity_preserved():
    for n in range(12):
        img = apply_calD(H(n))
        assert img.parity() == n % 2
    even = XPoly([0, 0, SPoly({1: 3}), 0, 5])
    odd = XPoly([0, Fraction(1, 3), 0, SPoly({-2: 2})])
    assert apply_calD(x_to_z(even)).parity() == 0
    assert apply_calD(x_to_z(odd)).parity() == 1


def test_eq7_examples():
    assert eq7_lhs_cleared(ZFun.const(ONE), 0).is_zero()
    assert eq7_lhs_cleared(H(1), 1).is_zero()
    assert not eq7_lhs_cleared(H(1), 2).is_zero()


def test_eq3_scalar_is_q_integer():
    for n in range(8):
        qint = sum((sm(2 * j) for j in range(n)), SPoly())
        assert eq3_scalar(n) == sm(1 - 2 * n) * qint * 2


def test_eq3_examples():
    assert eq3_residual_dressed(0).is_zero()
    assert eq3_residual_dressed(1).is_zero()
    assert not eq3_residual_dressed(2, eigen_index=3).is_zero()


def test_eq12_examples():
    for k in (0, 1, 5):
        assert eq12_residual(k).is_zero()


def test_product_rule_small():
    rng = random.Random(13)
    for _ in range(10):
        f, g = random_symmetric(rng, 4), random_symmetric(rng, 4)
        assert product_rule_residual(f, g).is_zero()


@pytest.mark.parametrize("n", range(1, 8))
def test_mutation_sensitivity(n):
    f = H(n)
    assert not (apply_calD(f) - f * sm(-(n + 1))).is_zero()
    assert not eq7_lhs_cleared(f, n + 1).is_zero()
    assert not eq3_residual_dressed(n, f, n + 1).is_zero()
    d = Dressed(f, 1)
    assert apply_calD_dressed(d, True) != d * sm(-(n + 2))
    assert not (apply_tildeD(h(n)) - h(n) * sm(n + 1)).is_zero()


def test_opreport():
    r = OpReport("x", 3, ZFun())
    assert r.verified and r.residual_size == 0
    r = OpReport("x", 3, Dressed(ZFun({0: Fraction(-5, 2)}), 1))
    assert not r.verified and r.residual_size == Fraction(5, 2)

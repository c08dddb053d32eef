import cmath
import random
from fractions import Fraction

import pytest

from qhermite.exact import ONE, Q, S, SPoly
from qhermite.laurent import (
    Dressed,
    Kind,
    NotSymmetric,
    XPoly,
    ZFun,
    dressed_shift,
    exact_div_binomial,
    scale_substitute,
    weight_shift_factor,
    x_to_z,
    z_to_x,
)
from qhermite.exact import NotDivisible
from qhermite.numerics import weight_complex

C, H = Kind.COSINE, Kind.HYPERBOLIC


def rand_xpoly(rng, kind, max_deg=20):
    deg = rng.randint(0, max_deg)
    cs = []
    for _ in range(deg + 1):
        cs.append(SPoly({rng.randint(-3, 3): Fraction(rng.randint(-7, 7), rng.randint(1, 3)) for _ in range(2)}))
    return XPoly(cs, kind)


def test_x_to_z_examples():
    assert x_to_z(XPoly([0, 2])) == ZFun({1: 1, -1: 1})
    # ((z + 1/z)/2)^2 * 4 = z^2 + 2 + z^-2, minus (1 - q)
    p = XPoly([-(ONE - Q), 0, 4])
    assert x_to_z(p) == ZFun({2: 1, -2: 1, 0: ONE + Q})
    assert x_to_z(XPoly([0, 2], H)) == ZFun({1: 1, -1: -1}, H)


def test_z_to_x_examples():
    assert z_to_x(ZFun({1: 1, -1: 1})) == XPoly([0, 2])
    assert z_to_x(ZFun({2: 1, -2: 1})) == XPoly([-2, 0, 4])
    with pytest.raises(NotSymmetric):
        z_to_x(ZFun({1: 1}))
    with pytest.raises(NotSymmetric):
        z_to_x(ZFun({1: 1, -1: 1}, H))


@pytest.mark.parametrize("kind", [C, H])
def test_round_trip_random(kind):
    rng = random.Random(11 if kind is C else 12)
    for _ in range(200):
        p = rand_xpoly(rng, kind)
        f = x_to_z(p)
        assert f.is_symmetric()
        assert z_to_x(f) == p


@pytest.mark.parametrize("kind", [C, H])
def test_x_to_z_multiplicative(kind):
    rng = random.Random(5)
    for _ in range(40):
        p, r = rand_xpoly(rng, kind, 6), rand_xpoly(rng, kind, 6)
        assert x_to_z(p * r) == x_to_z(p) * x_to_z(r)


def test_x_to_z_numeric_consistency():
    p = XPoly([SPoly({0: 1, 2: -3}), 2, SPoly({1: 5})])
    theta, s = 0.7, 0.6
    val = x_to_z(p).evaluate(cmath.exp(1j * theta), s)
    assert abs(val - p.evaluate(cmath.cos(theta), s)) < 1e-12


def test_scale_substitute_examples():
    f = ZFun({1: 1, -1: 1})
    assert scale_substitute(f, 1) == ZFun({1: S, -1: SPoly.monomial(-1)})
    assert scale_substitute(ZFun({2: 1}), -1) == ZFun({2: SPoly.monomial(-2)})
    for k in (-3, 0, 5):
        assert scale_substitute(ZFun.const(ONE), k) == ZFun.const(ONE)


def test_scale_substitute_composition():
    rng = random.Random(3)
    for _ in range(30):
        f = x_to_z(rand_xpoly(rng, C, 8))
        assert scale_substitute(f, 2) == scale_substitute(scale_substitute(f, 1), 1)
        assert scale_substitute(scale_substitute(f, 3), -3) == f


def test_exact_div_binomial_examples():
    assert exact_div_binomial(ZFun({2: 1, -2: -1}), "minus") == ZFun({1: 1, -1: 1})
    assert exact_div_binomial(ZFun({1: 1, -1: -1}), "minus") == ZFun.const(ONE)
    with pytest.raises(NotDivisible) as exc:
        exact_div_binomial(ZFun({1: 1}), "minus")
    assert exc.value.remainder == ZFun({1: 1})
    assert exact_div_binomial(ZFun({2: 1, -2: -1}, H), "plus") == ZFun({1: 1, -1: -1}, H)


def test_exact_div_binomial_is_exact():
    rng = random.Random(9)
    for sign in ("minus", "plus"):
        b = ZFun.binomial(sign)
        for _ in range(50):
            g = ZFun({rng.randint(-6, 6): SPoly({rng.randint(-2, 2): rng.randint(-4, 4)}) for _ in range(4)})
            assert exact_div_binomial(g * b, sign) == g


def test_weight_factor_against_product():
    # derived factor vs truncated infinite product at q = 1/2, theta = 1
    q = 0.5
    s = q ** 0.5
    z = cmath.exp(1j * 1.0)
    w0 = weight_complex(z, q, 80)
    for k in (1, -1):
        shifted = weight_complex(z * s**k, q, 80)
        factor = weight_shift_factor(k).evaluate(z, s)
        assert abs(shifted - factor * w0) < 1e-8 * abs(w0)


def test_dressed_shift_examples():
    one0 = Dressed(ZFun.const(ONE), 0)
    assert dressed_shift(one0, 1) == one0
    one1 = Dressed(ZFun.const(ONE), 1)
    assert dressed_shift(one1, 1) == Dressed(ZFun({-2: -SPoly.monomial(-1)}), 1)
    assert dressed_shift(one1, -1) == Dressed(ZFun({2: -SPoly.monomial(-1)}), 1)
    for k in (1, -1):
        assert dressed_shift(dressed_shift(one1, k), -k) == one1


def test_dressed_shift_round_trip_random():
    rng = random.Random(21)
    for _ in range(30):
        d = Dressed(x_to_z(rand_xpoly(rng, C, 6)), 1)
        assert dressed_shift(dressed_shift(d, 1), -1) == d
        assert dressed_shift(d, 2) == dressed_shift(dressed_shift(d, 1), 1)


def test_dressed_weight_zero_is_bare():
    rng = random.Random(2)
    f = x_to_z(rand_xpoly(rng, C, 5))
    assert dressed_shift(Dressed(f, 0), -1).part == scale_substitute(f, -1)


def test_weight_cap():
    with pytest.raises(ValueError):
        Dressed(ZFun.const(ONE), 2)
    d = Dressed(ZFun.const(ONE), 1)
    with pytest.raises(ValueError):
        d * d


def test_kind_mixing_rejected():
    with pytest.raises(ValueError):
        ZFun.const(ONE) + ZFun.const(ONE, H)
    with pytest.raises(ValueError):
        XPoly([1]) + XPoly([1], H)

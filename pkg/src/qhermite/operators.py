"""q-difference operators acting exactly on ZFun and Dressed values.

Conventions, with ``z = e^{i theta}`` and ``s = q**(1/2)``:

* the half-shift ``exp(+i ln(s) d/dtheta)`` is ``z -> z/s``, its inverse is
  ``z -> s z``;
* ``delta_q g(z) = g(s z) - g(z/s)`` and ``delta_q x = (s - 1/s)(z - 1/z)/2``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .exact import ONE, Q, S, SPoly, spoly_exact_div
from .laurent import (
    Dressed,
    Kind,
    ZFun,
    divide_coeffs,
    dressed_shift,
    exact_div_binomial,
    scale_substitute,
)

HALF = Fraction(1, 2)

# (s - 1/s)/2, the s-part of delta_q x
DELTA_X_SCALAR = (S - SPoly.monomial(-1)) * HALF


def _require(f: ZFun, kind: Kind):
    if f.kind is not kind:
        raise ValueError(f"operator needs a {kind.value} ZFun, got {f.kind.value}")


def z_minus_inv(kind: Kind = Kind.COSINE) -> ZFun:
    return ZFun.binomial("minus", kind)


def x_as_z() -> ZFun:
    return ZFun({1: ONE * HALF, -1: ONE * HALF})


def apply_Aq(f: ZFun) -> ZFun:
    """Averaging operator: ``(g(s z) + g(z/s)) / 2``."""
    _require(f, Kind.COSINE)
    return (scale_substitute(f, 1) + scale_substitute(f, -1)) * HALF


def delta_q(f: ZFun) -> ZFun:
    return scale_substitute(f, 1) - scale_substitute(f, -1)


def apply_Dq(f: ZFun) -> ZFun:
    """Askey-Wilson divided difference ``delta_q f / delta_q x``."""
    _require(f, Kind.COSINE)
    num = delta_q(f)
    return divide_coeffs(exact_div_binomial(num, "minus"), DELTA_X_SCALAR)


def apply_calD(f: ZFun, inverted: bool = False) -> ZFun:
    """Factorizing operator ``[z g(z/s) - (1/z) g(s z)] / (z - 1/z)``.

    ``inverted=True`` swaps ``s`` for ``1/s`` in the operator, which turns the
    two shifts around.
    """
    _require(f, Kind.COSINE)
    k = 1 if inverted else -1
    num = scale_substitute(f, k).shift(1) - scale_substitute(f, -k).shift(-1)
    return exact_div_binomial(num, "minus")


def apply_calD_dressed(d: Dressed, inverted: bool = False) -> Dressed:
    """Same operator on ``f * w``; weight shifts are rewritten, never expanded."""
    k = 1 if inverted else -1
    num = dressed_shift(d, k).part.shift(1) - dressed_shift(d, -k).part.shift(-1)
    return Dressed(exact_div_binomial(num, "minus"), d.weight_exponent)


def apply_tildeD(f: ZFun) -> ZFun:
    """Hyperbolic operator ``[w g(s w) + (1/w) g(w/s)] / (w + 1/w)``."""
    _require(f, Kind.HYPERBOLIC)
    num = scale_substitute(f, 1).shift(1) + scale_substitute(f, -1).shift(-1)
    return exact_div_binomial(num, "plus")


def eigen_residual(image: ZFun, f: ZFun, eigenvalue: SPoly) -> ZFun:
    return image - f * eigenvalue


def _eq7_clearing_factor() -> ZFun:
    # (z - 1/z)(1 - q/z^2)(1 - q z^2)
    a = ZFun({0: ONE, -2: -Q})
    b = ZFun({0: ONE, 2: -Q})
    return z_minus_inv() * a * b


def eq7_lhs_cleared(f: ZFun, n: int) -> ZFun:
    """Residual of the weight-free second-order equation, denominators cleared.

    After multiplying by ``(z - 1/z)(1 - q/z^2)(1 - q z^2)`` the left side is
    ``z (1 - q z^2)(f(z/q) - f) + (1/z)(1 - q/z^2)(f - f(q z))``; the right side
    is ``(q^-n - 1)`` times the clearing factor times ``f``.
    """
    _require(f, Kind.COSINE)
    # full shifts z -> z/q, z -> q z as two half-shifts each
    f_down = scale_substitute(scale_substitute(f, -1), -1)
    f_up = scale_substitute(scale_substitute(f, 1), 1)
    left = ZFun({1: ONE, 3: -Q}) * (f_down - f) + ZFun({-1: ONE, -3: -Q}) * (f - f_up)
    eig = SPoly.monomial(-2 * n) - ONE
    return left - _eq7_clearing_factor() * f * eig


def eq3_scalar(n: int) -> SPoly:
    """``4q(1 - q^-n)/(1-q)^2`` times the s-part of ``delta_q x``, exactly.

    Equals ``2 s^(1-2n) (1 + q + ... + q^(n-1))``; the division below raises
    NotDivisible if the cancellation ever fails.
    """
    num = Q * 4 * (ONE - SPoly.monomial(-2 * n)) * DELTA_X_SCALAR
    return spoly_exact_div(num, (ONE - Q) * (ONE - Q))


def eq3_residual_dressed(n: int, h: ZFun | None = None, eigen_index: int | None = None) -> Dressed:
    """``delta_q(w D_q H_n) - scalar * delta_q x * H_n w`` as a dressed function.

    ``h`` defaults to ``x_to_z(H_n)``; ``eigen_index`` overrides the ``n`` used
    in the scalar (for mutation tests).
    """
    if h is None:
        from .polynomials import qhermite
        from .laurent import x_to_z

        h = x_to_z(qhermite(n))
    m = n if eigen_index is None else eigen_index
    inner = Dressed(apply_Dq(h), 1)
    left = dressed_shift(inner, 1) - dressed_shift(inner, -1)
    right = Dressed(h * z_minus_inv() * eq3_scalar(m), 1)
    return left - right


def eq12_residual(k: int, scalar: SPoly | None = None) -> ZFun:
    """calD - [A_q + ((1-q)/(2s)) x D_q] applied to ``z^k + z^-k``."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    basis = ZFun({k: ONE, -k: ONE}) if k else ZFun.const(ONE)
    if scalar is None:
        scalar = (ONE - Q) * spoly_exact_div(ONE, S * 2)
    rhs = apply_Aq(basis) + x_as_z() * apply_Dq(basis) * scalar
    return apply_calD(basis) - rhs


def product_rule_residual(f: ZFun, g: ZFun) -> ZFun:
    """``D_q(f g) - [A_q f D_q g + D_q f A_q g]``."""
    return apply_Dq(f * g) - (apply_Aq(f) * apply_Dq(g) + apply_Dq(f) * apply_Aq(g))


@dataclass(frozen=True)
class OpReport:
    name: str
    input_n: int
    residual: Union[ZFun, Dressed]

    @property
    def verified(self) -> bool:
        return self.residual.is_zero()

    @property
    def residual_size(self) -> Fraction:
        part = self.residual.part if isinstance(self.residual, Dressed) else self.residual
        return part.max_abs_coeff()

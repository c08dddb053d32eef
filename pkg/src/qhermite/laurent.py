"""Polynomials in x and Laurent polynomials in the circle variable.

Two presentations of the same functions are kept side by side:

* :class:`XPoly` -- a polynomial in ``x`` whose coefficients are SPoly.
* :class:`ZFun` -- a Laurent polynomial in ``z = e^{i theta}`` (cosine kind,
  ``x = (z + 1/z)/2``) or ``w = e^{phi}`` (hyperbolic kind,
  ``x = (w - 1/w)/2``).

Shift operators only ever act on ZFun, as substitutions ``z -> s**k * z``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .exact import ONE, NotDivisible, SPoly, ZERO, format_laurent, spoly_exact_div


class Kind(enum.Enum):
    COSINE = "cosine"
    HYPERBOLIC = "hyperbolic"


class NotSymmetric(ValueError):
    """A ZFun does not come from any polynomial in x."""


def _coerce_spoly(c) -> SPoly:
    return c if isinstance(c, SPoly) else SPoly.coerce(c)


class XPoly:
    """Polynomial in ``x`` with SPoly coefficients, lowest degree first."""

    __slots__ = ("coeffs", "kind")

    def __init__(self, coeffs: Sequence = (), kind: Kind = Kind.COSINE):
        cs = [_coerce_spoly(c) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        self.coeffs: tuple[SPoly, ...] = tuple(cs)
        self.kind = kind

    @classmethod
    def x(cls, kind: Kind = Kind.COSINE) -> "XPoly":
        return cls([ZERO, ONE], kind)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, k: int) -> SPoly:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else ZERO

    def leading(self) -> SPoly:
        return self.coeffs[-1] if self.coeffs else ZERO

    def _check(self, other: "XPoly"):
        if other.kind is not self.kind:
            raise ValueError("mixing cosine and hyperbolic XPoly")

    def __add__(self, other: "XPoly") -> "XPoly":
        self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return XPoly([self.coeff(k) + other.coeff(k) for k in range(n)], self.kind)

    def __sub__(self, other: "XPoly") -> "XPoly":
        self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return XPoly([self.coeff(k) - other.coeff(k) for k in range(n)], self.kind)

    def __neg__(self) -> "XPoly":
        return XPoly([-c for c in self.coeffs], self.kind)

    def __mul__(self, other) -> "XPoly":
        if isinstance(other, XPoly):
            self._check(other)
            if self.is_zero() or other.is_zero():
                return XPoly([], self.kind)
            out = [ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
            for i, a in enumerate(self.coeffs):
                if a.is_zero():
                    continue
                for j, b in enumerate(other.coeffs):
                    if not b.is_zero():
                        out[i + j] = out[i + j] + a * b
            return XPoly(out, self.kind)
        c = _coerce_spoly(other)
        return XPoly([a * c for a in self.coeffs], self.kind)

    __rmul__ = __mul__

    def mul_x(self) -> "XPoly":
        return XPoly([ZERO, *self.coeffs], self.kind)

    def __eq__(self, other):
        if not isinstance(other, XPoly):
            return NotImplemented
        return self.kind is other.kind and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.kind, self.coeffs))

    def parity_ok(self, n: int) -> bool:
        """True if only powers of x congruent to ``n`` mod 2 occur."""
        return all(c.is_zero() for k, c in enumerate(self.coeffs) if (k - n) % 2)

    def evaluate(self, x, s_value):
        """Numeric evaluation (float or complex) at ``s = s_value``."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c.evalf(s_value)
        return acc

    def __repr__(self):
        return f"XPoly({render_xpoly(self)!r}, {self.kind.value})"


def render_spoly_q(c: SPoly) -> str:
    """Render in q when every s-power is even, otherwise in s."""
    if c.only_even():
        return format_laurent({e // 2: v for e, v in c.items()}, "q")
    return c.to_str("s")


def render_xpoly(p: XPoly) -> str:
    """Human-readable form, highest power first: ``4*x^2 + (-1 + q)``."""
    if p.is_zero():
        return "0"
    parts: list[tuple[str, str]] = []
    for k in range(p.degree, -1, -1):
        c = p.coeffs[k]
        if c.is_zero():
            continue
        xs = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
        if c.is_constant():
            v = c.coeff(0)
            sign = "-" if v < 0 else "+"
            mag = abs(v)
            if not xs:
                body = str(mag)
            else:
                body = xs if mag == 1 else f"{mag}*{xs}"
        else:
            sign = "+"
            inner = render_spoly_q(c)
            body = f"({inner})" if not xs else f"({inner})*{xs}"
        parts.append((sign, body))
    first_sign, first_body = parts[0]
    out = first_body if first_sign == "+" else f"-{first_body}"
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


class ZFun:
    """Laurent polynomial in ``z`` (or ``w``) with SPoly coefficients."""

    __slots__ = ("terms", "kind", "_hash")

    def __init__(self, terms: Mapping[int, object] | None = None, kind: Kind = Kind.COSINE):
        clean: dict[int, SPoly] = {}
        if terms:
            for e, c in terms.items():
                c = _coerce_spoly(c)
                if not c.is_zero():
                    clean[int(e)] = c
        self.terms = clean
        self.kind = kind
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict, kind: Kind) -> "ZFun":
        obj = cls.__new__(cls)
        obj.terms = terms
        obj.kind = kind
        obj._hash = None
        return obj

    @classmethod
    def const(cls, c, kind: Kind = Kind.COSINE) -> "ZFun":
        return cls({0: c}, kind)

    @classmethod
    def monomial(cls, k: int, c=ONE, kind: Kind = Kind.COSINE) -> "ZFun":
        return cls({k: c}, kind)

    @classmethod
    def binomial(cls, sign: str, kind: Kind = Kind.COSINE) -> "ZFun":
        """``z - 1/z`` for sign ``"minus"``, ``z + 1/z`` for ``"plus"``."""
        return cls({1: ONE, -1: -ONE if sign == "minus" else ONE}, kind)

    def coeff(self, k: int) -> SPoly:
        return self.terms.get(k, ZERO)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def max_exp(self) -> int:
        return max(self.terms)

    def min_exp(self) -> int:
        return min(self.terms)

    def _check(self, other: "ZFun"):
        if other.kind is not self.kind:
            raise ValueError("mixing cosine and hyperbolic ZFun")

    def _combine(self, other: "ZFun", sign: int) -> "ZFun":
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            old = out.get(e, ZERO)
            v = old + c if sign > 0 else old - c
            if v.is_zero():
                out.pop(e, None)
            else:
                out[e] = v
        return ZFun._raw(out, self.kind)

    def __add__(self, other: "ZFun") -> "ZFun":
        return self._combine(other, 1)

    def __sub__(self, other: "ZFun") -> "ZFun":
        return self._combine(other, -1)

    def __neg__(self) -> "ZFun":
        return ZFun._raw({e: -c for e, c in self.terms.items()}, self.kind)

    def __mul__(self, other) -> "ZFun":
        if isinstance(other, ZFun):
            self._check(other)
            out: dict[int, SPoly] = {}
            for e1, c1 in self.terms.items():
                for e2, c2 in other.terms.items():
                    e = e1 + e2
                    out[e] = out[e] + c1 * c2 if e in out else c1 * c2
            return ZFun._raw({e: c for e, c in out.items() if not c.is_zero()}, self.kind)
        c = _coerce_spoly(other)
        if c.is_zero():
            return ZFun._raw({}, self.kind)
        return ZFun._raw({e: v * c for e, v in self.terms.items()}, self.kind)

    __rmul__ = __mul__

    def shift(self, k: int) -> "ZFun":
        """Multiply by ``z**k``."""
        return ZFun._raw({e + k: c for e, c in self.terms.items()}, self.kind)

    def map_coeffs(self, fn) -> "ZFun":
        return ZFun({e: fn(c) for e, c in self.terms.items()}, self.kind)

    def __eq__(self, other):
        if not isinstance(other, ZFun):
            return NotImplemented
        return self.kind is other.kind and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.kind, frozenset(self.terms.items())))
        return self._hash

    def is_symmetric(self) -> bool:
        """Cosine: invariant under ``z -> 1/z``; hyperbolic: under ``w -> -1/w``."""
        for e, c in self.terms.items():
            mirror = self.coeff(-e)
            if self.kind is Kind.HYPERBOLIC and e % 2:
                mirror = -mirror
            if mirror != c:
                return False
        return True

    def parity(self) -> int | None:
        """0 if only even exponents occur, 1 if only odd, None if mixed."""
        ps = {e % 2 for e in self.terms}
        if len(ps) > 1:
            return None
        return ps.pop() if ps else 0

    def evaluate(self, z, s_value):
        return sum(c.evalf(s_value) * z ** e for e, c in self.terms.items())

    def max_abs_coeff(self) -> Fraction:
        return max((abs(v) for c in self.terms.values() for _, v in c.items()), default=Fraction(0))

    def __repr__(self):
        var = "z" if self.kind is Kind.COSINE else "w"
        if not self.terms:
            return "ZFun(0)"
        body = " + ".join(f"({c.to_str('s')})*{var}^{e}" for e, c in sorted(self.terms.items()))
        return f"ZFun({body})"


def _half_x(kind: Kind) -> ZFun:
    h = ONE * Fraction(1, 2)
    return ZFun({1: h, -1: h if kind is Kind.COSINE else -h}, kind)


def x_to_z(p: XPoly) -> ZFun:
    """Substitute ``x = (z + 1/z)/2`` (or ``(w - 1/w)/2``) by Horner's rule."""
    xz = _half_x(p.kind)
    acc = ZFun({}, p.kind)
    for c in reversed(p.coeffs):
        acc = acc * xz
        if not c.is_zero():
            acc = acc + ZFun._raw({0: c}, p.kind)
    return acc


def z_to_x(f: ZFun) -> XPoly:
    """Inverse of :func:`x_to_z`; raises NotSymmetric on asymmetric input."""
    if not f.is_symmetric():
        raise NotSymmetric(f"{f!r} is not symmetric for its kind")
    two_x = ZFun({1: ONE, -1: ONE if f.kind is Kind.COSINE else -ONE}, f.kind)
    rem = f
    out: dict[int, SPoly] = {}
    # (2x)**d has leading term z**d with coefficient 1.
    powers = [ZFun.const(ONE, f.kind)]
    while not rem.is_zero():
        d = rem.max_exp()
        if d < 0:
            raise NotSymmetric(f"{f!r} leaves a negative-degree remainder")
        while len(powers) <= d:
            powers.append(powers[-1] * two_x)
        c = rem.coeff(d)
        out[d] = c * 2**d
        rem = rem - powers[d] * c
    n = max(out, default=-1) + 1
    return XPoly([out.get(k, ZERO) for k in range(n)], f.kind)


def scale_substitute(f: ZFun, k: int) -> ZFun:
    """``g(z) -> g(s**k z)``: the coefficient of ``z**m`` gains ``s**(k m)``."""
    if k == 0:
        return f
    return ZFun._raw({e: c.shift(k * e) for e, c in f.terms.items()}, f.kind)


def exact_div_binomial(f: ZFun, sign: str) -> ZFun:
    """Divide by ``z - 1/z`` (``"minus"``) or ``z + 1/z`` (``"plus"``) exactly."""
    if sign not in ("minus", "plus"):
        raise ValueError(f"sign must be 'minus' or 'plus', got {sign!r}")
    rem = dict(f.terms)
    quot: dict[int, SPoly] = {}
    while rem:
        top = max(rem)
        if top - min(rem) < 2:
            raise NotDivisible(
                f"not divisible by z {'-' if sign == 'minus' else '+'} 1/z",
                ZFun(rem, f.kind),
            )
        c = rem.pop(top)
        quot[top - 1] = c
        # subtract c*z^(top-1)*(z -/+ 1/z); the low term lands on top-2
        low = top - 2
        v = rem.get(low, ZERO) + c if sign == "minus" else rem.get(low, ZERO) - c
        if v.is_zero():
            rem.pop(low, None)
        else:
            rem[low] = v
    return ZFun._raw(quot, f.kind)


def divide_coeffs(f: ZFun, d: SPoly) -> ZFun:
    """Divide every coefficient exactly by ``d``."""
    return ZFun._raw({e: spoly_exact_div(c, d) for e, c in f.terms.items()}, f.kind)


@dataclass(frozen=True)
class Dressed:
    """``f(x) * w(x|q)**weight_exponent`` with ``f`` held as a cosine ZFun."""

    part: ZFun
    weight_exponent: int = 0

    def __post_init__(self):
        if self.weight_exponent not in (0, 1):
            raise ValueError("weight exponent is capped at 1")

    def _check(self, other: "Dressed"):
        if other.weight_exponent != self.weight_exponent:
            raise ValueError("cannot add terms with different weight exponents")

    def __add__(self, other: "Dressed") -> "Dressed":
        self._check(other)
        return Dressed(self.part + other.part, self.weight_exponent)

    def __sub__(self, other: "Dressed") -> "Dressed":
        self._check(other)
        return Dressed(self.part - other.part, self.weight_exponent)

    def __mul__(self, other) -> "Dressed":
        if isinstance(other, Dressed):
            if self.weight_exponent + other.weight_exponent > 1:
                raise ValueError("weight exponent is capped at 1")
            return Dressed(self.part * other.part, self.weight_exponent + other.weight_exponent)
        return Dressed(self.part * other, self.weight_exponent)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return self.part.is_zero()


def weight_shift_factor(k: int) -> ZFun:
    """Factor picked up by the weight under ``z -> s**k z``, ``k = +1 or -1``.

    ``w(s z) = -1/(s z**2) * w(z)`` and ``w(z/s) = -z**2/s * w(z)``.
    """
    if k == 1:
        return ZFun.monomial(-2, -SPoly.monomial(-1))
    if k == -1:
        return ZFun.monomial(2, -SPoly.monomial(-1))
    raise ValueError("weight shift factor is defined for k = +1 or -1")


def dressed_shift(d: Dressed, k: int) -> Dressed:
    """Apply ``z -> s**k z`` to a dressed function, one half-shift at a time."""
    if d.part.kind is not Kind.COSINE:
        raise ValueError("dressed functions live on the cosine kind")
    if d.weight_exponent == 0:
        return Dressed(scale_substitute(d.part, k), 0)
    step = 1 if k > 0 else -1
    part = d.part
    for _ in range(abs(k)):
        part = scale_substitute(part, step) * weight_shift_factor(step)
    return Dressed(part, d.weight_exponent)

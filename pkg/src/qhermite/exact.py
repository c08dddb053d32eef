"""Exact scalar arithmetic: rationals and Laurent polynomials in ``s = q**(1/2)``.

Every identity in this package is decided in the ring ``Q[s, 1/s]``.  Storing
``q`` as ``s**2`` keeps half-integer powers of ``q`` (``q**(-n/2)`` is
``s**-n``) inside the ring without any fractional exponents.
"""

from __future__ import annotations

import operator
from fractions import Fraction
from typing import Iterable, Mapping, Union

Rational = Fraction

Scalar = Union[int, Fraction]


class NotDivisible(ArithmeticError):
    """Exact division left a nonzero remainder."""

    def __init__(self, message: str, remainder=None):
        super().__init__(message)
        self.remainder = remainder


class ZeroBase(ZeroDivisionError):
    """Evaluation at ``s = 0`` of an element with negative exponents."""


def as_rational(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/r"`` strings to a Fraction.

    Floats are rejected: they would smuggle rounding into the exact layer.
    """
    if isinstance(value, bool):
        raise TypeError("bool is not a rational")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"cannot use {type(value).__name__} as an exact rational")


class SPoly:
    """Laurent polynomial in ``s`` with rational coefficients.

    Immutable.  Zero coefficients are never stored, so equality is plain
    dictionary equality.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, Scalar] | None = None):
        clean = {}
        if terms:
            for e, c in terms.items():
                if c:
                    clean[int(e)] = c if isinstance(c, Fraction) else as_rational(c)
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "SPoly":
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def const(cls, c: Scalar) -> "SPoly":
        return cls({0: c})

    @classmethod
    def monomial(cls, exponent: int, c: Scalar = 1) -> "SPoly":
        return cls({exponent: c})

    @classmethod
    def coerce(cls, other) -> "SPoly":
        if isinstance(other, SPoly):
            return other
        return cls.const(as_rational(other))

    @property
    def terms(self) -> dict[int, Fraction]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def coeff(self, exponent: int) -> Fraction:
        return self._terms.get(exponent, Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def degree(self) -> int:
        if not self._terms:
            raise ValueError("degree of the zero SPoly")
        return max(self._terms)

    def valuation(self) -> int:
        if not self._terms:
            raise ValueError("valuation of the zero SPoly")
        return min(self._terms)

    def is_constant(self) -> bool:
        return not self._terms or set(self._terms) == {0}

    def only_even(self) -> bool:
        return all(e % 2 == 0 for e in self._terms)

    # ring operations

    def _combine(self, other, op) -> "SPoly":
        other = SPoly.coerce(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            v = op(out.get(e, 0), c)
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return SPoly._raw(out)

    def __add__(self, other):
        if not isinstance(other, (SPoly, int, Fraction)):
            return NotImplemented
        return self._combine(other, operator.add)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, (SPoly, int, Fraction)):
            return NotImplemented
        return self._combine(other, operator.sub)

    def __rsub__(self, other):
        return SPoly.coerce(other) - self

    def __neg__(self) -> "SPoly":
        return SPoly._raw({e: -c for e, c in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            if not other:
                return SPoly._raw({})
            return SPoly._raw({e: c * other for e, c in self._terms.items()})
        if not isinstance(other, SPoly):
            return NotImplemented
        out: dict[int, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = e1 + e2
                out[e] = out.get(e, 0) + c1 * c2
        return SPoly._raw({e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "SPoly":
        if k < 0:
            if len(self._terms) != 1:
                raise NotDivisible("negative power of a non-monomial SPoly")
            (e, c), = self._terms.items()
            return SPoly._raw({e * k: Fraction(1) / c ** (-k)})
        result = SPoly.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def shift(self, k: int) -> "SPoly":
        """Multiply by ``s**k``."""
        return SPoly._raw({e + k: c for e, c in self._terms.items()})

    def invert_s(self) -> "SPoly":
        """Substitute ``s -> 1/s``."""
        return SPoly._raw({-e: c for e, c in self._terms.items()})

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self * (Fraction(1) / other)
        if isinstance(other, SPoly):
            return spoly_exact_div(self, other)
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            other = SPoly.const(other)
        if not isinstance(other, SPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __call__(self, s_value):
        return spoly_eval(self, s_value)

    def evalf(self, s_value) -> complex | float:
        """Floating evaluation (``s_value`` may be float or complex)."""
        return sum(float(c) * s_value ** e for e, c in self._terms.items())

    def split_q(self) -> tuple[dict[int, Fraction], dict[int, Fraction]]:
        """Write ``self = A(q) + s*B(q)``; return the q-exponent maps of A and B."""
        even: dict[int, Fraction] = {}
        odd: dict[int, Fraction] = {}
        for e, c in self._terms.items():
            if e % 2 == 0:
                even[e // 2] = c
            else:
                odd[(e - 1) // 2] = c
        return even, odd

    def __repr__(self):
        return f"SPoly({self.to_str('s')})"

    def to_str(self, var: str = "s") -> str:
        return format_laurent(self._terms, var)


def format_laurent(terms: Mapping[int, Fraction], var: str) -> str:
    """Render ``{exponent: coeff}`` in ascending order, e.g. ``-1 + q``."""
    if not terms:
        return "0"
    out = []
    for e in sorted(terms):
        c = terms[e]
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if e == 0:
            body = str(mag)
        else:
            power = var if e == 1 else f"{var}^{e}"
            body = power if mag == 1 else f"{mag}*{power}"
        if not out:
            out.append(body if sign == "+" else f"-{body}")
        else:
            out.append(f" {sign} {body}")
    return "".join(out)


def spoly_ring_op(a: SPoly, b: SPoly, kind: str) -> SPoly:
    if kind == "add":
        return a + b
    if kind == "sub":
        return a - b
    if kind == "mul":
        return a * b
    raise ValueError(f"unknown ring operation {kind!r}")


def spoly_exact_div(a: SPoly, b: SPoly) -> SPoly:
    """Return ``c`` with ``b * c == a``; raise NotDivisible otherwise.

    Both operands are normalized to ordinary polynomials with nonzero constant
    term, since powers of ``s`` are units in the Laurent ring.
    """
    if b.is_zero():
        raise ZeroDivisionError("division by the zero SPoly")
    if a.is_zero():
        return SPoly()
    vb = b.valuation()
    db = b.degree() - vb
    lead = b.coeff(vb + db)
    bterms = [(e - vb, c) for e, c in b.items()]
    rem = {e: c for e, c in a.items()}
    quot: dict[int, Fraction] = {}
    # Divide from the top; quotient exponents are relative to vb.
    while rem:
        top = max(rem)
        if top - min(rem) < db:
            break
        c = rem[top] / lead
        qe = top - db
        quot[qe - vb] = c
        for e, bc in bterms:
            k = qe + e
            v = rem.get(k, 0) - c * bc
            if v:
                rem[k] = v
            else:
                rem.pop(k, None)
    if rem:
        raise NotDivisible(f"{a!r} is not divisible by {b!r}", SPoly(rem))
    return SPoly._raw(quot)


def spoly_eval(a: SPoly, s_value) -> Fraction:
    """Exact evaluation at a rational point."""
    s_value = as_rational(s_value)
    if s_value == 0:
        if any(e < 0 for e, _ in a.items()):
            raise ZeroBase("negative power of s evaluated at s = 0")
        return a.coeff(0)
    return sum((c * s_value ** e for e, c in a.items()), Fraction(0))


def q_eval(a: SPoly, q_value) -> Fraction:
    """Exact evaluation at ``q = q_value`` for elements with only even s-powers."""
    if not a.only_even():
        raise ValueError("odd power of s has no rational value at rational q")
    q_value = as_rational(q_value)
    if q_value == 0 and any(e < 0 for e, _ in a.items()):
        raise ZeroBase("negative power of q evaluated at q = 0")
    return sum((c * q_value ** (e // 2) for e, c in a.items()), Fraction(0))


def qpoly(coeffs: Iterable[Scalar]) -> SPoly:
    """Build an SPoly from ascending coefficients in ``q``."""
    return SPoly({2 * i: c for i, c in enumerate(coeffs)})


ONE = SPoly.const(1)
ZERO = SPoly()
S = SPoly.monomial(1)
Q = SPoly.monomial(2)

"""Continuous q-Hermite, q^-1-Hermite and classical Hermite polynomials.

The families are built by three-term recurrences.  The generating functions
are expanded independently, from truncated products, and serve as oracles.
"""

from __future__ import annotations

import enum
import threading
from fractions import Fraction

from .exact import ONE, ZERO, SPoly
from .laurent import Kind, XPoly, ZFun


class Family(enum.Enum):
    Q_HERMITE = "q_hermite"
    Q_INV_HERMITE = "q_inv_hermite"
    CLASSICAL_HERMITE = "classical_hermite"


def qpoch_symbolic(a_exponent: int, n: int) -> SPoly:
    """``(q^a; q)_n = prod_{j<n} (1 - q^(a+j))`` as an SPoly."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    out = ONE
    for j in range(n):
        out = out * (ONE - SPoly.monomial(2 * (a_exponent + j)))
    return out


def _qhermite_step(prev: XPoly, cur: XPoly, n: int) -> XPoly:
    # H_{n+1} = 2x H_n - (1 - q^n) H_{n-1}
    return cur.mul_x() * 2 - prev * (ONE - SPoly.monomial(2 * n))


def _classical_step(prev: XPoly, cur: XPoly, n: int) -> XPoly:
    return cur.mul_x() * 2 - prev * (2 * n)


def _sign_flip(p: XPoly, n: int) -> XPoly:
    # i^-n H_n(i x|1/q): the x^k coefficient picks up i^(k-n) = (-1)^((n-k)/2),
    # and q -> 1/q is s -> 1/s
    return XPoly(
        [(c if ((n - k) // 2) % 2 == 0 else -c).invert_s() for k, c in enumerate(p.coeffs)],
        Kind.HYPERBOLIC,
    )


class PolyFamily:
    """Lazily grown, append-only cache of one polynomial family."""

    def __init__(self, kind: Family):
        self.kind = kind
        self._lock = threading.Lock()
        if kind is Family.CLASSICAL_HERMITE:
            self._step = _classical_step
        else:
            self._step = _qhermite_step
        self._base: list[XPoly] = [XPoly([ONE]), XPoly([ZERO, SPoly.const(2)])]
        self.cache: list[XPoly] = []

    def __getitem__(self, n: int) -> XPoly:
        if n < 0:
            raise ValueError("degree must be nonnegative")
        cache = self.cache
        if n < len(cache):
            return cache[n]
        with self._lock:
            while len(self._base) <= n:
                m = len(self._base) - 1
                self._base.append(self._step(self._base[m - 1], self._base[m], m))
            while len(self.cache) <= n:
                k = len(self.cache)
                p = self._base[k]
                if self.kind is Family.Q_INV_HERMITE:
                    p = _sign_flip(p, k)
                self.cache.append(p)
        return self.cache[n]


_FAMILIES = {f: PolyFamily(f) for f in Family}


def family(kind: Family) -> PolyFamily:
    return _FAMILIES[kind]


def qhermite(n: int) -> XPoly:
    """Continuous q-Hermite polynomial ``H_n(x|q)``."""
    return _FAMILIES[Family.Q_HERMITE][n]


def qinv_hermite(n: int) -> XPoly:
    """Continuous q^-1-Hermite polynomial ``h_n(x|q) = i^-n H_n(i x|1/q)``.

    The base inversion is what makes ``h_n`` an eigenfunction of
    :func:`~qhermite.operators.apply_tildeD` with eigenvalue ``q^(n/2)`` and
    matches the product generating function ``(t/w, -t w; q)_inf``.
    """
    return _FAMILIES[Family.Q_INV_HERMITE][n]


def classical_hermite(n: int) -> XPoly:
    """Physicists' Hermite polynomial ``H_n(x)``."""
    return _FAMILIES[Family.CLASSICAL_HERMITE][n]


# Truncated bivariate series: list indexed by power of u, each a dict q-power -> coeff.

def _series_mul_linear(series, qpow: int, sign: int, order: int, qmax: int):
    """Multiply by ``(1 + sign * u q^qpow)`` in place-free fashion."""
    out = [dict(c) for c in series]
    for j in range(order - 1, -1, -1):
        for e, c in series[j].items():
            e2 = e + qpow
            if e2 <= qmax:
                out[j + 1][e2] = out[j + 1].get(e2, 0) + sign * c
    return out


def _series_div_linear(series, qpow: int, order: int, qmax: int):
    """Multiply by ``1/(1 - u q^qpow)`` = sum_j u^j q^(j qpow)."""
    out = [dict(c) for c in series]
    # running recursion: out_j = series_j + q^qpow out_{j-1}
    for j in range(1, order + 1):
        for e, c in out[j - 1].items():
            e2 = e + qpow
            if e2 <= qmax:
                out[j][e2] = out[j].get(e2, 0) + c
    return out


def _one_series(order: int):
    return [{0: 1}] + [{} for _ in range(order)]


def _inverse_product_series(order: int, qmax: int):
    """Coefficients of ``1/(u; q)_inf`` in u, each truncated at ``q^qmax``."""
    series = _one_series(order)
    for k in range(qmax + 1):
        series = _series_div_linear(series, k, order, qmax)
    return series


def _product_series(order: int, qmax: int, sign: int):
    """Coefficients of ``prod_k (1 + sign u q^k)`` truncated at ``q^qmax``."""
    series = _one_series(order)
    for k in range(qmax + 1):
        series = _series_mul_linear(series, k, sign, order, qmax)
    return series


def _qseries_mul(a: dict, b: dict, qmax: int) -> dict:
    out: dict[int, int] = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            e = e1 + e2
            if e <= qmax:
                out[e] = out.get(e, 0) + c1 * c2
    return out


def _qseries_mul_poly(a: dict, p: SPoly, qmax: int) -> dict:
    return _qseries_mul(a, {e // 2: c for e, c in p.items()}, qmax)


def _to_spoly(series: dict, valid_up_to: int, shift: int = 0) -> SPoly:
    """Convert a q-series known exactly up to ``q^valid_up_to`` to an SPoly.

    Exact whenever the true coefficient is a polynomial of degree at most
    ``valid_up_to - shift``; :func:`_qmax_for` guarantees that.
    """
    terms = {}
    for e, c in series.items():
        if c and e <= valid_up_to:
            terms[2 * (e - shift)] = c
    return SPoly(terms)


def _qmax_for(order: int, extra: int = 0) -> int:
    # cleared coefficients have q-degree at most order^2/4, or order(order-1)/2
    # before the q-power shift of the h_n series
    return order * order // 4 + extra + 2 * order + 8


def genfun15_coeffs(order: int) -> list[ZFun]:
    """Cleared coefficients of ``1/(t z, t/z; q)_inf`` in powers of ``t``.

    Term ``n`` is ``(q;q)_n`` times the coefficient of ``t^n``; it should equal
    ``x_to_z(H_n)``.  Both infinite products are expanded factor by factor as
    geometric series and truncated at ``t^order`` and a q-order large enough
    for the cleared coefficients to be exact.
    """
    if order < 0:
        raise ValueError("order must be nonnegative")
    qmax = _qmax_for(order)
    c = _inverse_product_series(order, qmax)
    out = []
    for n in range(order + 1):
        clear = qpoch_symbolic(1, n)
        terms = {}
        for j in range(n + 1):
            # z^j from the first product, z^-(n-j) from the second
            prod = _qseries_mul(c[j], c[n - j], qmax)
            prod = _qseries_mul_poly(prod, clear, qmax)
            terms[2 * j - n] = _to_spoly(prod, qmax)
        out.append(ZFun(terms, Kind.COSINE))
    return out


def genfun_hn_coeffs(order: int) -> list[ZFun]:
    """Cleared coefficients of ``(t/w, -t w; q)_inf`` in powers of ``t``.

    Term ``n`` is divided by ``q^(n(n-1)/2)`` and multiplied by ``(q;q)_n``; it
    should equal ``x_to_z(h_n)`` in the hyperbolic variable ``w``.
    """
    if order < 0:
        raise ValueError("order must be nonnegative")
    qmax = _qmax_for(order, extra=order * (order - 1) // 2)
    # h_n carries q-powers in [-n^2/4, 0]; shifted up by n(n-1)/2 they stay in [0, qmax]
    minus = _product_series(order, qmax, -1)
    plus = _product_series(order, qmax, +1)
    out = []
    for n in range(order + 1):
        clear = qpoch_symbolic(1, n)
        shift = n * (n - 1) // 2
        terms = {}
        for j in range(n + 1):
            # w^-j from (t/w; q), w^(n-j) from (-t w; q)
            prod = _qseries_mul(minus[j], plus[n - j], qmax)
            prod = _qseries_mul_poly(prod, clear, qmax)
            terms[n - 2 * j] = _to_spoly(prod, qmax, shift)
        out.append(ZFun(terms, Kind.HYPERBOLIC))
    return out


def hermite_leading_ok(p: XPoly, n: int) -> bool:
    return p.degree == n and p.leading() == SPoly.const(Fraction(2) ** n)

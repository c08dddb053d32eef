"""Floating-point checks: weight, quadrature inner products and q -> 1 limits.

``q`` always arrives as an exact rational and is converted to float only at
the last moment, so the symbolic and numeric layers agree on its value.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .exact import SPoly, as_rational, q_eval
from .laurent import XPoly, x_to_z, z_to_x
from .operators import apply_calD
from .polynomials import classical_hermite, qhermite


class DomainError(ValueError):
    pass


def qpoch_inf_with_tail(base: float, q: float, tol: float = 1e-16) -> tuple[float, float]:
    """``(base; q)_inf`` and the tail bound at which the product was cut.

    Stops once ``sum_{j >= k} |base| q^j = |base| q^k / (1 - q)`` is below ``tol``.
    """
    if abs(q) >= 1:
        raise DomainError("(a; q)_inf needs |q| < 1")
    if tol <= 0:
        raise ValueError("tol must be positive")
    prod = 1.0
    a = abs(base)
    k = 0
    qk = 1.0
    while True:
        tail = a * abs(qk) / (1 - abs(q))
        if tail < tol:
            return prod, tail
        prod *= 1 - base * qk
        qk *= q
        k += 1


def qpoch_inf_numeric(base: float, q: float, tol: float = 1e-16) -> float:
    return qpoch_inf_with_tail(base, q, tol)[0]


def default_truncation(q: float, eps: float = 1e-14) -> int:
    """Smallest K with ``q^K / (1 - q) < eps``."""
    if not 0 <= q < 1:
        raise DomainError("q must lie in [0, 1)")
    if q == 0:
        return 1
    return max(1, math.ceil(math.log(eps * (1 - q)) / math.log(q)))


def weight_times_sin(theta, q: float, truncation: int | None = None):
    """``w(cos theta|q) * sin theta``, smooth on ``[0, pi]``; accepts arrays."""
    if truncation is None:
        truncation = default_truncation(q)
    c2 = np.cos(2 * np.asarray(theta, dtype=float))
    out = np.ones_like(c2)
    qk = 1.0
    for _ in range(truncation):
        out = out * (1 - 2 * c2 * qk + qk * qk)
        qk *= q
    return out


def eval_weight(theta: float, q: float, truncation: int | None = None) -> float:
    """Orthogonality weight ``(e^{2i theta}, e^{-2i theta}; q)_inf / sin theta``."""
    if not 0 < theta < math.pi:
        raise DomainError("weight is singular at theta = 0 and theta = pi")
    return float(weight_times_sin(theta, q, truncation) / math.sin(theta))


def weight_complex(z: complex, q: float, truncation: int | None = None) -> complex:
    """The weight as a function of ``z = e^{i theta}``, continued off the circle.

    Uses the raw complex product, independent of the real pairing above.
    """
    if truncation is None:
        truncation = default_truncation(q)
    val = 2j / (z - 1 / z)
    for k in range(truncation):
        val *= (1 - z * z * q**k) * (1 - q**k / (z * z))
    return complex(val)


@dataclass(frozen=True)
class QuadratureSpec:
    q_value: Fraction
    node_count: int = 400
    weight_truncation: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "q_value", as_rational(self.q_value))
        if self.node_count < 2:
            raise ValueError("node_count must be at least 2")
        if not 0 < self.q_value < 1:
            raise DomainError("q must lie strictly between 0 and 1")
        if self.weight_truncation is None:
            object.__setattr__(self, "weight_truncation", default_truncation(float(self.q_value)))

    @property
    def q(self) -> float:
        return float(self.q_value)

    def nodes(self) -> tuple[np.ndarray, np.ndarray]:
        """Gauss-Legendre nodes and weights on ``[0, pi]``."""
        t, wts = np.polynomial.legendre.leggauss(self.node_count)
        return (t + 1) * (math.pi / 2), wts * (math.pi / 2)


def specialize(p: XPoly, q_value) -> np.ndarray:
    """Float coefficients of ``p`` at ``q = q_value`` (lowest degree first)."""
    q_value = as_rational(q_value)
    out = []
    for c in p.coeffs:
        if c.only_even():
            out.append(float(q_eval(c, q_value)))
        else:
            out.append(c.evalf(math.sqrt(q_value)))
    return np.array(out, dtype=float)


def _values_on_nodes(p: XPoly, spec: QuadratureSpec, x: np.ndarray) -> np.ndarray:
    return np.polynomial.polynomial.polyval(x, specialize(p, spec.q_value)) if p.coeffs else np.zeros_like(x)


def inner_product(f: XPoly, g: XPoly, spec: QuadratureSpec) -> float:
    """``(1/2pi) int_{-1}^{1} f g w dx``, computed over theta in ``[0, pi]``."""
    theta, wts = spec.nodes()
    x = np.cos(theta)
    ws = weight_times_sin(theta, spec.q, spec.weight_truncation)
    integrand = _values_on_nodes(f, spec, x) * _values_on_nodes(g, spec, x) * ws
    return float(np.dot(wts, integrand) / (2 * math.pi))


def gram_matrix(max_n: int, spec: QuadratureSpec) -> np.ndarray:
    """Matrix of ``<H_m, H_n>``; the diagonal should be ``1/(q^{n+1}; q)_inf``."""
    if max_n < 0:
        raise ValueError("max_n must be nonnegative")
    theta, wts = spec.nodes()
    x = np.cos(theta)
    ws = weight_times_sin(theta, spec.q, spec.weight_truncation)
    vals = np.array([_values_on_nodes(qhermite(n), spec, x) for n in range(max_n + 1)])
    return (vals * (wts * ws)) @ vals.T / (2 * math.pi)


def expected_norms(max_n: int, q: float) -> np.ndarray:
    return np.array([1 / qpoch_inf_numeric(q ** (n + 1), q) for n in range(max_n + 1)])


@dataclass
class LimitReport:
    n: int
    q_sequence: list[Fraction]
    deviations: list[float]
    which: str = "eq16"
    grid: list[float] = field(default_factory=list)

    def ratios(self) -> list[float | None]:
        out = []
        for a, b in zip(self.deviations, self.deviations[1:]):
            out.append(None if a == 0 else b / a)
        return out

    def all_zero(self) -> bool:
        return all(d == 0 for d in self.deviations)

    def first_order(self, lo: float = 0.4, hi: float = 0.6) -> bool:
        """Exactly zero throughout, or every successive ratio in ``[lo, hi]``."""
        if self.all_zero():
            return True
        rs = self.ratios()
        return all(r is not None and lo <= r <= hi for r in rs)

    def monotone(self) -> bool:
        return all(b <= a for a, b in zip(self.deviations, self.deviations[1:]))


def dyadic_q_sequence(k_min: int = 4, k_max: int = 12) -> list[Fraction]:
    return [1 - Fraction(1, 2**k) for k in range(k_min, k_max + 1)]


DEFAULT_GRID = tuple(np.linspace(-1.0, 1.0, 21))


def _check_q_list(q_list):
    qs = [as_rational(q) for q in q_list]
    if any(not 0 < q < 1 for q in qs):
        raise DomainError("q values must lie in (0, 1)")
    if any(b <= a for a, b in zip(qs, qs[1:])):
        raise ValueError("q sequence must be strictly increasing")
    return qs


def rescaled_qhermite(n: int, q_value) -> list[Fraction]:
    """Exact coefficients of ``kappa^-n H_n(kappa x|q)``, ``kappa^2 = (1-q)/2``.

    Only even powers of ``kappa`` survive because ``H_n`` has parity ``n``.
    """
    q_value = as_rational(q_value)
    kappa2 = (1 - q_value) / 2
    out = []
    for k, c in enumerate(qhermite(n).coeffs):
        if (n - k) % 2:
            out.append(Fraction(0))
            continue
        out.append(q_eval(c, q_value) / kappa2 ** ((n - k) // 2))
    return out


def _max_on_grid(coeffs: Sequence[float], grid: Sequence[float]) -> float:
    if not any(coeffs):
        return 0.0
    vals = np.polynomial.polynomial.polyval(np.asarray(grid, dtype=float), np.asarray(coeffs, dtype=float))
    return float(np.max(np.abs(vals)))


def limit16_check(n: int, q_list: Sequence, grid: Sequence[float] = DEFAULT_GRID) -> LimitReport:
    """Deviation of ``kappa^-n H_n(kappa x|q)`` from ``H_n(x)`` along ``q_list``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    qs = _check_q_list(q_list)
    target = [c.coeff(0) for c in classical_hermite(n).coeffs]
    devs = []
    for q in qs:
        got = rescaled_qhermite(n, q)
        diff = [float(a - b) for a, b in zip(got, target)]
        devs.append(_max_on_grid(diff, grid))
    return LimitReport(n, qs, devs, "eq16", list(grid))


def _quadratic_to_float(a: Fraction, b: Fraction, q: Fraction) -> float:
    """Float value of ``a + b sqrt(q)`` without cancellation.

    When ``a`` and ``b sqrt(q)`` nearly cancel, use the conjugate:
    ``(a^2 - q b^2) / (a - b sqrt(q))``, whose numerator is exact.
    """
    if a == 0 or b == 0 or (a > 0) == (b > 0):
        return float(a) + float(b) * math.sqrt(q)
    num = a * a - q * b * b
    return float(num) / (float(a) - float(b) * math.sqrt(q))


def _split_at_q(c: SPoly, q: Fraction) -> tuple[Fraction, Fraction]:
    even, odd = c.split_q()
    a = sum((v * q**e for e, v in even.items()), Fraction(0))
    b = sum((v * q**e for e, v in odd.items()), Fraction(0))
    return a, b


def limit17_rhs(m: int) -> list[Fraction]:
    """Coefficients of ``(1/2)(x - (1/2) d/dx) d/dx x^m``."""
    out = [Fraction(0)] * (m + 1)
    if m >= 1:
        out[m] += Fraction(m, 2)
    if m >= 2:
        out[m - 2] -= Fraction(m * (m - 1), 4)
    return out


def limit17_check(m: int, q_list: Sequence, grid: Sequence[float] = DEFAULT_GRID) -> LimitReport:
    """Deviation of ``(calD_{kappa x} - I)/(1 - q)`` on ``x^m`` from its limit.

    The operator acts on ``X = kappa x``: ``x^m = kappa^-m X^m`` is mapped by
    the exact operator, then re-expressed in ``x``.  Coefficients live in
    ``Q(sqrt q)`` and are evaluated without catastrophic cancellation.
    """
    if m < 0:
        raise ValueError("m must be nonnegative")
    qs = _check_q_list(q_list)
    mono = XPoly([0] * m + [1])
    image = z_to_x(apply_calD(x_to_z(mono)))
    rhs = limit17_rhs(m)
    devs = []
    for q in qs:
        kappa2 = (1 - q) / 2
        diff = []
        for j in range(m + 1):
            a, b = _split_at_q(image.coeff(j), q)
            if j == m:
                a -= 1
            if (m - j) % 2:
                # parity forbids these; they must be zero
                if a or b:
                    raise ArithmeticError("operator broke parity")
                diff.append(0.0)
                continue
            scale = 1 / (kappa2 ** ((m - j) // 2) * (1 - q))
            a, b = a * scale - rhs[j], b * scale
            diff.append(_quadratic_to_float(a, b, q))
        devs.append(_max_on_grid(diff, grid))
    return LimitReport(m, qs, devs, "eq17", list(grid))

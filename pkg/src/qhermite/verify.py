"""Identity suites: run an identity over a range of degrees and collect residuals."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterator

from .exact import ONE, S, SPoly
from .laurent import Dressed, Kind, XPoly, ZFun, x_to_z
from .operators import (
    OpReport,
    apply_calD,
    apply_calD_dressed,
    apply_tildeD,
    eq3_residual_dressed,
    eq7_lhs_cleared,
    eq12_residual,
    product_rule_residual,
    apply_Aq,
    apply_Dq,
)
from .polynomials import genfun15_coeffs, genfun_hn_coeffs, qhermite, qinv_hermite

IDENTITIES = (
    "eq3",
    "eq7",
    "eq8",
    "eq12",
    "eq14",
    "eq15",
    "eq18",
    "eq20",
    "genfun-h",
    "product-rule",
)

DEFAULT_MAX_N = {
    "eq3": 20,
    "eq7": 20,
    "eq8": 30,
    "eq12": 40,
    "eq14": 30,
    "eq15": 12,
    "eq18": 20,
    "eq20": 30,
    "genfun-h": 12,
    "product-rule": 8,
}


@dataclass
class SuiteResult:
    identity: str
    reports: list[OpReport] = field(default_factory=list)

    @property
    def verified(self) -> bool:
        return all(r.verified for r in self.reports)

    @property
    def cases(self) -> int:
        return len(self.reports)

    @property
    def first_failure(self) -> OpReport | None:
        return next((r for r in self.reports if not r.verified), None)

    @property
    def max_error(self) -> float:
        return max((float(r.residual_size) for r in self.reports), default=0.0)


def _h(n: int) -> ZFun:
    return x_to_z(qhermite(n))


def _hyp(n: int) -> ZFun:
    return x_to_z(qinv_hermite(n))


def _eq14(max_n, mutate, **_) -> Iterator[OpReport]:
    for n in range(max_n + 1):
        m = n + 1 if mutate else n
        h = _h(n)
        yield OpReport("eq14", n, apply_calD(h) - h * SPoly.monomial(-m))


def _eq8(max_n, mutate, **_):
    for n in range(max_n + 1):
        m = n + 1 if mutate else n
        h = _h(n)
        yield OpReport("eq8", n, apply_calD(apply_calD(h)) - h * SPoly.monomial(-2 * m))


def _eq7(max_n, mutate, **_):
    for n in range(max_n + 1):
        yield OpReport("eq7", n, eq7_lhs_cleared(_h(n), n + 1 if mutate else n))


def _eq3(max_n, mutate, **_):
    for n in range(max_n + 1):
        yield OpReport("eq3", n, eq3_residual_dressed(n, _h(n), n + 1 if mutate else n))


def _eq18(max_n, mutate, **_):
    for n in range(max_n + 1):
        m = n + 1 if mutate else n
        d = Dressed(_h(n), 1)
        image = apply_calD_dressed(d, inverted=True)
        yield OpReport("eq18", n, image - d * SPoly.monomial(-(m + 1)))


def _eq20(max_n, mutate, **_):
    for n in range(max_n + 1):
        m = n + 1 if mutate else n
        h = _hyp(n)
        yield OpReport("eq20", n, apply_tildeD(h) - h * SPoly.monomial(m))


def _eq12(max_n, mutate, **_):
    scalar = None
    if mutate:
        # wrong sign on the x D_q term
        scalar = (S * S - ONE) * Fraction(1, 2) * SPoly.monomial(-1)
    for k in range(max_n + 1):
        yield OpReport("eq12", k, eq12_residual(k, scalar))


def _genfun(series_fn: Callable, poly_fn: Callable):
    def run(max_n, mutate, **_):
        terms = series_fn(max_n + (1 if mutate else 0))
        for n in range(max_n + 1):
            m = n + 1 if mutate else n
            yield OpReport("genfun", n, terms[m] - x_to_z(poly_fn(n)))

    return run


def random_spoly(rng: random.Random, max_terms: int = 3, span: int = 3) -> SPoly:
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        e = rng.randint(-span, span)
        terms[e] = Fraction(rng.randint(-9, 9), rng.randint(1, 4))
    return SPoly(terms)


def random_symmetric(rng: random.Random, max_degree: int) -> ZFun:
    """``x_to_z`` of a random polynomial in x; symmetric by construction."""
    deg = rng.randint(0, max_degree)
    coeffs = [random_spoly(rng) for _ in range(deg + 1)]
    if coeffs[-1].is_zero():
        coeffs[-1] = ONE
    return x_to_z(XPoly(coeffs, Kind.COSINE))


def _product_rule(max_n, mutate, samples=100, seed=0, **_):
    rng = random.Random(seed)
    for i in range(samples):
        f = random_symmetric(rng, max_n)
        g = random_symmetric(rng, max_n)
        if mutate:
            res = apply_Dq(f * g) - apply_Aq(f) * apply_Dq(g)
        else:
            res = product_rule_residual(f, g)
        yield OpReport("product-rule", i, res)


_RUNNERS = {
    "eq3": _eq3,
    "eq7": _eq7,
    "eq8": _eq8,
    "eq12": _eq12,
    "eq14": _eq14,
    "eq15": _genfun(genfun15_coeffs, qhermite),
    "eq18": _eq18,
    "eq20": _eq20,
    "genfun-h": _genfun(genfun_hn_coeffs, qinv_hermite),
    "product-rule": _product_rule,
}


def run_identity(
    identity: str,
    max_n: int | None = None,
    mutate: bool = False,
    samples: int = 100,
    seed: int = 0,
) -> SuiteResult:
    """Run one identity suite.

    ``max_n`` is the largest degree (``k`` for eq12, x-degree for
    product-rule).  ``mutate`` shifts the eigenvalue index by one, or breaks
    the identity in an equivalent way where there is no eigenvalue.
    """
    if identity not in _RUNNERS:
        raise KeyError(identity)
    if max_n is None:
        max_n = DEFAULT_MAX_N[identity]
    if max_n < 0:
        raise ValueError("max_n must be nonnegative")
    result = SuiteResult(identity)
    for report in _RUNNERS[identity](max_n, mutate, samples=samples, seed=seed):
        result.reports.append(report)
    return result

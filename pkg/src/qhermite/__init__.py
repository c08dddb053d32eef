"""Exact q-difference calculus for continuous q-Hermite polynomials."""

from .exact import NotDivisible, Rational, SPoly, ZeroBase, spoly_eval, spoly_exact_div, spoly_ring_op
from .laurent import (
    Dressed,
    Kind,
    NotSymmetric,
    XPoly,
    ZFun,
    dressed_shift,
    exact_div_binomial,
    scale_substitute,
    x_to_z,
    z_to_x,
)
from .operators import (
    OpReport,
    apply_Aq,
    apply_calD,
    apply_calD_dressed,
    apply_Dq,
    apply_tildeD,
    eq3_residual_dressed,
    eq7_lhs_cleared,
    eq12_residual,
)
from .polynomials import (
    PolyFamily,
    classical_hermite,
    genfun15_coeffs,
    genfun_hn_coeffs,
    qhermite,
    qinv_hermite,
    qpoch_symbolic,
)

__version__ = "0.1.0"

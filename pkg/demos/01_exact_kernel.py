# %% [markdown]
# # Exact arithmetic in s = q^(1/2)
#
# Every coefficient in the package is a Laurent polynomial in s with rational
# coefficients, so identities either hold exactly or leave a visible residual.

# %%
from fractions import Fraction

from qhermite import SPoly, XPoly, qhermite, x_to_z, z_to_x
from qhermite.exact import ONE, Q, S
from qhermite.laurent import render_xpoly

sinv = SPoly.monomial(-1)
print((S - sinv) * (S + sinv))
print((ONE - Q**3) / (ONE - Q))  # exact division, q-integer [3]_q

# %% [markdown]
# Polynomials in x = cos(theta) are stored by their x-coefficients and moved to
# z = e^(i theta) when an operator needs shifts.

# %%
for n in range(5):
    print(n, render_xpoly(qhermite(n)))

h3 = x_to_z(qhermite(3))
print(h3)
assert z_to_x(h3) == qhermite(3)

# %% [markdown]
# Coefficients specialize to exact rationals at any rational q.

# %%
from qhermite.exact import q_eval

print([q_eval(c, Fraction(1, 2)) for c in qhermite(4).coeffs])

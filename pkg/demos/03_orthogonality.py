# %% [markdown]
# # Orthogonality on [0, pi]
#
# Gauss-Legendre quadrature with the theta-function weight. The Gram matrix
# should be diagonal with entries 1/(q^(n+1); q)_inf.

# %%
from fractions import Fraction

import numpy as np

from qhermite.numerics import QuadratureSpec, expected_norms, gram_matrix

np.set_printoptions(precision=3, linewidth=110)

for q in (Fraction(1, 4), Fraction(1, 2), Fraction(3, 4)):
    g = gram_matrix(8, QuadratureSpec(q))
    off = np.abs(g - np.diag(np.diag(g))).max()
    rel = np.abs(np.diag(g) / expected_norms(8, float(q)) - 1).max()
    print(f"q={q}: max offdiag {off:.1e}, diag rel err {rel:.1e}")

# %% [markdown]
# Too few nodes and the matrix stops being diagonal.

# %%
for nodes in (6, 12, 25, 50, 100):
    g = gram_matrix(8, QuadratureSpec(Fraction(1, 2), nodes))
    print(nodes, f"{np.abs(g - np.diag(np.diag(g))).max():.1e}")

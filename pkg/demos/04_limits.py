# %% [markdown]
# # The q -> 1 limit
#
# Along q = 1 - 2^-k the rescaled q-Hermite polynomials approach the classical
# Hermite polynomials and D_q approaches d/dx. Both errors halve with each step.

# %%
from qhermite.numerics import dyadic_q_sequence, limit16_check, limit17_check

qs = dyadic_q_sequence(4, 12)

# for n <= 2 the deviation is exactly zero at every q, so no ratios exist

for n in range(6):
    rep = limit16_check(n, qs)
    ratios = ", ".join("-" if r is None else f"{r:.3f}" for r in rep.ratios())
    print(f"H_{n}: {ratios}")

# %%
for m in range(7):
    rep = limit17_check(m, qs)
    devs = ", ".join(f"{d:.1e}" for d in rep.deviations[::2])
    print(f"x^{m}: {devs}")

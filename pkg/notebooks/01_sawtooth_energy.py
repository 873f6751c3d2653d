# %% [markdown]
# # The sawtooth energy measure
#
# Energy in the sawtooth model is read off from the dimensionless radius
# `r**2 = 2 H / (hbar omega)` through hat functions `T_n`. Each hat peaks at
# `r**2 = n` and the level it belongs to has energy `n hbar omega / 2`.

# %%
import numpy as np

from psosc import Model, OscillatorParams, T, build, energy_distribution
from psosc.figures import figure_table

params = OscillatorParams()

# %% [markdown]
# The hats sum to one and their first moment reproduces `r**2`, which is why
# the mean sawtooth energy always equals the classical mean energy.

# %%
x = np.linspace(0, 6, 13)
table = np.array([T(n, x) for n in range(8)])
print("sum_n T_n     :", table.sum(axis=0))
print("sum_n n T_n - x:", np.arange(8) @ table - x)

# %% [markdown]
# Three named states and their energy distributions. The point mass at the
# origin has zero energy with certainty, the uniform disk splits evenly
# between the two lowest levels and the ring state sits on `hbar omega`.

# %%
for name in ("rho0", "rho_tn", "rho_nn"):
    dist = energy_distribution(Model.SAWTOOTH, build(name, params), 4)
    print(f"{name:7s}", np.round(dist.probabilities, 12))

# %% [markdown]
# The same data that goes into the first figure is available as a table.

# %%
header, rows = figure_table("fig2", params)
print(header)
for row in rows[::50]:
    print([round(v, 3) for v in row])

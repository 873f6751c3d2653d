# %% [markdown]
# # An energy eigenstate that is not a probability density
#
# `rho_nn` lives on the annulus `1 <= r <= sqrt(2)`. It is built so that all
# of its weight lands on the `hbar omega` level, and it pays for that by
# dipping below zero.

# %%
import math

import numpy as np

from psosc import Axis, Model, OscillatorParams, build, energy_distribution, marginal, validate
from psosc.claims import monte_carlo_mass, rho_nn_minimum

params = OscillatorParams()
state = build("rho_nn", params)
comp = state.components[0]

# %%
r = np.linspace(1.0, math.sqrt(2.0), 9)
print("rho_nn(r):", np.round(comp(r), 4))
print("minimum   :", rho_nn_minimum(params))

# %% [markdown]
# Before trusting quadrature, count the mass by brute force.

# %%
mc, sem = monte_carlo_mass(state)
print(f"Monte Carlo mass {mc:.5f} +- {sem:.5f}; exact mass {state.total_mass:.12f}")
print("energy distribution:", np.round(energy_distribution(Model.SAWTOOTH, state, 4).probabilities, 10))

# %% [markdown]
# Negative values in phase space do not make it an invalid state. What
# matters is that every marginal, at every time, is a genuine probability
# density. The state is radially symmetric, so time evolution leaves it alone
# and one marginal settles the question.

# %%
marg = marginal(state, Axis.POSITION)
xs = np.linspace(-1.5, 1.5, 13)
print("position marginal:", np.round(marg.density(xs), 4))
print("verdict:", validate(state).verdict)

# %% [markdown]
# # Quantum energy measure in phase space
#
# In the quantum model the weight of level `n` is the Wigner function of the
# `n`-th eigenstate, `2 (-1)**n exp(-r**2) L_n(2 r**2)`. The weights sum to one
# only in a weak sense, which shows up as a slowly converging series.

# %%
import numpy as np

from psosc import Model, OscillatorParams, energy_distribution
from psosc.catalog import gaussian_grid
from psosc.measures import expected_hamiltonian
from psosc.wigner import cesaro_partial_sums, eigenstate_norm, quantum_purity_overlap, quantum_weight

params = OscillatorParams()

# %%
print("norms   :", [round(eigenstate_norm(n, params), 12) for n in range(6)])
print("overlaps:", np.round([[quantum_purity_overlap(m, n, params) for n in range(4)] for m in range(4)], 12))

# %% [markdown]
# Pointwise, the partial sums at `r**2 = 1` oscillate; their running means
# settle on one.

# %%
terms = [quantum_weight(n, 1.0) for n in range(201)]
partial = np.cumsum(terms)
print("partial sums n=196..200:", np.round(partial[-5:], 3))
print("Cesaro mean at n=200   :", cesaro_partial_sums(terms)[-1])

# %% [markdown]
# Paired with a smooth state the series converges fast. A Gaussian of width
# `sigma >= 1` has a geometric (thermal) energy distribution. A narrower one
# beats the uncertainty bound and is not a quantum state, which shows up as
# signed level weights. Either way the mean energy matches the classical one.

# %%
for width in (0.5, 1.0, 2.0):
    state = gaussian_grid(params, width=width, half_width=11.0, nodes=441)
    dist = energy_distribution(Model.QUANTUM, state, 64)
    a = 1 / width**2
    thermal = [2 * a * (1 - a) ** n / (1 + a) ** (n + 1) for n in range(4)]
    print(f"width {width}: P_0..3 {np.round(dist.probabilities[:4], 6)} thermal {np.round(thermal, 6)}"
          f" mean {dist.mean():.8f} classical {expected_hamiltonian(state):.8f}")

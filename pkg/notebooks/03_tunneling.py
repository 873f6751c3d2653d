# %% [markdown]
# # Tunneling without a barrier
#
# A state tunnels at threshold `alpha` when finding the particle where the
# potential exceeds `alpha` is more likely than finding its energy above
# `alpha`.

# %%
import math

import numpy as np

from psosc import Model, OscillatorParams, build, potential_exceedance_closed_form, tunneling_test

params = OscillatorParams()
hw = params.quantum

# %% [markdown]
# The uniform disk has energy above any `alpha < hbar omega / 2` with
# probability one half, while its position spreads out to the turning
# points. For small thresholds the potential side wins.

# %%
disk = build("rho_tn", params)
for frac in (0.01, 0.05, 0.1, 0.2, 0.24):
    rep = tunneling_test(disk, Model.SAWTOOTH, frac * hw)
    exact = potential_exceedance_closed_form(frac * hw, params)
    print(f"alpha={frac:4.2f} hw  P(V>a)={rep.p_potential:.6f} (closed form {exact:.6f})"
          f"  P(H>a)={rep.p_energy:.3f}  tunnels={rep.tunneling}")

# %% [markdown]
# The sharp ground state and the ring eigenstate never tunnel.

# %%
for name in ("rho0", "rho_nn"):
    verdicts = [tunneling_test(build(name, params), Model.SAWTOOTH, f * hw).tunneling
                for f in np.linspace(0.05, 1.5, 30)]
    print(name, "tunnels somewhere:", any(verdicts))

# %% [markdown]
# The quantum ground state has energy `hbar omega / 2`, so below that
# threshold `P(H > alpha) = 1` and nothing can beat it. At and above its own
# energy the Gaussian tails win.

# %%
ground = build("quantum_ground_grid", params)
for frac in (0.45, 0.5, 0.55, 1.0):
    rep = tunneling_test(ground, Model.QUANTUM, frac * hw)
    print(f"alpha={frac:4.2f} hw  P(V>a)={rep.p_potential:.4f}  P(H>a)={rep.p_energy:.4f}"
          f"  tunnels={rep.tunneling}  erfc check={math.erfc(math.sqrt(2 * frac)):.4f}")

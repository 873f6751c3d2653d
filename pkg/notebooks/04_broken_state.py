# %% [markdown]
# # A state that breaks under time evolution
#
# Three signed point masses. At `t = 0` the negative atom hides behind a
# positive one in both marginals. As the flow rotates phase space the two
# separate and a negative probability appears.

# %%
import math

from psosc import Axis, OscillatorParams, ValidationConfig, build, evolve_state, marginal, validate
from psosc.figures import figure_table

params = OscillatorParams()
state = build("rho_bn", params)

# %%
print("t = 0 checks only:", validate(state, cfg=ValidationConfig(time_samples=1)).verdict)
for t in (0.0, math.pi / 8, math.pi / 4, math.pi / 2):
    marg = marginal(evolve_state(state, t), Axis.POSITION)
    atoms = ", ".join(f"{w:+.0f}@{q:+.4f}" for q, w in marg.atoms)
    print(f"omega t = {t:.4f}: position atoms {atoms}")

# %% [markdown]
# At `omega t = pi/4` the negative atom sits at `q = sqrt(hbar / 2 m omega)`.
# The atoms all stay on their circles, so the negative one can never
# reach `|q| > sqrt(hbar / m omega)`.

# %%
report = validate(state)
times = sorted({round(v.time, 6) for v in report.marginal_violations})
print("verdict:", report.verdict, "| violated at", len(times), "of 180 sampled times")
print("includes pi/4:", round(math.pi / 4, 6) in times)

# %%
header, rows = figure_table("fig4", params)
for row in rows[:6]:
    print(dict(zip(header, row)))

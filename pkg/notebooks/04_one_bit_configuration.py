# %% [markdown]
# # 1-bit configuration
#
# Each element has two states half a turn apart.  The configurator sweeps a
# common reference phase and lets every element pick the state closest to it.
# On small surfaces it can be checked against full enumeration.

# %%
from dataclasses import replace

import numpy as np

from rispower import RisLayout, exhaustive_configure, one_bit_configure, received_power, table1_scene
from rispower.control import baseline_grids, format_states_csv

scene = table1_scene()
rep = one_bit_configure(scene)
print(f"reference phase {np.rad2deg(rep.reference_phase):.2f} deg, Pr/Pt = {10 * np.log10(rep.pr):.2f} dB")
print(f"state-1 fraction: {rep.states.mean():.3f}")
print(format_states_csv(rep.states[:3]))

# %%
for seed in range(3):
    g = baseline_grids(scene, "uniform-random", seed=seed)
    print(f"random grid {seed}: {received_power(scene, g).attenuation_db:.2f} dB")

# %% [markdown]
# Reference scan against enumeration on a 2 x 2 patch.

# %%
small = replace(
    scene,
    layout=RisLayout(2, 2, scene.layout.dx, scene.layout.dy),
)
print(one_bit_configure(small).pr, exhaustive_configure(small).pr)

# %% [markdown]
# # Surface geometry and the near/far-field boundary
#
# The 20 x 55 element prototype at 5.8 GHz.  Elements are indexed from the
# top-left corner; the surface center is the origin.

# %%
import numpy as np

from rispower import element_position, fraunhofer_distance, path_geometry, table1_scene

scene = table1_scene()
lay = scene.layout
print(f"wavelength: {scene.wavelength * 1e3:.3f} mm")
print(f"element area: {lay.element_area * 1e6:.3f} mm^2, aperture {lay.cols * lay.dx:.3f} x {lay.rows * lay.dy:.3f} m")
print("corner (1, 1):", element_position(1, 1, lay))
print("corner (20, 55):", element_position(20, 55, lay))

# %% [markdown]
# Two readings of the boundary formula: dividing the doubled aperture by the
# wavelength gives the ~6 m figure used to split indoor and outdoor tests,
# dividing by its square gives the much larger classical value.

# %%
for conv in ("effective", "as-printed"):
    print(f"{conv:>10}: {fraunhofer_distance(lay, scene.wavelength, conv):7.2f} m")

# %% [markdown]
# Per-element path lengths for TX on axis at 3 m and RX at 2 m, 30 degrees.

# %%
paths = path_geometry(lay, scene.tx, scene.rx, scene.wavelength)
print(f"d_t range: {paths.d_t.min():.4f} .. {paths.d_t.max():.4f} m")
print(f"d_r range: {paths.d_r.min():.4f} .. {paths.d_r.max():.4f} m")
print(f"theta_r range: {np.rad2deg(paths.theta_r).min():.2f} .. {np.rad2deg(paths.theta_r).max():.2f} deg")
spread = np.ptp(paths.phase) / (2 * np.pi)
print(f"propagation phase spread across the aperture: {spread:.2f} turns")

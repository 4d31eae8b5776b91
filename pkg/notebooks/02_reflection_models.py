# %% [markdown]
# # Element reflection: RCS lobe, cosine phase, and fitting
#
# Fitted constants for the prototype: floor c = 1.42e-5 m^2, phase a = 90 deg,
# b = 180 deg.  We generate noisy samples from the models and fit them back.

# %%
import numpy as np

from rispower import ReflectionSample, fit_phase, fit_rcs_floor, phase_shift, rcs, table1_scene

p = table1_scene().reflection
theta = np.deg2rad(np.arange(0, 90, 10))
for t, s, f in zip(np.rad2deg(theta), rcs(theta, p), np.rad2deg(phase_shift(theta, 0, p))):
    print(f"theta={t:4.0f} deg  sigma={s:.4e} m^2  phase={f:6.2f} deg")

# %%
rng = np.random.default_rng(0)
thetas = rng.uniform(0, np.deg2rad(80), 25)
sigma = rcs(thetas, p) * (1 + rng.normal(0, 0.03, thetas.size))
phase = p.a * np.cos(thetas) + p.b + rng.normal(0, np.deg2rad(3), thetas.size)
samples = [ReflectionSample(t, s, f) for t, s, f in zip(thetas, sigma, phase)]

c_fit = fit_rcs_floor(samples, p.area, p.wavelength)
ph_fit = fit_phase(samples)
print(f"c = {c_fit.c:.3e} m^2 (rms {c_fit.rms:.2e})")
print(f"a = {np.rad2deg(ph_fit.a):.2f} deg, b = {np.rad2deg(ph_fit.b):.2f} deg (rms {np.rad2deg(ph_fit.rms):.2f} deg)")

# %% [markdown]
# Optional figure of both models with the noisy samples.

# %%
try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    plt = None

if plt is not None:
    grid = np.deg2rad(np.linspace(0, 89, 200))
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(9, 3.5))
    ax1.plot(np.rad2deg(thetas), sigma, "o", ms=3, label="samples")
    ax1.plot(np.rad2deg(grid), rcs(grid, p), label="model")
    ax1.set_xlabel("theta_r (deg)")
    ax1.set_ylabel("RCS (m^2)")
    ax1.legend()
    ax2.plot(np.rad2deg(thetas), np.rad2deg(phase), "o", ms=3)
    ax2.plot(np.rad2deg(grid), np.rad2deg(p.a * np.cos(grid) + p.b))
    ax2.set_xlabel("theta_r (deg)")
    ax2.set_ylabel("phase (deg)")
    fig.tight_layout()
    fig.savefig("reflection_models.png", dpi=120)

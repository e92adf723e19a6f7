"""Characteristic functions of the preset Hamiltonians.

Every kernel this package builds is parametrized by the solution mu(t) of

    mu'' - tau(t) mu' + 4 sigma(t) mu = 0,   mu(0) = 0,  mu'(0) = 2 a(0).

This script integrates mu for each preset, marks the focal times (zeros of
mu, where the kernel amplitude (2 pi i mu)^(-1/2) diverges) and overlays the
known closed forms.
"""

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from quadprop import closed_form_characteristic, make_preset, solve_characteristic

CASES = [
    ("free", (), 2.5, "mu = t"),
    ("sho", (1.0,), 3.2, "mu = sin t"),
    ("modified_oscillator", (), 1.5, "mu = cos t sinh t + sin t cosh t"),
]

fig, axes = plt.subplots(1, 3, figsize=(12, 3.2))
for ax, (preset, params, T, label) in zip(axes, CASES):
    cs = make_preset(preset, params)
    sol = solve_characteristic(cs, T, 1e-12)
    cf = closed_form_characteristic(preset, params, T)
    ts = np.linspace(0, T * 0.999, 400)
    ax.plot(ts, [sol.mu(t) for t in ts], lw=2, label="numeric")
    ax.plot(ts, np.asarray(cf.mu(ts)), "k--", lw=1, label="closed form")
    for tf in sol.focal_times:
        ax.axvline(tf, color="crimson", ls=":", lw=1)
    ax.set_title(f"{preset}\n{label}", fontsize=9)
    ax.set_xlabel("t")
    err = max(abs(sol.mu(t) - float(cf.mu(t))) for t in ts)
    print(f"{preset:22s} focal times {tuple(round(float(f), 6) for f in sol.focal_times)}"
          f"  max |numeric - closed form| = {err:.2e}")
axes[0].set_ylabel("mu(t)")
axes[0].legend(fontsize=8)
fig.tight_layout()
fig.savefig("demos_01_characteristic.png", dpi=120)
print("wrote demos_01_characteristic.png")

"""Closed-form particular solutions of the nonlinear Schroedinger equation.

Three explicit families: the simple case |psi| = (mu0 + t mu1)^(-1/2)
(finite-time blow-up at t0 = -mu0/mu1 when mu1 < 0), the regularized kernel
whose t = 0 value is a delta sequence, and the modified-oscillator solution
starting from the standing wave exp(i x y).  Each is verified here by its
finite-difference PDE residual.
"""

from dataclasses import replace

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from quadprop import (
    Constant,
    Exponential,
    NLSParams,
    Product,
    Sinusoid,
    Sum,
    blowup_time,
    make_preset,
    nls_kernel_solution,
    nls_modified_oscillator,
    nls_residual,
    nls_simple_solution,
)

fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(10, 3.6))

# amplitude histories of the simple family: bounded, constant, blow-up
for mu1, color in ((1.0, "tab:blue"), (0.0, "tab:gray"), (-0.6, "tab:red")):
    p = NLSParams(s=1.0, h=1.0, mu0=1.0, mu1=mu1)
    t0 = blowup_time(p)
    t_hi = 3.0 if t0 is None else 0.98 * t0
    ts = np.linspace(0.0, t_hi, 200)
    amp = [abs(nls_simple_solution(p, 0.0, t)) for t in ts]
    label = f"mu1 = {mu1}" + ("" if t0 is None else f" (blow-up at t0 = {t0:.2f})")
    ax1.plot(ts, amp, color=color, label=label)
    if t0 is not None:
        ax1.axvline(t0, color=color, ls=":")
ax1.set_xlabel("t")
ax1.set_ylabel(r"$|\psi(0, t)|$")
ax1.set_title("simple family: amplitude histories", fontsize=9)
ax1.legend(fontsize=8)

# modified-oscillator solution: |psi| over (x, t)
ts = np.linspace(0.0, 2.2, 120)
xs = np.linspace(-3, 3, 121)
vals = np.array([np.abs(nls_modified_oscillator(1.0, xs, 0.5, t)) for t in ts])
im = ax2.pcolormesh(ts, xs, vals.T, shading="auto")
ax2.set_xlabel("t")
ax2.set_ylabel("x")
ax2.set_title(r"modified oscillator: $|\psi|$ (blows up near t = 2.347)", fontsize=9)
fig.colorbar(im, ax=ax2)
fig.tight_layout()
fig.savefig("demos_04_nls.png", dpi=120)

# residual spot checks
p = NLSParams(s=1.0, h=1.0, mu0=1.0, mu1=1.0, beta0=0.3, delta0=0.2, y=0.5)
cs = make_preset("custom", a=Constant(0.5), h=Constant(1.0))
print("simple    residual:", abs(nls_residual(cs, 1.0, lambda x, t: nls_simple_solution(p, x, t), 0.3, 0.4)))
print("kernel    residual:", abs(nls_residual(cs, 2.0,
      lambda x, t: nls_kernel_solution(0.5, 1.0, 2.0, x, 0.0, t), 0.1, 0.3)))
sinh = Sum((Exponential(0.5, 1.0), Exponential(-0.5, -1.0)))
cs_mod = replace(make_preset("modified_oscillator"),
                 h=Product((Constant(2.0), Sinusoid(1.0, 1.0), sinh)))
print("mod. osc. residual:", abs(nls_residual(cs_mod, 1.0,
      lambda x, t: nls_modified_oscillator(1.0, x, 0.5, t), 0.2, 0.4)))
print("wrote demos_04_nls.png")

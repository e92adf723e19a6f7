"""Closed-form reference kernels, transcribed directly and kept independent of
the quadrature engine (separate arithmetic path), so the test suite can use
them as oracles:

    free_particle           free particle
    constant_force          uniform external force F
    harmonic_oscillator     simple harmonic oscillator, frequency omega
    modified_oscillator     the a = cos^2 t modified oscillator
    magnetic_constant_field charged spinning particle, constant H, F = 0 (3D)
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ValidityWindowError

__all__ = [
    "OracleKernel",
    "eval_oracle",
    "free_particle_kernel",
    "constant_force_kernel",
    "sho_kernel",
    "modified_oscillator_kernel",
    "magnetic_constant_field_kernel",
]


def free_particle_kernel(x, y, t, hbar=1.0, m=1.0):
    """sqrt(m/(2 pi i hbar t)) exp(i m (x-y)^2 / (2 hbar t))"""
    x, y = np.asarray(x, dtype=float), np.asarray(y, dtype=float)
    return np.sqrt(m / (2.0j * math.pi * hbar * t)) * np.exp(
        1j * m * (x - y) ** 2 / (2.0 * hbar * t))


def constant_force_kernel(x, y, t, force=1.0, hbar=1.0, m=1.0):
    """Free kernel times exp(i F (x+y) t / (2 hbar) - i F^2 t^3 / (24 hbar m))."""
    x, y = np.asarray(x, dtype=float), np.asarray(y, dtype=float)
    return free_particle_kernel(x, y, t, hbar, m) * np.exp(
        1j * force * (x + y) * t / (2.0 * hbar)
        - 1j * force**2 * t**3 / (24.0 * hbar * m))


def sho_kernel(x, y, t, omega=1.0, hbar=1.0, m=1.0):
    """sqrt(m w/(2 pi i hbar sin wt)) exp( i m w ((x^2+y^2) cos wt - 2xy) / (2 hbar sin wt) )"""
    s = math.sin(omega * t)
    if abs(s) < 1e-12:
        raise ValidityWindowError("sho kernel at a focal time (sin omega t = 0)", {"t": t})
    x, y = np.asarray(x, dtype=float), np.asarray(y, dtype=float)
    pref = np.sqrt(m * omega / (2.0j * math.pi * hbar * s))
    return pref * np.exp(1j * m * omega / (2.0 * hbar * s)
                         * ((x**2 + y**2) * math.cos(omega * t) - 2.0 * x * y))


def modified_oscillator_kernel(x, y, t):
    """Kernel of the a = cos^2 t modified oscillator (natural units):

        (2 pi i mu)^(-1/2) exp( ((x^2-y^2) sin t sinh t + 2xy
                                 - (x^2+y^2) cos t cosh t) / (2 i mu) ),
        mu = cos t sinh t + sin t cosh t.
    """
    mu = math.cos(t) * math.sinh(t) + math.sin(t) * math.cosh(t)
    if abs(mu) < 1e-12 * math.cosh(t):
        raise ValidityWindowError("modified-oscillator kernel at a focal time", {"t": t})
    x, y = np.asarray(x, dtype=float), np.asarray(y, dtype=float)
    num = ((x**2 - y**2) * math.sin(t) * math.sinh(t) + 2.0 * x * y
           - (x**2 + y**2) * math.cos(t) * math.cosh(t))
    return np.exp(num / (2.0j * mu)) / np.sqrt(2.0j * math.pi * mu)


def magnetic_constant_field_kernel(r, rp, t, H=1.0, m=1.0, e=-1.0, c=1.0, hbar=1.0,
                                   mu_spin=0.0, s=0.5, sigma=0.5):
    """3D propagator for constant magnetic field H e_z, zero electric force:

        G0(z-z', t) exp(i mu sigma H t/(hbar s)) * m w_H/(4 pi i hbar sin(w_H t/2))
        * exp( i m w_H/(4 hbar) [ ((x-x')^2 + (y-y')^2) cot(w_H t/2)
                                  - 2 (e/|e|) (x-x')(y+y') ] ),
        w_H = |e| H/(m c).
    """
    x, y, z = (np.asarray(v, dtype=float) for v in r)
    xp, yp, zp = (np.asarray(v, dtype=float) for v in rp)
    omega = abs(e) * H / (m * c)
    half = 0.5 * omega * t
    if abs(math.sin(half)) < 1e-12 or t == 0.0:
        raise ValidityWindowError("magnetic kernel at a focal time", {"t": t})
    g0 = np.sqrt(m / (2.0j * math.pi * hbar * t)) * np.exp(
        1j * m * (z - zp) ** 2 / (2.0 * hbar * t))
    spin = np.exp(1j * mu_spin * sigma * H * t / (hbar * s)) if s != 0 else 1.0
    pref = m * omega / (4.0j * math.pi * hbar * math.sin(half))
    sign = e / abs(e)
    phase = (1j * m * omega / (4.0 * hbar)
             * (((x - xp) ** 2 + (y - yp) ** 2) / math.tan(half)
                - 2.0 * sign * (x - xp) * (y + yp)))
    return g0 * spin * pref * np.exp(phase)


_KERNELS = {
    "free_particle": free_particle_kernel,
    "constant_force": constant_force_kernel,
    "harmonic_oscillator": sho_kernel,
    "modified_oscillator": modified_oscillator_kernel,
    "magnetic_constant_field": magnetic_constant_field_kernel,
}


@dataclass(frozen=True)
class OracleKernel:
    id: str
    params: dict

    def __post_init__(self):
        if self.id not in _KERNELS:
            raise ValueError(f"unknown oracle kernel {self.id!r}; known: {sorted(_KERNELS)}")


def eval_oracle(k: OracleKernel, *args):
    """Evaluate the oracle kernel: (x, y, t) for the 1D ids, (r, rp, t) for
    magnetic_constant_field."""
    return _KERNELS[k.id](*args, **k.params)

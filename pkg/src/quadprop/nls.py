"""Closed-form particular solutions of the nonlinear Schroedinger equation

    i psi_t = -a psi_xx + b x^2 psi - i(c x psi_x + d psi) - f x psi
              + i g psi_x + h(t) |psi|^(2s) psi,      s >= 0.

Three fully explicit families are provided (the general coefficient ladder
with nonsingular initial data mu(0) != 0 is a documented extension point, not
implemented):

* ``nls_simple_solution`` - the a = 1/2 free equation with constant h and
  linear characteristic mu = mu0 + t mu1; |psi| = (mu0 + t mu1)^(-1/2), which
  blows up at t0 = -mu0/mu1 when mu1 < 0.
* ``nls_kernel_solution`` - a regularized kernel G_eps(x, y, t) whose t = 0
  value is the Gaussian delta sequence delta_eps(x - y).
* ``nls_modified_oscillator`` - the a = cos^2 t equation with
  h(t) = 2 cos t sinh t and mu = cos t cosh t + sin t sinh t, starting from
  the standing wave psi0 = exp(i x y).

The spectral parameter y is a fixed real label of the solution family,
supplied by the caller.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .coefficients import CoefficientSet
from .errors import BlowupError

__all__ = [
    "NLSParams",
    "xi_s",
    "chi_s",
    "nls_simple_solution",
    "blowup_time",
    "nls_kernel_solution",
    "nls_modified_oscillator",
    "nls_residual",
]


@dataclass(frozen=True)
class NLSParams:
    """Parameters of the simple-case particular solution."""

    s: float = 1.0
    h: float = 1.0
    mu0: float = 1.0
    mu1: float = 0.0
    beta0: float = 0.0
    gamma0: float = 0.0
    delta0: float = 0.0
    eps0: float = 0.0
    kappa0: float = 0.0
    phi: float = 0.0
    y: float = 0.0

    def __post_init__(self):
        if self.s < 0:
            raise ValueError("nonlinearity exponent s must be >= 0")
        if self.mu0 <= 0:
            raise ValueError("mu0 must be positive")


def _mu_linear(p: NLSParams, t):
    mu = p.mu0 + t * p.mu1
    if np.any(np.asarray(mu) <= 0.0):
        raise BlowupError("mu0 + t mu1 <= 0: blow-up time reached",
                          {"t": t, "t_blowup": blowup_time(p)})
    return mu


def xi_s(p: NLSParams, t):
    """Nonlinear phase integral xi_s(t) = int_0^t (mu0 + tau mu1)^(-s) mu1 dtau:

        ((mu0 + t mu1)^(1-s) - mu0^(1-s)) / (1-s)   for s != 1
        ln(1 + t mu1/mu0)                           for s = 1

    Continuous in s at s = 1; xi_s(0) = 0.
    """
    mu = _mu_linear(p, t)
    if p.s == 1.0:
        return np.log(mu / p.mu0)
    return (mu ** (1.0 - p.s) - p.mu0 ** (1.0 - p.s)) / (1.0 - p.s)


def blowup_time(p: NLSParams):
    """t0 = -mu0/mu1 when mu1 < 0, else None (no finite-time blow-up)."""
    return -p.mu0 / p.mu1 if p.mu1 < 0 else None


def nls_simple_solution(p: NLSParams, x, t):
    """Particular solution of i psi_t = -psi_xx/2 + h |psi|^(2s) psi:

        psi = e^(i phi) (mu0 + t mu1)^(-1/2) e^(iS),
        S = alpha x^2 + beta x y + gamma y^2 + delta x + eps y + kappa

    with alpha = mu1/(2 mu), beta = mu0 beta0/mu, delta = mu0 delta0/mu,
    gamma = gamma0 - mu0 beta0^2 t/(2 mu), eps = eps0 - mu0 beta0 delta0 t/mu,
    kappa = kappa0 - mu0 delta0^2 t/(2 mu) - (h/mu1) xi_s(t)
    (the mu1 -> 0 limit replaces the last term by -h t/mu0^s).
    """
    x = np.asarray(x, dtype=float)
    mu = _mu_linear(p, t)
    alpha = p.mu1 / (2.0 * mu)
    beta = p.mu0 * p.beta0 / mu
    gamma = p.gamma0 - p.mu0 * p.beta0**2 * t / (2.0 * mu)
    delta = p.mu0 * p.delta0 / mu
    eps = p.eps0 - p.mu0 * p.beta0 * p.delta0 * t / mu
    if p.mu1 == 0.0:
        nonlin = p.h * t / p.mu0**p.s
    else:
        nonlin = (p.h / p.mu1) * xi_s(p, t)
    kappa = p.kappa0 - p.mu0 * p.delta0**2 * t / (2.0 * mu) - nonlin
    s_phase = (alpha * x**2 + beta * x * p.y + gamma * p.y**2
               + delta * x + eps * p.y + kappa)
    return np.exp(1j * p.phi) / np.sqrt(mu) * np.exp(1j * s_phase)


def chi_s(epsilon: float, s: float, t):
    """chi_s(t) = ((t+eps)^(1-s) - eps^(1-s))/(1-s), or ln(1 + t/eps) at s = 1;
    chi_s(0) = 0."""
    if s == 1.0:
        return np.log1p(np.asarray(t, dtype=float) / epsilon)
    return ((np.asarray(t, dtype=float) + epsilon) ** (1.0 - s) - epsilon ** (1.0 - s)) / (1.0 - s)


def nls_kernel_solution(epsilon: float, h: float, s: float, x, y, t):
    """Regularized-kernel solution of i psi_t = -psi_xx/2 + h |psi|^(2s) psi:

        G_eps(x,y,t) = (2 pi i (t+eps))^(-1/2)
                       exp( i(x-y)^2/(2(t+eps)) - i h (2 pi)^(-s) chi_s(t) ).

    At t = 0 this is the delta sequence delta_eps(x-y); with h = 0 it is the
    free kernel shifted t -> t + eps.  The nonlinear phase prefactor is
    (2 pi)^(-s) because |G_eps|^2 = 1/(2 pi (t+eps)); at s = 1 it coincides
    with the 1/(2 pi) form.
    """
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    te = t + epsilon
    phase = (x - y) ** 2 / (2.0 * te) - h * (2.0 * math.pi) ** (-s) * chi_s(epsilon, s, t)
    return np.exp(1j * phase) / np.sqrt(2.0j * math.pi * te)


def nls_modified_oscillator(s: float, x, y: float, t):
    """Particular solution of

        i psi_t = -cos^2 t psi_xx + sin^2 t x^2 psi
                  - i sin t cos t (2 x psi_x + psi) + 2 cos t sinh t |psi|^(2s) psi

    with mu = cos t cosh t + sin t sinh t:

        psi = mu^(-1/2) exp(i(alpha x^2 + beta x y + gamma y^2 + kappa)),
        alpha = (cos t sinh t - sin t cosh t)/(2 mu),   beta = 1/mu,
        gamma = -(cos t sinh t + sin t cosh t)/(2 mu),
        kappa = -(mu^(1-s) - 1)/(1-s)   (s != 1),   -ln mu   (s = 1).

    At t = 0 this is the standing wave psi0(x) = exp(i x y).
    """
    mu = math.cos(t) * math.cosh(t) + math.sin(t) * math.sinh(t)
    if mu <= 0.0:
        raise BlowupError("cos t cosh t + sin t sinh t <= 0", {"t": t})
    x = np.asarray(x, dtype=float)
    alpha = (math.cos(t) * math.sinh(t) - math.sin(t) * math.cosh(t)) / (2.0 * mu)
    beta = 1.0 / mu
    gamma = -(math.cos(t) * math.sinh(t) + math.sin(t) * math.cosh(t)) / (2.0 * mu)
    if s == 1.0:
        kappa = -math.log(mu)
    else:
        kappa = -(mu ** (1.0 - s) - 1.0) / (1.0 - s)
    return np.exp(1j * (alpha * x**2 + beta * x * y + gamma * y**2 + kappa)) / math.sqrt(mu)


def nls_residual(cs: CoefficientSet, s: float, psi, x: float, t: float,
                 h_x: float = 1e-3, h_t: float = 1e-3):
    """Finite-difference defect of the NLS equation at (x, t) for a closed-form
    evaluator ``psi(x, t)``:

        i psi_t + a psi_xx - b x^2 psi + i(c x psi_x + d psi) + f x psi
        - i g psi_x - h(t) |psi|^(2s) psi

    with second-order central stencils.  cs.h must be set (the nonlinearity
    strength); |result| is the PDE defect.
    """
    if cs.h is None:
        raise ValueError("CoefficientSet.h must be set for an NLS residual")
    p0 = psi(x, t)
    p_t = (psi(x, t + h_t) - psi(x, t - h_t)) / (2.0 * h_t)
    pxp, pxm = psi(x + h_x, t), psi(x - h_x, t)
    p_x = (pxp - pxm) / (2.0 * h_x)
    p_xx = (pxp - 2.0 * p0 + pxm) / h_x**2
    a, b, c = cs.a(t), cs.b(t), cs.c(t)
    d, f, g = cs.d(t), cs.f(t), cs.g(t)
    hval = cs.h(t)
    return (1j * p_t + a * p_xx - b * x**2 * p0 + 1j * (c * x * p_x + d * p0)
            + f * x * p0 - 1j * g * p_x - hval * abs(p0) ** (2.0 * s) * p0)

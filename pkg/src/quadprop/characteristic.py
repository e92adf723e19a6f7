"""Characteristic equation of the quadratic Hamiltonian:

    mu'' - tau(t) mu' + 4 sigma(t) mu = 0,    mu(0) = 0,  mu'(0) = 2 a(0),

solved numerically (adaptive embedded Runge-Kutta with dense output) or in
closed form for the presets that have one.  Every kernel phase coefficient is
built on top of the dense (mu, mu') returned here, and the zeros of mu
(focal times / caustics) bound the validity window of the Green function.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import solve_ivp

from .coefficients import CoefficientSet, tau_sigma
from .errors import CoefficientSingularityError, UnknownPresetError

__all__ = [
    "CharacteristicSolution",
    "solve_characteristic",
    "closed_form_characteristic",
    "first_focal_time",
]


@dataclass(frozen=True)
class CharacteristicSolution:
    """Dense mu(t), mu'(t) on [0, t_max] with focal-time metadata.

    Immutable; evaluation is thread-safe.  ``mu_prime_zeros`` holds the zeros
    of mu' in (0, t_max], needed to cap the window of the gamma/epsilon/kappa
    phase integrals (they carry 1/mu'^2 factors).
    """

    t_max: float
    mu: object              # callable t -> mu(t)
    mu_prime: object        # callable t -> mu'(t)
    focal_times: tuple
    source: str             # "numeric" | "closed_form"
    mu_prime_zeros: tuple = ()
    a0: float = 0.5

    def window(self) -> float:
        """End of the interval on which all six phase coefficients are
        computable: min(first focal time, first zero of mu', t_max)."""
        w = self.t_max
        if self.focal_times:
            w = min(w, self.focal_times[0])
        if self.mu_prime_zeros:
            w = min(w, self.mu_prime_zeros[0])
        return w


def _refine_roots(fn, dfn, brackets, atol=1e-12):
    """Bisection on each sign-change bracket, then one Newton polish."""
    roots = []
    for lo, hi in brackets:
        flo = fn(lo)
        for _ in range(200):
            mid = 0.5 * (lo + hi)
            fmid = fn(mid)
            if hi - lo < atol or fmid == 0.0:
                break
            if flo * fmid <= 0.0:
                hi = mid
            else:
                lo, flo = mid, fmid
        root = 0.5 * (lo + hi)
        slope = dfn(root)
        if slope != 0.0:
            polished = root - fn(root) / slope
            if lo - atol <= polished <= hi + atol:
                root = polished
        roots.append(root)
    return roots


def _scan_sign_changes(fn, t_lo, t_hi, n=2000):
    ts = np.linspace(t_lo, t_hi, n)
    vals = np.asarray([fn(t) for t in ts]) if not np.ndim(fn(ts[:2])) else np.asarray(fn(ts))
    brackets = []
    for i in range(len(ts) - 1):
        if vals[i] == 0.0 and ts[i] > t_lo:
            brackets.append((ts[i] - 1e-9, ts[i] + 1e-9))
        elif vals[i] * vals[i + 1] < 0.0:
            brackets.append((ts[i], ts[i + 1]))
    return brackets


def solve_characteristic(cs: CoefficientSet, T: float, tol: float = 1e-10) -> CharacteristicSolution:
    """Integrate the characteristic equation on [0, T] with local error <= tol.

    Focal times are located by sign-change bisection on the dense output
    (absolute tolerance 1e-12) followed by one Newton polish using mu'.
    """
    if T <= 0 or tol <= 0:
        raise ValueError("need T > 0 and tol > 0")
    if T >= cs.t_max:
        raise CoefficientSingularityError(
            f"T={T} reaches the first coefficient singularity at t={cs.t_max}",
            {"T": T, "t_max": cs.t_max})
    cs.check_regular(T)

    def rhs(t, y):
        tau, sigma = tau_sigma(cs, t)
        return (y[1], tau * y[1] - 4.0 * sigma * y[0])

    a0 = float(cs.a(0.0))
    res = solve_ivp(rhs, (0.0, T), (0.0, 2.0 * a0), method="RK45",
                    rtol=tol, atol=tol * 1e-2, dense_output=True)
    if not res.success:
        raise CoefficientSingularityError(f"characteristic integration failed: {res.message}")
    dense = res.sol

    def mu(t):
        return dense(t)[0]

    def mu_prime(t):
        return dense(t)[1]

    # zeros of mu in (0, T]: skip the built-in zero at t=0
    grid = np.linspace(0.0, T, 4000)
    mu_vals = dense(grid)[0]
    mup_vals = dense(grid)[1]
    eps = max(1e-8, 10 * tol) * max(1.0, np.max(np.abs(mu_vals)))
    focal_brackets = []
    for i in range(1, len(grid) - 1):
        if mu_vals[i] * mu_vals[i + 1] < 0.0 and grid[i] > 0.0:
            focal_brackets.append((grid[i], grid[i + 1]))
    # endpoint zero (e.g. mu = sin t on [0, pi])
    if abs(mu_vals[-1]) <= eps and (not focal_brackets or focal_brackets[-1][1] < grid[-2]):
        focal_brackets.append((grid[-2], grid[-1]))
    focal = tuple(_refine_roots(mu, mu_prime, focal_brackets))

    mup_brackets = [(grid[i], grid[i + 1]) for i in range(1, len(grid) - 1)
                    if mup_vals[i] * mup_vals[i + 1] < 0.0]
    mupz = tuple(_refine_roots(mu_prime, lambda t: rhs(t, dense(t))[1], mup_brackets))

    return CharacteristicSolution(t_max=T, mu=mu, mu_prime=mu_prime,
                                  focal_times=focal, source="numeric",
                                  mu_prime_zeros=mupz, a0=a0)


def closed_form_characteristic(preset: str, params=(), T: float = 10.0) -> CharacteristicSolution:
    """Exact mu, mu' for the presets with elementary characteristic functions:

    free / constant_force   mu = t
    sho(omega)              mu = sin(omega t)/omega
    modified_oscillator     mu = cos t sinh t + sin t cosh t
    """
    params = list(params)
    if preset in ("free", "constant_force"):
        mu = lambda t: np.asarray(t, dtype=float) + 0.0
        mup = lambda t: np.ones_like(np.asarray(t, dtype=float)) if np.ndim(t) else 1.0
        return CharacteristicSolution(T, mu, mup, (), "closed_form", (), a0=0.5)
    if preset == "sho":
        omega = params[0] if params else 1.0
        if omega <= 0:
            raise UnknownPresetError("sho closed form needs omega > 0")
        mu = lambda t: np.sin(omega * t) / omega
        mup = lambda t: np.cos(omega * t)
        focal = tuple(k * math.pi / omega for k in range(1, int(T * omega / math.pi) + 1)
                      if k * math.pi / omega <= T * (1 + 1e-15))
        mupz = tuple((2 * k - 1) * math.pi / (2 * omega) for k in range(1, 50)
                     if (2 * k - 1) * math.pi / (2 * omega) <= T)
        return CharacteristicSolution(T, mu, mup, focal, "closed_form", mupz, a0=0.5)
    if preset == "modified_oscillator":
        mu = lambda t: np.cos(t) * np.sinh(t) + np.sin(t) * np.cosh(t)
        mup = lambda t: 2.0 * np.cos(t) * np.cosh(t)
        focal = tuple(_refine_roots(mu, mup, _scan_sign_changes(mu, 1e-6, T)))
        # mu' = 2 cos t cosh t vanishes at odd multiples of pi/2
        mupz = tuple((2 * k - 1) * math.pi / 2 for k in range(1, 50)
                     if (2 * k - 1) * math.pi / 2 <= T)
        return CharacteristicSolution(T, mu, mup, focal, "closed_form", mupz, a0=1.0)
    raise UnknownPresetError(f"no closed-form characteristic for preset {preset!r}")


def first_focal_time(sol: CharacteristicSolution):
    """Smallest zero of mu in (0, T], or None if mu does not vanish there."""
    return sol.focal_times[0] if sol.focal_times else None

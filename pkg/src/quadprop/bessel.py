"""Bessel functions of the first kind for the fractional orders +-1/4, +-3/4
needed by the linear-magnetic-field characteristic function.

Ascending power series for x <= 12; Hankel's asymptotic expansion beyond.
Absolute accuracy ~1e-13 across the switchover (the largest series term at
x = 12 is ~4e3, costing ~3 digits; the asymptotic series' smallest term at
x = 12 is far below double precision).
"""

from __future__ import annotations

import math

import numpy as np

__all__ = ["bessel_j", "bessel_j_derivative"]

_ORDERS = (0.25, -0.25, 0.75, -0.75)
_SERIES_CUTOFF = 12.0


def _series(nu: float, x: float) -> float:
    # J_nu(x) = sum_k (-1)^k (x/2)^(2k+nu) / (k! Gamma(k+1+nu))
    half = 0.5 * x
    term = half**nu / math.gamma(1.0 + nu)
    total = term
    hh = half * half
    for k in range(1, 80):
        term *= -hh / (k * (k + nu))
        total += term
        if abs(term) < 1e-18 * abs(total) + 1e-300:
            break
    return total


def _asymptotic(nu: float, x: float) -> float:
    # J_nu(x) ~ sqrt(2/(pi x)) [cos(w) P(nu,x) - sin(w) Q(nu,x)],
    # w = x - nu pi/2 - pi/4, with Hankel coefficients
    # a_k = prod_{j=1..k} (4 nu^2 - (2j-1)^2) / (k! 8^k).
    mu4 = 4.0 * nu * nu
    p_sum, q_sum = 1.0, 0.0
    term = 1.0
    sign = 1.0
    for k in range(1, 30):
        term *= (mu4 - (2.0 * k - 1.0) ** 2) / (k * 8.0 * x)
        if k % 2 == 1:
            q_sum += sign * term
        else:
            sign = -sign
            p_sum += sign * term
        if abs(term) < 1e-18:
            break
    w = x - 0.5 * nu * math.pi - 0.25 * math.pi
    return math.sqrt(2.0 / (math.pi * x)) * (math.cos(w) * p_sum - math.sin(w) * q_sum)


def bessel_j(nu: float, x):
    """J_nu(x) for nu in {+-1/4, +-3/4} and x > 0 (scalar or array)."""
    if nu not in _ORDERS:
        raise ValueError(f"order {nu} not supported; use one of {_ORDERS}")
    xs = np.asarray(x, dtype=float)
    if np.any(xs <= 0.0):
        raise ValueError("bessel_j requires x > 0")
    if xs.ndim == 0:
        xv = float(xs)
        return _series(nu, xv) if xv <= _SERIES_CUTOFF else _asymptotic(nu, xv)
    out = np.empty_like(xs)
    flat = xs.ravel()
    res = out.ravel()
    for i, xv in enumerate(flat):
        res[i] = _series(nu, xv) if xv <= _SERIES_CUTOFF else _asymptotic(nu, xv)
    return out


def bessel_j_derivative(nu: float, x):
    """J'_nu(x) via the exact recurrence J'_nu = J_(nu-1) - (nu/x) J_nu for
    nu in {1/4, 3/4} and J'_nu = -J_(nu+1) + (nu/x) J_nu for nu in
    {-1/4, -3/4} (stays inside the supported order set)."""
    xs = np.asarray(x, dtype=float)
    if nu in (0.25, 0.75):
        return bessel_j(nu - 1.0, xs) - (nu / xs) * bessel_j(nu, xs)
    if nu in (-0.25, -0.75):
        return -bessel_j(nu + 1.0, xs) + (nu / xs) * bessel_j(nu, xs)
    raise ValueError(f"order {nu} not supported")

"""Propagator of a charged particle with spin in a uniform magnetic field
H(t) e_z and a perpendicular electric force F(t) e_y, both arbitrary functions
of time.

Separation of variables reduces the 3D problem to the 1D quadratic form
handled by :mod:`quadprop.green1d` (``reduce_to_1d``), with the magnetic
characteristic equation

    mu_H'' + w_H(t)^2 mu_H = 0,    mu_H(0) = 0,  mu_H'(0) = w_H(0),
    w_H = |e| H/(m c).

The phase of the separated kernel splits into field-driven and
p_x-proportional ladder pieces (``magnetic_phase``), the p_x dependence of
the full phase is a quadratic polynomial with coefficients S_H^(0,1,2)
(``s_polynomials``), and the p_x Gaussian integral is done analytically, so
the assembled 3D kernel (``eval_green3d``) involves no numeric momentum
integration.  Its quadratic form Q = (S^(1))^2 - 4 S^(0) S^(2) is evaluated
both by direct expansion from the S-parts and by the printed closed forms
A..L; the direct expansion is authoritative and the comparison report flags
transcription slips in the closed forms (``discriminant_coeffs``).

Sign conventions: the charge e is stored signed; |e| appears exactly where
the formulas use |e| and the factor e/|e| comes from the stored sign.
Physical units are explicit with defaults m = c = hbar = 1, e = -1.

Ladder transcription notes (pinned numerically by the ladder-vs-general
consistency suite, including runs with hbar != 1):

* the tau-integrals of eps_F0, kappa_F0, kappa_F1 integrate delta(tau), not
  the end-time value delta(t);
* the (H/mu')^2 integrals of eps_F0/eps_H1 carry e^2/(m c)^2 with no hbar
  (the hbar variant is dimensionally inconsistent);
* the force integral of kappa_F0 pairs F with delta_F0, its kappa_F1
  counterpart pairs F with delta_H1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np
from scipy.integrate import quad, solve_ivp

from .bessel import bessel_j
from .characteristic import CharacteristicSolution, solve_characteristic
from .coefficients import (
    CoefficientSet,
    Constant,
    Power,
    Product,
    TimeFunction,
)
from .errors import FieldZeroError, ValidityWindowError

__all__ = [
    "PhysicalConstants",
    "FieldProfile",
    "MagneticAux",
    "MagneticPhase",
    "Propagator3DCoeffs",
    "solve_mu_H",
    "linear_field_mu",
    "bessel_j",
    "magnetic_phase",
    "s_polynomials",
    "discriminant_coeffs",
    "assemble_propagator3d",
    "eval_green3d",
    "reduce_to_1d",
    "pde_residual_green3d",
]


@dataclass(frozen=True)
class PhysicalConstants:
    m: float = 1.0
    e: float = -1.0
    c: float = 1.0
    hbar: float = 1.0
    mu_spin: float = 0.0
    s: float = 0.5
    sigma: float = 0.5

    def __post_init__(self):
        if self.m <= 0 or self.c <= 0 or self.hbar <= 0:
            raise ValueError("m, c, hbar must be positive")
        if self.e == 0:
            raise ValueError("charge e must be nonzero")
        if self.s != 0:
            if abs(self.sigma) > self.s + 1e-12:
                raise ValueError("|sigma| must not exceed s")
            if abs((self.s - self.sigma) - round(self.s - self.sigma)) > 1e-9:
                raise ValueError("sigma must differ from s by an integer")

    @property
    def sign_e(self) -> float:
        return math.copysign(1.0, self.e)


@dataclass(frozen=True)
class FieldProfile:
    """Magnetic field magnitude H(t) > 0 and electric force F(t) = e E_y(t)."""

    H: TimeFunction
    F: TimeFunction = Constant(0.0)
    constants: PhysicalConstants = PhysicalConstants()

    def check_field(self, T: float, samples: int = 400) -> None:
        hv = np.asarray(self.H(np.linspace(0.0, T, samples)), dtype=float)
        if np.any(hv <= 0.0) or not np.all(np.isfinite(hv)):
            raise FieldZeroError("H(t) must stay positive on [0, T]", {"T": T})

    def omega_H(self, t):
        k = self.constants
        return abs(k.e) * self.H(t) / (k.m * k.c)

    def a_H(self, t):
        k = self.constants
        return np.sqrt(k.hbar * k.c / (abs(k.e) * self.H(t)))

    def y0(self, t, p_x: float):
        k = self.constants
        return -k.c * p_x / (k.e * self.H(t))


class MagneticAux:
    """Time-dependent quantities of the magnetic reduction: w_H, y0, a_H and
    the reduced forcing functions f, g, h.  The identity w_H a_H^2 = hbar/m
    (constant in t) is why the reduced characteristic equation has tau = 0."""

    def __init__(self, profile: FieldProfile, p_x: float = 0.0):
        self.profile = profile
        self.p_x = p_x

    def omega_H(self, t):
        return self.profile.omega_H(t)

    def a_H(self, t):
        return self.profile.a_H(t)

    def y0(self, t):
        return self.profile.y0(t, self.p_x)

    def f(self, t):
        k = self.profile.constants
        return self.a_H(t) * self.profile.F(t) / k.hbar

    def g(self, t):
        k = self.profile.constants
        hprime = self.profile.H.derivative(t)
        return (k.c * self.p_x / k.e) * hprime / self.profile.H(t) ** 2 / self.a_H(t)

    def h(self, t):
        # a_H'/a_H = -H'/(2H)
        return -0.5 * self.profile.H.derivative(t) / self.profile.H(t)


def reduce_to_1d(profile: FieldProfile, p_x: float = 0.0) -> CoefficientSet:
    """Map the separated y-equation onto the general quadratic form:

        a = b = w_H/2,  c = -h = H'/(2H),  d = 0,
        f = a_H F/hbar,  g = y0'/a_H.

    The mapped set has tau = 0 identically and 4 sigma = w_H^2, so its
    characteristic equation is the classical oscillator with time-dependent
    frequency.  All coefficient functions carry exact derivatives.
    """
    k = profile.constants
    H = profile.H
    Hp = H.derivative_fn()
    ab = Product((Constant(abs(k.e) / (2.0 * k.m * k.c)), H))
    c_fn = Product((Constant(0.5), Hp, Power(H, -1.0)))
    c_a = math.sqrt(k.hbar * k.c / abs(k.e))
    f_fn = Product((Constant(c_a / k.hbar), Power(H, -0.5), profile.F))
    g_fn = Product((Constant(k.c * p_x / (k.e * c_a)), Hp, Power(H, -1.5)))
    return CoefficientSet(a=ab, b=ab, c=c_fn, f=f_fn, g=g_fn, label="magnetic_reduced")


def solve_mu_H(profile: FieldProfile, T: float, tol: float = 1e-10) -> CharacteristicSolution:
    """Integrate mu_H'' + w_H^2 mu_H = 0, mu_H(0) = 0, mu_H'(0) = w_H(0).

    Same contract as solve_characteristic (it is the reduced coefficient
    set's characteristic equation; 2 a(0) = w_H(0))."""
    profile.check_field(T)
    return solve_characteristic(reduce_to_1d(profile), T, tol)


def linear_field_mu(H0: float, H1: float, constants: PhysicalConstants, t):
    """Closed form of (mu_H, mu_H') for H(t) = H0 + t H1 in terms of Bessel
    functions of orders +-1/4 and +-3/4:

        mu_H = pi |e| H0^(3/2) / (2^(3/2) m c H1) sqrt(H)
               [ J_(-1/4)(k0) J_(1/4)(k) - J_(1/4)(k0) J_(-1/4)(k) ]
        mu_H' = pi e^2/(m^2 c^2 H1) (H0 H/2)^(3/2)
               [ J_(1/4)(k0) J_(3/4)(k) + J_(-1/4)(k0) J_(-3/4)(k) ],

    k = |e| H^2/(2 m c H1), k0 = k at t = 0.
    """
    if H1 == 0.0:
        raise ValueError("linear_field_mu needs H1 != 0 (use the constant-field sine otherwise)")
    k = constants
    ts = np.asarray(t, dtype=float)
    H = H0 + ts * H1
    if np.any(H <= 0.0):
        raise FieldZeroError("H(t) = H0 + t H1 must stay positive", {"t": t})
    ae = abs(k.e)
    karg0 = ae * H0**2 / (2.0 * k.m * k.c * H1)
    karg = ae * H**2 / (2.0 * k.m * k.c * H1)
    j14_0 = bessel_j(0.25, karg0)
    jm14_0 = bessel_j(-0.25, karg0)
    mu = (math.pi * ae * H0**1.5 / (2.0**1.5 * k.m * k.c * H1) * np.sqrt(H)
          * (jm14_0 * bessel_j(0.25, karg) - j14_0 * bessel_j(-0.25, karg)))
    mup = (math.pi * k.e**2 / (k.m**2 * k.c**2 * H1) * (H0 * H / 2.0) ** 1.5
           * (j14_0 * bessel_j(0.75, karg) + jm14_0 * bessel_j(-0.75, karg)))
    return mu, mup


@dataclass(frozen=True)
class MagneticPhase:
    """alpha_H, beta_H, gamma_H plus the p_x-independent ladder pieces.

    With H constant and F = 0 every ladder piece vanishes; with F = 0 only
    delta_H1, eps_H1, kappa_H2 survive."""

    t: float
    alpha_H: float
    beta_H: float
    gamma_H: float
    delta_F0: float
    delta_H1: float
    eps_F0: float
    eps_H1: float
    kappa_F0: float
    kappa_F1: float
    kappa_H2: float
    delta_H1_alt: float = 0.0   # integrated-by-parts form, consistency check only

    def delta_full(self, p_x, profile: FieldProfile, mu_t: float) -> float:
        k = profile.constants
        return float(profile.a_H(self.t)) / (k.hbar * mu_t) * (self.delta_F0 + p_x * self.delta_H1)

    def eps_full(self, p_x, profile: FieldProfile) -> float:
        k = profile.constants
        return (self.eps_F0 + p_x * self.eps_H1) / (k.m * float(profile.a_H(0.0)))

    def kappa_full(self, p_x, profile: FieldProfile) -> float:
        k = profile.constants
        return (self.kappa_F0 + p_x * self.kappa_F1 + p_x**2 * self.kappa_H2) / (2.0 * k.hbar * k.m)


def magnetic_phase(profile: FieldProfile, sol: CharacteristicSolution, t: float,
                   qtol: float = 1e-10) -> MagneticPhase:
    """The magnetic coefficient ladder at time t:

        alpha_H = mu'/(2 w_H mu)
        beta_H  = -sqrt(H(0)/H(t)) / mu
        gamma_H = (w_H(0)/2) (1/(mu mu') - int_0^t (w_H/mu')^2 dtau)
        delta_F0 = int mu F dtau
        delta_H1 = (m c/e) int mu' H'/H^2 dtau
        eps_F0  = int F/mu' dtau - delta_F0/(mu mu')
                  + (e/(m c))^2 int (H/mu')^2 delta_F0(tau) dtau
        eps_H1  = -delta_H1/(mu mu') + (e/(m c))^2 int (H/mu')^2 delta_H1(tau) dtau
        kappa_F0 = delta_F0^2/(mu mu') - int (w_H delta_F0(tau)/mu')^2 dtau
                   - 2 int F delta_F0(tau)/mu' dtau
        kappa_F1 = 2 [ delta_F0 delta_H1/(mu mu')
                   - int w_H^2 delta_F0 delta_H1/mu'^2 dtau
                   - int F delta_H1/mu' dtau ]
        kappa_H2 = delta_H1^2/(mu mu') - int (w_H delta_H1(tau)/mu')^2 dtau

    All tau-integrals run in one adaptive pass; delta_H1_alt holds the
    integrated-by-parts second form e/|e| - m c mu'/(e H) - (e/mc) int mu H
    as a cross-check (never the primary path).
    """
    w = sol.window()
    if not (0.0 < t < w):
        raise ValidityWindowError(
            f"t={t} outside the magnetic validity window (0, {w})", {"t": t, "window": w})
    k = profile.constants
    mc_over_e = k.m * k.c / k.e
    ke2 = (k.e / (k.m * k.c)) ** 2

    def rhs(tau, y):
        mu, mup = sol.mu(tau), sol.mu_prime(tau)
        H = profile.H(tau)
        Hp = profile.H.derivative(tau)
        F = profile.F(tau)
        w_h = abs(k.e) * H / (k.m * k.c)
        d_f0, d_h1 = y[0], y[1]
        inv2 = 1.0 / (mup * mup)
        return (
            mu * F,                               # delta_F0
            mc_over_e * mup * Hp / (H * H),       # delta_H1
            w_h * w_h * inv2,                     # gamma integral
            F / mup,                              # eps_F0 first integral
            H * H * inv2 * d_f0,                  # eps_F0 second integral
            H * H * inv2 * d_h1,                  # eps_H1 integral
            (w_h * d_f0) ** 2 * inv2,             # kappa_F0 integral
            F * d_f0 / mup,                       # kappa_F0 force integral
            w_h * w_h * d_f0 * d_h1 * inv2,       # kappa_F1 integral
            F * d_h1 / mup,                       # kappa_F1 force integral
            (w_h * d_h1) ** 2 * inv2,             # kappa_H2 integral
            mu * H,                               # delta_H1 alt form integral
        )

    rtol = max(qtol * 1e-2, 1e-13)
    res = solve_ivp(rhs, (0.0, t), np.zeros(12), method="DOP853",
                    rtol=rtol, atol=qtol * 1e-2)
    if not res.success:
        raise ValidityWindowError(f"magnetic ladder quadrature failed: {res.message}")
    (d_f0, d_h1, i_gam, i_f, i_hf, i_hh, i_k0, i_k0f, i_k1, i_k1f, i_k2, i_muh) = res.y[:, -1]

    mu_t, mup_t = float(sol.mu(t)), float(sol.mu_prime(t))
    H_t, H_0 = float(profile.H(t)), float(profile.H(0.0))
    w_t = abs(k.e) * H_t / (k.m * k.c)
    w_0 = abs(k.e) * H_0 / (k.m * k.c)
    mm = mu_t * mup_t

    return MagneticPhase(
        t=t,
        alpha_H=mup_t / (2.0 * w_t * mu_t),
        beta_H=-math.sqrt(H_0 / H_t) / mu_t,
        gamma_H=0.5 * w_0 * (1.0 / mm - i_gam),
        delta_F0=d_f0,
        delta_H1=d_h1,
        eps_F0=i_f - d_f0 / mm + ke2 * i_hf,
        eps_H1=-d_h1 / mm + ke2 * i_hh,
        kappa_F0=d_f0**2 / mm - i_k0 - 2.0 * i_k0f,
        kappa_F1=2.0 * (d_f0 * d_h1 / mm - i_k1 - i_k1f),
        kappa_H2=d_h1**2 / mm - i_k2,
        delta_H1_alt=k.sign_e - k.m * k.c * mup_t / (k.e * H_t) - (k.e / (k.m * k.c)) * i_muh,
    )


@dataclass(frozen=True)
class Propagator3DCoeffs:
    """Everything needed to evaluate the assembled 3D kernel at one time."""

    t: float
    mu_H: float
    S_H0: float
    S_H1: tuple        # (coef_y, coef_yp, const)
    S_H2: tuple        # (y^2, y y', y'^2, y, y', const)
    drift_integral: float = 0.0       # int_0^t F/H
    spin_phase_integral: float = 0.0  # int_0^t H
    Q_coeffs: tuple | None = None     # (A, B, C, D, E, L), direct expansion
    Q_printed: tuple | None = None    # the printed closed forms
    Q_mismatch: dict | None = None    # per-coefficient relative deviation > tol


def s_polynomials(phase: MagneticPhase, profile: FieldProfile, t: float,
                  sol: CharacteristicSolution) -> Propagator3DCoeffs:
    """Split of the separated-kernel phase into powers of p_x:

        S_H(eta, eta', t) = S_H^(2)(y, y') + p_x S_H^(1)(y, y') + p_x^2 S_H^(0).
    """
    k = profile.constants
    a_t, a_0 = float(profile.a_H(t)), float(profile.a_H(0.0))
    H_t, H_0 = float(profile.H(t)), float(profile.H(0.0))
    mu_t = float(sol.mu(t))
    c, e, hbar, m = k.c, k.e, k.hbar, k.m
    al, be, ga = phase.alpha_H, phase.beta_H, phase.gamma_H

    s0 = (c**2 * al / (e**2 * a_t**2 * H_t**2)
          + c**2 * be / (e**2 * a_t * a_0 * H_t * H_0)
          + c**2 * ga / (e**2 * a_0**2 * H_0**2)
          + c * phase.delta_H1 / (hbar * e * mu_t * H_t)
          + c * phase.eps_H1 / (m * e * a_0**2 * H_0)
          + phase.kappa_H2 / (2.0 * hbar * m))

    s1_y = (2.0 * c * al / (e * a_t**2 * H_t)
            + c * be / (e * a_t * a_0 * H_0)
            + phase.delta_H1 / (hbar * mu_t))
    s1_yp = (c * be / (e * a_t * a_0 * H_t)
             + 2.0 * c * ga / (e * a_0**2 * H_0)
             + phase.eps_H1 / (m * a_0**2))
    s1_0 = (c * phase.delta_F0 / (hbar * e * mu_t * H_t)
            + c * phase.eps_F0 / (m * e * a_0**2 * H_0)
            + phase.kappa_F1 / (2.0 * hbar * m))

    s2 = (al / a_t**2,
          be / (a_t * a_0),
          ga / a_0**2,
          phase.delta_F0 / (hbar * mu_t),
          phase.eps_F0 / (m * a_0**2),
          phase.kappa_F0 / (2.0 * hbar * m))

    return Propagator3DCoeffs(t=t, mu_H=mu_t, S_H0=s0, S_H1=(s1_y, s1_yp, s1_0), S_H2=s2)


def _printed_discriminant(phase: MagneticPhase, profile: FieldProfile, t: float,
                          mu_t: float) -> tuple:
    """The closed forms A..L exactly as printed (kept verbatim so the
    two-path comparison can flag their transcription slips)."""
    k = profile.constants
    a_t, a_0 = float(profile.a_H(t)), float(profile.a_H(0.0))
    Ht, H0 = float(profile.H(t)), float(profile.H(0.0))
    c, e, hbar, m = k.c, k.e, k.hbar, k.m
    al, be, ga = phase.alpha_H, phase.beta_H, phase.gamma_H
    d0, d1 = phase.delta_F0, phase.delta_H1
    e0, e1 = phase.eps_F0, phase.eps_H1
    k0, k1, k2 = phase.kappa_F0, phase.kappa_F1, phase.kappa_H2
    disc = be**2 - 4.0 * al * ga
    mu = mu_t

    A = (c**2 * disc / (e**2 * a_t**2 * a_0**2 * H0**2)
         + 2.0 * c * be * d1 / (hbar * e * mu * a_t * a_0 * H0)
         + d1**2 / (hbar**2 * mu**2)
         - 4.0 * c * al * e1 / (m * e * a_t**2 * a_0**2 * H0)
         - 2.0 * al * k2 / (hbar * m * a_t**2))
    B = (-2.0 * c**2 * disc / (e**2 * a_t**2 * a_0**2 * H0**2)
         - 2.0 * c * be * d1 / (hbar * e * mu * a_t * a_0 * H0)
         + 4.0 * c * al * e1 / (m * e * a_t**2 * a_0**2 * Ht)
         + 4.0 * c * ga * d1 / (hbar * e * mu * a_0**2 * H0)
         + 2.0 * d1 * e1 / (hbar * m * mu * a_0**2)
         - 2.0 * c * be * e1 / (m * e * a_t * a_0**3 * H0)
         - 2.0 * be * k2 / (hbar * m * a_t * a_0))
    C = (c**2 * disc / (e**2 * a_t**2 * a_0**2 * Ht**2)
         + 2.0 * c * be * e1 / (m * e * a_t * a_0**3 * Ht)
         + e1**2 / (m**2 * a_0**4)
         - 4.0 * c * ga * d1 / (hbar * e * mu * a_0**2 * Ht)
         - 4.0 * ga * k2 / (2.0 * hbar * m * a_0**2))
    D = (4.0 * c**2 * al * e0 / (m * e**2 * a_t**2 * a_0**2 * Ht * H0)
         + 2.0 * c**2 * be * e0 / (m * e**2 * a_t * a_0**3 * H0**2)
         + 2.0 * c * (d1 * e0 - 2.0 * d0 * e1) / (hbar * m * e * mu * a_0**2 * H0)
         + 2.0 * c * al * k1 / (hbar * m * e * a_t**2 * Ht)
         + c * be * k1 / (hbar * m * e * a_t * a_0 * H0)
         + (d1 * k1 - 2.0 * d0 * k2) / (hbar**2 * m * mu)
         - 2.0 * c**2 * be * d0 / (hbar * e**2 * mu * a_t * a_0 * Ht * H0)
         - 4.0 * c**2 * ga * d0 / (hbar * e**2 * mu * a_0**2 * H0**2)
         - 2.0 * c * d0 * d1 / (hbar**2 * e * mu**2 * Ht))
    E = (2.0 * c**2 * be * d0 / (hbar * e**2 * mu * a_t * a_0 * Ht**2)
         + 4.0 * c**2 * ga * d0 / (hbar * e**2 * mu * a_0**2 * Ht * H0)
         + 2.0 * c * (d0 * e1 - 2.0 * d1 * e0) / (hbar * m * e * mu * a_0**2 * Ht)
         + c * be * k1 / (hbar * m * e * a_t * a_0 * Ht)
         + 2.0 * c * ga * k1 / (hbar * m * e * a_0**2 * H0)
         + (e1 * k1 - 2.0 * e0 * k2) / (hbar * m**2 * a_0**2)
         - 4.0 * c**2 * al * e0 / (m * e**2 * a_t**2 * a_0**2 * Ht**2)
         - 2.0 * c**2 * be * e0 / (m * e**2 * a_t * a_0**3 * Ht * H0)
         - 2.0 * c * d0 * d1 / (m**2 * e * a_0**4 * H0))
    L = (c**2 * d0**2 / (hbar**2 * e**2 * mu**2 * Ht**2)
         + c**2 * e0**2 / (m**2 * e**2 * a_0**4 * H0**2)
         + k1**2 / (4.0 * hbar**2 * m**2)
         + 2.0 * c**2 * d0 * e0 / (hbar * m * e**2 * mu * a_0**2 * Ht * H0)
         + c * d0 * k1 / (hbar**2 * m * e * mu * Ht)
         + c * e0 * k1 / (hbar * m**2 * e * a_0**2 * H0)
         - 2.0 * c**2 * al * k0 / (hbar * m * e**2 * a_t**2 * Ht**2)
         - 2.0 * c**2 * be * k0 / (hbar * m * e**2 * a_t * a_0 * Ht * H0)
         - 2.0 * c**2 * ga * k0 / (hbar * m * e**2 * a_0**2 * H0**2)
         - 2.0 * c * d1 * k0 / (hbar**2 * m * e * mu * Ht)
         - 2.0 * c * e1 * k0 / (hbar * m**2 * e * a_0**2 * H0)
         - k0 * k2 / (hbar**2 * m**2))
    return (A, B, C, D, E, L)


def discriminant_coeffs(coeffs: Propagator3DCoeffs, phase: MagneticPhase,
                        profile: FieldProfile, t: float,
                        tol: float = 1e-7) -> Propagator3DCoeffs:
    """Both evaluations of Q = (S^(1))^2 - 4 S^(0) S^(2):

    * direct expansion from the S-part coefficients (authoritative,
      used by eval_green3d);
    * the printed closed forms (cross-check).

    Relative deviations above ``tol`` are reported in ``Q_mismatch``.
    """
    s0 = coeffs.S_H0
    py, pyp, p0 = coeffs.S_H1
    q_y2, q_yyp, q_yp2, q_y, q_yp, q0 = coeffs.S_H2
    direct = (py**2 - 4.0 * s0 * q_y2,
              2.0 * py * pyp - 4.0 * s0 * q_yyp,
              pyp**2 - 4.0 * s0 * q_yp2,
              2.0 * py * p0 - 4.0 * s0 * q_y,
              2.0 * pyp * p0 - 4.0 * s0 * q_yp,
              p0**2 - 4.0 * s0 * q0)
    printed = _printed_discriminant(phase, profile, t, coeffs.mu_H)
    scale = max(max(abs(v) for v in direct), 1e-30)
    mismatch = {}
    for name, dv, pv in zip("ABCDEL", direct, printed):
        dev = abs(dv - pv) / scale
        if dev > tol:
            mismatch[name] = dev
    return replace(coeffs, Q_coeffs=direct, Q_printed=printed, Q_mismatch=mismatch)


def assemble_propagator3d(profile: FieldProfile, sol: CharacteristicSolution,
                          t: float, qtol: float = 1e-10) -> Propagator3DCoeffs:
    """magnetic_phase -> s_polynomials -> discriminant_coeffs plus the scalar
    field integrals int F/H (drift) and int H (spin phase)."""
    phase = magnetic_phase(profile, sol, t, qtol)
    coeffs = s_polynomials(phase, profile, t, sol)
    coeffs = discriminant_coeffs(coeffs, phase, profile, t)
    drift, _ = quad(lambda tau: profile.F(tau) / profile.H(tau), 0.0, t, epsabs=qtol, limit=200)
    spin, _ = quad(profile.H, 0.0, t, epsabs=qtol, limit=200)
    return replace(coeffs, drift_integral=drift, spin_phase_integral=spin)


def eval_green3d(coeffs: Propagator3DCoeffs, r, r_prime, t: float,
                 profile: FieldProfile):
    """The assembled 3D propagator

        G = G0(z-z', t) / (2 pi hbar a_H(0) sqrt(2 mu_H S^(0)))
            * exp(i mu sigma/(hbar s) int H)
            * exp( X^2/(4 i hbar^2 S^(0)) )
            * exp( Q(y, y')/(4 i S^(0)) )
            * exp( S^(1)(y, y') X / (2 i hbar S^(0)) ),

    X = x - x' - (c/e) int_0^t F/H,  G0 the free z-propagator, complex square
    roots on the principal branch.  Components of r/r_prime may be arrays
    (broadcast together).
    """
    if t != coeffs.t:
        raise ValueError(f"coefficients were assembled at t={coeffs.t}, not t={t}")
    if coeffs.Q_coeffs is None:
        raise ValueError("run discriminant_coeffs/assemble_propagator3d first")
    k = profile.constants
    s0 = coeffs.S_H0
    mu_t = coeffs.mu_H
    if s0 == 0.0 or mu_t == 0.0:
        raise ValidityWindowError("S_H0 = 0 or mu_H = 0: degenerate Gaussian integral",
                                  {"t": t})
    x, y, z = (np.asarray(v, dtype=float) for v in r)
    xp, yp, zp = (np.asarray(v, dtype=float) for v in r_prime)

    g0 = np.sqrt(k.m / (2.0j * math.pi * k.hbar * t)) * np.exp(
        1j * k.m * (z - zp) ** 2 / (2.0 * k.hbar * t))
    pref = g0 / (2.0 * math.pi * k.hbar * float(profile.a_H(0.0))
                 * np.sqrt(2.0 * mu_t * s0 + 0.0j))
    spin = (np.exp(1j * k.mu_spin * k.sigma * coeffs.spin_phase_integral / (k.hbar * k.s))
            if k.s != 0 else 1.0)

    X = x - xp - (k.c / k.e) * coeffs.drift_integral
    py, pyp, p0 = coeffs.S_H1
    s1 = py * y + pyp * yp + p0
    q_y2, q_yyp, q_yp2, q_y, q_yp, q0 = coeffs.S_H2
    s2 = q_y2 * y**2 + q_yyp * y * yp + q_yp2 * yp**2 + q_y * y + q_yp * yp + q0
    Q = s1**2 - 4.0 * s0 * s2
    return (pref * spin
            * np.exp(X**2 / (4.0j * k.hbar**2 * s0))
            * np.exp(Q / (4.0j * s0))
            * np.exp(s1 * X / (2.0j * k.hbar * s0)))


def pde_residual_green3d(profile: FieldProfile, sol: CharacteristicSolution,
                         r, r_prime, t: float, h_s: float = 1e-3, h_t: float = 1e-3,
                         qtol: float = 1e-10):
    """Finite-difference defect of i hbar G_t = H G with the 3D Hamiltonian

        H = (p_x + e H y/c)^2/(2m) + p_y^2/(2m) + p_z^2/(2m)
            - (mu sigma/s) H - y F

    (second-order central stencils in x, y, z, t)."""
    k = profile.constants
    x, y, z = r
    xp, yp, zp = r_prime

    def G(xx, yy, zz, tt):
        co = assemble_propagator3d(profile, sol, tt, qtol)
        return eval_green3d(co, (xx, yy, zz), (xp, yp, zp), tt, profile)

    co = assemble_propagator3d(profile, sol, t, qtol)

    def G0(xx, yy, zz):
        return eval_green3d(co, (xx, yy, zz), (xp, yp, zp), t, profile)

    g = G0(x, y, z)
    g_t = (G(x, y, z, t + h_t) - G(x, y, z, t - h_t)) / (2.0 * h_t)
    gxp, gxm = G0(x + h_s, y, z), G0(x - h_s, y, z)
    gyp, gym = G0(x, y + h_s, z), G0(x, y - h_s, z)
    gzp, gzm = G0(x, y, z + h_s), G0(x, y, z - h_s)
    g_x = (gxp - gxm) / (2.0 * h_s)
    lap = (gxp + gxm + gyp + gym + gzp + gzm - 6.0 * g) / h_s**2
    H_t = float(profile.H(t))
    F_t = float(profile.F(t))
    spin_term = (k.mu_spin * k.sigma / k.s) * H_t * g if k.s != 0 else 0.0
    return (1j * k.hbar * g_t
            + k.hbar**2 / (2.0 * k.m) * lap
            + 1j * k.hbar * (k.e * H_t * y / (k.m * k.c)) * g_x
            - (k.e * H_t * y) ** 2 / (2.0 * k.m * k.c**2) * g
            + spin_term + y * F_t * g)

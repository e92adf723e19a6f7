"""Time-dependent coefficient functions of the general quadratic Hamiltonian

    i dpsi/dt = -a(t) psi_xx + b(t) x^2 psi - i(c(t) x psi_x + d(t) psi)
                - f(t) x psi + i g(t) psi_x        [+ h(t)|psi|^(2s) psi]

in natural units (hbar = m = 1), together with the named presets used as
test oracles throughout the package and the (tau, sigma) coefficients of the
characteristic equation  mu'' - tau mu' + 4 sigma mu = 0.

All TimeFunction objects are immutable after construction, evaluate to finite
reals on their domain, and know their own exact derivative (polynomials and
sinusoids differentiate analytically; tabulated data uses the interpolant's
derivative).  That keeps the derivatives a' and d' used by tau_sigma free of
finite-difference noise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.interpolate import CubicSpline

from .errors import CoefficientSingularityError, UnknownPresetError

__all__ = [
    "TimeFunction",
    "Constant",
    "Polynomial",
    "Sinusoid",
    "Exponential",
    "Tabulated",
    "Sum",
    "Product",
    "Power",
    "CoefficientSet",
    "make_preset",
    "tau_sigma",
    "PRESETS",
]


class TimeFunction:
    """A real-valued function of time with an exact derivative.

    Subclasses implement ``__call__`` and ``derivative_fn``; both must accept
    scalars or numpy arrays.
    """

    def __call__(self, t):
        raise NotImplementedError

    def derivative_fn(self) -> "TimeFunction":
        raise NotImplementedError

    def derivative(self, t):
        return self.derivative_fn()(t)

    def __add__(self, other):
        return Sum((self, _as_timefunction(other)))

    def __mul__(self, other):
        return Product((self, _as_timefunction(other)))

    __radd__ = __add__
    __rmul__ = __mul__


def _as_timefunction(obj) -> TimeFunction:
    if isinstance(obj, TimeFunction):
        return obj
    return Constant(float(obj))


@dataclass(frozen=True)
class Constant(TimeFunction):
    value: float

    def __call__(self, t):
        return np.full_like(np.asarray(t, dtype=float), self.value) if np.ndim(t) else self.value

    def derivative_fn(self):
        return Constant(0.0)


@dataclass(frozen=True)
class Polynomial(TimeFunction):
    """sum_k coeffs[k] * t**k (ascending order)."""

    coeffs: tuple

    def __call__(self, t):
        return np.polynomial.polynomial.polyval(np.asarray(t, dtype=float), self.coeffs) + 0.0

    def derivative_fn(self):
        if len(self.coeffs) <= 1:
            return Constant(0.0)
        der = tuple(k * c for k, c in enumerate(self.coeffs))[1:]
        return Polynomial(der)


@dataclass(frozen=True)
class Sinusoid(TimeFunction):
    """amplitude * cos(frequency * t + phase) + offset."""

    amplitude: float
    frequency: float
    phase: float = 0.0
    offset: float = 0.0

    def __call__(self, t):
        return self.amplitude * np.cos(self.frequency * np.asarray(t, dtype=float) + self.phase) + self.offset

    def derivative_fn(self):
        # d/dt A cos(wt+p) = A w cos(wt + p + pi/2)
        return Sinusoid(self.amplitude * self.frequency, self.frequency, self.phase + math.pi / 2, 0.0)


@dataclass(frozen=True)
class Exponential(TimeFunction):
    """amplitude * exp(rate * t)."""

    amplitude: float
    rate: float

    def __call__(self, t):
        return self.amplitude * np.exp(self.rate * np.asarray(t, dtype=float))

    def derivative_fn(self):
        return Exponential(self.amplitude * self.rate, self.rate)


class Tabulated(TimeFunction):
    """Cubic-spline interpolation through (times, values); exact at its knots."""

    def __init__(self, times, values):
        times = np.asarray(times, dtype=float)
        values = np.asarray(values, dtype=float)
        if times.ndim != 1 or times.size < 4 or times.size != values.size:
            raise ValueError("tabulated function needs >= 4 matching knots")
        if not np.all(np.diff(times) > 0):
            raise ValueError("tabulated knots must be strictly increasing")
        self.times = times
        self.values = values
        self._spline = CubicSpline(times, values)

    def __call__(self, t):
        return self._spline(t) + 0.0

    def derivative_fn(self):
        return _SplineDerivative(self._spline.derivative(), self.times)


class _SplineDerivative(TimeFunction):
    def __init__(self, spline, times):
        self._spline = spline
        self._times = times

    def __call__(self, t):
        return self._spline(t) + 0.0

    def derivative_fn(self):
        return _SplineDerivative(self._spline.derivative(), self._times)


@dataclass(frozen=True)
class Sum(TimeFunction):
    terms: tuple

    def __call__(self, t):
        out = self.terms[0](t)
        for f in self.terms[1:]:
            out = out + f(t)
        return out

    def derivative_fn(self):
        return Sum(tuple(f.derivative_fn() for f in self.terms))


@dataclass(frozen=True)
class Product(TimeFunction):
    factors: tuple

    def __call__(self, t):
        out = self.factors[0](t)
        for f in self.factors[1:]:
            out = out * f(t)
        return out

    def derivative_fn(self):
        # product rule over all factors
        terms = []
        for i in range(len(self.factors)):
            fs = list(self.factors)
            fs[i] = fs[i].derivative_fn()
            terms.append(Product(tuple(fs)))
        return Sum(tuple(terms))


@dataclass(frozen=True)
class Power(TimeFunction):
    """base(t) ** exponent, for base > 0 on the working interval."""

    base: TimeFunction
    exponent: float

    def __call__(self, t):
        return self.base(t) ** self.exponent

    def derivative_fn(self):
        return Product((Constant(self.exponent), Power(self.base, self.exponent - 1.0),
                        self.base.derivative_fn()))


_ZERO = Constant(0.0)


@dataclass(frozen=True)
class CoefficientSet:
    """The six real coefficient functions of the quadratic Hamiltonian plus the
    optional nonlinearity strength h(t).  Immutable; safe to share across
    threads."""

    a: TimeFunction
    b: TimeFunction = _ZERO
    c: TimeFunction = _ZERO
    d: TimeFunction = _ZERO
    f: TimeFunction = _ZERO
    g: TimeFunction = _ZERO
    h: TimeFunction | None = None
    t_max: float = math.inf
    units_mode: str = "natural"
    label: str = "custom"

    def __post_init__(self):
        a0 = float(self.a(0.0))
        if a0 == 0.0 or not math.isfinite(a0):
            raise CoefficientSingularityError("a(0) must be nonzero and finite", {"a0": a0})

    def check_regular(self, T: float, samples: int = 400) -> None:
        """Raise if a(t) vanishes (or nearly does, relative to its scale) or
        any coefficient is non-finite on [0, T]."""
        ts = np.linspace(0.0, T, samples)
        a = np.asarray(self.a(ts), dtype=float)
        if (not np.all(np.isfinite(a)) or np.any(np.sign(a) != np.sign(a[0]))
                or np.min(np.abs(a)) < 1e-5 * np.max(np.abs(a))):
            raise CoefficientSingularityError(
                "a(t) vanishes or changes sign inside [0, T]; cap T below the singularity",
                {"T": T})
        for name in ("b", "c", "d", "f", "g"):
            vals = np.asarray(getattr(self, name)(ts), dtype=float)
            if not np.all(np.isfinite(vals)):
                raise CoefficientSingularityError(f"{name}(t) is non-finite inside [0, T]", {"T": T})


_SIN_2T = Sinusoid(1.0, 2.0, -math.pi / 2)          # sin 2t
_HALF_SIN_2T = Sinusoid(0.5, 2.0, -math.pi / 2)     # (1/2) sin 2t

PRESETS = ("free", "constant_force", "sho", "modified_oscillator", "custom")


def make_preset(name: str, params=(), **functions) -> CoefficientSet:
    """Build one of the named coefficient sets (natural units, hbar = m = 1).

    free                 a = 1/2, everything else 0
    constant_force [F]   a = 1/2, f = F
    sho [omega]          a = 1/2, b = omega^2/2
    modified_oscillator  a = (1+cos 2t)/2, b = (1-cos 2t)/2, c = sin 2t, d = (sin 2t)/2
    custom               pass the TimeFunctions as keyword arguments
    """
    params = list(params)
    if name == "free":
        return CoefficientSet(a=Constant(0.5), label="free")
    if name == "constant_force":
        force = params[0] if params else 1.0
        return CoefficientSet(a=Constant(0.5), f=Constant(float(force)), label="constant_force")
    if name == "sho":
        omega = params[0] if params else 1.0
        if omega <= 0:
            raise UnknownPresetError("sho preset needs omega > 0", {"omega": omega})
        return CoefficientSet(a=Constant(0.5), b=Constant(0.5 * omega**2), label="sho")
    if name == "modified_oscillator":
        return CoefficientSet(
            a=Sinusoid(0.5, 2.0, 0.0, 0.5),
            b=Sinusoid(-0.5, 2.0, 0.0, 0.5),
            c=_SIN_2T,
            d=_HALF_SIN_2T,
            # a(t) = cos^2 t vanishes at pi/2: the characteristic equation has
            # a tan t pole there, so the working interval ends at pi/2.
            t_max=math.pi / 2,
            label="modified_oscillator",
        )
    if name == "custom":
        if "a" not in functions:
            raise UnknownPresetError("custom preset needs at least a=TimeFunction")
        return CoefficientSet(label="custom", **functions)
    raise UnknownPresetError(f"unknown preset {name!r}", {"known": list(PRESETS)})


def tau_sigma(cs: CoefficientSet, t):
    """Coefficients of the characteristic equation mu'' - tau mu' + 4 sigma mu = 0:

        tau   = a'/a - 2c + 4d
        sigma = ab - cd + d^2 + a'd/(2a) - d'/2

    The sigma formula is the d->0-safe expansion (identical to the
    (d/2)(a'/a - d'/d) form whenever d != 0).
    """
    a = cs.a(t)
    if np.any(np.asarray(a) == 0.0):
        raise CoefficientSingularityError("a(t) = 0: characteristic coefficients undefined", {"t": t})
    ap = cs.a.derivative(t)
    b, c, d = cs.b(t), cs.c(t), cs.d(t)
    dp = cs.d.derivative(t)
    tau = ap / a - 2.0 * c + 4.0 * d
    sigma = a * b - c * d + d * d + ap * d / (2.0 * a) - dp / 2.0
    return tau, sigma

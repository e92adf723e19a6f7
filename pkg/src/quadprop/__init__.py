"""Exact propagators for one-dimensional time-dependent quadratic Hamiltonians
and for a charged spinning particle in time-varying perpendicular magnetic and
electric fields: Green-function construction, Cauchy problems by kernel
convolution, and closed-form particular solutions of an associated nonlinear
Schroedinger equation."""

from .coefficients import (
    CoefficientSet,
    Constant,
    Exponential,
    Polynomial,
    Power,
    Product,
    Sinusoid,
    Sum,
    Tabulated,
    TimeFunction,
    make_preset,
    tau_sigma,
)
from .characteristic import (
    CharacteristicSolution,
    closed_form_characteristic,
    first_focal_time,
    solve_characteristic,
)
from .green1d import (
    Green1D,
    QuadraticPhase,
    eval_green,
    pde_residual_green,
    phase_coefficients,
    phase_table,
    system_residuals,
)
from .cauchy import WaveFunction1D, crank_nicolson, l2_error, propagate
from .nls import (
    NLSParams,
    blowup_time,
    chi_s,
    nls_kernel_solution,
    nls_modified_oscillator,
    nls_residual,
    nls_simple_solution,
    xi_s,
)
from .bessel import bessel_j
from .magnetic3d import (
    FieldProfile,
    MagneticPhase,
    PhysicalConstants,
    Propagator3DCoeffs,
    assemble_propagator3d,
    discriminant_coeffs,
    eval_green3d,
    linear_field_mu,
    magnetic_phase,
    reduce_to_1d,
    s_polynomials,
    solve_mu_H,
)
from .oracles import OracleKernel, eval_oracle

__version__ = "0.1.0"

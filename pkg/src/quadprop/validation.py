"""Oracle-equivalence and property suites behind the ``validate`` CLI command.

Each suite returns a dict {name, status, metrics}; the report is fully
deterministic for a fixed seed (no timestamps or timings inside), so two runs
with the same seed produce byte-identical JSON.
"""

from __future__ import annotations

import math

import numpy as np

from .cauchy import crank_nicolson, gaussian_packet, l2_error, propagate
from .characteristic import closed_form_characteristic, solve_characteristic
from .coefficients import Constant, Polynomial, make_preset
from .green1d import Green1D, eval_green, phase_coefficients, phase_table, system_residuals
from .magnetic3d import (
    FieldProfile,
    PhysicalConstants,
    assemble_propagator3d,
    eval_green3d,
    linear_field_mu,
    magnetic_phase,
    reduce_to_1d,
    solve_mu_H,
)
from .nls import NLSParams, blowup_time, nls_simple_solution
from .oracles import (
    constant_force_kernel,
    free_particle_kernel,
    magnetic_constant_field_kernel,
    modified_oscillator_kernel,
    sho_kernel,
)

__all__ = ["run_validation", "oracle_times"]

_ORACLES_1D = {
    "free": lambda x, y, t: free_particle_kernel(x, y, t),
    "constant_force": lambda x, y, t: constant_force_kernel(x, y, t, force=1.0),
    "sho": lambda x, y, t: sho_kernel(x, y, t, omega=1.0),
    "modified_oscillator": modified_oscillator_kernel,
}

_PRESET_ARGS = {
    "free": (),
    "constant_force": (1.0,),
    "sho": (1.0,),
    "modified_oscillator": (),
}


def oracle_times(preset: str, n: int = 5):
    """Interior times inside the validity window (gamma/eps/kappa need
    mu' != 0, so sho and the modified oscillator are capped at pi/2)."""
    hi = {"free": 2.0, "constant_force": 2.0,
          "sho": 0.87 * math.pi / 2, "modified_oscillator": 0.87 * math.pi / 2}[preset]
    return np.linspace(0.15, hi, n)


def _solve_preset(preset: str, tol: float = 1e-12):
    cs = make_preset(preset, _PRESET_ARGS[preset])
    T = {"free": 2.6, "constant_force": 2.6, "sho": 1.55,
         "modified_oscillator": 1.55}[preset]
    return cs, solve_characteristic(cs, T, tol)


def suite_oracle_equivalence(n_grid: int = 21) -> dict:
    """Engine-built G (numeric mu + quadrature phases) vs the closed forms on
    n_grid x n_grid x 5 (x, y, t) samples, per preset."""
    xs = np.linspace(-2.0, 2.0, n_grid)
    X, Y = np.meshgrid(xs, xs)
    metrics, worst = {}, 0.0
    for preset, oracle in _ORACLES_1D.items():
        cs, sol = _solve_preset(preset)
        err = 0.0
        for p in phase_table(cs, sol, oracle_times(preset), 1e-12):
            g = Green1D(cs, sol, p)
            Ge = eval_green(g, X, Y)
            Go = oracle(X, Y, p.t)
            err = max(err, float(np.max(np.abs(Ge - Go) / np.abs(Go))))
        metrics[preset] = err
        worst = max(worst, err)
    return {"name": "oracle_equivalence_1d", "status": "pass" if worst <= 1e-7 else "fail",
            "metrics": {"max_rel_error": worst, "per_preset": metrics, "tolerance": 1e-7}}


def suite_characteristic_accuracy() -> dict:
    """Numeric mu vs the closed forms, relative to max |mu_cf|."""
    cases = {
        "free": ("free", (), 2.0),
        "sho": ("sho", (1.0,), 0.9 * math.pi),
        "modified_oscillator": ("modified_oscillator", (), 0.93 * math.pi / 2),
    }
    metrics, worst = {}, 0.0
    for label, (preset, params, hi) in cases.items():
        cs = make_preset(preset, params)
        num = solve_characteristic(cs, hi * 1.001, 1e-12)
        cf = closed_form_characteristic(preset, params, hi * 1.001)
        ts = np.linspace(0.0, hi, 600)
        mu_n = np.array([num.mu(t) for t in ts])
        mu_c = np.asarray(cf.mu(ts))
        err = float(np.max(np.abs(mu_n - mu_c)) / np.max(np.abs(mu_c)))
        metrics[label] = err
        worst = max(worst, err)
    return {"name": "characteristic_accuracy", "status": "pass" if worst <= 1e-8 else "fail",
            "metrics": {"max_rel_error": worst, "per_preset": metrics, "tolerance": 1e-8}}


def suite_system_residuals(n_times: int = 12) -> dict:
    metrics, worst = {}, 0.0
    for preset in _ORACLES_1D:
        cs, sol = _solve_preset(preset)
        times = oracle_times(preset, n_times)
        res = system_residuals(cs, sol, times)
        err = float(np.max(res))
        metrics[preset] = err
        worst = max(worst, err)
    return {"name": "phase_ode_residuals", "status": "pass" if worst <= 1e-6 else "fail",
            "metrics": {"max_residual": worst, "per_preset": metrics, "tolerance": 1e-6}}


def suite_small_time() -> dict:
    """Relative deviation from the free-kernel asymptotic limit <= 10 sqrt(t)."""
    xs = np.linspace(-1.0, 1.0, 9)
    X, Y = np.meshgrid(xs, xs)
    metrics, ok = {}, True
    for preset in _ORACLES_1D:
        cs, sol = _solve_preset(preset)
        a0 = float(cs.a(0.0))
        g0 = float(cs.g(0.0))
        per_t = {}
        for t in (1e-2, 1e-3, 1e-4):
            g = Green1D.at_time(cs, sol, t, 1e-13)
            Ge = eval_green(g, X, Y)
            Ga = (np.exp(1j * (X - Y) ** 2 / (4.0 * a0 * t)
                         + 1j * g0 * (X - Y) / (2.0 * a0))
                  / np.sqrt(4.0j * math.pi * a0 * t))
            dev = float(np.max(np.abs(Ge - Ga) / np.abs(Ga)))
            per_t[f"{t:g}"] = dev
            ok = ok and dev <= 10.0 * math.sqrt(t)
        metrics[preset] = per_t
    return {"name": "small_time_asymptotics", "status": "pass" if ok else "fail",
            "metrics": {"per_preset": metrics, "envelope": "10*sqrt(t)"}}


def suite_cauchy(n: int = 768, dt: float = 2e-3) -> dict:
    """Cross-oracle (propagate vs Crank-Nicolson) and conditional unitarity
    for the free-particle Gaussian; reduced resolution keeps validate fast,
    the full acceptance suite runs the stated N=1024/dt=1e-3 version."""
    cs, sol = _solve_preset("free")
    psi0 = gaussian_packet(n=n)
    pr = propagate(cs, sol, psi0, 1.0, 1e-10)
    cn = crank_nicolson(cs, psi0, 1.0, dt)
    cross = l2_error(pr, cn)
    drift = abs(pr.norm() - psi0.norm())
    ok = cross <= 5e-4 and drift <= 1e-5
    return {"name": "cauchy_cross_oracle", "status": "pass" if ok else "fail",
            "metrics": {"l2_cross_error": cross, "norm_drift": drift,
                        "grid_n": n, "dt": dt}}


def suite_nls(seed: int) -> dict:
    rng = np.random.default_rng(seed)
    worst_mod, worst_blow = 0.0, 0.0
    for _ in range(100):
        p = NLSParams(s=float(rng.uniform(0, 3)), h=float(rng.uniform(-2, 2)),
                      mu0=float(rng.uniform(0.5, 3.0)), mu1=float(rng.uniform(-1.0, 1.0)),
                      beta0=float(rng.uniform(-1, 1)), delta0=float(rng.uniform(-1, 1)),
                      y=float(rng.uniform(-1, 1)))
        t_hi = 3.0 if p.mu1 >= 0 else 0.9 * (-p.mu0 / p.mu1)
        t = float(rng.uniform(0.0, t_hi))
        x = float(rng.uniform(-2, 2))
        val = nls_simple_solution(p, x, t)
        worst_mod = max(worst_mod, abs(abs(val) - (p.mu0 + t * p.mu1) ** -0.5))
        if p.mu1 < 0:
            worst_blow = max(worst_blow, abs(blowup_time(p) - (-p.mu0 / p.mu1)))
    ok = worst_mod <= 1e-14 and worst_blow == 0.0
    return {"name": "nls_modulus_and_blowup", "status": "pass" if ok else "fail",
            "metrics": {"max_modulus_error": worst_mod, "max_blowup_error": worst_blow,
                        "draws": 100}}


def suite_magnetic() -> dict:
    const = PhysicalConstants(mu_spin=1.0)
    prof = FieldProfile(H=Constant(1.0), constants=const)
    sol = solve_mu_H(prof, 2.0, 1e-12)
    co = assemble_propagator3d(prof, sol, 0.4, 1e-12)
    q_err = float(max(abs(co.Q_coeffs[0] - 1.0), abs(co.Q_coeffs[1] + 2.0),
                      abs(co.Q_coeffs[2] - 1.0), abs(co.Q_coeffs[3]),
                      abs(co.Q_coeffs[4]), abs(co.Q_coeffs[5])))
    axes = np.linspace(-0.8, 0.8, 3)
    gx, gy, gz, hx, hy, hz = np.meshgrid(axes, axes, axes, axes, axes, axes, indexing="ij")
    Ge = eval_green3d(co, (gx, gy, gz), (hx, hy, hz), 0.4, prof)
    Go = magnetic_constant_field_kernel((gx, gy, gz), (hx, hy, hz), 0.4,
                                        mu_spin=1.0, s=0.5, sigma=0.5)
    kernel_err = float(np.max(np.abs(Ge - Go) / np.abs(Go)))

    # linear field vs Bessel closed form
    prof_lin = FieldProfile(H=Polynomial((1.0, 0.5)))
    sol_lin = solve_mu_H(prof_lin, 1.05, 1e-12)
    ts = np.linspace(0.02, 1.0, 40)
    mu_b, mup_b = linear_field_mu(1.0, 0.5, PhysicalConstants(), ts)
    mu_n = np.array([sol_lin.mu(t) for t in ts])
    bessel_err = float(np.max(np.abs(mu_b - mu_n)) / np.max(np.abs(mu_n)))

    ok = q_err <= 1e-10 and kernel_err <= 1e-7 and bessel_err <= 1e-6
    return {"name": "magnetic_oracles", "status": "pass" if ok else "fail",
            "metrics": {"constant_field_Q_error": q_err, "constant_field_kernel_error": kernel_err,
                        "bessel_mu_rel_error": bessel_err}}


def suite_ladder_consistency() -> dict:
    profiles = {
        "constant": FieldProfile(H=Constant(1.0)),
        "linear_H": FieldProfile(H=Polynomial((1.0, 0.5))),
        "constant_H_with_F": FieldProfile(H=Constant(1.0), F=Constant(0.8)),
    }
    p_x = 0.7
    metrics, worst = {}, 0.0
    mismatches = {}
    for label, prof in profiles.items():
        sol = solve_mu_H(prof, 1.4, 1e-12)
        cs_red = reduce_to_1d(prof, p_x)
        sol_red = solve_characteristic(cs_red, 1.4, 1e-12)
        hi = 0.9 * min(sol.window(), 1.3)
        err = 0.0
        for t in np.linspace(0.08, hi, 8):
            ph = magnetic_phase(prof, sol, t, 1e-12)
            gen = phase_coefficients(cs_red, sol_red, t, 1e-12)
            mu_t = float(sol.mu(t))
            lad = np.array([ph.alpha_H, ph.beta_H, ph.gamma_H,
                            ph.delta_full(p_x, prof, mu_t),
                            ph.eps_full(p_x, prof), ph.kappa_full(p_x, prof)])
            ref = np.array([gen.alpha, gen.beta, gen.gamma,
                            gen.delta, gen.epsilon, gen.kappa])
            err = max(err, float(np.max(np.abs(lad - ref))))
        metrics[label] = err
        worst = max(worst, err)
        co = assemble_propagator3d(prof, sol, hi, 1e-12)
        mismatches[label] = sorted(co.Q_mismatch)
    # the printed closed forms for B carry H-argument slips visible once H
    # varies; the direct expansion is authoritative, so the suite only
    # requires the slip report to match the known pattern
    expected = {"constant": [], "linear_H": ["B"], "constant_H_with_F": []}
    ok = worst <= 1e-7 and mismatches == expected
    return {"name": "ladder_vs_general", "status": "pass" if ok else "fail",
            "metrics": {"max_abs_deviation": worst, "per_profile": metrics,
                        "printed_discriminant_mismatch": mismatches,
                        "tolerance": 1e-7}}


def run_validation(seed: int = 0) -> dict:
    suites = [
        suite_oracle_equivalence(),
        suite_characteristic_accuracy(),
        suite_system_residuals(),
        suite_small_time(),
        suite_cauchy(),
        suite_nls(seed),
        suite_magnetic(),
        suite_ladder_consistency(),
    ]
    overall = "pass" if all(s["status"] == "pass" for s in suites) else "fail"
    return {"seed": seed, "overall": overall, "suites": suites}

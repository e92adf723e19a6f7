import math

import numpy as np
import pytest

from quadprop import (
    Constant,
    FieldProfile,
    PhysicalConstants,
    Polynomial,
    assemble_propagator3d,
    eval_green3d,
    linear_field_mu,
    magnetic_phase,
    phase_coefficients,
    reduce_to_1d,
    s_polynomials,
    solve_characteristic,
    solve_mu_H,
    tau_sigma,
)
from quadprop.errors import FieldZeroError, ValidityWindowError
from quadprop.magnetic3d import MagneticAux, pde_residual_green3d
from quadprop.oracles import magnetic_constant_field_kernel

CONST = PhysicalConstants()            # m = c = hbar = 1, e = -1
CONST_SPIN = PhysicalConstants(mu_spin=1.0)


def profile_constant(F=0.0, constants=CONST):
    return FieldProfile(H=Constant(1.0), F=Constant(F), constants=constants)


def profile_linear(H1=0.5, F=0.0, constants=CONST):
    return FieldProfile(H=Polynomial((1.0, H1)), F=Constant(F), constants=constants)


def ladder_vs_general(prof, p_x, times, T, tol=1e-12):
    sol = solve_mu_H(prof, T, tol)
    cs = reduce_to_1d(prof, p_x)
    sol_red = solve_characteristic(cs, T, tol)
    worst = 0.0
    for t in times:
        ph = magnetic_phase(prof, sol, float(t), tol)
        gen = phase_coefficients(cs, sol_red, float(t), tol)
        mu_t = float(sol.mu(t))
        lad = np.array([ph.alpha_H, ph.beta_H, ph.gamma_H,
                        ph.delta_full(p_x, prof, mu_t),
                        ph.eps_full(p_x, prof),
                        ph.kappa_full(p_x, prof)])
        ref = np.array([gen.alpha, gen.beta, gen.gamma, gen.delta, gen.epsilon, gen.kappa])
        worst = max(worst, float(np.max(np.abs(lad - ref))))
    return worst


def test_constants_validation():
    with pytest.raises(ValueError):
        PhysicalConstants(m=-1.0)
    with pytest.raises(ValueError):
        PhysicalConstants(e=0.0)
    with pytest.raises(ValueError):
        PhysicalConstants(s=0.5, sigma=0.75)
    with pytest.raises(ValueError):
        PhysicalConstants(s=1.0, sigma=0.5)
    PhysicalConstants(s=0.0, sigma=0.0)


def test_field_must_stay_positive():
    prof = FieldProfile(H=Polynomial((1.0, -2.0)), constants=CONST)
    with pytest.raises(FieldZeroError):
        solve_mu_H(prof, 1.0)


def test_aux_invariant_omega_aH_squared():
    prof = profile_linear(0.7)
    aux = MagneticAux(prof)
    ts = np.linspace(0.0, 1.0, 11)
    vals = aux.omega_H(ts) * aux.a_H(ts) ** 2
    np.testing.assert_allclose(vals, np.ones_like(ts), atol=1e-14)  # hbar/m = 1


def test_reduce_to_1d_constant_field():
    cs = reduce_to_1d(profile_constant(), 0.7)
    for t in (0.0, 0.5, 1.1):
        assert cs.a(t) == pytest.approx(0.5)       # omega_H/2 with omega_H = 1
        assert cs.b(t) == pytest.approx(0.5)
        assert cs.c(t) == pytest.approx(0.0, abs=1e-15)
        assert cs.g(t) == pytest.approx(0.0, abs=1e-15)


def test_reduce_to_1d_tau_zero_sigma_quarter_omega_sq():
    prof = profile_linear(0.7, F=0.3)
    cs = reduce_to_1d(prof, 0.4)
    ts = np.linspace(0.0, 1.2, 13)
    tau, sigma = tau_sigma(cs, ts)
    np.testing.assert_allclose(tau, np.zeros_like(ts), atol=1e-13)
    np.testing.assert_allclose(4.0 * sigma, np.asarray(prof.omega_H(ts)) ** 2, rtol=1e-13)


def test_solve_mu_H_constant_field_is_sine():
    sol = solve_mu_H(profile_constant(), 3.0, 1e-12)
    ts = np.linspace(0.0, 2.9, 30)
    np.testing.assert_allclose([sol.mu(t) for t in ts], np.sin(ts), atol=1e-10)
    assert sol.mu_prime(0.0) == pytest.approx(1.0, abs=1e-12)  # omega_H(0)


def test_solve_mu_H_small_time_slope():
    prof = profile_linear(0.9)
    sol = solve_mu_H(prof, 0.5, 1e-12)
    t = 1e-5
    assert sol.mu(t) == pytest.approx(float(prof.omega_H(0.0)) * t, rel=1e-4)


def test_linear_field_mu_matches_rk():
    prof = profile_linear(0.5)
    sol = solve_mu_H(prof, 1.05, 1e-12)
    ts = np.linspace(0.01, 1.0, 50)
    mu_b, mup_b = linear_field_mu(1.0, 0.5, CONST, ts)
    mu_n = np.array([sol.mu(t) for t in ts])
    mup_n = np.array([sol.mu_prime(t) for t in ts])
    assert np.max(np.abs(mu_b - mu_n)) <= 1e-6 * np.max(np.abs(mu_n))
    assert np.max(np.abs(mup_b - mup_n)) <= 1e-6 * np.max(np.abs(mup_n))


def test_linear_field_mu_at_zero():
    mu0, mup0 = linear_field_mu(1.0, 0.5, CONST, 0.0)
    assert abs(mu0) <= 1e-12
    assert mup0 == pytest.approx(1.0, abs=1e-12)   # |e| H0/(m c)


def test_linear_field_mu_small_H1_continuity():
    ts = np.linspace(0.05, 1.0, 20)
    mu_b, _ = linear_field_mu(1.0, 1e-4, CONST, ts)
    assert np.max(np.abs(mu_b - np.sin(ts))) <= 1e-3


def test_linear_field_mu_rejects_h1_zero_and_negative_H():
    with pytest.raises(ValueError):
        linear_field_mu(1.0, 0.0, CONST, 0.5)
    with pytest.raises(FieldZeroError):
        linear_field_mu(1.0, -2.0, CONST, 1.0)


def test_magnetic_phase_constant_field():
    prof = profile_constant()
    sol = solve_mu_H(prof, 2.0, 1e-12)
    ph = magnetic_phase(prof, sol, 0.7, 1e-12)
    assert ph.alpha_H == pytest.approx(0.5 / math.tan(0.7), abs=1e-10)
    assert ph.gamma_H == pytest.approx(0.5 / math.tan(0.7), abs=1e-10)
    assert ph.beta_H == pytest.approx(-1.0 / math.sin(0.7), abs=1e-10)
    for name in ("delta_F0", "delta_H1", "eps_F0", "eps_H1",
                 "kappa_F0", "kappa_F1", "kappa_H2"):
        assert abs(getattr(ph, name)) <= 1e-12


def test_magnetic_phase_f_zero_kills_force_ladder():
    prof = profile_linear(0.5)
    sol = solve_mu_H(prof, 1.3, 1e-12)
    ph = magnetic_phase(prof, sol, 0.9, 1e-12)
    for name in ("delta_F0", "eps_F0", "kappa_F0", "kappa_F1"):
        assert abs(getattr(ph, name)) <= 1e-12
    assert abs(ph.delta_H1) > 1e-3  # H varies: momentum ladder alive


def test_magnetic_phase_delta_F0_example():
    # H const, F = F0: delta_F0(t) = F0 (1 - cos t)
    prof = profile_constant(F=0.8)
    sol = solve_mu_H(prof, 2.0, 1e-12)
    for t in (0.3, 1.0):
        ph = magnetic_phase(prof, sol, t, 1e-12)
        assert ph.delta_F0 == pytest.approx(0.8 * (1.0 - math.cos(t)), abs=1e-11)


def test_delta_H1_two_printed_forms_agree():
    prof = profile_linear(0.5)
    sol = solve_mu_H(prof, 1.3, 1e-12)
    for t in (0.4, 0.9, 1.1):
        ph = magnetic_phase(prof, sol, t, 1e-12)
        assert abs(ph.delta_H1 - ph.delta_H1_alt) <= 1e-8


def test_magnetic_phase_window():
    prof = profile_constant()
    sol = solve_mu_H(prof, 3.0, 1e-12)
    with pytest.raises(ValidityWindowError):
        magnetic_phase(prof, sol, math.pi / 2 + 0.1)  # past the mu' zero


def test_s_polynomials_constant_field():
    prof = profile_constant()
    sol = solve_mu_H(prof, 2.0, 1e-12)
    t = 0.7
    ph = magnetic_phase(prof, sol, t, 1e-12)
    co = s_polynomials(ph, prof, t, sol)
    # textbook constant-field forms with m = hbar = omega = 1, e = -1
    assert co.S_H0 == pytest.approx(-math.tan(t / 2), abs=1e-10)
    sign = -1.0
    assert co.S_H1[0] == pytest.approx(-sign * math.tan(t / 2), abs=1e-10)
    assert co.S_H1[0] == pytest.approx(co.S_H1[1], abs=1e-12)   # symmetric in y, y'
    assert co.S_H1[2] == pytest.approx(0.0, abs=1e-12)
    cot, csc = 1 / math.tan(t), 1 / math.sin(t)
    np.testing.assert_allclose(co.S_H2, [0.5 * cot, -csc, 0.5 * cot, 0, 0, 0], atol=1e-10)


def test_s_polynomials_f_zero_constants_vanish():
    prof = profile_linear(0.5)
    sol = solve_mu_H(prof, 1.3, 1e-12)
    ph = magnetic_phase(prof, sol, 0.8, 1e-12)
    co = s_polynomials(ph, prof, 0.8, sol)
    assert abs(co.S_H1[2]) <= 1e-12
    assert abs(co.S_H2[3]) <= 1e-12 and abs(co.S_H2[4]) <= 1e-12 and abs(co.S_H2[5]) <= 1e-12


def test_discriminant_constant_field():
    prof = profile_constant()
    sol = solve_mu_H(prof, 2.0, 1e-12)
    co = assemble_propagator3d(prof, sol, 0.4, 1e-12)
    A, B, C, D, E, L = co.Q_coeffs
    assert A == pytest.approx(1.0, abs=1e-10)       # 1/hbar^2
    assert B == pytest.approx(-2.0, abs=1e-10)
    assert C == pytest.approx(1.0, abs=1e-10)
    assert abs(D) <= 1e-10 and abs(E) <= 1e-10 and abs(L) <= 1e-10
    assert co.Q_mismatch == {}


def test_discriminant_f_zero_lower_coeffs_vanish():
    prof = profile_linear(0.5)
    sol = solve_mu_H(prof, 1.3, 1e-12)
    co = assemble_propagator3d(prof, sol, 0.9, 1e-12)
    assert abs(co.Q_coeffs[3]) <= 1e-12
    assert abs(co.Q_coeffs[4]) <= 1e-12
    assert abs(co.Q_coeffs[5]) <= 1e-12


def test_discriminant_quadratic3_extraction():
    # A..L from second-derivative extraction of a numeric Q(y, y') sweep
    prof = profile_linear(0.5, F=0.6)
    sol = solve_mu_H(prof, 1.3, 1e-12)
    co = assemble_propagator3d(prof, sol, 0.8, 1e-12)
    s0 = co.S_H0
    py, pyp, p0 = co.S_H1
    qy2, qyyp, qyp2, qy, qyp, q0 = co.S_H2

    def Q(y, yp):
        s1 = py * y + pyp * yp + p0
        s2 = qy2 * y**2 + qyyp * y * yp + qyp2 * yp**2 + qy * y + qyp * yp + q0
        return s1**2 - 4.0 * s0 * s2

    h = 1e-4
    A = (Q(h, 0) - 2 * Q(0, 0) + Q(-h, 0)) / (2 * h * h)
    B = (Q(h, h) - Q(h, -h) - Q(-h, h) + Q(-h, -h)) / (4 * h * h)
    C = (Q(0, h) - 2 * Q(0, 0) + Q(0, -h)) / (2 * h * h)
    D = (Q(h, 0) - Q(-h, 0)) / (2 * h)
    E = (Q(0, h) - Q(0, -h)) / (2 * h)
    L = Q(0, 0)
    np.testing.assert_allclose([A, B, C, D, E, L], co.Q_coeffs, rtol=1e-6, atol=1e-8)


def test_printed_discriminant_mismatch_pattern():
    # the printed closed forms carry transcription slips in B (H arguments)
    # and E (an eps0*eps1 term printed as delta0*delta1); they are invisible
    # while H is constant resp. while F = 0.
    prof_c = profile_constant(F=0.8)
    sol_c = solve_mu_H(prof_c, 2.0, 1e-12)
    assert assemble_propagator3d(prof_c, sol_c, 0.9, 1e-12).Q_mismatch == {}

    prof_l = profile_linear(0.5)
    sol_l = solve_mu_H(prof_l, 1.3, 1e-12)
    assert sorted(assemble_propagator3d(prof_l, sol_l, 0.9, 1e-12).Q_mismatch) == ["B"]

    prof_lf = profile_linear(0.5, F=0.6)
    sol_lf = solve_mu_H(prof_lf, 1.3, 1e-12)
    assert sorted(assemble_propagator3d(prof_lf, sol_lf, 0.9, 1e-12).Q_mismatch) == ["B", "E"]


@pytest.mark.parametrize("profile_name,p_x", [
    ("constant", 0.7), ("linear", 0.7), ("constant_F", 0.7), ("linear_F", 0.9),
])
def test_ladder_vs_general_consistency(profile_name, p_x):
    prof = {
        "constant": profile_constant(),
        "linear": profile_linear(0.5),
        "constant_F": profile_constant(F=0.8),
        "linear_F": profile_linear(0.5, F=0.6),   # exercises kappa_F1
    }[profile_name]
    times = np.linspace(0.08, 1.1, 20)   # mu' of the linear profile vanishes at ~1.121
    assert ladder_vs_general(prof, p_x, times, 1.3) <= 1e-7


def test_ladder_vs_general_with_nonunit_hbar():
    # pins the e^2/(mc)^2 (hbar-free) reading of the eps integrals
    const = PhysicalConstants(m=1.3, e=-0.7, c=1.1, hbar=2.0)
    prof = FieldProfile(H=Polynomial((1.0, 0.4)), F=Constant(0.5), constants=const)
    times = np.linspace(0.1, 1.2, 10)
    assert ladder_vs_general(prof, 0.9, times, 1.4) <= 1e-7


def test_eval_green3d_matches_constant_field_closed_form():
    prof = profile_constant(constants=CONST_SPIN)
    sol = solve_mu_H(prof, 2.0, 1e-12)
    t = 0.4
    co = assemble_propagator3d(prof, sol, t, 1e-12)
    axes = np.linspace(-1.0, 1.0, 3)
    g = np.meshgrid(*([axes] * 6), indexing="ij")
    Ge = eval_green3d(co, tuple(g[:3]), tuple(g[3:]), t, prof)
    Go = magnetic_constant_field_kernel(tuple(g[:3]), tuple(g[3:]), t,
                                        mu_spin=1.0, s=0.5, sigma=0.5)
    assert np.max(np.abs(Ge - Go) / np.abs(Go)) <= 1e-7


def test_eval_green3d_z_factor_modulus():
    prof = profile_constant()
    sol = solve_mu_H(prof, 2.0, 1e-12)
    t = 1.0
    co = assemble_propagator3d(prof, sol, t, 1e-12)
    val_same_z = eval_green3d(co, (0.0, 0.0, 0.3), (0.0, 0.0, 0.3), t, prof)
    val_other = eval_green3d(co, (0.0, 0.0, 0.8), (0.0, 0.0, 0.3), t, prof)
    # the z-dependence is a pure free-particle factor: same modulus everywhere
    assert abs(val_same_z) == pytest.approx(abs(val_other), rel=1e-12)


def test_eval_green3d_f_zero_drift_free():
    prof = profile_linear(0.5, constants=PhysicalConstants(s=0.5, sigma=0.5, mu_spin=0.0))
    sol = solve_mu_H(prof, 1.3, 1e-12)
    t = 0.8
    co = assemble_propagator3d(prof, sol, t, 1e-12)
    assert co.drift_integral == 0.0
    # x-dependence only through x - x': translation invariance in x
    v1 = eval_green3d(co, (0.3, 0.2, 0.1), (0.1, -0.2, 0.4), t, prof)
    v2 = eval_green3d(co, (1.3, 0.2, 0.1), (1.1, -0.2, 0.4), t, prof)
    assert v1 == pytest.approx(v2, rel=1e-12)


def test_eval_green3d_spin_phase():
    t = 0.4
    prof0 = profile_constant()
    prof1 = profile_constant(constants=CONST_SPIN)
    sol = solve_mu_H(prof0, 2.0, 1e-12)
    co0 = assemble_propagator3d(prof0, sol, t, 1e-12)
    co1 = assemble_propagator3d(prof1, sol, t, 1e-12)
    r, rp = (0.1, 0.2, 0.3), (0.0, -0.1, 0.2)
    ratio = eval_green3d(co1, r, rp, t, prof1) / eval_green3d(co0, r, rp, t, prof0)
    assert ratio == pytest.approx(np.exp(1j * t), abs=1e-10)  # mu sigma/(hbar s) int H = t


def test_pde_residual_green3d_constant_field():
    prof = profile_constant(constants=CONST_SPIN)
    sol = solve_mu_H(prof, 2.0, 1e-12)
    t = 0.6
    co = assemble_propagator3d(prof, sol, t, 1e-12)
    for r, rp in (((0.4, -0.3, 0.2), (0.1, 0.2, -0.1)),
                  ((-0.5, 0.6, 0.0), (0.2, -0.4, 0.3))):
        res = pde_residual_green3d(prof, sol, r, rp, t)
        g = eval_green3d(co, r, rp, t, prof)
        assert abs(res) <= 1e-3 * abs(g)


def test_eval_green3d_time_mismatch_raises():
    prof = profile_constant()
    sol = solve_mu_H(prof, 2.0, 1e-12)
    co = assemble_propagator3d(prof, sol, 0.4, 1e-12)
    with pytest.raises(ValueError):
        eval_green3d(co, (0, 0, 0), (0, 0, 0), 0.5, prof)

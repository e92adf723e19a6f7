import math

import numpy as np
import pytest

from quadprop import (
    Constant,
    Green1D,
    Polynomial,
    eval_green,
    make_preset,
    pde_residual_green,
    phase_coefficients,
    phase_table,
    solve_characteristic,
    system_residuals,
)
from quadprop.errors import ValidityWindowError
from quadprop.oracles import (
    constant_force_kernel,
    free_particle_kernel,
    modified_oscillator_kernel,
    sho_kernel,
)

from conftest import preset_times

ORACLES = {
    "free": lambda x, y, t: free_particle_kernel(x, y, t),
    "constant_force": lambda x, y, t: constant_force_kernel(x, y, t, force=1.0),
    "sho": lambda x, y, t: sho_kernel(x, y, t, omega=1.0),
    "modified_oscillator": modified_oscillator_kernel,
}


def test_phase_free_t1(solved):
    cs, sol = solved["free"]
    p = phase_coefficients(cs, sol, 1.0, 1e-12)
    assert p.alpha == pytest.approx(0.5, abs=1e-11)
    assert p.beta == pytest.approx(-1.0, abs=1e-11)
    assert p.gamma == pytest.approx(0.5, abs=1e-11)
    assert abs(p.delta) + abs(p.epsilon) + abs(p.kappa) <= 1e-12


def test_phase_sho_pi4(solved):
    cs, sol = solved["sho"]
    p = phase_coefficients(cs, sol, math.pi / 4, 1e-12)
    assert p.alpha == pytest.approx(0.5, abs=1e-10)
    assert p.gamma == pytest.approx(0.5, abs=1e-10)
    assert p.beta == pytest.approx(-math.sqrt(2.0), abs=1e-10)


def test_phase_constant_force(solved):
    cs, sol = solved["constant_force"]
    p = phase_coefficients(cs, sol, 1.0, 1e-12)
    assert p.delta == pytest.approx(0.5, abs=1e-11)
    assert p.epsilon == pytest.approx(0.5, abs=1e-11)
    assert p.kappa == pytest.approx(-1.0 / 24.0, abs=1e-11)


def test_phase_initial_data_limits(solved):
    # delta(0) = g(0)/(2a(0)), eps(0) = -delta(0), kappa(0) = 0 as t -> 0+
    cs = make_preset("custom", a=Constant(0.5), g=Constant(0.8))
    sol = solve_characteristic(cs, 1.0, 1e-12)
    p = phase_coefficients(cs, sol, 1e-6, 1e-14)
    assert p.delta == pytest.approx(0.8, abs=1e-5)
    assert p.epsilon == pytest.approx(-0.8, abs=1e-5)
    assert p.kappa == pytest.approx(0.0, abs=1e-5)


def test_phase_rejects_time_beyond_window(solved):
    cs, sol = solved["sho"]
    with pytest.raises(ValidityWindowError):
        phase_coefficients(cs, sol, math.pi / 2 + 0.01)
    with pytest.raises(ValidityWindowError):
        phase_coefficients(cs, sol, 0.0)


def test_eval_green_free_diagonal(solved):
    cs, sol = solved["free"]
    g = Green1D.at_time(cs, sol, 1.0, 1e-12)
    val = eval_green(g, 0.4, 0.4)
    assert abs(val) == pytest.approx((2 * math.pi) ** -0.5, abs=1e-12)
    assert np.angle(val) == pytest.approx(-math.pi / 4, abs=1e-10)


def test_eval_green_sho_near_quarter_period():
    # at t = pi/2 the oscillator kernel value at (x=1, y=0) is (2 pi i)^(-1/2); the
    # quadrature window ends there, so approach from below
    cs = make_preset("sho", [1.0])
    sol = solve_characteristic(cs, 1.6, 1e-12)
    t = math.pi / 2 - 1e-3
    g = Green1D.at_time(cs, sol, t, 1e-12)
    val = eval_green(g, 1.0, 0.0)
    expect = 1.0 / np.sqrt(2.0j * math.pi)
    assert abs(val - expect) <= 1e-2 * abs(expect)
    assert abs(val - sho_kernel(1.0, 0.0, t)) <= 1e-8 * abs(val)


@pytest.mark.parametrize("preset", list(ORACLES))
def test_eval_green_small_time_asymptotics(preset, solved):
    cs, sol = solved[preset]
    a0 = float(cs.a(0.0))
    xs = np.linspace(-1.0, 1.0, 9)
    X, Y = np.meshgrid(xs, xs)
    for t in (1e-2, 1e-3, 1e-4):
        g = Green1D.at_time(cs, sol, t, 1e-13)
        Ge = eval_green(g, X, Y)
        Ga = np.exp(1j * (X - Y) ** 2 / (4 * a0 * t)) / np.sqrt(4.0j * math.pi * a0 * t)
        dev = np.max(np.abs(Ge - Ga) / np.abs(Ga))
        assert dev <= 10.0 * math.sqrt(t)
        if t == 1e-4:
            assert dev <= 1e-2  # within 1% at t = 1e-4


@pytest.mark.parametrize("preset", list(ORACLES))
def test_oracle_equivalence_grid(preset, solved):
    # engine-built G vs closed forms on a 21x21x5 (x, y, t) grid
    cs, sol = solved[preset]
    xs = np.linspace(-2.0, 2.0, 21)
    X, Y = np.meshgrid(xs, xs)
    for p in phase_table(cs, sol, preset_times(preset), 1e-12):
        g = Green1D(cs, sol, p)
        Ge = eval_green(g, X, Y)
        Go = ORACLES[preset](X, Y, p.t)
        assert np.max(np.abs(Ge - Go) / np.abs(Go)) <= 1e-7


def test_amplitude_law(solved):
    for preset, (cs, sol) in solved.items():
        for t in preset_times(preset, 4):
            mu = float(sol.mu(t))
            if mu <= 0:
                continue
            g = Green1D.at_time(cs, sol, t, 1e-12)
            val = eval_green(g, np.array([0.3, -1.2]), np.array([0.1, 0.7]))
            np.testing.assert_allclose(np.abs(val), (2 * math.pi * mu) ** -0.5, atol=1e-12)


def test_system_residuals_examples(solved):
    cs, sol = solved["free"]
    assert np.max(system_residuals(cs, sol, 1.0)) <= 1e-8
    cs, sol = solved["sho"]
    assert system_residuals(cs, sol, 0.7)[0] <= 1e-7  # Riccati equation
    cs, sol = solved["constant_force"]
    assert system_residuals(cs, sol, 0.5)[3] <= 1e-7  # delta equation


@pytest.mark.parametrize("preset", list(ORACLES))
def test_system_residuals_fifty_times(preset, solved):
    cs, sol = solved[preset]
    times = preset_times(preset, 50, lo=0.1)
    res = system_residuals(cs, sol, times)
    assert np.max(res) <= 1e-6


def test_system_residuals_with_momentum_term():
    # g != 0 exercises the epsilon/kappa source paths the presets miss
    cs = make_preset("custom", a=Constant(0.5), g=Polynomial((0.3, 1.0)))
    sol = solve_characteristic(cs, 2.0, 1e-12)
    res = system_residuals(cs, sol, np.linspace(0.1, 1.6, 12))
    assert np.max(res) <= 1e-6


def test_pde_residual_examples(solved):
    cs, sol = solved["free"]
    g = Green1D.at_time(cs, sol, 1.0, 1e-12)
    r = pde_residual_green(cs, g, 0.3, 0.0, 1.0)
    assert abs(r) <= 1e-4 * abs(eval_green(g, 0.3, 0.0))

    cs, sol = solved["modified_oscillator"]
    g = Green1D.at_time(cs, sol, 0.8, 1e-12)
    r = pde_residual_green(cs, g, 0.5, 0.2, 0.8)
    assert abs(r) <= 1e-3 * abs(eval_green(g, 0.5, 0.2))

    cs, sol = solved["sho"]
    g = Green1D.at_time(cs, sol, 0.5, 1e-12)
    r = pde_residual_green(cs, g, 0.0, 0.0, 0.5)
    assert abs(r) <= 1e-4 * abs(eval_green(g, 0.0, 0.0))


@pytest.mark.parametrize("preset", list(ORACLES))
def test_pde_defect_relative(preset, solved):
    cs, sol = solved[preset]
    for t in preset_times(preset, 3, lo=0.3):
        g = Green1D.at_time(cs, sol, float(t), 1e-12)
        for x, y in ((0.4, -0.3), (-0.8, 0.6)):
            r = pde_residual_green(cs, g, x, y, float(t))
            assert abs(r) <= 1e-3 * abs(eval_green(g, x, y))


def test_eval_refuses_focal_caustic():
    from quadprop import CharacteristicSolution, QuadraticPhase

    cs = make_preset("free")
    stub = CharacteristicSolution(t_max=1.0, mu=lambda t: 0.0, mu_prime=lambda t: 1.0,
                                  focal_times=(0.5,), source="closed_form")
    g = Green1D(cs, stub, QuadraticPhase(0.5, 0, 0, 0, 0, 0, 0))
    with pytest.raises(ValidityWindowError):
        eval_green(g, 0.1, 0.2)

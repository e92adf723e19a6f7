import math

import numpy as np
import pytest

from quadprop import (
    closed_form_characteristic,
    first_focal_time,
    make_preset,
    solve_characteristic,
    tau_sigma,
)
from quadprop.errors import CoefficientSingularityError, UnknownPresetError

# frozen from the closed form mu = cos t sinh t + sin t cosh t
MU_MODOSC_PI4 = 1.5508831969180257
MODOSC_FIRST_FOCAL = 2.365020372431352


def test_sho_numeric_matches_sine(solved):
    cs, _ = solved["sho"]
    sol = solve_characteristic(cs, math.pi + 0.05, 1e-10)
    assert sol.mu(math.pi / 2) == pytest.approx(1.0, abs=1e-9)
    assert sol.focal_times and sol.focal_times[0] == pytest.approx(math.pi, abs=1e-10)


def test_free_numeric_is_linear(solved):
    cs, _ = solved["free"]
    sol = solve_characteristic(cs, 2.0, 1e-10)
    ts = np.linspace(0.0, 1.9, 13)
    np.testing.assert_allclose([sol.mu(t) for t in ts], ts, atol=1e-10)
    assert sol.focal_times == ()


def test_modified_oscillator_value_at_pi_over_4(solved):
    _, sol = solved["modified_oscillator"]
    assert sol.mu(math.pi / 4) == pytest.approx(MU_MODOSC_PI4, abs=1e-9)


def test_closed_form_sho_omega2_focal_times():
    sol = closed_form_characteristic("sho", [2.0], math.pi)
    np.testing.assert_allclose(sol.focal_times, [math.pi / 2, math.pi], atol=1e-14)


def test_closed_form_free_constant_slope():
    sol = closed_form_characteristic("free", (), 5.0)
    ts = np.linspace(0.0, 5.0, 11)
    np.testing.assert_allclose(sol.mu_prime(ts), np.ones_like(ts))


def test_closed_form_modified_oscillator_first_focal():
    sol = closed_form_characteristic("modified_oscillator", (), 3.0)
    assert sol.focal_times[0] == pytest.approx(MODOSC_FIRST_FOCAL, abs=1e-10)
    assert math.pi / 2 < sol.focal_times[0] < math.pi


def test_closed_form_unknown_preset():
    with pytest.raises(UnknownPresetError):
        closed_form_characteristic("custom")


def test_first_focal_time():
    assert first_focal_time(closed_form_characteristic("sho", [1.0], math.pi)) == pytest.approx(math.pi)
    assert first_focal_time(closed_form_characteristic("free", (), 10.0)) is None
    sol = solve_characteristic(make_preset("sho", [1.0]), 1.0, 1e-10)
    assert first_focal_time(sol) is None  # sin t > 0 on (0, 1]


def test_initial_data_exactness(solved):
    for preset, (cs, sol) in solved.items():
        assert abs(sol.mu(0.0)) <= 1e-12
        assert abs(sol.mu_prime(0.0) - 2.0 * float(cs.a(0.0))) <= 1e-12


@pytest.mark.parametrize("preset,params,hi", [
    ("free", (), 2.0),
    ("sho", (1.0,), 0.9 * math.pi),
    ("modified_oscillator", (), 0.93 * math.pi / 2),
])
def test_numeric_vs_closed_form(preset, params, hi):
    # hi = 0.9 * first focal time, additionally capped below the coefficient
    # pole for the modified oscillator
    cs = make_preset(preset, params)
    num = solve_characteristic(cs, hi * 1.001, 1e-12)
    cf = closed_form_characteristic(preset, params, hi * 1.001)
    ts = np.linspace(0.0, hi, 400)
    mu_n = np.array([num.mu(t) for t in ts])
    mu_c = np.asarray(cf.mu(ts))
    assert np.max(np.abs(mu_n - mu_c)) <= 1e-8 * np.max(np.abs(mu_c))


@pytest.mark.parametrize("tol", [1e-8, 1e-10])
def test_ode_residual_of_dense_output(tol):
    # mu'' from a 4th-order difference of the dense mu' interpolant, so the
    # residual measures the solver, not the stencil; bound scales with tol
    for preset, params, T in (("sho", (1.0,), 1.5), ("modified_oscillator", (), 1.4)):
        cs = make_preset(preset, params)
        sol = solve_characteristic(cs, T, tol)
        h = 2e-3
        ts = np.linspace(3 * h, T - 3 * h, 1000)
        mu = np.array([sol.mu(t) for t in ts])
        mup = np.array([sol.mu_prime(t) for t in ts])
        mupp = np.array([(-sol.mu_prime(t + 2 * h) + 8 * sol.mu_prime(t + h)
                          - 8 * sol.mu_prime(t - h) + sol.mu_prime(t - 2 * h)) / (12 * h)
                         for t in ts])
        tau, sigma = tau_sigma(cs, ts)
        res = np.abs(mupp - tau * mup + 4.0 * sigma * mu)
        assert np.all(res <= 100.0 * tol * (1.0 + np.abs(mu) + np.abs(mup)))


def test_mu_prime_is_derivative_of_mu(solved):
    h = 3e-4
    for preset, (cs, sol) in solved.items():
        ts = np.linspace(2 * h, sol.t_max - 2 * h, 200)
        fd = np.array([(sol.mu(t + h) - sol.mu(t - h)) / (2 * h) for t in ts])
        mup = np.array([sol.mu_prime(t) for t in ts])
        assert np.max(np.abs(fd - mup)) <= 1e-6 * np.max(np.abs(mup))


def test_constant_sign_between_focal_times():
    sol = solve_characteristic(make_preset("sho", [2.0]), 3.1, 1e-12)
    assert len(sol.focal_times) == 1  # pi/2 (3.1 < pi misses the second)
    f0 = sol.focal_times[0]
    left = np.sign([sol.mu(t) for t in np.linspace(0.05, f0 - 0.05, 20)])
    right = np.sign([sol.mu(t) for t in np.linspace(f0 + 0.05, 3.05, 20)])
    assert np.all(left == left[0]) and np.all(right == right[0]) and left[0] != right[0]


def test_window_capped_by_mu_prime_zero():
    sol = solve_characteristic(make_preset("sho", [1.0]), 3.0, 1e-10)
    assert sol.window() == pytest.approx(math.pi / 2, abs=1e-9)


def test_solver_rejects_coefficient_pole():
    with pytest.raises(CoefficientSingularityError):
        solve_characteristic(make_preset("modified_oscillator"), 2.0, 1e-10)


def test_solver_rejects_bad_arguments():
    cs = make_preset("free")
    with pytest.raises(ValueError):
        solve_characteristic(cs, -1.0, 1e-10)
    with pytest.raises(ValueError):
        solve_characteristic(cs, 1.0, 0.0)

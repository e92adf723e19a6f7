"""Configuration-driven command-line front end.

Commands: characteristic, green1d, propagate, nls, magnetic3d, validate.
Every run reads an optional JSON config (flags override config fields), writes
CSV data at 17 significant digits (round-trip safe for 64-bit floats), a
metadata/manifest JSON sufficient to re-run it exactly, and exits nonzero with
machine-readable error JSON {code, module, message, context} on failure.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__
from .cauchy import WaveFunction1D, propagate
from .characteristic import solve_characteristic
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
    make_preset,
)
from .errors import ConfigError, QuadpropError
from .green1d import Green1D, eval_green, phase_coefficients
from .magnetic3d import (
    FieldProfile,
    PhysicalConstants,
    assemble_propagator3d,
    eval_green3d,
    solve_mu_H,
)
from .nls import (
    NLSParams,
    blowup_time,
    nls_kernel_solution,
    nls_modified_oscillator,
    nls_simple_solution,
)
from .validation import run_validation

__all__ = ["main"]

_FMT = "%.17g"


def _fmt(v: float) -> str:
    return _FMT % v


def _timefunction_from_spec(spec) -> "object":
    """{kind, ...} -> TimeFunction.  Kinds: constant, polynomial, sinusoid,
    exponential, tabulated, sum, product, power."""
    if isinstance(spec, (int, float)):
        return Constant(float(spec))
    kind = spec.get("kind")
    if kind == "constant":
        return Constant(float(spec["value"]))
    if kind == "polynomial":
        return Polynomial(tuple(float(c) for c in spec["coeffs"]))
    if kind == "sinusoid":
        return Sinusoid(float(spec["amplitude"]), float(spec["frequency"]),
                        float(spec.get("phase", 0.0)), float(spec.get("offset", 0.0)))
    if kind == "exponential":
        return Exponential(float(spec["amplitude"]), float(spec["rate"]))
    if kind == "tabulated":
        return Tabulated(spec["times"], spec["values"])
    if kind == "sum":
        return Sum(tuple(_timefunction_from_spec(s) for s in spec["terms"]))
    if kind == "product":
        return Product(tuple(_timefunction_from_spec(s) for s in spec["factors"]))
    if kind == "power":
        return Power(_timefunction_from_spec(spec["base"]), float(spec["exponent"]))
    raise ConfigError(f"unknown TimeFunction kind {kind!r}")


def _coefficients_from_config(cfg: dict) -> CoefficientSet:
    spec = cfg.get("coefficients", {"preset": "free"})
    if "preset" in spec:
        return make_preset(spec["preset"], spec.get("params", ()))
    fns = {k: _timefunction_from_spec(v) for k, v in spec.items() if k in "abcdfgh"}
    if "a" not in fns:
        raise ConfigError("custom coefficients need at least 'a'")
    return make_preset("custom", **fns)


def _grid_from_config(cfg: dict, name: str, default=(-2.0, 2.0, 21)):
    g = cfg.get("grid", {}).get(name, list(default))
    lo, hi, n = float(g[0]), float(g[1]), int(g[2])
    if n < 2:
        raise ConfigError(f"grid counts must be >= 2 (grid {name!r} has {n})")
    return np.linspace(lo, hi, n)


def _positive(cfg: dict, key: str, default: float) -> float:
    v = float(cfg.get(key, default))
    if v <= 0:
        raise ConfigError(f"{key} must be positive (got {v})")
    return v


def _out_dir(cfg: dict) -> Path:
    out = Path(cfg.get("out", "."))
    out.mkdir(parents=True, exist_ok=True)
    if not out.is_dir():
        raise ConfigError(f"output path {out} is not a directory")
    return out


def _write_csv(path: Path, header: list, columns: list) -> None:
    rows = zip(*columns)
    with open(path, "w") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(_fmt(v) for v in row) + "\n")


def _write_json(path: Path, payload: dict) -> None:
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _manifest(cfg: dict, command: str, extra: dict | None = None) -> dict:
    man = {"command": command, "config": cfg, "version": __version__,
           "elapsed_s": None}
    if extra:
        man.update(extra)
    return man


def cmd_characteristic(cfg: dict) -> int:
    cs = _coefficients_from_config(cfg)
    tol = _positive(cfg, "tol", 1e-10)
    t_hi = _positive(cfg, "t", 1.0)
    out = _out_dir(cfg)
    n = int(cfg.get("grid", {}).get("t_count", 201))
    if n < 2:
        raise ConfigError("grid counts must be >= 2")
    start = time.perf_counter()
    sol = solve_characteristic(cs, t_hi * 1.0000001, tol)
    ts = np.linspace(0.0, t_hi, n)
    mu = np.array([float(sol.mu(t)) for t in ts])
    mup = np.array([float(sol.mu_prime(t)) for t in ts])
    _write_csv(out / "characteristic.csv", ["t", "mu", "mu_prime"], [ts, mu, mup])
    _write_json(out / "characteristic_meta.json", _manifest(cfg, "characteristic", {
        "focal_times": list(sol.focal_times),
        "mu_prime_zeros": list(sol.mu_prime_zeros),
        "elapsed_s": time.perf_counter() - start,
    }))
    return 0


def cmd_green1d(cfg: dict) -> int:
    cs = _coefficients_from_config(cfg)
    tol = _positive(cfg, "tol", 1e-10)
    qtol = _positive(cfg, "qtol", 1e-10)
    t = _positive(cfg, "t", 0.5)
    out = _out_dir(cfg)
    xs = _grid_from_config(cfg, "x")
    ys = _grid_from_config(cfg, "y")
    sol = solve_characteristic(cs, t * 1.05, tol)
    phase = phase_coefficients(cs, sol, t, qtol)
    g = Green1D(cs, sol, phase)
    X, Y = np.meshgrid(xs, ys, indexing="ij")
    G = eval_green(g, X, Y)
    _write_csv(out / "green1d.csv", ["x", "y", "re_G", "im_G"],
               [X.ravel(), Y.ravel(), G.real.ravel(), G.imag.ravel()])
    _write_json(out / "green1d_phase.json", _manifest(cfg, "green1d", {
        "phase": phase.as_dict(), "mu": g.mu,
    }))
    return 0


def cmd_propagate(cfg: dict) -> int:
    cs = _coefficients_from_config(cfg)
    tol = _positive(cfg, "tol", 1e-10)
    qtol = _positive(cfg, "qtol", 1e-9)
    t = _positive(cfg, "t", 0.5)
    out = _out_dir(cfg)
    psi0_path = cfg.get("psi0")
    if not psi0_path:
        raise ConfigError("propagate needs 'psi0': path to a CSV with columns x,re,im")
    data = np.genfromtxt(psi0_path, delimiter=",", names=True)
    psi0 = WaveFunction1D(data["x"], data["re"] + 1j * data["im"])
    sol = solve_characteristic(cs, t * 1.05, tol)
    psi = propagate(cs, sol, psi0, t, qtol)
    _write_csv(out / "propagate.csv", ["x", "re", "im"],
               [psi.x, psi.values.real, psi.values.imag])
    edge_mass = float(abs(psi0.values[0]) + abs(psi0.values[-1]))
    mu_t = abs(float(sol.mu(t)))
    _write_json(out / "propagate_meta.json", _manifest(cfg, "propagate", {
        "norm_initial": psi0.norm(),
        "norm_final": psi.norm(),
        "truncation_estimate": edge_mass / np.sqrt(2.0 * np.pi * mu_t),
    }))
    return 0


def cmd_nls(cfg: dict) -> int:
    family = cfg.get("family", "simple")
    out = _out_dir(cfg)
    xs = _grid_from_config(cfg, "x")
    ts = _grid_from_config(cfg, "t", (0.0, 1.0, 11))
    meta: dict = {"family": family}
    if family == "simple":
        p = NLSParams(**cfg.get("params", {}))
        t0 = blowup_time(p)
        meta["blowup_time"] = t0
        if t0 is not None and ts[-1] >= t0:
            raise ConfigError(f"time grid reaches the blow-up time t0={t0}")
        vals = np.array([nls_simple_solution(p, xs, t) for t in ts])
    elif family == "kernel":
        prm = cfg.get("params", {})
        eps = float(prm.get("epsilon", 0.1))
        vals = np.array([nls_kernel_solution(eps, float(prm.get("h", 1.0)),
                                             float(prm.get("s", 1.0)), xs,
                                             float(prm.get("y", 0.0)), t) for t in ts])
        meta["blowup_time"] = None
    elif family == "modified_oscillator":
        prm = cfg.get("params", {})
        vals = np.array([nls_modified_oscillator(float(prm.get("s", 1.0)), xs,
                                                 float(prm.get("y", 0.0)), t) for t in ts])
        meta["blowup_time"] = 2.3470455664870875  # first zero of cos t cosh t + sin t sinh t
    else:
        raise ConfigError(f"unknown nls family {family!r}")
    T, X = np.meshgrid(ts, xs, indexing="ij")
    _write_csv(out / "nls.csv", ["t", "x", "re", "im", "abs"],
               [T.ravel(), X.ravel(), vals.real.ravel(), vals.imag.ravel(),
                np.abs(vals).ravel()])
    _write_json(out / "nls_meta.json", _manifest(cfg, "nls", meta))
    return 0


def _parse_field(text: str):
    kind, _, rest = text.partition(":")
    if kind == "zero":
        return Constant(0.0)
    vals = [float(v) for v in rest.split(",")] if rest else []
    if kind == "const":
        return Constant(vals[0] if vals else 1.0)
    if kind == "linear":
        return Polynomial((vals[0], vals[1]))
    raise ConfigError(f"field spec {text!r} not understood (use const:H0, linear:H0,H1 or zero)")


def cmd_magnetic3d(cfg: dict) -> int:
    const = PhysicalConstants(**cfg.get("constants", {}))
    prof = FieldProfile(H=_parse_field(cfg.get("H", "const:1.0")),
                        F=_parse_field(cfg.get("F", "zero")),
                        constants=const)
    tol = _positive(cfg, "tol", 1e-10)
    qtol = _positive(cfg, "qtol", 1e-10)
    t = _positive(cfg, "t", 0.4)
    out = _out_dir(cfg)
    sol = solve_mu_H(prof, t * 1.05, tol)
    co = assemble_propagator3d(prof, sol, t, qtol)
    axes = {name: _grid_from_config(cfg, name, (-1.0, 1.0, 3))
            for name in ("x", "y", "z", "xp", "yp", "zp")}
    grids = np.meshgrid(*axes.values(), indexing="ij")
    G = eval_green3d(co, tuple(grids[:3]), tuple(grids[3:]), t, prof)
    _write_csv(out / "magnetic3d.csv",
               ["x", "y", "z", "xp", "yp", "zp", "re_G", "im_G"],
               [g.ravel() for g in grids] + [G.real.ravel(), G.imag.ravel()])
    _write_json(out / "magnetic3d_meta.json", _manifest(cfg, "magnetic3d", {
        "mu_H": co.mu_H,
        "S_H0": co.S_H0,
        "S_H1": list(co.S_H1),
        "S_H2": list(co.S_H2),
        "Q_direct": list(co.Q_coeffs),
        "Q_printed": list(co.Q_printed),
        "Q_mismatch": co.Q_mismatch,
        "drift_integral": co.drift_integral,
        "spin_phase_integral": co.spin_phase_integral,
    }))
    return 0


def cmd_validate(cfg: dict) -> int:
    seed = int(cfg.get("seed", 0))
    out = _out_dir(cfg)
    report = run_validation(seed)
    _write_json(out / "validate_report.json", report)
    _write_json(out / "validate_manifest.json", _manifest(cfg, "validate", {
        "elapsed_s": time.time(),
    }))
    for s in report["suites"]:
        print(f"[{s['status']}] {s['name']}")
    print(f"overall: {report['overall']}")
    return 0 if report["overall"] == "pass" else 1


_COMMANDS = {
    "characteristic": cmd_characteristic,
    "green1d": cmd_green1d,
    "propagate": cmd_propagate,
    "nls": cmd_nls,
    "magnetic3d": cmd_magnetic3d,
    "validate": cmd_validate,
}


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="quadprop",
                                 description="Exact propagators for time-dependent "
                                             "quadratic Hamiltonians")
    sub = ap.add_subparsers(dest="command", required=True)
    for name in _COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--config", help="JSON config file")
        p.add_argument("--out", help="output directory")
        p.add_argument("--tol", type=float, help="ODE tolerance")
        p.add_argument("--qtol", type=float, help="quadrature tolerance")
        p.add_argument("--t", type=float, help="evaluation time")
        p.add_argument("--grid", help="grid spec, e.g. x=-2:2:21,y=-2:2:21")
        p.add_argument("--seed", type=int, help="seed for randomized suites")
        p.add_argument("--preset", help="coefficient preset name")
        p.add_argument("--params", help="comma-separated preset parameters")
        p.add_argument("--psi0", help="CSV file with columns x,re,im (propagate)")
        p.add_argument("--H", help="magnetic field: const:H0 or linear:H0,H1")
        p.add_argument("--F", help="electric force: const:F0 or zero")
        p.add_argument("--constants",
                       help="physical constants, e.g. m=1,e=-1,c=1,hbar=1,mu_spin=1,s=0.5,sigma=0.5")
        p.add_argument("--family", help="nls family: simple|kernel|modified_oscillator")
    return ap


def _merge_config(args: argparse.Namespace) -> dict:
    cfg: dict = {}
    if args.config:
        try:
            with open(args.config) as fh:
                cfg = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {args.config}: {exc}") from exc
        if not isinstance(cfg, dict):
            raise ConfigError("config must be a JSON object")
    for key in ("out", "tol", "qtol", "t", "seed", "psi0", "H", "F", "family"):
        val = getattr(args, key, None)
        if val is not None:
            cfg[key] = val
    if args.preset:
        coef = cfg.setdefault("coefficients", {})
        coef["preset"] = args.preset
        if args.params:
            coef["params"] = [float(v) for v in args.params.split(",")]
    if getattr(args, "constants", None):
        parsed = {}
        for item in args.constants.split(","):
            key, _, val = item.partition("=")
            if not val:
                raise ConfigError(f"constants spec {item!r} not understood (use key=value)")
            parsed[key.strip()] = float(val)
        cfg.setdefault("constants", {}).update(parsed)
    if args.grid:
        grid = cfg.setdefault("grid", {})
        for item in args.grid.split(","):
            name, _, span = item.partition("=")
            lo, hi, n = span.split(":")
            grid[name.strip()] = [float(lo), float(hi), int(n)]
    return cfg


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        cfg = _merge_config(args)
        return _COMMANDS[args.command](cfg)
    except QuadpropError as exc:
        json.dump(exc.to_json(), sys.stderr)
        sys.stderr.write("\n")
        return 2 if exc.code == "CONFIG_INVALID" else 3
    except (ValueError, OSError) as exc:
        json.dump({"code": "RUNTIME_ERROR", "module": args.command,
                   "message": str(exc), "context": {}}, sys.stderr)
        sys.stderr.write("\n")
        return 3


if __name__ == "__main__":
    sys.exit(main())

"""Command-line entry point ``lkweld``.

Settings are merged from defaults, a ``key = value`` config file, ``LKWELD_*``
environment variables and command-line flags, later sources winning.
"""
from __future__ import annotations

import argparse
import configparser
import os
import sys

import numpy as np

from . import experiments as ex
from .asymptotics import welding_asymptotic
from .caratheodory import CaratheodoryError
from .curve import BoundaryCurve
from .evolution import EvolutionConfig, evolve_boundary, regularity_ratios, star_angle_defect
from .oracle import true_welding
from .parsing import ParseError, parse_delta

EXIT_OK, EXIT_CONFIG, EXIT_NUMERIC, EXIT_IO = 0, 2, 3, 4

COMMANDS = (
    "evolve", "map-interior", "map-exterior", "weld-oracle", "weld-asymptotic",
    "verify-theorem1", "verify-theoremB", "verify-duality", "verify-lebedev",
)
KEYS = ("name", "driving", "t_list", "t", "delta", "eps_list", "eps", "grid", "steps",
        "tol", "max_iter", "out", "plots", "parallel", "horizon")
ENV_PREFIX = "LKWELD_"


class ConfigError(ValueError):
    pass


def load_config(path: str | None) -> dict[str, str]:
    if path is None:
        return {}
    parser = configparser.ConfigParser(interpolation=None)
    try:
        with open(path, encoding="utf-8") as fh:
            parser.read_file(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    settings = {}
    for section in parser.sections():
        for key, value in parser.items(section):
            if key not in KEYS:
                raise ConfigError(f"unknown config key {key!r} in [{section}]")
            settings[key] = value
    return settings


def env_settings(environ=None) -> dict[str, str]:
    environ = os.environ if environ is None else environ
    return {k: environ[ENV_PREFIX + k.upper()] for k in KEYS if ENV_PREFIX + k.upper() in environ}


def _floats(text: str) -> tuple[float, ...]:
    return tuple(float(v) for v in text.replace(";", ",").split(",") if v.strip())


def _bool(text) -> bool:
    if isinstance(text, bool):
        return text
    value = str(text).strip().lower()
    if value in ("1", "true", "yes", "on"):
        return True
    if value in ("0", "false", "no", "off", ""):
        return False
    raise ConfigError(f"not a boolean: {text!r}")


def build_scenario(settings: dict) -> ex.Scenario:
    kw = {}
    try:
        for key in ("name", "driving", "delta", "out"):
            if key in settings:
                kw[key] = str(settings[key])
        for key in ("t_list", "eps_list"):
            if key in settings:
                kw[key] = _floats(str(settings[key]))
        for key in ("grid", "steps", "max_iter"):
            if key in settings:
                kw[key] = int(settings[key])
        for key in ("tol", "horizon"):
            if key in settings:
                kw[key] = float(settings[key])
        for key in ("plots", "parallel"):
            if key in settings:
                kw[key] = _bool(settings[key])
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    return ex.Scenario(**kw)


def _make_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="lkweld", description=__doc__.splitlines()[0])
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("--config")
    ap.add_argument("--out")
    ap.add_argument("--grid", type=int)
    ap.add_argument("--steps", type=int)
    ap.add_argument("--plots", action="store_true", default=None)
    ap.add_argument("--parallel", action="store_true", default=None)
    ap.add_argument("--driving")
    ap.add_argument("--t", type=float)
    ap.add_argument("--delta")
    ap.add_argument("--eps", type=float)
    ap.add_argument("--name")
    return ap


def _single(settings: dict, key: str, list_key: str, sc: ex.Scenario) -> float:
    if key in settings:
        return float(settings[key])
    return getattr(sc, list_key)[0]


def _curve(settings: dict, sc: ex.Scenario) -> BoundaryCurve:
    if sc.delta is not None:
        eps = _single(settings, "eps", "eps_list", sc)
        shape = parse_delta(sc.delta)
        return ex._stage("curve", BoundaryCurve.from_function, lambda psi: eps * shape(psi), sc.grid)
    t = _single(settings, "t", "t_list", sc)
    return ex._evolved_curve(sc, t).curve


def run_command(command: str, settings: dict) -> tuple[list[ex.RunResult], list[str]]:
    sc = build_scenario(settings)
    lines: list[str] = []
    if command == "evolve":
        t = _single(settings, "t", "t_list", sc)
        res = ex._stage("evolve", evolve_boundary, EvolutionConfig(sc.p, t, sc.steps, sc.grid))
        c = res.curve
        curve_rows = list(zip(c.psi, c.delta.values, c.d1.values, c.d2.values))
        map_rows = list(zip(res.phi, res.angle_map.lift, res.delta_of_phi, res.star_angle))
        if t > 0:
            r0, r1, r2 = regularity_ratios(res)
            lines.append(f"ratios sup|delta|/t={r0:.6g} sup|delta'|/t={r1:.6g} "
                         f"sup|delta''|/t={r2:.6g}")
        lines.append(f"star angle defect {star_angle_defect(res):.6g}")
        return [ex.RunResult("evolve_curve", ("psi", "delta", "ddelta", "d2delta"), curve_rows),
                ex.RunResult("evolve_angle_map", ("phi", "psi", "delta", "star_angle"),
                             map_rows)], lines
    if command in ("map-interior", "map-exterior"):
        side = command.split("-")[1]
        sol = ex._solve(side, sc, _curve(settings, sc))
        b = sol.boundary()
        rows = list(zip(sol.psi_of_theta.x, sol.psi_of_theta.lift, b.real, b.imag))
        lines.append(f"conf_factor={sol.conf_factor:.17g} iterations={sol.iterations}"
                     f" residual={sol.residual:.3g}")
        if side == "exterior":
            lines.append(f"tau={sol.tau:.17g} b0={sol.b0:.17g} b1={sol.b1:.17g}")
        return [ex.RunResult(f"map_{side}", ("theta", "psi", "re", "im"), rows)], lines
    if command == "weld-oracle":
        curve = _curve(settings, sc)
        weld = ex._stage("welding", true_welding, ex._solve("interior", sc, curve),
                         ex._solve("exterior", sc, curve))
        return [ex.RunResult("weld_oracle", ("s", "sigma"), list(zip(weld.x, weld.lift)))], lines
    if command == "weld-asymptotic":
        rec = ex._stage("asymptotic", welding_asymptotic, _curve(settings, sc))
        rows = list(zip(rec.s_grid, rec.sigma_of_s.lift, rec.h_values.values))
        lines.append(f"residual={rec.residual:.3g}")
        return [ex.RunResult("weld_asymptotic", ("s", "sigma", "h"), rows)], lines
    runner = {
        "verify-theorem1": ex.run_theorem1,
        "verify-theoremB": ex.run_theoremB,
        "verify-duality": ex.run_duality,
        "verify-lebedev": ex.run_lebedev,
    }[command]
    if command == "verify-theoremB" and sc.delta is None:
        raise ConfigError("verify-theoremB needs a delta shape")
    res = runner(sc)
    lines.append(f"{sc.name} {res.name}: {res.fit.describe()}")
    return [res], lines


def main(argv=None) -> int:
    args = _make_parser().parse_args(argv)
    try:
        settings = load_config(args.config)
        settings.update(env_settings())
        for key in ("out", "grid", "steps", "plots", "parallel", "driving", "t", "delta",
                    "eps", "name"):
            value = getattr(args, key)
            if value is not None:
                settings[key] = value
        results, lines = run_command(args.command, settings)
    except (ConfigError, ParseError, CaratheodoryError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ex.StageError as exc:
        print(f"numerical failure {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    sc_out = settings.get("out", "results")
    plots = _bool(settings.get("plots", False))
    try:
        notices = ex.emit_outputs(results, sc_out, plots=plots)
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO
    for line in lines + notices:
        print(line)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())

"""Verification pipelines: evolution -> conformal oracle -> asymptotic comparison."""
from __future__ import annotations

import csv
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .asymptotics import welding_defect, welding_asymptotic
from .caratheodory import p_star
from .convergence import ConvergenceFit, fit_order
from .curve import BoundaryCurve
from .evolution import EvolutionConfig, evolve_boundary
from .homeo import circle_distance
from .oracle import MAX_ITER, TOL, lebedev_check, solve_exterior, solve_interior, true_welding
from .parsing import parse_delta, parse_driving
from .trig import DEFAULT_N, grid

DEFAULT_T_LIST = (0.08, 0.04, 0.02, 0.01)
DEFAULT_EPS_LIST = (0.04, 0.02, 0.01, 0.005)
DUALITY_RADIUS = 0.9
DUALITY_POINTS = 256


class StageError(RuntimeError):
    """A numerical failure tagged with the pipeline stage that raised it."""

    def __init__(self, stage: str, cause: Exception):
        self.stage = stage
        self.cause = cause
        super().__init__(f"[{stage}] {type(cause).__name__}: {cause}")


def _stage(name: str, fn, *args, **kwargs):
    try:
        return fn(*args, **kwargs)
    except (ArithmeticError, RuntimeError, ValueError) as exc:
        raise StageError(name, exc) from exc


def _check_sequence(values, label: str) -> tuple[float, ...]:
    values = tuple(float(v) for v in values)
    if len(values) < 3:
        raise ValueError(f"{label} needs at least 3 values")
    if any(v <= 0 for v in values):
        raise ValueError(f"{label} must be positive")
    if any(b >= a for a, b in zip(values, values[1:])):
        raise ValueError(f"{label} must be strictly decreasing")
    return values


@dataclass(frozen=True)
class Scenario:
    name: str = "scenario"
    driving: str = "p = 1"
    t_list: tuple[float, ...] = DEFAULT_T_LIST
    delta: str | None = None
    eps_list: tuple[float, ...] = DEFAULT_EPS_LIST
    grid: int = DEFAULT_N
    steps: int | None = None
    tol: float = TOL
    max_iter: int = MAX_ITER
    out: str = "results"
    plots: bool = False
    parallel: bool = False
    horizon: float = math.inf
    p: object = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "t_list", _check_sequence(self.t_list, "t_list"))
        object.__setattr__(self, "eps_list", _check_sequence(self.eps_list, "eps_list"))
        if any(t >= self.horizon for t in self.t_list):
            raise ValueError("t_list must stay below the horizon")
        object.__setattr__(self, "p", parse_driving(self.driving, self.horizon))
        if self.delta is not None:
            parse_delta(self.delta)


@dataclass
class RunResult:
    """Rows for one CSV plus an optional convergence fit."""

    name: str
    header: tuple[str, ...]
    rows: list[tuple[float, ...]]
    fit: ConvergenceFit | None = None
    notes: list[str] = field(default_factory=list)


def _map(sc: Scenario, fn, items):
    if sc.parallel and len(items) > 1:
        with ProcessPoolExecutor() as pool:
            return list(pool.map(fn, items))
    return [fn(item) for item in items]


def _evolved_curve(sc: Scenario, t: float):
    cfg = EvolutionConfig(sc.p, t, sc.steps, sc.grid)
    return _stage("evolve", evolve_boundary, cfg)


def _solve(side: str, sc: Scenario, curve: BoundaryCurve):
    solver = solve_interior if side == "interior" else solve_exterior
    return _stage(f"oracle-{side}", solver, curve, sc.tol, sc.max_iter)


def _short_time_point(args):
    sc, t = args
    res = _evolved_curve(sc, t)
    int_sol = _solve("interior", sc, res.curve)
    ext_sol = _solve("exterior", sc, res.curve)
    weld = _stage("welding", true_welding, int_sol, ext_sol)
    x = weld.x
    # exterior parameter -> interior parameter
    phi = _stage("welding", weld.inverse, x)
    im_p = sc.p(np.exp(1j * x), 0.0).imag
    err = float(np.max(np.abs(circle_distance(phi, x + 2.0 * im_p * t))))
    tau, _, slack = _stage("lebedev", lebedev_check, t, ext_sol)
    return (t, err, tau, slack)


def run_theorem1(sc: Scenario) -> RunResult:
    """Oracle welding against ``phi = phi~ + 2 t Im p(e^{i phi~}, 0)``."""
    rows = _map(sc, _short_time_point, [(sc, t) for t in sc.t_list])
    fit = fit_order([r[0] for r in rows], [r[1] for r in rows])
    return RunResult("theorem1", ("t", "error", "tau", "slack"), rows, fit)


def _welding_point(args):
    sc, eps = args
    shape = parse_delta(sc.delta)
    curve = _stage("curve", BoundaryCurve.from_function, lambda psi: eps * shape(psi), sc.grid)
    int_sol = _solve("interior", sc, curve)
    ext_sol = _solve("exterior", sc, curve)
    weld = _stage("welding", true_welding, int_sol, ext_sol)
    rec = _stage("asymptotic", welding_asymptotic, curve)
    err = welding_defect(rec.h_values, weld)
    return (eps, err, rec.sigma_of_s.sup_distance(weld))


def run_theoremB(sc: Scenario) -> RunResult:
    """Oracle welding ``s -> sigma`` against ``s + h(s) = sigma - h(sigma)``."""
    if sc.delta is None:
        raise ValueError("verify-theoremB needs a delta shape")
    rows = _map(sc, _welding_point, [(sc, e) for e in sc.eps_list])
    fit = fit_order([r[0] for r in rows], [r[1] for r in rows])
    return RunResult("theoremB", ("eps", "error", "asymptotic_gap"), rows, fit)


def duality_defect(p, ext_sol, tau: float, radius: float = DUALITY_RADIUS,
                   points: int = DUALITY_POINTS) -> float:
    """sup over ``|z| = radius`` of ``|z F(1/z, tau) - 1 + p*(z, 0) tau|``."""
    z = radius * np.exp(1j * grid(points))
    zF = z * ext_sol.evaluate(1.0 / z)
    return float(np.max(np.abs(zF - 1.0 + p_star(p, z, 0.0) * tau)))


def _duality_point(args):
    sc, t = args
    res = _evolved_curve(sc, t)
    ext_sol = _solve("exterior", sc, res.curve)
    tau = ext_sol.tau
    return (t, tau, duality_defect(sc.p, ext_sol, tau))


def run_duality(sc: Scenario) -> RunResult:
    rows = _map(sc, _duality_point, [(sc, t) for t in sc.t_list])
    fit = fit_order([r[1] for r in rows], [r[2] for r in rows])
    return RunResult("duality", ("t", "tau", "error"), rows, fit)


def _lebedev_point(args):
    sc, t = args
    res = _evolved_curve(sc, t)
    ext_sol = _solve("exterior", sc, res.curve)
    tau, _, slack = _stage("lebedev", lebedev_check, t, ext_sol)
    return (t, tau, slack)


def run_lebedev(sc: Scenario) -> RunResult:
    rows = _map(sc, _lebedev_point, [(sc, t) for t in sc.t_list])
    fit = fit_order([r[0] for r in rows], [r[2] for r in rows])
    return RunResult("lebedev", ("t", "tau", "slack"), rows, fit)


def fmt(x: float) -> str:
    return format(float(x), ".17g")


def write_csv(path: Path, header, rows) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([fmt(v) for v in row])


def emit_outputs(results: list[RunResult], out_dir, plots: bool = False) -> list[str]:
    """Write one CSV per result (plus a fit CSV when fitted); returns notices."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    notices = []
    for res in results:
        write_csv(out / f"{res.name}.csv", res.header, res.rows)
        if res.fit is not None:
            f = res.fit
            nan = float("nan")
            write_csv(out / f"{res.name}_fit.csv",
                      ("slope", "intercept", "half_width", "points_used", "degenerate"),
                      [(nan if f.slope is None else f.slope,
                        nan if f.intercept is None else f.intercept,
                        nan if f.half_width is None else f.half_width,
                        sum(f.used), int(f.degenerate))])
    if plots:
        notices.extend(_plot(results, out))
    return notices


def _plot(results, out: Path) -> list[str]:
    if os.environ.get("LKWELD_NO_PLOTS"):
        return ["plots skipped: plotting disabled"]
    try:
        import matplotlib
        matplotlib.use("Agg")
        import matplotlib.pyplot as plt
    except ImportError:
        return ["plots skipped: matplotlib is not available"]
    matplotlib.rcParams["svg.hashsalt"] = "lkweld"
    notices = []
    for res in results:
        fig, ax = plt.subplots(figsize=(5, 4))
        if res.fit is not None:
            x = np.array(res.fit.abscissae)
            e = np.array(res.fit.errors)
            ax.loglog(x, e, "o-", label="measured")
            if not res.fit.degenerate:
                ax.loglog(x, np.exp(res.fit.intercept) * x ** res.fit.slope, "--",
                          label=f"slope {res.fit.slope:.3f}")
            ax.set_xlabel(res.header[0])
            ax.set_ylabel("error")
        else:
            data = np.array(res.rows)
            if data.size == 0:
                plt.close(fig)
                continue
            ax.plot(data[:, 0], data[:, 1] - data[:, 0], label=f"{res.header[1]} - {res.header[0]}")
            ax.set_xlabel(res.header[0])
        ax.legend()
        fig.savefig(out / f"{res.name}.svg", metadata={"Date": None})
        plt.close(fig)
        notices.append(f"wrote {res.name}.svg")
    return notices

"""Decreasing Loewner-Kufarev evolution through its characteristic ODE.

``f(., s)`` is reconstructed as the time-``s`` flow of ``dw/dt = -w p(w, s - t)``
started at ``w(z, 0) = z``.  The flow is integrated in ``u = log w``,
``du/dt = -p(e^u, s - t)``, with classical RK4.  Along each boundary
trajectory the quantity ``L = log(zeta f'/f)`` is carried as well; it obeys
``dL/dt = -w p'(w, s - t)`` with ``L = 0`` at ``t = 0``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.interpolate import PchipInterpolator

from .caratheodory import DrivingFunction, eval_p, eval_p_derivs
from .curve import BoundaryCurve
from .homeo import CircleHomeo, MonotonicityError
from .trig import DEFAULT_N, analyze, grid

MIN_STEPS = 64
STEPS_PER_UNIT_TIME = 256
DISK_TOL = 1e-10
MONOTONE_SLACK = 1e-12


class EvolutionError(RuntimeError):
    """The characteristic flow left its admissible regime."""


def default_steps(t: float) -> int:
    return max(MIN_STEPS, math.ceil(STEPS_PER_UNIT_TIME * t))


def _field(p: DrivingFunction, u, time, track: bool):
    w = np.exp(u)
    if not track:
        return -eval_p(p, w, time), None
    val, der, _ = eval_p_derivs(p, w, time)
    return -val, -w * der


def _rk4_log(p: DrivingFunction, u0, s: float, t: float, steps: int,
             track: bool = False, keep: bool = False):
    """RK4 in log coordinates from flow time 0 to ``t`` with driving ``p(., s - tau)``.

    Returns ``(u, L, trajectory)``; ``L`` is None unless ``track``.
    """
    u = np.array(u0, dtype=complex)
    L = np.zeros_like(u) if track else None
    h = t / steps
    traj = [u.copy()] if keep else None
    re_prev = u.real.copy()
    for i in range(steps):
        tau = i * h
        a1, b1 = _field(p, u, s - tau, track)
        a2, b2 = _field(p, u + 0.5 * h * a1, s - tau - 0.5 * h, track)
        a3, b3 = _field(p, u + 0.5 * h * a2, s - tau - 0.5 * h, track)
        # clamp guards the horizon check against round-off below zero
        a4, b4 = _field(p, u + h * a3, max(s - tau - h, 0.0), track)
        u = u + (h / 6.0) * (a1 + 2 * a2 + 2 * a3 + a4)
        if track:
            L = L + (h / 6.0) * (b1 + 2 * b2 + 2 * b3 + b4)
        if np.any(u.real > DISK_TOL):
            raise EvolutionError("trajectory left the closed unit disk")
        if np.any(u.real > re_prev + MONOTONE_SLACK):
            raise EvolutionError("|w| increased along a trajectory")
        re_prev = u.real.copy()
        if keep:
            traj.append(u.copy())
    return u, L, (np.array(traj) if keep else None)


def integrate_characteristic(p: DrivingFunction, z0, t: float, steps: int | None = None,
                             s: float | None = None, trajectory: bool = False):
    """Endpoint ``w(z0, t)`` of ``dw/dt = -w p(w, s - t)``, ``w(z0, 0) = z0``.

    ``s`` defaults to ``t``, which yields ``f(z0, t)``.  With ``trajectory``
    the pair ``(endpoint, samples)`` is returned, samples at every step.
    """
    z0 = np.asarray(z0, dtype=complex)
    if np.any(np.abs(z0) > 1.0 + 1e-12):
        raise ValueError("z0 outside the closed unit disk")
    if t < 0:
        raise ValueError("t must be non-negative")
    steps = default_steps(t) if steps is None else int(steps)
    s = t if s is None else s
    zero = z0 == 0
    u0 = np.log(np.where(zero, 1.0, z0))
    if t == 0:
        w = z0.copy()
        traj = z0[None, ...] if trajectory else None
    else:
        u, _, traj_u = _rk4_log(p, u0, s, t, steps, keep=trajectory)
        w = np.where(zero, 0j, np.exp(u))
        traj = np.where(zero, 0j, np.exp(traj_u)) if trajectory else None
    if w.ndim == 0:
        w = complex(w)
    return (w, traj) if trajectory else w


@dataclass(frozen=True)
class EvolutionConfig:
    p: DrivingFunction
    t_final: float
    steps: int | None = None
    boundary_n: int = DEFAULT_N
    resample: str = "spectral"

    def __post_init__(self):
        if self.steps is None:
            object.__setattr__(self, "steps", default_steps(self.t_final))
        if self.steps < MIN_STEPS:
            raise ValueError(f"steps must be at least {MIN_STEPS}")
        if not 0.0 <= self.t_final < self.p.horizon:
            raise ValueError("t_final must lie in [0, horizon)")
        if self.resample not in ("spectral", "pchip"):
            raise ValueError("resample must be 'spectral' or 'pchip'")


@dataclass(frozen=True, eq=False)
class EvolutionResult:
    t: float
    curve: BoundaryCurve
    angle_map: CircleHomeo
    raw_points: np.ndarray
    logderiv: np.ndarray
    star_angle: np.ndarray = field(repr=False)
    delta_of_phi: np.ndarray = field(repr=False)

    @property
    def phi(self) -> np.ndarray:
        return self.angle_map.x


def _resample_spectral(angle_map: CircleHomeo, delta_phi: np.ndarray, n: int) -> np.ndarray:
    ser = analyze(delta_phi, real=True, check=False)
    phi_of_psi = angle_map.inverse(grid(n))
    return ser(phi_of_psi)


def _resample_pchip(psi: np.ndarray, delta_phi: np.ndarray, n: int) -> np.ndarray:
    two_pi = 2 * np.pi
    x = np.concatenate([psi[-3:] - two_pi, psi, psi[:3] + two_pi])
    y = np.concatenate([delta_phi[-3:], delta_phi, delta_phi[:3]])
    return PchipInterpolator(x, y)(grid(n))


def evolve_boundary(cfg: EvolutionConfig) -> EvolutionResult:
    """Evolve the unit circle to ``cfg.t_final`` and extract polar data.

    ``delta_t = 1 - |f(e^{i phi}, t)|`` and ``psi_t = arg f(e^{i phi}, t)`` are
    read from the log-coordinate state, then ``delta_t`` is carried onto a
    uniform ``psi`` grid through the inverse of the angle map.
    """
    n = cfg.boundary_n
    phi = grid(n)
    u0 = 1j * phi
    t = cfg.t_final
    if t == 0:
        u, L = u0, np.zeros(n, dtype=complex)
    else:
        u, L, _ = _rk4_log(cfg.p, u0, t, t, cfg.steps, track=True)
    psi = u.imag
    delta_phi = -np.expm1(u.real)
    try:
        angle_map = CircleHomeo(psi)
    except MonotonicityError as exc:
        raise EvolutionError(f"angle map not monotone at t={t}: {exc}") from exc
    if cfg.resample == "spectral":
        delta = _resample_spectral(angle_map, delta_phi, n)
    else:
        delta = _resample_pchip(psi, delta_phi, n)
    curve = BoundaryCurve.from_samples(delta, check=False)
    logderiv = L + u - u0
    return EvolutionResult(
        t=t, curve=curve, angle_map=angle_map, raw_points=np.exp(u),
        logderiv=logderiv, star_angle=L.imag, delta_of_phi=delta_phi)


def evolve(p: DrivingFunction, t: float, steps: int | None = None,
           boundary_n: int = DEFAULT_N) -> EvolutionResult:
    return evolve_boundary(EvolutionConfig(p, t, steps, boundary_n))


def regularity_ratios(result: EvolutionResult) -> tuple[float, float, float]:
    """``(sup|delta_t|, sup|delta_t'|, sup|delta_t''|) / t`` on the uniform psi grid."""
    if result.t <= 0:
        raise ValueError("ratios need t > 0")
    c = result.curve
    t = result.t
    return c.delta.sup() / t, c.d1.sup() / t, c.d2.sup() / t


def star_angle_defect(result: EvolutionResult) -> float:
    """sup over the boundary grid of ``|arg(zeta f'/f)|``."""
    return float(np.max(np.abs(result.star_angle)))


def delta_prime_from_angle(result: EvolutionResult) -> np.ndarray:
    """``delta_t'(psi_t) = |f| tan arg(zeta f'/f)`` at the boundary nodes."""
    return np.abs(result.raw_points) * np.tan(result.star_angle)


def reconstruct_interior(p: DrivingFunction, z, t: float, steps: int | None = None):
    """``f(z, t)`` at interior seeds by integrating their characteristics."""
    return integrate_characteristic(p, z, t, steps)

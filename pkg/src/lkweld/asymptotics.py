"""First-order formulas for maps onto near-circular domains and their welding.

All kernels are evaluated from Fourier coefficients of ``delta``; direct
kernel quadrature only appears in the tests as an oracle.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .caratheodory import DrivingFunction, eval_p
from .curve import BoundaryCurve
from .homeo import CircleHomeo, MonotonicityError
from .trig import TrigSeries, conjugate_pv, exterior_schwarz_integral, grid, schwarz_integral

EPS_WARN = 0.1
BRACKET_FACTOR = 4.0
BISECTION_TOL = 1e-12


class AsymptoticRegimeWarning(UserWarning):
    """Curve is too far from the unit circle for first-order formulas."""


class BracketError(RuntimeError):
    """The welding equation had no root inside its search bracket."""


def interior_map_asymptotic(curve: BoundaryCurve, z):
    """``z (1 - S[delta](z))`` for ``|z| <= 1``."""
    z = np.asarray(z, dtype=complex)
    if np.any(np.abs(z) > 1.0 + 1e-12):
        raise ValueError("interior map needs |z| <= 1")
    return z * (1.0 - schwarz_integral(curve.delta, z))


def exterior_map_asymptotic(curve: BoundaryCurve, z):
    """``z (1 - c_0 - 2 sum_k c_{-k} z^{-k})`` for ``|z| >= 1``."""
    z = np.asarray(z, dtype=complex)
    if np.any(np.abs(z) < 1.0 - 1e-12):
        raise ValueError("exterior map needs |z| >= 1")
    return z * (1.0 - exterior_schwarz_integral(curve.delta, z))


@dataclass(frozen=True, eq=False)
class WeldingRecord:
    s_grid: np.ndarray
    sigma_of_s: CircleHomeo
    h_values: TrigSeries
    residual: float


def welding_asymptotic(curve: BoundaryCurve, tol: float = BISECTION_TOL) -> WeldingRecord:
    """Solve ``s + h(s) = sigma - h(sigma)`` for ``sigma`` at every grid angle.

    Bisection per node on ``sigma - h(sigma) - (s + h(s))`` inside
    ``[s - 4 eps, s + 4 eps]``; all nodes are bisected together.
    """
    eps = curve.epsilon
    if eps > EPS_WARN:
        warnings.warn(f"epsilon = {eps:.3g} exceeds {EPS_WARN}; first-order welding is"
                      " outside its regime", AsymptoticRegimeWarning, stacklevel=2)
    h = conjugate_pv(curve.delta, check=False)
    s = grid(curve.n)
    target = s + h.values

    def G(sig):
        return sig - h(sig) - target

    width = BRACKET_FACTOR * max(eps, tol)
    lo = s - width
    hi = s + width
    g_lo = G(lo)
    g_hi = G(hi)
    if np.any(g_lo > 0) or np.any(g_hi < 0):
        raise BracketError("welding equation not bracketed; epsilon too large")
    while np.max(hi - lo) > tol:
        mid = 0.5 * (lo + hi)
        g_mid = G(mid)
        left = g_mid > 0
        hi = np.where(left, mid, hi)
        lo = np.where(left, lo, mid)
    sigma = 0.5 * (lo + hi)
    residual = float(np.max(np.abs(G(sigma))))
    return WeldingRecord(s_grid=s, sigma_of_s=CircleHomeo(sigma), h_values=h,
                         residual=residual)


def welding_defect(h: TrigSeries, welding: CircleHomeo) -> float:
    """sup_s |(s + h(s)) - (sigma(s) - h(sigma(s)))| for a welding ``s -> sigma``."""
    s = welding.x
    sigma = welding.lift
    return float(np.max(np.abs((s + h(s)) - (sigma - h(sigma)))))


def first_order_welding(p: DrivingFunction, t: float, n: int = 512) -> CircleHomeo:
    """Exterior-to-interior welding ``phi~ -> phi~ + 2 t Im p(e^{i phi~}, 0)``."""
    if t < 0:
        raise ValueError("t must be non-negative")
    x = grid(n)
    zeta = np.exp(1j * x)
    im_p = eval_p(p, zeta, 0.0).imag
    c = p.coefficients(0.0)
    k = np.arange(len(c))
    # d/dtheta Im p(e^{i theta}) = Re(sum k p_k e^{ik theta})
    slope = np.polynomial.polynomial.polyval(zeta, c * k).real
    top = float(np.max(np.abs(slope)))
    if top > 0 and t >= 1.0 / (2.0 * top):
        raise MonotonicityError(f"t={t} too large: first-order welding not monotone")
    return CircleHomeo(x + 2.0 * t * im_p)

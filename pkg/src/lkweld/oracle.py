"""Independent conformal maps of star-like curves by Theodorsen iteration.

For the interior map ``f(e^{i theta}) = r(psi(theta)) e^{i psi(theta)}`` the
function ``log(f(z)/z)`` is analytic in the disk, so the angular displacement
``psi(theta) - theta`` is the harmonic conjugate of ``log r(psi(theta))``.  For
the exterior map the same holds with the conjugate taken for the exterior
disk, which flips its sign.  Both iterations run on the displacement, which
is periodic and has zero mean under the normalizations ``f'(0) > 0`` and
``F'(inf) > 0``.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .curve import BoundaryCurve
from .homeo import CircleHomeo, MonotonicityError, circle_distance
from .trig import analyze, grid, harmonic_conjugate

TOL = 1e-12
MAX_ITER = 200
DAMPING = 0.5
DAMPING_THRESHOLD = 0.3
LEBEDEV_SLACK = 1e-9


class OracleError(RuntimeError):
    """The conformal solver failed to produce a trustworthy map."""


class ContractionWarning(UserWarning):
    """The curve is outside the range where plain Theodorsen iteration contracts."""


@dataclass(frozen=True, eq=False)
class MapSolution:
    side: str
    curve: BoundaryCurve
    psi_of_theta: CircleHomeo
    conf_factor: float
    iterations: int
    residual: float

    @property
    def n(self) -> int:
        return self.psi_of_theta.n

    @property
    def tau(self) -> float:
        """``-log`` of the conformal factor (``tau`` for exterior maps)."""
        return -float(np.log(self.conf_factor))

    def boundary(self, theta=None) -> np.ndarray:
        """Boundary values ``r(psi(theta)) e^{i psi(theta)}``."""
        theta = self.psi_of_theta.x if theta is None else np.asarray(theta, dtype=float)
        psi = self.psi_of_theta(theta)
        return self.curve.radius(psi) * np.exp(1j * psi)

    def taylor_coefficients(self) -> np.ndarray:
        """Fourier coefficients of the boundary values, numpy FFT order."""
        return np.fft.fft(self.boundary()) / self.n

    def evaluate(self, z):
        """The map at points of its domain via the boundary Fourier expansion.

        Interior: ``sum_{k>=0} a_k z^k``.  Exterior: ``sum_{k<=1} a_k z^k``.
        """
        z = np.asarray(z, dtype=complex)
        a = self.taylor_coefficients()
        n = self.n
        P = np.polynomial.polynomial
        if self.side == "interior":
            return P.polyval(z, a[: n // 2])
        # a_1 z + a_0 + a_{-1}/z + ...
        neg = np.concatenate([[a[0]], a[n - np.arange(1, n // 2)]])
        return a[1] * z + P.polyval(1.0 / z, neg)

    @property
    def b0(self) -> complex:
        if self.side != "exterior":
            raise AttributeError("b0 is defined for exterior maps")
        return complex(self.taylor_coefficients()[0])

    @property
    def b1(self) -> complex:
        if self.side != "exterior":
            raise AttributeError("b1 is defined for exterior maps")
        return complex(self.taylor_coefficients()[-1])


def _theodorsen(curve: BoundaryCurve, sign: float, tol: float, max_iter: int,
                damping: float | None):
    n = curve.n
    theta = grid(n)
    log_r = curve.log_radius()
    slope = curve.max_log_slope()
    if damping is None:
        damping = DAMPING if slope >= DAMPING_THRESHOLD else 1.0
    if slope >= 1.0:
        warnings.warn(f"sup |d log r/d psi| = {slope:.3f} >= 1; relying on damping",
                      ContractionWarning, stacklevel=3)
    disp = np.zeros(n)
    residual = np.inf
    for it in range(1, max_iter + 1):
        u = analyze(log_r(theta + disp), real=True, check=False)
        target = sign * harmonic_conjugate(u).values
        new = (1.0 - damping) * disp + damping * target
        residual = float(np.max(np.abs(new - disp)))
        disp = new
        if residual <= tol:
            break
    else:
        raise OracleError(f"Theodorsen iteration stalled at residual {residual:.3e}"
                          f" after {max_iter} iterations")
    try:
        homeo = CircleHomeo(theta + disp)
    except MonotonicityError as exc:
        raise OracleError(f"boundary correspondence lost monotonicity: {exc}") from exc
    mean_log = float(np.mean(log_r(homeo.lift)))
    return homeo, float(np.exp(mean_log)), it, residual


def solve_interior(curve: BoundaryCurve, tol: float = TOL, max_iter: int = MAX_ITER,
                   damping: float | None = None) -> MapSolution:
    """Riemann map of the disk onto the interior, ``f(0) = 0``, ``f'(0) > 0``."""
    homeo, conf, it, res = _theodorsen(curve, 1.0, tol, max_iter, damping)
    return MapSolution("interior", curve, homeo, conf, it, res)


def solve_exterior(curve: BoundaryCurve, tol: float = TOL, max_iter: int = MAX_ITER,
                   damping: float | None = None) -> MapSolution:
    """Exterior map, ``F(inf) = inf``, ``F'(inf) = e^{-tau} > 0``."""
    homeo, conf, it, res = _theodorsen(curve, -1.0, tol, max_iter, damping)
    return MapSolution("exterior", curve, homeo, conf, it, res)


def true_welding(int_sol: MapSolution, ext_sol: MapSolution) -> CircleHomeo:
    """The welding ``F^{-1} o f``: interior parameter ``s`` to exterior ``sigma``.

    Its inverse ``f^{-1} o F`` carries the exterior parameter to the interior one.
    """
    if int_sol.side != "interior" or ext_sol.side != "exterior":
        raise ValueError("expected an interior and an exterior solution")
    if int_sol.curve is not ext_sol.curve and not np.allclose(
            int_sol.curve.delta.values, ext_sol.curve.delta.values, rtol=0, atol=1e-14):
        raise ValueError("solutions belong to different curves")
    s = int_sol.psi_of_theta.x
    sigma = ext_sol.psi_of_theta.inverse(int_sol.psi_of_theta.lift)
    if np.max(np.abs(circle_distance(sigma, s))) >= np.pi / 2:
        raise OracleError("correspondence branches do not overlap")
    return CircleHomeo(sigma)


def lebedev_check(t: float, ext_sol: MapSolution, slack_tol: float = LEBEDEV_SLACK):
    """``(tau, t, t - tau)`` for the exterior map of the curve evolved to ``t``."""
    tau = ext_sol.tau
    slack = t - tau
    if slack < -slack_tol:
        raise OracleError(f"Lebedev inequality violated: t - tau = {slack:.3e}")
    return tau, t, slack

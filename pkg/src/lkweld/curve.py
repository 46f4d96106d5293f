"""Star-like Jordan curves in polar form ``r(psi) = 1 - delta(psi)``."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .trig import DEFAULT_N, TrigSeries, analyze, grid


class CurveError(ValueError):
    """Polar data does not describe a valid star-like curve."""


@dataclass(frozen=True, eq=False)
class BoundaryCurve:
    delta: TrigSeries
    d1: TrigSeries = field(init=False)
    d2: TrigSeries = field(init=False)
    epsilon: float = field(init=False)

    def __post_init__(self):
        if not self.delta.real_flag:
            raise CurveError("delta must be real")
        d1 = self.delta.derivative(1)
        d2 = self.delta.derivative(2)
        object.__setattr__(self, "d1", d1)
        object.__setattr__(self, "d2", d2)
        object.__setattr__(self, "epsilon", max(self.delta.sup(), d1.sup(), d2.sup()))
        r = 1.0 - self.delta.values
        if not np.all(np.isfinite(r)) or np.any(r <= 0.0):
            raise CurveError("polar radius 1 - delta must be positive")

    @classmethod
    def from_function(cls, fn, n: int = DEFAULT_N, check: bool = True) -> BoundaryCurve:
        return cls(analyze(fn(grid(n)), real=True, check=check))

    @classmethod
    def from_samples(cls, values, check: bool = True) -> BoundaryCurve:
        return cls(analyze(np.asarray(values, dtype=float), real=True, check=check))

    @classmethod
    def circle(cls, eps: float, n: int = DEFAULT_N) -> BoundaryCurve:
        return cls.from_samples(np.full(n, float(eps)))

    @property
    def n(self) -> int:
        return self.delta.n

    @property
    def psi(self) -> np.ndarray:
        return self.delta.grid

    def radius(self, psi):
        return 1.0 - self.delta(psi)

    def log_radius(self) -> TrigSeries:
        return analyze(np.log1p(-self.delta.values), real=True, check=False)

    def max_log_slope(self) -> float:
        """sup |d log r / d psi|; the Theodorsen contraction indicator."""
        r = 1.0 - self.delta.values
        return float(np.max(np.abs(self.d1.values / r)))

    def points(self) -> np.ndarray:
        return (1.0 - self.delta.values) * np.exp(1j * self.psi)

    def rotated(self, a: float) -> BoundaryCurve:
        """The curve turned by angle ``a``: ``delta(psi - a)``."""
        return BoundaryCurve(self.delta.shift(a))

    def reflected(self) -> BoundaryCurve:
        """Mirror image in the real axis: ``delta(-psi)``."""
        v = self.delta.values
        return BoundaryCurve.from_samples(np.roll(v[::-1], 1), check=False)

    def resample(self, n: int) -> BoundaryCurve:
        return BoundaryCurve(self.delta.resample(n))


def _polar_from_parametrization(g, dlog, n: int, tol: float = 1e-14):
    """Polar samples of the curve ``theta -> g(theta)``.

    ``dlog(theta)`` is ``d arg g / d theta``.  Returns ``(r(psi_j), theta(psi_j))``
    on the uniform psi grid.
    """
    psi = grid(n)
    theta = psi.copy()
    for _ in range(100):
        arg = theta + np.angle(g(theta) * np.exp(-1j * theta))
        step = (arg - psi) / dlog(theta)
        theta = theta - step
        if np.max(np.abs(step)) < tol:
            break
    else:
        raise CurveError("polar inversion of the test map did not converge")
    return np.abs(g(theta)), theta


@dataclass(frozen=True, eq=False)
class AnalyticTestMap:
    """Polynomial test map with known boundary correspondence.

    ``side="interior"``: ``f(z) = z + alpha z^k`` on the disk.
    ``side="exterior"``: ``F(z) = z + alpha z^{-k}`` on the exterior.
    Both have unit conformal factor.
    """

    alpha: float
    k: int
    side: str = "interior"

    @property
    def power(self) -> int:
        return self.k if self.side == "interior" else -self.k

    def __call__(self, z):
        return z + self.alpha * z ** self.power

    def boundary(self, theta):
        return self(np.exp(1j * np.asarray(theta, dtype=float)))

    def zfprime_over_f(self, theta):
        z = np.exp(1j * np.asarray(theta, dtype=float))
        m = self.power
        return (1 + m * self.alpha * z ** (m - 1)) / (1 + self.alpha * z ** (m - 1))

    def psi_of_theta(self, theta):
        """Unwrapped polar angle of the boundary image."""
        theta = np.asarray(theta, dtype=float)
        return theta + np.angle(self.boundary(theta) * np.exp(-1j * theta))

    conf_factor = 1.0

    def curve(self, n: int = DEFAULT_N, check: bool = False) -> BoundaryCurve:
        r, _ = _polar_from_parametrization(
            self.boundary, lambda th: self.zfprime_over_f(th).real, n)
        return BoundaryCurve.from_samples(1.0 - r, check=check)

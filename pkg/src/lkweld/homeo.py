"""Monotone degree-1 circle maps sampled on a uniform grid."""
from __future__ import annotations

import numpy as np

from .trig import TrigSeries, analyze, grid

TWO_PI = 2.0 * np.pi
INVERSE_TOL = 1e-13


class MonotonicityError(ValueError):
    """A sampled circle map failed to be strictly increasing."""


def circle_distance(a, b):
    """Signed difference ``a - b`` wrapped into ``(-pi, pi]``."""
    d = np.asarray(a) - np.asarray(b)
    return np.pi - np.mod(np.pi - d, TWO_PI)


class CircleHomeo:
    """Lift ``y(x)`` of an orientation-preserving circle homeomorphism.

    Samples ``y_j = y(2*pi*j/n)`` are stored; ``y(x) - x`` is periodic and is
    interpolated trigonometrically, which is spectrally accurate for the
    smooth maps produced by the evolution and the conformal solvers.
    """

    def __init__(self, lift_samples, check: bool = True):
        lift = np.asarray(lift_samples, dtype=float)
        self.lift = lift
        self.n = len(lift)
        self.x = grid(self.n)
        self.displacement: TrigSeries = analyze(lift - self.x, real=True, check=False)
        if check:
            self.validate()

    @classmethod
    def from_function(cls, fn, n: int, check: bool = True) -> CircleHomeo:
        return cls(fn(grid(n)), check=check)

    @classmethod
    def identity(cls, n: int) -> CircleHomeo:
        return cls(grid(n))

    def validate(self) -> None:
        ext = np.append(self.lift, self.lift[0] + TWO_PI)
        steps = np.diff(ext)
        if np.any(steps <= 0.0):
            j = int(np.argmin(steps))
            raise MonotonicityError(
                f"lift not strictly increasing near x={self.x[j % self.n]:.6f}")
        # the lift must also be increasing between nodes
        if np.any(self.derivative(self.x) <= 0.0):
            raise MonotonicityError("interpolated lift has a non-positive derivative")

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        return x + self.displacement(x)

    def derivative(self, x):
        return 1.0 + self.displacement.derivative()(np.asarray(x, dtype=float))

    def inverse(self, y, tol: float = INVERSE_TOL, max_iter: int = 100):
        """Solve ``self(x) = y`` by bracketed Newton steps.

        The bracket comes from the monotone samples; Newton iterates leaving
        it fall back to bisection.
        """
        y = np.atleast_1d(np.asarray(y, dtype=float))
        shape = y.shape
        y = y.reshape(-1)
        # reduce y to the fundamental window of the lift
        turns = np.floor((y - self.lift[0]) / TWO_PI)
        yr = y - turns * TWO_PI
        ext_y = np.append(self.lift, self.lift[0] + TWO_PI)
        ext_x = np.append(self.x, TWO_PI)
        j = np.clip(np.searchsorted(ext_y, yr, side="right") - 1, 0, self.n - 1)
        lo = ext_x[j].copy()
        hi = ext_x[j + 1].copy()
        span = ext_y[j + 1] - ext_y[j]
        x = lo + (hi - lo) * (yr - ext_y[j]) / span
        for _ in range(max_iter):
            g = self(x) - yr
            lo = np.where(g < 0, x, lo)
            hi = np.where(g > 0, x, hi)
            step = g / self.derivative(x)
            x_new = x - step
            bad = (x_new < lo) | (x_new > hi)
            x_new = np.where(bad, 0.5 * (lo + hi), x_new)
            done = (np.abs(x_new - x) <= tol) | (g == 0.0)
            x = x_new
            if np.all(done):
                break
        else:
            raise RuntimeError("circle map inversion did not converge")
        return (x + turns * TWO_PI).reshape(shape)

    def inverse_homeo(self) -> CircleHomeo:
        return CircleHomeo(self.inverse(self.x))

    def compose(self, inner: CircleHomeo) -> CircleHomeo:
        """``self o inner`` sampled on ``inner``'s grid."""
        return CircleHomeo(self(inner.lift))

    def conjugate_by_rotation(self, a: float) -> CircleHomeo:
        """``R_a o self o R_a^{-1}`` with ``R_a(x) = x + a``."""
        return CircleHomeo(self(self.x - a) + a)

    def sup_distance(self, other, x=None) -> float:
        """Sup of circle distance to another map (or callable) on ``x``."""
        x = self.x if x is None else np.asarray(x)
        return float(np.max(np.abs(circle_distance(self(x), other(x)))))

    def wrapped(self) -> np.ndarray:
        return np.mod(self.lift, TWO_PI)

"""Log-log least-squares estimates of convergence order."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import stats

# integrator and oracle tolerances combined
NUMERICAL_FLOOR = 1e-11
FLOOR_FACTOR = 100.0


@dataclass(frozen=True)
class ConvergenceFit:
    abscissae: tuple[float, ...]
    errors: tuple[float, ...]
    used: tuple[bool, ...]
    slope: float | None
    intercept: float | None
    half_width: float | None

    @property
    def degenerate(self) -> bool:
        return self.slope is None

    def describe(self) -> str:
        if self.degenerate:
            return "degenerate (errors at numerical floor)"
        hw = "n/a" if self.half_width is None else f"{self.half_width:.3f}"
        return f"slope {self.slope:.4f} +/- {hw} over {sum(self.used)} points"


def fit_order(abscissae, errors, floor: float = NUMERICAL_FLOOR,
              confidence: float = 0.95) -> ConvergenceFit:
    """Fit ``log error = slope * log x + intercept``.

    Points with error below ``100 * floor`` are excluded; fewer than two
    remaining points yields a degenerate fit (``slope is None``).
    """
    x = np.asarray(abscissae, dtype=float)
    e = np.asarray(errors, dtype=float)
    if x.shape != e.shape:
        raise ValueError("abscissae and errors differ in length")
    used = e > FLOOR_FACTOR * floor
    slope = intercept = half_width = None
    if used.sum() >= 2:
        lx = np.log(x[used])
        le = np.log(e[used])
        res = stats.linregress(lx, le)
        slope, intercept = float(res.slope), float(res.intercept)
        if not np.isfinite(slope):
            raise ValueError("non-finite slope")
        if used.sum() >= 3:
            q = stats.t.ppf(0.5 + confidence / 2, used.sum() - 2)
            half_width = float(q * res.stderr)
    return ConvergenceFit(tuple(x.tolist()), tuple(e.tolist()), tuple(used.tolist()),
                          slope, intercept, half_width)

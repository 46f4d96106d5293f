"""Driving functions of Caratheodory class on the closed disk and its exterior.

A driving function is a polynomial ``p(z, t) = 1 + sum_k p_k(t) z^k`` whose
coefficients are sums of terms ``c * exp(lam * t)`` (``lam = 0`` for constants).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .trig import grid

MU_MIN = 1e-3
CHECK_N = 1024
CHECK_TIMES = 64
# time window sampled for positivity when the horizon is unbounded
UNBOUNDED_CHECK_WINDOW = 1.0
DISK_SLACK = 1e-12


class CaratheodoryError(ValueError):
    """Re p failed to stay above the positivity margin."""

    def __init__(self, margin: float, theta: float, t: float):
        self.margin = margin
        self.theta = theta
        self.t = t
        super().__init__(
            f"Re p has minimum {margin:.6g} at theta={theta:.6g}, t={t:.6g}"
            f" (margin must exceed {MU_MIN:g})")


@dataclass(frozen=True)
class Term:
    """``coeff * exp(lam * t) * z^power``."""

    power: int
    coeff: complex
    lam: float = 0.0

    def __post_init__(self):
        if self.power < 1:
            raise ValueError("term powers start at 1")

    def at(self, t):
        if self.lam == 0.0:
            return self.coeff * np.ones_like(np.asarray(t, dtype=float))
        return self.coeff * np.exp(self.lam * np.asarray(t, dtype=float))


def _coefficients(terms, t) -> dict[int, complex]:
    out: dict[int, complex] = {}
    for term in terms:
        out[term.power] = out.get(term.power, 0j) + complex(term.at(t))
    return out


@dataclass(frozen=True)
class DrivingFunction:
    terms: tuple[Term, ...] = ()
    horizon: float = math.inf
    validate: bool = field(default=True, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(self.terms))
        if not self.horizon > 0:
            raise ValueError("horizon must be positive")
        if self.validate:
            mu, theta, t = positivity_minimum(self)
            if mu < MU_MIN:
                raise CaratheodoryError(mu, theta, t)

    @classmethod
    def constant(cls, coeffs, **kw) -> DrivingFunction:
        """From ``{power: coefficient}`` or a sequence ``[p_1, p_2, ...]``."""
        if not isinstance(coeffs, dict):
            coeffs = {k + 1: c for k, c in enumerate(coeffs)}
        terms = tuple(Term(k, complex(c)) for k, c in sorted(coeffs.items()) if c != 0)
        return cls(terms, **kw)

    @property
    def degree(self) -> int:
        return max((term.power for term in self.terms), default=0)

    @property
    def time_constant(self) -> bool:
        return all(term.lam == 0.0 for term in self.terms)

    def coefficients(self, t: float = 0.0) -> np.ndarray:
        """``[1, p_1(t), ..., p_K(t)]``."""
        c = np.zeros(self.degree + 1, dtype=complex)
        c[0] = 1.0
        for k, v in _coefficients(self.terms, t).items():
            c[k] += v
        return c

    def _check_t(self, t: float) -> None:
        if not 0.0 <= t < self.horizon:
            raise ValueError(f"t={t} outside [0, {self.horizon})")

    def __call__(self, z, t: float = 0.0):
        return eval_p(self, z, t)

    def boundary_values(self, n: int, t: float = 0.0) -> np.ndarray:
        return eval_p(self, np.exp(1j * grid(n)), t)

    def __str__(self) -> str:
        parts = ["p = 1"]
        for term in self.terms:
            c = complex(term.coeff)
            s = f"({c.real!r},{c.imag!r})"
            if term.lam != 0.0:
                s += f"*exp({float(term.lam)!r}*t)"
            parts.append(f"{s}*z^{term.power}")
        return " + ".join(parts)


def _check_disk(z) -> None:
    if np.any(np.abs(z) > 1.0 + DISK_SLACK):
        raise ValueError("z outside the closed unit disk")


def eval_p(p: DrivingFunction, z, t: float = 0.0):
    """``1 + sum p_k(t) z^k`` on the closed disk."""
    z = np.asarray(z, dtype=complex)
    _check_disk(z)
    p._check_t(t)
    return np.polynomial.polynomial.polyval(z, p.coefficients(t))


def eval_p_derivs(p: DrivingFunction, z, t: float = 0.0):
    """``(p, p', p'')`` with z-derivatives taken exactly."""
    z = np.asarray(z, dtype=complex)
    _check_disk(z)
    p._check_t(t)
    c = p.coefficients(t)
    P = np.polynomial.polynomial
    d1 = P.polyder(c) if len(c) > 1 else np.zeros(1, dtype=complex)
    d2 = P.polyder(d1) if len(d1) > 1 else np.zeros(1, dtype=complex)
    return (P.polyval(z, c) + 0j * z, P.polyval(z, d1) + 0j * z, P.polyval(z, d2) + 0j * z)


def default_time_samples(p: DrivingFunction, count: int = CHECK_TIMES) -> np.ndarray:
    if p.time_constant:
        return np.zeros(1)
    end = p.horizon if math.isfinite(p.horizon) else UNBOUNDED_CHECK_WINDOW
    # stay strictly inside [0, horizon)
    return np.linspace(0.0, end, count, endpoint=not math.isfinite(p.horizon))


def positivity_minimum(p: DrivingFunction, t_samples=None, n: int = CHECK_N):
    """``(min Re p, theta, t)`` over the boundary grid and time samples."""
    if t_samples is None:
        t_samples = default_time_samples(p)
    theta = grid(n)
    zeta = np.exp(1j * theta)
    best = (math.inf, 0.0, 0.0)
    for t in np.atleast_1d(t_samples):
        re = np.polynomial.polynomial.polyval(zeta, p.coefficients(float(t))).real
        j = int(np.argmin(re))
        if re[j] < best[0]:
            best = (float(re[j]), float(theta[j]), float(t))
    return best


def check_caratheodory(p: DrivingFunction, t_samples=None, n: int = CHECK_N) -> float:
    """Minimum of Re p on the unit circle over the given times.

    By harmonicity the boundary minimum bounds Re p on the whole disk.  Use
    :func:`positivity_minimum` to get the witnessing ``(theta, t)``.
    """
    return positivity_minimum(p, t_samples, n)[0]


@dataclass(frozen=True)
class ExteriorDriving:
    """``q(z, t) = 1 + sum_k q_k(t) z^{-k}`` on the closed exterior disk."""

    terms: tuple[Term, ...] = ()

    @property
    def degree(self) -> int:
        return max((term.power for term in self.terms), default=0)

    def coefficients(self, t: float = 0.0) -> np.ndarray:
        c = np.zeros(self.degree + 1, dtype=complex)
        c[0] = 1.0
        for k, v in _coefficients(self.terms, t).items():
            c[k] += v
        return c

    def __call__(self, z, t: float = 0.0):
        z = np.asarray(z, dtype=complex)
        if np.any(np.abs(z) < 1.0 - DISK_SLACK):
            raise ValueError("z inside the unit disk")
        return np.polynomial.polynomial.polyval(1.0 / z, self.coefficients(t))

    def reflect(self) -> DrivingFunction:
        """Inverse of :func:`reflect_p_star` at t = 0."""
        c = self.coefficients(0.0)
        return DrivingFunction.constant({k: np.conj(c[k]) for k in range(1, len(c))})


def reflect_p_star(p: DrivingFunction) -> ExteriorDriving:
    """Exterior driving with ``q(1/z, 0) = conj(p(conj z, 0))``."""
    c = p.coefficients(0.0)
    return ExteriorDriving(tuple(
        Term(k, complex(np.conj(c[k]))) for k in range(1, len(c)) if c[k] != 0))


def p_star(p: DrivingFunction, z, t: float = 0.0):
    """``conj(p(conj z, t))``."""
    z = np.asarray(z, dtype=complex)
    return np.conj(eval_p(p, np.conj(z), t))

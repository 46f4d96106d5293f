"""Spectral primitives on the unit circle.

Periodic functions are sampled on the uniform grid ``theta_j = 2*pi*j/n`` with
``n`` a power of two.  Coefficients follow the convention

    c_k = (1/n) * sum_j f(theta_j) * exp(-i*k*theta_j),   k in [-n/2, n/2)

and are stored in numpy FFT order.  The Nyquist mode ``k = -n/2`` is treated
as ``c * cos(n*x/2)`` whenever a series is evaluated off the grid or
differentiated, which keeps real series real.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

__all__ = [
    "DEFAULT_N",
    "TAIL_THRESHOLD",
    "ResolutionWarning",
    "TrigSeries",
    "analyze",
    "synthesize",
    "grid",
    "schwarz_integral",
    "exterior_schwarz_integral",
    "conjugate_pv",
    "harmonic_conjugate",
    "pv_quadrature",
    "trig_eval",
]

DEFAULT_N = 512
MIN_N = 16
TAIL_THRESHOLD = 1e-10


class ResolutionWarning(UserWarning):
    """Fourier tail too heavy for the grid; aliasing is likely."""


def grid(n: int) -> np.ndarray:
    """Uniform angles ``2*pi*j/n``, j = 0..n-1."""
    return 2.0 * np.pi * np.arange(n) / n


def _check_n(n: int) -> None:
    if n < MIN_N:
        raise ValueError(f"grid size {n} is below the minimum {MIN_N}")
    if n & (n - 1):
        raise ValueError(f"grid size {n} is not a power of two")


def _wavenumbers(n: int) -> np.ndarray:
    return np.fft.fftfreq(n, d=1.0 / n).astype(int)


@dataclass(frozen=True, eq=False)
class TrigSeries:
    """Samples and Fourier coefficients of a 2*pi-periodic function."""

    values: np.ndarray
    coeffs: np.ndarray
    real_flag: bool

    @property
    def n(self) -> int:
        return len(self.coeffs)

    @property
    def wavenumbers(self) -> np.ndarray:
        return _wavenumbers(self.n)

    @property
    def grid(self) -> np.ndarray:
        return grid(self.n)

    def coeff(self, k: int) -> complex:
        if not -self.n // 2 <= k < self.n // 2:
            return 0j
        return complex(self.coeffs[k % self.n])

    @property
    def mean(self) -> complex | float:
        c0 = self.coeffs[0]
        return float(c0.real) if self.real_flag else complex(c0)

    def sup(self) -> float:
        return float(np.max(np.abs(self.values)))

    def tail_ratio(self) -> float:
        """max |c_k| over |k| >= n/4, relative to max |c_k|."""
        mags = np.abs(self.coeffs)
        top = mags.max()
        if top == 0.0:
            return 0.0
        tail = mags[np.abs(self.wavenumbers) >= self.n // 4]
        return float(tail.max() / top)

    def check_resolution(self, threshold: float = TAIL_THRESHOLD) -> bool:
        ratio = self.tail_ratio()
        if ratio > threshold:
            warnings.warn(
                f"Fourier tail ratio {ratio:.3e} exceeds {threshold:.0e} at n={self.n}",
                ResolutionWarning,
                stacklevel=2,
            )
            return False
        return True

    def __call__(self, x):
        """Evaluate the trigonometric interpolant at arbitrary angles."""
        out = trig_eval(self.coeffs, x)
        return out.real if self.real_flag else out

    def derivative(self, order: int = 1) -> TrigSeries:
        k = self.wavenumbers.astype(float)
        mult = (1j * k) ** order
        if order % 2:
            mult[self.n // 2] = 0.0
        return _from_coeffs(self.coeffs * mult, self.real_flag)

    def resample(self, n: int) -> TrigSeries:
        """Zero-pad or truncate the spectrum onto a grid of size ``n``."""
        _check_n(n)
        m = self.n
        if n == m:
            return self
        old = self.coeffs
        c = np.zeros(n, dtype=complex)
        half = min(m, n) // 2
        c[:half] = old[:half]
        c[n - half + 1:] = old[m - half + 1:]
        if n > m:
            c[half] = 0.5 * old[m // 2]
            c[n - half] = 0.5 * old[m // 2]
        else:
            # modes +-n/2 alias onto the new Nyquist slot
            c[half] = old[half] + old[m - half]
        return _from_coeffs(c, self.real_flag)

    def shift(self, a: float) -> TrigSeries:
        """The series of ``x -> f(x - a)``."""
        k = self.wavenumbers.astype(float)
        mult = np.exp(-1j * k * a)
        mult[self.n // 2] = np.cos(self.n * a / 2)
        return _from_coeffs(self.coeffs * mult, self.real_flag)

    def map_values(self, fn) -> TrigSeries:
        return analyze(fn(self.values), real=self.real_flag, check=False)

    def __add__(self, other):
        if isinstance(other, TrigSeries):
            if other.n != self.n:
                raise ValueError("grid sizes differ")
            return _from_coeffs(self.coeffs + other.coeffs, self.real_flag and other.real_flag)
        c = self.coeffs.copy()
        c[0] += other
        return _from_coeffs(c, self.real_flag and np.isrealobj(other))

    def __neg__(self):
        return _from_coeffs(-self.coeffs, self.real_flag)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, a):
        return _from_coeffs(self.coeffs * a, self.real_flag and np.isrealobj(a))

    __rmul__ = __mul__


def _from_coeffs(coeffs: np.ndarray, real_flag: bool) -> TrigSeries:
    n = len(coeffs)
    coeffs = np.asarray(coeffs, dtype=complex)
    if real_flag:
        coeffs = _symmetrize(coeffs)
        values = np.fft.irfft(coeffs[: n // 2 + 1] * n, n)
    else:
        values = np.fft.ifft(coeffs) * n
    return TrigSeries(values=values, coeffs=coeffs, real_flag=real_flag)


def _symmetrize(c: np.ndarray) -> np.ndarray:
    n = len(c)
    out = c.copy()
    k = np.arange(1, n // 2)
    avg = 0.5 * (c[k] + np.conj(c[n - k]))
    out[k] = avg
    out[n - k] = np.conj(avg)
    out[0] = c[0].real
    out[n // 2] = c[n // 2].real
    return out


def analyze(samples, real: bool | None = None, check: bool = True) -> TrigSeries:
    """Fourier analysis of samples on the uniform grid.

    ``real`` defaults to whether the samples carry no imaginary part.  With
    ``check`` the coefficient tail is tested and a :class:`ResolutionWarning`
    issued when it is not resolved.
    """
    samples = np.asarray(samples)
    if samples.ndim != 1:
        raise ValueError("samples must be one-dimensional")
    n = len(samples)
    _check_n(n)
    if real is None:
        real = not np.iscomplexobj(samples) or not np.any(samples.imag)
    if real:
        if np.iscomplexobj(samples):
            if np.any(samples.imag):
                raise ValueError("real series requested for complex samples")
            samples = samples.real
        values = samples.astype(float)
        half = np.fft.rfft(values) / n
        coeffs = np.empty(n, dtype=complex)
        coeffs[: n // 2 + 1] = half
        coeffs[n // 2 + 1:] = np.conj(half[1: n // 2][::-1])
    else:
        values = samples.astype(complex)
        coeffs = np.fft.fft(values) / n
    ts = TrigSeries(values=values, coeffs=coeffs, real_flag=bool(real))
    if check:
        ts.check_resolution()
    return ts


def synthesize(series: TrigSeries) -> np.ndarray:
    """Grid values reconstructed from the coefficients."""
    n = series.n
    if series.real_flag:
        return np.fft.irfft(series.coeffs[: n // 2 + 1] * n, n)
    return np.fft.ifft(series.coeffs) * n


def trig_eval(coeffs: np.ndarray, x) -> np.ndarray:
    """Evaluate ``sum c_k exp(i k x)`` at arbitrary angles (direct sum)."""
    x = np.asarray(x, dtype=float)
    n = len(coeffs)
    half = n // 2
    flat = x.reshape(-1)
    base = np.exp(1j * flat)
    # powers e^{ikx}, k = 1..half, by repeated multiplication
    powers = np.cumprod(np.broadcast_to(base[:, None], (len(flat), half)), axis=1)
    pos = powers[:, : half - 1]
    out = coeffs[0] + pos @ coeffs[1:half] + np.conj(pos) @ coeffs[n - 1: half: -1]
    out = out + coeffs[half] * powers[:, half - 1].real
    return out.reshape(x.shape)


def _require_real(series: TrigSeries) -> None:
    if not series.real_flag:
        raise ValueError("a real-valued series is required")


def schwarz_integral(delta: TrigSeries, z, method: str = "spectral"):
    """Schwarz integral ``(1/2pi) int delta(psi) (e^{i psi}+z)/(e^{i psi}-z) dpsi``.

    The spectral form sums ``c_0 + 2 sum_{k>=1} c_k z^k`` (Nyquist dropped)
    and is valid on the closed disk.  ``method="kernel"`` is the trapezoid
    rule on the kernel itself and needs ``|z| <= 1 - 1e-9``.
    """
    _require_real(delta)
    z = np.asarray(z, dtype=complex)
    if method == "spectral":
        poly = 2.0 * delta.coeffs[: delta.n // 2]
        poly[0] = delta.coeffs[0]
        return np.polynomial.polynomial.polyval(z, poly)
    if method == "kernel":
        if np.any(np.abs(z) > 1 - 1e-9):
            raise ValueError("kernel quadrature needs |z| <= 1 - 1e-9")
        e = np.exp(1j * delta.grid)
        kern = (e + z[..., None]) / (e - z[..., None])
        return kern @ delta.values / delta.n
    raise ValueError(f"unknown method {method!r}")


def exterior_schwarz_integral(delta: TrigSeries, z):
    """``(1/2pi) int delta(psi) (z+e^{i psi})/(z-e^{i psi}) dpsi`` for ``|z| >= 1``.

    Equal to ``c_0 + 2 sum_{k>=1} c_{-k} z^{-k}``.
    """
    _require_real(delta)
    z = np.asarray(z, dtype=complex)
    n = delta.n
    poly = np.empty(n // 2, dtype=complex)
    poly[0] = delta.coeffs[0]
    poly[1:] = 2.0 * delta.coeffs[n - np.arange(1, n // 2)]
    return np.polynomial.polynomial.polyval(1.0 / z, poly)


def conjugate_pv(delta: TrigSeries, check: bool = True) -> TrigSeries:
    """h(x) = (1/2pi) PV int (delta(psi) - delta(x)) cot((psi - x)/2) dpsi.

    Fourier multiplier ``i*sgn(k)``, zero on the mean and Nyquist modes.  The
    sign was pinned against :func:`pv_quadrature`: ``cos -> -sin``.  This is
    the negative of the classical conjugate function.
    """
    _require_real(delta)
    if check:
        delta.check_resolution()
    k = delta.wavenumbers
    mult = 1j * np.sign(k)
    mult[delta.n // 2] = 0.0
    return _from_coeffs(delta.coeffs * mult, True)


def harmonic_conjugate(u: TrigSeries) -> TrigSeries:
    """Classical conjugate function: boundary values of Im g with g analytic
    in the disk, Re g = u and Im g(0) = 0 (``cos -> sin``)."""
    _require_real(u)
    k = u.wavenumbers
    mult = -1j * np.sign(k)
    mult[u.n // 2] = 0.0
    return _from_coeffs(u.coeffs * mult, True)


def pv_quadrature(delta: TrigSeries, x: float, check: bool = True) -> float:
    """Trapezoid rule for the cotangent PV integral at a single angle.

    At a node coinciding with ``x`` the removable value ``2*delta'(x)`` is used.
    """
    _require_real(delta)
    if check:
        delta.check_resolution()
    psi = delta.grid
    dx = float(delta(x))
    u = psi - x
    half = 0.5 * u
    s = np.sin(half)
    on_node = np.abs(np.sin(half)) < 1e-14
    integrand = np.empty_like(psi)
    off = ~on_node
    integrand[off] = (delta.values[off] - dx) * np.cos(half[off]) / s[off]
    if np.any(on_node):
        integrand[on_node] = 2.0 * float(delta.derivative()(x))
    return float(integrand.sum() / delta.n)

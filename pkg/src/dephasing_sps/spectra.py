"""Complex resonances of the coupled emitter-cavity system and lineshapes.

The emitter complex frequency includes pure dephasing,
``omega0 - i(gamma + gamma_star)/2``, so that the weak-coupling limit of the
cavity spectrum is the product of the two bare Lorentzians with widths
``gamma + gamma_star`` and ``kappa``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from numpy.polynomial import Polynomial
from scipy.integrate import trapezoid
from scipy.signal import find_peaks

from .errors import GridTooCoarse, GridTooNarrow, Multimodal, NonPositiveWidth, ValidationError, ZeroCoupling
from .params import SystemParams

DEFAULT_POINTS = 20001

KINDS = ("cavity_closed_form", "qd_uncoupled", "cavity_uncoupled", "filter_product", "qrt_oracle")


@dataclass(frozen=True)
class SecularRoots:
    """The two poles of the coupled system; ``lambda_minus`` is the narrow one."""

    lambda_plus: complex
    lambda_minus: complex

    def __iter__(self):
        yield self.lambda_plus
        yield self.lambda_minus

    @property
    def splitting(self) -> float:
        return abs(self.lambda_plus.real - self.lambda_minus.real)

    @property
    def narrow_fwhm(self) -> float:
        return -2.0 * self.lambda_minus.imag


@dataclass(frozen=True, eq=False)
class Spectrum:
    grid: np.ndarray
    values: np.ndarray
    kind: str
    # smallest value before clipping/normalisation (oracle diagnostics)
    raw_min: float | None = field(default=None)

    def __post_init__(self):
        grid = np.asarray(self.grid, dtype=float)
        values = np.asarray(self.values, dtype=float)
        if grid.ndim != 1 or grid.shape != values.shape:
            raise ValidationError("grid and values must be 1-D arrays of equal length")
        if grid.size < 3 or np.any(np.diff(grid) <= 0):
            raise ValidationError("grid must be strictly increasing with at least 3 points")
        if not np.all(np.isfinite(values)) or np.any(values < 0):
            raise ValidationError("spectral density must be finite and non-negative")
        if self.kind not in KINDS:
            raise ValidationError(f"unknown spectrum kind {self.kind!r}")
        object.__setattr__(self, "grid", grid)
        object.__setattr__(self, "values", values)

    def integral(self) -> float:
        return float(trapezoid(self.values, self.grid))


def complex_frequencies(params: SystemParams) -> tuple[complex, complex]:
    """Bare emitter and cavity complex frequencies."""
    w_at = complex(params.omega0, -(params.gamma + params.gamma_star) / 2)
    w_cav = complex(params.omega_cav, -params.kappa / 2)
    return w_at, w_cav


def secular_roots(params: SystemParams) -> SecularRoots:
    """Solve ``(w_at - w)(w_cav - w) - g**2 = 0``."""
    w_at, w_cav = complex_frequencies(params)
    mean = (w_at + w_cav) / 2
    disc = np.sqrt(complex(((w_at - w_cav) / 2) ** 2 + params.g**2))
    # larger-magnitude root first, the other from the product to avoid cancellation
    big = mean + disc if abs(mean + disc) >= abs(mean - disc) else mean - disc
    prod = w_at * w_cav - params.g**2
    small = prod / big if big != 0 else mean
    a, b = complex(big), complex(small)
    tie = abs(abs(a.imag) - abs(b.imag)) <= 1e-12 * (abs(a) + abs(b))
    if (a.real > b.real) if tie else (abs(a.imag) > abs(b.imag)):
        a, b = b, a
    return SecularRoots(lambda_plus=b, lambda_minus=a)


def default_grid(params: SystemParams, points: int = DEFAULT_POINTS) -> np.ndarray:
    """Uniform grid spanning both bare lines and both resonances by 10 widths."""
    width = max(params.kappa, params.gamma + params.gamma_star)
    roots = secular_roots(params)
    centers = [params.omega0, params.omega_cav, roots.lambda_plus.real, roots.lambda_minus.real]
    return np.linspace(min(centers) - 10 * width, max(centers) + 10 * width, points)


def _normalized(grid, values, kind, raw_min=None) -> Spectrum:
    area = trapezoid(values, grid)
    if not area > 0:
        raise GridTooNarrow(f"{kind} spectrum has no weight on the supplied grid")
    return Spectrum(grid, values / area, kind, raw_min)


def _as_grid(params, grid):
    return default_grid(params) if grid is None else np.asarray(grid, dtype=float)


def cavity_spectrum_closed_form(params: SystemParams, grid=None) -> Spectrum:
    """Spectrum emitted through the cavity, ``1/(|w - l+|^2 |w - l-|^2)``."""
    if params.g == 0:
        raise ZeroCoupling("cavity is never populated when g = 0")
    grid = _as_grid(params, grid)
    roots = secular_roots(params)
    for lam in roots:
        half = -lam.imag
        if grid[0] > lam.real - 5 * half or grid[-1] < lam.real + 5 * half:
            raise GridTooNarrow(
                f"grid [{grid[0]:g}, {grid[-1]:g}] does not cover resonance {lam:.6g} by 5 half-widths"
            )
    values = closed_form_density(params, grid)
    return _normalized(grid, values, "cavity_closed_form")


def lorentzian_spectrum(center: float, fwhm: float, grid, kind: str = "qd_uncoupled") -> Spectrum:
    if not fwhm > 0:
        raise NonPositiveWidth(f"fwhm must be > 0, got {fwhm!r}")
    grid = np.asarray(grid, dtype=float)
    values = 1.0 / ((grid - center) ** 2 + (fwhm / 2) ** 2)
    return _normalized(grid, values, kind)


def emitter_spectrum_uncoupled(params: SystemParams, grid=None) -> Spectrum:
    grid = _as_grid(params, grid)
    return lorentzian_spectrum(params.omega0, params.gamma + params.gamma_star, grid, "qd_uncoupled")


def cavity_spectrum_uncoupled(params: SystemParams, grid=None) -> Spectrum:
    grid = _as_grid(params, grid)
    return lorentzian_spectrum(params.omega_cav, params.kappa, grid, "cavity_uncoupled")


def filter_product_spectrum(params: SystemParams, grid=None) -> Spectrum:
    """Cavity acting as a filter on the bare emitter line (weak coupling)."""
    grid = _as_grid(params, grid)
    qd = emitter_spectrum_uncoupled(params, grid)
    cav = cavity_spectrum_uncoupled(params, grid)
    return _normalized(grid, qd.values * cav.values, "filter_product")


def count_peaks(s: Spectrum, min_height: float = 0.5) -> int:
    """Local maxima reaching at least ``min_height`` times the global maximum."""
    vmax = s.values.max()
    peaks, _ = find_peaks(s.values, height=min_height * vmax, prominence=1e-9 * vmax)
    return len(peaks)


def peak_frequency(s: Spectrum, rtol: float = 1e-12) -> float:
    """Grid frequency of the maximum; near-ties (within ``rtol``) go to the lowest frequency."""
    vmax = s.values.max()
    return float(s.grid[np.argmax(s.values >= vmax * (1 - rtol))])


def fwhm(s: Spectrum) -> float:
    """Full width at half maximum, interpolating linearly between grid points.

    Raises
    ------
    Multimodal
        More than one peak above half maximum, or more than two
        half-maximum crossings.
    GridTooCoarse
        Fewer than 8 grid points above half maximum.
    GridTooNarrow
        The line does not fall below half maximum on both sides of the grid.
    """
    w, v = s.grid, s.values
    if count_peaks(s) > 1:
        raise Multimodal("more than one peak above half maximum")
    half = v.max() / 2
    above = v >= half
    crossings = np.count_nonzero(np.diff(above.astype(np.int8)))
    if crossings > 2:
        raise Multimodal(f"{crossings} half-maximum crossings")
    if above[0] or above[-1]:
        raise GridTooNarrow("line is above half maximum at the grid edge")
    if np.count_nonzero(above) < 8:
        raise GridTooCoarse(f"only {np.count_nonzero(above)} points above half maximum")
    i = np.argmax(above)
    j = len(above) - 1 - np.argmax(above[::-1])
    left = w[i - 1] + (half - v[i - 1]) * (w[i] - w[i - 1]) / (v[i] - v[i - 1])
    right = w[j] + (half - v[j]) * (w[j + 1] - w[j]) / (v[j + 1] - v[j])
    return float(right - left)


def closed_form_maxima(params: SystemParams) -> np.ndarray:
    """Frequencies of all local maxima of the closed-form cavity spectrum.

    The denominator is a real quartic in w; its stationary points come from a
    cubic, solved in a centred and rescaled variable for conditioning.
    """
    lp, lm = secular_roots(params)
    center = (lp.real + lm.real) / 2
    scale = max(abs(lp - center), abs(lm - center))
    quartic = Polynomial([1.0])
    for lam in (lp, lm):
        a, b = (lam.real - center) / scale, lam.imag / scale
        quartic = quartic * Polynomial([a * a + b * b, -2 * a, 1.0])
    slope, curvature = quartic.deriv(), quartic.deriv(2)
    stationary = slope.roots()
    real = stationary[np.abs(stationary.imag) < 1e-9].real
    minima = real[curvature(real) > 0]
    return np.sort(minima * scale + center)


def closed_form_density(params: SystemParams, omega) -> np.ndarray:
    """Unnormalised closed-form cavity spectrum evaluated at ``omega``."""
    lp, lm = secular_roots(params)
    omega = np.asarray(omega, dtype=float)
    return 1.0 / (np.abs(omega - lp) ** 2 * np.abs(omega - lm) ** 2)


def is_doublet(params: SystemParams) -> bool:
    """True when a second maximum reaches half the height of the main one."""
    maxima = closed_form_maxima(params)
    if len(maxima) < 2:
        return False
    heights = closed_form_density(params, maxima)
    return np.count_nonzero(heights >= 0.5 * heights.max()) > 1


def l2_distance(a: Spectrum, b: Spectrum) -> float:
    """``||a - b||`` relative to the smaller of the two norms (same grid required)."""
    if a.grid.shape != b.grid.shape or not np.array_equal(a.grid, b.grid):
        raise ValidationError("spectra must share a grid")
    diff = np.sqrt(trapezoid((a.values - b.values) ** 2, a.grid))
    norm = min(np.sqrt(trapezoid(a.values**2, a.grid)), np.sqrt(trapezoid(b.values**2, b.grid)))
    return float(diff / norm)

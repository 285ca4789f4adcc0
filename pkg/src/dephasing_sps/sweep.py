"""Parameter sweeps, spectral-jump scenarios and the dephasing design search."""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq

from . import merit, spectra
from .errors import SPSError, ValidationError
from .params import SystemParams

AXES = ("gamma_star", "delta", "g", "kappa", "gamma")
OUTPUTS = ("r", "cooperativity", "p_cav", "tau_inv", "d", "peak_frequency", "fwhm")
MAX_POINTS = 10**6

INV_PHI = (math.sqrt(5) - 1) / 2


@dataclass(frozen=True)
class SweepConfig:
    base: SystemParams
    axis: str
    start: float
    stop: float
    points: int
    outputs: tuple[str, ...] = ("p_cav",)

    def __post_init__(self):
        object.__setattr__(self, "outputs", tuple(self.outputs))
        if self.axis not in AXES:
            raise ValidationError(f"unknown sweep axis {self.axis!r}; choose from {AXES}")
        unknown = [o for o in self.outputs if o not in OUTPUTS]
        if unknown:
            raise ValidationError(f"unknown outputs {unknown}; choose from {OUTPUTS}")
        if len(set(self.outputs)) != len(self.outputs):
            raise ValidationError("duplicate outputs")
        if not (math.isfinite(self.start) and math.isfinite(self.stop)) or not self.start < self.stop:
            raise ValidationError(f"need finite start < stop, got {self.start!r}, {self.stop!r}")
        if isinstance(self.points, bool) or not isinstance(self.points, int) or not 2 <= self.points <= MAX_POINTS:
            raise ValidationError(f"points must be an integer in [2, {MAX_POINTS}], got {self.points!r}")

    def values(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.points)


@dataclass(frozen=True)
class SweepRow:
    value: float
    outputs: dict = field(default_factory=dict)  # name -> float or None
    note: str = ""


def _output(name: str, params: SystemParams):
    if name == "r":
        return merit.coupling_rate(params)
    if name == "cooperativity":
        return merit.cooperativity(params)
    if name == "p_cav":
        return merit.efficiency(params)
    if name == "tau_inv":
        return merit.lifetime_inv(params)
    if name == "d":
        return merit.indistinguishability(params)
    s = spectra.cavity_spectrum_closed_form(params)
    return spectra.peak_frequency(s) if name == "peak_frequency" else spectra.fwhm(s)


def sweep_point(base: SystemParams, axis: str, value: float, outputs) -> SweepRow:
    """One row; errors become empty cells plus a ``name: ErrorClass`` note."""
    notes = []
    cells = dict.fromkeys(outputs)
    try:
        params = base.replace(**{axis: float(value)})
    except SPSError as exc:
        return SweepRow(float(value), cells, f"params: {type(exc).__name__}")
    for name in outputs:
        try:
            cells[name] = float(_output(name, params))
        except SPSError as exc:
            notes.append(f"{name}: {type(exc).__name__}")
    return SweepRow(float(value), cells, "; ".join(notes))


def default_workers() -> int:
    env = os.environ.get("SPS_THREADS")
    if env:
        try:
            n = int(env)
        except ValueError:
            raise ValidationError(f"SPS_THREADS must be a positive integer, got {env!r}") from None
        if n < 1:
            raise ValidationError(f"SPS_THREADS must be a positive integer, got {env!r}")
        return n
    return os.cpu_count() or 1


def run_sweep(cfg: SweepConfig, workers: int = 1) -> list[SweepRow]:
    """Evaluate every grid point independently; rows come back in axis order."""
    values = cfg.values()
    if workers <= 1 or len(values) < 2:
        return [sweep_point(cfg.base, cfg.axis, v, cfg.outputs) for v in values]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda v: sweep_point(cfg.base, cfg.axis, v, cfg.outputs), values))


@dataclass(frozen=True)
class JumpResult:
    p_before: float
    p_after: float
    peak_before: float
    peak_after: float


def jump_scenario(params: SystemParams, jump: float) -> JumpResult:
    """Efficiency and spectral peak before and after a detuning jump of ``jump`` µeV."""
    after = params.replace(delta=params.delta + jump)

    def peak(p):
        return spectra.peak_frequency(spectra.cavity_spectrum_closed_form(p))

    return JumpResult(merit.efficiency(params), merit.efficiency(after), peak(params), peak(after))


def golden_section_max(f, lo: float, hi: float, rtol: float = 1e-8):
    """Maximise a unimodal ``f`` on ``[lo, hi]``; returns ``(x, f(x))``.

    Stops once the bracket is narrower than ``rtol`` times the current
    abscissa. Below ~sqrt(machine eps) relative width the comparisons are
    round-off limited, so tighter tolerances buy nothing.
    """
    a, b = lo, hi
    c = b - INV_PHI * (b - a)
    d = a + INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    while b - a > rtol * max(abs(c), abs(d), 1e-300):
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + INV_PHI * (b - a)
            fd = f(d)
    x = (a + b) / 2
    best = max((f(x), x), (f(lo), lo), (f(hi), hi))
    return best[1], best[0]


@dataclass(frozen=True)
class DesignResult:
    gamma_star_opt: float
    c_max: float
    boundary: bool  # optimum sits at gamma_star = 0


def optimal_dephasing(params: SystemParams, delta: float | None = None, rtol: float = 1e-8) -> DesignResult:
    """Pure dephasing rate maximising the cooperativity at fixed detuning.

    Searches ``gamma_star`` in ``[0, 20|δ|]``. When ``|δ| <= (κ+γ)/2`` the
    cooperativity already decreases from ``gamma_star = 0`` and that end is
    returned with ``boundary=True``.
    """
    delta = params.delta if delta is None else float(delta)
    base = params.replace(delta=delta)

    def coop(gs):
        return merit.cooperativity(base.replace(gamma_star=gs))

    if abs(delta) <= (params.kappa + params.gamma) / 2:
        return DesignResult(0.0, coop(0.0), True)
    x, c_max = golden_section_max(coop, 0.0, 20 * abs(delta), rtol=rtol)
    return DesignResult(x, c_max, False)


def efficiency_crossings(params: SystemParams, gamma_star_a: float, gamma_star_b: float, delta_max: float, samples: int = 4001):
    """Detunings in ``(0, delta_max]`` where two dephasing rates give equal efficiency."""
    a = params.replace(gamma_star=gamma_star_a)
    b = params.replace(gamma_star=gamma_star_b)

    def diff(d):
        return merit.efficiency(a.replace(delta=d)) - merit.efficiency(b.replace(delta=d))

    grid = np.linspace(0.0, delta_max, samples)[1:]
    vals = np.array([diff(d) for d in grid])
    out = []
    for i in np.nonzero(np.sign(vals[:-1]) * np.sign(vals[1:]) < 0)[0]:
        out.append(brentq(diff, grid[i], grid[i + 1], xtol=1e-12, rtol=1e-14))
    return out


def analytic_optimum(params: SystemParams, delta: float | None = None) -> DesignResult:
    """Stationary point of R in the coherence decay: ``κ + γ + γ* = 2|δ|``, ``R = g²/|δ|``."""
    delta = abs(params.delta if delta is None else float(delta))
    if delta <= (params.kappa + params.gamma) / 2:
        return DesignResult(0.0, merit.cooperativity(params.replace(delta=delta, gamma_star=0.0)), True)
    gamma_star = 2 * delta - params.kappa - params.gamma
    return DesignResult(gamma_star, params.g**2 / delta * (1 / params.kappa + 1 / params.gamma), False)


def approx_max_cooperativity(params: SystemParams, delta: float | None = None) -> float | None:
    """``g²/(γ|δ|)``: the optimum cooperativity when γ ≪ κ. None at zero detuning."""
    delta = abs(params.delta if delta is None else float(delta))
    return params.g**2 / (params.gamma * delta) if delta else None

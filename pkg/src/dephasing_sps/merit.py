"""Closed-form figures of merit of the single-photon source."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import Multimodal
from .params import SystemParams
from .spectra import is_doublet, secular_roots


@dataclass(frozen=True)
class FiguresOfMerit:
    r: float
    cooperativity: float
    p_cav: float
    tau_inv: float
    d: float | None  # None for a resolved doublet

    def as_dict(self) -> dict:
        return dict(r=self.r, cooperativity=self.cooperativity, p_cav=self.p_cav, tau_inv=self.tau_inv, d=self.d)


def coupling_rate(params: SystemParams) -> float:
    """Incoherent emitter-cavity exchange rate R in µeV.

    The Lorentzian overlap of the bare lines: ``4g²/W / (1 + (2δ/W)²)`` with
    ``W = κ + γ + γ*``.
    """
    width = params.kappa + params.gamma + params.gamma_star
    return 4 * params.g**2 / width / (1 + (2 * params.delta / width) ** 2)


def cooperativity(params: SystemParams) -> float:
    return coupling_rate(params) * (1 / params.kappa + 1 / params.gamma)


def efficiency_from_cooperativity(kappa: float, gamma: float, coop: float) -> float:
    return kappa / (kappa + gamma) * coop / (1 + coop)


def efficiency(params: SystemParams) -> float:
    """Probability that the excitation leaves through the cavity."""
    return efficiency_from_cooperativity(params.kappa, params.gamma, cooperativity(params))


def lifetime_inv(params: SystemParams) -> float:
    """Slow decay rate of the two-box rate model, ``(κ+γ)/2 + R - sqrt(((κ-γ)/2)² + R²)``.

    Evaluated as ``min(κ, γ) + 2R|b| / (R + |b| + hypot(b, R))`` with
    ``b = (κ - γ)/2``, which is the same number without cancellation and
    exact at both ``κ = γ`` and ``R = 0``.
    """
    r = coupling_rate(params)
    b = abs(params.kappa - params.gamma) / 2
    denom = r + b + math.hypot(b, r)
    extra = 2 * r * b / denom if denom > 0 else 0.0
    return min(params.kappa, params.gamma) + extra


def indistinguishability(params: SystemParams) -> float:
    """Ratio of the decay rate to the spectral FWHM of the narrow resonance.

    Equals 1 for a transform-limited Lorentzian photon. Clamped to [0, 1].

    Raises
    ------
    Multimodal
        If the emission spectrum is a resolved doublet.
    """
    if params.g > 0 and is_doublet(params):
        raise Multimodal("emission spectrum is a resolved doublet; no single linewidth")
    width = secular_roots(params).narrow_fwhm
    return min(1.0, max(0.0, lifetime_inv(params) / width))


def filtering_condition(params: SystemParams) -> tuple[bool, bool]:
    """(cavity filtering ``γ+γ* > κ``, efficient cavity emission ``κ > γ``)."""
    return params.gamma + params.gamma_star > params.kappa, params.kappa > params.gamma


def figures_of_merit(params: SystemParams) -> FiguresOfMerit:
    try:
        d = indistinguishability(params)
    except Multimodal:
        d = None
    return FiguresOfMerit(
        r=coupling_rate(params),
        cooperativity=cooperativity(params),
        p_cav=efficiency(params),
        tau_inv=lifetime_inv(params),
        d=d,
    )

"""Emitter-cavity single-photon source under pure dephasing.

Energies in µeV, ħ = 1.
"""

from .dynamics import TimeIntegrals, Trajectory, integrate_populations, qrt_spectrum, time_integrals_closed_form
from .merit import (
    FiguresOfMerit,
    cooperativity,
    coupling_rate,
    efficiency,
    figures_of_merit,
    filtering_condition,
    indistinguishability,
    lifetime_inv,
)
from .params import SystemParams, energy_to_inverse_time, inverse_time_to_energy, preset, validate
from .spectra import (
    SecularRoots,
    Spectrum,
    cavity_spectrum_closed_form,
    filter_product_spectrum,
    fwhm,
    lorentzian_spectrum,
    peak_frequency,
    secular_roots,
)
from .sweep import SweepConfig, jump_scenario, optimal_dephasing, run_sweep

__version__ = "0.1.0"

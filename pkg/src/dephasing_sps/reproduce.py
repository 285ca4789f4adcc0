"""Named reproduction targets: spectra panels, efficiency curves, quoted numbers.

Each target returns an :class:`~dephasing_sps.io.Table`. Nothing here does
physics of its own; it only chooses parameter points and calls the modules.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import merit, spectra, sweep
from .io import Table, curves_table
from .params import SystemParams, preset

MEV = 1000.0

SPECTRUM_PANELS = {
    "fig2a": dict(gamma_star=0.0, delta=0.0),
    "fig2b": dict(gamma_star=0.5 * MEV, delta=0.0),
    "fig2c": dict(gamma_star=0.0, delta=1 * MEV),
    "fig2d": dict(gamma_star=0.5 * MEV, delta=1 * MEV),
}


@dataclass(frozen=True)
class QuotedValue:
    label: str
    params: SystemParams
    quoted: float
    quantity: str = "p_cav"


def efficiency_table_points() -> list[QuotedValue]:
    """Quoted source efficiencies before and after a 1 meV detuning jump."""
    rows = []
    for name, quotes in (("press", {0.0: (0.97, 0.10), 500.0: (0.90, 0.40)}), ("hennessy", {0.0: (0.99, 0.37), 500.0: (0.97, 0.76)})):
        for gs, (before, after) in quotes.items():
            rows.append(QuotedValue(f"{name} gamma*={gs:g} delta=0", preset(name, gamma_star=gs, delta=0.0), before))
            rows.append(QuotedValue(f"{name} gamma*={gs:g} delta=1meV", preset(name, gamma_star=gs, delta=MEV), after))
    rows.append(QuotedValue("hennessy gamma=0.1 gamma*=500 delta=1meV", preset("hennessy", gamma=0.1, gamma_star=500.0, delta=MEV), 0.96))
    return rows


# device with kappa = gamma = 10 µeV; g = 35 µeV is assumed (not quoted with the device)
def indist_device(delta: float) -> SystemParams:
    return SystemParams.from_detuning(g=35.0, kappa=10.0, gamma=10.0, gamma_star=500.0, delta=delta)


def indist_points() -> list[QuotedValue]:
    return [
        QuotedValue("d resonant", indist_device(0.0), 0.80, "d"),
        QuotedValue("d delta=1.5meV", indist_device(1.5 * MEV), 0.97, "d"),
        QuotedValue("p_cav delta=1.5meV", indist_device(1.5 * MEV), 0.03, "p_cav"),
    ]


def _evaluate(q: QuotedValue):
    fom = merit.figures_of_merit(q.params)
    return getattr(fom, q.quantity)


def quoted_table(points: list[QuotedValue], tol: float = 0.01) -> Table:
    columns = ["label", "quantity", "g", "kappa", "gamma", "gamma_star", "delta", "quoted", "computed", "abs_diff", "within_tol"]
    rows = []
    for q in points:
        value = _evaluate(q)
        diff = None if value is None else abs(value - q.quoted)
        p = q.params
        rows.append([q.label, q.quantity, p.g, p.kappa, p.gamma, p.gamma_star, p.delta, q.quoted, value, diff, diff is not None and diff <= tol])
    return Table(columns, rows, digits=6)


def spectrum_panel(target: str) -> Table:
    params = preset("press", **SPECTRUM_PANELS[target])
    grid = spectra.default_grid(params)
    curves = {
        "s_cav": spectra.cavity_spectrum_closed_form(params, grid),
        "s0_qd": spectra.emitter_spectrum_uncoupled(params, grid),
        "s0_cav": spectra.cavity_spectrum_uncoupled(params, grid),
    }
    return curves_table(grid, curves)


def _sweep_columns(axis: str, values: np.ndarray, curves: dict[str, SystemParams], workers: int) -> Table:
    columns, cols = [axis], [values]
    for name, base in curves.items():
        cfg = sweep.SweepConfig(base, axis, float(values[0]), float(values[-1]), len(values), ("p_cav",))
        cols.append([r.outputs["p_cav"] for r in sweep.run_sweep(cfg, workers)])
        columns.append(name)
    return Table(columns, [list(r) for r in zip(*cols)])


def fig3a(workers: int = 1) -> Table:
    values = np.linspace(0.0, 2.5 * MEV, 501)
    curves = {f"{n}_delta_{d:g}ueV": preset(n, delta=d) for n in ("press", "hennessy") for d in (0.0, MEV)}
    return _sweep_columns("gamma_star", values, curves, workers)


def fig3b(workers: int = 1) -> Table:
    values = np.linspace(0.0, 2.0 * MEV, 401)
    curves = {f"{n}_gamma_star_{gs:g}ueV": preset(n, gamma_star=gs) for n in ("press", "hennessy") for gs in (0.0, 500.0)}
    return _sweep_columns("delta", values, curves, workers)


def fig3b_crossings() -> dict[str, list[float]]:
    """Detunings where the dephased and dephasing-free curves cross."""
    return {n: sweep.efficiency_crossings(preset(n), 0.0, 500.0, 2.0 * MEV) for n in ("press", "hennessy")}


TARGETS = ("fig2a", "fig2b", "fig2c", "fig2d", "fig3a", "fig3b", "table-efficiency", "indist")


def build(target: str, workers: int = 1) -> Table:
    if target in SPECTRUM_PANELS:
        return spectrum_panel(target)
    if target == "fig3a":
        return fig3a(workers)
    if target == "fig3b":
        return fig3b(workers)
    if target == "table-efficiency":
        return quoted_table(efficiency_table_points())
    if target == "indist":
        return quoted_table(indist_points())
    raise KeyError(target)

"""Command-line frontend.

Exit codes: 0 ok, 2 usage, 3 validation, 4 numeric domain, 5 I/O.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field

from . import dynamics, merit, reproduce, spectra, sweep
from .errors import NumericDomainError, ValidationError
from .io import Table, render, spectrum_table, sweep_table, write_plot_data, write_text
from .params import PRESETS, SystemParams, load_config, params_from_mapping, parse_energy

EXIT_OK, EXIT_USAGE, EXIT_VALIDATION, EXIT_NUMERIC, EXIT_IO = 0, 2, 3, 4, 5

SUBCOMMANDS = ("spectrum", "figures", "sweep", "jump", "design", "reproduce")
PARAM_FLAGS = ("g", "kappa", "gamma", "gamma_star", "delta", "omega0", "omega_cav")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


@dataclass
class Command:
    subcommand: str
    overrides: dict = field(default_factory=dict)
    preset: str | None = None
    config: str | None = None
    fmt: str = "csv"
    output: str | None = None
    plot_data: str | None = None
    verbose: bool = False
    options: dict = field(default_factory=dict)


def _energy(text):
    try:
        return parse_energy(text)
    except ValidationError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _positive_int(text):
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if n < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1: {text!r}")
    return n


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--preset", choices=sorted(PRESETS))
    common.add_argument("--config", metavar="PATH", help="flat key = value parameter file")
    for name in PARAM_FLAGS:
        common.add_argument("--" + name.replace("_", "-"), dest=name, type=_energy, metavar="E", help="energy, e.g. 35, 500ueV, 1meV")
    common.add_argument("--format", dest="fmt", choices=("csv", "json"), default="csv")
    common.add_argument("-o", "--output", metavar="PATH", help="output file (default: stdout)")
    common.add_argument("--plot-data", metavar="DIR", help="also write one two-column CSV per curve into DIR")
    common.add_argument("--verbose", action="store_true", help="run metadata on stderr")

    parser = _Parser(prog="sps", description="Dephased emitter-cavity single-photon source toolkit")
    sub = parser.add_subparsers(dest="subcommand", parser_class=_Parser)

    p = sub.add_parser("spectrum", parents=[common], help="cavity emission spectrum")
    p.add_argument("--oracle", action="store_true", help="add the quantum-regression spectrum as a column")
    p.add_argument("--points", type=_positive_int, default=spectra.DEFAULT_POINTS)

    sub.add_parser("figures", parents=[common], help="R, cooperativity, efficiency, lifetime, indistinguishability")

    p = sub.add_parser("sweep", parents=[common], help="one-parameter sweep")
    p.add_argument("--axis", required=True, choices=sweep.AXES)
    p.add_argument("--start", required=True, type=_energy)
    p.add_argument("--stop", required=True, type=_energy)
    p.add_argument("--points", type=_positive_int, default=101)
    p.add_argument("--outputs", default="p_cav", help=f"comma list from {','.join(sweep.OUTPUTS)}")

    p = sub.add_parser("jump", parents=[common], help="efficiency and peak before/after a detuning jump")
    p.add_argument("--jump", required=True, type=_energy)

    sub.add_parser("design", parents=[common], help="dephasing rate maximising cooperativity at the given detuning")

    p = sub.add_parser("reproduce", parents=[common], help="named reproduction artifacts")
    p.add_argument("target", choices=reproduce.TARGETS)
    return parser


ENERGY_FLAGS = {"--" + n.replace("_", "-") for n in PARAM_FLAGS} | {"--start", "--stop", "--jump"}


def _attach_negative_energies(argv):
    """``--start -1meV`` -> ``--start=-1meV``; argparse would read ``-1meV`` as a flag."""
    out, i = [], 0
    while i < len(argv):
        tok = argv[i]
        nxt = argv[i + 1] if i + 1 < len(argv) else None
        if tok in ENERGY_FLAGS and nxt is not None and nxt.startswith("-") and (nxt[1:2].isdigit() or nxt[1:2] == "."):
            out.append(f"{tok}={nxt}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


def parse_args(argv) -> Command:
    ns = build_parser().parse_args(_attach_negative_energies(list(argv)))
    if ns.subcommand is None:
        raise UsageError(f"a subcommand is required: {', '.join(SUBCOMMANDS)}")
    overrides = {k: getattr(ns, k) for k in PARAM_FLAGS if getattr(ns, k) is not None}
    if "delta" in overrides and "omega_cav" in overrides:
        raise UsageError("give either --delta or --omega-cav, not both")
    needs_params = ns.subcommand != "reproduce"
    if needs_params and ns.preset is None and ns.config is None and not {"g", "kappa", "gamma"} <= overrides.keys():
        raise UsageError("no parameters: give --preset, --config, or all of --g --kappa --gamma")
    options = {}
    if ns.subcommand == "spectrum":
        options = dict(oracle=ns.oracle, points=ns.points)
    elif ns.subcommand == "sweep":
        outputs = tuple(o for o in ns.outputs.split(",") if o)
        bad = [o for o in outputs if o not in sweep.OUTPUTS]
        if bad:
            raise UsageError(f"unknown outputs: {', '.join(bad)}")
        options = dict(axis=ns.axis, start=ns.start, stop=ns.stop, points=ns.points, outputs=outputs)
    elif ns.subcommand == "jump":
        options = dict(jump=ns.jump)
    elif ns.subcommand == "reproduce":
        options = dict(target=ns.target)
    return Command(ns.subcommand, overrides, ns.preset, ns.config, ns.fmt, ns.output, ns.plot_data, ns.verbose, options)


def resolve_params(cmd: Command) -> SystemParams:
    """Preset, then config file, then command-line flags."""
    values = dict(PRESETS[cmd.preset]) if cmd.preset else {}
    if cmd.config:
        values.update(load_config(cmd.config))
    flags = dict(cmd.overrides)
    if "omega_cav" in flags:
        values.pop("delta", None)
    if "delta" in flags:
        values.pop("omega_cav", None)
    values.update(flags)
    return params_from_mapping(values)


def _figures_table(params: SystemParams) -> Table:
    fom = merit.figures_of_merit(params)
    filtering, efficient = merit.filtering_condition(params)
    cols = ["r", "cooperativity", "p_cav", "tau_inv", "d", "filtering", "efficient_emission"]
    return Table(cols, [[fom.r, fom.cooperativity, fom.p_cav, fom.tau_inv, fom.d, filtering, efficient]], digits=6)


def _log(cmd: Command, message: str):
    if cmd.verbose:
        print(message, file=sys.stderr)


def execute(cmd: Command) -> Table:
    if cmd.subcommand == "reproduce":
        target = cmd.options["target"]
        table = reproduce.build(target, sweep.default_workers())
        if target == "fig3b":
            _log(cmd, f"crossings (delta, ueV): {reproduce.fig3b_crossings()}")
        return table
    params = resolve_params(cmd)
    _log(cmd, f"params: {params.as_dict()}")
    if cmd.subcommand == "spectrum":
        grid = spectra.default_grid(params, cmd.options["points"])
        closed = spectra.cavity_spectrum_closed_form(params, grid)
        oracle = dynamics.qrt_spectrum(params, grid) if cmd.options["oracle"] else None
        if oracle is not None:
            _log(cmd, f"oracle pre-clip minimum: {oracle.raw_min!r}; L2 distance: {spectra.l2_distance(closed, oracle):.3e}")
        return spectrum_table(closed, oracle)
    if cmd.subcommand == "figures":
        return _figures_table(params)
    if cmd.subcommand == "sweep":
        o = cmd.options
        cfg = sweep.SweepConfig(params, o["axis"], o["start"], o["stop"], o["points"], o["outputs"])
        workers = sweep.default_workers()
        _log(cmd, f"sweep workers: {workers}")
        return sweep_table(cfg, sweep.run_sweep(cfg, workers))
    if cmd.subcommand == "jump":
        jump = cmd.options["jump"]
        res = sweep.jump_scenario(params, jump)
        cols = ["delta_before", "delta_after", "p_before", "p_after", "peak_before", "peak_after"]
        return Table(cols, [[params.delta, params.delta + jump, res.p_before, res.p_after, res.peak_before, res.peak_after]], digits=6)
    if cmd.subcommand == "design":
        found = sweep.optimal_dephasing(params)
        exact = sweep.analytic_optimum(params)
        approx = sweep.approx_max_cooperativity(params)
        cols = ["delta", "gamma_star_opt", "c_max", "boundary", "gamma_star_stationary", "c_stationary", "c_approx_g2_over_gamma_delta"]
        return Table(cols, [[params.delta, found.gamma_star_opt, found.c_max, found.boundary, exact.gamma_star_opt, exact.c_max, approx]], digits=6)
    raise UsageError(f"unknown subcommand {cmd.subcommand!r}")


def run(cmd: Command) -> int:
    try:
        table = execute(cmd)
        text = render(table, cmd.fmt)
        write_text(text, cmd.output)
        if cmd.plot_data:
            write_plot_data(table, cmd.plot_data)
    except ValidationError as exc:
        print(f"sps: invalid input: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except NumericDomainError as exc:
        print(f"sps: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except OSError as exc:
        print(f"sps: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        cmd = parse_args(argv)
    except UsageError as exc:
        print(f"sps: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    return run(cmd)


if __name__ == "__main__":
    sys.exit(main())

#!/usr/bin/env python3
"""Optimal pure-dephasing rate and peak cooperativity versus detuning."""

import argparse

import numpy as np

from dephasing_sps.io import Table, render, write_text
from dephasing_sps.params import PRESETS, preset
from dephasing_sps.sweep import analytic_optimum, approx_max_cooperativity, optimal_dephasing


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--preset", choices=sorted(PRESETS), default="press")
    ap.add_argument("--delta-max", type=float, default=3000.0)
    ap.add_argument("--points", type=int, default=31)
    ap.add_argument("--format", choices=("csv", "json"), default="csv")
    ap.add_argument("-o", "--output")
    args = ap.parse_args()

    p = preset(args.preset)
    rows = []
    for delta in np.linspace(0.0, args.delta_max, args.points):
        found, exact = optimal_dephasing(p, delta), analytic_optimum(p, delta)
        rows.append([float(delta), found.gamma_star_opt, found.c_max, exact.c_max, approx_max_cooperativity(p, delta), found.boundary])
    cols = ["delta", "gamma_star_opt", "c_max", "c_stationary", "c_approx", "boundary"]
    write_text(render(Table(cols, rows, digits=8), args.format), args.output)


if __name__ == "__main__":
    main()

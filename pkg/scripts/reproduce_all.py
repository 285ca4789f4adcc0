#!/usr/bin/env python3
"""Write every reproduction target as CSV into a directory (default: ./artifacts)."""

import argparse
from pathlib import Path

from dephasing_sps import reproduce
from dephasing_sps.io import to_csv, write_text
from dephasing_sps.sweep import default_workers


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("outdir", nargs="?", default="artifacts", type=Path)
    args = ap.parse_args()
    args.outdir.mkdir(parents=True, exist_ok=True)
    workers = default_workers()
    for target in reproduce.TARGETS:
        path = args.outdir / f"{target}.csv"
        write_text(to_csv(reproduce.build(target, workers)), path)
        print(path)
    for name, xs in reproduce.fig3b_crossings().items():
        print(f"fig3b crossing {name}: " + ", ".join(f"{x:.3f} ueV" for x in xs))


if __name__ == "__main__":
    main()

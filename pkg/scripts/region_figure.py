#!/usr/bin/env python3
"""Emit the region-of-gearlikeness figure and table.

Writes artifacts/region.svg (shaded exact region, solid endpoint curves,
dashed Nehari band) and artifacts/region.csv.

Usage: python scripts/region_figure.py [--n 120] [--probe]
"""

import argparse
import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from gearmap.cli import main as cli_main  # noqa: E402


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--n", type=int, default=120)
    parser.add_argument("--outdir", default=os.path.join(
        os.path.dirname(__file__), "..", "artifacts"))
    args = parser.parse_args()
    os.makedirs(args.outdir, exist_ok=True)
    common = ["region", "--tmin", "0.02", "--tmax", "1.55", "--n", str(args.n)]
    rc = cli_main(common + ["--format", "svg",
                            "--out", os.path.join(args.outdir, "region.svg")])
    rc |= cli_main(common + ["--format", "csv",
                             "--out", os.path.join(args.outdir, "region.csv")])
    print(f"wrote region.svg and region.csv under {args.outdir}")
    return rc


if __name__ == "__main__":
    sys.exit(main())

#!/usr/bin/env python3
"""Render a gallery of pregear boundary figures across the lambda interval.

For each t in a short list, solves the mapping at several lambda values
spanning the gearlike interval (including both degenerate endpoints) and
writes one SVG per case into artifacts/gallery/.

Usage: python scripts/pregear_gallery.py [--rays 48]
"""

import argparse
import math
import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from gearmap.gear_geometry import extract_pregear  # noqa: E402
from gearmap.mapping import SolverConfig, solve_schwarzian_ivp  # noqa: E402
from gearmap.schwarzian import (SymmetricParams, build_symmetric,  # noqa: E402
                                lambda_bounds)
from gearmap.svgplot import map_figure  # noqa: E402


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--rays", type=int, default=48)
    parser.add_argument("--outdir", default=os.path.join(
        os.path.dirname(__file__), "..", "artifacts", "gallery"))
    args = parser.parse_args()
    os.makedirs(args.outdir, exist_ok=True)
    cfg = SolverConfig(rays=args.rays)
    for t in (0.6, math.pi / 3.0, 1.3):
        lo, hi = lambda_bounds(t)
        cases = [("deg_lo", lo), ("inner_lo", lo + 0.12 * (hi - lo)),
                 ("mid", 0.5 * (lo + hi)),
                 ("inner_hi", hi - 0.12 * (hi - lo)), ("deg_hi", hi)]
        for name, lam in cases:
            sol = solve_schwarzian_ivp(
                build_symmetric(SymmetricParams(t, lam)), cfg)
            desc = extract_pregear(sol)
            path = os.path.join(args.outdir, f"t{t:.3f}_{name}.svg")
            with open(path, "w", newline="\n") as fh:
                fh.write(map_figure(sol, desc))
            print(f"{path}: {desc.classification}")
    return 0


if __name__ == "__main__":
    sys.exit(main())

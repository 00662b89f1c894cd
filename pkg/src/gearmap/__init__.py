"""Conformal maps of the unit disk onto one-tooth gear and pregear domains.

The library relates the geometric coordinates of a gear (ratio beta, angle
gamma) to the accessory parameters (t, lambda) of the rational Schwarzian
derivative of the Riemann map, solves the mapping ODEs, classifies the image
domains, and tabulates the exact region of parameters that produce gears.
"""

from .geometry import (DiskAutomorphism, GeneralizedCircle, INFINITY,
                       MobiusTransform, circle_intersection,
                       circle_through_three_points, symmetrize_prevertices)
from .schwarzian import (PreverticesPair, RationalSchwarzian, SymmetricParams,
                         build_general, build_symmetric, degenerate_schwarzian,
                         lambda_bounds, nehari_bounds, pullback)
from .mapping import (MapSolution, SolverConfig, sc_integral, solve_goodman,
                      solve_schwarzian_ivp)
from .gear_geometry import (GearParams, PregearDescription, extract_pregear,
                            normalize_to_gear, tooth_curvature)
from .analysis import (ModuleValue, beta_gamma_integrals, conformal_module,
                       gearlike_region, invert_beta_gamma,
                       lambda_from_prevertices, module_gamma_sweep)

__version__ = "0.1.0"

__all__ = [
    "DiskAutomorphism", "GeneralizedCircle", "INFINITY", "MobiusTransform",
    "circle_intersection", "circle_through_three_points",
    "symmetrize_prevertices",
    "PreverticesPair", "RationalSchwarzian", "SymmetricParams",
    "build_general", "build_symmetric", "degenerate_schwarzian",
    "lambda_bounds", "nehari_bounds", "pullback",
    "MapSolution", "SolverConfig", "sc_integral", "solve_goodman",
    "solve_schwarzian_ivp",
    "GearParams", "PregearDescription", "extract_pregear",
    "normalize_to_gear", "tooth_curvature",
    "ModuleValue", "beta_gamma_integrals", "conformal_module",
    "gearlike_region", "invert_beta_gamma", "lambda_from_prevertices",
    "module_gamma_sweep",
]

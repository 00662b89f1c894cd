"""Acceptance suite: one test per release criterion, each printing a
PASS/FAIL line (run with -s to see them).

Criterion 7's two limit-threshold subclauses are asserted exactly as stated
and fail: the closed form M(t) = 2 K(tan^2(t/2)) / K', anchored by
M(2 atan 2^{-1/4}) = 2, approaches its endpoint limits only logarithmically,
so M(0.02) = 0.2965 (not < 1e-2) and M(pi/2 - 0.005) = 4.2556 (not > 10).
See the decisions ledger for the analysis.
"""

import cmath
import math
import os

import numpy as np
import pytest

from gearmap.analysis import (beta_gamma_integrals, conformal_module,
                              gearlike_region, invert_beta_gamma,
                              lambda_from_prevertices, module_gamma_sweep,
                              symmetric_parameters)
from gearmap.gear_geometry import (DEGENERATE_MINUS, DEGENERATE_PLUS, GEAR,
                                   PREGEAR, GearParams, extract_pregear,
                                   normalize_to_gear)
from gearmap.geometry import DiskAutomorphism, symmetrize_prevertices
from gearmap.mapping import (SolverConfig, ray_values, solve_goodman,
                             solve_schwarzian_ivp)
from gearmap.schwarzian import (PreverticesPair, RationalSchwarzian,
                                SymmetricParams, build_general,
                                build_symmetric, degenerate_endpoint_lambda,
                                degenerate_schwarzian, lambda_bounds,
                                nehari_bounds)

ARTIFACTS = os.path.join(os.path.dirname(__file__), "..", "artifacts")

PAIRS_5 = [(0.5, 1.0), (0.5, 2.0), (0.8, 1.9), (1.2, 2.2), (0.3, 2.8)]

# moderate gear ratios for the solver-based closure: at beta in the hundreds
# the A-arc shrinks to a sliver and its fitted center can no longer meet the
# concentricity invariant from boundary data at offset 1e-4
PAIRS_GEOMETRY = [(0.5, 1.0), (0.5, 2.0), (0.8, 1.9), (1.2, 2.2), (0.9, 1.4)]


def _report(criterion, status, detail):
    print(f"\nACCEPTANCE CRITERION {criterion}: {status} - {detail}")


def test_criterion_01_exact_lambda_bounds():
    grid = np.linspace(0.02, 0.5 * math.pi - 0.02, 50)
    for t in grid:
        lo, hi = lambda_bounds(float(t))
        shift = (math.cos(t) + 1.0 / math.cos(t)) / 16.0
        assert abs(lo - (-0.25 - shift)) < 1e-15
        assert abs(hi - (0.25 - shift)) < 1e-15
        assert abs((hi - lo) - 0.5) < 1e-15
    lo, hi = lambda_bounds(math.pi / 3.0)
    assert abs(lo + 13.0 / 32.0) < 1e-15
    assert abs(hi - 3.0 / 32.0) < 1e-15
    _report(1, "PASS", "closed-form endpoints on 50-point grid, "
                       "spot value (-13/32, 3/32) at t=pi/3, width 1/2")


def test_criterion_02_nehari_containment():
    grid = np.linspace(0.02, 0.5 * math.pi - 0.02, 50)
    for t in grid:
        lo, hi = lambda_bounds(float(t))
        nlo, nhi = nehari_bounds(float(t))
        assert nlo < lo and hi < nhi
    nlo, nhi = nehari_bounds(math.pi / 3.0)
    assert abs(nlo + 27.0 / 32.0) < 1e-15
    assert abs(nhi - 21.0 / 32.0) < 1e-15
    _report(2, "PASS", "Nehari band strictly contains the exact interval; "
                       "band at t=pi/3 is (-27/32, 21/32)")


def test_criterion_03_univalence_boundary_sharp():
    cfg = SolverConfig(rays=32)
    worst_gap = 0.0
    for t in np.linspace(0.35, 1.45, 10):
        t = float(t)
        lo, hi = lambda_bounds(t)

        def classify(lam):
            sol = solve_schwarzian_ivp(
                build_symmetric(SymmetricParams(t, lam)), cfg)
            return extract_pregear(sol)

        assert classify(0.5 * (lo + hi)).classification == PREGEAR
        assert classify(lo + 1e-2).classification == PREGEAR
        assert classify(hi - 1e-2).classification == PREGEAR
        assert classify(lo - 1e-2).classification not in (PREGEAR, GEAR)
        assert classify(hi + 1e-2).classification not in (PREGEAR, GEAR)
        for lam in (lo + 1e-4, hi - 1e-4):
            d = classify(lam)
            gap = d.diagnostics["tooth_circle_gap"]
            assert gap < 1e-3
            worst_gap = max(worst_gap, gap)
    _report(3, "PASS", f"sharp classification at 10 t values; worst "
                       f"tangency gap at the 1e-4 offsets: {worst_gap:.2e}")


def _sc_integrand(t, side):
    c = math.cos(t)
    pole = -1.0 if side == "minus" else 1.0

    def integrand(z):
        num = z * z + 2.0 * c * z + 1.0
        den = z * z - 2.0 * c * z + 1.0
        root = cmath.exp(0.5 * (cmath.log(num) - cmath.log(den)))
        return root / (z - pole) ** 2

    return integrand


def _fd_schwarzian(fprime, z, h):
    f = [fprime(z + k * h) for k in range(-3, 4)]
    d1 = (-f[5] + 8 * f[4] - 8 * f[2] + f[1]) / (12 * h)
    d2 = (-f[5] + 16 * f[4] - 30 * f[3] + 16 * f[2] - f[1]) / (12 * h * h)
    return d2 / f[3] - 1.5 * (d1 / f[3]) ** 2


def test_criterion_04_degenerate_endpoint_schwarzians():
    # fourth-order stencils at two step sizes, Richardson-combined to kill
    # the h^4 term (the side with the nearby double pole needs it)
    h = 4e-3
    points = [0.4 * cmath.exp(2j * math.pi * k / 20.0) for k in range(20)]
    associations = []
    for t in np.linspace(0.3, 1.4, 5):
        t = float(t)
        lo, hi = lambda_bounds(t)
        for side in ("minus", "plus"):
            r = degenerate_schwarzian(t, side)
            fprime = _sc_integrand(t, side)
            for z in points:
                coarse = _fd_schwarzian(fprime, z, h)
                fine = _fd_schwarzian(fprime, z, 0.5 * h)
                s_num = (16.0 * fine - coarse) / 15.0
                assert abs(s_num - r(z)) < 1e-8 * max(1.0, abs(r(z)))
        associations.append((
            "minus->plus-endpoint"
            if abs(degenerate_endpoint_lambda(t, "minus") - hi) < 1e-13
            else "minus->minus-endpoint"))
    assert len(set(associations)) == 1
    _report(4, "PASS", f"FD Schwarzians of both integrands match "
                       f"R at the endpoints (20 points, 5 t values); stable "
                       f"association: {associations[0]}")


def test_criterion_05_goodman_schwarzian_cross_validation():
    from gearmap.analysis import goodman_schwarzian
    probes = (0.1, 0.3 + 0.25j, -0.45j, -0.5 + 0.2j, 0.62 - 0.31j,
              0.05 + 0.7j, -0.71, 0.33 - 0.52j)
    for t1, t2 in PAIRS_5:
        p = PreverticesPair(t1, t2)
        lam = lambda_from_prevertices(p)
        r = build_general(p, lam)
        for z in probes:
            s = goodman_schwarzian(p, z)
            assert abs(s - r(z)) < 1e-9 * max(1.0, abs(s))
        # the pullback to symmetric prevertices preserves lambda
        q, t, lam_again = symmetric_parameters(p)
        assert abs(lam_again - lam) < 1e-9
        reduced = build_symmetric(SymmetricParams(t, lam))
        aut = DiskAutomorphism(q)
        for z in probes:
            lhs = r(z)
            rhs = reduced(aut.apply(z)) * aut.derivative(z) ** 2
            assert abs(lhs - rhs) < 1e-9 * max(1.0, abs(lhs))
    _report(5, "PASS", "closed-form map Schwarzian equals the rational form "
                       "pointwise (1e-9) and pullback preserves lambda "
                       "for 5 prevertex pairs")


def test_criterion_06_geometry_closure():
    cfg = SolverConfig()
    worst_direct = 0.0
    for t1, t2 in PAIRS_GEOMETRY:
        p = PreverticesPair(t1, t2)
        ref = beta_gamma_integrals(p)
        sol = solve_goodman(p, cfg)
        desc = extract_pregear(sol)
        assert desc.classification == GEAR
        _, gear = normalize_to_gear(desc, sol)
        err = max(abs(gear.beta - ref.beta) / ref.beta,
                  abs(gear.gamma - ref.gamma))
        assert abs(gear.beta - ref.beta) < 1e-6 * max(1.0, ref.beta)
        assert abs(gear.gamma - ref.gamma) < 1e-6
        worst_direct = max(worst_direct, err)

    worst_closure = 0.0
    for beta, gamma in ((2.0, 1.2), (3.5, 0.8), (1.6, 2.3)):
        pair = invert_beta_gamma(GearParams(beta=beta, gamma=gamma))
        q, t, lam = symmetric_parameters(pair)
        sol = solve_schwarzian_ivp(build_symmetric(SymmetricParams(t, lam)),
                                   cfg)
        desc = extract_pregear(sol)
        assert desc.classification in (PREGEAR, GEAR)
        _, gear = normalize_to_gear(desc, sol)
        assert abs(gear.beta - beta) < 1e-5 * max(1.0, beta)
        assert abs(gear.gamma - gamma) < 1e-5
        worst_closure = max(worst_closure,
                            abs(gear.beta - beta) / beta,
                            abs(gear.gamma - gamma))
    _report(6, "PASS", f"measured (beta, gamma) matches the integrals to "
                       f"1e-6 (worst {worst_direct:.2e}); inversion "
                       f"pipeline closes to 1e-5 (worst {worst_closure:.2e})")


def test_criterion_07_conformal_module_anchor_and_oracle():
    t_star = 2.0 * math.atan(2.0 ** -0.25)
    assert abs(conformal_module(t_star).M - 2.0) < 1e-10
    for t in np.linspace(0.08, 1.49, 20):
        a = conformal_module(float(t)).M
        q = conformal_module(float(t), method="quadrature").M
        assert abs(a - q) < 1e-10 * max(1.0, a)
    _report(7, "PASS (anchor and oracle)",
            "M(2 atan 2^{-1/4}) = 2 to 1e-10; AGM matches independent "
            "quadrature to 1e-10 at 20 points")


def test_criterion_07_limit_thresholds():
    m_small = conformal_module(0.02).M
    m_large = conformal_module(0.5 * math.pi - 0.005).M
    status = "PASS" if (m_small < 1e-2 and m_large > 10.0) else "FAIL"
    _report(7, status + " (limit thresholds)",
            f"M(0.02) = {m_small:.6f} (required < 1e-2), "
            f"M(pi/2 - 0.005) = {m_large:.6f} (required > 10); the closed "
            f"form approaches the limits logarithmically, so the stated "
            f"thresholds cannot be met (see decisions ledger)")
    assert m_small < 1e-2, (
        f"M(0.02) = {m_small}: the stated threshold 1e-2 is unattainable "
        f"for the closed form anchored by M(t*) = 2")
    assert m_large > 10.0


def test_criterion_08_ode_quality():
    cfg = SolverConfig()
    sol = solve_schwarzian_ivp(
        build_symmetric(SymmetricParams(math.pi / 3.0, 0.0)), cfg)
    assert sol.wronskian_drift < 1e-9

    r = build_symmetric(SymmetricParams(1.1, 0.05))
    worst_sym = 0.0
    for theta in (0.3, 1.2, 2.7):
        upper = ray_values(r, cfg, theta, [0.35, 0.7, 0.95])
        lower = ray_values(r, cfg, -theta, [0.35, 0.7, 0.95])
        for (zu, fu, _, _), (zl, fl, _, _) in zip(upper, lower):
            worst_sym = max(worst_sym, abs(fl - fu.conjugate()))
    assert worst_sym < 1e-10

    zero_r = RationalSchwarzian(psi0_num=(0.0,) * 5, psi1_num=0.0,
                                den=(1.0, 0.0, 0.0, 0.0, 0.0), lam=0.0,
                                t1=0.9, t2=math.pi - 0.9, poles=())
    ident = solve_schwarzian_ivp(zero_r, SolverConfig(rays=16))
    worst_ident = max(abs(f - z) for z, f, _, _ in ident.samples)
    assert worst_ident < 1e-12
    _report(8, "PASS", f"Wronskian drift {sol.wronskian_drift:.2e} < 1e-9; "
                       f"conjugation symmetry {worst_sym:.2e} < 1e-10; "
                       f"R=0 identity error {worst_ident:.2e} < 1e-12")


def test_criterion_09_conjecture_sweep_archived():
    grid = np.linspace(0.15, 2.95, 60)
    points = module_gamma_sweep(2.0, grid)
    ms = [p.M for p in points]
    peak = ms.index(max(ms))
    assert 0 < peak < len(ms) - 1
    assert ms[0] < ms[peak] and ms[-1] < ms[peak]
    # decreasing toward both ends of the grid
    assert ms[0] < ms[1] and ms[-1] < ms[-2]
    os.makedirs(ARTIFACTS, exist_ok=True)
    path = os.path.join(ARTIFACTS, "conjecture_sweep_beta2.csv")
    with open(path, "w", newline="\n") as fh:
        fh.write("gamma,M,is_argmax\n")
        for i, p in enumerate(points):
            fh.write(f"{p.gamma:.17g},{p.M:.17g},{1 if i == peak else 0}\n")
    _report(9, "PASS", f"60-point sweep at beta=2 has an interior maximum at "
                       f"gamma={points[peak].gamma:.3f}; CSV archived to "
                       f"{os.path.relpath(path)}")


def test_criterion_10_figure_reproduction():
    from gearmap.svgplot import map_figure, region_figure
    os.makedirs(ARTIFACTS, exist_ok=True)

    sample = gearlike_region(np.linspace(0.05, 1.52, 60))
    svg = region_figure(sample)
    assert svg.count("stroke-dasharray") >= 2   # Nehari band dashed
    assert 'fill="#cccccc"' in svg              # shaded interior
    with open(os.path.join(ARTIFACTS, "region.svg"), "w", newline="\n") as fh:
        fh.write(svg)

    cfg = SolverConfig(rays=48)
    shapes = []
    for name, t, lam_frac in (("wide", 0.6, 0.35), ("mid", 1.0, 0.5),
                              ("narrow", 1.35, 0.7)):
        lo, hi = lambda_bounds(t)
        lam = lo + lam_frac * (hi - lo)
        sol = solve_schwarzian_ivp(build_symmetric(SymmetricParams(t, lam)),
                                   cfg)
        desc = extract_pregear(sol)
        assert desc.classification == PREGEAR
        svg = map_figure(sol, desc)
        assert "<polygon" in svg                 # boundary trace
        assert svg.count("stroke-dasharray") >= 4  # four carriers dashed
        assert "<line" in svg                    # intersection point crosses
        path = os.path.join(ARTIFACTS, f"pregear_{name}.svg")
        with open(path, "w", newline="\n") as fh:
            fh.write(svg)
        shapes.append(name)
    _report(10, "PASS", f"region figure and {len(shapes)} pregear map "
                        f"figures archived under artifacts/")

"""Parameter analysis: the gear-ratio/gear-angle integrals and their
inversion, the conformal module of the symmetric prevertex quadrilateral, the
accessory parameter of a prevertex pair, and region/sweep tabulations.

The two boundary integrals

    log beta = int_{t1}^{t2} sqrt((cos th - cos t2)/(cos t1 - cos th)) dth,
    gamma    = int_0^{t1}    sqrt((cos th - cos t2)/(cos th - cos t1)) dth

carry inverse-square-root endpoint singularities; the default scheme is
tanh-sinh (double-exponential) quadrature, which absorbs them, with a
Gauss-Jacobi rule of matching exponents as an independent cross-check.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq
from scipy.special import roots_jacobi

from .geometry import symmetrize_prevertices
from .schwarzian import (PreverticesPair, SymmetricParams, build_general,
                         build_symmetric, lambda_bounds, nehari_bounds)
from .gear_geometry import GearParams

# ---------------------------------------------------------------------------
# tanh-sinh quadrature


def tanh_sinh_quadrature(f, a, b, tol=1e-13, max_level=12):
    """Integrate f over (a, b) by the double-exponential substitution
    x = mid + half*tanh((pi/2) sinh(u)).

    ``f(x, d_lo, d_hi)`` must be vectorized; d_lo = x - a and d_hi = b - x
    are passed separately because they stay accurate near the endpoints
    where x itself has rounded.  Integrands with endpoint singularities up
    to and including inverse square roots converge to near machine accuracy.
    """
    half = 0.5 * (b - a)
    mid = 0.5 * (a + b)

    def nodes(us):
        arg = 0.5 * math.pi * np.sinh(us)
        x = mid + half * np.tanh(arg)
        # 1 -+ tanh(arg) computed without cancellation
        e2 = np.exp(-2.0 * np.abs(arg))
        frac = 2.0 * e2 / (1.0 + e2)
        d_small = half * frac
        d_large = half * (2.0 - frac)
        d_lo = np.where(arg < 0, d_small, d_large)
        d_hi = np.where(arg < 0, d_large, d_small)
        w = 0.5 * math.pi * np.cosh(us) / np.cosh(arg) ** 2
        return x, d_lo, d_hi, w

    # truncate where the double-exponential weight has decayed to ~e^{-60}
    # relative to an inverse-square-root endpoint blowup; node distances then
    # stay far above the underflow floor, so no 0 * inf can appear
    u_max = math.asinh(120.0 / math.pi)

    h = 1.0
    us = np.arange(-int(u_max / h), int(u_max / h) + 1) * h
    x, d_lo, d_hi, w = nodes(us)
    total = np.sum(w * f(x, d_lo, d_hi))
    value = half * h * total
    for level in range(1, max_level + 1):
        h *= 0.5
        us = np.arange(-int(u_max / h) | 1, int(u_max / h) + 1, 2) * h
        x, d_lo, d_hi, w = nodes(us)
        total += np.sum(w * f(x, d_lo, d_hi))
        new_value = half * h * total
        if level >= 3 and abs(new_value - value) <= tol * max(1.0, abs(new_value)):
            return new_value
        value = new_value
    return value


# ---------------------------------------------------------------------------
# the two gear integrals

def _beta_integrand(t1, t2):
    def f(th, d_lo, d_hi):
        num = 2.0 * np.sin(0.5 * (th + t2)) * np.sin(0.5 * d_hi)
        den = 2.0 * np.sin(0.5 * (th + t1)) * np.sin(0.5 * d_lo)
        return np.sqrt(num / den)
    return f


def _gamma_integrand(t1, t2):
    def f(th, d_lo, d_hi):
        num = 2.0 * np.sin(0.5 * (th + t2)) * np.sin(0.5 * (d_hi + (t2 - t1)))
        den = 2.0 * np.sin(0.5 * (th + t1)) * np.sin(0.5 * d_hi)
        return np.sqrt(num / den)
    return f


def log_beta_integral(p: PreverticesPair, tol=1e-13) -> float:
    """log of the gear ratio by tanh-sinh quadrature."""
    return float(tanh_sinh_quadrature(_beta_integrand(p.t1, p.t2),
                                      p.t1, p.t2, tol=tol))


def gamma_integral(p: PreverticesPair, tol=1e-13) -> float:
    """Gear angle by tanh-sinh quadrature."""
    return float(tanh_sinh_quadrature(_gamma_integrand(p.t1, p.t2),
                                      0.0, p.t1, tol=tol))


def beta_gamma_integrals(p: PreverticesPair) -> GearParams:
    """(beta, gamma) of the gear with prevertex angles (t1, t2)."""
    return GearParams(beta=math.exp(log_beta_integral(p)),
                      gamma=gamma_integral(p))


def beta_gamma_gauss_jacobi(p: PreverticesPair, n: int = 120) -> GearParams:
    """Cross-check evaluation of the same integrals with Gauss-Jacobi rules
    whose weights carry the exact endpoint exponents (+1/2, -1/2)."""
    t1, t2 = p.t1, p.t2
    # log beta over (t1, t2): (th-t1)^{-1/2} at the left end, (t2-th)^{+1/2}
    # at the right end -> weight (1-x)^{1/2} (1+x)^{-1/2}
    x, w = roots_jacobi(n, 0.5, -0.5)
    half = 0.5 * (t2 - t1)
    th = t1 + half * (x + 1.0)
    phi = np.sqrt((np.cos(th) - math.cos(t2)) / (1.0 - x)
                  * (1.0 + x) / (math.cos(t1) - np.cos(th)))
    log_beta = half * float(np.sum(w * phi))
    # gamma over (0, t1): (t1-th)^{-1/2} at the right end -> weight (1-x)^{-1/2}
    x, w = roots_jacobi(n, -0.5, 0.0)
    half = 0.5 * t1
    th = half * (x + 1.0)
    phi = np.sqrt((np.cos(th) - math.cos(t2)) * (1.0 - x)
                  / (np.cos(th) - math.cos(t1)))
    gamma = half * float(np.sum(w * phi))
    return GearParams(beta=math.exp(log_beta), gamma=gamma)


# ---------------------------------------------------------------------------
# inversion (beta, gamma) -> (t1, t2)

_T1_FLOOR = 1e-9
_T2_CEIL_OFFSET = 1e-9


class InversionError(RuntimeError):
    """No parameter bracket reproduces the requested (beta, gamma)."""


def _solve_t1(t2, log_beta_target, tol=1e-14):
    """t1 in (0, t2) with log beta(t1, t2) = target; log beta decreases from
    +inf (t1 -> 0) to 0 (t1 -> t2), so the bracket always exists."""
    def h(t1):
        return log_beta_integral(PreverticesPair(t1, t2)) - log_beta_target

    lo = min(1e-4, 0.25 * t2)
    while h(lo) < 0.0:
        lo *= 0.25
        if lo < _T1_FLOOR:
            raise InversionError(f"log beta {log_beta_target} out of reach "
                                 f"at t2={t2}")
    hi = t2 * (1.0 - 1e-12)
    return brentq(h, lo, hi, xtol=tol)


def invert_beta_gamma(g: GearParams, t2_hint: float | None = None,
                      residual_tol: float = 1e-9) -> PreverticesPair:
    """Prevertex angles reproducing the requested gear parameters.

    Nested monotone brackets: the outer root solve adjusts t2 against gamma
    while the inner one adjusts t1 against log beta at each candidate t2.
    The composed map t2 -> gamma(t1(t2), t2) is strictly increasing.
    ``t2_hint`` narrows the outer bracket (useful for grid sweeps).
    """
    log_beta_target = math.log(g.beta)

    def outer(t2):
        t1 = _solve_t1(t2, log_beta_target)
        return gamma_integral(PreverticesPair(t1, t2)) - g.gamma

    lo = max(1e-6, 0.5 * g.gamma)
    hi = math.pi - _T2_CEIL_OFFSET
    bracketed = False
    if t2_hint is not None:
        lo_h = max(lo, t2_hint - 0.25)
        hi_h = min(hi, t2_hint + 0.25)
        if lo_h < hi_h and outer(lo_h) < 0.0 < outer(hi_h):
            lo, hi = lo_h, hi_h
            bracketed = True
    if not bracketed:
        flo = outer(lo)
        while flo > 0.0:
            lo *= 0.5
            if lo < 1e-8:
                raise InversionError(f"gamma {g.gamma} out of reach (small side)")
            flo = outer(lo)
        if outer(hi) < 0.0:
            raise InversionError(f"gamma {g.gamma} out of reach (pi side)")
    t2 = brentq(outer, lo, hi, xtol=1e-13)
    t1 = _solve_t1(t2, log_beta_target)
    p = PreverticesPair(t1, t2)

    check = beta_gamma_integrals(p)
    resid = max(abs(math.log(check.beta) - log_beta_target),
                abs(check.gamma - g.gamma))
    if resid > residual_tol:
        raise InversionError(f"inversion residual {resid:.3e} too large")
    return p


# ---------------------------------------------------------------------------
# conformal module

@dataclass(frozen=True)
class ModuleValue:
    """Conformal module of the disk quadrilateral with prevertices
    +-e^{+-i t}: extremal distance between the two tooth-edge arcs."""

    t: float
    M: float
    method: str


def _agm(a, b):
    # quadratic convergence stalls at the rounding floor after ~8 iterations;
    # a fixed iteration cap avoids spinning on the last ulp
    for _ in range(64):
        if abs(a - b) <= 4e-16 * a:
            break
        a, b = 0.5 * (a + b), math.sqrt(a * b)
    return 0.5 * (a + b)


def _module_parameters(t):
    k = math.tan(0.5 * t) ** 2
    # 1 - k = cos t / cos^2(t/2) and 1 + k = 1 / cos^2(t/2), both stable
    cos_half_sq = math.cos(0.5 * t) ** 2
    kp = math.sqrt(math.cos(t)) / cos_half_sq
    return k, kp


def conformal_module(t: float, method: str = "agm") -> ModuleValue:
    """M(t) = 2 K(k) / K(k') with modulus k = tan^2(t/2).

    The Moebius map z -> i(1-z)/(1+z) carries the disk to the upper half
    plane with the prevertices landing on +-tan(t/2), +-cot(t/2); rescaling
    by tan(t/2) puts them at +-1, +-1/k, and the elliptic rectangle map
    gives the module of the family of curves joining the two tooth-edge
    arcs.  This pairing is the one with M -> 0 as t -> 0.

    method="agm" evaluates K by the arithmetic-geometric mean;
    method="quadrature" integrates dz / sqrt((1-z^2)(1-k^2 z^2)) by
    tanh-sinh as an independent oracle.
    """
    if not (0.0 < t < 0.5 * math.pi):
        raise ValueError(f"need 0 < t < pi/2, got {t}")
    k, kp = _module_parameters(t)
    if method == "agm":
        big_k = 0.5 * math.pi / _agm(1.0, kp)
        big_kp = 0.5 * math.pi / _agm(1.0, k)
        return ModuleValue(t=t, M=2.0 * big_k / big_kp, method="agm")
    if method == "quadrature":
        return ModuleValue(t=t, M=2.0 * _elliptic_k_quadrature(k)
                           / _elliptic_k_quadrature(kp), method="quadrature")
    raise ValueError(f"unknown method {method!r}")


def _elliptic_k_quadrature(k):
    """K(k) = int_0^1 dx / sqrt((1 - x^2)(1 - k^2 x^2)) by tanh-sinh."""
    k2 = k * k

    def f(x, d_lo, d_hi):
        one_minus_x2 = d_hi * (1.0 + x)
        return 1.0 / np.sqrt(one_minus_x2 * (1.0 - k2 * x * x))

    return float(tanh_sinh_quadrature(f, 0.0, 1.0))


def prevertex_halfplane_images(t):
    """Images of the four prevertices under z -> i(1-z)/(1+z); the sanity
    anchor for the module derivation (they must equal +-tan(t/2),
    +-cot(t/2))."""
    out = []
    for z in (cmath.exp(1j * t), -cmath.exp(-1j * t),
              -cmath.exp(1j * t), cmath.exp(-1j * t)):
        out.append(1j * (1.0 - z) / (1.0 + z))
    return out


# ---------------------------------------------------------------------------
# accessory parameter of a prevertex pair

_LAMBDA_PROBES = (0.0, 0.13, 0.27 + 0.11j, 0.4j, -0.22 - 0.37j, -0.31)


def goodman_schwarzian(p: PreverticesPair, z: complex) -> complex:
    """Schwarzian derivative of the gear map with prevertex angles (t1, t2),
    in closed rational form.

    With f'/f = g = (1/z) sqrt(P2/P1) the Schwarzian collapses to
    S = (g'/g)' - (1/2)(g'/g)^2 - (1/2) g^2, which is rational because only
    g^2 = P2 / (z^2 P1) appears.  The z -> 0 limit is taken explicitly.
    """
    c1, c2 = math.cos(p.t1), math.cos(p.t2)
    if z == 0.0:
        return 1.5 * c1 * c1 + 3.0 * c1 * c2 - 4.5 * c2 * c2
    p1 = z * z - 2.0 * c1 * z + 1.0
    p2 = z * z - 2.0 * c2 * z + 1.0
    a = -1.0 / z + (z - c2) / p2 - (z - c1) / p1
    ap = (1.0 / (z * z) + (p2 - 2.0 * (z - c2) ** 2) / (p2 * p2)
          - (p1 - 2.0 * (z - c1) ** 2) / (p1 * p1))
    g2 = p2 / (z * z * p1)
    return ap - 0.5 * a * a - 0.5 * g2


def lambda_from_prevertices(p: PreverticesPair, spread_tol=1e-9) -> float:
    """Accessory parameter lambda with R_{t1,t2,lambda} = S of the gear map.

    lambda = (psi0(z) - S(z)/2) / psi1(z) is evaluated at several interior
    points; the evaluations must agree to ``spread_tol`` (a convention bug in
    any of the ingredients breaks the constancy and raises)."""
    base = build_general(p, 0.0)
    values = []
    for z in _LAMBDA_PROBES:
        s = goodman_schwarzian(p, z)
        lam = (base.psi0(z) - 0.5 * s) / base.psi1(z)
        values.append(lam)
    spread = max(abs(v - values[0]) for v in values)
    if spread > spread_tol:
        raise ArithmeticError(
            f"accessory parameter not constant across probes (spread "
            f"{spread:.3e}); convention mismatch between the Schwarzian "
            f"form and the gear equation")
    mean = sum(values) / len(values)
    return mean.real


def symmetric_parameters(p: PreverticesPair) -> tuple[float, float, float]:
    """(q, t, lambda) of the prevertex pair: the disk automorphism T_q
    symmetrizes the prevertices and preserves lambda."""
    q, t = symmetrize_prevertices(p.t1, p.t2)
    lam = lambda_from_prevertices(p)
    return q, t, lam


# ---------------------------------------------------------------------------
# region tabulation and module sweep

@dataclass(frozen=True)
class RegionSample:
    """Tabulated gearlike interval and Nehari band over a t grid, with
    optional classification verdicts at probe lambda values."""

    t: np.ndarray
    lam_minus: np.ndarray
    lam_plus: np.ndarray
    nehari_lo: np.ndarray
    nehari_hi: np.ndarray
    verdicts: list


def gearlike_region(tgrid, probe: bool = False, cfg=None,
                    probe_offset: float = 1e-3) -> RegionSample:
    """lambda interval and Nehari band on a grid; with ``probe`` set, solve
    and classify at the midpoint and just inside/outside each endpoint."""
    tgrid = np.asarray(list(tgrid), dtype=float)
    if not np.all((tgrid > 0.0) & (tgrid < 0.5 * math.pi)):
        raise ValueError("grid must lie inside (0, pi/2)")
    lam_m = np.empty_like(tgrid)
    lam_p = np.empty_like(tgrid)
    ne_lo = np.empty_like(tgrid)
    ne_hi = np.empty_like(tgrid)
    verdicts = []
    for i, t in enumerate(tgrid):
        lam_m[i], lam_p[i] = lambda_bounds(t)
        ne_lo[i], ne_hi[i] = nehari_bounds(t)
        if probe:
            verdicts.append(_probe_t(t, lam_m[i], lam_p[i], probe_offset, cfg))
    return RegionSample(t=tgrid, lam_minus=lam_m, lam_plus=lam_p,
                        nehari_lo=ne_lo, nehari_hi=ne_hi, verdicts=verdicts)


def _probe_t(t, lam_m, lam_p, off, cfg):
    from .mapping import solve_schwarzian_ivp, SolverConfig
    from .gear_geometry import extract_pregear

    cfg = cfg or SolverConfig(rays=32)
    row = {"t": t}
    probes = {"mid": 0.5 * (lam_m + lam_p),
              "minus_inside": lam_m + off, "minus_outside": lam_m - off,
              "plus_inside": lam_p - off, "plus_outside": lam_p + off}
    for name, lam in probes.items():
        sol = solve_schwarzian_ivp(build_symmetric(SymmetricParams(t, lam)), cfg)
        row[name] = extract_pregear(sol).classification
    return row


@dataclass(frozen=True)
class SweepPoint:
    gamma: float
    M: float
    t1: float
    t2: float
    q: float
    t: float
    lam: float


def module_gamma_sweep(beta: float, gamma_grid) -> list[SweepPoint]:
    """The curve gamma -> M(G_{beta,gamma}) at fixed beta, through the full
    inversion pipeline (invert the integrals, symmetrize, take the module)."""
    if not beta > 1.0:
        raise ValueError(f"beta must exceed 1, got {beta}")
    out = []
    hint = None
    for gamma in gamma_grid:
        p = invert_beta_gamma(GearParams(beta=beta, gamma=float(gamma)),
                              t2_hint=hint)
        hint = p.t2
        q, t, lam = symmetric_parameters(p)
        m = conformal_module(t).M
        out.append(SweepPoint(gamma=float(gamma), M=m, t1=p.t1, t2=p.t2,
                              q=q, t=t, lam=lam))
    return out

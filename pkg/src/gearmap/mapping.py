"""Conformal map construction.

Three routes produce maps of the unit disk related to gear domains:

* ``solve_schwarzian_ivp``: solves S_f = R as the linear system
  u'' + (1/2) R u = 0 along radial rays and forms f = u1/u0, giving the
  classically normalized solution f(0) = 0, f'(0) = 1, f''(0) = 0.
* ``solve_goodman``: integrates the first-order gear equation
  f' = (1/z) sqrt((z^2 - 2 cos(t2) z + 1)/(z^2 - 2 cos(t1) z + 1)) f
  whose solution maps the disk directly onto a gear centered at 0.
* ``sc_integral``: evaluates the explicit integrals for the two degenerate
  boundary maps by adaptive quadrature along straight paths from 0.

All integration is done with an embedded Dormand-Prince 5(4) pair on the
complexified system (complex arithmetic is elementwise identical to the
coupled real form).  Rays are independent and side-effect free.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .schwarzian import RationalSchwarzian, PreverticesPair

# Radial rays cluster geometrically toward each prevertex angle: offsets
# base * ratio^j on both sides.  Prevertices are the only boundary
# singularities, so refinement elsewhere buys nothing.
RAY_CLUSTER_RATIO = 0.7
RAY_CLUSTER_PER_SIDE = 6  # 12 extra rays per prevertex in total

# The Goodman equation has a removable 1/z at the origin; integration starts
# from a two-term series at this radius.
GOODMAN_SERIES_START = 1e-3

# Arc labels for the boundary trace partition.
ARC_B = 0
ARC_TOOTH_UPPER = 1
ARC_A = 2
ARC_TOOTH_LOWER = 3

_ARC_NAMES = {ARC_B: "Barc", ARC_TOOTH_UPPER: "toothUpper",
              ARC_A: "Aarc", ARC_TOOTH_LOWER: "toothLower"}


class StepSizeUnderflowError(RuntimeError):
    """Adaptive step size collapsed; message names the offending ray."""


class BranchTrackingError(RuntimeError):
    """Integration path came too close to a square-root branch point."""


class PathTooCloseToPoleError(ValueError):
    """Quadrature path passes too close to an integrand pole."""


@dataclass(frozen=True)
class SolverConfig:
    """Tolerances and sampling layout for the ODE solvers.

    ``boundary_offset`` is the distance eps kept from the unit circle; the
    boundary trace is recorded at radii 1-eps, 1-2*eps and 1-4*eps so that
    geometric measurements can extrapolate to the boundary.
    """

    abs_tol: float = 1e-10
    rel_tol: float = 1e-10
    boundary_offset: float = 1e-4
    rays: int = 64
    samples_per_ray: int = 8

    def __post_init__(self):
        if not (0.0 < self.abs_tol <= 1e-3 and 0.0 < self.rel_tol <= 1e-3):
            raise ValueError("tolerances must lie in (0, 1e-3]")
        if not (0.0 < self.boundary_offset <= 0.01):
            raise ValueError("boundary_offset must lie in (0, 0.01]")
        if self.rays < 16:
            raise ValueError("need at least 16 rays")
        if self.samples_per_ray < 1:
            raise ValueError("need at least one sample per ray")


@dataclass(frozen=True)
class BoundaryTrace:
    """Map values near |z| = 1 on a theta grid, partitioned by prevertex arcs.

    ``w_radii[k]`` holds f((1 - 2^k eps) e^{i theta}) for k = 0, 1, 2;
    ``w_boundary`` is the quadratic-in-eps extrapolation of those values to
    the boundary, valid away from the vertices.
    """

    eps: float
    thetas: np.ndarray
    arcs: np.ndarray
    w_radii: tuple
    w_boundary: np.ndarray

    def arc_points(self, arc: int, trim: float = 0.0):
        """(thetas, extrapolated values) of one arc, optionally trimming a
        fraction of the angular span at each end (vertex neighborhoods)."""
        mask = self.arcs == arc
        th = self.thetas[mask]
        w = self.w_boundary[mask]
        if trim > 0.0 and len(th) > 4:
            lo, hi = _arc_span(arc, *self._prevertex_angles)
            width = hi - lo
            t_adj = np.where(th < lo - 1e-12, th + 2.0 * math.pi, th)
            keep = ((t_adj >= lo + trim * width) & (t_adj <= hi - trim * width))
            th, w = th[keep], w[keep]
        return th, w

    @property
    def _prevertex_angles(self):
        return self._t1, self._t2

    # set post-construction via object.__setattr__ in the solvers
    _t1: float = 0.0
    _t2: float = 0.0


def _arc_span(arc, t1, t2):
    if arc == ARC_B:
        return -t1, t1
    if arc == ARC_TOOTH_UPPER:
        return t1, t2
    if arc == ARC_TOOTH_LOWER:
        return -t2, -t1
    return t2, 2.0 * math.pi - t2


@dataclass(frozen=True)
class MapSolution:
    """A sampled conformal map together with solver diagnostics.

    ``samples`` is a list of (z, f, f', f'') tuples on the integration rays;
    ``vertices`` maps each prevertex angle to the boundary-extrapolated image
    vertex; ``wronskian_drift`` is the worst |u0 u1' - u1 u0' - 1| seen at an
    accepted step (0 for the first-order solver, which has no Wronskian).
    """

    kind: str
    params: dict
    prevertex_angles: tuple
    samples: list
    boundary: BoundaryTrace
    vertices: dict
    wronskian_drift: float
    pole_evidence: list
    diagnostics: dict

    @property
    def not_univalent_evidence(self) -> bool:
        return len(self.pole_evidence) > 0


# ---------------------------------------------------------------------------
# Dormand-Prince 5(4) on tuples of complex numbers

_DP_C = (0.0, 0.2, 0.3, 0.8, 8.0 / 9.0, 1.0, 1.0)
_DP_A = (
    (),
    (0.2,),
    (3.0 / 40.0, 9.0 / 40.0),
    (44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0),
    (19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0),
    (9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0,
     -5103.0 / 18656.0),
    (35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0,
     11.0 / 84.0),
)
_DP_E = (71.0 / 57600.0, 0.0, -71.0 / 16695.0, 71.0 / 1920.0,
         -17253.0 / 339200.0, 22.0 / 525.0, -1.0 / 40.0)


def _dopri5(rhs, s0, y0, targets, atol, rtol, on_accept=None,
            max_steps=500_000, label=""):
    """Integrate y' = rhs(s, y) from s0 through the ascending ``targets``.

    Returns the list of states at the targets.  ``on_accept(s, y)`` runs at
    every accepted step.  Steps are clamped so each target is hit exactly.
    """
    y = tuple(y0)
    s = s0
    n = len(y)
    out = []
    k1 = rhs(s, y)
    span = targets[-1] - s0
    h = 0.01 * span
    steps = 0
    for target in targets:
        while s < target - 1e-15:
            if steps > max_steps:
                raise StepSizeUnderflowError(
                    f"step budget exhausted{label and ' on ' + label}")
            clamped = False
            if s + h >= target:
                h_try = target - s
                clamped = True
            else:
                h_try = h
            ks = [k1]
            for stage in range(1, 7):
                acc = tuple(
                    sum(_DP_A[stage][j] * ks[j][i] for j in range(stage))
                    for i in range(n))
                ys = tuple(y[i] + h_try * acc[i] for i in range(n))
                ks.append(rhs(s + _DP_C[stage] * h_try, ys))
            ynew = tuple(y[i] + h_try * sum(_DP_A[6][j] * ks[j][i]
                                            for j in range(6)) for i in range(n))
            err = 0.0
            for i in range(n):
                e = h_try * sum(_DP_E[j] * ks[j][i] for j in range(7))
                sc = atol + rtol * max(abs(y[i]), abs(ynew[i]))
                err += (abs(e) / sc) ** 2
            err = math.sqrt(err / n)
            steps += 1
            if err <= 1.0:
                s = target if clamped else s + h_try
                y = ynew
                k1 = ks[6]
                if on_accept is not None:
                    on_accept(s, y)
                grow = 0.9 * err ** -0.2 if err > 0.0 else 5.0
                h = h_try * min(5.0, max(0.2, grow))
            else:
                h = h_try * max(0.2, 0.9 * err ** -0.2)
                if h < 1e-14 * max(1.0, abs(span)):
                    raise StepSizeUnderflowError(
                        f"step size underflow{label and ' on ' + label}")
        out.append(y)
    return out


# ---------------------------------------------------------------------------
# ray layout and boundary assembly

def _ray_angles(t1, t2, cfg):
    """Full-circle theta grid with geometric clustering near the four
    prevertex angles.  Returns (trace angles, vertex angles)."""
    prevertices = (t1, t2, -t1, -t2)
    base = 2.0 * math.pi / cfg.rays
    thetas = set()
    for k in range(cfg.rays):
        thetas.add(_wrap_angle(-math.pi + base * k))
    for pv in prevertices:
        for j in range(1, RAY_CLUSTER_PER_SIDE + 1):
            off = base * RAY_CLUSTER_RATIO ** j
            thetas.add(_wrap_angle(pv - off))
            thetas.add(_wrap_angle(pv + off))
    # drop accidental near-coincidence with a prevertex angle
    guard = 0.25 * base * RAY_CLUSTER_RATIO ** RAY_CLUSTER_PER_SIDE
    cleaned = [th for th in thetas
               if min(abs(_wrap_angle(th - pv)) for pv in prevertices) > guard]
    return sorted(cleaned), list(prevertices)


def _wrap_angle(theta):
    out = math.fmod(theta + math.pi, 2.0 * math.pi)
    if out <= 0.0:
        out += 2.0 * math.pi
    return out - math.pi


def _arc_label(theta, t1, t2):
    a = abs(theta)
    if a < t1:
        return ARC_B
    if a > t2:
        return ARC_A
    return ARC_TOOTH_UPPER if theta > 0.0 else ARC_TOOTH_LOWER


def _radii(eps):
    return (1.0 - 4.0 * eps, 1.0 - 2.0 * eps, 1.0 - eps)


def _extrapolate_boundary(w4, w2, w1):
    """Quadratic extrapolation in the offset eps to the boundary, from values
    at offsets 4*eps, 2*eps, eps (analytic continuation across open arcs)."""
    return (8.0 * w1 - 6.0 * w2 + w4) / 3.0


_SQRT2 = math.sqrt(2.0)
_VERTEX_W1 = 4.0 + 2.0 * _SQRT2
_VERTEX_W2 = -(4.0 + 3.0 * _SQRT2)
_VERTEX_W4 = 1.0 + _SQRT2


def _extrapolate_vertex(w4, w2, w1):
    """Extrapolation in sqrt(eps) for the vertex rays, where the map carries a
    half-integer power singularity at the boundary point."""
    return _VERTEX_W1 * w1 + _VERTEX_W2 * w2 + _VERTEX_W4 * w4


def _sample_s_values(cfg):
    hi = 1.0 - 4.0 * cfg.boundary_offset
    n = cfg.samples_per_ray
    return [hi * (j + 1) / (n + 1) for j in range(n)]


# ---------------------------------------------------------------------------
# Schwarzian IVP solver

def _fast_rational(r: RationalSchwarzian):
    n4, n3, n2, n1, n0 = r.psi0_num[4], r.psi0_num[3], r.psi0_num[2], \
        r.psi0_num[1], r.psi0_num[0]
    d4, d3, d2, d1, d0 = r.den[4], r.den[3], r.den[2], r.den[1], r.den[0]
    m2lam = 2.0 * r.lam * r.psi1_num

    def R(z):
        D = (((d4 * z + d3) * z + d2) * z + d1) * z + d0
        N = (((n4 * z + n3) * z + n2) * z + n1) * z + n0
        return 2.0 * N / (D * D) - m2lam / D

    return R


def solve_schwarzian_ivp(r: RationalSchwarzian, cfg: SolverConfig | None = None
                         ) -> MapSolution:
    """Solve S_f = R along radial rays and sample f = u1/u0.

    The two basis solutions of u'' + (1/2) R u = 0 start from u0(0) = 1,
    u0'(0) = 0 and u1(0) = 0, u1'(0) = 1, so f(0) = 0, f'(0) = 1 and
    f''(0) = 0.  The Wronskian u0 u1' - u1 u0' is conserved exactly by the
    equation; its worst drift over all accepted steps is reported.  A zero of
    u0 (a pole of f inside the disk) is recorded as evidence against
    univalence rather than raised.
    """
    cfg = cfg or SolverConfig()
    R = _fast_rational(r)
    t1, t2 = r.t1, r.t2
    eps = cfg.boundary_offset
    radii = _radii(eps)
    s_samples = _sample_s_values(cfg)
    targets = sorted(set(s_samples) | set(radii))
    thetas, vertex_angles = _ray_angles(t1, t2, cfg)

    drift_worst = 0.0
    pole_evidence = []
    samples = []
    trace_rows = {}

    def integrate(theta):
        u = cmath.exp(1j * theta)
        on_axis = abs(u.imag) < 1e-15

        def rhs(s, y):
            z = s * u
            u0, v0, u1, v1 = y
            w = -0.5 * R(z)
            return (u * v0, u * w * u0, u * v1, u * w * u1)

        monitor = {"drift": 0.0, "pole": None, "prev_u0": 1.0 + 0.0j}

        def on_accept(s, y):
            u0, v0, u1, v1 = y
            d = abs(u0 * v1 - u1 * v0 - 1.0)
            if d > monitor["drift"]:
                monitor["drift"] = d
            if monitor["pole"] is None:
                # a zero of u0 is a pole of f = u1/u0: on the real-axis rays
                # u0 stays real and a sign change pins the crossing; off the
                # axis a deep dip of |u0| is the (necessarily weaker) signal
                if on_axis and u0.real * monitor["prev_u0"].real < 0.0:
                    monitor["pole"] = s
                elif abs(u0) < 1e-3 * (1.0 + abs(u1)):
                    monitor["pole"] = s
            monitor["prev_u0"] = u0

        states = _dopri5(rhs, 0.0, (1.0, 0.0, 0.0, 1.0), targets,
                         cfg.abs_tol, cfg.rel_tol, on_accept,
                         label=f"ray theta={theta:.6f}")
        return states, monitor

    for theta in thetas:
        states, monitor = integrate(theta)
        drift_worst = max(drift_worst, monitor["drift"])
        if monitor["pole"] is not None:
            pole_evidence.append({"theta": theta, "s": monitor["pole"]})
        u = cmath.exp(1j * theta)
        row = {}
        for s_val, y in zip(targets, states):
            u0, v0, u1, v1 = y
            w_val = u1 / u0
            if s_val in radii:
                row[s_val] = w_val
            if s_val in s_samples:
                wr = u0 * v1 - u1 * v0
                fp = wr / (u0 * u0)
                fpp = -2.0 * v0 * wr / (u0 * u0 * u0)
                samples.append((s_val * u, w_val, fp, fpp))
            if abs(w_val) > 1e8:
                pole_evidence.append({"theta": theta, "s": s_val,
                                      "reason": "magnitude blowup"})
        trace_rows[theta] = row

    vertices = {}
    for theta in vertex_angles:
        states, monitor = integrate(theta)
        drift_worst = max(drift_worst, monitor["drift"])
        u = cmath.exp(1j * theta)
        vals = {s_val: y[2] / y[0] for s_val, y in zip(targets, states)
                if s_val in radii}
        vertices[theta] = _extrapolate_vertex(
            vals[radii[0]], vals[radii[1]], vals[radii[2]])

    boundary = _assemble_trace(trace_rows, radii, eps, t1, t2)
    return MapSolution(
        kind="schwarzian", params={"t1": t1, "t2": t2, "lambda": r.lam},
        prevertex_angles=(t1, t2), samples=samples, boundary=boundary,
        vertices=vertices, wronskian_drift=drift_worst,
        pole_evidence=pole_evidence,
        diagnostics={"rays": len(thetas), "targets": len(targets)})


def _assemble_trace(trace_rows, radii, eps, t1, t2):
    thetas = np.array(sorted(trace_rows))
    w4 = np.array([trace_rows[t][radii[0]] for t in thetas])
    w2 = np.array([trace_rows[t][radii[1]] for t in thetas])
    w1 = np.array([trace_rows[t][radii[2]] for t in thetas])
    arcs = np.array([_arc_label(t, t1, t2) for t in thetas])
    trace = BoundaryTrace(
        eps=eps, thetas=thetas, arcs=arcs, w_radii=(w4, w2, w1),
        w_boundary=_extrapolate_boundary(w4, w2, w1))
    object.__setattr__(trace, "_t1", t1)
    object.__setattr__(trace, "_t2", t2)
    return trace


def ray_values(r: RationalSchwarzian, cfg: SolverConfig, theta: float,
               s_list) -> list:
    """(z, f, f', f'') at prescribed radii along one ray; used for
    independent finite-difference checks of the produced map."""
    R = _fast_rational(r)
    u = cmath.exp(1j * theta)

    def rhs(s, y):
        z = s * u
        u0, v0, u1, v1 = y
        w = -0.5 * R(z)
        return (u * v0, u * w * u0, u * v1, u * w * u1)

    targets = sorted(s_list)
    states = _dopri5(rhs, 0.0, (1.0, 0.0, 0.0, 1.0), targets,
                     cfg.abs_tol, cfg.rel_tol)
    out = []
    for s_val, (u0, v0, u1, v1) in zip(targets, states):
        wr = u0 * v1 - u1 * v0
        out.append((s_val * u, u1 / u0, wr / (u0 * u0),
                    -2.0 * v0 * wr / (u0 ** 3)))
    return out


# ---------------------------------------------------------------------------
# Goodman first-order solver

def _branch_sqrt_ratio(num_c, den_c):
    """sqrt((z^2 - 2 num_c z + 1)/(z^2 - 2 den_c z + 1)) with the branch that
    is continuous on the whole open disk and equals 1 at z = 0.

    Both quadratics omit the closed negative real axis on the open disk, so
    the principal logarithms are continuous there and the exponential below
    is the analytic branch.
    """
    def w(z):
        pn = z * z - 2.0 * num_c * z + 1.0
        pd = z * z - 2.0 * den_c * z + 1.0
        return cmath.exp(0.5 * (cmath.log(pn) - cmath.log(pd)))

    return w


def solve_goodman(p: PreverticesPair, cfg: SolverConfig | None = None
                  ) -> MapSolution:
    """Integrate the gear equation f' = (1/z) w(z) f with
    w = sqrt((z^2 - 2 cos t2 z + 1)/(z^2 - 2 cos t1 z + 1)), f(0) = 0,
    f'(0) = 1, whose image is the gear with center 0 and tooth tip vertices
    at f(e^{+-i t1}).

    The square root takes the branch continuous on the disk with w -> 1 as
    z -> 0.  Integration starts from the two-term series
    f = z + (cos t1 - cos t2) z^2 at |z| = 1e-3; rays keep clear of the four
    branch points on the circle by construction and an explicit distance
    check raises ``BranchTrackingError`` if a path would violate that.
    """
    cfg = cfg or SolverConfig()
    t1, t2 = p.t1, p.t2
    c1, c2 = math.cos(t1), math.cos(t2)
    w_fun = _branch_sqrt_ratio(c2, c1)
    b2 = c1 - c2
    # third series coefficient from matching zf' = w f order by order:
    # 2 b3 = b2 w1 + w2 with w = 1 + (c1-c2) z + ((c1^2-c2^2)
    # + (c1-c2)^2/2) z^2 + ...; the two-term start alone leaves a per-ray
    # relative error ~ b3 |z0|^2 e^{2 i theta} that warps the image
    w2 = (c1 * c1 - c2 * c2) + 0.5 * b2 * b2
    b3 = 0.5 * (b2 * b2 + w2)
    eps = cfg.boundary_offset
    radii = _radii(eps)
    s_samples = [s for s in _sample_s_values(cfg) if s > GOODMAN_SERIES_START]
    targets = sorted(set(s_samples) | set(radii))
    thetas, vertex_angles = _ray_angles(t1, t2, cfg)

    branch_points = [cmath.exp(1j * a) for a in (t1, -t1, t2, -t2)]

    def check_ray(theta):
        # the vertex rays end at radial distance exactly eps from their
        # branch point, which is allowed; only genuine encroachment fails
        end = (1.0 - eps) * cmath.exp(1j * theta)
        for bp in branch_points:
            if _segment_distance(0.0, end, bp) < 0.9 * eps:
                raise BranchTrackingError(
                    f"ray theta={theta:.6f} passes within {eps} of branch "
                    f"point {bp:.6f}")

    def fppfp(z, f, w):
        # f''/f' = g'/g + g with g = w/z
        p1v = z * z - 2.0 * c1 * z + 1.0
        p2v = z * z - 2.0 * c2 * z + 1.0
        a = -1.0 / z + (z - c2) / p2v - (z - c1) / p1v
        return a + w / z

    samples = []
    trace_rows = {}

    def integrate(theta):
        check_ray(theta)
        u = cmath.exp(1j * theta)
        z0 = GOODMAN_SERIES_START * u
        f0 = z0 + b2 * z0 * z0 + b3 * z0 ** 3

        def rhs(s, y):
            z = s * u
            return (u * w_fun(z) / z * y[0],)

        states = _dopri5(rhs, GOODMAN_SERIES_START, (f0,), targets,
                         cfg.abs_tol, cfg.rel_tol,
                         label=f"ray theta={theta:.6f}")
        return states

    for theta in thetas:
        states = integrate(theta)
        u = cmath.exp(1j * theta)
        row = {}
        for s_val, (f_val,) in zip(targets, states):
            z = s_val * u
            if s_val in radii:
                row[s_val] = f_val
            if s_val in s_samples:
                w = w_fun(z)
                fp = w / z * f_val
                samples.append((z, f_val, fp, fp * fppfp(z, f_val, w)))
        trace_rows[theta] = row

    vertices = {}
    for theta in vertex_angles:
        states = integrate(theta)
        vals = {s_val: f for s_val, (f,) in zip(targets, states)
                if s_val in radii}
        vertices[theta] = _extrapolate_vertex(
            vals[radii[0]], vals[radii[1]], vals[radii[2]])

    boundary = _assemble_trace(trace_rows, radii, eps, t1, t2)
    return MapSolution(
        kind="goodman", params={"t1": t1, "t2": t2},
        prevertex_angles=(t1, t2), samples=samples, boundary=boundary,
        vertices=vertices, wronskian_drift=0.0, pole_evidence=[],
        diagnostics={"rays": len(thetas), "series_start": GOODMAN_SERIES_START,
                     "b2": b2})


def _segment_distance(a, b, p):
    """Distance from point p to segment [a, b] in the plane."""
    ab = b - a
    denom = abs(ab) ** 2
    if denom == 0.0:
        return abs(p - a)
    t = ((p - a) * ab.conjugate()).real / denom
    t = min(1.0, max(0.0, t))
    return abs(p - (a + t * ab))


# ---------------------------------------------------------------------------
# degenerate boundary integrals

_GL_CACHE = {}


def _gauss_legendre(n):
    if n not in _GL_CACHE:
        x, w = np.polynomial.legendre.leggauss(n)
        _GL_CACHE[n] = (x, w)
    return _GL_CACHE[n]


def sc_integral(t: float, side: str, z: complex,
                cfg: SolverConfig | None = None) -> complex:
    """Degenerate boundary map f(z) = int_0^z I(w) dw with

        I(w) = (w + s)^{-2} sqrt((w^2 + 2 cos t w + 1)/(w^2 - 2 cos t w + 1)),

    s = +1 for side "minus" and s = -1 for side "plus"; the square root is
    the branch continuous from I(0) = 1.  Integration runs along the straight
    segment [0, z], which must stay clear of the pole at -s and of the four
    prevertices.
    """
    cfg = cfg or SolverConfig()
    if side not in ("minus", "plus"):
        raise ValueError(f"side must be 'minus' or 'plus', got {side!r}")
    if not (0.0 < t < 0.5 * math.pi):
        raise ValueError(f"need 0 < t < pi/2, got {t}")
    if abs(z) >= 1.0:
        raise ValueError(f"need |z| < 1, got |z| = {abs(z)}")
    if z == 0.0:
        return 0.0 + 0.0j
    c = math.cos(t)
    pole = -1.0 if side == "minus" else 1.0
    gap = _segment_distance(0.0, z, pole)
    if gap < cfg.boundary_offset:
        raise PathTooCloseToPoleError(
            f"path to {z} passes within {gap:.3e} of the pole at {pole}")
    for bp in (cmath.exp(1j * t), cmath.exp(-1j * t),
               -cmath.exp(1j * t), -cmath.exp(-1j * t)):
        d = _segment_distance(0.0, z, bp)
        if d < cfg.boundary_offset:
            raise PathTooCloseToPoleError(
                f"path to {z} passes within {d:.3e} of the prevertex {bp:.6f}")

    w_fun = _branch_sqrt_ratio(-c, c)

    def integrand(tau):
        w = tau * z
        return w_fun(w) / (w - pole) ** 2

    tol = max(cfg.abs_tol, 1e-14)
    prev = None
    for n in (24, 48, 96, 192, 384):
        x, wt = _gauss_legendre(n)
        tau = 0.5 * (x + 1.0)
        acc = 0.0 + 0.0j
        for xi, wi in zip(tau, wt):
            acc += wi * integrand(xi)
        val = 0.5 * z * acc
        if prev is not None and abs(val - prev) <= tol * max(1.0, abs(val)):
            return val
        prev = val
    return val

"""Classify computed map images and normalize pregears to standard gears.

The boundary trace of a map solution is fitted arc by arc with circle
carriers.  A domain whose extended tooth-edge circles meet in two points is a
pregear; straight tooth edges (equivalently concentric A- and B-circles) make
it a gear; tangent tooth circles mark the two degenerate boundary types, told
apart by whether the A- and B-circles touch internally or externally.  A
pregear is carried onto a standard gear by the Moebius map sending the
interior intersection point of the tooth circles to 0 and the exterior one to
infinity, followed by a real rescaling that puts the A-arc at radius 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .geometry import (GeneralizedCircle, IntersectionResult, MobiusTransform,
                       INFINITY, is_infinite, circle_through_three_points,
                       circle_intersection, winding_number)
from .mapping import (ARC_A, ARC_B, ARC_TOOTH_LOWER, ARC_TOOTH_UPPER,
                      BoundaryTrace, MapSolution)

GEAR = "Gear"
PREGEAR = "Pregear"
DEGENERATE_MINUS = "DegenerateMinus"
DEGENERATE_PLUS = "DegeneratePlus"
INVALID = "Invalid"

# Fit residual (relative to the traced diameter) above this marks the
# description Invalid.
FIT_RESIDUAL_TOL = 1e-6

# Scaled curvature (curvature times chord length) below this counts as a
# straight tooth edge.
STRAIGHT_EDGE_TOL = 1e-6

# Tooth-circle gap (distance from the nearer tangency configuration,
# relative to the separation of the circle centers) below this classifies as
# degenerate; calibrated against the fit noise floor of the solvers.
TANGENCY_GAP_TOL = 1e-5

# |center(A) - center(B)| below this times radius(A) counts as concentric.
CONCENTRIC_TOL = 1e-7

ARC_TAGS = {ARC_B: "Barc", ARC_TOOTH_UPPER: "toothUpper",
            ARC_A: "Aarc", ARC_TOOTH_LOWER: "toothLower"}


@dataclass(frozen=True)
class GearParams:
    """Gear ratio beta > 1 and gear angle gamma in (0, pi)."""

    beta: float
    gamma: float

    def __post_init__(self):
        if not self.beta > 1.0:
            raise ValueError(f"beta must exceed 1, got {self.beta}")
        if not (0.0 < self.gamma < math.pi):
            raise ValueError(f"gamma must lie in (0, pi), got {self.gamma}")


@dataclass(frozen=True)
class PregearDescription:
    """Fitted edge carriers, vertices, interior angles and classification.

    ``vertices`` and ``angles`` are keyed by prevertex angle.  ``b_minus`` and
    ``b_plus`` are the (real) tooth-circle intersection points when they
    exist, sorted increasingly.
    """

    carriers: dict
    vertices: dict
    angles: dict
    classification: str
    b_minus: float | None
    b_plus: float | None
    diagnostics: dict = field(default_factory=dict)


class NormalizationError(ValueError):
    """The description cannot be carried onto a gear."""


def _fit_arc(thetas, points, curvature_tol):
    """Carrier through three spread-out arc samples plus the worst distance
    of all samples from it."""
    n = len(points)
    if n < 5:
        raise ValueError("arc trace too short")
    i1, i2, i3 = n // 4, n // 2, (3 * n) // 4
    if i1 == i2 or i2 == i3:
        i1, i2, i3 = 0, n // 2, n - 1
    carrier = circle_through_three_points(points[i1], points[i2], points[i3],
                                          curvature_tol=curvature_tol)
    residual = max(carrier.distance(w) for w in points)
    return carrier, residual


def _scaled_curvature(carrier, points):
    if carrier.is_line:
        return 0.0
    chord = abs(points[-1] - points[0])
    return carrier.curvature() * chord


def _as_line(points):
    return GeneralizedCircle.line(points[0], points[-1] - points[0])


def _interior_angle(carrier_in, carrier_out, vertex, chord_in, chord_out):
    """Interior angle at a vertex between the incoming and outgoing edges of
    the counterclockwise boundary.

    Carrier tangents fix the directions up to sign; coarse chord directions
    from the nearest trace points resolve the sign.
    """
    tan_in = carrier_in.tangent_direction(vertex)
    if (tan_in.real * chord_in.real + tan_in.imag * chord_in.imag) < 0.0:
        tan_in = -tan_in
    tan_out = carrier_out.tangent_direction(vertex)
    if (tan_out.real * chord_out.real + tan_out.imag * chord_out.imag) < 0.0:
        tan_out = -tan_out
    turn = math.atan2((tan_out / tan_in).imag, (tan_out / tan_in).real)
    angle = math.pi - turn
    if angle <= 0.0:
        angle += 2.0 * math.pi
    return angle


def _tooth_circle_gap(upper, lower):
    """Scale-free gap between the two tooth carriers: distance from the
    nearer tangency configuration, relative to the separation of the circle
    centers (the natural normalization, invariant under rescaling the
    domain)."""
    d = abs(upper.center - lower.center)
    r1, r2 = upper.radius, lower.radius
    external = abs(d - (r1 + r2))
    internal = abs(d - abs(r1 - r2))
    return min(external, internal) / d


def extract_pregear(m: MapSolution, *,
                    fit_residual_tol: float = FIT_RESIDUAL_TOL,
                    straight_edge_tol: float = STRAIGHT_EDGE_TOL,
                    tangency_gap_tol: float = TANGENCY_GAP_TOL,
                    concentric_tol: float = CONCENTRIC_TOL
                    ) -> PregearDescription:
    """Fit the four boundary arcs and classify the image domain."""
    t1, t2 = m.prevertex_angles
    diag = {}
    carriers = {}
    arc_points = {}

    scale = max(abs(w) for w in m.boundary.w_boundary)
    diag["scale"] = scale

    try:
        for arc, tag in ARC_TAGS.items():
            th, pts = m.boundary.arc_points(arc, trim=0.12)
            order = np.argsort(th if arc != ARC_A else
                               np.where(th < 0.0, th + 2.0 * math.pi, th))
            pts = list(np.asarray(pts)[order])
            carrier, residual = _fit_arc(th, pts, curvature_tol=1e-8)
            carriers[tag] = carrier
            arc_points[tag] = pts
            diag[f"fit_residual_{tag}"] = residual / scale
    except ValueError as exc:
        return PregearDescription({}, dict(m.vertices), {}, INVALID, None, None,
                                  {**diag, "reason": f"arc fit failed: {exc}"})

    worst_fit = max(diag[f"fit_residual_{tag}"] for tag in carriers)
    diag["worst_fit_residual"] = worst_fit

    near_points = {}
    for arc, tag in ARC_TAGS.items():
        _, pts_near = m.boundary.arc_points(arc, trim=0.0)
        near_points[tag] = list(pts_near)

    vertices = dict(m.vertices)
    angles = _recover_angles(carriers, vertices, near_points, t1, t2)
    diag["symmetry_residual"] = _symmetry_residual(carriers, arc_points, scale)

    def invalid(reason):
        return PregearDescription(carriers, vertices, angles, INVALID,
                                  None, None, {**diag, "reason": reason})

    if m.not_univalent_evidence:
        return invalid(f"not univalent: {m.pole_evidence[:3]}")
    if worst_fit > fit_residual_tol:
        return invalid(f"fit residual {worst_fit:.3e} above tolerance")

    upper, lower = carriers["toothUpper"], carriers["toothLower"]
    up_im = min(w.imag for w in arc_points["toothUpper"])
    lo_im = max(w.imag for w in arc_points["toothLower"])
    if not (up_im > 0.0 > lo_im):
        return invalid("tooth edges do not separate into half-planes")

    ku = _scaled_curvature(upper, arc_points["toothUpper"])
    kl = _scaled_curvature(lower, arc_points["toothLower"])
    diag["tooth_scaled_curvature"] = (ku, kl)
    straight_u = upper.is_line or abs(ku) < straight_edge_tol
    straight_l = lower.is_line or abs(kl) < straight_edge_tol

    a_c, b_c = carriers["Aarc"], carriers["Barc"]
    if a_c.is_line or b_c.is_line:
        return invalid("A- or B-arc fitted as a straight line")

    if straight_u and straight_l:
        if not upper.is_line:
            upper = _as_line(arc_points["toothUpper"])
            carriers["toothUpper"] = upper
        if not lower.is_line:
            lower = _as_line(arc_points["toothLower"])
            carriers["toothLower"] = lower
        off = abs(a_c.center - b_c.center)
        diag["ab_center_offset"] = off / a_c.radius
        if off > concentric_tol * a_c.radius * 10.0:
            return invalid("straight tooth edges but A/B circles not concentric")
        inter = circle_intersection(upper, lower, tol=1e-9)
        b_int = None
        if inter.kind == "two_points":
            finite = [p for p in inter.points if not is_infinite(p)]
            if finite:
                b_int = finite[0].real
        return PregearDescription(carriers, vertices, angles, GEAR,
                                  b_int, None, diag)
    if straight_u != straight_l:
        return invalid("tooth edges disagree on straightness")

    gap = _tooth_circle_gap(upper, lower)
    diag["tooth_circle_gap"] = gap
    if gap < tangency_gap_tol:
        kind = _tangency_kind(a_c, b_c)
        diag["ab_tangency"] = kind
        cls = DEGENERATE_MINUS if kind == "internal" else DEGENERATE_PLUS
        inter = circle_intersection(upper, lower, tol=max(1e-9, gap * 2.0))
        pt = inter.points[0].real if inter.kind == "tangent" else None
        diag["tangency_point"] = pt
        return PregearDescription(carriers, vertices, angles, cls,
                                  pt, pt, diag)

    inter = circle_intersection(upper, lower, tol=1e-12)
    if inter.kind == "two_points":
        xs = sorted(p.real for p in inter.points)
        diag["b_imag_residual"] = max(abs(p.imag) for p in inter.points) / scale
        # a genuine pregear boundary separates the two intersection points:
        # one interior (winding 1), one exterior; a self-overlapping trace
        # from a non-univalent map fails this even when the fitted circles
        # still meet twice
        trace = [complex(w) for w in m.boundary.w_boundary]
        w_lo = winding_number(trace, complex(xs[0], 0.0))
        w_hi = winding_number(trace, complex(xs[1], 0.0))
        diag["b_windings"] = (w_lo, w_hi)
        if (w_lo == 1) == (w_hi == 1):
            return invalid(f"tooth circle intersections not separated by "
                           f"the boundary (windings {w_lo}, {w_hi})")
        return PregearDescription(carriers, vertices, angles, PREGEAR,
                                  xs[0], xs[1], diag)
    if inter.kind == "disjoint":
        return invalid("tooth circles disjoint")
    return invalid(f"unexpected tooth circle configuration: {inter.kind}")


def _tangency_kind(a_c, b_c):
    d = abs(a_c.center - b_c.center)
    external = abs(d - (a_c.radius + b_c.radius))
    internal = abs(d - abs(a_c.radius - b_c.radius))
    return "internal" if internal < external else "external"


def _symmetry_residual(carriers, arc_points, scale):
    """Worst distance from the mirror image of each arc's samples to the
    carrier fitted on the opposite side (point-based: stable even when a
    nearly straight edge is fitted by a huge circle)."""
    worst = 0.0
    for src, dst in (("toothLower", "toothUpper"), ("toothUpper", "toothLower"),
                     ("Aarc", "Aarc"), ("Barc", "Barc")):
        carrier = carriers[dst]
        for w in arc_points[src]:
            worst = max(worst, carrier.distance(w.conjugate()) / scale)
    return worst


def _recover_angles(carriers, vertices, arc_points, t1, t2):
    """Interior angles from carrier tangents; chords from the nearest arc
    samples orient the traversal."""
    # (vertex angle, incoming arc, outgoing arc); traversal is theta-increasing
    layout = ((t1, "Barc", "toothUpper"), (t2, "toothUpper", "Aarc"),
              (-t2, "Aarc", "toothLower"), (-t1, "toothLower", "Barc"))
    angles = {}
    for theta_v, tag_in, tag_out in layout:
        v = vertices.get(theta_v)
        if v is None:
            continue
        pts_in = arc_points[tag_in]
        pts_out = arc_points[tag_out]
        near_in = min(pts_in, key=lambda w: abs(w - v))
        near_out = min(pts_out, key=lambda w: abs(w - v))
        if abs(near_in - v) == 0.0 or abs(near_out - v) == 0.0:
            continue
        angles[theta_v] = _interior_angle(
            carriers[tag_in], carriers[tag_out], v,
            v - near_in, near_out - v)
    return angles


def tooth_curvature(m: MapSolution) -> tuple[float, float]:
    """Signed curvatures of the two tooth edges from three spread-out
    boundary-extrapolated samples each.

    Oriented Menger curvature along the inner-to-outer traversal of each
    edge (from its A-circle vertex toward the tooth tip); mirror symmetry of
    the domain then shows up as equal magnitudes with opposite signs, and a
    straight edge gives 0 up to fit noise.
    """
    out = []
    for arc in (ARC_TOOTH_UPPER, ARC_TOOTH_LOWER):
        th, pts = m.boundary.arc_points(arc, trim=0.15)
        if len(pts) < 3:
            raise ValueError("tooth arc trace too short for curvature")
        order = np.argsort(th)
        if arc == ARC_TOOTH_UPPER:
            order = order[::-1]  # inner vertex sits at the larger theta
        pts = np.asarray(pts)[order]
        p1, p2, p3 = pts[0], pts[len(pts) // 2], pts[-1]
        cross = ((p2 - p1).conjugate() * (p3 - p2)).imag
        denom = abs(p2 - p1) * abs(p3 - p2) * abs(p3 - p1)
        out.append(2.0 * cross / denom)
    return out[0], out[1]


def normalize_to_gear(d: PregearDescription, m: MapSolution,
                      ) -> tuple[MobiusTransform, GearParams]:
    """Moebius map carrying the pregear onto a standard gear, and the
    measured (beta, gamma).

    The tooth circles meet at two real points; the one interior to the domain
    (decided by a winding test on the traced boundary) goes to 0 and the
    other to infinity, which straightens both tooth edges into lines through
    the origin and makes the A- and B-circles concentric at 0.  A real
    scaling then puts the A-circle at radius 1, with sign chosen so the tooth
    opens around the positive real axis.
    """
    if d.classification not in (GEAR, PREGEAR):
        raise NormalizationError(
            f"cannot normalize a {d.classification} description")
    trace = [complex(w) for w in m.boundary.w_boundary]

    if d.classification == GEAR:
        if d.b_minus is None:
            raise NormalizationError("gear tooth lines have no finite "
                                     "intersection point")
        b_int = d.b_minus
        b_ext = INFINITY
    else:
        w_minus = winding_number(trace, complex(d.b_minus, 0.0))
        w_plus = winding_number(trace, complex(d.b_plus, 0.0))
        if (w_minus != 0) == (w_plus != 0):
            raise NormalizationError(
                f"winding test inconclusive: {w_minus}, {w_plus}")
        if w_minus != 0:
            b_int, b_ext = d.b_minus, d.b_plus
        else:
            b_int, b_ext = d.b_plus, d.b_minus

    pre = MobiusTransform.from_zero_and_pole(b_int, b_ext)

    def image_circle_from_arc(tag):
        pts = _arc_sample_points(m, tag)
        imgs = [pre.apply(p) for p in pts]
        return circle_through_three_points(*imgs)

    a_img = image_circle_from_arc("Aarc")
    b_img = image_circle_from_arc("Barc")
    if a_img.is_line or b_img.is_line:
        raise NormalizationError("A/B image did not come out as a circle")
    r_a, r_b = a_img.radius, b_img.radius
    concentric = abs(a_img.center - b_img.center) / r_a
    if r_b <= r_a:
        raise NormalizationError(
            f"B-image radius {r_b} not larger than A-image radius {r_a}")

    # orientation: the B-arc midpoint fixes the tooth axis (0 or pi)
    mid = pre.apply(_arc_midpoint(m, "Barc"))
    sign = 1.0 if mid.real > 0.0 else -1.0
    rho = sign / r_a
    full = MobiusTransform.from_zero_and_pole(b_int, b_ext, scale=rho)

    gamma = _measure_gamma(d, full)
    beta = r_b / r_a
    params = GearParams(beta=beta, gamma=gamma)
    return full, params


def transform_solution(m: MapSolution, T: MobiusTransform) -> MapSolution:
    """Push a solved map through a Moebius transform: trace, vertices and
    samples (with chain-rule derivatives) all move to the image domain."""
    old = m.boundary
    w_radii = tuple(np.array([T.apply(w) for w in arr]) for arr in old.w_radii)
    w_boundary = np.array([T.apply(w) for w in old.w_boundary])
    trace = BoundaryTrace(eps=old.eps, thetas=old.thetas.copy(),
                          arcs=old.arcs.copy(), w_radii=w_radii,
                          w_boundary=w_boundary)
    object.__setattr__(trace, "_t1", old._t1)
    object.__setattr__(trace, "_t2", old._t2)
    samples = []
    for z, f, fp, fpp in m.samples:
        t1d = T.derivative(f)
        samples.append((z, T.apply(f), t1d * fp,
                        T.second_derivative(f) * fp * fp + t1d * fpp))
    vertices = {k: T.apply(v) for k, v in m.vertices.items()}
    return MapSolution(kind=m.kind, params=dict(m.params),
                       prevertex_angles=m.prevertex_angles, samples=samples,
                       boundary=trace, vertices=vertices,
                       wronskian_drift=m.wronskian_drift,
                       pole_evidence=list(m.pole_evidence),
                       diagnostics={**m.diagnostics, "transformed": True})


def _arc_sample_points(m, tag, count=3):
    arc = {v: k for k, v in ARC_TAGS.items()}[tag]
    th, pts = m.boundary.arc_points(arc, trim=0.15)
    order = np.argsort(th if tag != "Aarc" else
                       np.where(th < 0.0, th + 2.0 * math.pi, th))
    pts = np.asarray(pts)[order]
    idx = np.linspace(0, len(pts) - 1, count).astype(int)
    return [complex(pts[i]) for i in idx]


def _arc_midpoint(m, tag):
    pts = _arc_sample_points(m, tag, count=3)
    return pts[1]


def _measure_gamma(d, full):
    """Gear angle from the arguments of the image tooth edges (rays through
    the origin), averaged over the two edges by symmetry.

    Both tooth vertices are first projected onto the fitted carrier and then
    mapped; their image arguments agree up to fit noise, which is recorded as
    a collinearity residual implicitly through the averaging.
    """
    half_angles = []
    for tag, sign in (("toothUpper", 1.0), ("toothLower", -1.0)):
        carrier = d.carriers[tag]
        keys = [k for k in d.vertices if (k > 0) == (sign > 0)]
        if len(keys) < 2:
            raise NormalizationError("missing tooth vertices")
        unit_sum = 0j
        for k in sorted(keys, key=abs):
            v = d.vertices[k]
            if carrier.is_line:
                u = ((v - carrier.point) / carrier.direction).real
                p = carrier.point + u * carrier.direction
            else:
                p = (carrier.center + carrier.radius
                     * (v - carrier.center) / abs(v - carrier.center))
            w = full.apply(p)
            unit_sum += w / abs(w)
        ang = sign * math.atan2(unit_sum.imag, unit_sum.real)
        if not ang > 0.0:
            raise NormalizationError(
                f"tooth edge {tag} landed on the wrong half-plane")
        half_angles.append(ang)
    return 0.5 * (half_angles[0] + half_angles[1])

"""Complex-plane primitives: Moebius transformations, generalized circles,
circle fitting and intersection.

All points are plain Python complex numbers; the point at infinity is the
explicit singleton ``INFINITY`` (never an overflowing float).  Everything in
this module is a pure function on immutable values.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

# Curvature below this (after rescaling the sample points to unit diameter)
# is reported as a straight line; the gear test is exactly "tooth edges are
# straight", so this threshold is the operative criterion.
STRAIGHT_CURVATURE_TOL = 1e-8

# |dist(centers) - (r1 +- r2)| below this times max(r1, r2) counts as tangent.
TANGENCY_TOL = 1e-9


class PointAtInfinity:
    """Explicit marker for the point at infinity on the Riemann sphere."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INFINITY"


INFINITY = PointAtInfinity()


def is_infinite(w) -> bool:
    return isinstance(w, PointAtInfinity)


class DegenerateTransformError(ValueError):
    """Raised when a Moebius transform has ad - bc = 0."""


@dataclass(frozen=True)
class MobiusTransform:
    """w -> (a*w + b) / (c*w + d) with ad - bc != 0."""

    a: complex
    b: complex
    c: complex
    d: complex

    def __post_init__(self):
        det = self.a * self.d - self.b * self.c
        scale = max(abs(self.a), abs(self.b), abs(self.c), abs(self.d), 1.0)
        if abs(det) <= 1e-14 * scale * scale:
            raise DegenerateTransformError(
                f"degenerate Moebius transform, det={det!r}")

    @staticmethod
    def identity() -> "MobiusTransform":
        return MobiusTransform(1.0, 0.0, 0.0, 1.0)

    @staticmethod
    def from_zero_and_pole(zero: complex, pole, scale: complex = 1.0) -> "MobiusTransform":
        """The map w -> scale * (w - zero) / (w - pole).

        ``pole`` may be ``INFINITY``, in which case the map is the affine
        w -> scale * (w - zero).
        """
        if is_infinite(pole):
            return MobiusTransform(scale, -scale * zero, 0.0, 1.0)
        return MobiusTransform(scale, -scale * zero, 1.0, -pole)

    def apply(self, w):
        """Evaluate the transform; both argument and result may be INFINITY."""
        if is_infinite(w):
            if self.c == 0:
                return INFINITY
            return self.a / self.c
        num = self.a * w + self.b
        den = self.c * w + self.d
        if abs(den) == 0.0:
            return INFINITY
        return num / den

    def derivative(self, w: complex) -> complex:
        det = self.a * self.d - self.b * self.c
        return det / (self.c * w + self.d) ** 2

    def second_derivative(self, w: complex) -> complex:
        det = self.a * self.d - self.b * self.c
        return -2.0 * self.c * det / (self.c * w + self.d) ** 3

    def inverse(self) -> "MobiusTransform":
        return MobiusTransform(self.d, -self.b, -self.c, self.a)

    def compose(self, other: "MobiusTransform") -> "MobiusTransform":
        """self after other: (self.compose(other)).apply(w) == self.apply(other.apply(w))."""
        return MobiusTransform(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def apply_to_circle(self, carrier: "GeneralizedCircle") -> "GeneralizedCircle":
        """Image of a generalized circle, computed through three carrier points.

        Moebius maps send generalized circles to generalized circles, so the
        image is fully determined by the images of any three points.  Points
        that land on INFINITY are replaced by a fourth carrier point.
        """
        pts = carrier.three_points()
        images = [self.apply(p) for p in pts]
        if any(is_infinite(w) for w in images):
            spare = carrier.point_at_parameter(0.37)
            images = [w for w in images if not is_infinite(w)]
            images.append(self.apply(spare))
        return circle_through_three_points(*images[:3])


@dataclass(frozen=True)
class DiskAutomorphism:
    """The self-map T_q(z) = (z - q) / (-q z + 1) of the unit disk, q real,
    |q| < 1.  Fixes +1 and -1."""

    q: float

    def __post_init__(self):
        if not abs(self.q) < 1.0:
            raise ValueError(f"|q| must be < 1, got {self.q}")

    def apply(self, z: complex) -> complex:
        return (z - self.q) / (-self.q * z + 1.0)

    def derivative(self, z: complex) -> complex:
        return (1.0 - self.q * self.q) / (-self.q * z + 1.0) ** 2

    def inverse(self) -> "DiskAutomorphism":
        return DiskAutomorphism(-self.q)


@dataclass(frozen=True)
class GeneralizedCircle:
    """A circle (center, radius) or a straight line (point, unit direction)."""

    kind: str  # "circle" | "line"
    center: complex = 0j
    radius: float = 0.0
    point: complex = 0j
    direction: complex = 1.0 + 0j

    @staticmethod
    def circle(center: complex, radius: float) -> "GeneralizedCircle":
        if not radius > 0.0:
            raise ValueError(f"radius must be positive, got {radius}")
        return GeneralizedCircle("circle", center=complex(center), radius=float(radius))

    @staticmethod
    def line(point: complex, direction: complex) -> "GeneralizedCircle":
        mag = abs(direction)
        if mag == 0.0:
            raise ValueError("line direction must be nonzero")
        return GeneralizedCircle("line", point=complex(point),
                                 direction=complex(direction) / mag)

    @property
    def is_line(self) -> bool:
        return self.kind == "line"

    def curvature(self) -> float:
        return 0.0 if self.is_line else 1.0 / self.radius

    def signed_offset(self, w: complex) -> float:
        """Distance from w to the carrier (unsigned for circles, signed
        perpendicular offset for lines)."""
        if self.is_line:
            return (
                (w - self.point) / self.direction).imag
        return abs(w - self.center) - self.radius

    def distance(self, w: complex) -> float:
        return abs(self.signed_offset(w))

    def contains(self, w: complex, tol: float = 1e-10) -> bool:
        return self.distance(w) <= tol

    def point_at_parameter(self, s: float) -> complex:
        if self.is_line:
            return self.point + s * self.direction
        return self.center + self.radius * cmath.exp(2j * math.pi * s)

    def three_points(self) -> tuple[complex, complex, complex]:
        if self.is_line:
            return (self.point - self.direction, self.point,
                    self.point + self.direction)
        return tuple(self.center + self.radius * cmath.exp(2j * math.pi * s)
                     for s in (0.0, 1.0 / 3.0, 2.0 / 3.0))

    def tangent_direction(self, w: complex) -> complex:
        """Unit tangent of the carrier at a point on it (orientation is the
        counterclockwise one for circles, ``direction`` for lines)."""
        if self.is_line:
            return self.direction
        radial = (w - self.center) / abs(w - self.center)
        return 1j * radial

    def conjugate(self) -> "GeneralizedCircle":
        """Mirror image across the real axis."""
        if self.is_line:
            return GeneralizedCircle.line(self.point.conjugate(),
                                          self.direction.conjugate())
        return GeneralizedCircle.circle(self.center.conjugate(), self.radius)


def circle_through_three_points(p1: complex, p2: complex, p3: complex,
                                curvature_tol: float = STRAIGHT_CURVATURE_TOL
                                ) -> GeneralizedCircle:
    """Unique circle or line through three pairwise distinct points.

    The points are rescaled to unit diameter before the collinearity test, so
    ``curvature_tol`` is a scale-free threshold: a fitted curvature below it
    reports a line.
    """
    scale = max(abs(p1 - p2), abs(p2 - p3), abs(p3 - p1))
    if scale == 0.0 or min(abs(p1 - p2), abs(p2 - p3), abs(p3 - p1)) == 0.0:
        raise ValueError("points must be pairwise distinct")
    q1, q2, q3 = p1 / scale, p2 / scale, p3 / scale
    # 2 Re(conj(c) (q_i - q_j)) = |q_i|^2 - |q_j|^2 for the scaled center c
    ax, ay = (q2 - q1).real, (q2 - q1).imag
    bx, by = (q3 - q2).real, (q3 - q2).imag
    det = 2.0 * (ax * by - ay * bx)
    # det equals 4x the signed triangle area; curvature of the circumcircle is
    # det / (|q1-q2| |q2-q3| |q3-q1|) in the scaled frame
    side = abs(q1 - q2) * abs(q2 - q3) * abs(q3 - q1)
    if abs(det) / side < curvature_tol:
        direction = (q3 - q1) * scale
        return GeneralizedCircle.line(p1, direction)
    rhs1 = (abs(q2) ** 2 - abs(q1) ** 2) / 2.0
    rhs2 = (abs(q3) ** 2 - abs(q2) ** 2) / 2.0
    cx = (rhs1 * by - rhs2 * ay) / (det / 2.0)
    cy = (rhs2 * ax - rhs1 * bx) / (det / 2.0)
    center = complex(cx, cy) * scale
    radius = (abs(p1 - center) + abs(p2 - center) + abs(p3 - center)) / 3.0
    return GeneralizedCircle.circle(center, radius)


@dataclass(frozen=True)
class IntersectionResult:
    """Outcome of intersecting two generalized circles.

    kind is one of "two_points", "tangent", "disjoint", "coincident";
    points holds 2, 1 or 0 entries (entries may be INFINITY for lines).
    """

    kind: str
    points: tuple = field(default_factory=tuple)


def circle_intersection(c1: GeneralizedCircle, c2: GeneralizedCircle,
                        tol: float = TANGENCY_TOL) -> IntersectionResult:
    """Classify the intersection of two carriers and return the points.

    Tangency is detected within ``tol`` relative to the larger radius (or to
    the separation scale for lines).  Two distinct straight lines meet in one
    finite point and at INFINITY; parallel distinct lines are tangent at
    INFINITY.
    """
    if c1.is_line and c2.is_line:
        return _intersect_lines(c1, c2, tol)
    if c1.is_line:
        return _intersect_line_circle(c1, c2, tol)
    if c2.is_line:
        return _intersect_line_circle(c2, c1, tol)
    return _intersect_circles(c1, c2, tol)


def _intersect_lines(l1, l2, tol):
    cross = (l1.direction.conjugate() * l2.direction).imag
    offset = l1.distance(l2.point)
    if abs(cross) < tol:
        if offset < tol:
            return IntersectionResult("coincident")
        return IntersectionResult("tangent", (INFINITY,))
    # solve l1.point + s d1 = l2.point + t d2 by taking Im(... / d2)
    rhs = l2.point - l1.point
    s = (rhs / l2.direction).imag / (l1.direction / l2.direction).imag
    p = l1.point + s * l1.direction
    return IntersectionResult("two_points", (p, INFINITY))


def _intersect_line_circle(line, circ, tol):
    # foot of the perpendicular from the circle center onto the line
    u = (circ.center - line.point) / line.direction
    foot = line.point + u.real * line.direction
    h = abs(u.imag)  # distance center-to-line
    scale = max(circ.radius, 1.0)
    if abs(h - circ.radius) < tol * scale:
        return IntersectionResult("tangent", (foot,))
    if h > circ.radius:
        return IntersectionResult("disjoint")
    half = math.sqrt(max(circ.radius**2 - h**2, 0.0))
    return IntersectionResult(
        "two_points", (foot - half * line.direction, foot + half * line.direction))


def _intersect_circles(c1, c2, tol):
    d = abs(c2.center - c1.center)
    r1, r2 = c1.radius, c2.radius
    scale = max(r1, r2)
    if d < tol * scale and abs(r1 - r2) < tol * scale:
        return IntersectionResult("coincident")
    if abs(d - (r1 + r2)) < tol * scale or abs(d - abs(r1 - r2)) < tol * scale:
        if d == 0.0:
            return IntersectionResult("coincident")
        u = (c2.center - c1.center) / d
        sign = 1.0 if abs(d - (r1 + r2)) <= abs(d - abs(r1 - r2)) else \
            (1.0 if r1 >= r2 else -1.0)
        return IntersectionResult("tangent", (c1.center + sign * r1 * u,))
    if d > r1 + r2 or d < abs(r1 - r2):
        return IntersectionResult("disjoint")
    # radical line offset from c1.center
    x = (d * d + r1 * r1 - r2 * r2) / (2.0 * d)
    y2 = r1 * r1 - x * x
    y = math.sqrt(max(y2, 0.0))
    u = (c2.center - c1.center) / d
    base = c1.center + x * u
    off = y * u * 1j
    return IntersectionResult("two_points", (base - off, base + off))


def symmetrize_prevertices(t1: float, t2: float) -> tuple[float, float]:
    """Map prevertex angles 0 < t1 < t2 < pi to (q, t) with |q| < 1 and
    0 < t < pi/2 such that T_q(e^{i t1}) = e^{i t} and T_q(e^{i t2}) = e^{i (pi - t)}.

    The value of q is the closed form

        q = (z1 + z2 - 2 sqrt(Im z1 Im z2) e^{i(t1+t2)/2}) / (1 + z1 z2),

    evaluated here in the algebraically equivalent real form

        q = cos((t1+t2)/2) / (cos((t2-t1)/2) + sqrt(sin t1 sin t2)),

    which stays finite when t1 + t2 = pi (the direct quotient is 0/0 there).
    """
    if not (0.0 < t1 < t2 < math.pi):
        raise ValueError(f"need 0 < t1 < t2 < pi, got ({t1}, {t2})")
    sigma = 0.5 * (t1 + t2)
    delta = 0.5 * (t2 - t1)
    q = math.cos(sigma) / (math.cos(delta) + math.sqrt(math.sin(t1) * math.sin(t2)))
    w1 = DiskAutomorphism(q).apply(cmath.exp(1j * t1))
    t = math.atan2(w1.imag, w1.real)
    return q, t


def winding_number(points, w: complex) -> int:
    """Winding number of a closed polygonal curve (given as a sequence of
    vertices, first != last is fine) about the point w."""
    total = 0.0
    n = len(points)
    prev = points[-1] - w
    for k in range(n):
        cur = points[k] - w
        total += cmath.phase(cur / prev)
        prev = cur
    return round(total / (2.0 * math.pi))

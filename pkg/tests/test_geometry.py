import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gearmap.geometry import (DegenerateTransformError, DiskAutomorphism,
                              GeneralizedCircle, INFINITY, MobiusTransform,
                              circle_intersection,
                              circle_through_three_points, is_infinite,
                              symmetrize_prevertices, winding_number)

disk_q = st.floats(min_value=-0.95, max_value=0.95)
angles = st.floats(min_value=-math.pi, max_value=math.pi)


class TestMobius:
    def test_identity(self):
        T = MobiusTransform.identity()
        assert T.apply(3 + 4j) == 3 + 4j

    def test_zero_and_pole(self):
        bm, bp = -1.5, 2.5
        T = MobiusTransform.from_zero_and_pole(bm, bp)
        assert T.apply(bm) == 0.0
        assert is_infinite(T.apply(bp))
        assert T.apply(INFINITY) == 1.0  # a/c for w -> infinity

    def test_degenerate_rejected(self):
        with pytest.raises(DegenerateTransformError):
            MobiusTransform(1.0, 2.0, 2.0, 4.0)

    def test_inverse_and_compose(self):
        T = MobiusTransform(1.0 + 1j, 0.5, -0.25j, 2.0)
        w = 0.3 - 0.8j
        assert abs(T.compose(T.inverse()).apply(w) - w) < 1e-12
        S = MobiusTransform(2.0, -1j, 0.0, 1.0)
        assert abs(S.compose(T).apply(w) - S.apply(T.apply(w))) < 1e-12

    def test_circle_image_is_circle(self):
        T = MobiusTransform.from_zero_and_pole(-0.5, 3.0)
        c = GeneralizedCircle.circle(1.0 + 0.5j, 0.7)
        img = T.apply_to_circle(c)
        for s in (0.1, 0.45, 0.8):
            p = c.point_at_parameter(s)
            assert img.distance(T.apply(p)) < 1e-9


class TestDiskAutomorphism:
    def test_q_zero_is_identity(self):
        A = DiskAutomorphism(0.0)
        for z in (0.3 + 0.2j, -0.9j, 0.99):
            assert A.apply(z) == z
            assert A.derivative(z) == 1.0

    def test_fixes_plus_minus_one(self):
        A = DiskAutomorphism(0.73)
        assert abs(A.apply(1.0) - 1.0) < 1e-14
        assert abs(A.apply(-1.0) + 1.0) < 1e-14

    def test_half_value(self):
        A = DiskAutomorphism(0.5)
        assert abs(A.apply(0.0) + 0.5) < 1e-15
        assert abs(A.derivative(0.0) - 0.75) < 1e-15

    @given(q=disk_q, theta=angles)
    @settings(max_examples=200, deadline=None)
    def test_unit_circle_preserved(self, q, theta):
        A = DiskAutomorphism(q)
        z = cmath.exp(1j * theta)
        assert abs(abs(A.apply(z)) - 1.0) < 1e-12

    @given(q=disk_q,
           a=st.complex_numbers(max_magnitude=1.0, allow_nan=False,
                                allow_infinity=False),
           b=st.complex_numbers(max_magnitude=1.0, allow_nan=False,
                                allow_infinity=False))
    @settings(max_examples=200, deadline=None)
    def test_difference_identity(self, q, a, b):
        # T_q(a) - T_q(b) = (1 - q^2)(a - b) / ((1 - q a)(1 - q b))
        A = DiskAutomorphism(q)
        lhs = A.apply(a) - A.apply(b)
        rhs = (1.0 - q * q) * (a - b) / ((1.0 - q * a) * (1.0 - q * b))
        assert abs(lhs - rhs) < 1e-12


class TestCircleFit:
    def test_unit_circle(self):
        c = circle_through_three_points(1.0 + 0j, 1j, -1.0 + 0j)
        assert not c.is_line
        assert abs(c.center) < 1e-12
        assert abs(c.radius - 1.0) < 1e-12

    def test_collinear_gives_line(self):
        c = circle_through_three_points(0.0 + 0j, 1.0 + 0j, 2.0 + 0j)
        assert c.is_line
        assert abs(c.direction.imag) < 1e-15

    def test_right_triangle(self):
        # bisector equations solved by hand: center 1/2 + i/2, radius sqrt(2)/2
        c = circle_through_three_points(0j, 1.0 + 0j, 1.0 + 1j)
        assert abs(c.center - (0.5 + 0.5j)) < 1e-12
        assert abs(c.radius - math.sqrt(2.0) / 2.0) < 1e-12

    def test_coincident_rejected(self):
        with pytest.raises(ValueError):
            circle_through_three_points(1j, 1j, 0j)

    @given(st.tuples(
        st.complex_numbers(max_magnitude=10.0, allow_nan=False,
                           allow_infinity=False),
        st.complex_numbers(max_magnitude=10.0, allow_nan=False,
                           allow_infinity=False),
        st.complex_numbers(max_magnitude=10.0, allow_nan=False,
                           allow_infinity=False)))
    @settings(max_examples=200, deadline=None)
    def test_members_lie_on_carrier(self, pts):
        p1, p2, p3 = pts
        sep = min(abs(p1 - p2), abs(p2 - p3), abs(p3 - p1))
        span = max(abs(p1 - p2), abs(p2 - p3), abs(p3 - p1))
        if sep < 1e-3 * max(span, 1.0):
            return
        c = circle_through_three_points(p1, p2, p3)
        scale = max(span, 1.0)
        for p in pts:
            assert c.distance(p) < 1e-10 * scale


class TestIntersection:
    def test_two_points_exact(self):
        # |w| = 1 and |w - 1| = 1 meet at 1/2 +- i sqrt(3)/2
        res = circle_intersection(GeneralizedCircle.circle(0j, 1.0),
                                  GeneralizedCircle.circle(1.0 + 0j, 1.0))
        assert res.kind == "two_points"
        pts = sorted(res.points, key=lambda p: p.imag)
        assert abs(pts[0] - (0.5 - math.sqrt(3.0) / 2.0 * 1j)) < 1e-12
        assert abs(pts[1] - (0.5 + math.sqrt(3.0) / 2.0 * 1j)) < 1e-12

    def test_concentric_disjoint(self):
        res = circle_intersection(GeneralizedCircle.circle(0j, 1.0),
                                  GeneralizedCircle.circle(0j, 2.0))
        assert res.kind == "disjoint"

    def test_external_tangency(self):
        res = circle_intersection(GeneralizedCircle.circle(0j, 1.0),
                                  GeneralizedCircle.circle(2.0 + 0j, 1.0))
        assert res.kind == "tangent"
        assert abs(res.points[0] - 1.0) < 1e-12

    def test_lines_meet_at_point_and_infinity(self):
        l1 = GeneralizedCircle.line(0j, cmath.exp(0.3j))
        l2 = GeneralizedCircle.line(0j, cmath.exp(-0.3j))
        res = circle_intersection(l1, l2)
        assert res.kind == "two_points"
        finite = [p for p in res.points if not is_infinite(p)]
        assert len(finite) == 1 and abs(finite[0]) < 1e-12
        assert any(is_infinite(p) for p in res.points)

    def test_line_circle(self):
        res = circle_intersection(
            GeneralizedCircle.line(0j, 1.0 + 0j),
            GeneralizedCircle.circle(0.5j, 1.0))
        assert res.kind == "two_points"
        for p in res.points:
            assert abs(abs(p - 0.5j) - 1.0) < 1e-12
            assert abs(p.imag) < 1e-12

    @given(c1=st.complex_numbers(max_magnitude=3.0, allow_nan=False,
                                 allow_infinity=False),
           r1=st.floats(min_value=0.1, max_value=3.0),
           c2=st.complex_numbers(max_magnitude=3.0, allow_nan=False,
                                 allow_infinity=False),
           r2=st.floats(min_value=0.1, max_value=3.0))
    @settings(max_examples=200, deadline=None)
    def test_intersection_points_on_both(self, c1, r1, c2, r2):
        ca = GeneralizedCircle.circle(c1, r1)
        cb = GeneralizedCircle.circle(c2, r2)
        res = circle_intersection(ca, cb)
        if res.kind != "two_points":
            return
        for p in res.points:
            assert ca.distance(p) < 1e-10 * max(r1, r2, 1.0)
            assert cb.distance(p) < 1e-10 * max(r1, r2, 1.0)


class TestSymmetrize:
    def test_already_symmetric(self):
        q, t = symmetrize_prevertices(0.7, math.pi - 0.7)
        assert abs(q) < 1e-14
        assert abs(t - 0.7) < 1e-14

    def test_images_symmetric_about_imaginary_axis(self):
        q, t = symmetrize_prevertices(0.5, 2.0)
        A = DiskAutomorphism(q)
        w1 = A.apply(cmath.exp(0.5j))
        w2 = A.apply(cmath.exp(2.0j))
        assert abs(abs(w1) - 1.0) < 1e-14
        assert abs(cmath.phase(w1) - t) < 1e-14
        assert abs(cmath.phase(w2) - (math.pi - t)) < 1e-12

    def test_matches_literal_closed_form(self):
        # q = (z1 + z2 - 2 sqrt(Im z1 Im z2) e^{i(t1+t2)/2}) / (1 + z1 z2)
        for t1, t2 in ((0.5, 2.0), (0.3, 0.9), (1.2, 2.9)):
            z1, z2 = cmath.exp(1j * t1), cmath.exp(1j * t2)
            root = cmath.exp(0.5j * (t1 + t2))
            literal = (z1 + z2 - 2.0 * math.sqrt(math.sin(t1) * math.sin(t2))
                       * root) / (1.0 + z1 * z2)
            q, _ = symmetrize_prevertices(t1, t2)
            assert abs(literal.imag) < 1e-12
            assert abs(q - literal.real) < 1e-12

    @given(t1=st.floats(min_value=0.05, max_value=2.9),
           dt=st.floats(min_value=0.05, max_value=2.9))
    @settings(max_examples=200, deadline=None)
    def test_q_in_open_interval(self, t1, dt):
        t2 = t1 + dt
        if t2 >= math.pi - 1e-3:
            return
        q, t = symmetrize_prevertices(t1, t2)
        assert -1.0 < q < 1.0
        assert 0.0 < t < 0.5 * math.pi

    @given(t1=st.floats(min_value=0.05, max_value=2.0),
           dt=st.floats(min_value=0.05, max_value=1.0))
    @settings(max_examples=100, deadline=None)
    def test_involutive(self, t1, dt):
        t2 = t1 + dt
        if t2 >= math.pi - 1e-3:
            return
        q, t = symmetrize_prevertices(t1, t2)
        q2, t_again = symmetrize_prevertices(t, math.pi - t)
        assert abs(q2) < 1e-10
        assert abs(t_again - t) < 1e-10

    def test_rejects_bad_order(self):
        with pytest.raises(ValueError):
            symmetrize_prevertices(2.0, 0.5)


def test_winding_number():
    square = [1 + 1j, -1 + 1j, -1 - 1j, 1 - 1j]
    assert winding_number(square, 0j) == 1
    assert winding_number(square, 3 + 0j) == 0
    assert winding_number(list(reversed(square)), 0j) == -1

"""Geodesic integration, conservation laws, boundary-value shooting, and
the angle-excess law."""

import math

import pytest

from egregium import geodesics, intrinsic, surfaces
from egregium.errors import NoConvergence, NotRevolution, StepTooLarge
from egregium.exprlang import parse
from egregium.geodesics import (GeodesicState, RevolutionSurface,
                                build_triangle, clairaut_drift,
                                connect_geodesic, energy_drift,
                                integrate_geodesic, triangle_excess)
from egregium.intrinsic import MetricField
from egregium.surfaces import ParametricSurface

FLAT = MetricField.from_expressions("1", "0", "1")
SPHERE = MetricField.from_expressions("1", "0", "sin(u)^2")
SPHERE_ISO = MetricField.from_expressions("(2/(1+u^2+v^2))^2", "0",
                                          "(2/(1+u^2+v^2))^2")
HYPERBOLIC = MetricField.from_expressions("(2/(1-u^2-v^2))^2", "0",
                                          "(2/(1-u^2-v^2))^2")

SPHERE_SURF = ParametricSurface(parse("sin(p)*cos(q)"),
                                parse("sin(p)*sin(q)"), parse("cos(p)"))
TORUS_SURF = ParametricSurface(parse("(2+cos(p))*cos(q)"),
                               parse("(2+cos(p))*sin(q)"), parse("sin(p)"))


class TestIntegrateGeodesic:
    def test_flat_metric_gives_straight_line(self):
        start = GeodesicState(0.0, 0.0, 0.6, 0.8)
        path = integrate_geodesic(FLAT, start, 2.0, 1e-2)
        for s, st in zip(path.s, path.states):
            assert st.u == pytest.approx(0.6 * s, abs=1e-12)
            assert st.v == pytest.approx(0.8 * s, abs=1e-12)

    def test_equator_is_a_geodesic(self):
        start = GeodesicState(math.pi / 2.0, 0.0, 0.0, 1.0)
        path = integrate_geodesic(SPHERE, start, math.pi, 1e-3)
        drift = max(abs(st.u - math.pi / 2.0) for st in path.states)
        assert drift <= 1e-8

    def test_generic_great_circle_planarity(self):
        # embedded samples of any unit-sphere geodesic lie in a plane
        # through the origin: check via the normal of a least-squares fit
        start = GeodesicState(math.pi / 2.0, 0.0,
                              math.cos(0.6), math.sin(0.6))
        path = integrate_geodesic(SPHERE, start, 2.5, 1e-3)
        pts = [(math.sin(st.u) * math.cos(st.v),
                math.sin(st.u) * math.sin(st.v), math.cos(st.u))
               for st in path.states[:: len(path.states) // 50]]
        import numpy as np
        mat = np.array(pts)
        # smallest singular vector of the sample matrix = plane normal
        _, sigma, vt = np.linalg.svd(mat, full_matrices=False)
        residual = sigma[-1] / math.sqrt(len(pts))
        assert residual <= 1e-6
        normal = vt[-1]
        for p in pts:
            assert abs(float(np.dot(normal, p))) <= 1e-6

    def test_energy_conserved_on_corpus_metrics(self):
        cases = [
            (FLAT, GeodesicState(0.0, 0.0, 1.0, 0.2)),
            (SPHERE, GeodesicState(1.2, 0.0, 0.3, 0.9)),
            (SPHERE_ISO, GeodesicState(0.1, -0.2, 0.8, 0.1)),
            (HYPERBOLIC, GeodesicState(0.0, 0.1, 0.5, 0.2)),
        ]
        for metric, start in cases:
            path = integrate_geodesic(metric, start, 1.0, 1e-3)
            assert energy_drift(metric, path) <= 1e-7

    def test_reversibility(self):
        start = GeodesicState(1.0, 0.2, 0.4, 0.7)
        fwd = integrate_geodesic(SPHERE, start, 1.5, 1e-3)
        turn = fwd.end
        back = integrate_geodesic(
            SPHERE, GeodesicState(turn.u, turn.v, -turn.pu, -turn.pv),
            1.5, 1e-3)
        assert abs(back.end.u - start.u) <= 1e-6
        assert abs(back.end.v - start.v) <= 1e-6

    def test_step_guard(self):
        start = GeodesicState(0.3, 0.0, 1.0, 1.0)
        with pytest.raises(StepTooLarge):
            integrate_geodesic(SPHERE, start, 20.0, 2.0)

    def test_rejects_nonpositive_step(self):
        with pytest.raises(ValueError):
            integrate_geodesic(FLAT, GeodesicState(0, 0, 1, 0), 1.0, 0.0)


class TestClairaut:
    def test_sphere_equatorial(self):
        rev = RevolutionSurface(SPHERE_SURF, parse("sin(p)"))
        metric = MetricField.from_surface(SPHERE_SURF)
        start = GeodesicState(math.pi / 2.0, 0.0, 0.0, 1.0)
        path = integrate_geodesic(metric, start, math.pi, 1e-3)
        assert clairaut_drift(rev, path) <= 1e-9

    def test_sphere_meridian(self):
        rev = RevolutionSurface(SPHERE_SURF, parse("sin(p)"))
        metric = MetricField.from_surface(SPHERE_SURF)
        start = GeodesicState(math.pi / 2.0, 0.3, 1.0, 0.0)
        path = integrate_geodesic(metric, start, 1.0, 1e-3)
        assert clairaut_drift(rev, path) <= 1e-9

    def test_sphere_generic_long_run(self):
        rev = RevolutionSurface(SPHERE_SURF, parse("sin(p)"))
        metric = MetricField.from_surface(SPHERE_SURF)
        ang = math.pi / 6.0
        start = GeodesicState(math.pi / 2.0, 0.0, math.cos(ang), math.sin(ang))
        path = integrate_geodesic(metric, start, 10.0, 1e-3)
        assert clairaut_drift(rev, path) <= 1e-5

    def test_torus_generic_long_run(self):
        rev = RevolutionSurface(TORUS_SURF, parse("2+cos(p)"))
        metric = MetricField.from_surface(TORUS_SURF)
        start = GeodesicState(0.4, 0.0, 0.5, 0.25)
        path = integrate_geodesic(metric, start, 10.0, 1e-3)
        assert clairaut_drift(rev, path) <= 1e-5

    def test_wrong_profile_rejected(self):
        rev = RevolutionSurface(SPHERE_SURF, parse("cos(p)"))
        metric = MetricField.from_surface(SPHERE_SURF)
        path = integrate_geodesic(
            metric, GeodesicState(1.0, 0.0, 0.3, 0.5), 0.5, 1e-2)
        with pytest.raises(NotRevolution):
            clairaut_drift(rev, path)


class TestConnectGeodesic:
    def test_flat_metric_straight_segment(self):
        path = connect_geodesic(FLAT, (0.0, 0.0), (1.0, 2.0))
        assert abs(path.end.u - 1.0) <= 1e-6
        assert abs(path.end.v - 2.0) <= 1e-6
        for s, st in zip(path.s, path.states):
            # stays on the chord
            assert abs(st.u * 2.0 - st.v) <= 1e-9

    def test_sphere_equatorial_arc(self):
        path = connect_geodesic(SPHERE, (math.pi / 2.0, 0.0),
                                (math.pi / 2.0, 0.5))
        assert abs(path.end.u - math.pi / 2.0) <= 1e-6
        assert abs(path.end.v - 0.5) <= 1e-6
        assert path.s[-1] == pytest.approx(0.5, abs=1e-6)
        for st in path.states:
            assert abs(st.u - math.pi / 2.0) <= 1e-8

    def test_antipodal_points_refused(self):
        with pytest.raises(NoConvergence):
            connect_geodesic(SPHERE, (math.pi / 2.0, 0.0),
                             (math.pi / 2.0, math.pi))

    def test_endpoints_match_within_tolerance(self):
        for target in ((0.6, 0.4), (-0.3, 0.5), (0.2, -0.6)):
            path = connect_geodesic(SPHERE_ISO, (0.0, 0.0), target, tol=1e-7)
            assert math.hypot(path.end.u - target[0],
                              path.end.v - target[1]) <= 1e-6


class TestTriangles:
    def test_flat_triangle_zero_both_sides(self):
        excess, integral = triangle_excess(FLAT, (0.0, 0.0), (0.7, 0.1),
                                           (0.2, 0.8))
        assert abs(excess) <= 1e-10
        assert abs(integral) <= 1e-10

    def test_octant_right_angles(self):
        tri = build_triangle(SPHERE_ISO, (0.0, 0.0), (1.0, 0.0), (0.0, 1.0))
        for angle in tri.angles:
            assert angle == pytest.approx(math.pi / 2.0, abs=1e-6)

    def test_octant_excess_law(self):
        excess, integral = triangle_excess(SPHERE_ISO, (0.0, 0.0),
                                           (1.0, 0.0), (0.0, 1.0))
        assert excess == pytest.approx(math.pi / 2.0, abs=1e-3)
        assert integral == pytest.approx(math.pi / 2.0, abs=1e-3)
        assert abs(excess - integral) <= 1e-3

    def test_small_triangle_first_order_law(self):
        # diameter ~0.1 triangle: excess ~ kappa * area within 2 percent
        pts = ((0.0, 0.0), (0.1, 0.0), (0.0, 0.08))
        excess, integral = triangle_excess(SPHERE_ISO, *pts)
        assert integral != 0.0
        assert abs(excess - integral) <= 0.02 * abs(integral)

    def test_hyperbolic_triangle_negative_excess(self):
        excess, integral = triangle_excess(HYPERBOLIC, (0.0, 0.0),
                                           (0.3, 0.0), (0.0, 0.3))
        assert excess < 0.0
        assert abs(excess - integral) <= 1e-3

    def test_sides_connect_vertices(self):
        tri = build_triangle(SPHERE_ISO, (0.0, 0.0), (0.5, 0.1), (0.1, 0.6))
        verts = tri.vertices
        for i, side in enumerate(tri.sides):
            a = verts[i]
            b = verts[(i + 1) % 3]
            assert math.hypot(side.start.u - a[0], side.start.v - a[1]) \
                <= 1e-6
            assert math.hypot(side.end.u - b[0], side.end.v - b[1]) <= 1e-6

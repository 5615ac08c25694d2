import numpy as np
import pytest

from gaussdens.definitions.geometry import (
        DiscreteCurve, Isometry, SphereState)
from gaussdens.geometry.curves import (
        compute_geometry, distance_to_line_through_origin,
        distance_to_unit_circle, hausdorff_distance, sphere_geometry,
        sphere_second_fundamental_norm, transform, winding_number)
from gaussdens.geometry.quadrature import CurveQuadrature, hermite_rule
from gaussdens.geometry.shapes import (
        circle, ellipse, rounded_square, segment, square)


def test_curve_validation():
    with pytest.raises(ValueError):
        DiscreteCurve([[0.0, 0.0], [1.0, 0.0]])
    with pytest.raises(ValueError):
        DiscreteCurve([[0.0, 0.0], [1.0, 0.0], [1.0, 0.0], [0.0, 1.0]])
    with pytest.raises(ValueError):
        DiscreteCurve([[0.0, 0.0], [1.0, np.nan], [0.0, 1.0]])
    with pytest.raises(ValueError):
        DiscreteCurve([0.0, 1.0, 2.0])
    # last vertex equal to the first one is a zero length closing edge
    with pytest.raises(ValueError):
        DiscreteCurve([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0], [0.0, 0.0]])

    segment_curve = DiscreteCurve([[0.0, 0.0], [1.0, 0.0]], closed=False)
    assert segment_curve.vertex_count() == 2
    assert segment_curve.edge_lengths().shape == (1,)


def test_curve_orientation():
    clockwise = [[0.0, 0.0], [0.0, 1.0], [1.0, 1.0], [1.0, 0.0]]
    curve = DiscreteCurve(clockwise)
    assert curve.signed_area() == pytest.approx(1.0)
    assert curve.vertices[0].tolist() == [0.0, 0.0]
    assert curve.vertices[1].tolist() == [1.0, 0.0]

    with pytest.raises(ValueError):
        curve.vertices[0, 0] = 3.0


def test_curve_measures():
    curve = square(2.0)
    assert curve.length() == pytest.approx(8.0)
    assert curve.signed_area() == pytest.approx(4.0)
    assert curve.centroid() == pytest.approx([0.0, 0.0])
    assert curve.diameter() == pytest.approx(2.0 * np.sqrt(2.0))
    low, high = curve.bounding_box()
    assert low.tolist() == [-1.0, -1.0]
    assert high.tolist() == [1.0, 1.0]

    doubled = curve.covered(2)
    assert doubled.vertex_count() == 8
    assert doubled.length() == pytest.approx(16.0)
    assert doubled.signed_area() == pytest.approx(8.0)
    with pytest.raises(ValueError):
        curve.covered(0)


def test_circle_geometry(unit_circle):
    geometry = compute_geometry(unit_circle)
    assert np.max(np.abs(geometry.curvature - 1.0)) < 1e-3
    assert geometry.length == pytest.approx(2.0 * np.pi, rel=1e-4)
    assert np.sum(geometry.dual_lengths) == pytest.approx(geometry.length)
    # inner normal of the unit circle is -x at the vertices
    assert np.max(np.abs(geometry.normals + unit_circle.vertices)) < 1e-12
    assert geometry.total_turning == pytest.approx(2.0 * np.pi)
    total = float(np.sum(geometry.curvature * geometry.dual_lengths))
    assert total == pytest.approx(2.0 * np.pi, rel=1e-3)

    large = compute_geometry(circle(2.0, 256))
    assert np.max(np.abs(large.curvature - 0.5)) < 1e-3


def test_circle_curvature_convergence():
    errors = []
    for n in (32, 64, 128):
        curve = DiscreteCurve(ellipse(1.0, 1.0, n).vertices)
        geometry = compute_geometry(curve)
        errors.append(np.max(np.abs(geometry.curvature - 1.0)))
    # circumscribed circles are exact on regular polygons
    assert max(errors) < 1e-12

    # on a smoothly sampled ellipse the error drops at second order
    errors = []
    for n in (128, 256, 512):
        angles = 2.0 * np.pi * np.arange(n) / n
        exact = 2.0 / (
                4.0 * np.sin(angles)**2 + np.cos(angles)**2)**1.5
        geometry = compute_geometry(ellipse(2.0, 1.0, n))
        errors.append(np.max(np.abs(geometry.curvature - exact)))
    assert errors[1] < errors[0] / 3.0
    assert errors[2] < errors[1] / 3.0


def test_square_geometry():
    curve = square(2.0, subdivisions=2)
    geometry = compute_geometry(curve)
    midpoints = geometry.curvature[1::2]
    assert np.all(midpoints == 0.0)
    assert geometry.total_turning == pytest.approx(2.0 * np.pi)
    assert np.sum(geometry.dual_lengths) == pytest.approx(8.0)


def test_open_curve_geometry():
    curve = segment(6.0, 121)
    geometry = compute_geometry(curve)
    assert np.all(geometry.curvature == 0.0)
    assert np.sum(geometry.dual_lengths) == pytest.approx(12.0)
    assert geometry.tangents[0] == pytest.approx([1.0, 0.0])
    assert geometry.tangents[-1] == pytest.approx([1.0, 0.0])


def test_geometry_equivariance():
    curve = ellipse(2.0, 1.0, 128)
    geometry = compute_geometry(curve)
    motion = Isometry(0.7, (3.0, -2.0))
    moved = compute_geometry(transform(curve, motion))
    assert np.max(np.abs(moved.curvature - geometry.curvature)) < 1e-10
    assert np.max(np.abs(moved.dual_lengths - geometry.dual_lengths)) < 1e-12
    rotated = geometry.normals @ motion.rotation().T
    assert np.max(np.abs(moved.normals - rotated)) < 1e-12

    scaled = compute_geometry(transform(curve, Isometry(), 3.0))
    assert np.max(np.abs(scaled.curvature - geometry.curvature / 3.0)) < 1e-12
    assert scaled.dual_lengths == pytest.approx(3.0 * geometry.dual_lengths)


def test_transform(unit_circle):
    same = transform(unit_circle, Isometry.identity())
    assert np.array_equal(same.vertices, unit_circle.vertices)

    moved = transform(
            circle(1.0, 256, center=(1.0, 0.0)),
            Isometry(0.5 * np.pi), 2.0)
    assert moved.centroid() == pytest.approx([0.0, 2.0], abs=1e-12)
    geometry = compute_geometry(moved)
    assert np.max(np.abs(geometry.curvature - 0.5)) < 1e-3

    curve = rounded_square()
    assert transform(curve, Isometry(1.0, (4.0, 5.0)), 0.3).length() == (
            pytest.approx(0.3 * curve.length()))

    with pytest.raises(ValueError):
        transform(curve, Isometry(), 0.0)


def test_isometry_inverse():
    motion = Isometry(1.3, (0.5, -4.0))
    points = np.array([[1.0, 2.0], [-3.0, 0.5]])
    back = motion.inverse().apply(motion.apply(points))
    assert back == pytest.approx(points)


def test_sphere_geometry():
    assert sphere_geometry(SphereState(1, 1.0)) == pytest.approx(
            (1.0, 2.0 * np.pi))
    assert sphere_geometry(SphereState(2, 2.0)) == pytest.approx(
            (1.0, 16.0 * np.pi))
    assert sphere_geometry(SphereState(2, np.sqrt(2.0)))[0] == (
            pytest.approx(np.sqrt(2.0)))
    assert sphere_second_fundamental_norm(SphereState(2, 1.0)) == (
            pytest.approx(np.sqrt(2.0)))

    with pytest.raises(ValueError):
        SphereState(0, 1.0)
    with pytest.raises(ValueError):
        SphereState(2, -1.0)
    with pytest.raises(ValueError):
        SphereState(2, 1.0, (0.0, 0.0))


def test_distances(unit_circle):
    assert distance_to_unit_circle(unit_circle) < 1e-4
    assert distance_to_unit_circle(circle(1.5, 256)) == pytest.approx(
            0.5, abs=1e-3)
    assert distance_to_unit_circle(
            circle(1.0, 256, center=(5.0, 0.0))) > 3.0

    line = segment(6.0, 121, angle=0.3)
    assert distance_to_line_through_origin(line) < 1e-12
    assert distance_to_line_through_origin(unit_circle) > 0.9

    shifted = transform(unit_circle, Isometry(0.0, (0.1, 0.0)))
    assert hausdorff_distance(unit_circle, shifted) == pytest.approx(
            0.1, abs=1e-3)
    assert winding_number(unit_circle, np.zeros(2)) == 1
    assert winding_number(unit_circle.covered(2), np.zeros(2)) == 2
    assert winding_number(unit_circle, np.array([3.0, 0.0])) == 0


def test_curve_quadrature(unit_circle):
    rule = CurveQuadrature(unit_circle, 4)
    assert rule.points.shape == (1024, 2)
    assert np.sum(rule.weights) == pytest.approx(unit_circle.length())

    # linear functions are integrated exactly along the polygon
    values = rule.points[:, 0] + 2.0 * rule.points[:, 1]
    assert rule.integrate(values) == pytest.approx(0.0, abs=1e-12)

    nodal = rule.interpolate(np.arange(256.0))
    assert nodal.shape == (1024,)
    assert nodal[0] == pytest.approx(rule.parameters[0])

    with pytest.raises(ValueError):
        CurveQuadrature(unit_circle, 11)


def test_hermite_rule():
    points, weights = hermite_rule((1.0, -1.0), 0.5, 20)
    assert points.shape == (400, 2)
    squared = np.sum((points - np.array([1.0, -1.0]))**2, axis=1)
    integral = np.dot(weights, np.exp(-squared / 0.25))
    assert integral == pytest.approx(np.pi * 0.25, rel=1e-12)

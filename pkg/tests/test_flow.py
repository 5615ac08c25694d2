import numpy as np
import pytest

from gaussdens.definitions.errors import StepRejected
from gaussdens.definitions.geometry import SphereState
from gaussdens.definitions.kernels import GaussianMixture, KernelParams
from gaussdens.definitions.trajectory import Frame, Trajectory
from gaussdens.density.huisken import huisken_functional
from gaussdens.flow.curve_flow import (
        estimate_singular_time, evolve, mcf_step, redistribute, step_metrics,
        StopRule)
from gaussdens.flow.hamilton import (
        hamilton_decomposition, hamilton_functional)
from gaussdens.flow.sphere_flow import (
        sphere_evolve, sphere_extinction_time, sphere_trajectory)
from gaussdens.geometry.curves import compute_geometry
from gaussdens.geometry.shapes import circle, ellipse, segment, square


def _mean_radius(frame):
    return float(np.mean(np.hypot(*frame.curve().vertices.T)))


def test_step_of_circle(unit_circle):
    edge = float(unit_circle.edge_lengths()[0])
    dt = 0.25 * edge**2
    stepped = mcf_step(unit_circle, dt)
    radii = np.hypot(*stepped.vertices.T)
    assert np.max(np.abs(radii - np.sqrt(1.0 - 2.0 * dt))) < 1e-6
    # a regular polygon stays regular and needs no resampling
    assert stepped.vertex_count() == 256
    assert np.ptp(stepped.edge_lengths()) < 1e-12

    assert mcf_step(unit_circle, 0.0) is unit_circle


def test_step_validation(unit_circle):
    edge = float(unit_circle.edge_lengths()[0])
    with pytest.raises(ValueError):
        mcf_step(unit_circle, 0.5 * edge**2)
    assert mcf_step(unit_circle, 0.5 * edge**2, cfl=1.0).vertex_count() == 256
    with pytest.raises(ValueError):
        mcf_step(unit_circle, -1e-6)
    with pytest.raises(ValueError):
        mcf_step(segment(1.0, 11), 1e-6)


def test_step_keeps_convexity():
    curve = redistribute(ellipse(2.0, 1.0, 256))
    for _ in range(10):
        dt = 0.25 * float(np.min(curve.edge_lengths()))**2
        curve = mcf_step(curve, dt)
    geometry = compute_geometry(curve)
    assert np.all(geometry.curvature > 0.0)
    assert curve.length() < ellipse(2.0, 1.0, 256).length()


def test_area_rate_of_square():
    # closed curves lose area at rate 2 pi under the flow
    curve = square(2.0, 16)
    trajectory = evolve(curve, StopRule(max_time=0.05))
    area = trajectory.final().curve().signed_area()
    assert trajectory.final().t == pytest.approx(0.05)
    assert area == pytest.approx(4.0 - 2.0 * np.pi * 0.05, rel=2e-2)
    assert trajectory.estimate is None
    assert not trajectory.flagged


def test_redistribute():
    uniform = circle(1.0, 64)
    assert redistribute(uniform) is uniform

    curve = ellipse(2.0, 1.0, 256)
    resampled = redistribute(curve)
    lengths = resampled.edge_lengths()
    assert np.max(lengths) < 1.01 * np.min(lengths)
    assert resampled.vertices[0] == pytest.approx(curve.vertices[0])
    assert resampled.length() == pytest.approx(curve.length(), rel=1e-4)


def test_step_metrics():
    for curve in (circle(1.0, 64), ellipse(2.0, 1.0, 128), square(2.0, 16)):
        max_k, min_edge, length = step_metrics(curve.vertices)
        geometry = compute_geometry(curve)
        assert max_k == pytest.approx(geometry.max_curvature(), rel=1e-12)
        assert min_edge == pytest.approx(
                float(np.min(geometry.edge_lengths)), rel=1e-12)
        assert length == pytest.approx(curve.length(), rel=1e-12)


def test_recorded_frames_match_their_curves(ellipse_flow):
    for frame in ellipse_flow.frames[::10] + [ellipse_flow.final()]:
        geometry = compute_geometry(frame.curve())
        assert frame.max_curvature == pytest.approx(
                geometry.max_curvature(), rel=1e-12)
        assert frame.min_edge == pytest.approx(
                float(np.min(geometry.edge_lengths)), rel=1e-12)
        assert frame.curve().signed_area() > 0.0

    step = ellipse_flow.steps[-1]
    assert step.t == ellipse_flow.final().t
    assert step.max_k == ellipse_flow.final().max_curvature


def test_evolve_needs_closed_curve():
    with pytest.raises(ValueError):
        evolve(segment(1.0, 11))


def test_stop_rule():
    with pytest.raises(ValueError):
        StopRule(curvature=0.0)
    with pytest.raises(ValueError):
        StopRule(length_fraction=1.0)
    with pytest.raises(ValueError):
        StopRule(max_steps=0)
    with pytest.raises(ValueError):
        StopRule(max_time=-1.0)
    with pytest.raises(ValueError):
        evolve(circle(1.0, 16), cfl=1.5)


def test_step_limit(unit_circle):
    trajectory = evolve(unit_circle, StopRule(max_steps=5))
    assert trajectory.flagged
    assert trajectory.reason == 'step limit reached'
    assert len(trajectory.steps) == 5


def test_step_rejected():
    error = StepRejected(0.125, 'an edge collapsed')
    assert error.dt == 0.125
    assert 'an edge collapsed' in str(error)
    assert isinstance(error, RuntimeError)


def test_singular_time_fit():
    times = np.linspace(0.0, 0.9, 30)
    frames = [
            Frame(t, circle(1.0, 8), 1.5 / np.sqrt(2.0 * (1.0 - t)), 0.1)
            for t in times]
    estimate = estimate_singular_time(frames)
    assert estimate.value == pytest.approx(1.0)
    assert estimate.type_i_constant == pytest.approx(1.5)
    assert estimate.uncertainty < 1e-10

    assert estimate_singular_time(frames[:2]) is None
    calming = [Frame(t, circle(1.0, 8), 1.0 / (1.0 + t), 0.1) for t in times]
    assert estimate_singular_time(calming) is None


def test_circle_flow(circle_flow):
    estimate = circle_flow.estimate
    assert not circle_flow.flagged
    assert estimate.value == pytest.approx(0.5, abs=1e-3)
    assert estimate.type_i_constant == pytest.approx(1.0, abs=1e-2)
    assert estimate.uncertainty < 1e-3

    frame = circle_flow.frame_at(0.25)
    assert _mean_radius(frame) == pytest.approx(np.sqrt(0.5), abs=1e-3)

    times = circle_flow.times()
    assert times[0] == 0.0
    assert np.all(np.diff(times) > 0.0)
    final = circle_flow.final()
    assert final.max_curvature * 2.0 > 100.0


def test_large_circle_flow(large_circle_flow):
    assert large_circle_flow.singular_time() == pytest.approx(2.0, abs=4e-3)


def test_circle_tracks_sphere(circle_flow):
    sphere = SphereState(1, 1.0)
    for frame in circle_flow.frames:
        if frame.t > 0.45:
            break
        exact = sphere_evolve(sphere, frame.t).radius
        assert _mean_radius(frame) == pytest.approx(exact, abs=1e-3)


def test_ellipse_flow(ellipse_flow):
    # an embedded curve enclosing area A vanishes at A / (2 pi)
    singular_time = ellipse_flow.singular_time()
    assert 0.5 < singular_time <= 1.0 + 1e-2
    assert singular_time == pytest.approx(1.0, abs=1e-2)
    assert not ellipse_flow.flagged
    ellipse_flow.frame_at(0.1)

    lengths = np.array([step.length for step in ellipse_flow.steps])
    assert np.all(np.diff(lengths) <= 1e-9)


def test_type_i_lower_bound(circle_flow, ellipse_flow):
    for trajectory in (circle_flow, ellipse_flow):
        singular_time = trajectory.singular_time()
        for frame in trajectory.frames:
            if singular_time - frame.t < 1e-2:
                break
            rate = frame.max_curvature**2 * 2.0 * (singular_time - frame.t)
            assert rate >= 0.99


def test_huisken_monotonicity(ellipse_flow):
    clock = 1.2
    values = [
            huisken_functional(
                frame.curve(), KernelParams([0.3, 0.1], clock - frame.t))
            for frame in ellipse_flow.frames if frame.t < 0.9]
    assert np.all(np.diff(values) <= 1e-6)


def test_concentric_circles_stay_apart():
    record = [0.1, 0.2, 0.3, 0.4, 0.45]
    stop = StopRule(max_time=0.45)
    inner = evolve(circle(1.0, 128), stop, record_times=record)
    outer = evolve(circle(2.0, 128), stop, record_times=record)
    for t in record:
        assert _mean_radius(inner.frame_at(t)) < _mean_radius(
                outer.frame_at(t))


def test_sphere_flow():
    unit = SphereState(1, 1.0)
    assert sphere_evolve(unit, 0.375).radius == pytest.approx(0.5)
    assert sphere_evolve(unit, 0.0) is unit
    assert sphere_extinction_time(SphereState(2, 1.0)) == 0.25
    assert sphere_extinction_time(SphereState(3, 2.0)) == pytest.approx(
            4.0 / 6.0)

    moved = SphereState(2, 1.0, (1.0, 2.0, 3.0))
    assert sphere_evolve(moved, 0.1).center.tolist() == [1.0, 2.0, 3.0]

    with pytest.raises(ValueError):
        sphere_evolve(unit, 0.5)
    with pytest.raises(ValueError):
        sphere_evolve(unit, -0.1)


def test_sphere_trajectory():
    trajectory = sphere_trajectory(SphereState(2, 1.0), [0.1, 0.2, 0.05])
    assert trajectory.times().tolist() == [0.0, 0.05, 0.1, 0.2]
    assert trajectory.singular_time() == 0.25
    assert trajectory.estimate.type_i_constant == 1.0
    frame = trajectory.frame_at(0.2)
    assert frame.state.radius == pytest.approx(np.sqrt(0.2))
    assert frame.max_curvature == pytest.approx(np.sqrt(2.0 / 0.2))
    with pytest.raises(TypeError):
        frame.curve()


def test_trajectory_validation(unit_circle):
    with pytest.raises(ValueError):
        Trajectory([])
    with pytest.raises(ValueError):
        Trajectory([Frame(0.1, unit_circle, 1.0, 0.1)])
    with pytest.raises(ValueError):
        Trajectory([
                Frame(0.0, unit_circle, 1.0, 0.1),
                Frame(0.0, unit_circle, 1.0, 0.1)])

    trajectory = Trajectory([Frame(0.0, unit_circle, 1.0, 0.1)])
    with pytest.raises(RuntimeError):
        trajectory.singular_time()
    with pytest.raises(KeyError):
        trajectory.frame_at(0.5)


def test_hamilton_single_kernel():
    curve = ellipse(2.0, 1.0, 256)
    kernel = GaussianMixture.single(KernelParams([0.5, 0.2], 1.5))
    terms = hamilton_decomposition(curve, kernel, 1.5, 0.3)
    assert abs(terms.term2) < 1e-12
    assert terms.term1 < 0.0
    assert terms.total == terms.term1 + terms.term2


def test_hamilton_on_shrinking_circle(unit_circle):
    kernel = GaussianMixture.single(KernelParams([0.0, 0.0], 0.5))
    terms = hamilton_decomposition(unit_circle, kernel, 0.5, 0.0)
    assert abs(terms.term1) < 1e-7
    assert abs(terms.term2) < 1e-12
    # sqrt(2 tau) times the planar kernel is the Huisken weight over
    # sqrt(2 pi)
    value = hamilton_functional(unit_circle, kernel, 0.5, 0.0)
    huisken = huisken_functional(unit_circle, KernelParams([0, 0], 0.5))
    assert value == pytest.approx(huisken / np.sqrt(2.0 * np.pi), rel=1e-12)


def test_hamilton_derivative():
    mixture = GaussianMixture([[1.5, 0.3], [-0.5, 0.8]], [0.6, 0.4], 1.5)
    clock, t, dt = 1.5, 0.2, 1e-5
    start = redistribute(ellipse(2.0, 1.0, 1024))
    middle = mcf_step(start, dt, redistribute_vertices=False)
    end = mcf_step(middle, dt, redistribute_vertices=False)

    before = hamilton_functional(start, mixture, clock, t)
    after = hamilton_functional(end, mixture, clock, t + 2.0 * dt)
    rate = (after - before) / (2.0 * dt)

    terms = hamilton_decomposition(middle, mixture, clock, t + dt)
    assert terms.term1 <= 0.0
    assert terms.term2 <= 0.0
    assert terms.total == pytest.approx(rate, rel=1e-3)


def test_hamilton_validation(unit_circle):
    mixture = GaussianMixture([[0.0, 0.0]], [1.0], 1.5)
    with pytest.raises(ValueError):
        hamilton_functional(unit_circle, mixture, 1.4, 0.0)
    with pytest.raises(ValueError):
        hamilton_functional(unit_circle, mixture, 1.5, 1.5)
    with pytest.raises(ValueError):
        hamilton_decomposition(
                unit_circle, GaussianMixture([[0.0, 0.0, 0.0]], [1.0], 1.5),
                1.5, 0.0)

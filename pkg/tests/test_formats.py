import json

import numpy as np
import pytest

from gaussdens.definitions.errors import ValidationError
from gaussdens.definitions.geometry import DiscreteCurve, SphereState
from gaussdens.definitions.kernels import GaussianMixture
from gaussdens.definitions.reports import DensityReport
from gaussdens.definitions.trajectory import Frame, StepDiagnostics
from gaussdens.flow.curve_flow import evolve, StopRule
from gaussdens.formats.files import (
        read_curve, read_mixture, read_table, read_trajectory,
        write_curve, write_diagnostics, write_mixture, write_profile,
        write_report, write_rescaled_frames, write_trajectory)
from gaussdens.formats.serialization import deserialize, serialize
from gaussdens.formats.validation import parse_json, validate_json
from gaussdens.geometry.shapes import circle, segment
from gaussdens.singularity.rescaling import rescale_transform


def test_validate_curve():
    validate_json('Curve', {'n': 1, 'vertices': [[0, 0], [1, 0], [0, 1]]})
    validate_json('Curve', {
            'n': 1, 'vertices': [[0, 0], [1, 0]], 'closed': False})

    with pytest.raises(ValidationError):
        validate_json('Curve', {'vertices': [[0, 0], [1, 0], [0, 1]]})
    with pytest.raises(ValidationError):
        validate_json('Curve', {'n': 2, 'vertices': [[0, 0], [1, 0]]})
    with pytest.raises(ValidationError):
        validate_json('Curve', {'n': 1, 'vertices': [[0, 0, 0], [1, 0, 0]]})
    with pytest.raises(ValidationError):
        validate_json('Curve', {'n': 1, 'vertices': [[0, 'a'], [1, 0]]})
    with pytest.raises(KeyError):
        validate_json('Polygon', {})


def test_validate_mixture():
    validate_json('Mixture', {
            'tau': 0.5, 'ambient': 2, 'atoms': [{'c': [0, 0], 'w': 1}]})

    with pytest.raises(ValidationError):
        validate_json('Mixture', {
                'tau': 0.0, 'ambient': 2, 'atoms': [{'c': [0, 0], 'w': 1}]})
    with pytest.raises(ValidationError):
        validate_json('Mixture', {'tau': 0.5, 'ambient': 2, 'atoms': []})
    with pytest.raises(ValidationError):
        validate_json('Mixture', {
                'tau': 0.5, 'ambient': 2, 'atoms': [{'c': [0, 0], 'w': 0}]})


def test_parse_json():
    assert parse_json('Sphere', '{"n": 2, "radius": 1.5}') == {
            'n': 2, 'radius': 1.5}
    with pytest.raises(ValidationError):
        parse_json('Sphere', '{"n": 2, "radius": ')
    with pytest.raises(ValidationError):
        parse_json('Sphere', '[1, 2]')
    with pytest.raises(ValidationError):
        parse_json('Sphere', '{"n": 0, "radius": 1.0}')


def test_serialize_curve():
    curve = DiscreteCurve([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]])
    assert serialize(curve) == {
            'n': 1, 'vertices': [[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]]}
    assert serialize(segment(1.0, 3))['closed'] is False

    user_input = {'n': 1, 'vertices': [[0, 0], [1, 0], [1, 1], [0, 1]]}
    square = deserialize(DiscreteCurve, user_input)
    assert square.closed
    assert square.signed_area() == pytest.approx(1.0)

    with pytest.raises(ValueError):
        deserialize(DiscreteCurve, {'n': 1, 'vertices': [[0, 0], [0, 0]]})


def test_serialize_sphere_and_mixture():
    sphere = SphereState(2, 1.5, (1.0, 0.0, 0.0))
    data = serialize(sphere)
    assert data == {'n': 2, 'radius': 1.5, 'center': [1.0, 0.0, 0.0]}
    assert deserialize(SphereState, data).radius == 1.5

    mixture = GaussianMixture([[0.0, 1.0], [2.0, 0.0]], [0.25, 0.75], 0.5)
    data = serialize(mixture)
    assert data['ambient'] == 2
    assert data['atoms'][1] == {'c': [2.0, 0.0], 'w': 0.75}
    back = deserialize(GaussianMixture, data)
    assert np.array_equal(back.centers, mixture.centers)

    data['ambient'] = 3
    with pytest.raises(ValueError):
        deserialize(GaussianMixture, data)


def test_serialize_reports():
    report = DensityReport(
            1.25, [0.5, -0.5], 0.3, residual=0.01, iterations=12,
            starts=26, converged=True, quadrature_error=1e-12,
            bound=np.inf)
    data = serialize(report)
    assert data['value'] == 1.25
    assert data['p_star'] == [0.5, -0.5]
    assert data['tau_star'] == 0.3
    assert data['diagnostics']['starts'] == 26
    assert data['diagnostics']['bound'] is None
    json.dumps(data)

    frame = rescale_transform(circle(1.0, 16), 0.25, 0.5, (0.0, 0.0))
    data = serialize(frame)
    validate_json('Curve', data)
    assert data['scale'] == pytest.approx(np.sqrt(2.0))
    assert data['s'] == pytest.approx(0.5 * np.log(4.0))


def test_curve_files(tmp_path):
    curve = circle(1.0, 32)
    path = tmp_path / 'curve.json'
    write_curve(path, curve)
    assert np.array_equal(read_curve(path).vertices, curve.vertices)

    path.write_text('{"n": 1, "vertices": [[0, 0]]}')
    with pytest.raises(ValidationError):
        read_curve(path)
    with pytest.raises(FileNotFoundError):
        read_curve(tmp_path / 'missing.json')


def test_mixture_files(tmp_path):
    mixture = GaussianMixture([[0.0, 0.0, 1.0]], [1.0], 2.0)
    path = tmp_path / 'mixture.json'
    write_mixture(path, mixture)
    back = read_mixture(path)
    assert back.ambient == 3
    assert back.tau == 2.0

    path.write_text('{"tau": 1.0, "atoms": []}')
    with pytest.raises(ValidationError):
        read_mixture(path)


def test_trajectory_files(tmp_path):
    trajectory = evolve(circle(1.0, 32), StopRule(max_time=0.05))
    path = tmp_path / 'trajectory.jsonl'
    write_trajectory(path, trajectory)

    lines = path.read_text().splitlines()
    assert len(lines) == len(trajectory.frames)
    back = read_trajectory(path)
    assert back.estimate is None
    assert back.times().tolist() == trajectory.times().tolist()
    assert np.array_equal(
            back.final().curve().vertices, trajectory.final().curve().vertices)
    assert back.final().max_curvature == pytest.approx(
            trajectory.final().max_curvature)

    path.write_text('{"t": -1.0, "vertices": [[0, 0], [1, 0], [0, 1]]}\n')
    with pytest.raises(ValidationError):
        read_trajectory(path)


def test_tables(tmp_path):
    steps = [StepDiagnostics(0.1, 0.1, 1.5, 0.01, 6.2)]
    path = tmp_path / 'diagnostics.csv'
    write_diagnostics(path, steps)
    assert path.read_text().splitlines()[0] == 't,dt,max_k,min_edge,length'
    assert read_table(path) == [[0.1, 0.1, 1.5, 0.01, 6.2]]

    reports = [
            DensityReport(1.1, [0.1, 0.2], 0.5),
            DensityReport(1.0 / 3.0, [0.0, 0.0], 2.0)]
    path = tmp_path / 'profile.csv'
    write_profile(path, reports)
    assert read_table(path) == [[0.5, 1.1, 0.1, 0.2], [2.0, 1.0 / 3.0, 0, 0]]


def test_report_files(tmp_path):
    report = DensityReport(1.5, [0.0, 0.0], 0.5)
    path = tmp_path / 'density.json'
    write_report(path, report)
    assert json.loads(path.read_text())['value'] == 1.5

    frames = [
            rescale_transform(circle(1.0, 16), t, 0.5, (0.0, 0.0))
            for t in (0.1, 0.2)]
    paths = write_rescaled_frames(tmp_path, frames)
    names = [path.name for path in paths]
    assert names == ['rescaled_000.json', 'rescaled_001.json']
    assert read_curve(paths[1]).vertex_count() == 16


def test_frame_serialization(unit_circle):
    frame = Frame(0.5, unit_circle, 1.0, 0.02)
    data = serialize(frame)
    assert data['t'] == 0.5
    back = deserialize(Frame, data)
    assert back.min_edge == pytest.approx(unit_circle.edge_lengths()[0])

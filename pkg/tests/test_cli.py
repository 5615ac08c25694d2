import json
from pathlib import Path

import numpy as np
import pytest
import yatiml

from gaussdens.cli import commands
from gaussdens.cli.main import main
from gaussdens.cli.settings import (
        DensitySettings, ExperimentConfig, FlowSettings, load_config)
from gaussdens.cli.verification import (
        check_breathers, check_endpoints, check_extremality, check_hamilton,
        check_li_yau, check_mass, check_monotonicity, check_nu,
        check_rescaling, check_spheres, format_table, PropertyResult,
        Trajectories)
from gaussdens.definitions.trajectory import Trajectory
from gaussdens.density.maximization import SearchOptions
from gaussdens.formats.files import read_table, read_trajectory


def test_flow_settings():
    settings = FlowSettings()
    assert settings.n == 256
    assert settings.stop_rule(0.1).max_time == 0.1

    with pytest.raises(ValueError):
        FlowSettings(n=4)
    with pytest.raises(ValueError):
        FlowSettings(n=10000)
    with pytest.raises(ValueError):
        FlowSettings(cfl=0.0)
    with pytest.raises(ValueError):
        FlowSettings(cfl=1.5)
    with pytest.raises(ValueError):
        FlowSettings(k_stop=-1.0)
    with pytest.raises(ValueError):
        FlowSettings(frame_spacing=0.0)


def test_density_settings():
    options = DensitySettings(restarts=3, grid=2).search_options(7)
    assert options.restarts == 3
    assert options.grid == 2
    assert options.seed == 7

    with pytest.raises(ValueError):
        DensitySettings(restarts=-1)
    with pytest.raises(ValueError):
        DensitySettings(order=0)
    with pytest.raises(ValueError):
        DensitySettings(grid=0)
    with pytest.raises(ValueError):
        DensitySettings(profile_points=1)


def test_experiment_config():
    config = ExperimentConfig()
    assert config.command == 'flow'
    assert config.flow.cfl == 0.25
    assert config.density.profile_points == 41

    with pytest.raises(ValueError):
        ExperimentConfig(command='plot')
    with pytest.raises(ValueError):
        ExperimentConfig(shape='triangle')
    with pytest.raises(ValueError):
        ExperimentConfig(radius=0.0)
    with pytest.raises(ValueError):
        ExperimentConfig(tau=-0.5)
    with pytest.raises(ValueError):
        ExperimentConfig(tol_scale=0.0)
    with pytest.raises(ValueError):
        ExperimentConfig(loglevel='verbose')


def test_load_config():
    config = load_config(
            'command: density\n'
            'shape: ellipse\n'
            'a: 3.0\n'
            'tau: 0.25\n'
            'out: results\n'
            'density:\n'
            '  restarts: 4\n')
    assert config.command == 'density'
    assert config.a == 3.0
    assert config.tau == 0.25
    assert config.out == Path('results')
    assert config.density.restarts == 4
    assert config.density.order == 4
    assert config.flow.n == 256

    with pytest.raises(yatiml.RecognitionError):
        load_config('flow:\n  steps: 10\n')


def test_missing_input(tmp_path, caplog):
    missing = tmp_path / 'missing.json'
    code = main(['flow', '--input', str(missing), '--out', str(tmp_path)])
    assert code == 2
    assert f'Input file not found: {missing}' in caplog.text


def test_missing_config(tmp_path, caplog):
    missing = tmp_path / 'missing.yaml'
    assert main(['flow', '--config', str(missing)]) == 2
    assert f'Configuration file not found: {missing}' in caplog.text


def test_invalid_settings(tmp_path, caplog):
    config = tmp_path / 'config.yaml'
    config.write_text('flow:\n  cfl: 2.0\n')
    assert main(['flow', '--config', str(config)]) == 2
    assert 'Invalid configuration' in caplog.text

    assert main(['density', '--tau', '-1.0', '--out', str(tmp_path)]) == 2


def test_invalid_input(tmp_path, caplog):
    curve = tmp_path / 'curve.json'
    curve.write_text('{"n": 1, "vertices": [[0, 0]]}')
    code = main(['flow', '--input', str(curve), '--out', str(tmp_path)])
    assert code == 2
    assert 'Invalid input' in caplog.text


def test_flow_command(tmp_path):
    code = main([
            'flow', '--shape', 'circle', '--n', '64',
            '--out', str(tmp_path), '--loglevel', 'warning'])
    assert code == 0

    with open(tmp_path / 'flow.json', 'r') as f:
        summary = json.load(f)
    assert summary['estimated_T'] == pytest.approx(0.5, abs=5e-3)
    assert summary['typeI_constant'] == pytest.approx(1.0, abs=2e-2)
    assert not summary['flagged']

    trajectory = read_trajectory(tmp_path / 'trajectory.jsonl')
    assert len(trajectory.frames) == summary['frames']
    assert trajectory.final().t == summary['final_t']

    steps = read_table(tmp_path / 'diagnostics.csv')
    assert len(steps) == summary['steps']
    assert np.all(np.diff([row[0] for row in steps]) > 0.0)


def test_flow_from_file(tmp_path):
    curve = tmp_path / 'curve.json'
    vertices = [
            [np.cos(a), np.sin(a)]
            for a in np.linspace(0.0, 2.0 * np.pi, 32, endpoint=False)]
    curve.write_text(json.dumps({'n': 1, 'vertices': vertices}))

    out = tmp_path / 'flow'
    assert main(['flow', '--input', str(curve), '--out', str(out)]) == 0
    with open(out / 'flow.json', 'r') as f:
        assert json.load(f)['estimated_T'] == pytest.approx(0.5, abs=1e-2)


def test_density_command(tmp_path):
    code = main([
            'density', '--shape', 'circle', '--n', '64', '--tau', '0.5',
            '--out', str(tmp_path)])
    assert code == 0

    with open(tmp_path / 'density.json', 'r') as f:
        report = json.load(f)
    assert report['value'] == pytest.approx(
            np.sqrt(2.0 * np.pi / np.e), rel=2e-3)
    assert report['tau_star'] == 0.5
    assert np.hypot(*report['p_star']) < 1e-6
    assert report['diagnostics']['starts'] == 26


def test_density_profile(tmp_path):
    config = tmp_path / 'config.yaml'
    config.write_text(
            'command: density\n'
            'flow:\n'
            '  n: 32\n'
            'density:\n'
            '  profile_points: 5\n')

    tables = list()
    for run in ('first', 'second'):
        out = tmp_path / run
        args = ['density', '--config', str(config), '--out', str(out)]
        assert main(args) == 0
        tables.append(read_table(out / 'profile.csv'))
        assert (out / 'nu.json').exists()

    assert len(tables[0]) == 5
    assert tables[0] == tables[1]
    taus = [row[0] for row in tables[0]]
    assert np.all(np.diff(taus) > 0.0)

    with open(tmp_path / 'first' / 'nu.json', 'r') as f:
        best = json.load(f)
    assert best['value'] >= max(row[1] for row in tables[0]) - 1e-9

    # the 32-gon shrinks to a point at its center
    with open(tmp_path / 'first' / 'Sigma.json', 'r') as f:
        limit = json.load(f)
    with open(tmp_path / 'first' / 'theta.json', 'r') as f:
        theta = json.load(f)
    assert limit['value'] == pytest.approx(
            np.sqrt(2.0 * np.pi / np.e), rel=2e-2)
    assert theta['value'] == pytest.approx(limit['value'], rel=5e-3)
    assert not limit['flagged']


def test_property_result():
    passed = PropertyResult('check', 'anchor', 1e-13, 1e-12)
    assert passed.passed
    failed = PropertyResult('check', 'anchor', 1e-11, 1e-12)
    assert not failed.passed
    forced = PropertyResult('check', 'anchor', 0.0, 1.0, passed=False)
    assert not forced.passed

    table = format_table([passed, failed]).splitlines()
    assert len(table) == 2
    assert 'PASS' in table[0]
    assert 'FAIL' in table[1]


def test_quick_checks(rng):
    for result in (
            check_spheres(1.0), check_mass(rng, 1.0),
            check_li_yau(rng, 1.0, trials=100)):
        assert result.passed, result


def test_analyze_command(tmp_path):
    code = main([
            'analyze', '--shape', 'circle', '--n', '64',
            '--out', str(tmp_path)])
    assert code == 0

    with open(tmp_path / 'singularity.json', 'r') as f:
        report = json.load(f)
    assert report['type'] == 'TypeI'
    assert report['limit_match'] == 'UnitCircle'
    assert report['Sigma'] == pytest.approx(
            np.sqrt(2.0 * np.pi / np.e), rel=1e-2)
    assert not report['flagged']

    with open(tmp_path / 'theta.json', 'r') as f:
        theta = json.load(f)
    assert theta['value'] == pytest.approx(report['Sigma'], rel=5e-3)
    assert len(theta['times']) == 3

    rescaled = sorted((tmp_path / 'rescaled').iterdir())
    assert len(rescaled) == len(report['center_path'])
    assert (tmp_path / 'flow.json').exists()


def test_verify_command(tmp_path, monkeypatch, capsys):
    passing = [PropertyResult('first', 'anchor', 0.0, 1.0)]
    monkeypatch.setattr(commands, 'run_battery', lambda config: passing)
    assert main(['verify', '--out', str(tmp_path)]) == 0
    assert 'first' in capsys.readouterr().out
    assert 'PASS' in (tmp_path / 'verify.txt').read_text()

    failing = passing + [PropertyResult('second', 'anchor', 2.0, 1.0)]
    monkeypatch.setattr(commands, 'run_battery', lambda config: failing)
    assert main(['verify', '--out', str(tmp_path)]) == 1
    lines = (tmp_path / 'verify.txt').read_text().splitlines()
    assert len(lines) == 2
    assert 'FAIL' in lines[1]


def test_monotonicity_checks(circle_flow, ellipse_flow):
    options = SearchOptions(grid=3)
    early = [
            Trajectory(
                [frame for frame in flow.frames if frame.t < end],
                flow.estimate)
            for flow, end in ((circle_flow, 0.45), (ellipse_flow, 0.3))]
    for trajectory in early:
        results = check_monotonicity(trajectory, options, 1.0)
        assert len(results) == 2
        for result in results:
            assert result.passed, result


def test_nu_checks(circle_flow):
    results = check_nu(circle_flow, SearchOptions(grid=3), 1.0)
    assert [result.name for result in results] == [
            'nu of the circle', 'nu monotonicity']
    for result in results:
        assert result.passed, result


def test_breather_checks(circle_flow, ellipse_flow, density, monkeypatch):
    trajectories = Trajectories(ExperimentConfig())
    monkeypatch.setattr(trajectories, 'circle', lambda: circle_flow)
    monkeypatch.setattr(trajectories, 'ellipse', lambda: ellipse_flow)
    circle_check, ellipse_check = check_breathers(
            trajectories, density, 1.0)
    assert circle_check.passed, circle_check
    assert ellipse_check.passed, ellipse_check
    assert ellipse_check.measured > 1e-2


def test_random_checks(rng):
    results = check_hamilton(rng, 1.0, samples=20)
    results.append(check_extremality(rng, SearchOptions(), 1.0, trials=5))
    for result in results:
        assert result.passed, result


def test_scale_checks():
    for result in (
            check_rescaling(SearchOptions(), 1.0),
            check_endpoints(SearchOptions(), 1.0)):
        assert result.passed, result

"""(De)Serialization of objects of various kinds to JSON."""
from typing import (
        Any, Callable, cast, Dict, Optional, Type, TypeVar, Union)

import numpy as np

from gaussdens.definitions.geometry import DiscreteCurve, SphereState
from gaussdens.definitions.kernels import GaussianMixture
from gaussdens.definitions.reports import (
        BreatherResult, DensityReport, LimitEstimate, SingularityReport)
from gaussdens.definitions.trajectory import Frame, RescaledFrame
from gaussdens.formats.definitions import JSON
from gaussdens.geometry.curves import compute_geometry


T = TypeVar('T')


Serializable = Union[
        BreatherResult, DensityReport, DiscreteCurve, Frame,
        GaussianMixture, LimitEstimate, RescaledFrame, SingularityReport,
        SphereState]


def _number(value: Optional[float]) -> Optional[float]:
    """Convert to a JSON number, with None for missing or NaN."""
    if value is None or not np.isfinite(value):
        return None
    return float(value)


def _points(array: Any) -> Any:
    return np.asarray(array, dtype=float).tolist()


# Geometry


def _serialize_curve(curve: DiscreteCurve) -> JSON:
    """Serialize a DiscreteCurve object to JSON."""
    result = {'n': 1, 'vertices': _points(curve.vertices)}   # type: JSON
    if not curve.closed:
        result['closed'] = False
    return result


def _deserialize_curve(user_input: JSON) -> DiscreteCurve:
    """Deserialize a DiscreteCurve object from JSON."""
    return DiscreteCurve(
            user_input['vertices'], user_input.get('closed', True))


def _serialize_sphere(sphere: SphereState) -> JSON:
    """Serialize a SphereState object to JSON."""
    return {
            'n': sphere.n,
            'radius': sphere.radius,
            'center': _points(sphere.center)}


def _deserialize_sphere(user_input: JSON) -> SphereState:
    """Deserialize a SphereState object from JSON."""
    return SphereState(
            user_input['n'], user_input['radius'], user_input.get('center'))


def _serialize_mixture(mixture: GaussianMixture) -> JSON:
    """Serialize a GaussianMixture object to JSON."""
    return {
            'tau': mixture.tau,
            'ambient': mixture.ambient,
            'atoms': [
                {'c': _points(center), 'w': weight}
                for center, weight in mixture.atoms()]}


def _deserialize_mixture(user_input: JSON) -> GaussianMixture:
    """Deserialize a GaussianMixture object from JSON."""
    centers = [atom['c'] for atom in user_input['atoms']]
    if any(len(center) != user_input['ambient'] for center in centers):
        raise ValueError(
                f'Atoms must have {user_input["ambient"]} coordinates')
    weights = [atom['w'] for atom in user_input['atoms']]
    return GaussianMixture(centers, weights, user_input['tau'])


# Flows


def _serialize_frame(frame: Frame) -> JSON:
    """Serialize a curve Frame object to JSON."""
    return {'t': frame.t, 'vertices': _points(frame.curve().vertices)}


def _deserialize_frame(user_input: JSON) -> Frame:
    """Deserialize a curve Frame object from JSON."""
    curve = DiscreteCurve(user_input['vertices'])
    geometry = compute_geometry(curve)
    return Frame(
            user_input['t'], curve, geometry.max_curvature(),
            float(np.min(geometry.edge_lengths)))


def _serialize_rescaled_frame(frame: RescaledFrame) -> JSON:
    """Serialize a RescaledFrame object to JSON.

    This is the curve format with extra fields for the rescaling.
    """
    result = _serialize_curve(frame.curve)
    result['s'] = frame.s
    result['t'] = frame.t
    result['center'] = _points(frame.center)
    result['scale'] = frame.scale
    return result


# Reports


def _serialize_density_report(report: DensityReport) -> JSON:
    """Serialize a DensityReport object to JSON."""
    return {
            'value': report.value,
            'p_star': _points(report.center),
            'tau_star': report.tau,
            'residual': report.residual,
            'diagnostics': {
                'iterations': report.iterations,
                'starts': report.starts,
                'converged': report.converged,
                'quadrature_error': report.quadrature_error,
                'bound': _number(report.bound),
                'flagged': report.flagged,
                'reason': report.reason}}


def _serialize_limit_estimate(estimate: LimitEstimate) -> JSON:
    """Serialize a LimitEstimate object to JSON."""
    return {
            'value': estimate.value,
            'times': list(estimate.times),
            'values': list(estimate.values),
            'flagged': estimate.flagged,
            'reason': estimate.reason}


def _serialize_singularity_report(report: SingularityReport) -> JSON:
    """Serialize a SingularityReport object to JSON."""
    return {
            'type': report.type.value,
            'typeI_constant': _number(report.type_i_constant),
            'global_typeI_constant': _number(report.global_type_i_constant),
            'limit_match': report.limit_match.value,
            'hausdorff': _number(report.hausdorff),
            'line_distance': _number(report.line_distance),
            'Sigma': _number(report.sigma),
            'limit_density': _number(report.limit_density),
            'residual': _number(report.residual),
            'residual_path': [_number(r) for r in report.residual_path],
            'center_path': [_points(c) for c in report.center_path],
            'singular_time': _number(report.singular_time),
            'flagged': report.flagged,
            'reason': report.reason}


def _serialize_breather_result(result: BreatherResult) -> JSON:
    """Serialize a BreatherResult object to JSON."""
    return {
            'is_breather': result.is_breather,
            'residual_integral': result.residual_integral,
            'sigma_gap': result.sigma_gap,
            'shape_distance': result.shape_distance,
            'shape_match': result.shape_match,
            'C': result.clock}


_serializers = dict()   # type: Dict[Type, Callable[[Any], JSON]]
_serializers = {
        DiscreteCurve: _serialize_curve,
        SphereState: _serialize_sphere,
        GaussianMixture: _serialize_mixture,
        Frame: _serialize_frame,
        RescaledFrame: _serialize_rescaled_frame,
        DensityReport: _serialize_density_report,
        LimitEstimate: _serialize_limit_estimate,
        SingularityReport: _serialize_singularity_report,
        BreatherResult: _serialize_breather_result,
        }


def serialize(obj: Serializable) -> JSON:
    """Serialize object to JSON.

    Args:
        obj: An object to serialize.

    Returns:
        Its JSON representation.
    """
    return _serializers[type(obj)](obj)


_deserialize = {
        DiscreteCurve: _deserialize_curve,
        SphereState: _deserialize_sphere,
        GaussianMixture: _deserialize_mixture,
        Frame: _deserialize_frame,
        }   # type: Dict[Type, Callable[[JSON], Any]]


def deserialize(typ: Type[T], user_input: JSON) -> T:
    """Deserializes an object from validated user input.

    Args:
        typ: The type of object to deserialize.
        user_input: The user's input as a JSON dictionary.

    Raises:
        ValueError: If the input describes an invalid object.
    """
    return cast(T, _deserialize[typ](user_input))

"""Validation of untrusted JSON input files against a schema.

The schema classes live in the OpenAPI YAML file next to this module.
One validator per class is built on import and never changes, so the
functions here are pure.
"""
import json
from pathlib import Path
from typing import Dict
import ruamel.yaml as yaml

import jsonschema
from jsonschema.validators import RefResolver
from openapi_schema_validator import OAS30Validator

from gaussdens.definitions.errors import ValidationError
from gaussdens.formats.definitions import JSON


def _create_validators() -> Dict[str, OAS30Validator]:
    schemas_file = Path(__file__).parent / 'schemas.yaml'
    with open(schemas_file, 'r') as f:
        schemas = yaml.safe_load(f.read())

    ref_resolver = RefResolver.from_schema(schemas)
    validators = dict()     # type: Dict[str, OAS30Validator]
    for schema_type, schema in schemas['components']['schemas'].items():
        validators[schema_type] = OAS30Validator(
                schema, resolver=ref_resolver)
    return validators


_validators = _create_validators()


def validate_json(class_: str, user_input: JSON) -> None:
    """Validate untrusted JSON against a schema class.

    Args:
        class_: The schema class to validate against, e.g. 'Curve',
            'Mixture' or 'TrajectoryFrame'.
        user_input: Untrusted input, decoded JSON.

    Raises:
        KeyError: If the class is not available for validation.
        ValidationError: If the input was invalid.
    """
    try:
        _validators[class_].validate(user_input)
    except jsonschema.ValidationError as e:
        location = '/'.join(str(part) for part in e.absolute_path)
        raise ValidationError(
                f'Invalid {class_} at /{location}: {e.message}')


def parse_json(class_: str, text: str) -> JSON:
    """Decode and validate a JSON document.

    Args:
        class_: The schema class to validate against.
        text: The undecoded document.

    Raises:
        ValidationError: If the text is not JSON or does not match
            the class.
    """
    try:
        user_input = json.loads(text)
    except json.JSONDecodeError as e:
        raise ValidationError(f'Invalid JSON for {class_}: {e}')
    if not isinstance(user_input, dict):
        raise ValidationError(f'Expected a JSON object for {class_}')
    validate_json(class_, user_input)
    return user_input

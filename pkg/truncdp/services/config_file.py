"""
JSON configuration files:

    {"epsilon": 1.0, "delta_f": 1.0,
     "constraints": [{"left": "-inf", "right": 0}, [10, "+inf"]]}
"""
import json
import logging

from truncdp.errors import ConfigFileError, ValidationError
from truncdp.models.constraint import normalize_config, parse_extended_real
from truncdp.models.privacy import PrivacyParams

logger = logging.getLogger(__name__)

REQUIRED_FIELDS = ('epsilon', 'delta_f', 'constraints')
CONSTRAINT_FIELDS = {'left', 'right'}


def _reject_constant(name):
    raise ConfigFileError(f'{name} is not allowed in a configuration file')


def _parse_constraint(position, raw):
    if isinstance(raw, dict):
        if set(raw) != CONSTRAINT_FIELDS:
            raise ConfigFileError(
                f'constraint #{position} must have exactly the fields left and right, got {sorted(raw)}'
            )
        left, right = raw['left'], raw['right']
    elif isinstance(raw, list) and len(raw) == 2:
        left, right = raw
    else:
        raise ConfigFileError(f'constraint #{position} must be an object or a two-element array')

    try:
        return parse_extended_real(left), parse_extended_real(right)
    except ValidationError as e:
        raise ConfigFileError(f'constraint #{position}: {e}') from e


def parse_config(document):
    """
    Turn a decoded JSON document into (PrivacyParams, ConstraintConfig).

    Raises:
        ConfigFileError: on missing, unknown or mistyped fields.
        ValidationError: when the values fail model validation.
    """
    if not isinstance(document, dict):
        raise ConfigFileError('the configuration must be a JSON object')

    unknown = sorted(set(document) - set(REQUIRED_FIELDS))
    if unknown:
        raise ConfigFileError(f'unknown fields: {", ".join(unknown)}')
    missing = [f for f in REQUIRED_FIELDS if f not in document]
    if missing:
        raise ConfigFileError(f'missing fields: {", ".join(missing)}')

    constraints = document['constraints']
    if not isinstance(constraints, list):
        raise ConfigFileError('constraints must be an array')

    params = PrivacyParams(epsilon=document['epsilon'], delta_f=document['delta_f'])
    config = normalize_config(_parse_constraint(k, raw) for k, raw in enumerate(constraints))
    return params, config


def loads_config(text):
    try:
        document = json.loads(text, parse_constant=_reject_constant)
    except json.JSONDecodeError as e:
        raise ConfigFileError(f'invalid JSON: {e}') from e
    return parse_config(document)


def load_config_file(path):
    """Read and validate a configuration file."""
    try:
        with open(path, encoding='utf-8') as fh:
            text = fh.read()
    except OSError as e:
        raise ConfigFileError(f'cannot read {path}: {e.strerror}') from e

    params, config = loads_config(text)
    logger.debug(f'loaded {path}: {params!r} {config!r}')
    return params, config

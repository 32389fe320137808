import json
import math

import numpy as np
import pytest

from truncdp.models.constraint import normalize_config
from truncdp.models.privacy import PrivacyParams

INF = math.inf

# name -> (raw constraints, a feasible true response)
CANONICAL = {
    'empty': ([], 0.0),
    'left-infinite': ([(-INF, 0.0)], 1.0),
    'right-infinite': ([(0.0, INF)], -1.0),
    'one-finite': ([(0.0, 1.0)], 2.0),
    'two-finite': ([(1.0, 2.0), (4.0, 6.0)], 3.0),
    'mixed': ([(-INF, 0.0), (2.0, 3.0), (6.0, INF)], 4.0),
}

FIVE_FINITE = ([(0.0, 1.0), (2.0, 2.5), (4.0, 6.0), (8.0, 8.2), (9.0, 12.0)], 7.0)


@pytest.fixture
def params():
    return PrivacyParams(epsilon=1.0, delta_f=1.0)


@pytest.fixture
def empty_config():
    return normalize_config([])


@pytest.fixture
def left_infinite():
    return normalize_config([(-INF, 0.0)])


@pytest.fixture
def right_infinite():
    return normalize_config([(0.0, INF)])


@pytest.fixture
def one_finite():
    return normalize_config([(0.0, 1.0)])


@pytest.fixture
def two_finite():
    return normalize_config([(1.0, 2.0), (4.0, 6.0)])


@pytest.fixture
def mixed():
    return normalize_config([(-INF, 0.0), (2.0, 3.0), (6.0, INF)])


@pytest.fixture
def five_finite():
    return normalize_config(FIVE_FINITE[0])


@pytest.fixture(params=list(CANONICAL) + ['five-finite'])
def any_config(request):
    """(name, config, feasible true response) over every test configuration."""
    if request.param == 'five-finite':
        raw, mu = FIVE_FINITE
    else:
        raw, mu = CANONICAL[request.param]
    return request.param, normalize_config(raw), mu


def inside_any_constraint(config, xs):
    xs = np.asarray(xs, dtype=float)
    inside = np.zeros(xs.shape, dtype=bool)
    for c in config.intervals:
        inside |= (xs > c.left) & (xs < c.right)
    return inside


@pytest.fixture
def write_config(tmp_path):
    """Write a JSON configuration file and return its path."""

    def _write(constraints, epsilon=1.0, delta_f=1.0, name='config.json', extra=None):
        document = {'epsilon': epsilon, 'delta_f': delta_f, 'constraints': constraints}
        if extra:
            document.update(extra)
        path = tmp_path / name
        path.write_text(json.dumps(document), encoding='utf-8')
        return str(path)

    return _write

import math

import pytest

from truncdp.errors import EmptyFeasibleSpaceError, InfeasibleLocationError, ValidationError
from truncdp.models.constraint import (
    ConfigClass,
    ConstraintConfig,
    Interval,
    classify,
    feasible_spans,
    location_view,
    normalize_config,
    parse_extended_real,
    reflect,
)
from truncdp.models.privacy import PrivacyParams

INF = math.inf


class TestParseExtendedReal:

    def test_numbers_and_tokens(self):
        assert parse_extended_real(3) == 3.0
        assert parse_extended_real(-2.5) == -2.5
        assert parse_extended_real('-inf') == -INF
        assert parse_extended_real('+inf') == INF

    @pytest.mark.parametrize('value', ['inf', 'Infinity', '1.0', True, None, math.nan, INF, [1]])
    def test_rejects(self, value):
        with pytest.raises(ValidationError):
            parse_extended_real(value)


class TestInterval:

    @pytest.mark.parametrize('left, right', [(1, 1), (2, 1), (math.nan, 1), (0, -INF), (INF, 5)])
    def test_invalid(self, left, right):
        with pytest.raises(ValidationError):
            Interval(left, right)

    def test_open_interval_membership(self):
        c = Interval(0, 1)
        assert c.contains_strictly(0.5)
        assert not c.contains_strictly(0.0)
        assert not c.contains_strictly(1.0)
        assert c.width == 1.0
        assert c.is_finite
        assert Interval(-INF, 0).is_infinite


class TestNormalizeConfig:

    def test_sorts_and_merges_overlaps(self):
        config = normalize_config([(3, 4), (0, 2), (1, 2.5)])
        assert config.intervals == (Interval(0, 2.5), Interval(3, 4))

    def test_merges_touching_constraints(self):
        config = normalize_config([(0, 1), (1, 2)])
        assert config.intervals == (Interval(0, 2),)

    def test_nested_constraints(self):
        config = normalize_config([(0, 10), (2, 3)])
        assert config.intervals == (Interval(0, 10),)

    def test_flags(self):
        config = normalize_config([(5, '+inf'), ('-inf', -1)])
        assert config.i_left and config.i_right
        assert config.intervals[0] == Interval(-INF, -1)

    def test_accepts_dicts(self):
        config = normalize_config([{'left': '-inf', 'right': 0}])
        assert config.intervals == (Interval(-INF, 0),)

    def test_whole_line_is_rejected(self):
        with pytest.raises(EmptyFeasibleSpaceError):
            normalize_config([('-inf', 0), (0, '+inf')])
        with pytest.raises(EmptyFeasibleSpaceError):
            normalize_config([(-INF, INF)])

    def test_direct_construction_validates(self):
        with pytest.raises(ValidationError):
            ConstraintConfig(intervals=(Interval(0, 2), Interval(1, 3)))
        with pytest.raises(ValidationError):
            ConstraintConfig(intervals=(Interval(-INF, 0),), i_left=False)


@pytest.mark.parametrize('raw, expected', [
    ([], ConfigClass.EMPTY),
    ([('-inf', 0)], ConfigClass.SINGLE_INFINITE),
    ([(0, '+inf')], ConfigClass.SINGLE_INFINITE),
    ([(1, 2), (4, 6)], ConfigClass.ARBITRARY_FINITE),
    ([(0, 1)], ConfigClass.ARBITRARY_FINITE),
    ([('-inf', 0), (10, '+inf')], ConfigClass.ARBITRARY),
    ([('-inf', 0), (2, 3)], ConfigClass.ARBITRARY),
])
def test_classify(raw, expected):
    assert classify(normalize_config(raw)) is expected


def test_feasible_spans(empty_config, two_finite, left_infinite, mixed):
    assert feasible_spans(empty_config) == [Interval(-INF, INF)]
    assert feasible_spans(two_finite) == [Interval(-INF, 1), Interval(2, 4), Interval(6, INF)]
    assert feasible_spans(left_infinite) == [Interval(0, INF)]
    assert feasible_spans(mixed) == [Interval(0, 2), Interval(3, 6)]


def test_feasibility(two_finite):
    assert two_finite.is_feasible(0.0)
    assert two_finite.is_feasible(1.0)
    assert two_finite.is_feasible(2.0)
    assert not two_finite.is_feasible(1.5)
    assert not two_finite.is_feasible(5.0)
    assert two_finite.is_feasible(7.0)
    assert not two_finite.is_feasible(math.nan)


class TestLocationView:

    def test_distances(self, two_finite):
        view = location_view(two_finite, 3.0)
        assert view.left_finite == ((2.0, 1.0),)
        assert view.right_finite == ((1.0, 3.0),)
        assert view.dr_infinite is None
        assert view.dl_infinite is None
        assert view.widths() == [1.0, 2.0]

    def test_infinite_constraints(self, mixed):
        view = location_view(mixed, 4.0)
        assert view.dr_infinite == 4.0
        assert view.dl_infinite == 2.0
        assert view.left_finite == ((2.0, 1.0),)
        assert view.i_left and view.i_right

    def test_left_pairs_have_dl_greater_than_dr(self, five_finite):
        view = location_view(five_finite, 7.0)
        assert all(dl > dr >= 0 for dl, dr in view.left_finite)
        assert all(dr > dl >= 0 for dl, dr in view.right_finite)

    @pytest.mark.parametrize('mu', [-1.0, 1.0, 3.0, 7.0, 8.5, 20.0])
    def test_widths_match_the_config(self, five_finite, mu):
        expected = sorted(c.width for c in five_finite.intervals)
        assert sorted(location_view(five_finite, mu).widths()) == pytest.approx(expected)

    def test_endpoint_is_feasible(self, two_finite):
        view = location_view(two_finite, 2.0)
        assert view.left_finite == ((1.0, 0.0),)

    def test_inside_constraint(self, two_finite):
        with pytest.raises(InfeasibleLocationError) as e:
            location_view(two_finite, 1.5)
        assert e.value.location == 1.5
        assert e.value.interval == Interval(1, 2)


class TestReflect:

    def test_reflect(self, left_infinite, two_finite):
        mirrored = reflect(left_infinite)
        assert mirrored.intervals == (Interval(0, INF),)
        assert mirrored.i_right and not mirrored.i_left
        assert reflect(two_finite).intervals == (Interval(-6, -4), Interval(-2, -1))

    def test_reflecting_twice_is_identity(self, mixed, five_finite):
        assert reflect(reflect(mixed)) == mixed
        assert reflect(reflect(five_finite)) == five_finite


class TestPrivacyParams:

    def test_derived_scales(self):
        params = PrivacyParams(epsilon=0.5, delta_f=2)
        assert params.laplace_scale == 4.0
        assert params.max_uniform_sigma == 8.0
        assert params.bound(2) == pytest.approx(math.e)

    @pytest.mark.parametrize('epsilon, delta_f', [(0, 1), (-1, 1), (1, 0), (INF, 1), (math.nan, 1), (True, 1), ('1', 1)])
    def test_invalid(self, epsilon, delta_f):
        with pytest.raises(ValidationError):
            PrivacyParams(epsilon=epsilon, delta_f=delta_f)

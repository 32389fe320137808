from truncdp.models.privacy import PrivacyParams
from truncdp.models.constraint import (
    Interval, ConfigClass, ConstraintConfig, LocationView,
    parse_extended_real, normalize_config, classify, feasible_spans, location_view, reflect
)
from truncdp.models.plan import (
    Direction, SingleInfinitePlan, UniformPlan, FailingCondition, ConditionSlack, FeasibilityReport
)
from truncdp.models.mechanism import Segment, TruncatedLaplace

__all__ = [
    'PrivacyParams',
    'Interval', 'ConfigClass', 'ConstraintConfig', 'LocationView',
    'parse_extended_real', 'normalize_config', 'classify', 'feasible_spans', 'location_view', 'reflect',
    'Direction', 'SingleInfinitePlan', 'UniformPlan',
    'FailingCondition', 'ConditionSlack', 'FeasibilityReport',
    'Segment', 'TruncatedLaplace'
]

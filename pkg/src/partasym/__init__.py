"""Exact and saddle-point asymptotic counts of integer partitions."""

from .errors import (
    ConfigError,
    FeasibilityError,
    PartasymError,
    PartitionArgumentError,
    SaddleNumericalError,
    ValidityError,
)
from .exact import (
    BigCount,
    ExactQuery,
    count_distinct,
    count_distinct_bounded,
    count_distinct_total,
    count_unrestricted_max_parts,
    verify_shift_identity,
)
from .limits import (
    CONSTANTS,
    LimitConstants,
    erdos_ln_q,
    mb_limit_ln_q,
    szekeres_bounded_ln_q,
    total_distinct_ln_q,
)
from .saddle import (
    AsymptoticEstimate,
    ModelKind,
    SaddleSolution,
    entropy_at,
    estimate,
    hessian_det,
    solve_saddle,
)
from .special import IntegralValue, g_minus, g_plus

__version__ = "0.1.0"

"""Asymptotic mode: growth bases of every bound as the dimension grows."""

from .core import (
    LOWER_IDS,
    THEOREM_IDS,
    UPPER_IDS,
    CurvePoint,
    FeasibleRegion,
    FractionalTable,
    lambda_sum_max_term,
    lambda_vertex,
)
from .lower import lambda_lower
from .sweep import sweep, sweep_csv
from .upper import lambda_upper

__all__ = [
    "CurvePoint",
    "FeasibleRegion",
    "FractionalTable",
    "LOWER_IDS",
    "THEOREM_IDS",
    "UPPER_IDS",
    "lambda_lower",
    "lambda_sum_max_term",
    "lambda_upper",
    "lambda_vertex",
    "sweep",
    "sweep_csv",
]

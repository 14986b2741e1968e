"""Bounds on independence numbers of fixed-composition ternary distance graphs.

Vertices are vectors in {-1, 0, 1}^n with prescribed counts of each symbol;
edges join distinct vectors whose dot product equals a threshold t.  The
package evaluates eight bounds on the largest independent set — five
constructive lower bounds and three counting upper bounds — in two modes:

* exact: arbitrary-precision values at concrete (n, k_{-1}, k_0, k_1, t),
  certified against brute force on small instances (`indep_bounds.oracle`);
* asymptotic: the exponential growth base λ along rays k = k'·n, t = t'·n
  (`indep_bounds.asymptotics`), with finite-n realizations for consistency
  checks and CSV sweeps for curve comparisons.

The `indep-bounds` command line exposes single-instance reports, sweeps,
reference-table reproduction, and oracle verification campaigns.
"""

from .asymptotics import (
    LOWER_IDS,
    THEOREM_IDS,
    UPPER_IDS,
    CurvePoint,
    lambda_lower,
    lambda_upper,
    sweep,
    sweep_csv,
)
from .errors import (
    ConditionsUnmet,
    EmptyRange,
    EmptyRegion,
    InvalidProfile,
    InvalidTable,
    TooLarge,
)
from .lower_bounds import (
    BoundResult,
    ak_lower_bound,
    glue_lower_bound,
    pairs_lower_bound,
    superglue_lower_bound,
    vertex_count,
    vg_dominated_count,
    vg_lower_bound,
)
from .parameters import AsymptoticParams, FiniteParams, GlueConfig, PartitionTable
from .upper_bounds import flower_upper_bound, fw_upper_bound, ponrai_upper_bound

__version__ = "0.1.0"

__all__ = [
    "AsymptoticParams",
    "BoundResult",
    "ConditionsUnmet",
    "CurvePoint",
    "EmptyRange",
    "EmptyRegion",
    "FiniteParams",
    "GlueConfig",
    "InvalidProfile",
    "InvalidTable",
    "LOWER_IDS",
    "PartitionTable",
    "THEOREM_IDS",
    "TooLarge",
    "UPPER_IDS",
    "ak_lower_bound",
    "flower_upper_bound",
    "fw_upper_bound",
    "glue_lower_bound",
    "lambda_lower",
    "lambda_upper",
    "pairs_lower_bound",
    "ponrai_upper_bound",
    "superglue_lower_bound",
    "sweep",
    "sweep_csv",
    "vertex_count",
    "vg_dominated_count",
    "vg_lower_bound",
]

"""Threshold sweeps: evaluate every requested bound across a grid of t' values.

A sweep never aborts: hypothesis failures and unexpected per-point errors are
embedded in the returned rows as infeasible points with a reason string, so a
single bad grid point cannot take down a whole figure.  Ordering is
deterministic — grid order outer, canonical theorem order inner — and the CSV
rendering is byte-stable for identical inputs.
"""

from __future__ import annotations

import csv
import io
import json
from typing import Iterable, Sequence

import numpy as np

from ..parameters import AsymptoticParams
from .core import LOWER_IDS, THEOREM_IDS, CurvePoint
from .lower import lambda_lower
from .upper import lambda_upper

CSV_HEADER = ("t_prime", "theorem_id", "lambda", "feasible", "witness_json")


def _evaluate(theorem_id: str, kp: AsymptoticParams) -> CurvePoint:
    fn = lambda_lower if theorem_id in LOWER_IDS else lambda_upper
    try:
        return fn(theorem_id, kp)
    except Exception as exc:  # per-row error embedding: sweeps must not abort
        return CurvePoint(
            kp.tp,
            theorem_id,
            None,
            feasible=False,
            reason=f"{type(exc).__name__}: {exc}",
        )


def sweep(
    kp: AsymptoticParams,
    tp_grid: Sequence[float],
    theorems: Iterable[str] = THEOREM_IDS,
) -> list[CurvePoint]:
    """Evaluate the selected bounds at every grid threshold.

    ``kp`` supplies the densities; its own ``tp`` is ignored in favor of the
    grid.  Returns one point per (threshold, theorem), thresholds in grid
    order, theorems in canonical order.
    """
    wanted = set(theorems)
    unknown = wanted - set(THEOREM_IDS)
    if unknown:
        raise ValueError(f"unknown theorem ids {sorted(unknown)}")
    order = [t for t in THEOREM_IDS if t in wanted]
    points: list[CurvePoint] = []
    for tp in tp_grid:
        probe = AsymptoticParams(kp.kp_m1, kp.kp_0, kp.kp_1, float(tp))
        for tid in order:
            points.append(_evaluate(tid, probe))
    return points


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (np.floating, np.integer, np.bool_)):
        return obj.item()
    return obj


def sweep_csv(points: Iterable[CurvePoint]) -> str:
    """Render sweep rows as CSV: t_prime, theorem_id, lambda, feasible, witness_json."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for p in points:
        lam = f"{p.lam:.5f}" if p.feasible else ""
        payload = p.witness if p.feasible else {"reason": p.reason}
        writer.writerow(
            (
                f"{p.tp:.6g}",
                p.theorem_id,
                lam,
                str(p.feasible).lower(),
                json.dumps(_jsonable(payload), sort_keys=True),
            )
        )
    return buf.getvalue()

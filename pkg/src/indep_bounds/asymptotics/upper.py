"""Asymptotic growth bases of the three counting upper bounds.

Each finite bound is a product and/or sum of binomial-type factors, so its
exponential growth base is 2 to the sum of the factors' rates, with sums
replaced by their largest term.  Divisibility and prime-power hypotheses
vanish in the fractional limit (a prime power within o(n) of the target always
exists), leaving only density inequalities to check.  Hypothesis failures are
reported as infeasible curve points — never exceptions — so threshold sweeps
never abort; the reason strings carry the "ConditionsUnmet" vocabulary used by
the finite layer.

The three bounds:

* T1 — truncated two-index binomial sum.  Applies when the nonzero weight is
  at most half the coordinates and the deficiency regime is low; the raw base
  can exceed the vertex-count base, so the reported value is their minimum.
* T2 — fix the minus block, bound the remaining one-heavy family.  Two cases:
  a truncated binomial sum, or a ratio construction whose overlap parameter is
  the fractional solution of the finite bracketing inequality.  Degenerates
  (and is reported unmet) when the plus and minus densities coincide.
* T3 — partition-refined variant of T1: the sum is multiplied by a factor
  whose rate is the smallest row/block mutual information over fractional
  tables meeting the minimum-dot-sum floor.  Complements T1's regime exactly.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from ..parameters import AsymptoticParams
from .core import (
    CurvePoint,
    FeasibleRegion,
    FractionalTable,
    binary_entropy,
    lambda_vertex,
    max_term_with_argmax,
    mdp_frac,
    product_table,
    scaled_binary_entropy,
    ternary_entropy_rows,
)
from .lower import _best_block_table, _check_tp

#: slack used when comparing density inequalities (pure float arithmetic)
_EPS = 1e-12


@lru_cache(maxsize=4096)
def _sum_region_rate(qp: float) -> tuple[float, float, float]:
    """Rate and argmax of the truncated two-index sum shared by T1 and T3.

    The finite sum ranges over pairs (i, j) with i+j ≤ n and i+2j ≤ q−1; its
    rate is the largest three-part composition rate over the fractional region
    {i' ≥ 0, j' ≥ 0, i'+j' ≤ 1, i'+2j' ≤ q'}.  Returns (rate, i'*, j'*).
    """
    qp = max(qp, 0.0)
    region = FeasibleRegion(
        bounds=((0.0, min(1.0, qp)), (0.0, min(1.0, 0.5 * qp))),
        constraints=(
            lambda p: p[:, 0] + p[:, 1] <= 1.0 + _EPS,
            lambda p, q=qp: p[:, 0] + 2.0 * p[:, 1] <= q + _EPS,
        ),
    )

    def exponent(pts: np.ndarray) -> np.ndarray:
        rows = np.column_stack([pts[:, 0], pts[:, 1], 1.0 - pts[:, 0] - pts[:, 1]])
        return ternary_entropy_rows(rows)

    val, arg = max_term_with_argmax(exponent, region)
    return float(val), float(arg[0]), float(arg[1])


def _clamped_point(tp: float, theorem_id: str, rate: float, witness: dict) -> CurvePoint:
    """Feasible point with the rate floored at 0 and the base capped at 3.

    Any valid upper bound may be intersected with the trivial facts that the
    count is at least 1 (rate ≥ 0 whenever vertices exist) and at most the
    full alphabet power (base ≤ 3); the flags record when that fired.
    """
    if rate < 0.0:
        witness["rate_floored_at_zero"] = rate
        rate = 0.0
    lam = 2.0**rate
    if lam > 3.0:
        witness["clamped_to_alphabet"] = True
        lam = 3.0
    return CurvePoint(tp, theorem_id, lam, witness=witness)


def _weight_regime(kp: AsymptoticParams) -> tuple[float, float, str]:
    """Shared T1/T3 quantities: (q', regime value, weight-precondition failure).

    The regime value is the fractional form of (weight − 2q) + 2·(minus
    density); T1 requires it negative, T3 nonnegative — a partition, so
    exactly one of the two bounds fires for any threshold.
    """
    weight = kp.kp_m1 + kp.kp_1
    qp = weight - kp.tp
    regime = 2.0 * kp.tp - weight + 2.0 * kp.kp_m1
    fail = ""
    if 2.0 * weight > 1.0 + _EPS:
        fail = (
            "ConditionsUnmet: nonzero weight "
            f"{weight} exceeds half the coordinates"
        )
    return qp, regime, fail


def _lambda_t1(kp: AsymptoticParams) -> CurvePoint:
    kp = kp.canonical
    qp, regime, fail = _weight_regime(kp)
    if fail:
        return CurvePoint(kp.tp, "T1", None, feasible=False, reason=fail)
    if regime >= 0.0:
        return CurvePoint(
            kp.tp,
            "T1",
            None,
            feasible=False,
            reason=(
                "ConditionsUnmet: deficiency regime "
                f"{regime:+.6g} >= 0 belongs to the partition-refined bound"
            ),
        )
    rate, i_star, j_star = _sum_region_rate(qp)
    raw = 2.0 ** max(rate, 0.0)
    vertex = lambda_vertex(kp)
    capped = raw > vertex
    witness = {
        "q_prime": qp,
        "sum_rate": rate,
        "argmax": {"i": i_star, "j": j_star},
        "uncapped_lambda": raw,
        "vertex_lambda": vertex,
        "capped": capped,
    }
    return CurvePoint(kp.tp, "T1", min(raw, vertex), witness=witness)


def _lambda_t3(kp: AsymptoticParams) -> CurvePoint:
    kp = kp.canonical
    qp, regime, fail = _weight_regime(kp)
    if fail:
        return CurvePoint(kp.tp, "T3", None, feasible=False, reason=fail)
    if regime < 0.0:
        return CurvePoint(
            kp.tp,
            "T3",
            None,
            feasible=False,
            reason=(
                "ConditionsUnmet: deficiency regime "
                f"{regime:+.6g} < 0 belongs to the truncated-sum bound"
            ),
        )
    dens = kp.densities()
    dp = 2.0 * kp.tp - (kp.kp_m1 + kp.kp_1)
    if mdp_frac(*dens) >= dp - _EPS:
        # a product table already meets the minimum-dot floor, so the factor
        # carries no information cost
        table = product_table(kp, dens)
        info = 0.0
        shortcut = True
    else:
        best = _best_block_table(kp, dp, "mutual")
        if best is None:
            return CurvePoint(
                kp.tp,
                "T3",
                None,
                feasible=False,
                reason=(
                    "no fractional table attains minimum-dot sum "
                    f">= {dp:.6g}"
                ),
            )
        cells, info = best
        info = max(float(info), 0.0)
        table = FractionalTable.from_array(cells)
        shortcut = False
    rate, i_star, j_star = _sum_region_rate(qp)
    witness = {
        "q_prime": qp,
        "d_prime": dp,
        "mutual_information": info,
        "sum_rate": rate,
        "argmax": {"i": i_star, "j": j_star},
        "product_table_suffices": shortcut,
        "table": table.as_dict(),
        "mdp_sum": table.mdp_sum(),
    }
    return _clamped_point(kp.tp, "T3", info + rate, witness)


def _t2_case2_rate(kp: AsymptoticParams, d1: float) -> tuple[float, float] | None:
    """Rate of the ratio construction for one split of the deficiency, or None.

    ``d1`` is the share of the deficiency resolved inside the plus block; the
    remainder d2 is resolved against the fixed minus block through an overlap
    parameter rho — the fractional root of the finite bound's bracketing
    inequality r(n1 − 2A) ≥ A·d2 at equality.  Returns (rate, rho).
    """
    km1, k1 = kp.kp_m1, kp.kp_1
    dp = 2.0 * (kp.tp - km1) - k1
    d2 = dp - d1
    if d1 < -1e-15 or d2 < -1e-15:
        return None
    n1 = 1.0 - km1 - d1
    k2 = k1 - d1
    amt = k2 - d2
    if k2 <= d2 + 1e-15:
        return None
    if n1 <= 2.0 * amt + 1e-15:
        return None
    rho = d2 * amt / (n1 - 2.0 * amt)
    if rho > amt + _EPS or rho > n1 - k2 + _EPS:
        return None
    if d1 > k1 + _EPS or d2 + 2.0 * rho > n1 + _EPS:
        return None
    qp = km1 + k1 - kp.tp
    tail = scaled_binary_entropy(n1, min(qp, 0.5 * n1))
    rate = (
        binary_entropy(km1)
        + scaled_binary_entropy(n1, d2 + 2.0 * rho)
        + scaled_binary_entropy(1.0 - km1, d1)
        - scaled_binary_entropy(k2, d2 + rho)
        - scaled_binary_entropy(n1 - k2, rho)
        - scaled_binary_entropy(k1, d1)
        + tail
    )
    return rate, rho


def _lambda_t2(kp: AsymptoticParams) -> CurvePoint:
    kp = kp.canonical
    km1, k0, k1 = kp.densities()
    if abs(k1 - km1) < _EPS:
        return CurvePoint(
            kp.tp,
            "T2",
            None,
            feasible=False,
            reason=(
                "ConditionsUnmet: plus and minus densities coincide, so fixing "
                "the minus block gains nothing and the bound degenerates"
            ),
        )
    if 2.0 * k1 > 1.0 - km1 + _EPS:
        return CurvePoint(
            kp.tp,
            "T2",
            None,
            feasible=False,
            reason=(
                "ConditionsUnmet: plus density "
                f"{k1} exceeds half the coordinates left after the minus block"
            ),
        )
    if km1 > kp.tp + _EPS:
        return CurvePoint(
            kp.tp,
            "T2",
            None,
            feasible=False,
            reason=(
                "ConditionsUnmet: minus density "
                f"{km1} exceeds the threshold {kp.tp}"
            ),
        )
    qp = km1 + k1 - kp.tp
    if 2.0 * (kp.tp - km1) < k1:
        heavy = k1 + k0
        i_star = min(qp, 0.5 * heavy)
        rate = binary_entropy(km1) + scaled_binary_entropy(heavy, i_star)
        witness = {"case": 1, "q_prime": qp, "argmax_i": i_star}
        return _clamped_point(kp.tp, "T2", rate, witness)

    dp = 2.0 * (kp.tp - km1) - k1
    grid = np.linspace(0.0, dp, 201)
    evals = [(_t2_case2_rate(kp, d1), d1) for d1 in grid]
    valid = [(r[0], d1, r[1]) for r, d1 in evals if r is not None]
    if not valid:
        return CurvePoint(
            kp.tp,
            "T2",
            None,
            feasible=False,
            reason=(
                "no admissible split of the deficiency "
                f"{dp:.6g} admits an overlap parameter"
            ),
        )
    best_rate, best_d1, best_rho = min(valid)
    # golden-section polish around the best grid split
    span = dp / 200.0 if dp > 0 else 0.0
    lo, hi = max(best_d1 - span, 0.0), min(best_d1 + span, dp)
    phi = (np.sqrt(5.0) - 1.0) / 2.0
    for _ in range(40 if span > 0 else 0):
        m1 = hi - phi * (hi - lo)
        m2 = lo + phi * (hi - lo)
        r1 = _t2_case2_rate(kp, m1)
        r2 = _t2_case2_rate(kp, m2)
        v1 = np.inf if r1 is None else r1[0]
        v2 = np.inf if r2 is None else r2[0]
        if v1 <= v2:
            hi = m2
        else:
            lo = m1
    mid = 0.5 * (lo + hi)
    polished = _t2_case2_rate(kp, mid)
    if polished is not None and polished[0] < best_rate:
        best_rate, best_d1, best_rho = polished[0], mid, polished[1]
    witness = {
        "case": 2,
        "q_prime": qp,
        "d_prime": dp,
        "d1": best_d1,
        "d2": dp - best_d1,
        "rho": best_rho,
    }
    return _clamped_point(kp.tp, "T2", best_rate, witness)


_UPPER_DISPATCH = {"T1": _lambda_t1, "T2": _lambda_t2, "T3": _lambda_t3}


def lambda_upper(theorem_id: str, kp: AsymptoticParams) -> CurvePoint:
    """Growth base of one counting upper bound at the given densities."""
    if theorem_id not in _UPPER_DISPATCH:
        raise ValueError(f"unknown upper-bound theorem id {theorem_id!r}")
    _check_tp(kp)
    return _UPPER_DISPATCH[theorem_id](kp)

"""Exact finite-n lower bounds: block-product families, greedy exclusion, gluing, pairs."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Optional

from .combinatorics import binom, multinomial
from .errors import EmptyRange
from .parameters import (
    BETAS,
    FiniteParams,
    GlueConfig,
    PartitionTable,
    table_mdp_sum,
    validate_finite,
    validate_table,
)

THEOREM_IDS = ("T1", "T2", "T3", "T4", "T5", "T6", "T7", "T8")


@dataclass(frozen=True)
class BoundResult:
    """Outcome of one bound evaluation: either a certified value or unmet conditions."""

    theorem_id: str
    kind: str  # "lower" | "upper"
    conditions_met: bool
    value: Optional[int] = None
    reason: str = ""
    witness: Optional[dict[str, Any]] = field(default=None)

    def __post_init__(self) -> None:
        if not self.conditions_met and self.value is not None:
            raise ValueError("a result with unmet conditions must not carry a value")


def vertex_count(p: FiniteParams) -> int:
    """Number of vectors with the given composition."""
    validate_finite(p)
    return multinomial(p.counts())


def vg_dominated_count(p: FiniteParams) -> int:
    """How many vectors y satisfy (x, y) >= t for a fixed vector x (including y = x).

    Sums six-binomial products over all overlap profiles between x and y; the
    out-of-range-zero convention of binom prunes impossible profiles.
    """
    validate_finite(p)
    km1, k0, k1, t = p.k_m1, p.k_0, p.k_1, p.t
    total = 0
    for l11 in range(k1 + 1):
        b1 = binom(k1, l11)
        for lm1m1 in range(km1 + 1):
            b2 = b1 * binom(km1, lm1m1)
            cap = min(km1 - lm1m1, k1 - l11)
            for lm11 in range(cap + 1):
                b3 = b2 * binom(km1 - lm1m1, lm11) * binom(k0, k1 - l11 - lm11)
                if b3 == 0:
                    continue
                # dot product is l11 - lm11 + lm1m1 - l1m1 >= t
                hi = min(cap, l11 - lm11 + lm1m1 - t)
                for l1m1 in range(hi + 1):
                    total += (
                        b3
                        * binom(k1 - l11, l1m1)
                        * binom(k0 - k1 + l11 + lm11, km1 - lm1m1 - l1m1)
                    )
    return total


def vg_lower_bound(p: FiniteParams) -> BoundResult:
    """Greedy-exclusion bound: ceil(|V| / d); also valid for the strict-threshold quantity h."""
    validate_finite(p)
    v = vertex_count(p)
    d = vg_dominated_count(p)
    if d == 0:
        return BoundResult(
            "T5",
            "lower",
            True,
            v,
            reason="no vector reaches the threshold; the whole vertex set qualifies",
            witness={"dominated_count": 0},
        )
    value = -(-v // d)
    return BoundResult("T5", "lower", True, value, witness={"dominated_count": d})


def _achievable_h(n: int, m_m1: int, m_0: int, m_1: int, threshold: int) -> tuple[int, int]:
    """A constructive size for a family with pairwise dots < threshold, plus its d-count."""
    sub = FiniteParams(n, m_m1, m_0, m_1, threshold)
    v = vertex_count(sub)
    d = vg_dominated_count(sub)
    if d == 0:
        return v, 0
    return -(-v // d), d


def _block_product(tab: PartitionTable) -> int:
    """Product over blocks of the per-block multinomial (ways to lay out each block)."""
    out = 1
    for b in BETAS:
        out *= multinomial(tab.column(b))
    return out


def ak_lower_bound(p: FiniteParams, tab: PartitionTable) -> BoundResult:
    """Block-product family: every pairwise dot exceeds t when the per-block minimum dots do."""
    validate_finite(p)
    validate_table(tab, p)
    mdp_sum = table_mdp_sum(tab)
    if mdp_sum <= p.t:
        return BoundResult(
            "T4",
            "lower",
            False,
            reason=f"block minimum-dot sum {mdp_sum} must exceed t = {p.t}",
        )
    return BoundResult(
        "T4", "lower", True, _block_product(tab), witness={"table": tab.as_dict()}
    )


def extras(tab: PartitionTable) -> int:
    """Worst-case extra overlap two block layouts can share beyond the guaranteed part."""
    m_lo = min(tab.block_size(-1), tab.block_size(1))
    a = min(tab.cell(-1, 1), tab.cell(-1, -1))
    b = min(tab.cell(1, 1), tab.cell(1, -1))
    e1 = 2 * m_lo
    e2 = a + b + m_lo
    e3 = (
        a
        + b
        + min(tab.cell(1, 1) + tab.cell(-1, -1), tab.cell(-1, 1) + tab.cell(1, -1))
        + tab.cell(0, 1)
        + tab.cell(0, -1)
    )
    return min(e1, e2, e3)


def _glue_violation(p: FiniteParams, cfg: GlueConfig) -> str:
    """First violated gluing inequality, or '' if all hold."""
    tab = cfg.table
    if cfg.t1 > p.t:
        return f"t1 = {cfg.t1} exceeds t = {p.t}"
    mdp_sum = table_mdp_sum(tab)
    if mdp_sum <= p.t:
        return f"block minimum-dot sum {mdp_sum} must exceed t = {p.t}"
    cross = extras(tab)
    zeros_spill = tab.cell(1, 0) + tab.cell(-1, 0)
    lhs = cfg.t1 + 2 * cross + 2 * zeros_spill
    if lhs > p.t:
        return (
            f"t1 + 2*extras + 2*(ones and minus-ones in the zero block) = {lhs} "
            f"exceeds t = {p.t}"
        )
    return ""


def glue_lower_bound(p: FiniteParams, cfg: GlueConfig) -> BoundResult:
    """Family of block layouts with small pairwise dots, each expanded to a block product."""
    validate_finite(p)
    tab = cfg.table
    validate_table(tab, p)
    violation = _glue_violation(p, cfg)
    if violation:
        return BoundResult("T6", "lower", False, reason=violation)
    h0, d = _achievable_h(p.n, tab.block_size(-1), tab.block_size(0), tab.block_size(1), cfg.t1)
    value = h0 * _block_product(tab)
    return BoundResult(
        "T6",
        "lower",
        True,
        value,
        witness={"table": tab.as_dict(), "t1": cfg.t1, "h0": h0, "dominated_count": d},
    )


def superglue_R(p: FiniteParams, cfg: GlueConfig) -> int:
    """Worst-case count of forbidden-pair overlap patterns between two block layouts."""
    tab = cfg.table
    if cfg.s is None:
        raise ValueError("the thinning threshold s is required")
    m_m1, m_0, m_1 = tab.block_size(-1), tab.block_size(0), tab.block_size(1)
    j_lo = p.t - 2 * (tab.cell(1, 0) + tab.cell(-1, 0))
    if j_lo < 0:
        raise ValueError(f"t - 2*(ones and minus-ones in the zero block) = {j_lo} is negative")
    l_lo = max(0, m_m1 + m_1 - m_0)
    l_hi = min(cfg.s + 4 * min(m_m1, m_1), m_m1 + m_1)
    if l_lo > l_hi:
        raise EmptyRange(f"no admissible overlap size: [{l_lo}, {l_hi}] is empty")
    sigma = tab.cell(1, 1) + tab.cell(1, -1) + tab.cell(-1, -1) + tab.cell(-1, 1)
    top = tab.cell(1, 1) + tab.cell(1, -1)
    best = 0
    for l in range(l_lo, l_hi + 1):
        acc = 0
        for j in range(j_lo, l + 1):
            rest = binom(m_m1 + m_1 - l, sigma - j)
            if rest == 0:
                continue
            inner = sum(binom(j, i) * binom(sigma - j, top - i) for i in range(j + 1))
            acc += binom(l, j) * rest * inner
        best = max(best, acc)
    return best


def superglue_lower_bound(p: FiniteParams, cfg: GlueConfig) -> BoundResult:
    """Thinned gluing: a larger inner family, minus the layouts that can collide."""
    validate_finite(p)
    tab = cfg.table
    validate_table(tab, p)
    violation = _glue_violation(p, cfg)
    if violation:
        return BoundResult("T7", "lower", False, reason=violation)
    m_m1, m_0, m_1 = tab.block_size(-1), tab.block_size(0), tab.block_size(1)
    if cfg.s is None or not (cfg.t1 < cfg.s < m_m1 + m_1):
        return BoundResult(
            "T7",
            "lower",
            False,
            reason=f"s = {cfg.s} must lie strictly between t1 = {cfg.t1} and "
            f"m[-1] + m[1] = {m_m1 + m_1}",
        )
    zeros_spill = tab.cell(1, 0) + tab.cell(-1, 0)
    if p.t - 2 * zeros_spill < 0:
        return BoundResult(
            "T7",
            "lower",
            False,
            reason=f"t - 2*(ones and minus-ones in the zero block) = {p.t - 2 * zeros_spill} "
            "is negative",
        )
    h0, d = _achievable_h(p.n, m_m1, m_0, m_1, cfg.s)
    note = ""
    try:
        r_value = superglue_R(p, cfg)
    except EmptyRange:
        r_value = 0
        note = "empty overlap interval, collision term vanishes"
    c_factor = binom(m_0, tab.cell(-1, 0)) * binom(tab.cell(0, 0) + tab.cell(1, 0), tab.cell(0, 0))
    product = _block_product(tab)
    inner = product - h0 * c_factor * r_value
    if inner < 0:
        inner = 0
        note = "collision term exceeds the product; bound is vacuous"
    value = h0 * inner
    return BoundResult(
        "T7",
        "lower",
        True,
        value,
        reason=note,
        witness={
            "table": tab.as_dict(),
            "t1": cfg.t1,
            "s": cfg.s,
            "h0": h0,
            "dominated_count": d,
            "R": r_value,
            "C": c_factor,
            "product": product,
        },
    )


def pairs_lower_bound(p: FiniteParams) -> BoundResult:
    """Vectors supported on whole coordinate pairs: every dot is even, dodging odd t."""
    validate_finite(p)
    failures = []
    if p.n % 2 != 0:
        failures.append(f"n = {p.n} is odd")
    if (p.k_1 + p.k_m1) % 2 != 0:
        failures.append(f"k[1] + k[-1] = {p.k_1 + p.k_m1} is odd")
    if p.t % 2 == 0:
        failures.append(f"t = {p.t} is even")
    if failures:
        return BoundResult("T8", "lower", False, reason="; ".join(failures))
    weight = p.k_1 + p.k_m1
    value = binom(p.n // 2, weight // 2) * binom(weight, p.k_1)
    return BoundResult("T8", "lower", True, value)

"""Exact finite-n upper bounds from the polynomial (linear-algebra) method."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .combinatorics import binom, is_prime_power, multinomial
from .errors import InvalidTable
from .lower_bounds import BoundResult, vertex_count
from .parameters import (
    ALPHAS,
    FiniteParams,
    PartitionTable,
    table_mdp_sum,
    validate_finite,
    validate_table,
)


@dataclass(frozen=True)
class FlowerInternals:
    """Derived integers of the split construction in the second case of T2."""

    q: int
    d: int
    d1: int
    d2: int
    n1: int
    k2: int
    r: int


def _truncated_pair_sum(n: int, q: int) -> int:
    """Sum of binom(n,i)*binom(n-i,j) over i,j >= 0 with i+j <= n and i+2j <= q-1."""
    total = 0
    for j in range(0, max(0, (q - 1) // 2) + 1):
        hi = min(q - 1 - 2 * j, n - j)
        for i in range(0, hi + 1):
            total += binom(n, i) * binom(n - i, j)
    return total


def _canonical_with_table(
    p: FiniteParams, tab: Optional[PartitionTable]
) -> tuple[FiniteParams, Optional[PartitionTable]]:
    if p.k_m1 <= p.k_1:
        return p, tab
    return p.canonical, (tab.negated if tab is not None else None)


def fw_upper_bound(p: FiniteParams) -> BoundResult:
    """Forbidden-distance polynomial bound; strongest when q is large relative to the weight."""
    validate_finite(p)
    p, _ = _canonical_with_table(p, None)
    weight = p.k_1 + p.k_m1
    q = weight - p.t
    if 2 * weight > p.n:
        return BoundResult(
            "T1", "upper", False, reason=f"k[1] + k[-1] = {weight} exceeds n/2 = {p.n / 2:g}"
        )
    if not is_prime_power(q):
        return BoundResult("T1", "upper", False, reason=f"q = {q} is not a prime power")
    if not (weight - 2 * q < -2 * p.k_m1):
        return BoundResult(
            "T1",
            "upper",
            False,
            reason=f"k[1] + k[-1] - 2q = {weight - 2 * q} is not below -2*k[-1] = {-2 * p.k_m1}",
        )
    value = _truncated_pair_sum(p.n, q)
    return BoundResult(
        "T1",
        "upper",
        True,
        value,
        witness={"q": q, "capped": min(value, vertex_count(p))},
    )


def flower_upper_bound(p: FiniteParams) -> BoundResult:
    """Fix the minus block, then bound the remaining one-heavy family; two regimes."""
    validate_finite(p)
    p, _ = _canonical_with_table(p, None)
    n, km1, k0, k1, t = p.n, p.k_m1, p.k_0, p.k_1, p.t
    q = k1 + km1 - t
    if 2 * k1 > n - km1:
        return BoundResult(
            "T2", "upper", False, reason=f"k[1] = {k1} exceeds (n - k[-1])/2 = {(n - km1) / 2:g}"
        )
    if km1 > t:
        return BoundResult("T2", "upper", False, reason=f"k[-1] = {km1} exceeds t = {t}")
    if not is_prime_power(q):
        return BoundResult("T2", "upper", False, reason=f"q = {q} is not a prime power")
    if 2 * (t - km1) < k1:
        value = binom(n, km1) * sum(binom(k1 + k0, i) for i in range(q))
        return BoundResult("T2", "upper", True, value, witness={"case": 1, "q": q})

    d = 2 * (t - km1) - k1 + 1
    best: Optional[Fraction] = None
    best_internals: Optional[FlowerInternals] = None
    for d1 in range(1, d):
        d2 = d - d1
        n1 = (n - km1) - d1
        k2 = k1 - d1
        a = k2 - d2 + 1
        b = d2 - 1
        if a < 1 or b == 0 or n1 <= 2 * a:
            continue
        # bracketing inequality pins r = ceil(a*b/(n1-2a)) - 1; only r >= 1 qualifies
        x = Fraction(a * b, n1 - 2 * a)
        r = -((-x.numerator) // x.denominator) - 1
        if r < 1:
            continue
        denom = binom(k2, d2 + r) * binom(n1 - k2, r) * binom(k1, d1)
        numer = binom(n1, d2 + 2 * r) * binom(n - km1, d1)
        if denom == 0 or numer == 0:
            continue
        tail = sum(binom(n1, i) for i in range(q))
        val = Fraction(binom(n, km1) * numer * tail, denom)
        if best is None or val < best:
            best = val
            best_internals = FlowerInternals(q, d, d1, d2, n1, k2, r)
    if best is None:
        return BoundResult(
            "T2",
            "upper",
            False,
            reason=f"no split of d = {d} admits a valid branching radius r",
        )
    return BoundResult(
        "T2",
        "upper",
        True,
        math.floor(best),
        witness={
            "case": 2,
            "exact": str(best),
            "internals": best_internals.__dict__,
        },
    )


def ponrai_factor_forms(p: FiniteParams, tab: PartitionTable) -> tuple[Fraction, Fraction]:
    """The table-dependent prefactor in its factorial and binomial-ratio forms (equal)."""
    k = {-1: p.k_m1, 0: p.k_0, 1: p.k_1}
    factorial_form = Fraction(multinomial(tab.m))
    for a in ALPHAS:
        num = 1
        for c in tab.row(a):
            num *= math.factorial(c)
        factorial_form *= Fraction(num, math.factorial(k[a]))
    m_m1, m_0, m_1 = tab.m
    num2 = binom(p.n, m_m1) * binom(m_0 + m_1, m_0)
    den2 = 1
    for a in ALPHAS:
        den2 *= binom(k[a], tab.cell(a, -1)) * binom(tab.cell(a, 0) + tab.cell(a, 1), tab.cell(a, 1))
    ratio_form = Fraction(num2, den2)
    return factorial_form, ratio_form


def ponrai_upper_bound(p: FiniteParams, tab: PartitionTable) -> BoundResult:
    """Partition-refined polynomial bound; complements T1 when q is comparatively small."""
    validate_finite(p)
    p, tab = _canonical_with_table(p, tab)
    assert tab is not None
    weight = p.k_1 + p.k_m1
    q = weight - p.t
    if 2 * weight > p.n:
        return BoundResult(
            "T3", "upper", False, reason=f"k[1] + k[-1] = {weight} exceeds n/2 = {p.n / 2:g}"
        )
    if not is_prime_power(q):
        return BoundResult("T3", "upper", False, reason=f"q = {q} is not a prime power")
    if weight - 2 * q < -2 * p.k_m1:
        return BoundResult(
            "T3",
            "upper",
            False,
            reason=f"k[1] + k[-1] - 2q = {weight - 2 * q} is below -2*k[-1] = {-2 * p.k_m1}",
        )
    d = weight - 2 * q + 1
    validate_table(tab, p)
    mdp_sum = table_mdp_sum(tab)
    if mdp_sum < d:
        raise InvalidTable(f"block minimum-dot sum {mdp_sum} must be at least d = {d}")
    factor, _ = ponrai_factor_forms(p, tab)
    value = factor * _truncated_pair_sum(p.n, q)
    return BoundResult(
        "T3",
        "upper",
        True,
        math.floor(value),
        witness={"q": q, "d": d, "exact": str(value), "table": tab.as_dict()},
    )

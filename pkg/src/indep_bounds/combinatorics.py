"""Exact and log-domain combinatorial kernels: binomials, multinomials, entropy, prime powers."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence


@dataclass(frozen=True)
class LogCount:
    """Base-2 logarithm of a nonnegative count, with an explicit zero flag.

    When ``is_zero`` is set the numeric field is meaningless and must be ignored.
    """

    log2_value: float
    is_zero: bool = False


def binom(n: int, k: int) -> int:
    """n choose k, with 0 for any out-of-range pair.

    The zero convention is load-bearing: several bound formulas sum binomial
    products over rectangular index grids in which combinatorially impossible
    tuples must contribute nothing.
    """
    if n < 0 or k < 0 or k > n:
        return 0
    return math.comb(n, k)


def multinomial(parts: Sequence[int]) -> int:
    """(sum parts)! / prod(parts_i!), exact."""
    out = 1
    rem = sum(parts)
    for p in parts:
        out *= math.comb(rem, p)
        rem -= p
    return out


def log2_binom(n: int, k: int) -> LogCount:
    """log2 of binom(n, k) via log-gamma; mirrors the zero convention of binom."""
    if n < 0 or k < 0 or k > n:
        return LogCount(0.0, is_zero=True)
    if k == 0 or k == n:
        return LogCount(0.0)
    v = (math.lgamma(n + 1) - math.lgamma(k + 1) - math.lgamma(n - k + 1)) / math.log(2.0)
    return LogCount(v)


def ternary_entropy(p_m1: float, p_0: float, p_1: float) -> float:
    """Entropy in bits of a distribution on three symbols, -sum p*log2(p).

    Equals the exponential growth rate (1/n)*log2 multinomial([p_m1*n, p_0*n, p_1*n]).
    """
    probs = (p_m1, p_0, p_1)
    if any(p < 0 for p in probs):
        raise ValueError(f"negative probability in {probs}")
    if abs(sum(probs) - 1.0) > 1e-12:
        raise ValueError(f"probabilities {probs} sum to {sum(probs)!r}, not 1")
    return -sum(p * math.log2(p) for p in probs if p > 0)


def is_prime_power(q: int) -> bool:
    """True iff q = p**a for a prime p and integer a >= 1. Note 1 is not a prime power."""
    if q < 2:
        return False
    for p in range(2, math.isqrt(q) + 1):
        if q % p == 0:
            while q % p == 0:
                q //= p
            return q == 1
    return True

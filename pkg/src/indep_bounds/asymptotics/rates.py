"""Growth-rate kernels for the constructive bounds.

The dominated-count of a vector x with symbol shares p is a sum of products of
three multinomials indexed by a 3x3 overlap matrix with both marginals p and
dot-product share >= threshold.  Its exponent is the maximum conditional
entropy H(Y|X) over that transportation polytope; the maximizer is an
exponential tilt of the product coupling, found by Sinkhorn scaling plus a
bisection on the tilt parameter.
"""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np

from .core import CELL_FLOOR, scaled_binary_entropy

#: dot-product weight of symbol pair (alpha, beta), alphas/betas in order (-1, 0, 1)
_G = np.array([[1.0, 0.0, -1.0], [0.0, 0.0, 0.0], [-1.0, 0.0, 1.0]])

_SINKHORN_ITERS = 56
_CURVE_THETAS = np.concatenate(
    [np.linspace(0.0, 4.0, 27), np.geomspace(4.4, 48.0, 21)]
)


def _entropy_bits(p: np.ndarray) -> float:
    q = p[p > CELL_FLOOR]
    return float(-(q * np.log2(q)).sum())


def _sinkhorn(base: np.ndarray, marg: np.ndarray, iters: int) -> np.ndarray:
    """Scale base (…, 3, 3) so both marginals equal marg (3,); batched."""
    u = base.copy()
    for _ in range(iters):
        rows = u.sum(axis=-1, keepdims=True)
        np.maximum(rows, 1e-300, out=rows)
        u *= (marg / rows.squeeze(-1))[..., :, None]
        cols = u.sum(axis=-2, keepdims=True)
        np.maximum(cols, 1e-300, out=cols)
        u *= (marg / cols.squeeze(-2))[..., None, :]
    return u


def _tilted_coupling(profile: np.ndarray, thetas: np.ndarray) -> np.ndarray:
    """Max-entropy couplings with marginals `profile` tilted by 2^{theta·g}."""
    p = np.maximum(profile, CELL_FLOOR)
    base = np.exp(
        math.log(2.0) * thetas[:, None, None] * _G[None, :, :]
    ) * (p[:, None] * p[None, :])[None, :, :]
    return _sinkhorn(base, p, _SINKHORN_ITERS)


def _coupling_stats(u: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """(dot share, joint entropy bits) for each coupling in the batch."""
    dots = (u * _G[None, :, :]).sum(axis=(-2, -1))
    safe = np.maximum(u, 1e-300)
    ents = -(u * np.log2(safe)).sum(axis=(-2, -1))
    return dots, ents


@lru_cache(maxsize=8192)
def _profile_curve(profile: tuple[float, float, float]):
    """Monotone (dot, H(Y|X)) samples along the tilt parameter for one profile."""
    p = np.array(profile, dtype=float)
    u = _tilted_coupling(p, _CURVE_THETAS)
    dots, ents = _coupling_stats(u)
    hx = _entropy_bits(np.maximum(p, CELL_FLOOR) / np.maximum(p, CELL_FLOOR).sum())
    cond = ents - hx
    order = np.argsort(dots, kind="stable")
    return dots[order], np.maximum(cond[order], 0.0)


def dominated_rate(profile, threshold: float, exact: bool = True) -> float:
    """Exponent of the dominated count: max H(Y|X), both marginals = profile, dot ≥ threshold.

    `profile` is the (share of -1, share of 0, share of 1) triple, summing to
    the total share of coordinates the vectors live on (1 for full-length
    vectors).  With exact=False a cached tilt-curve interpolation is used
    (cheap, ~1e-4 exponent accuracy); exact=True refines with a bisection.
    """
    p = np.asarray(profile, dtype=float)
    total = float(p.sum())
    if total <= CELL_FLOOR:
        return 0.0
    hx = _entropy_bits(p / total) * total  # scaled entropy of the profile
    max_dot = float(p[0] + p[2])
    prod_dot = float((p[2] - p[0]) ** 2 / total)
    if threshold <= prod_dot + 1e-12:
        return hx
    if threshold >= max_dot - 1e-12:
        return 0.0
    # work with the normalized profile, rescale rates at the end
    q = tuple(float(x) for x in p / total)
    thr = threshold / total
    if not exact:
        dots, conds = _profile_curve(q)
        return float(np.interp(thr, dots, conds)) * total
    qa = np.array(q)
    lo, hi = 0.0, 8.0
    while hi < 512.0:
        u = _tilted_coupling(qa, np.array([hi]))
        if float(_coupling_stats(u)[0][0]) >= thr:
            break
        hi *= 2.0
    for _ in range(90):
        mid = 0.5 * (lo + hi)
        u = _tilted_coupling(qa, np.array([mid]))
        if float(_coupling_stats(u)[0][0]) >= thr:
            hi = mid
        else:
            lo = mid
    u = _tilted_coupling(qa, np.array([hi]))
    dots, ents = _coupling_stats(u)
    cond = float(ents[0]) - _entropy_bits(qa)
    return max(cond, 0.0) * total


def achievable_family_rate(profile, threshold: float, exact: bool = True) -> float:
    """Exponent of the greedy-exclusion family size: H(profile) − dominated exponent."""
    p = np.asarray(profile, dtype=float)
    total = float(p.sum())
    if total <= CELL_FLOOR:
        return 0.0
    hx = _entropy_bits(p / total) * total
    return max(hx - dominated_rate(profile, threshold, exact=exact), 0.0)


def extras_frac(cells) -> float:
    """Fractional surplus-dot allowance of a table (min of three pairing budgets)."""
    c = cells
    m_m1 = c[0][0] + c[1][0] + c[2][0]
    m_1 = c[0][2] + c[1][2] + c[2][2]
    e1 = 2.0 * min(m_m1, m_1)
    pair_m1 = min(c[0][2], c[0][0])  # symbol -1 in blocks 1 and -1
    pair_1 = min(c[2][2], c[2][0])  # symbol 1 in blocks 1 and -1
    e2 = pair_m1 + pair_1 + min(m_m1, m_1)
    cross = min(c[2][2] + c[0][0], c[0][2] + c[2][0])
    e3 = pair_m1 + pair_1 + cross + c[1][2] + c[1][0]
    return min(e1, e2, e3)


def block_product_rate(cells) -> float:
    """Exponent of the per-block composition product (six binomials)."""
    total = 0.0
    for j in range(3):
        col = (cells[0][j], cells[1][j], cells[2][j])
        m = col[0] + col[1] + col[2]
        if m <= CELL_FLOOR:
            continue
        total += sum(-x * math.log2(x / m) for x in col if x > CELL_FLOOR)
    return total


def zero_block_rate(cells) -> float:
    """Exponent of the middle-block composition count alone."""
    col = (cells[0][1], cells[1][1], cells[2][1])
    m = col[0] + col[1] + col[2]
    if m <= CELL_FLOOR:
        return 0.0
    return sum(-x * math.log2(x / m) for x in col if x > CELL_FLOOR)


def _sbe_vec(total: np.ndarray, part: np.ndarray) -> np.ndarray:
    """Vectorized total·H(part/total) with the 0·H(0/0) = 0 convention."""
    total = np.asarray(total, dtype=float)
    part = np.asarray(part, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        x = np.where(total > CELL_FLOOR, part / np.maximum(total, CELL_FLOOR), 0.0)
        x = np.clip(x, 0.0, 1.0)
        h = -np.where(x > CELL_FLOOR, x * np.log2(x), 0.0) - np.where(
            1.0 - x > CELL_FLOOR, (1.0 - x) * np.log2(np.maximum(1.0 - x, CELL_FLOOR)), 0.0
        )
    return np.where(total > CELL_FLOOR, total * h, 0.0)


class CollisionEnvelope:
    """Running maximum of the cross-pair collision exponent over the l'-range.

    The collision count maximizes, over the share l' of paired-up coordinates,
    a double sum whose inner index always attains its hypergeometric mode; the
    remaining two-entropy term is concave in (l', j') with the j'-sum truncated
    below at t' − 2·(zero-block spill).  Since the thinning threshold s' only
    moves the l'-range's upper end, one envelope answers every s'-query.
    """

    _GRID = 512

    def __init__(self, cells, tp: float) -> None:
        c = cells
        self.m_m1 = c[0][0] + c[1][0] + c[2][0]
        self.m_1 = c[0][2] + c[1][2] + c[2][2]
        self.big = self.m_m1 + self.m_1
        sigma = c[2][2] + c[2][0] + c[0][0] + c[0][2]
        top = c[2][2] + c[2][0]
        j_lo = max(tp - 2.0 * (c[2][1] + c[0][1]), 0.0)
        l_lo = max(0.0, self.big - (1.0 - self.big), j_lo)
        # the j-window [max(j_lo, sigma-(big-l)), min(l, sigma)] is nonempty
        # iff l >= j_lo and sigma >= j_lo
        self.vanishes_always = sigma < j_lo - 1e-15 or l_lo > self.big + 1e-15
        self.l_lo = l_lo
        if self.vanishes_always:
            return
        ls = np.linspace(l_lo, self.big, self._GRID)
        jmin = np.maximum(j_lo, sigma - (self.big - ls))
        jmax = np.minimum(ls, sigma)
        mode = ls * sigma / self.big if self.big > CELL_FLOOR else np.zeros_like(ls)
        js = np.clip(mode, jmin, jmax)
        tail = float(scaled_binary_entropy(sigma, top))
        psi = _sbe_vec(ls, js) + _sbe_vec(self.big - ls, sigma - js) + tail
        psi = np.where(jmin <= jmax + 1e-15, psi, -np.inf)
        self._ls = ls
        self._env = np.maximum.accumulate(psi)

    def rate(self, sp: float) -> float | None:
        """Collision exponent at thinning threshold sp, or None when R vanishes."""
        if self.vanishes_always:
            return None
        l_hi = min(sp + 4.0 * min(self.m_m1, self.m_1), self.big)
        if l_hi < self.l_lo - 1e-15:
            return None
        val = float(np.interp(l_hi, self._ls, self._env))
        if val == -math.inf:
            return None
        return val


def collision_rate(cells, sp: float, tp: float) -> float | None:
    """One-shot collision exponent (builds the envelope internally)."""
    return CollisionEnvelope(cells, tp).rate(sp)

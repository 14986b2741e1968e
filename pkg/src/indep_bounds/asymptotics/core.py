"""Shared asymptotic kernels: entropy exponents, fractional tables, largest-term search.

Counting formulas built from binomials/multinomials grow like 2^{rate·n}; every
routine here works with those per-coordinate rates (bits).  Sums are replaced by
their largest term (polynomial factors vanish in the n-th root), products by
rate sums.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from ..combinatorics import ternary_entropy
from ..errors import EmptyRegion
from ..parameters import ALPHAS, BETAS, AsymptoticParams

THEOREM_IDS = ("T1", "T2", "T3", "T4", "T5", "T6", "T7", "T8")
LOWER_IDS = ("T4", "T5", "T6", "T7", "T8")
UPPER_IDS = ("T1", "T2", "T3")

#: entries below this are treated as structural zeros in entropy terms
CELL_FLOOR = 1e-12


def xlog2x(x: float) -> float:
    """x·log2(x) extended continuously by 0 at x = 0."""
    if x <= CELL_FLOOR:
        return 0.0
    return x * math.log2(x)


def binary_entropy(x: float) -> float:
    """H(x) = -x log2 x - (1-x) log2 (1-x), clamped to [0, 1] domain edges."""
    if x <= CELL_FLOOR or x >= 1.0 - CELL_FLOOR:
        return 0.0
    return -x * math.log2(x) - (1.0 - x) * math.log2(1.0 - x)


def scaled_binary_entropy(total: float, part: float) -> float:
    """Rate of C(total·n, part·n): total·H(part/total); 0 when total vanishes."""
    if total <= CELL_FLOOR:
        return 0.0
    return total * binary_entropy(part / total)


def composition_rate(parts: Sequence[float]) -> float:
    """Rate of the multinomial that splits Σparts·n coordinates into the given parts."""
    total = math.fsum(parts)
    if total <= CELL_FLOOR:
        return 0.0
    return math.fsum(xlog2x(p / total) * -total for p in parts if p > CELL_FLOOR)


def mdp_frac(a: float, b: float, c: float) -> float:
    """Fractional minimum dot product of two count-(a,b,c) blocks: max of 4 linear forms."""
    return max(-2.0 * a, -2.0 * c, a - 3.0 * c - b, c - 3.0 * a - b)


#: coefficient vectors (on (a, b, c) = column counts of -1, 0, 1) of the four
#: linear pieces whose maximum is mdp_frac
MDP_PIECES = (
    (-2.0, 0.0, 0.0),
    (0.0, 0.0, -2.0),
    (1.0, -1.0, -3.0),
    (-3.0, -1.0, 1.0),
)


@dataclass(frozen=True)
class FractionalTable:
    """Per-coordinate version of PartitionTable: block shares and cell shares.

    ``cells[a][b]`` is the share of coordinates carrying symbol ALPHAS[a] inside
    block BETAS[b].  Row sums are the symbol densities, column sums the block
    shares, the grand total 1.
    """

    cells: tuple[tuple[float, float, float], ...]

    def __post_init__(self) -> None:
        if len(self.cells) != 3 or any(len(r) != 3 for r in self.cells):
            raise ValueError("cells must be 3x3")

    def cell(self, alpha: int, beta: int) -> float:
        return self.cells[ALPHAS.index(alpha)][BETAS.index(beta)]

    def column(self, beta: int) -> tuple[float, float, float]:
        j = BETAS.index(beta)
        return tuple(self.cells[i][j] for i in range(3))

    def row(self, alpha: int) -> tuple[float, float, float]:
        return self.cells[ALPHAS.index(alpha)]

    @property
    def block_shares(self) -> tuple[float, float, float]:
        return tuple(math.fsum(self.cells[i][j] for i in range(3)) for j in range(3))

    @property
    def row_shares(self) -> tuple[float, float, float]:
        return tuple(math.fsum(self.cells[i]) for i in range(3))

    def mdp_sum(self) -> float:
        return math.fsum(mdp_frac(*self.column(b)) for b in BETAS)

    @staticmethod
    def from_array(arr: np.ndarray) -> "FractionalTable":
        a = np.asarray(arr, dtype=float).reshape(3, 3)
        return FractionalTable(tuple(tuple(float(x) for x in row) for row in a))

    def as_array(self) -> np.ndarray:
        return np.array(self.cells, dtype=float)

    def as_dict(self) -> dict:
        out = {}
        for j, b in enumerate(BETAS):
            out[f"m[{b}]"] = self.block_shares[j]
        for i, a in enumerate(ALPHAS):
            for j, b in enumerate(BETAS):
                out[f"m[{a},{b}]"] = self.cells[i][j]
        return out


def product_table(kp: AsymptoticParams, weights: Sequence[float]) -> FractionalTable:
    """Independent table: cell (α, β) = density(α)·weights(β)."""
    dens = kp.densities()
    return FractionalTable(
        tuple(tuple(dens[i] * weights[j] for j in range(3)) for i in range(3))
    )


@dataclass(frozen=True)
class CurvePoint:
    """One (t', theorem) evaluation: growth base and the parameters achieving it."""

    tp: float
    theorem_id: str
    lam: float | None
    feasible: bool = True
    reason: str = ""
    witness: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.feasible:
            if self.lam is None:
                raise ValueError("feasible point needs a growth base")
            if not (1.0 - 1e-9 <= self.lam <= 3.0 + 1e-9):
                raise ValueError(f"growth base {self.lam} outside [1, 3]")
        elif self.lam is not None:
            raise ValueError("infeasible point must not carry a growth base")


def lambda_vertex(kp: AsymptoticParams) -> float:
    """Growth base of the vertex set itself: 2^{H(densities)}."""
    return 2.0 ** ternary_entropy(*kp.densities())


@dataclass(frozen=True)
class FeasibleRegion:
    """Compact box plus extra vectorized membership predicates.

    ``bounds`` are closed per-dimension intervals; each entry of ``constraints``
    maps an (N, dim) float array to an (N,) boolean mask.
    """

    bounds: tuple[tuple[float, float], ...]
    constraints: tuple[Callable[[np.ndarray], np.ndarray], ...] = ()

    @property
    def dim(self) -> int:
        return len(self.bounds)

    def contains(self, pts: np.ndarray) -> np.ndarray:
        pts = np.atleast_2d(pts)
        ok = np.ones(len(pts), dtype=bool)
        for j, (lo, hi) in enumerate(self.bounds):
            ok &= (pts[:, j] >= lo - 1e-12) & (pts[:, j] <= hi + 1e-12)
        for g in self.constraints:
            ok &= g(pts)
        return ok


# grid budget: ~1e-3 spacing up to 2 dims, shrinking per-axis counts above that
_GRID_POINT_CAP = 2_000_000
_REFINE_STEP = 1e-5


def _axis_points(lo: float, hi: float, count: int) -> np.ndarray:
    if hi - lo <= 1e-15:
        return np.array([lo])
    return np.linspace(lo, hi, count)


def lambda_sum_max_term(
    exponent_fn: Callable[[np.ndarray], np.ndarray],
    feasible_region: FeasibleRegion,
) -> float:
    """Largest exponent of a sum over fractional indices: dense grid + local refinement.

    ``exponent_fn`` maps an (N, dim) array of index fractions to per-point rates
    (bits); the max over the region is the sum's growth rate.  Deterministic:
    fixed grids, fixed refinement schedule.  Raises EmptyRegion when no grid
    point is feasible.
    """
    return max_term_with_argmax(exponent_fn, feasible_region)[0]


def max_term_with_argmax(
    exponent_fn: Callable[[np.ndarray], np.ndarray],
    feasible_region: FeasibleRegion,
) -> tuple[float, np.ndarray]:
    """`lambda_sum_max_term` plus the maximizing index fractions (for witnesses)."""
    dim = feasible_region.dim
    if dim == 0:
        raise EmptyRegion("region has no dimensions")
    spans = [hi - lo for lo, hi in feasible_region.bounds]
    if dim <= 2:
        counts = [max(2, min(int(round(s / 1e-3)) + 1, 2001)) if s > 1e-15 else 1
                  for s in spans]
    else:
        per_axis = max(9, int(_GRID_POINT_CAP ** (1.0 / dim)))
        counts = [per_axis if s > 1e-15 else 1 for s in spans]
    axes = [
        _axis_points(lo, hi, c)
        for (lo, hi), c in zip(feasible_region.bounds, counts)
    ]
    mesh = np.meshgrid(*axes, indexing="ij")
    pts = np.stack([m.ravel() for m in mesh], axis=1)
    ok = feasible_region.contains(pts)
    if not ok.any():
        raise EmptyRegion("no feasible grid point in the index region")
    pts = pts[ok]
    vals = np.asarray(exponent_fn(pts), dtype=float)
    best_idx = int(np.argmax(vals))
    best = pts[best_idx].copy()
    best_val = float(vals[best_idx])

    # coordinate pattern search down to the refinement step
    step = max(max((s / (c - 1) if c > 1 else 0.0) for s, c in zip(spans, counts)),
               _REFINE_STEP)
    while step >= _REFINE_STEP * 0.999:
        improved = True
        guard = 0
        while improved and guard < 400:
            improved = False
            guard += 1
            cands = []
            for j in range(dim):
                for sgn in (1.0, -1.0):
                    c = best.copy()
                    c[j] += sgn * step
                    lo, hi = feasible_region.bounds[j]
                    c[j] = min(max(c[j], lo), hi)
                    cands.append(c)
            cands = np.array(cands)
            okc = feasible_region.contains(cands)
            if okc.any():
                vc = np.asarray(exponent_fn(cands[okc]), dtype=float)
                i = int(np.argmax(vc))
                if vc[i] > best_val + 1e-15:
                    best_val = float(vc[i])
                    best = cands[okc][i].copy()
                    improved = True
        step /= 2.0
    return best_val, best


def ternary_entropy_rows(pts: np.ndarray) -> np.ndarray:
    """Vectorized composition rate of rows of a (N, k) nonnegative array summing ≤ 1.

    Treats each row as a full composition of 1 (appending nothing): callers pass
    rows that already sum to 1.
    """
    p = np.clip(np.asarray(pts, dtype=float), 0.0, 1.0)
    with np.errstate(divide="ignore", invalid="ignore"):
        term = np.where(p > CELL_FLOOR, p * np.log2(p), 0.0)
    return -term.sum(axis=1)

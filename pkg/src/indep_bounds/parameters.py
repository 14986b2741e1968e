"""Problem instances, partition tables, their validation, and the minimum-dot-product formula."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .errors import InvalidProfile, InvalidTable

ALPHAS = (-1, 0, 1)  # coordinate symbols (row labels of a partition table)
BETAS = (-1, 0, 1)  # block labels (column labels of a partition table)
_IDX = {-1: 0, 0: 1, 1: 2}


@dataclass(frozen=True)
class FiniteParams:
    """One finite problem instance: vector length, symbol counts, forbidden dot product."""

    n: int
    k_m1: int
    k_0: int
    k_1: int
    t: int

    def counts(self) -> tuple[int, int, int]:
        return (self.k_m1, self.k_0, self.k_1)

    @property
    def max_dot(self) -> int:
        """Largest possible dot product of two vectors with this composition (attained by x=y)."""
        return self.k_m1 + self.k_1

    @property
    def canonical(self) -> "FiniteParams":
        """The instance with k_m1 <= k_1; negating every coordinate is a graph isomorphism."""
        if self.k_m1 <= self.k_1:
            return self
        return FiniteParams(self.n, self.k_1, self.k_0, self.k_m1, self.t)

    def is_vacuous(self) -> bool:
        """True when no pair of vectors can realize the forbidden product at all."""
        return not (mdp(self.k_m1, self.k_0, self.k_1) <= self.t <= self.max_dot)


@dataclass(frozen=True)
class AsymptoticParams:
    """Fractional profile (per-coordinate symbol densities) plus the scaled threshold."""

    kp_m1: float
    kp_0: float
    kp_1: float
    tp: float

    def __post_init__(self) -> None:
        fracs = (self.kp_m1, self.kp_0, self.kp_1)
        if not all(0.0 < f < 1.0 for f in fracs):
            raise InvalidProfile(f"densities {fracs} must each lie strictly in (0, 1)")
        if abs(sum(fracs) - 1.0) > 1e-12:
            raise InvalidProfile(f"densities {fracs} sum to {sum(fracs)!r}, not 1")

    def densities(self) -> tuple[float, float, float]:
        return (self.kp_m1, self.kp_0, self.kp_1)

    @property
    def max_tp(self) -> float:
        return self.kp_m1 + self.kp_1

    @property
    def canonical(self) -> "AsymptoticParams":
        if self.kp_m1 <= self.kp_1:
            return self
        return AsymptoticParams(self.kp_1, self.kp_0, self.kp_m1, self.tp)


@dataclass(frozen=True)
class PartitionTable:
    """Block sizes m_b and the twelve cell counts m_{a,b} (a = symbol, b = block).

    ``cells[i][j]`` holds the count for symbol ALPHAS[i] inside block BETAS[j];
    ``m[j]`` is the size of block BETAS[j].
    """

    m: tuple[int, int, int]
    cells: tuple[tuple[int, int, int], tuple[int, int, int], tuple[int, int, int]]

    def cell(self, alpha: int, beta: int) -> int:
        return self.cells[_IDX[alpha]][_IDX[beta]]

    def block_size(self, beta: int) -> int:
        return self.m[_IDX[beta]]

    def column(self, beta: int) -> tuple[int, int, int]:
        """Composition of one block: counts of -1, 0, 1 inside it."""
        j = _IDX[beta]
        return (self.cells[0][j], self.cells[1][j], self.cells[2][j])

    def row(self, alpha: int) -> tuple[int, int, int]:
        return self.cells[_IDX[alpha]]

    def row_sum(self, alpha: int) -> int:
        return sum(self.cells[_IDX[alpha]])

    def column_sum(self, beta: int) -> int:
        j = _IDX[beta]
        return sum(self.cells[i][j] for i in range(3))

    @property
    def negated(self) -> "PartitionTable":
        """The table after negating every coordinate (swap symbol and block signs)."""
        m = (self.m[2], self.m[1], self.m[0])
        cells = tuple(tuple(self.cells[2 - i][2 - j] for j in range(3)) for i in range(3))
        return PartitionTable(m, cells)  # type: ignore[arg-type]

    @classmethod
    def from_columns(
        cls,
        col_m1: Iterable[int] = (0, 0, 0),
        col_0: Iterable[int] = (0, 0, 0),
        col_1: Iterable[int] = (0, 0, 0),
    ) -> "PartitionTable":
        """Build a table from per-block compositions, each ordered (count of -1, 0, 1)."""
        cols = [tuple(col_m1), tuple(col_0), tuple(col_1)]
        if any(len(c) != 3 for c in cols):
            raise InvalidTable("each block composition needs exactly three counts")
        m = tuple(sum(c) for c in cols)
        cells = tuple(tuple(cols[j][i] for j in range(3)) for i in range(3))
        return cls(m, cells)  # type: ignore[arg-type]

    def as_dict(self) -> Mapping[str, int]:
        out: dict[str, int] = {}
        for b in BETAS:
            out[f"m[{b}]"] = self.block_size(b)
        for a in ALPHAS:
            for b in BETAS:
                out[f"m[{a},{b}]"] = self.cell(a, b)
        return out


@dataclass(frozen=True)
class GlueConfig:
    """A partition table plus the inner threshold t1 (and the thinning threshold s)."""

    table: PartitionTable
    t1: int
    s: int | None = None


def validate_finite(p: FiniteParams) -> FiniteParams:
    """Check structural sanity of an instance; returns it unchanged (canonical form attached)."""
    if p.n < 1:
        raise InvalidProfile(f"n = {p.n} must be at least 1")
    if min(p.k_m1, p.k_0, p.k_1) < 0:
        raise InvalidProfile(f"negative symbol count in {p.counts()}")
    if p.k_m1 + p.k_0 + p.k_1 != p.n:
        raise InvalidProfile(f"counts {p.counts()} sum to {sum(p.counts())}, expected n = {p.n}")
    return p


def mdp(k_m1: int, k_0: int, k_1: int) -> int:
    """Minimum dot product of two vectors sharing the composition (k_m1, k_0, k_1).

    Piecewise formula: when the zeros can absorb the imbalance between the signed
    symbols the minimum is -2*min(k_m1, k_1); otherwise leftover same-sign overlap
    forces max - 3*min - k_0.
    """
    if min(k_m1, k_0, k_1) < 0:
        raise ValueError(f"negative count in {(k_m1, k_0, k_1)}")
    lo = min(k_m1, k_1)
    hi = max(k_m1, k_1)
    if k_0 >= hi - lo:
        return -2 * lo
    return hi - 3 * lo - k_0


def validate_table(tab: PartitionTable, p: FiniteParams) -> PartitionTable:
    """Check row sums against symbol counts, column sums against block sizes, blocks against n."""
    if min(min(r) for r in tab.cells) < 0 or min(tab.m) < 0:
        raise InvalidTable("negative entry")
    if sum(tab.m) != p.n:
        raise InvalidTable(f"block sizes {tab.m} sum to {sum(tab.m)}, expected n = {p.n}")
    k = {-1: p.k_m1, 0: p.k_0, 1: p.k_1}
    for a in ALPHAS:
        if tab.row_sum(a) != k[a]:
            raise InvalidTable(f"row {a} sums to {tab.row_sum(a)}, expected k[{a}] = {k[a]}")
    for b in BETAS:
        if tab.column_sum(b) != tab.block_size(b):
            raise InvalidTable(
                f"column {b} sums to {tab.column_sum(b)}, expected m[{b}] = {tab.block_size(b)}"
            )
    return tab


def table_mdp_sum(tab: PartitionTable) -> int:
    """Sum over blocks of the per-block minimum dot product; empty blocks contribute 0."""
    total = 0
    for b in BETAS:
        if tab.block_size(b) > 0:
            total += mdp(*tab.column(b))
    return total

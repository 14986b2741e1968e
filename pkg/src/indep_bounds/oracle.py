"""Ground truth at desk scale: enumeration, exact independence numbers, brute-force counts."""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product

import numpy as np

from .combinatorics import binom
from .errors import ConditionsUnmet, InvalidTable, TooLarge
from .lower_bounds import vertex_count
from .parameters import (
    BETAS,
    FiniteParams,
    PartitionTable,
    validate_finite,
    validate_table,
)

DEFAULT_ENUM_CAP = 10**6
EXACT_ALPHA_CAP = 400


def _enum_cap() -> int:
    return int(os.environ.get("INDEP_BOUNDS_ENUM_CAP", DEFAULT_ENUM_CAP))


@dataclass(frozen=True)
class VectorSet:
    """An explicit list of vectors sharing one composition."""

    members: tuple[tuple[int, ...], ...]
    params: FiniteParams

    def __len__(self) -> int:
        return len(self.members)

    def as_array(self) -> np.ndarray:
        if not self.members:
            return np.zeros((0, self.params.n), dtype=np.int32)
        return np.array(self.members, dtype=np.int32)


def _compositions_of_block(c_m1: int, c_0: int, c_1: int) -> list[tuple[int, ...]]:
    """All arrangements of a fixed multiset of symbols, in lexicographic order."""
    out: list[tuple[int, ...]] = []
    vec: list[int] = []

    def rec(a: int, b: int, c: int) -> None:
        if a == 0 and b == 0 and c == 0:
            out.append(tuple(vec))
            return
        if a:
            vec.append(-1)
            rec(a - 1, b, c)
            vec.pop()
        if b:
            vec.append(0)
            rec(a, b - 1, c)
            vec.pop()
        if c:
            vec.append(1)
            rec(a, b, c - 1)
            vec.pop()

    rec(c_m1, c_0, c_1)
    return out


def enumerate_vertices(p: FiniteParams) -> VectorSet:
    """All vectors with the given composition, lexicographically ordered (-1 < 0 < 1)."""
    validate_finite(p)
    total = vertex_count(p)
    if total > _enum_cap():
        raise TooLarge(f"{total} vectors exceed the enumeration cap {_enum_cap()}")
    return VectorSet(tuple(_compositions_of_block(p.k_m1, p.k_0, p.k_1)), p)


def _bit_count(x: int) -> int:
    return x.bit_count()


def _greedy_independent(adj: list[int], cand: int) -> int:
    """Size of a minimum-degree greedy independent set; a fast incumbent for the search."""
    size = 0
    while cand:
        pick, pick_deg = -1, -1
        rem = cand
        while rem:
            v = (rem & -rem).bit_length() - 1
            rem &= rem - 1
            deg = _bit_count(adj[v] & cand)
            if pick < 0 or deg < pick_deg:
                pick, pick_deg = v, deg
        cand &= ~(adj[pick] | (1 << pick))
        size += 1
    return size


def _clique_cover_order(adj: list[int], cand: int) -> tuple[list[int], list[int]]:
    """Greedy clique cover of the candidate set.

    Returns the vertices in cover order and, per vertex, the number of cliques
    opened up to and including its own.  Any independent subset of the first i
    vertices has at most bounds[i-1] members, which drives the search pruning.
    """
    order: list[int] = []
    bounds: list[int] = []
    cliques = 0
    rem = cand
    while rem:
        cliques += 1
        v = (rem & -rem).bit_length() - 1
        rem &= rem - 1
        order.append(v)
        bounds.append(cliques)
        common = adj[v] & rem
        while common:
            u = (common & -common).bit_length() - 1
            rem ^= 1 << u
            order.append(u)
            bounds.append(cliques)
            common &= adj[u]
    return order, bounds


def _mis_on_masks(adj: list[int], verts: int, transitive: bool = False) -> int:
    """Exact maximum independent set size via branch and bound on bitmask adjacency.

    With transitive=True the caller asserts a vertex-transitive graph; then all
    connected components are isomorphic (solve one, multiply) and some maximum
    independent set contains any chosen vertex (force it at the root).
    """
    best = 0

    def expand(cand: int, size: int) -> None:
        nonlocal best
        # fold in vertices with no remaining neighbors, and apply the degree-1 rule
        while cand:
            changed = False
            rem = cand
            while rem:
                v = (rem & -rem).bit_length() - 1
                rem &= rem - 1
                if not (cand >> v) & 1:
                    continue  # removed earlier in this sweep
                nb = adj[v] & cand
                if nb == 0:
                    cand &= ~(1 << v)
                    size += 1
                    changed = True
                elif nb & (nb - 1) == 0:
                    # single neighbor: taking v is always at least as good
                    cand &= ~((1 << v) | nb)
                    size += 1
                    changed = True
            if not changed:
                break
        if cand == 0:
            if size > best:
                best = size
            return
        order, bounds = _clique_cover_order(adj, cand)
        # process vertices in reverse cover order; bounds shrink with the index,
        # so one failed check prunes every remaining branch of this node
        for i in range(len(order) - 1, -1, -1):
            if size + bounds[i] <= best:
                return
            v = order[i]
            new_cand = cand & ~(adj[v] | (1 << v))
            if new_cand:
                expand(new_cand, size + 1)
            elif size + 1 > best:
                best = size + 1
            cand &= ~(1 << v)

    # independent connected components can be solved separately
    components: list[int] = []
    seen = 0
    for v in range(verts):
        bit = 1 << v
        if seen & bit:
            continue
        comp = bit
        frontier = adj[v] & ~seen
        while frontier:
            comp |= frontier
            nxt = 0
            f = frontier
            while f:
                u = (f & -f).bit_length() - 1
                f &= f - 1
                nxt |= adj[u]
            frontier = nxt & ~comp
        seen |= comp
        components.append(comp)

    multiplier = 1
    if transitive and len(components) > 1:
        sizes = {_bit_count(c) for c in components}
        if len(sizes) > 1:  # pragma: no cover - transitivity guarantees equal sizes
            raise AssertionError("components of a vertex-transitive graph must match")
        multiplier = len(components)
        components = components[:1]

    total = 0
    for comp in components:
        best = _greedy_independent(adj, comp)
        if transitive:
            root = (comp & -comp).bit_length() - 1
            expand(comp & ~(adj[root] | (1 << root)), 1)
        else:
            expand(comp, 0)
        total += best
    return total * multiplier


def _adjacency_masks(dots: np.ndarray, predicate: np.ndarray) -> list[int]:
    m = predicate.copy()
    np.fill_diagonal(m, False)
    out = []
    for row in m:
        mask = 0
        for j in np.flatnonzero(row):
            mask |= 1 << int(j)
        out.append(mask)
    return out


@lru_cache(maxsize=4096)
@lru_cache(maxsize=4096)
def independence_number_exact(p: FiniteParams) -> int:
    """Exact largest set of vectors avoiding pairwise dot product t (distinct pairs only)."""
    validate_finite(p)
    if p.k_m1 > p.k_1:
        # negating every vector swaps the symbol counts and preserves all dots
        return independence_number_exact(FiniteParams(p.n, p.k_1, p.k_0, p.k_m1, p.t))
    total = vertex_count(p)
    if total > EXACT_ALPHA_CAP:
        raise TooLarge(f"{total} vertices exceed the exact-solver cap {EXACT_ALPHA_CAP}")
    arr = enumerate_vertices(p).as_array()
    dots = arr @ arr.T
    adj = _adjacency_masks(dots, dots == p.t)
    if not any(adj):
        return total
    # coordinate permutations act transitively on a composition class and
    # preserve all dot products, so the graph is vertex-transitive
    return _mis_on_masks(adj, total, transitive=True)


@lru_cache(maxsize=4096)
def h_exact(p: FiniteParams) -> int:
    """Exact largest set with all pairwise dots of distinct members strictly below t."""
    validate_finite(p)
    total = vertex_count(p)
    if total > EXACT_ALPHA_CAP:
        raise TooLarge(f"{total} vertices exceed the exact-solver cap {EXACT_ALPHA_CAP}")
    arr = enumerate_vertices(p).as_array()
    dots = arr @ arr.T
    adj = _adjacency_masks(dots, dots >= p.t)
    if not any(adj):
        return total
    return _mis_on_masks(adj, total, transitive=True)


def brute_mdp(k_m1: int, k_0: int, k_1: int) -> int:
    """Minimum dot product over all ordered vector pairs of one composition, by enumeration."""
    n = k_m1 + k_0 + k_1
    if n > 10:
        raise TooLarge(f"n = {n} exceeds the brute-force cap 10")
    arr = enumerate_vertices(FiniteParams(n, k_m1, k_0, k_1, 0)).as_array()
    return int((arr @ arr.T).min())


def brute_d_count(p: FiniteParams) -> int:
    """Count of vectors y with (x, y) >= t for the lexicographically first x, by enumeration."""
    validate_finite(p)
    if p.n > 8:
        raise TooLarge(f"n = {p.n} exceeds the brute-force cap 8")
    arr = enumerate_vertices(p).as_array()
    counts = (arr @ arr.T >= p.t).sum(axis=1)
    reference = int(counts[0])
    # the count must not depend on the base vector; spot-check a few others
    size = len(counts)
    for idx in {size // 3, (2 * size) // 3, size - 1}:
        if int(counts[idx]) != reference:
            raise AssertionError(
                f"domination count differs between base vectors 0 and {idx} on {p}"
            )
    return reference


def build_ak_set(p: FiniteParams, tab: PartitionTable) -> VectorSet:
    """All vectors whose per-block composition matches the table, blocks laid out consecutively."""
    validate_finite(p)
    validate_table(tab, p)
    if p.n > 14:
        raise TooLarge(f"n = {p.n} exceeds the construction cap 14")
    per_block = [_compositions_of_block(*tab.column(b)) for b in BETAS]
    members = tuple(
        tuple(x for part in combo for x in part) for combo in product(*per_block)
    )
    return VectorSet(members, p)


def build_pairs_set(p: FiniteParams) -> VectorSet:
    """All vectors supported on whole coordinate pairs {1,2}, {3,4}, ... (dots all even)."""
    validate_finite(p)
    failures = []
    if p.n % 2 != 0:
        failures.append(f"n = {p.n} is odd")
    if (p.k_1 + p.k_m1) % 2 != 0:
        failures.append(f"k[1] + k[-1] = {p.k_1 + p.k_m1} is odd")
    if p.t % 2 == 0:
        failures.append(f"t = {p.t} is even")
    if failures:
        raise ConditionsUnmet("; ".join(failures))
    if p.n > 14:
        raise TooLarge(f"n = {p.n} exceeds the construction cap 14")
    half = p.n // 2
    weight = p.k_1 + p.k_m1
    members = []
    for chosen in combinations(range(half), weight // 2):
        slots = [c for pair in chosen for c in (2 * pair, 2 * pair + 1)]
        for ones in combinations(range(weight), p.k_1):
            vec = [0] * p.n
            one_positions = set(ones)
            for pos, coord in enumerate(slots):
                vec[coord] = 1 if pos in one_positions else -1
            members.append(tuple(vec))
    return VectorSet(tuple(members), p)


def iter_small_instances(max_n: int, vertex_cap: int = EXACT_ALPHA_CAP):
    """All instances with n <= max_n, |V| <= vertex_cap, and t an achievable dot value.

    Thresholds run over the closed dot-product range [mdp, k_m1 + k_1]; values
    outside it give edgeless or unchanged graphs and add nothing.
    """
    from .parameters import mdp

    for n in range(1, max_n + 1):
        for k_m1 in range(n + 1):
            for k_0 in range(n - k_m1 + 1):
                k_1 = n - k_m1 - k_0
                base = FiniteParams(n, k_m1, k_0, k_1, 0)
                if vertex_count(base) > vertex_cap:
                    continue
                for t in range(mdp(k_m1, k_0, k_1), k_m1 + k_1 + 1):
                    yield FiniteParams(n, k_m1, k_0, k_1, t)


def verify_independent(vs: VectorSet, t: int, mode: str) -> bool:
    """True iff all distinct pairs satisfy (x, y) != t ('neq') or (x, y) < t ('less')."""
    if mode not in ("neq", "less"):
        raise ValueError(f"unknown mode {mode!r}")
    arr = vs.as_array()
    size = len(arr)
    if size <= 1:
        return True
    step = max(1, min(size, 2**22 // max(1, size)))
    for start in range(0, size, step):
        block = arr[start : start + step] @ arr.T
        if mode == "neq":
            bad = block == t
        else:
            bad = block >= t
        for local, row in enumerate(bad):
            row[start + local] = False
        if bad.any():
            return False
    return True

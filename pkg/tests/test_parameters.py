"""Instance and partition-table types, validation, and the minimum-dot formula."""

import pytest
from hypothesis import given
from hypothesis import strategies as st

from indep_bounds.errors import InvalidProfile, InvalidTable
from indep_bounds.parameters import (
    FiniteParams,
    PartitionTable,
    mdp,
    table_mdp_sum,
    validate_finite,
    validate_table,
)

counts_st = st.tuples(st.integers(0, 12), st.integers(0, 12), st.integers(0, 12))


def single_block_table(k_m1: int, k_0: int, k_1: int) -> PartitionTable:
    return PartitionTable.from_columns((0, 0, 0), (k_m1, k_0, k_1), (0, 0, 0))


class TestValidateFinite:
    def test_accepts_consistent_instance(self):
        p = FiniteParams(3, 1, 1, 1, 1)
        assert validate_finite(p) is p

    def test_rejects_count_mismatch(self):
        with pytest.raises(InvalidProfile):
            validate_finite(FiniteParams(3, 2, 2, 2, 1))

    def test_rejects_negative_counts_and_tiny_n(self):
        with pytest.raises(InvalidProfile):
            validate_finite(FiniteParams(1, -1, 1, 1, 0))
        with pytest.raises(InvalidProfile):
            validate_finite(FiniteParams(0, 0, 0, 0, 0))

    def test_canonical_swaps_signed_counts(self):
        p = FiniteParams(4, 3, 0, 1, 0)
        assert p.canonical == FiniteParams(4, 1, 0, 3, 0)
        assert FiniteParams(4, 1, 0, 3, 0).canonical == FiniteParams(4, 1, 0, 3, 0)


class TestMdp:
    @pytest.mark.parametrize(
        "counts,expect",
        [((1, 1, 1), -2), ((0, 1, 2), 1), ((2, 0, 2), -4), ((0, 5, 2), 0)],
    )
    def test_known_values(self, counts, expect):
        assert mdp(*counts) == expect

    @given(counts_st)
    def test_negation_symmetry(self, counts):
        a, b, c = counts
        assert mdp(a, b, c) == mdp(c, b, a)

    @given(counts_st)
    def test_floor_and_equality_condition(self, counts):
        a, b, c = counts
        value = mdp(a, b, c)
        assert value >= -2 * min(a, c)
        assert (value == -2 * min(a, c)) == (b >= abs(c - a))

    def test_matches_enumeration_on_small_profiles(self):
        from indep_bounds.oracle import brute_mdp

        for a in range(4):
            for b in range(4):
                for c in range(4):
                    if 0 < a + b + c <= 6:
                        assert mdp(a, b, c) == brute_mdp(a, b, c)


class TestValidateTable:
    def test_single_block_table_is_valid(self):
        p = FiniteParams(3, 1, 1, 1, 1)
        tab = single_block_table(1, 1, 1)
        assert validate_table(tab, p) is tab

    def test_rejects_any_cell_decrement(self):
        p = FiniteParams(4, 1, 2, 1, 0)
        cells = [[0, 1, 0], [0, 1, 1], [1, 0, 0]]
        m = tuple(sum(cells[i][j] for i in range(3)) for j in range(3))
        validate_table(PartitionTable(m, tuple(tuple(r) for r in cells)), p)
        for i in range(3):
            for j in range(3):
                if cells[i][j] == 0:
                    continue
                bad = [row[:] for row in cells]
                bad[i][j] -= 1
                with pytest.raises(InvalidTable):
                    validate_table(
                        PartitionTable(m, tuple(tuple(r) for r in bad)), p
                    )

    @given(counts_st, st.integers(0, 2), st.integers(0, 2), st.integers(-2, 2))
    def test_fuzz_block_size_mismatch(self, counts, j, i, delta):
        if delta == 0 or sum(counts) == 0:
            return
        tab = single_block_table(*counts)
        m = list(tab.m)
        m[j] += delta
        p = FiniteParams(sum(counts), *counts, 0)
        with pytest.raises(InvalidTable):
            validate_table(PartitionTable(tuple(m), tab.cells), p)


class TestTableMdpSum:
    def test_single_block_equals_whole_profile_mdp(self):
        assert table_mdp_sum(single_block_table(1, 1, 1)) == -2

    def test_two_blocks_add_their_minima(self):
        tab = PartitionTable.from_columns((0, 0, 4), (0, 2, 0), (0, 0, 0))
        assert table_mdp_sum(tab) == 4

    def test_empty_table_contributes_nothing(self):
        tab = PartitionTable.from_columns((0, 0, 0), (0, 0, 0), (0, 0, 0))
        assert table_mdp_sum(tab) == 0


class TestPartitionTable:
    def test_dict_roundtrip_names_blocks_and_cells(self):
        tab = PartitionTable.from_columns((1, 0, 0), (0, 1, 0), (0, 1, 1))
        d = tab.as_dict()
        assert d["m[-1]"] == 1 and d["m[0]"] == 1 and d["m[1]"] == 2
        assert d["m[-1,-1]"] == 1 and d["m[0,1]"] == 1 and d["m[1,1]"] == 1

    def test_negation_swaps_signed_rows_and_columns(self):
        tab = PartitionTable.from_columns((1, 0, 0), (0, 1, 0), (0, 1, 1))
        neg = tab.negated
        assert neg.cell(1, 1) == tab.cell(-1, -1)
        assert neg.cell(-1, -1) == tab.cell(1, 1)
        assert neg.block_size(1) == tab.block_size(-1)

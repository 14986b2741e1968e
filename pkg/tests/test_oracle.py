"""Enumeration-based reference implementations used to certify the formulas."""

import pytest
from hypothesis import given
from hypothesis import strategies as st

from indep_bounds.errors import ConditionsUnmet, InvalidTable, TooLarge
from indep_bounds.oracle import (
    VectorSet,
    brute_d_count,
    brute_mdp,
    build_ak_set,
    build_pairs_set,
    enumerate_vertices,
    h_exact,
    independence_number_exact,
    iter_small_instances,
    verify_independent,
)
from indep_bounds.parameters import FiniteParams, PartitionTable, mdp


def single_block_table(k_m1: int, k_0: int, k_1: int) -> PartitionTable:
    return PartitionTable.from_columns((0, 0, 0), (k_m1, k_0, k_1), (0, 0, 0))


class TestEnumeration:
    def test_counts_match_the_multinomial(self):
        from indep_bounds.lower_bounds import vertex_count

        for p in (FiniteParams(3, 1, 1, 1, 0), FiniteParams(6, 1, 3, 2, 0)):
            assert len(enumerate_vertices(p)) == vertex_count(p)

    def test_lexicographic_order(self):
        vs = enumerate_vertices(FiniteParams(3, 0, 1, 2, 0))
        assert vs.members == ((0, 1, 1), (1, 0, 1), (1, 1, 0))

    def test_degenerate_composition(self):
        vs = enumerate_vertices(FiniteParams(2, 2, 0, 0, 0))
        assert vs.members == ((-1, -1),)


class TestExactIndependenceNumber:
    def test_known_values(self):
        assert independence_number_exact(FiniteParams(3, 1, 1, 1, 1)) == 3
        assert independence_number_exact(FiniteParams(4, 0, 2, 2, 0)) == 3

    def test_unreachable_threshold_gives_whole_set(self):
        assert independence_number_exact(FiniteParams(3, 1, 1, 1, 5)) == 6

    def test_negation_symmetry(self):
        a = independence_number_exact(FiniteParams(4, 3, 0, 1, -1))
        b = independence_number_exact(FiniteParams(4, 1, 0, 3, -1))
        assert a == b


class TestStrictThresholdNumber:
    def test_known_values(self):
        assert h_exact(FiniteParams(3, 1, 1, 1, 1)) == 3
        assert h_exact(FiniteParams(3, 1, 1, 1, -1)) == 2
        assert h_exact(FiniteParams(4, 0, 2, 2, 1)) == 2

    def test_at_least_the_greedy_exclusion_bound(self):
        from indep_bounds.lower_bounds import vg_lower_bound

        for p in (
            FiniteParams(3, 1, 1, 1, 1),
            FiniteParams(4, 1, 2, 1, 1),
            FiniteParams(5, 1, 2, 2, 0),
        ):
            assert h_exact(p) >= vg_lower_bound(p).value


class TestBruteForceScalars:
    def test_minimum_dot(self):
        assert brute_mdp(1, 0, 2) == -1
        assert brute_mdp(1, 1, 1) == -2

    def test_domination_count(self):
        assert brute_d_count(FiniteParams(3, 1, 1, 1, 1)) == 3
        assert brute_d_count(FiniteParams(3, 1, 1, 1, -2)) == 6

    def test_size_caps(self):
        with pytest.raises(TooLarge):
            brute_mdp(4, 4, 4)
        with pytest.raises(TooLarge):
            brute_d_count(FiniteParams(9, 3, 3, 3, 0))


class TestBlockConstruction:
    def test_single_block_lists_all_arrangements(self):
        p = FiniteParams(3, 0, 1, 2, 0)
        vs = build_ak_set(p, single_block_table(0, 1, 2))
        assert set(vs.members) == {(0, 1, 1), (1, 0, 1), (1, 1, 0)}

    def test_forced_layout_gives_one_vector(self):
        p = FiniteParams(6, 0, 2, 4, 3)
        tab = PartitionTable.from_columns((0, 0, 4), (0, 2, 0), (0, 0, 0))
        vs = build_ak_set(p, tab)
        assert vs.members == ((1, 1, 1, 1, 0, 0),)

    def test_mismatched_table_rejected(self):
        p = FiniteParams(3, 0, 1, 2, 0)
        with pytest.raises(InvalidTable):
            build_ak_set(p, single_block_table(1, 1, 1))


class TestPairSupportConstruction:
    def test_known_members(self):
        vs = build_pairs_set(FiniteParams(4, 1, 2, 1, 1))
        assert len(vs) == 4
        assert set(vs.members) == {
            (1, -1, 0, 0),
            (-1, 1, 0, 0),
            (0, 0, 1, -1),
            (0, 0, -1, 1),
        }

    def test_even_threshold_rejected(self):
        with pytest.raises(ConditionsUnmet):
            build_pairs_set(FiniteParams(4, 1, 2, 1, 2))

    def test_odd_dimension_rejected(self):
        with pytest.raises(ConditionsUnmet):
            build_pairs_set(FiniteParams(5, 1, 3, 1, 1))

    @given(
        st.integers(0, 2),
        st.integers(0, 2),
        st.integers(0, 3),
    )
    def test_all_dots_even(self, km1, extra, halfzeros):
        k1 = km1 + 2 * extra
        k0 = 2 * halfzeros
        n = km1 + k0 + k1
        if n == 0:
            return
        p = FiniteParams(n, km1, k0, k1, 1)
        vs = build_pairs_set(p)
        arr = vs.as_array()
        assert ((arr @ arr.T) % 2 == 0).all()


class TestIndependenceChecker:
    def test_accepts_an_independent_family(self):
        vs = build_pairs_set(FiniteParams(4, 1, 2, 1, 1))
        assert verify_independent(vs, 1, "neq")

    def test_rejects_a_colliding_pair(self):
        p = FiniteParams(2, 1, 0, 1, -2)
        vs = VectorSet(((1, -1), (-1, 1)), p)
        assert not verify_independent(vs, -2, "neq")
        assert not verify_independent(vs, -2, "less")

    def test_unknown_mode(self):
        vs = VectorSet((), FiniteParams(2, 1, 0, 1, 0))
        with pytest.raises(ValueError):
            verify_independent(vs, 0, "leq")


class TestInstanceIterator:
    def test_yields_valid_in_range_thresholds(self):
        seen = set()
        for p in iter_small_instances(3):
            assert p.n <= 3
            assert p.k_m1 + p.k_0 + p.k_1 == p.n
            assert mdp(p.k_m1, p.k_0, p.k_1) <= p.t <= p.k_m1 + p.k_1
            assert p not in seen
            seen.add(p)
        assert len(seen) > 10

    def test_vertex_cap_filters(self):
        from indep_bounds.lower_bounds import vertex_count

        for p in iter_small_instances(6, vertex_cap=30):
            assert vertex_count(p) <= 30

"""Finite-dimension lower bounds: counting families that avoid the forbidden product."""

import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from indep_bounds.combinatorics import binom
from indep_bounds.errors import EmptyRange
from indep_bounds.parameters import (
    FiniteParams,
    GlueConfig,
    PartitionTable,
    mdp,
    table_mdp_sum,
)
from indep_bounds.lower_bounds import (
    ak_lower_bound,
    extras,
    glue_lower_bound,
    pairs_lower_bound,
    superglue_R,
    superglue_lower_bound,
    vertex_count,
    vg_dominated_count,
    vg_lower_bound,
)


def single_block_table(k_m1: int, k_0: int, k_1: int) -> PartitionTable:
    return PartitionTable.from_columns((0, 0, 0), (k_m1, k_0, k_1), (0, 0, 0))


WEIGHT44_TABLE = PartitionTable.from_columns((0, 0, 4), (0, 2, 0), (0, 0, 0))
WEIGHT44 = FiniteParams(6, 0, 2, 4, 3)

small_instances = st.builds(
    lambda a, b, c, t: FiniteParams(a + b + c, a, b, c, t),
    st.integers(0, 2),
    st.integers(1, 4),
    st.integers(0, 2),
    st.integers(-3, 4),
)


class TestVertexCount:
    def test_known_values(self):
        assert vertex_count(FiniteParams(3, 1, 1, 1, 0)) == 6
        assert vertex_count(FiniteParams(6, 1, 3, 2, 0)) == 60
        assert vertex_count(FiniteParams(4, 0, 2, 2, 0)) == 6


class TestDominatedCount:
    def test_known_values(self):
        assert vg_dominated_count(FiniteParams(3, 1, 1, 1, 1)) == 3
        assert vg_dominated_count(FiniteParams(3, 1, 1, 1, 3)) == 0
        assert vg_dominated_count(WEIGHT44) == 9

    @given(small_instances)
    def test_matches_enumeration(self, p):
        from indep_bounds.oracle import brute_d_count

        assert vg_dominated_count(p) == brute_d_count(p)


class TestGreedyExclusionBound:
    def test_known_values(self):
        assert vg_lower_bound(FiniteParams(3, 1, 1, 1, 1)).value == 2
        assert vg_lower_bound(WEIGHT44).value == 2

    def test_zero_dominated_count_reports_whole_vertex_set(self):
        res = vg_lower_bound(FiniteParams(3, 1, 1, 1, 3))
        assert res.conditions_met
        assert res.value == 6
        assert "whole vertex set" in res.reason

    @given(small_instances)
    def test_ceiling_identity(self, p):
        res = vg_lower_bound(p)
        v = vertex_count(p)
        d = vg_dominated_count(p)
        assert res.value <= v
        if d > 0:
            assert res.value * d >= v
            assert (res.value - 1) * d < v


class TestBlockProductBound:
    def test_single_block_at_positive_minimum(self):
        res = ak_lower_bound(FiniteParams(3, 0, 1, 2, 0), single_block_table(0, 1, 2))
        assert res.conditions_met and res.value == 3

    def test_two_block_forced_layout(self):
        res = ak_lower_bound(WEIGHT44, WEIGHT44_TABLE)
        assert res.conditions_met and res.value == 1

    def test_unmet_when_minimum_dot_sum_too_small(self):
        res = ak_lower_bound(FiniteParams(3, 1, 1, 1, 1), single_block_table(1, 1, 1))
        assert not res.conditions_met
        assert "minimum-dot" in res.reason

    @given(small_instances)
    def test_value_counts_the_explicit_construction(self, p):
        from indep_bounds.oracle import build_ak_set, verify_independent

        tab = single_block_table(*p.counts())
        res = ak_lower_bound(p, tab)
        if not res.conditions_met:
            return
        vs = build_ak_set(p, tab)
        assert len(vs.members) == res.value
        assert verify_independent(vs, p.t, "neq")


class TestExtras:
    def test_zero_when_one_signed_block_empty(self):
        tab = PartitionTable.from_columns((0, 0, 0), (1, 2, 0), (0, 1, 2))
        assert tab.block_size(-1) == 0
        assert extras(tab) == 0

    def test_third_form_wins(self):
        tab = PartitionTable.from_columns((1, 0, 3), (0, 1, 0), (3, 0, 1))
        assert extras(tab) == 4

    def test_zero_table(self):
        tab = PartitionTable.from_columns((0, 0, 0), (0, 1, 0), (0, 0, 0))
        assert extras(tab) == 0


class TestGlueBound:
    def test_known_value(self):
        res = glue_lower_bound(WEIGHT44, GlueConfig(WEIGHT44_TABLE, t1=3))
        assert res.conditions_met and res.value == 2

    def test_inner_threshold_above_outer_is_rejected(self):
        res = glue_lower_bound(WEIGHT44, GlueConfig(WEIGHT44_TABLE, t1=4))
        assert not res.conditions_met
        assert "t1" in res.reason

    def test_minimum_dot_gate(self):
        p = FiniteParams(3, 1, 1, 1, 1)
        res = glue_lower_bound(p, GlueConfig(single_block_table(1, 1, 1), t1=0))
        assert not res.conditions_met


class TestThinnedGlue:
    def test_collision_count_zero_when_no_window(self):
        assert superglue_R(WEIGHT44, GlueConfig(WEIGHT44_TABLE, 1, s=2)) == 0

    def test_collision_count_matches_direct_sums(self):
        cfg = GlueConfig(WEIGHT44_TABLE, 1, s=3)
        got = superglue_R(WEIGHT44, cfg)
        tab = cfg.table
        m_m1, m_0, m_1 = (tab.block_size(b) for b in (-1, 0, 1))
        j_lo = WEIGHT44.t - 2 * (tab.cell(1, 0) + tab.cell(-1, 0))
        sigma = sum(tab.cell(a, b) for a in (-1, 1) for b in (-1, 1))
        top = tab.cell(1, 1) + tab.cell(1, -1)
        best = 0
        for l in range(max(0, m_m1 + m_1 - m_0), min(3 + 4 * min(m_m1, m_1), m_m1 + m_1) + 1):
            acc = 0
            for j in range(j_lo, l + 1):
                inner = sum(binom(j, i) * binom(sigma - j, top - i) for i in range(j + 1))
                acc += binom(l, j) * binom(m_m1 + m_1 - l, sigma - j) * inner
            best = max(best, acc)
        assert got == best

    def test_value_with_vanishing_collisions(self):
        res = superglue_lower_bound(WEIGHT44, GlueConfig(WEIGHT44_TABLE, 1, s=2))
        assert res.conditions_met and res.value == 1

    def test_threshold_ordering_enforced(self):
        res = superglue_lower_bound(WEIGHT44, GlueConfig(WEIGHT44_TABLE, 2, s=2))
        assert not res.conditions_met
        assert "strictly between" in res.reason

    def test_empty_overlap_interval_raises_in_collision_count(self):
        tab = PartitionTable.from_columns((0, 0, 0), (0, 0, 0), (0, 0, 5))
        p = FiniteParams(5, 0, 0, 5, 2)
        with pytest.raises(EmptyRange):
            superglue_R(p, GlueConfig(tab, 0, s=1))


class TestPairSupportBound:
    def test_known_value(self):
        res = pairs_lower_bound(FiniteParams(4, 1, 2, 1, 1))
        assert res.conditions_met and res.value == 4

    def test_even_threshold_rejected(self):
        res = pairs_lower_bound(FiniteParams(4, 1, 2, 1, 2))
        assert not res.conditions_met
        assert "odd" in res.reason or "even" in res.reason

    def test_odd_weight_rejected(self):
        res = pairs_lower_bound(FiniteParams(4, 1, 2, 1, 1))
        assert res.conditions_met
        res = pairs_lower_bound(FiniteParams(4, 0, 3, 1, 1))
        assert not res.conditions_met

    @given(small_instances)
    def test_value_counts_the_explicit_construction(self, p):
        from indep_bounds.oracle import build_pairs_set, verify_independent

        res = pairs_lower_bound(p)
        if not res.conditions_met:
            return
        vs = build_pairs_set(p)
        assert len(vs.members) == res.value
        arr = vs.as_array()
        dots = arr @ arr.T
        assert (dots % 2 == 0).all()
        assert verify_independent(vs, p.t, "neq")


class TestSwapInvariance:
    @given(small_instances)
    def test_scalar_bounds_ignore_sign_convention(self, p):
        q = FiniteParams(p.n, p.k_1, p.k_0, p.k_m1, p.t)
        assert vg_dominated_count(p) == vg_dominated_count(q)
        assert vg_lower_bound(p).value == vg_lower_bound(q).value
        rp, rq = pairs_lower_bound(p), pairs_lower_bound(q)
        assert rp.conditions_met == rq.conditions_met
        if rp.conditions_met:
            assert rp.value == rq.value

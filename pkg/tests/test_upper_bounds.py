"""Polynomial-method upper bounds and their regime gates."""

import math
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from indep_bounds.combinatorics import binom, is_prime_power
from indep_bounds.errors import InvalidTable
from indep_bounds.parameters import FiniteParams, PartitionTable
from indep_bounds.upper_bounds import (
    _truncated_pair_sum,
    flower_upper_bound,
    fw_upper_bound,
    ponrai_factor_forms,
    ponrai_upper_bound,
)

def single_block_table(k_m1: int, k_0: int, k_1: int) -> PartitionTable:
    return PartitionTable.from_columns((0, 0, 0), (k_m1, k_0, k_1), (0, 0, 0))


class TestTruncatedPairSum:
    @pytest.mark.parametrize("n,q", [(4, 2), (6, 3), (8, 4), (5, 1)])
    def test_matches_double_loop(self, n, q):
        want = 0
        for i in range(n + 1):
            for j in range(n - i + 1):
                if i + 2 * j <= q - 1:
                    want += binom(n, i) * binom(n - i, j)
        assert _truncated_pair_sum(n, q) == want

    def test_q_one_counts_only_the_empty_pattern(self):
        assert _truncated_pair_sum(7, 1) == 1


class TestGlobalPolynomialBound:
    def test_known_value(self):
        res = fw_upper_bound(FiniteParams(4, 0, 2, 2, 0))
        assert res.conditions_met
        assert res.value == 5
        assert res.witness["q"] == 2

    def test_weight_gate(self):
        res = fw_upper_bound(FiniteParams(3, 1, 1, 1, 0))
        assert not res.conditions_met
        assert "n/2" in res.reason

    def test_non_prime_power_q(self):
        res = fw_upper_bound(FiniteParams(4, 0, 2, 2, 1))
        assert not res.conditions_met
        assert "prime power" in res.reason

    def test_regime_gate(self):
        # weight - 2q = t, and t >= -2*k[-1] puts the instance in the other regime
        res = fw_upper_bound(FiniteParams(8, 1, 5, 2, 1))
        assert not res.conditions_met
        assert "not below" in res.reason


class TestSplitPolynomialBound:
    def test_small_weight_case_value(self):
        res = flower_upper_bound(FiniteParams(6, 1, 3, 2, 1))
        assert res.conditions_met
        assert res.value == 36
        assert res.witness["case"] == 1

    def test_minus_count_gate(self):
        res = flower_upper_bound(FiniteParams(6, 2, 2, 2, 1))
        assert not res.conditions_met
        assert "exceeds t" in res.reason

    def test_large_weight_case_value(self):
        p = FiniteParams(12, 0, 6, 6, 4)
        res = flower_upper_bound(p)
        assert res.conditions_met
        assert res.witness["case"] == 2
        assert res.value == 132
        assert 0 < res.value <= binom(p.n, p.k_m1) * 2 ** (p.k_1 + p.k_0)
        internals = res.witness["internals"]
        assert internals["d"] == 2 * (p.t - p.k_m1) - p.k_1 + 1
        assert internals["d1"] + internals["d2"] == internals["d"]
        assert internals["r"] >= 1

    def test_no_valid_split_reported(self):
        res = flower_upper_bound(FiniteParams(9, 0, 5, 4, 2))
        assert not res.conditions_met
        assert "branching radius" in res.reason


PONRAI_TABLE = PartitionTable.from_columns((1, 1, 0), (0, 0, 0), (0, 1, 1))


class TestPartitionedPolynomialBound:
    def test_known_value(self):
        res = ponrai_upper_bound(FiniteParams(4, 1, 2, 1, 0), PONRAI_TABLE)
        assert res.conditions_met
        assert res.value == 15
        assert res.witness["q"] == 2

    def test_uninformative_table_rejected(self):
        with pytest.raises(InvalidTable, match="minimum-dot"):
            ponrai_upper_bound(FiniteParams(4, 1, 2, 1, 0), single_block_table(1, 2, 1))

    def test_regime_gate(self):
        res = ponrai_upper_bound(FiniteParams(4, 0, 2, 2, 0), single_block_table(0, 2, 2))
        assert not res.conditions_met
        assert "below" in res.reason


class TestRegimeComplementarity:
    def test_exactly_one_regime_admits_each_instance(self):
        checked = 0
        for n in range(2, 9):
            for km1 in range(0, 3):
                for k1 in range(km1, 4):
                    k0 = n - km1 - k1
                    if k0 < 0:
                        continue
                    weight = km1 + k1
                    for t in range(-2 * min(km1, k1), weight + 1):
                        q = weight - t
                        if 2 * weight > n or not is_prime_power(q):
                            continue
                        p = FiniteParams(n, km1, k0, k1, t)
                        fw = fw_upper_bound(p)
                        fw_regime = weight - 2 * q < -2 * km1
                        assert fw.conditions_met == fw_regime
                        try:
                            pr = ponrai_upper_bound(p, single_block_table(km1, k0, k1))
                        except InvalidTable:
                            pr = None
                        if pr is not None and pr.conditions_met:
                            assert not fw.conditions_met
                        checked += 1
        assert checked > 20


class TestFactorForms:
    def test_two_forms_agree_on_random_tables(self):
        rng = random.Random(20260819)
        checked = 0
        while checked < 60:
            n = rng.randint(2, 12)
            km1 = rng.randint(0, n)
            k0 = rng.randint(0, n - km1)
            k1 = n - km1 - k0
            p = FiniteParams(n, km1, k0, k1, 0)
            cols = {-1: [0, 0, 0], 0: [0, 0, 0], 1: [0, 0, 0]}
            for idx, count in enumerate((km1, k0, k1)):
                x = rng.randint(0, count)
                y = rng.randint(0, count - x)
                cols[-1][idx], cols[0][idx], cols[1][idx] = x, y, count - x - y
            tab = PartitionTable.from_columns(
                tuple(cols[-1]), tuple(cols[0]), tuple(cols[1])
            )
            fact, ratio = ponrai_factor_forms(p, tab)
            assert fact == ratio
            assert fact >= 1
            checked += 1

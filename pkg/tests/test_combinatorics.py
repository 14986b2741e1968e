"""Exact counting kernels: binomials, multinomials, entropy, prime powers."""

import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from indep_bounds.combinatorics import (
    binom,
    is_prime_power,
    log2_binom,
    multinomial,
    ternary_entropy,
)


class TestBinom:
    def test_small_values(self):
        assert binom(5, 2) == 10
        assert binom(0, 0) == 1
        assert binom(7, 7) == 1

    def test_out_of_range_is_zero(self):
        assert binom(4, 7) == 0
        assert binom(4, -1) == 0
        assert binom(-2, 1) == 0

    @given(st.integers(0, 300), st.integers(0, 300))
    def test_symmetry(self, n, k):
        if k <= n:
            assert binom(n, k) == binom(n, n - k)

    @given(st.integers(1, 200), st.integers(-3, 203))
    def test_pascal_identity_with_zero_convention(self, n, k):
        assert binom(n, k) == binom(n - 1, k) + binom(n - 1, k - 1)


class TestMultinomial:
    def test_small_values(self):
        assert multinomial([1, 1, 1]) == 6
        assert multinomial([2, 0, 2]) == 6
        assert multinomial([1, 3, 2]) == 60

    def test_matches_iterated_binomials(self):
        assert multinomial([1, 3, 2]) == binom(6, 1) * binom(5, 3)

    @given(st.lists(st.integers(0, 12), min_size=1, max_size=5))
    def test_order_invariance(self, parts):
        assert multinomial(parts) == multinomial(sorted(parts))
        assert multinomial(parts) == multinomial(list(reversed(parts)))

    @given(st.lists(st.integers(0, 20), min_size=1, max_size=4))
    def test_factorial_definition(self, parts):
        total = sum(parts)
        expect = math.factorial(total)
        for part in parts:
            expect //= math.factorial(part)
        assert multinomial(parts) == expect


class TestLog2Binom:
    def test_small_value(self):
        got = log2_binom(4, 2)
        assert not got.is_zero
        assert got.log2_value == pytest.approx(math.log2(6), abs=1e-12)

    def test_zero_flag_mirrors_exact_convention(self):
        assert log2_binom(4, 7).is_zero
        assert log2_binom(-1, 0).is_zero
        assert not log2_binom(0, 0).is_zero
        assert log2_binom(0, 0).log2_value == 0.0

    def test_large_central_value_against_exact(self):
        exact = math.log2(math.comb(1000, 500))
        got = log2_binom(1000, 500)
        assert got.log2_value == pytest.approx(exact, rel=1e-9)

    @given(st.integers(0, 2000))
    def test_agrees_with_exact_log(self, n):
        for k in {0, min(1, n), n // 3, n // 2, n}:
            got = log2_binom(n, k)
            exact = math.log2(math.comb(n, k))
            assert not got.is_zero
            tol = 1e-9 * max(1.0, exact)
            assert abs(got.log2_value - exact) <= tol


class TestTernaryEntropy:
    def test_degenerate_and_uniform(self):
        assert ternary_entropy(0.0, 0.5, 0.5) == pytest.approx(1.0, abs=1e-12)
        assert ternary_entropy(0.0, 0.0, 1.0) == 0.0
        third = 1.0 / 3.0
        assert ternary_entropy(third, third, third) == pytest.approx(
            math.log2(3), abs=1e-12
        )

    def test_rejects_bad_inputs(self):
        with pytest.raises(ValueError):
            ternary_entropy(-0.1, 0.6, 0.5)
        with pytest.raises(ValueError):
            ternary_entropy(0.3, 0.3, 0.3)

    @pytest.mark.parametrize("n", [100, 1000])
    def test_is_multinomial_growth_rate(self, n):
        a, b, c = 0.2, 0.5, 0.3
        counts = [round(a * n), round(b * n), round(c * n)]
        counts[1] = n - counts[0] - counts[2]
        rate = math.log2(multinomial(counts)) / n
        target = ternary_entropy(a, b, c)
        assert abs(rate - target) <= 2 * math.log2(n + 1) / n


class TestIsPrimePower:
    def test_examples(self):
        assert is_prime_power(8)
        assert not is_prime_power(12)
        assert not is_prime_power(1)
        assert not is_prime_power(0)
        assert is_prime_power(2)
        assert is_prime_power(27)
        assert is_prime_power(49)
        assert not is_prime_power(6)

    def test_against_sieve(self):
        primes = [p for p in range(2, 200) if all(p % d for d in range(2, p))]
        truth = set()
        for p in primes:
            q = p
            while q < 200:
                truth.add(q)
                q *= p
        for q in range(200):
            assert is_prime_power(q) == (q in truth)

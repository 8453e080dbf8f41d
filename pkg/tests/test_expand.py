from fractions import Fraction as F
from math import factorial

import pytest
from hypothesis import given, settings, strategies as st

from primeprod import qseries
from primeprod.arith import euler_phi, moebius
from primeprod.expand import (
    ADAPTIVE,
    ALL_MINUS,
    ALL_PLUS,
    ExponentSequence,
    SignSequence,
    binomial,
    divisor_identity_holds,
    exponents_from_g,
    exponents_moebius,
    growth_bound_check,
    partition_sum_b,
    reconstruct_b,
    rewrite_adaptive,
)
from primeprod.qseries import RationalSeries as S, g_from_b

from conftest import small_fractions, unit_series


def g_of(values):
    return S.of(values)


def exp_z_g(M):
    return g_of([1] + [0] * (M - 1))


def signs(draw_list):
    return SignSequence.explicit(draw_list)


sign_lists = st.lists(st.sampled_from([1, -1]), min_size=40, max_size=40)


class TestExponentsFromG:
    def test_exp_z(self):
        a = exponents_from_g(exp_z_g(4), ALL_MINUS, 4)
        assert a.alphas == (-1, F(1, 2), F(1, 3), 0)

    def test_exp_z_over_z_minus_1(self):
        a = exponents_from_g(g_of([-n for n in range(1, 5)]), ALL_MINUS, 4)
        assert a.alphas == (1, F(1, 2), F(2, 3), F(1, 2))

    def test_one_plus_z(self):
        # 1 + z = (1 - z^2) / (1 - z)
        g = g_from_b(S.of([1, 1] + [0] * 9))
        a = exponents_from_g(g, ALL_MINUS, 10)
        assert a.alphas == (-1, 1) + (0,) * 8
        assert reconstruct_b(a) == S.of([1, 1] + [0] * 9)

    def test_all_plus(self):
        # 1 + z with eps = +1 is just (1 + z)^1
        g = g_from_b(S.of([1, 1] + [0] * 6))
        assert exponents_from_g(g, ALL_PLUS, 7).alphas == (1,) + (0,) * 6

    def test_alpha_n_has_coefficient_n(self):
        # changing g_M only moves alpha_M, by -delta/M
        g = g_of([F(1, 3), 2, -1, 5, 7])
        bumped = g_of([F(1, 3), 2, -1, 5, 7 + 10])
        a, b = exponents_from_g(g, ALL_MINUS, 5), exponents_from_g(bumped, ALL_MINUS, 5)
        assert a.alphas[:4] == b.alphas[:4]
        assert b.alpha(5) - a.alpha(5) == F(-10, 5)

    @given(st.lists(small_fractions(), min_size=30, max_size=30), sign_lists)
    def test_defining_identity_and_determinism(self, gs, sl):
        g = g_of(gs)
        eps = signs(sl)
        a = exponents_from_g(g, eps, 30)
        assert divisor_identity_holds(g, a)
        assert exponents_from_g(g, eps, 30) == a

    def test_adaptive_strategy_routes_through_rewrite(self):
        g = g_from_b(S.of([1, 1, 0, 0, 0]))
        a = exponents_from_g(g, ADAPTIVE, 4)
        assert a.signs == (1, -1, -1, -1) and a.alphas == (1, 0, 0, 0)


class TestMoebiusPath:
    def test_a1_integrand(self):
        b = S.of([1, 0, F(-1, 24)])
        g = g_from_b(b)
        assert list(g) == [0, F(-1, 12)]
        assert exponents_moebius(g, 2).alphas == (0, F(1, 24))

    def test_zero(self):
        assert exponents_moebius(g_of([0] * 6), 6).alphas == (0,) * 6

    def test_closed_forms(self):
        M = 60
        a = exponents_moebius(exp_z_g(M), M)
        assert all(a.alpha(n) == F(-moebius(n), n) for n in range(1, M + 1))
        a = exponents_moebius(g_of([-n for n in range(1, M + 1)]), M)
        assert all(a.alpha(n) == F(euler_phi(n), n) for n in range(1, M + 1))

    @settings(max_examples=25)
    @given(st.randoms(use_true_random=False))
    def test_agrees_with_recursion(self, rnd):
        g = g_of([F(rnd.randint(-9, 9), rnd.randint(1, 6)) for _ in range(100)])
        assert exponents_moebius(g, 100) == exponents_from_g(g, ALL_MINUS, 100)


class TestReconstruct:
    def test_exp_minus_z(self):
        a = ExponentSequence.with_signs([F(moebius(n), n) for n in range(1, 11)], ALL_MINUS)
        assert reconstruct_b(a) == S.of([F((-1) ** k, factorial(k)) for k in range(11)])

    def test_zero(self):
        assert reconstruct_b(ExponentSequence.with_signs([0] * 5, ALL_MINUS)) == S.constant(1, 5)

    def test_exp_z_over_z_minus_1(self):
        a = ExponentSequence.with_signs([F(euler_phi(n), n) for n in range(1, 11)], ALL_MINUS)
        expected = qseries.exp(qseries.div(-S.z(11), S.of([1, -1], 11)))
        assert reconstruct_b(a) == expected.truncate(10)

    @settings(max_examples=30, deadline=None)
    @given(unit_series(min_order=1, max_order=15), sign_lists)
    def test_oracle_equivalence(self, b, sl):
        a = exponents_from_g(g_from_b(b), signs(sl), b.order)
        assert reconstruct_b(a) == b


class TestPartitionSum:
    def test_first_coefficient(self):
        a = ExponentSequence((F(3, 7), F(1, 2)), (1, -1))
        assert partition_sum_b(a, 1) == F(3, 7)

    def test_exp_minus_z(self):
        a = ExponentSequence.with_signs([F(moebius(n), n) for n in range(1, 4)], ALL_MINUS)
        assert partition_sum_b(a, 3) == F(-1, 6)

    def test_zero(self):
        a = ExponentSequence.with_signs([0] * 6, ALL_PLUS)
        assert all(partition_sum_b(a, n) == 0 for n in range(1, 7))

    def test_binomial(self):
        assert binomial(F(1, 2), 2) == F(-1, 8)
        assert binomial(F(5), 2) == 10
        assert binomial(F(-1), 3) == -1

    @settings(max_examples=20, deadline=None)
    @given(st.lists(small_fractions(), min_size=12, max_size=12), st.lists(st.sampled_from([1, -1]), min_size=12, max_size=12))
    def test_matches_reconstruct(self, alphas, sl):
        a = ExponentSequence(tuple(alphas), tuple(sl))
        b = reconstruct_b(a)
        assert all(partition_sum_b(a, n) == b[n] for n in range(1, 13))


class TestIntegrality:
    @settings(max_examples=30, deadline=None)
    @given(st.lists(st.integers(-9, 9), min_size=1, max_size=6), sign_lists)
    def test_integer_b_gives_integer_alpha(self, coeffs, sl):
        b = S.of([1] + coeffs, 40)
        a = exponents_from_g(g_from_b(b), signs(sl), 40)
        assert all(x.denominator == 1 for x in a.alphas)

    @settings(max_examples=30, deadline=None)
    @given(st.lists(st.integers(-4, 4), min_size=15, max_size=15), st.lists(st.sampled_from([1, -1]), min_size=15, max_size=15))
    def test_integer_alpha_gives_integer_b(self, alphas, sl):
        b = reconstruct_b(ExponentSequence(tuple(alphas), tuple(sl)))
        assert all(x.denominator == 1 for x in b)

    def test_non_integer_b_gives_non_integer_alpha(self):
        # alpha_n enters b_n only as eps_n alpha_n, so a fractional b_1 shows up in alpha_1
        a = exponents_from_g(g_from_b(S.of([1, F(1, 2), 3, 0])), ALL_MINUS, 3)
        assert a.alpha(1).denominator != 1


class TestAdaptive:
    def test_one_plus_z(self):
        hat = ExponentSequence.with_signs([-1, 1] + [0] * 8, ALL_MINUS)
        a = rewrite_adaptive(hat)
        assert a.signs[0] == 1 and a.alpha(1) == 1
        assert all(x == 0 for x in a.alphas[1:])
        assert reconstruct_b(a) == S.of([1, 1] + [0] * 9)

    def test_nonnegative_input_unchanged(self):
        hat = ExponentSequence.with_signs([F(1, 2), 0, 3, F(1, 5)], ALL_MINUS)
        a = rewrite_adaptive(hat)
        assert a.alphas == hat.alphas and a.signs == hat.signs

    def test_rejects_non_minus_input(self):
        with pytest.raises(ValueError):
            rewrite_adaptive(ExponentSequence.with_signs([1, 1], ALL_PLUS))

    @settings(max_examples=30, deadline=None)
    @given(st.lists(small_fractions(), min_size=20, max_size=20))
    def test_same_function_nonnegative_exponents(self, alphas):
        hat = ExponentSequence.with_signs(alphas, ALL_MINUS)
        a = rewrite_adaptive(hat)
        assert all(x >= 0 for x in a.alphas)
        assert reconstruct_b(a) == reconstruct_b(hat)


class TestGrowth:
    def test_exp_z(self):
        g = exp_z_g(50)
        assert growth_bound_check(g, exponents_from_g(g, ALL_MINUS, 50))

    def test_zero(self):
        g = g_of([0] * 10)
        assert growth_bound_check(g, exponents_from_g(g, ALL_MINUS, 10))

    def test_detects_violation(self):
        g = exp_z_g(3)
        fake = ExponentSequence.with_signs([1, 5, 0], ALL_MINUS)
        assert not growth_bound_check(g, fake)

    @settings(max_examples=25, deadline=None)
    @given(st.lists(small_fractions(), min_size=100, max_size=100), st.lists(st.sampled_from([1, -1]), min_size=100, max_size=100))
    def test_random(self, gs, sl):
        g = g_of(gs)
        assert growth_bound_check(g, exponents_from_g(g, signs(sl), 100))

    @settings(max_examples=30)
    @given(st.fractions(F(1, 10), 1, max_denominator=10), st.fractions(F(1, 10), 20, max_denominator=10),
           st.lists(st.fractions(-1, 1, max_denominator=9), min_size=40, max_size=40))
    def test_geometric_bound_carries_over(self, R, B, units):
        # |g_n| <= B / R^n  implies  |alpha_n| <= B / R^n for eps = -1
        g = g_of([u * B / R**n for n, u in enumerate(units, start=1)])
        a = exponents_moebius(g, 40)
        assert all(abs(a.alpha(n)) <= B / R**n for n in range(1, 41))

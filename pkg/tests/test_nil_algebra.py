"""Algebra arithmetic, filtration, and the path view of powers."""

import math
import random

import numpy as np
import pytest

from uteq import AlgebraElement, PositionSet, SupportPath

from helpers import rand_algebra


def e(p, m, a, b, c=1):
    return AlgebraElement.unit(p, m, a, b, c)


class TestPositionSet:
    def test_linear_layout(self):
        pos = PositionSet(3, 3)
        assert pos.m == 7
        assert [pos.label(i) for i in (1, 2, 3)] == [1, 4, 7]
        assert pos.alpha(1, 1) == 2
        assert pos.alpha(2, 2) == 6
        assert pos.block_of(5) == (2, 1)
        assert pos.block_of(4) == (2, 0)
        assert pos.is_label(4) and not pos.is_label(5)

    def test_q_one_is_plain_range(self):
        pos = PositionSet(4, 1)
        assert pos.m == 4
        assert [pos.label(i) for i in range(1, 5)] == [1, 2, 3, 4]

    def test_size_identity(self):
        for n in range(2, 6):
            for q in (1, 2, 3, 4, 9):
                assert PositionSet(n, q).m == (n - 1) * q + 1

    def test_rejects_degenerate(self):
        with pytest.raises(ValueError):
            PositionSet(1, 2)
        with pytest.raises(ValueError):
            PositionSet(3, 0)


class TestAdd:
    def test_identity_element(self):
        a = e(5, 3, 1, 2, 3)
        assert a + AlgebraElement.zero(5, 3) == a

    def test_char_two_cancellation(self):
        a = e(2, 3, 1, 2)
        assert (a + a).is_zero()

    def test_disjoint_support_union(self):
        s = e(3, 3, 1, 2) + e(3, 3, 2, 3)
        assert s.support() == [(1, 2), (2, 3)]

    def test_mismatch_rejected(self):
        with pytest.raises(ValueError):
            e(2, 3, 1, 2) + e(3, 3, 1, 2)
        with pytest.raises(ValueError):
            e(2, 3, 1, 2) + e(2, 4, 1, 2)


class TestMul:
    def test_chained_units_compose(self):
        assert e(5, 3, 1, 2) * e(5, 3, 2, 3) == e(5, 3, 1, 3)

    def test_non_chained_units_vanish(self):
        assert (e(5, 3, 1, 2) * e(5, 3, 1, 2)).is_zero()

    def test_square_against_matrix_oracle(self):
        # (e12 + e23)^2 via plain numpy matrix product
        for p in (2, 3, 5):
            a = e(p, 3, 1, 2) + e(p, 3, 2, 3)
            oracle = (a.table @ a.table) % p
            assert np.array_equal((a * a).table, oracle)
            assert a * a == e(p, 3, 1, 3)


class TestFiltrationLevel:
    def test_zero_is_infinite(self):
        assert AlgebraElement.zero(3, 3).filtration_level() == math.inf

    def test_first_superdiagonal(self):
        assert e(3, 3, 1, 2).filtration_level() == 1

    def test_corner_of_three(self):
        # e13 = e12 * e23 sits one level deeper
        a = e(3, 3, 1, 2) * e(3, 3, 2, 3)
        assert a == e(3, 3, 1, 3)
        assert a.filtration_level() == 2


class TestPaths:
    def test_single_chain(self):
        a = e(2, 3, 1, 2) + e(2, 3, 2, 3)
        paths = a.paths_ending_at(3, 2)
        assert paths == [SupportPath((1, 2, 3), 1)]

    def test_no_long_path(self):
        a = e(2, 3, 1, 2) + e(2, 3, 2, 3)
        assert a.paths_ending_at(3, 3) == []

    def test_weight_is_edge_product(self):
        a = AlgebraElement.from_entries(5, 3, {(1, 2): 2, (2, 3): 3})
        (path,) = a.paths_ending_at(3, 2)
        assert path.weight == (2 * 3) % 5 == 1

    def test_lexicographic_order(self):
        a = AlgebraElement.from_entries(
            3, 4, {(1, 2): 1, (1, 3): 1, (2, 4): 1, (3, 4): 1, (2, 3): 1}
        )
        paths = a.paths_ending_at(4, 2)
        assert [p.vertices for p in paths] == [(1, 2, 4), (1, 3, 4), (2, 3, 4)]


class TestPowerViaPaths:
    def test_square_of_chain(self):
        for p in (2, 3, 5):
            a = e(p, 3, 1, 2) + e(p, 3, 2, 3)
            assert a.power_via_paths(2) == e(p, 3, 1, 3)

    def test_beyond_length_is_zero(self):
        rng = random.Random(0)
        for _ in range(20):
            a = rand_algebra(rng, 3, 5)
            l = a.max_path_length()
            if l == 0:
                continue
            assert a.power_via_paths(l + 1).is_zero()
            assert a.power(l + 1).is_zero()

    def test_zero_element(self):
        assert AlgebraElement.zero(3, 4).power_via_paths(1).is_zero()


CONFIGS = [(2, 4), (3, 4), (5, 3), (2, 6)]


class TestProperties:
    def test_associativity(self):
        rng = random.Random(1)
        for p, m in CONFIGS:
            for _ in range(1000):
                a, b, c = (rand_algebra(rng, p, m) for _ in range(3))
                assert (a * b) * c == a * (b * c)

    def test_filtration_multiplicativity(self):
        rng = random.Random(2)
        for p, m in CONFIGS:
            for _ in range(300):
                a, b = rand_algebra(rng, p, m), rand_algebra(rng, p, m)
                assert (a * b).filtration_level() >= (
                    a.filtration_level() + b.filtration_level()
                )

    def test_nilpotency(self):
        rng = random.Random(3)
        for p, m in CONFIGS:
            for _ in range(50):
                assert rand_algebra(rng, p, m).power(m).is_zero()

    def test_path_power_agreement(self):
        rng = random.Random(4)
        for p, m in [(2, 4), (3, 4), (2, 6)]:
            for _ in range(25):
                a = rand_algebra(rng, p, m)
                for exp in range(1, m + 1):
                    assert a.power_via_paths(exp) == a.power(exp)

    def test_length_bound(self):
        rng = random.Random(5)
        for p, m in CONFIGS:
            for _ in range(100):
                assert rand_algebra(rng, p, m).max_path_length() <= m - 1


class TestHygiene:
    def test_rejects_non_prime_modulus(self):
        with pytest.raises(ValueError):
            AlgebraElement.zero(6, 3)

    def test_rejects_lower_positions(self):
        with pytest.raises(ValueError):
            AlgebraElement.unit(3, 3, 2, 2)
        with pytest.raises(ValueError):
            AlgebraElement.unit(3, 3, 3, 1)

    def test_from_array_validates(self):
        with pytest.raises(ValueError):
            AlgebraElement.from_array(3, [[0, 1], [1, 0]])
        with pytest.raises(ValueError):
            AlgebraElement.from_array(3, [[0, 4], [0, 0]])

    def test_values_are_canonical_residues(self):
        a = AlgebraElement.unit(5, 3, 1, 2, -1)
        assert a.coeff(1, 2) == 4

    def test_immutability(self):
        a = AlgebraElement.unit(3, 3, 1, 2)
        with pytest.raises(ValueError):
            a.table[0, 1] = 2

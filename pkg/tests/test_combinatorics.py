"""
Tests for exact combinatorics: Stirling numbers, Bernoulli numbers, h(r)
and the triangular convolution inversion
"""

import random
from fractions import Fraction
from math import factorial

import pytest

from psik.combinatorics import (
    Sequence,
    bernoulli,
    enumerate_h_solutions,
    forward_convolve,
    h_of_r,
    h_table,
    invert_sequence,
    log_power_derivative_coefficients,
    stirling_first,
    stirling_kernel,
    toeplitz_inverse_oracle,
)
from psik.errors import DomainError, SingularKernelError


def _random_fraction(rng, nonzero=False):
    while True:
        value = Fraction(rng.randint(-20, 20), rng.randint(1, 9))
        if value or not nonzero:
            return value


class TestStirlingFirst:
    """Signed Stirling numbers of the first kind"""

    @pytest.mark.parametrize('n,m,expected', [
        (0, 0, 1),
        (1, 1, 1),
        (2, 1, -1),
        (2, 2, 1),
        (3, 1, 2),
        (4, 1, -6),
        (4, 2, 11),
        (5, 3, 35),
        (6, 3, -225),
    ])
    def test_known_values(self, n, m, expected):
        assert stirling_first(n, m) == expected

    def test_zero_above_diagonal(self):
        assert stirling_first(3, 5) == 0
        assert stirling_first(4, 0) == 0

    @pytest.mark.parametrize('n', [2, 5, 12, 30])
    def test_falling_factorial_at_one_vanishes(self, n):
        """x(x-1)...(x-n+1) is zero at x = 1 for n >= 2"""
        assert sum(stirling_first(n, m) for m in range(n + 1)) == 0

    @pytest.mark.parametrize('n', [1, 7, 20])
    def test_absolute_row_sum_is_factorial(self, n):
        assert sum(abs(stirling_first(n, m)) for m in range(n + 1)) == factorial(n)

    def test_negative_arguments_rejected(self):
        with pytest.raises(DomainError):
            stirling_first(-1, 0)

    def test_kernel_holds_row(self):
        kernel = stirling_kernel(3)
        assert [kernel[i] for i in range(1, 5)] == [2, -3, 1, 0]


class TestBernoulli:
    """Bernoulli numbers with B_1 = -1/2"""

    @pytest.mark.parametrize('n,expected', [
        (0, Fraction(1)),
        (1, Fraction(-1, 2)),
        (2, Fraction(1, 6)),
        (4, Fraction(-1, 30)),
        (12, Fraction(-691, 2730)),
    ])
    def test_known_values(self, n, expected):
        assert bernoulli(n) == expected

    @pytest.mark.parametrize('n', [3, 5, 21])
    def test_odd_values_vanish(self, n):
        assert bernoulli(n) == 0


class TestLogPowerDerivativeCoefficients:
    """d^p/du^p [log^j(u)/u] = u^(-p-1) Σ c_t log^(j-t)(u)"""

    @pytest.mark.parametrize('p', [0, 1, 4])
    def test_reciprocal_derivatives(self, p):
        assert log_power_derivative_coefficients(0, p) == [(-1) ** p * factorial(p)]

    def test_first_derivative_of_log_over_u(self):
        """(log u / u)' = (1 - log u)/u²"""
        assert log_power_derivative_coefficients(1, 1) == [-1, 1]


class TestPartitionSolutions:
    """Solutions of Σ i b_i = 2r, Σ b_i = r"""

    def test_r_zero_is_empty_solution(self):
        solutions = enumerate_h_solutions(0)
        assert len(solutions) == 1
        assert solutions[0].b == ()

    def test_r_two(self):
        assert [s.b for s in enumerate_h_solutions(2)] == [(0, 2, 0), (1, 0, 1)]

    @pytest.mark.parametrize('r,count', [(1, 1), (3, 3), (4, 5), (6, 11), (10, 42)])
    def test_count_is_partition_number(self, r, count):
        """Partitions of 2r into exactly r parts are counted by p(r)"""
        assert len(enumerate_h_solutions(r)) == count

    @pytest.mark.parametrize('r', [1, 5, 9])
    def test_constraints_hold_without_duplicates(self, r):
        solutions = enumerate_h_solutions(r)
        assert len({s.b for s in solutions}) == len(solutions)
        for solution in solutions:
            assert len(solution.b) == r + 1
            assert sum(solution.b) == r
            assert sum(i * b for i, b in enumerate(solution.b, start=1)) == 2 * r

    def test_negative_r_rejected(self):
        with pytest.raises(DomainError):
            enumerate_h_solutions(-1)


class TestH:
    """h(r) and its inversion identity"""

    def test_h_zero_is_one(self):
        assert h_of_r(0, [Fraction(3), Fraction(5)]) == 1

    def test_stirling_kernel_z2(self):
        """With s(i) = s(2, i): h(0) = h(1) = h(2) = 1"""
        assert h_table(stirling_kernel(2), 2) == [1, 1, 1]

    def test_accepts_callable_kernel(self):
        assert h_of_r(3, lambda i: i) == h_of_r(3, Sequence.kernel([1, 2, 3, 4]))

    def test_short_list_kernel_reads_zero(self):
        """A plain list kernel behaves like Sequence.kernel past its last entry"""
        s = [Fraction(2), Fraction(-3)]
        for r in range(6):
            assert h_of_r(r, s) == h_of_r(r, Sequence.kernel(s))
        assert forward_convolve([1, 1, 1, 1], s, 3) == forward_convolve(
            Sequence.values([1, 1, 1, 1]), Sequence.kernel(s), 3)
        assert toeplitz_inverse_oracle(s, 4)[3] == toeplitz_inverse_oracle(Sequence.kernel(s), 4)[3]

    def test_matches_toeplitz_oracle(self):
        rng = random.Random(20240521)
        for _ in range(50):
            s = Sequence.kernel([_random_fraction(rng, nonzero=(i == 0)) for i in range(13)])
            oracle = toeplitz_inverse_oracle(s, 13)
            s1 = s[1]
            for r in range(13):
                assert oracle[r] == Fraction((-1) ** r) * h_of_r(r, s) / s1 ** (r + 1)

    def test_inversion_round_trip(self):
        rng = random.Random(7)
        for _ in range(200):
            k = rng.randint(0, 12)
            s = Sequence.kernel([_random_fraction(rng, nonzero=(i == 0)) for i in range(k + 1)])
            f = Sequence.values([_random_fraction(rng) for _ in range(k + 1)])
            g = Sequence.values([forward_convolve(f, s, i) for i in range(k + 1)])
            assert invert_sequence(g, s, k) == f[k]

    def test_precomputed_h_values(self):
        s = stirling_kernel(3)
        f = [1, 2, 3, 4]
        g = [forward_convolve(f, s, i) for i in range(4)]
        assert invert_sequence(g, s, 3, h_values=h_table(s, 3)) == 4

    def test_singular_kernel(self):
        s = Sequence.kernel([0, 1])
        with pytest.raises(SingularKernelError):
            invert_sequence([1, 1], s, 1)
        with pytest.raises(SingularKernelError):
            toeplitz_inverse_oracle(s, 2)

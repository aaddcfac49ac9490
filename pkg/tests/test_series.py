"""
Tests for precision contexts, value parsing, SeriesValue and configuration
"""

from fractions import Fraction

import mpmath
import pytest
from mpmath import mp

from psik.config import _env_flag, _env_float, _env_int, digits_to_bits
from psik.errors import NonConvergenceError
from psik.series import (
    SeriesValue,
    format_value,
    is_exact_one,
    log_of,
    parse_real,
    reciprocal,
    sum_blocks,
    total,
    working_precision,
)


class TestConfig:
    """Environment-driven settings"""

    def test_digits_to_bits(self):
        assert digits_to_bits(30) == 150
        assert digits_to_bits(50) == 217

    def test_env_int_fallback(self, monkeypatch):
        monkeypatch.setenv('PSIK_TEST_INT', 'not-a-number')
        assert _env_int('PSIK_TEST_INT', 5) == 5
        monkeypatch.setenv('PSIK_TEST_INT', '7')
        assert _env_int('PSIK_TEST_INT', 5) == 7

    def test_env_float_and_flag(self, monkeypatch):
        monkeypatch.setenv('PSIK_TEST_FLOAT', '2.5')
        assert _env_float('PSIK_TEST_FLOAT', 1.0) == 2.5
        monkeypatch.setenv('PSIK_TEST_FLAG', 'Yes')
        assert _env_flag('PSIK_TEST_FLAG', 'false') is True
        monkeypatch.delenv('PSIK_TEST_FLAG')
        assert _env_flag('PSIK_TEST_FLAG', 'false') is False


class TestWorkingPrecision:

    def test_digits_and_restore(self):
        before = mp.prec
        with working_precision(digits=50):
            assert mp.prec == 217
        assert mp.prec == before

    def test_bits(self):
        with working_precision(bits=100):
            assert mp.prec == 100


class TestParsing:
    """CLI/config numbers keep rationals exact"""

    def test_rational(self):
        assert parse_real('2/3') == Fraction(2, 3)

    def test_rational_that_is_integer(self):
        value = parse_real('4/2')
        assert value == 2 and isinstance(value, int)

    def test_integer(self):
        assert parse_real(' 7 ') == 7

    def test_decimal(self):
        value = parse_real('0.7')
        assert isinstance(value, mpmath.mpf)
        assert abs(value - mp.mpf(7) / 10) < mp.mpf(10) ** -29

    def test_reciprocal_stays_exact(self):
        assert reciprocal(Fraction(2, 3)) == Fraction(3, 2)
        assert reciprocal(2) == Fraction(1, 2)
        assert reciprocal(Fraction(1, 2)) == 2

    def test_log_of_reciprocal_is_exact_negation(self):
        for alpha in (Fraction(2, 3), Fraction(5, 7), 2):
            assert log_of(reciprocal(alpha)) == -log_of(alpha)

    def test_is_exact_one(self):
        assert is_exact_one(Fraction(3, 3))
        assert not is_exact_one(Fraction(2, 3))
        assert is_exact_one(mp.mpf(1))


class TestSeriesValue:

    def test_bounds_add(self):
        a = SeriesValue(mp.mpf(1), mp.mpf('1e-10'), 3)
        b = SeriesValue(mp.mpf(2), mp.mpf('2e-10'), 4)
        c = a + b
        assert c.value == 3
        assert abs(c.trunc_bound - mp.mpf('3e-10')) < mp.mpf('1e-25')
        assert c.terms_used == 7

    def test_scaled_uses_absolute_factor(self):
        a = SeriesValue(mp.mpf(1), mp.mpf(1), 1).scaled(-2)
        assert a.value == -2 and a.trunc_bound == 2

    def test_negative_bound_rejected(self):
        with pytest.raises(ValueError):
            SeriesValue(mp.mpf(1), mp.mpf(-1))

    def test_total(self):
        result = total([SeriesValue.exact(mp.mpf(i)) for i in range(5)])
        assert result.value == 10 and result.trunc_bound == 0

    def test_real_part(self):
        value = SeriesValue(mp.mpc(1, 2), mp.mpf(0)).real
        assert value.value == 1


def _geometric(count):
    ratio = mp.mpf(10) ** -5
    return [(ratio ** m, ratio ** m) for m in range(1, count + 1)]


class TestSumBlocks:
    """Stopping rule for asymptotic expansions"""

    def test_stops_below_working_precision(self):
        blocks = _geometric(20)
        result = sum_blocks(blocks, mp.mpf(1), 'geometric')
        assert result.terms_used == 10
        assert result.trunc_bound == blocks[9][1]
        assert abs(result.value - (1 + sum(t for t, _ in _geometric(10)))) < mp.mpf('10') ** -44

    def test_cancelled_block_is_not_divergence(self):
        """A block whose parts nearly cancel is judged by its envelope"""
        blocks = _geometric(20)
        blocks[1] = (mp.mpf('10') ** -30, blocks[1][1])
        assert sum_blocks(blocks, mp.mpf(1), 'cancelled').terms_used == 10

    def test_single_rise_is_tolerated(self):
        blocks = _geometric(20)
        blocks[2] = (mp.mpf('10') ** -9, mp.mpf('10') ** -9)
        assert sum_blocks(blocks, mp.mpf(1), 'blip').terms_used == 10

    def test_turnaround(self):
        ten = mp.mpf(10)
        blocks = [(ten ** -5, ten ** -5), (ten ** -10, ten ** -10),
                  (ten ** -8, ten ** -8), (ten ** -6, ten ** -6)]
        with pytest.raises(NonConvergenceError):
            sum_blocks(blocks, mp.mpf(1), 'diverging')
        result = sum_blocks(blocks, mp.mpf(1), 'diverging', truncate=True)
        assert abs(result.value - (1 + ten ** -5 + ten ** -10)) < ten ** -40
        assert result.trunc_bound == ten ** -8
        assert result.terms_used == 2

    def test_runs_out_of_blocks(self):
        with pytest.raises(NonConvergenceError):
            sum_blocks(_geometric(3), mp.mpf(1), 'short')


class TestFormatValue:

    def test_exact_values_print_as_is(self):
        assert format_value(-1) == '-1'
        assert format_value(Fraction(2, 3)) == '2/3'

    def test_significant_digits(self):
        assert format_value(mp.mpf(1) / 3, 5) == '0.33333'

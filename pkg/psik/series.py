"""
Shared numeric plumbing: precision contexts, value conversion and SeriesValue.

All analytic computation runs on mpmath's global context. mpmath keeps its
precision per process, so parallel work in this package is done with worker
processes, never threads.
"""

from __future__ import annotations

import logging
from contextlib import contextmanager
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

import mpmath
from mpmath import mp

from psik.config import config, digits_to_bits
from psik.errors import NonConvergenceError

logger = logging.getLogger(__name__)

# Extra bits carried by inner loops on top of the caller's precision
GUARD_BITS = 24

# Consecutive envelopes above the running minimum that mark an asymptotic
# expansion as diverging
TURNAROUND_BLOCKS = 2

Real = Union[int, Fraction, mpmath.mpf]
Number = Union[int, Fraction, mpmath.mpf, mpmath.mpc]


@contextmanager
def working_precision(bits=None, digits=None):
    """
    Run a block at a given precision.

    Args:
        bits: working precision in bits (defaults to config.PRECISION_BITS)
        digits: requested decimal digits, mapped through digits_to_bits();
            takes priority over bits when given
    """
    if digits is not None:
        bits = digits_to_bits(digits)
    if bits is None:
        bits = config.PRECISION_BITS
    with mp.workprec(int(bits)):
        yield


@contextmanager
def guarded():
    """Raise the working precision by GUARD_BITS for the enclosed block."""
    with mp.workprec(mp.prec + GUARD_BITS):
        yield


def epsilon():
    """Unit roundoff of the current working precision."""
    return mp.ldexp(mp.mpf(1), -mp.prec)


def target_digits():
    """Decimal digits carried by the current working precision."""
    return mp.dps


def to_mpf(value: Real) -> mpmath.mpf:
    """Convert an int, Fraction, str or mpf to an mpf at working precision."""
    if isinstance(value, Fraction):
        return mp.mpf(value.numerator) / value.denominator
    return mp.mpf(value)


def to_number(value: Number):
    """Like to_mpf, but lets complex values through as mpc."""
    if isinstance(value, (complex, mpmath.mpc)):
        return mp.mpc(value)
    return to_mpf(value)


def parse_real(text: str) -> Real:
    """
    Parse a CLI/config real number.

    'm/n' and plain integers stay exact (Fraction / int) so that log(α) terms
    cancel structurally; decimals become mpf.
    """
    text = text.strip()
    if '/' in text:
        num, den = text.split('/', 1)
        value = Fraction(int(num), int(den))
        return value.numerator if value.denominator == 1 else value
    try:
        return int(text)
    except ValueError:
        return mp.mpf(text)


def reciprocal(value: Real) -> Real:
    """1/value, exact when value is an int or Fraction."""
    if isinstance(value, (int, Fraction)):
        result = Fraction(1) / Fraction(value)
        return result.numerator if result.denominator == 1 else result
    return 1 / to_mpf(value)


def log_of(value: Real) -> mpmath.mpf:
    """
    log(value) with log(p/q) taken as log p - log q, so that log(1/α)
    is bit-for-bit the negation of log(α) for rational α.
    """
    if isinstance(value, Fraction):
        return mp.log(value.numerator) - mp.log(value.denominator)
    return mp.log(to_mpf(value))


def is_exact_one(value: Real) -> bool:
    if isinstance(value, (int, Fraction)):
        return value == 1
    return to_mpf(value) == 1


def format_value(value, digits=30) -> str:
    """Decimal string with the given number of significant digits."""
    if isinstance(value, (int, Fraction)):
        return str(value)
    if isinstance(value, mpmath.mpc):
        if value.imag == 0:
            value = value.real
        else:
            return mpmath.nstr(value, digits)
    return mpmath.nstr(value, digits, min_fixed=-5, max_fixed=5)


@dataclass(frozen=True)
class SeriesValue:
    """
    A value produced by a truncated series, sum or quadrature.

    Attributes:
        value: the partial sum plus any closed-form tail correction
        trunc_bound: estimated magnitude of everything omitted (>= 0)
        terms_used: number of terms or nodes that went into value
    """
    value: Number
    trunc_bound: mpmath.mpf
    terms_used: int = 0

    def __post_init__(self):
        if self.trunc_bound < 0:
            raise ValueError("trunc_bound must be non-negative")

    @classmethod
    def exact(cls, value, terms_used=0):
        return cls(value, mp.mpf(0), terms_used)

    def __add__(self, other):
        if isinstance(other, SeriesValue):
            return SeriesValue(self.value + other.value,
                               self.trunc_bound + other.trunc_bound,
                               self.terms_used + other.terms_used)
        return SeriesValue(self.value + other, self.trunc_bound, self.terms_used)

    __radd__ = __add__

    def __neg__(self):
        return SeriesValue(-self.value, self.trunc_bound, self.terms_used)

    def __sub__(self, other):
        return self + (-other)

    def scaled(self, factor):
        """Multiply value and bound by a constant."""
        return SeriesValue(self.value * factor,
                           self.trunc_bound * abs(factor),
                           self.terms_used)

    @property
    def real(self):
        """Real part, for quantities known to be real."""
        value = self.value
        if isinstance(value, mpmath.mpc):
            value = value.real
        return SeriesValue(value, self.trunc_bound, self.terms_used)


def total(values: Iterable[SeriesValue]) -> SeriesValue:
    """Fixed-order sum of SeriesValues."""
    result = SeriesValue.exact(mp.mpf(0))
    for item in values:
        result = result + item
    return result


def sum_blocks(blocks: Iterable, base, label: str, truncate: bool = False) -> SeriesValue:
    """
    Add the corrections of an asymptotic expansion to base.

    Args:
        blocks: (term, envelope) pairs, envelope an upper estimate of |term|
            free of cancellation inside the block
        base: the part of the expansion already summed
        label: names the expansion in log and error messages
        truncate: on divergence, return the sum through the smallest
            envelope instead of raising

    The sum stops at the first envelope below working precision relative to
    the running value; that envelope is the trunc_bound. The expansion is
    diverging once TURNAROUND_BLOCKS consecutive envelopes exceed the
    smallest one seen. A truncated sum carries the envelope of the first
    block after the smallest as its bound.

    Raises:
        NonConvergenceError: on divergence without truncate, or when the
            blocks run out before working precision
    """
    eps = epsilon()
    value = base
    smallest = None
    at_smallest = (base, 0)
    following = None
    rises = 0
    used = 0
    for used, (term, envelope) in enumerate(blocks, start=1):
        if smallest is not None and envelope > smallest:
            rises += 1
            if rises == 1:
                following = envelope
            if rises >= TURNAROUND_BLOCKS:
                if not truncate:
                    raise NonConvergenceError(
                        f"{label} stopped decreasing at block {used} before working precision"
                    )
                logger.warning(f"{label} turned around at block {used}; "
                               f"budget {mpmath.nstr(following, 3)}")
                value, kept = at_smallest
                return SeriesValue(value, following, kept)
        else:
            rises = 0
            smallest = envelope
        value += term
        if rises == 0:
            at_smallest = (value, used)
        if envelope <= eps * abs(value):
            return SeriesValue(value, envelope, used)
    raise NonConvergenceError(f"{label} did not reach working precision in {used} blocks")

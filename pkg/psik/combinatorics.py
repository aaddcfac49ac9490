"""
Exact combinatorics: signed Stirling numbers of the first kind, Bernoulli
numbers, the partition sum h(r) and the triangular convolution inversion
built on it.

Integers are Python ints and rationals are fractions.Fraction, so all
results here are exact. Memo tables are shared between threads behind a
lock; callers always observe fully built rows.
"""

from __future__ import annotations

import logging
import threading
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Callable, Dict, List, Sequence as TypingSequence, Tuple, Union

from psik.errors import DomainError, SingularKernelError

logger = logging.getLogger(__name__)

ExactInt = int
ExactRat = Fraction

_stirling_lock = threading.Lock()
# Row n holds s(n, 0..n); row 0 is [1]
_stirling_rows: List[List[int]] = [[1]]

_bernoulli_lock = threading.Lock()
_bernoulli_values: List[Fraction] = [Fraction(1)]


def stirling_first(n: int, m: int) -> ExactInt:
    """
    Signed Stirling number of the first kind s(n, m).

    Coefficients of the falling factorial x(x-1)...(x-n+1) = Σ s(n,m) x^m,
    built from s(n+1, m) = s(n, m-1) - n s(n, m) with s(1, 1) = 1.
    Returns 0 for m > n.

    Raises:
        DomainError: if n < 0 or m < 0
    """
    if n < 0 or m < 0:
        raise DomainError(f"stirling_first needs n >= 0 and m >= 0, got ({n}, {m})")
    if m > n:
        return 0
    if n >= len(_stirling_rows):
        with _stirling_lock:
            while len(_stirling_rows) <= n:
                prev = _stirling_rows[-1]
                size = len(prev)
                k = size - 1
                row = [0] * (size + 1)
                for j in range(1, size + 1):
                    below = prev[j] if j < size else 0
                    row[j] = prev[j - 1] - k * below
                _stirling_rows.append(row)
    return _stirling_rows[n][m]


def bernoulli(n: int) -> ExactRat:
    """
    Bernoulli number B_n with the convention B_1 = -1/2.

    Uses the recurrence Σ_{j=0}^{n} C(n+1, j) B_j = 0 and memoizes every
    value computed along the way.
    """
    if n < 0:
        raise DomainError(f"bernoulli needs n >= 0, got {n}")
    if n >= len(_bernoulli_values):
        with _bernoulli_lock:
            while len(_bernoulli_values) <= n:
                m = len(_bernoulli_values)
                if m > 1 and m % 2 == 1:
                    _bernoulli_values.append(Fraction(0))
                    continue
                acc = Fraction(0)
                for j, b in enumerate(_bernoulli_values):
                    if b:
                        acc += comb(m + 1, j) * b
                _bernoulli_values.append(-acc / (m + 1))
    return _bernoulli_values[n]


def log_power_derivative_coefficients(j: int, p: int) -> List[ExactInt]:
    """
    Coefficients c_0..c_j with

        d^p/du^p [log^j(u) / u] = u^(-p-1) Σ_t c_t log^(j-t)(u),

    namely c_t = C(j, t) t! s(p+1, t+1).
    """
    if j < 0 or p < 0:
        raise DomainError(f"need j >= 0 and p >= 0, got ({j}, {p})")
    return [comb(j, t) * factorial(t) * stirling_first(p + 1, t + 1)
            for t in range(j + 1)]


class Sequence:
    """
    A finite arithmetic function with a fixed first index.

    Convolution kernels s are indexed from 1, input/output sequences f and g
    from 0. Indices past the stored terms read as zero, so a kernel such as
    s(i) = s(z, i) can be stored up to i = z + 1 and used for any r.
    """

    __slots__ = ('terms', 'offset')

    def __init__(self, terms, offset=1):
        self.terms = tuple(terms)
        self.offset = offset

    @classmethod
    def kernel(cls, terms) -> 'Sequence':
        """Kernel s(1), s(2), ... from a list of values."""
        return cls(terms, offset=1)

    @classmethod
    def values(cls, terms) -> 'Sequence':
        """Sequence f(0), f(1), ... from a list of values."""
        return cls(terms, offset=0)

    def __getitem__(self, index):
        position = index - self.offset
        if position < 0:
            raise IndexError(f"index {index} below first index {self.offset}")
        if position >= len(self.terms):
            return 0
        return self.terms[position]

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms)

    def __repr__(self):
        return f"Sequence({list(self.terms)!r}, offset={self.offset})"


SequenceLike = Union[Sequence, TypingSequence, Callable[[int], object]]


def stirling_kernel(z: int) -> Sequence:
    """The kernel s(i) = s(z, i), i = 1..z (zero beyond)."""
    if z < 1:
        raise DomainError(f"stirling_kernel needs z >= 1, got {z}")
    return Sequence.kernel([stirling_first(z, i) for i in range(1, z + 1)])


@dataclass(frozen=True)
class PartitionSolution:
    """
    Multiplicities (b_1, ..., b_{r+1}) with Σ i b_i = 2r and Σ b_i = r,
    i.e. a partition of 2r into exactly r parts. r = 0 is the empty tuple.
    """
    b: Tuple[int, ...]

    @property
    def r(self):
        return max(len(self.b) - 1, 0)

    def coefficient(self) -> ExactInt:
        """(r - b_1)! / (b_2! ... b_{r+1}!), always an integer."""
        if not self.b:
            return 1
        result = factorial(self.r - self.b[0])
        for count in self.b[1:]:
            result //= factorial(count)
        return result

    def sign(self) -> int:
        return -1 if self.b and self.b[0] % 2 else 1


_solution_cache: Dict[int, Tuple[PartitionSolution, ...]] = {}
_solution_lock = threading.Lock()


def enumerate_h_solutions(r: int) -> List[PartitionSolution]:
    """
    All (b_1, ..., b_{r+1}) with Σ i b_i = 2r and Σ b_i = r, each exactly
    once, in lexicographic order. r = 0 yields the single empty solution.

    Bounded depth-first search over multiplicities: with parts i..r+1 still
    open and c parts left to place, the remaining weight w must satisfy
    i c <= w <= (r+1) c.
    """
    if r < 0:
        raise DomainError(f"enumerate_h_solutions needs r >= 0, got {r}")
    cached = _solution_cache.get(r)
    if cached is not None:
        return list(cached)
    if r == 0:
        solutions = [PartitionSolution(())]
    else:
        solutions = []
        top = r + 1
        prefix: List[int] = []

        def place(part, count_left, weight_left):
            if part == top:
                if top * count_left == weight_left:
                    solutions.append(PartitionSolution(tuple(prefix + [count_left])))
                return
            for b in range(count_left + 1):
                rest_count = count_left - b
                rest_weight = weight_left - part * b
                if rest_weight < 0:
                    break
                if (part + 1) * rest_count > rest_weight:
                    continue
                if top * rest_count < rest_weight:
                    continue
                prefix.append(b)
                place(part + 1, rest_count, rest_weight)
                prefix.pop()

        place(1, r, 2 * r)
    with _solution_lock:
        _solution_cache[r] = tuple(solutions)
    logger.debug(f"enumerate_h_solutions({r}): {len(solutions)} solutions")
    return list(solutions)


def _as_kernel(s):
    """Plain lists become kernels indexed from 1 that read zero past their end."""
    if isinstance(s, Sequence) or callable(s):
        return s
    return Sequence.kernel(s)


def _as_values(f):
    if isinstance(f, Sequence) or callable(f):
        return f
    return Sequence.values(f)


def _kernel_value(s, index):
    if isinstance(s, Sequence):
        return s[index]
    return s(index)


def h_of_r(r: int, s: SequenceLike):
    """
    h(r) = Σ (-1)^{b_1} Π_i s(i)^{b_i} (r - b_1)! / (b_2! ... b_{r+1}!)
    over enumerate_h_solutions(r). The result has the numeric kind of s.
    """
    s = _as_kernel(s)
    result = 0
    for solution in enumerate_h_solutions(r):
        term = solution.sign() * solution.coefficient()
        for index, count in enumerate(solution.b, start=1):
            if count:
                term = term * _kernel_value(s, index) ** count
        result = result + term
    return result


def h_table(s: SequenceLike, r_max: int) -> list:
    """[h(0), ..., h(r_max)] for one kernel."""
    return [h_of_r(r, s) for r in range(r_max + 1)]


def _inverse_power(value, exponent):
    """1 / value**exponent, kept exact for ints and Fractions."""
    if value == 0:
        raise SingularKernelError("kernel has s(1) = 0 and cannot be inverted")
    if isinstance(value, (int, Fraction)):
        return Fraction(1) / Fraction(value) ** exponent
    return 1 / value ** exponent


def forward_convolve(f: SequenceLike, s: SequenceLike, k: int):
    """g(k) = Σ_{r=0}^{k} s(k - r + 1) f(r)."""
    if k < 0:
        raise DomainError(f"forward_convolve needs k >= 0, got {k}")
    f, s = _as_values(f), _as_kernel(s)
    result = 0
    for r in range(k + 1):
        result = result + _kernel_value(s, k - r + 1) * _sequence_value(f, r)
    return result


def _sequence_value(f, index):
    if isinstance(f, Sequence):
        return f[index]
    return f(index)


def invert_sequence(g: SequenceLike, s: SequenceLike, k: int, h_values=None):
    """
    f(k) = Σ_{r=0}^{k} (-1)^r / s(1)^{r+1} h(r) g(k - r), recovering f from
    g = forward_convolve(f, s, .).

    Args:
        h_values: optional precomputed h_table(s, k)

    Raises:
        SingularKernelError: if s(1) = 0
    """
    if k < 0:
        raise DomainError(f"invert_sequence needs k >= 0, got {k}")
    g, s = _as_values(g), _as_kernel(s)
    s1 = _kernel_value(s, 1)
    if s1 == 0:
        raise SingularKernelError("kernel has s(1) = 0 and cannot be inverted")
    if h_values is None:
        h_values = h_table(s, k)
    result = 0
    for r in range(k + 1):
        weight = _inverse_power(s1, r + 1)
        if r % 2:
            weight = -weight
        result = result + weight * h_values[r] * _sequence_value(g, k - r)
    return result


def toeplitz_inverse_oracle(s: SequenceLike, n: int) -> Sequence:
    """
    First column of the inverse of the n x n lower-triangular Toeplitz
    matrix with first column (s(1), ..., s(n)), by forward substitution in
    exact rationals. Entry r (0-based) equals (-1)^r h(r) / s(1)^{r+1}.
    """
    if n < 1:
        raise DomainError(f"toeplitz_inverse_oracle needs n >= 1, got {n}")
    s = _as_kernel(s)
    column = [Fraction(_kernel_value(s, i)) for i in range(1, n + 1)]
    if column[0] == 0:
        raise SingularKernelError("kernel has s(1) = 0 and cannot be inverted")
    inverse: List[Fraction] = []
    for row in range(n):
        rhs = Fraction(1 if row == 0 else 0)
        for j in range(row):
            rhs -= column[row - j] * inverse[j]
        inverse.append(rhs / column[0])
    return Sequence.values(inverse)

"""
Generalized digamma functions ψ_k(x) = -γ_k(x), their x-derivatives and
their large-x expansions.

With f_j(u) = log^j(u)/u the functional equation reads

    ψ_j(u + 1) = ψ_j(u) + f_j(u),

and for large u

    ψ_j(u) ~ log^(j+1)(u)/(j+1) - f_j(u)/2 + Σ_m B_2m/(2m)! f_j^(2m-1)(u),

which differentiates termwise. psi_family shifts the argument upward with
the first identity and finishes with the second; it is the bulk evaluator
behind the relation checks.
"""

from __future__ import annotations

import logging
import math
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import List, Tuple

from mpmath import mp

from psik.combinatorics import bernoulli, log_power_derivative_coefficients, stirling_first
from psik.config import config
from psik.errors import DivergentRegimeError, DomainError
from psik.series import SeriesValue, epsilon, guarded, sum_blocks, to_mpf
from psik.zeta_engine import hurwitz_deriv_series, hurwitz_leading_terms, stieltjes

logger = logging.getLogger(__name__)

# Smallest x accepted by the fixed-order asymptotic formulas
ASYMPTOTIC_MIN_X = 10

METHODS = ('laurent', 'series')


@lru_cache(maxsize=1024)
def _coefficients(j, q):
    return tuple(log_power_derivative_coefficients(j, q))


@lru_cache(maxsize=256)
def _bernoulli_weight(m):
    """B_2m / (2m)! as an exact rational."""
    return bernoulli(2 * m) / factorial(2 * m)


def _check_order(name, value, minimum=0):
    if not isinstance(value, int) or value < minimum:
        raise DomainError(f"{name} must be an integer >= {minimum}, got {value!r}")


def _check_positive(x):
    x = to_mpf(x)
    if x <= 0:
        raise DomainError(f"x must be positive, got {x}")
    return x


def _f_deriv(j, q, u, log_powers):
    """f_j^(q)(u) = u^(-q-1) Σ_t c_t log^(j-t)(u)."""
    acc = 0
    for t, c in enumerate(_coefficients(j, q)):
        if c:
            acc += c * log_powers[j - t]
    return acc / u ** (q + 1)


def _leading(j, p, u, log_powers):
    """The non-Bernoulli part of the expansion of ψ_j^(p)(u)."""
    if p == 0:
        return log_powers[j + 1] / (j + 1) - log_powers[j] / (2 * u)
    return _f_deriv(j, p - 1, u, log_powers) - _f_deriv(j, p, u, log_powers) / 2


def _block(j, p, m, u, log_powers):
    """The m-th Bernoulli correction of ψ_j^(p)(u) and its envelope."""
    weight = _bernoulli_weight(m)
    weight = mp.mpf(weight.numerator) / weight.denominator
    q = 2 * m + p - 1
    envelope = 0
    for t, c in enumerate(_coefficients(j, q)):
        envelope += abs(c * log_powers[j - t])
    envelope = abs(weight) * envelope / u ** (q + 1)
    return weight * _f_deriv(j, q, u, log_powers), envelope


Term = Tuple[int, int, Fraction]


def f_deriv_terms(j: int, q: int, factor=Fraction(1)) -> List[Term]:
    """factor·f_j^(q)(y) as (e, i, c) entries, c·y^(-e)·log^i(y)."""
    return [(q + 1, j - t, factor * c)
            for t, c in enumerate(_coefficients(j, q)) if c]


def expansion_head(j: int, p: int) -> List[Term]:
    """The non-Bernoulli part of the expansion of ψ_j^(p)(y)."""
    if p == 0:
        return [(0, j + 1, Fraction(1, j + 1)), (1, j, Fraction(-1, 2))]
    return f_deriv_terms(j, p - 1) + f_deriv_terms(j, p, Fraction(-1, 2))


def expansion_block(j: int, p: int, m: int) -> List[Term]:
    """The m-th Bernoulli correction of ψ_j^(p)(y): B_2m/(2m)! f_j^(2m+p-1)(y)."""
    return f_deriv_terms(j, 2 * m + p - 1, _bernoulli_weight(m))


def asymptotic_terms(j: int, p: int, M: int) -> List[Term]:
    """
    Expansion of ψ_j^(p)(y) through the M-th Bernoulli correction as a list
    of (e, i, c) meaning c·y^(-e)·log^i(y). Entries are grouped by block
    and carry exact rational coefficients.
    """
    _check_order('j', j)
    _check_order('p', p)
    _check_order('M', M)
    terms = expansion_head(j, p)
    for m in range(1, M + 1):
        terms.extend(expansion_block(j, p, m))
    return terms


def asymptotic_threshold(p: int = 0):
    """Argument beyond which the expansion reaches working precision."""
    return mp.dps + 10 + p


def psi_family(j_max: int, p: int, y) -> List[SeriesValue]:
    """
    [ψ_0^(p)(y), ..., ψ_{j_max}^(p)(y)] in one pass.

    The argument is shifted to Y = y + n beyond a precision-dependent
    threshold, the expansion is summed at Y until the envelope of a
    correction drops below working precision, and Σ_{i<n} f_j^(p)(y + i) is
    subtracted back. The logs of the shifted arguments are shared by every j.

    Raises:
        DomainError: if y <= 0 or an order is negative
        NonConvergenceError: if the envelopes turn upward before reaching
            working precision
    """
    _check_order('j_max', j_max)
    _check_order('p', p)
    y = _check_positive(y)
    with guarded():
        shift = max(0, int(math.ceil(asymptotic_threshold(p) - y)))
        corrections = [mp.mpf(0)] * (j_max + 1)
        for i in range(shift):
            u = y + i
            log_u = mp.log(u)
            log_powers = [log_u ** e for e in range(j_max + 1)]
            for j in range(j_max + 1):
                corrections[j] += _f_deriv(j, p, u, log_powers)

        big = y + shift
        log_big = mp.log(big)
        log_powers = [log_big ** e for e in range(j_max + 2)]
        results = []
        for j in range(j_max + 1):
            blocks = (_block(j, p, m, big, log_powers)
                      for m in range(1, config.EM_MAX_DEPTH + 1))
            summed = sum_blocks(blocks, _leading(j, p, big, log_powers),
                                f"expansion of ψ_{j}^({p}) at {mp.nstr(big, 8)}")
            results.append(SeriesValue(+(summed.value - corrections[j]),
                                       +summed.trunc_bound, shift + summed.terms_used))
    logger.debug(f"psi_family j_max={j_max} p={p} y={y}: shift={shift}")
    return results


def psi_k(k: int, x, method: str = 'laurent') -> SeriesValue:
    """
    ψ_k(x) = -γ_k(x).

    Args:
        method: 'laurent' reads γ_k(x) off the Laurent expansion of ζ(z, x)
            at z = 1; 'series' evaluates through the functional equation and
            the large-x expansion (psi_family). The two are independent.
    """
    _check_order('k', k)
    x = _check_positive(x)
    if method == 'laurent':
        value = -stieltjes(k, x)
        return SeriesValue(value, epsilon() * (abs(value) + 1), 1)
    if method == 'series':
        return psi_family(k, 0, x)[k]
    raise DomainError(f"unknown method {method!r}; expected one of {METHODS}")


def psi_k_deriv(k: int, m: int, x) -> SeriesValue:
    """
    ψ_k^(m)(x) = -k! Σ_{r=0}^{k} s(m+1, k-r+1) (-1)^r ζ^(r)(m+1, x)/r!.

    m = 0 is ψ_k itself.
    """
    _check_order('k', k)
    _check_order('m', m)
    if m == 0:
        return psi_k(k, x)
    return psi_deriv_family(k, m, x)[k]


def _coffey_weights(k, m):
    """Exact weights of ζ^(r)(m+1, x), r = 0..k, in ψ_k^(m)(x)."""
    weights = []
    for r in range(k + 1):
        weight = stirling_first(m + 1, k - r + 1)
        weights.append(Fraction(-factorial(k) * weight * (-1) ** r, factorial(r)))
    return weights


def psi_deriv_family(k_max: int, m: int, x) -> List[SeriesValue]:
    """
    [ψ_0^(m)(x), ..., ψ_{k_max}^(m)(x)] for m >= 1, sharing one set of
    Hurwitz derivatives ζ^(r)(m+1, x), r <= k_max.
    """
    _check_order('k_max', k_max)
    _check_order('m', m, minimum=1)
    x = _check_positive(x)
    zetas = [hurwitz_deriv_series(r, m + 1, x) for r in range(k_max + 1)]
    results = []
    for k in range(k_max + 1):
        result = SeriesValue.exact(mp.mpf(0))
        for r, factor in enumerate(_coffey_weights(k, m)):
            if factor:
                result = result + zetas[r].scaled(mp.mpf(factor.numerator) / factor.denominator)
        results.append(result)
    return results


def psi_k_asymptotic(k: int, x, M_terms: int) -> SeriesValue:
    """
    log^(k+1)(x)/(k+1) - log^k(x)/(2x)
        + Σ_{m<=M} B_2m/(2m)! x^(-2m) Σ_t C(k,t) t! s(2m,t+1) log^(k-t)(x),

    with trunc_bound the magnitude of the first omitted m-term.

    Raises:
        DomainError: if x < 10
        DivergentRegimeError: if the omitted term exceeds the last included one
    """
    _check_order('k', k)
    _check_order('M_terms', M_terms)
    x = to_mpf(x)
    if x < ASYMPTOTIC_MIN_X:
        raise DomainError(f"asymptotic formula needs x >= {ASYMPTOTIC_MIN_X}, got {x}")
    log_x = mp.log(x)
    log_powers = [log_x ** e for e in range(k + 2)]
    value = _leading(k, 0, x, log_powers)
    last = None
    for m in range(1, M_terms + 1):
        last, _ = _block(k, 0, m, x, log_powers)
        value += last
    omitted = abs(_block(k, 0, M_terms + 1, x, log_powers)[0])
    if last is not None and omitted > abs(last):
        raise DivergentRegimeError(
            f"first omitted term {mp.nstr(omitted, 5)} exceeds the last included "
            f"{mp.nstr(abs(last), 5)} at k={k}, x={x}, M={M_terms}"
        )
    return SeriesValue(value, omitted, M_terms)


def psi_k_deriv_asymptotic(k: int, z: int, x, with_error: bool = True) -> SeriesValue:
    """
    Leading behaviour of ψ_k^(z-1)(x) as x → ∞:

        -k! Σ_r s(z, k-r+1)/r! { Σ_t C(r,t) t!/(z-1)^(t+1) log^(r-t)(x)/x^(z-1)
                                 + log^r(x)/(2x^z) },

    which is O(log^k(x)/x^(z+1)) away from the true value. With with_error
    the bound is the size of the next term of the expansion, B_2/2 f_k^(z)(x);
    otherwise it is zero.
    """
    _check_order('k', k)
    if not isinstance(z, int) or z < 2:
        raise DomainError(f"z must be an integer >= 2, got {z!r}")
    x = to_mpf(x)
    if x < ASYMPTOTIC_MIN_X:
        raise DomainError(f"asymptotic formula needs x >= {ASYMPTOTIC_MIN_X}, got {x}")
    value = mp.mpf(0)
    for r in range(k + 1):
        weight = stirling_first(z, k - r + 1)
        if weight:
            # hurwitz_leading_terms carries the (-1)^r of ζ^(r)
            value += weight * (-1) ** r * hurwitz_leading_terms(r, z, x) / factorial(r)
    value *= -factorial(k)
    bound = mp.mpf(0)
    if with_error:
        log_x = mp.log(x)
        log_powers = [log_x ** e for e in range(k + 2)]
        bound = abs(_block(k, z - 1, 1, x, log_powers)[0])
    return SeriesValue(value, bound, 2)

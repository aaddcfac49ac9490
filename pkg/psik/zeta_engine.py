"""
Configurable-precision Γ, ψ, Hurwitz ζ and its z-derivatives, generalized
Stieltjes constants and the constants ζ^(k)(0).

Primary paths:
- gamma_complex / digamma_complex: upward recursion into the region where
  the Stirling series converges to working precision.
- hurwitz_deriv: Euler-Maclaurin summation differentiated termwise in z.
- stieltjes / zeta_deriv_at_zero: Taylor coefficients read off a circle of
  nodes (trapezoid rule), which converges geometrically in the node count.

zeta_deriv_cauchy is the independent oracle for hurwitz_deriv.
"""

from __future__ import annotations

import logging
import math
from functools import lru_cache
from math import comb, factorial
from typing import Callable, List

import mpmath
from mpmath import mp

from psik.combinatorics import bernoulli
from psik.config import config
from psik.errors import DomainError, NonConvergenceError, PoleError
from psik.series import SeriesValue, epsilon, guarded, to_mpf, to_number

logger = logging.getLogger(__name__)


def _as_real_if_possible(value):
    if isinstance(value, mpmath.mpc) and value.imag == 0:
        return value.real
    return value


def _is_nonpositive_integer(s) -> bool:
    s = mp.mpc(s)
    return s.imag == 0 and s.real <= 0 and s.real == mp.floor(s.real)


def _stirling_radius():
    """|w| beyond which the Stirling series reaches working precision."""
    return int(0.4 * mp.dps) + 10


def _loggamma_stirling(w):
    """log Γ(w) for Re(w) >= _stirling_radius()."""
    eps = epsilon()
    result = (w - mp.mpf(0.5)) * mp.log(w) - w + mp.log(2 * mp.pi) / 2
    w2 = w * w
    power = w
    for k in range(1, config.EM_MAX_DEPTH + 1):
        term = to_mpf(bernoulli(2 * k)) / ((2 * k) * (2 * k - 1) * power)
        result += term
        if abs(term) <= eps * abs(result):
            return result
        power *= w2
    raise NonConvergenceError(f"Stirling series for log Γ did not converge at w={w}")


def _digamma_stirling(w):
    """ψ(w) for Re(w) >= _stirling_radius()."""
    eps = epsilon()
    result = mp.log(w) - 1 / (2 * w)
    w2 = w * w
    power = w2
    for k in range(1, config.EM_MAX_DEPTH + 1):
        term = to_mpf(bernoulli(2 * k)) / (2 * k * power)
        result -= term
        if abs(term) <= eps * abs(result):
            return result
        power *= w2
    raise NonConvergenceError(f"Stirling series for ψ did not converge at w={w}")


def gamma_complex(s):
    """
    Γ(s) for complex (or real) s.

    Shifts s upward by n so that Re(s + n) clears the Stirling radius, then
    divides out the Pochhammer symbol: Γ(s) = Γ(s + n) / (s)_n.

    Raises:
        PoleError: at non-positive integers
    """
    s = to_number(s)
    if _is_nonpositive_integer(s):
        raise PoleError(f"Γ has a pole at {s}")
    with guarded():
        shift = max(0, int(math.ceil(_stirling_radius() - float(mp.re(s)))))
        product = mp.mpf(1)
        for i in range(shift):
            product *= s + i
        value = mp.exp(_loggamma_stirling(s + shift)) / product
    return _as_real_if_possible(+value)


def digamma_complex(s):
    """
    ψ(s) for complex (or real) s, via ψ(s) = ψ(s + n) - Σ_{i<n} 1/(s + i).

    Raises:
        PoleError: at non-positive integers
    """
    s = to_number(s)
    if _is_nonpositive_integer(s):
        raise PoleError(f"ψ has a pole at {s}")
    with guarded():
        shift = max(0, int(math.ceil(_stirling_radius() - float(mp.re(s)))))
        correction = mp.mpf(0)
        for i in range(shift):
            correction += 1 / (s + i)
        value = _digamma_stirling(s + shift) - correction
    return _as_real_if_possible(+value)


def _check_hurwitz_args(r, z, x):
    if not isinstance(r, int) or r < 0:
        raise DomainError(f"derivative order must be a non-negative integer, got {r}")
    x = to_mpf(x)
    if x <= 0:
        raise DomainError(f"Hurwitz zeta needs x > 0, got {x}")
    z = _as_real_if_possible(to_number(z))
    if z == 1:
        raise PoleError("ζ(z, x) has a pole at z = 1")
    return z, x


def hurwitz_deriv_series(r: int, z, x) -> SeriesValue:
    """
    ζ^(r)(z, x) = ∂^r/∂z^r Σ_{n>=0} (n + x)^(-z) with its truncation bound.

    Head: Σ_{n<M} (-log(n + x))^r (n + x)^(-z). Tail: the r-th z-derivative
    of the Euler-Maclaurin remainder at a = M + x,

        a^(1-z)/(z-1) + a^(-z)/2 + Σ_k B_2k/(2k)! (z)_{2k-1} a^(-z-2k+1),

    taken term by term. The Pochhammer factors are carried as truncated
    Taylor polynomials in z, so their derivatives come out exactly. The
    expansion stops at the first correction below working precision; the
    bound is that correction's magnitude.

    Raises:
        PoleError: at z = 1
        NonConvergenceError: if PSIK_EM_MAX_DEPTH corrections do not suffice
    """
    z, x = _check_hurwitz_args(r, z, x)
    with guarded():
        eps = epsilon()
        digits = mp.dps
        head_terms = max(10, int(abs(z) + 0.7 * digits) + r)

        head = mp.mpf(0)
        for n in range(head_terms):
            base = n + x
            term = base ** (-z)
            if r:
                term *= (-mp.log(base)) ** r
            head += term

        a = head_terms + x
        log_a = mp.log(a)
        a_minus_z = a ** (-z)
        w = z - 1
        neg_log_powers = [(-log_a) ** i for i in range(r + 1)]

        integral = 0
        for t in range(r + 1):
            integral += comb(r, t) * factorial(t) * log_a ** (r - t) / w ** (t + 1)
        integral *= (-1) ** r * a * a_minus_z
        boundary = neg_log_powers[r] * a_minus_z / 2

        total = head + integral + boundary
        scale = abs(head) + abs(integral) + abs(boundary)

        # Taylor coefficients of (z + ε)_{2k-1} in ε up to degree r
        taylor = [z] + [mp.mpf(0)] * r
        if r >= 1:
            taylor[1] = mp.mpf(1)
        power = a_minus_z / a
        inv_a2 = 1 / (a * a)
        bound = None
        for k in range(1, config.EM_MAX_DEPTH + 1):
            deriv = 0
            for i in range(r + 1):
                deriv += comb(r, i) * factorial(i) * taylor[i] * neg_log_powers[r - i]
            b2k = bernoulli(2 * k)
            term = (mp.mpf(b2k.numerator) / (b2k.denominator * factorial(2 * k))) * deriv * power
            total += term
            if abs(term) <= eps * max(abs(total), eps * scale):
                bound = abs(term)
                break
            for shift in (2 * k - 1, 2 * k):
                beta = z + shift
                for i in range(r, 0, -1):
                    taylor[i] = beta * taylor[i] + taylor[i - 1]
                taylor[0] = beta * taylor[0]
            power *= inv_a2
        if bound is None:
            raise NonConvergenceError(
                f"Euler-Maclaurin for ζ^({r})({z}, {x}) did not converge in "
                f"{config.EM_MAX_DEPTH} corrections"
            )
    logger.debug(f"hurwitz_deriv r={r} z={z} x={x}: M={head_terms} N={k}")
    return SeriesValue(_as_real_if_possible(+total), +bound, head_terms + k)


def hurwitz_deriv(r: int, z, x):
    """ζ^(r)(z, x); real-valued (mpf) when z is real."""
    return hurwitz_deriv_series(r, z, x).value


def riemann_zeta(s):
    """ζ(s) = ζ(s, 1)."""
    return hurwitz_deriv(0, s, 1)


def _node_count(orders, distance_ratio=None):
    """Trapezoid nodes for Taylor coefficients up to the given order."""
    digits = mp.dps
    count = max(4 * digits, 2 * orders + 8)
    if distance_ratio is not None:
        needed = digits * math.log(10) / math.log(distance_ratio) + orders + 8
        count = max(count, int(math.ceil(needed)))
    return count + (count % 2)


def taylor_coefficients(func: Callable, center, radius, orders: int,
                        nodes: int = None, real_symmetric: bool = False) -> List:
    """
    c_0..c_orders of func(center + u) = Σ c_n u^n, from the trapezoid rule
    on |u| = radius:

        c_n = (1/N) Σ_j func(center + ρ ω^j) (ρ ω^j)^(-n),  ω = exp(2πi/N).

    With real_symmetric=True (center real, func real on the real axis) only
    the upper half of the circle is evaluated and the coefficients are real.
    Summation order is fixed, so results are reproducible.
    """
    if nodes is None:
        nodes = _node_count(orders)
    radius = to_mpf(radius)
    half = nodes // 2
    indices = range(half + 1) if real_symmetric else range(nodes)
    coefficients = [mp.mpf(0) if real_symmetric else mp.mpc(0) for _ in range(orders + 1)]
    for j in indices:
        angle = 2 * mp.pi * j / nodes
        unit = mp.expj(angle)
        value = func(center + radius * unit)
        weight = 1
        if real_symmetric and 0 < j < half:
            weight = 2
        rotated = value
        inv_unit = mp.conj(unit)
        for n in range(orders + 1):
            if real_symmetric:
                coefficients[n] += weight * mp.re(rotated)
            else:
                coefficients[n] += rotated
            rotated *= inv_unit
    scale = mp.mpf(1)
    for n in range(orders + 1):
        coefficients[n] = coefficients[n] / (nodes * scale)
        scale *= radius
    return coefficients


def _cauchy_derivatives(r_max, z0, x, radius):
    """[ζ^(0)(z0, x), ..., ζ^(r_max)(z0, x)] from one circle of nodes."""
    z0 = _as_real_if_possible(to_number(z0))
    x = to_mpf(x)
    if radius is None:
        radius = mp.mpf(0.5)
    radius = to_mpf(radius)
    distance = abs(z0 - 1)
    if distance <= radius:
        raise PoleError(f"contour |z - {z0}| = {radius} contains the pole z = 1")
    real_symmetric = not isinstance(z0, mpmath.mpc)
    with guarded():
        # coefficient r is read off at scale radius^r, so deeper orders need more bits
        with mp.workprec(mp.prec + r_max):
            nodes = _node_count(r_max, float(distance / radius))
            coefficients = taylor_coefficients(
                lambda z: hurwitz_deriv(0, z, x), z0, radius, r_max,
                nodes=nodes, real_symmetric=real_symmetric,
            )
            values = [factorial(r) * c for r, c in enumerate(coefficients)]
    return [_as_real_if_possible(+value) for value in values]


def zeta_deriv_cauchy(r: int, z0, x, radius=None):
    """
    ζ^(r)(z0, x) as r!/(2πi) ∮ ζ(z, x)/(z - z0)^(r+1) dz on |z - z0| = radius.

    Raises:
        PoleError: if the circle touches or encloses z = 1
    """
    if not isinstance(r, int) or r < 0:
        raise DomainError(f"derivative order must be a non-negative integer, got {r}")
    return _cauchy_derivatives(r, z0, x, radius)[r]


@lru_cache(maxsize=256)
def _laurent_cached(x_key, prec, orders):
    x = mp.mpf(x_key)
    with guarded():
        orders_with_headroom = max(orders, 8)
        guard = orders_with_headroom  # ρ^k loses about k bits at ρ = 1/2
        with mp.workprec(mp.prec + guard):
            radius = mp.mpf(0.5)

            def regular_part(z):
                u = z - 1
                return hurwitz_deriv(0, z, x) - 1 / u

            coefficients = taylor_coefficients(
                regular_part, mp.mpf(1), radius, orders_with_headroom,
                real_symmetric=True,
            )
            constants = [(-1) ** k * factorial(k) * coefficients[k]
                         for k in range(orders_with_headroom + 1)]
    return tuple(constants)


def laurent_coefficients(x, k_max: int) -> List:
    """
    [γ_0(x), ..., γ_{k_max}(x)] from one contour pass around z = 1, where

        ζ(z, x) = 1/(z - 1) + Σ_k (-1)^k γ_k(x)/k! (z - 1)^k.

    Cached per (x, precision).
    """
    if k_max < 0:
        raise DomainError(f"k_max must be >= 0, got {k_max}")
    x = to_mpf(x)
    if x <= 0:
        raise DomainError(f"Stieltjes constants need x > 0, got {x}")
    constants = _laurent_cached(x, mp.prec, max(k_max, 8))
    return [+value for value in constants[:k_max + 1]]


def stieltjes(k: int, x=1):
    """Generalized Stieltjes constant γ_k(x); γ_k(1) = γ_k."""
    if not isinstance(k, int) or k < 0:
        raise DomainError(f"k must be a non-negative integer, got {k}")
    return laurent_coefficients(x, k)[k]


def euler_gamma():
    """γ = γ_0(1)."""
    return stieltjes(0, 1)


@lru_cache(maxsize=16)
def _zeta_at_zero_cached(orders, prec):
    return tuple(_cauchy_derivatives(orders, 0, 1, mp.mpf(0.5)))


def zeta_deriv_at_zero(k: int):
    """ζ^(k)(0) from the Cauchy circle of radius 1/2 around 0 (one pass for k <= 8)."""
    if not isinstance(k, int) or k < 0:
        raise DomainError(f"k must be a non-negative integer, got {k}")
    return +_zeta_at_zero_cached(max(k, 8), mp.prec)[k]


def zeta_second_derivative_closed_form():
    """-½ log²(2π) - π²/24 + ½ γ² + γ_1."""
    gamma0, gamma1 = laurent_coefficients(1, 1)
    log2pi = mp.log(2 * mp.pi)
    return -log2pi ** 2 / 2 - mp.pi ** 2 / 24 + gamma0 ** 2 / 2 + gamma1


def prevost_gamma1() -> SeriesValue:
    """
    γ_1 = Σ_{j>=1} ζ'(2j+1)/(2j+1).

    Terms shrink like 4^(-j), so once a term drops below working precision
    the tail is bounded by a third of it.
    """
    eps = epsilon()
    with guarded():
        total = mp.mpf(0)
        for j in range(1, 10 * mp.dps):
            term = hurwitz_deriv(1, 2 * j + 1, 1) / (2 * j + 1)
            total += term
            if abs(term) <= eps * abs(total):
                return SeriesValue(+total, abs(term) / 3, j)
    raise NonConvergenceError("Prévost series for γ_1 did not converge")


def hurwitz_leading_terms(r: int, z, x):
    """
    The two leading groups of ζ^(r)(z, x) as x → ∞:

        Σ_t C(r,t) (-1)^r t!/(z-1)^(t+1) log^(r-t)(x)/x^(z-1) + (-1)^r log^r(x)/(2x^z),

    with error O(log^r(x)/x^(Re z + 1)).
    """
    z, x = _check_hurwitz_args(r, z, x)
    log_x = mp.log(x)
    sign = (-1) ** r
    total = 0
    for t in range(r + 1):
        total += comb(r, t) * factorial(t) * log_x ** (r - t) / (z - 1) ** (t + 1)
    total = sign * total * x ** (1 - z)
    total += sign * log_x ** r / (2 * x ** z)
    return _as_real_if_possible(total)

"""
Riemann ξ/Ξ, the kernel ω(z, t) and the Ξ-function integrals

    I(z, α) = ∫_0^∞ ω(z, t) cos(½ t log α) dt,
    J(z, α) = 8(4π)^((z-4)/2)/Γ(z) · I(z, α),
    𝓘(α)   = 2/(4π)^(3/2) ∫_0^∞ |Γ(w)Ξ(t/2)|² {2 Re ψ(w) - 8/(1+t²) + 2log(4π) + 4γ}
                                  · cos(½ t log α)/(1+t²) dt,  w = (-1+it)/4,

together with their large-α expansions.

Integrands decay like e^(-πt/2) times a power of t (Stirling's formula on
the Γ and Ξ factors). Quadrature runs Gauss-Legendre panels of width 1, 1,
2, 4, 8, 8, ... with a halving test per panel and stops once the envelope
tail falls below working precision. Panels are summed in a fixed order.
"""

import logging
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Tuple

import mpmath
from mpmath import mp

from psik.config import config
from psik.errors import DomainError, NoiseFloorError, NonConvergenceError
from psik.series import SeriesValue, epsilon, guarded, log_of, to_mpf, to_number
from psik.zeta_engine import (
    digamma_complex,
    euler_gamma,
    gamma_complex,
    hurwitz_deriv,
    riemann_zeta,
)

logger = logging.getLogger(__name__)

# Exponential rate of the integrand envelope e^(-πt/2)
ENVELOPE_RATE = mp.pi / 2

MAX_BISECTION_DEPTH = 12
MAX_PANEL_WIDTH = 8

# Largest number of terms accepted in the truncated large-α expansions
MAX_ASYMPTOTIC_TERMS = 8
ASYMPTOTIC_MIN_ALPHA = 5


@dataclass(frozen=True)
class XiPoint:
    """Ξ(t) with the factors it was assembled from."""
    t: mpmath.mpf
    xi_val: mpmath.mpf
    zeta_half: mpmath.mpc
    gamma_quarter: mpmath.mpc


def xi_complex(s):
    """ξ(s) = ½ s(s-1) π^(-s/2) Γ(s/2) ζ(s), entire; evaluated on Re(s) >= ½."""
    s = to_number(s)
    if s == 1 or s == 0:
        return mp.mpf(0.5)
    if mp.re(s) < 0.5:
        s = 1 - s
    with guarded():
        value = s * (s - 1) / 2 * mp.pi ** (-s / 2) * gamma_complex(s / 2) * riemann_zeta(s)
    if isinstance(value, mpmath.mpc) and value.imag == 0:
        value = value.real
    return +value


def _noise_floor():
    return mp.mpf(10) ** (8 - mp.dps)


def xi_point(t) -> XiPoint:
    """
    Ξ(t) = ξ(½ + it) for real t, with its Γ and ζ factors.

    Raises:
        NoiseFloorError: if the imaginary residue exceeds 10^(-(D-8)) relative
    """
    t = to_mpf(t)
    with guarded():
        s = mp.mpc(0.5, t)
        zeta_half = riemann_zeta(s)
        gamma_quarter = gamma_complex(s / 2)
        value = s * (s - 1) / 2 * mp.pi ** (-s / 2) * gamma_quarter * zeta_half
    value = mp.mpc(value)
    if abs(value.imag) > _noise_floor() * max(1, abs(value.real)):
        raise NoiseFloorError(f"Ξ({t}) has imaginary residue {mp.nstr(value.imag, 5)}")
    return XiPoint(t=t, xi_val=+value.real, zeta_half=zeta_half, gamma_quarter=gamma_quarter)


def xi_of(t):
    """Ξ(t), real for real t."""
    return xi_point(t).xi_val


def _capital_xi(w):
    """Ξ(w) = ξ(½ + iw) for complex w."""
    return xi_complex(mp.mpf(0.5) + mp.mpc(0, 1) * w)


def omega(z, t):
    """
    ω(z, t) = Γ((z-2+it)/4) Γ((z-2-it)/4) Ξ((t+i(z-1))/2) Ξ((t-i(z-1))/2) / (z² + t²).

    For real z the factors pair into conjugates, so
    ω = |Γ((z-2+it)/4)|² |ξ(1 - z/2 + it/2)|² / (z² + t²), which is real.
    """
    z = to_number(z)
    t = to_mpf(t)
    if isinstance(z, mpmath.mpc) and z.imag == 0:
        z = z.real
    if not isinstance(z, mpmath.mpc):
        return _omega_real(z, t, mp.prec)
    with guarded():
        i = mp.mpc(0, 1)
        value = (gamma_complex((z - 2 + i * t) / 4) * gamma_complex((z - 2 - i * t) / 4)
                 * _capital_xi((t + i * (z - 1)) / 2) * _capital_xi((t - i * (z - 1)) / 2)
                 / (z * z + t * t))
    return +value


@lru_cache(maxsize=16384)
def _omega_real(z, t, prec):
    with guarded():
        g = gamma_complex(mp.mpc(z - 2, t) / 4)
        xi = xi_complex(mp.mpc(1 - z / 2, t / 2))
        value = (abs(g) * abs(xi)) ** 2 / (z * z + t * t)
    return +value


@lru_cache(maxsize=16)
def _gauss_legendre_cached(n, prec):
    eps = epsilon()
    nodes = [mp.mpf(0)] * n
    weights = [mp.mpf(0)] * n
    for i in range(1, (n + 1) // 2 + 1):
        x = mp.cos(mp.pi * (i - mp.mpf(0.25)) / (n + mp.mpf(0.5)))
        for _ in range(100):
            p_prev, p = mp.mpf(1), x
            for k in range(2, n + 1):
                p_prev, p = p, ((2 * k - 1) * x * p - (k - 1) * p_prev) / k
            dp = n * (x * p - p_prev) / (x * x - 1)
            dx = p / dp
            x -= dx
            if abs(dx) <= eps:
                break
        p_prev, p = mp.mpf(1), x
        for k in range(2, n + 1):
            p_prev, p = p, ((2 * k - 1) * x * p - (k - 1) * p_prev) / k
        dp = n * (x * p - p_prev) / (x * x - 1)
        weight = 2 / ((1 - x * x) * dp * dp)
        nodes[i - 1], nodes[n - i] = -x, x
        weights[i - 1] = weights[n - i] = weight
    return tuple(nodes), tuple(weights)


def gauss_legendre(n: int) -> Tuple[tuple, tuple]:
    """
    Gauss-Legendre nodes (ascending) and weights on [-1, 1], by Newton
    iteration on the three-term Legendre recurrence. Cached per
    (n, precision).
    """
    if not isinstance(n, int) or n < 2:
        raise DomainError(f"Gauss-Legendre order must be an integer >= 2, got {n!r}")
    with guarded():
        nodes, weights = _gauss_legendre_cached(n, mp.prec)
    return nodes, weights


def _apply_rule(f, a, b, nodes, weights):
    half = (b - a) / 2
    mid = (a + b) / 2
    total = 0
    peak = mp.mpf(0)
    for x, w in zip(nodes, weights):
        value = f(mid + half * x)
        total += w * value
        peak = max(peak, abs(value))
    return total * half, peak


def _panel(f, a, b, nodes, weights, running, depth=0):
    """Integral over [a, b] by the halving test, bisecting on failure."""
    eps = epsilon()
    whole, peak = _apply_rule(f, a, b, nodes, weights)
    mid = (a + b) / 2
    left, peak_left = _apply_rule(f, a, mid, nodes, weights)
    right, peak_right = _apply_rule(f, mid, b, nodes, weights)
    halves = left + right
    diff = abs(whole - halves)
    peak = max(peak, peak_left, peak_right)
    tolerance = eps * max(abs(halves), running, peak * (b - a))
    if diff <= tolerance or depth >= MAX_BISECTION_DEPTH:
        if diff > tolerance:
            logger.warning(f"quadrature panel [{mp.nstr(a, 5)}, {mp.nstr(b, 5)}] "
                           f"hit the bisection limit, error ~ {mp.nstr(diff, 3)}")
        return halves, diff, peak_right
    left_value, left_err, _ = _panel(f, a, mid, nodes, weights, running, depth + 1)
    right_value, right_err, peak_right = _panel(f, mid, b, nodes, weights, running, depth + 1)
    return left_value + right_value, left_err + right_err, peak_right


def integrate_panels(f: Callable, rate=None, first_width=1, max_width=MAX_PANEL_WIDTH) -> SeriesValue:
    """
    ∫_0^∞ f(t) dt for an integrand bounded by C·poly(t)·e^(-rate·t).

    Panels start at width first_width, double up to max_width, and each is
    accepted by the halving test (bisected when it fails). Integration stops
    when the envelope tail peak·e^(-rate·w/2)/rate, with peak the largest
    |f| on the right half of the last panel, drops below working precision.
    The bound is that tail plus the halving differences.

    Raises:
        NonConvergenceError: if the envelope never falls below precision
    """
    if rate is None:
        rate = ENVELOPE_RATE
    with guarded():
        eps = epsilon()
        nodes, weights = gauss_legendre(config.QUAD_ORDER)
        limit = 10 * mp.dps + 200
        a = mp.mpf(0)
        width = to_mpf(first_width)
        total = 0
        error = mp.mpf(0)
        panels = 0
        while True:
            b = a + width
            value, diff, peak = _panel(f, a, b, nodes, weights, abs(total))
            total += value
            error += diff
            panels += 1
            tail = peak * mp.exp(-rate * width / 2) / rate
            if tail <= eps * abs(total) and b >= 4:
                break
            if b > limit:
                raise NonConvergenceError(
                    f"integrand envelope still {mp.nstr(tail, 3)} at t={mp.nstr(b, 5)}")
            a = b
            if panels > 1:
                width = min(2 * width, max_width)
    logger.debug(f"integrate_panels: {panels} panels to t={mp.nstr(b, 6)}")
    return SeriesValue(+total, +(error + tail), panels * 3 * len(nodes))


def _check_strip(z):
    z = to_number(z)
    if not 0 < mp.re(z) < 2:
        raise DomainError(f"need 0 < Re z < 2, got z={z}")
    return z


def _check_alpha(alpha):
    if to_mpf(alpha) <= 0:
        raise DomainError(f"α must be positive, got {alpha}")
    return log_of(alpha)


def integral_I(z, alpha) -> SeriesValue:
    """I(z, α) = ∫_0^∞ ω(z, t) cos(½ t log α) dt for 0 < Re z < 2."""
    z = _check_strip(z)
    log_alpha = _check_alpha(alpha)

    def integrand(t):
        value = omega(z, t)
        if log_alpha:
            value = value * mp.cos(t * log_alpha / 2)
        return value

    return integrate_panels(integrand)


def integral_J(z, alpha) -> SeriesValue:
    """J(z, α) = 8(4π)^((z-4)/2)/Γ(z) · I(z, α)."""
    z = _check_strip(z)
    factor = 8 * (4 * mp.pi) ** ((z - 4) / 2) / gamma_complex(z)
    return integral_I(z, alpha).scaled(factor)


def script_I(alpha) -> SeriesValue:
    """𝓘(α), the Ξ-integral of the ψ_1 modular relation."""
    log_alpha = _check_alpha(alpha)
    with guarded():
        constant = 2 * mp.log(4 * mp.pi) + 4 * euler_gamma()

    def integrand(t):
        return _script_kernel(t, mp.prec, constant) * (mp.cos(t * log_alpha / 2) if log_alpha else 1)

    return integrate_panels(integrand).scaled(2 / (4 * mp.pi) ** mp.mpf(1.5))


@lru_cache(maxsize=16384)
def _script_kernel(t, prec, constant):
    with guarded():
        w = mp.mpc(-1, t) / 4
        one_t2 = 1 + t * t
        weight = (abs(gamma_complex(w)) * abs(xi_of(t / 2))) ** 2
        bracket = 2 * mp.re(digamma_complex(w)) - 8 / one_t2 + constant
        value = weight * bracket / one_t2
    return +value


def _check_terms(M):
    if not isinstance(M, int) or not 0 <= M <= MAX_ASYMPTOTIC_TERMS:
        raise DomainError(f"M must be an integer in [0, {MAX_ASYMPTOTIC_TERMS}], got {M!r}")


def _check_large(alpha):
    alpha = to_mpf(alpha)
    if alpha < ASYMPTOTIC_MIN_ALPHA:
        raise DomainError(f"large-α expansion needs α >= {ASYMPTOTIC_MIN_ALPHA}, got {alpha}")
    return alpha


def _zeta_pair(n):
    """(Γ(n) ζ(n)², ζ'(n)/ζ(n)) for an even n >= 2."""
    zeta_n = riemann_zeta(n)
    return math.factorial(n - 1) * zeta_n ** 2, hurwitz_deriv(1, n, 1) / zeta_n


def _mellin_term(m, alpha, shift):
    """(-1)^m Γ(2m+2) ζ²(2m+2)/(2πα)^(2m+2) (shift + ψ(2m+2) + ζ'/ζ(2m+2))."""
    n = 2 * m + 2
    weight, log_deriv = _zeta_pair(n)
    return (-1) ** m * weight / (2 * mp.pi * alpha) ** n * (shift + digamma_complex(n) + log_deriv)


def asympt_script_I(alpha, M: int) -> SeriesValue:
    """
    Large-α expansion of 𝓘(α) with the m < M terms of its series,

        -(γ + log 2π)(γ - log 2πα)/(4√α) + π²/(48√α)
        + 2√α Σ_{m<M} (-1)^m Γ(2m+2)ζ²(2m+2)/(2πα)^(2m+2)
                      · (-½ log α + γ + ψ(2m+2) + ζ'(2m+2)/ζ(2m+2)).

    The bound is the magnitude of the m = M term. Use α -> 1/α for small α.
    """
    _check_terms(M)
    alpha = _check_large(alpha)
    gamma = euler_gamma()
    log_2pi = mp.log(2 * mp.pi)
    root = mp.sqrt(alpha)
    value = (-(gamma + log_2pi) * (gamma - log_2pi - mp.log(alpha)) / (4 * root)
             + mp.pi ** 2 / (48 * root))
    shift = -mp.log(alpha) / 2 + gamma
    for m in range(M):
        value += 2 * root * _mellin_term(m, alpha, shift)
    bound = abs(2 * root * _mellin_term(M, alpha, shift))
    return SeriesValue(value, bound, M)


def asympt_phi1_sum(alpha, M: int, direction: str = 'infinity') -> SeriesValue:
    """
    Σ_n φ_1(nα) as α → ∞ (direction='infinity', α >= 5) or α → 0
    (direction='zero', α <= 1/5), keeping the m < M terms; the bound is the
    magnitude of the m = M term.
    """
    _check_terms(M)
    gamma = euler_gamma()
    if direction == 'infinity':
        alpha = _check_large(alpha)
        shift = -mp.log(alpha) + gamma
        value = mp.mpf(0)
        for m in range(M):
            value += 2 * _mellin_term(m, alpha, shift)
        bound = abs(2 * _mellin_term(M, alpha, shift))
        return SeriesValue(value, bound, M)
    if direction == 'zero':
        alpha = to_mpf(alpha)
        if not 0 < alpha <= 1 / mp.mpf(ASYMPTOTIC_MIN_ALPHA):
            raise DomainError(f"small-α expansion needs 0 < α <= 1/{ASYMPTOTIC_MIN_ALPHA}, got {alpha}")
        log_ratio = mp.log(2 * mp.pi / alpha)
        value = (mp.pi ** 2 / 48 * (1 - 1 / alpha)
                 - (gamma + log_ratio) * (alpha * (gamma - log_ratio) - gamma
                                          + mp.log(2 * mp.pi * alpha)) / (4 * alpha))

        def term(m):
            # α^(2m+1)/(2π)^(2m+2) = (2π/α)^(-(2m+2))/α
            return 2 * _mellin_term(m, 1 / alpha, gamma) / alpha

        for m in range(M):
            value += term(m)
        return SeriesValue(value, abs(term(M)), M)
    raise DomainError(f"direction must be 'infinity' or 'zero', got {direction!r}")


def asympt_ramanujan(alpha, M: int) -> SeriesValue:
    """
    Large-α expansion of the integral side of Ramanujan's ψ relation,
    (1/π^(3/2)) ∫ |Ξ(t/2)Γ((-1+it)/4)|² cos(½ t log α)/(1+t²) dt = J(1, α):

        -√α (γ - log 2πα)/(2α) - 2√α Σ_{k=1}^{M} (-1)^k Γ(2k)ζ²(2k)/(2πα)^(2k),

    with bound the magnitude of the k = M + 1 term.
    """
    _check_terms(M)
    alpha = _check_large(alpha)
    gamma = euler_gamma()
    root = mp.sqrt(alpha)

    def term(k):
        weight, _ = _zeta_pair(2 * k)
        return -2 * root * (-1) ** k * weight / (2 * mp.pi * alpha) ** (2 * k)

    value = -root * (gamma - mp.log(2 * mp.pi * alpha)) / (2 * alpha)
    for k in range(1, M + 1):
        value += term(k)
    return SeriesValue(value, abs(term(M + 1)), M)

"""
Tests for Γ, ψ, Hurwitz ζ derivatives and the Stieltjes/ζ^(k)(0) constants,
checked against mpmath's own implementations
"""

from fractions import Fraction

import pytest
from mpmath import mp

from psik.errors import NonConvergenceError, PoleError, DomainError
from psik.config import config
from psik.zeta_engine import (
    digamma_complex,
    euler_gamma,
    gamma_complex,
    hurwitz_deriv,
    hurwitz_deriv_series,
    hurwitz_leading_terms,
    laurent_coefficients,
    prevost_gamma1,
    riemann_zeta,
    stieltjes,
    zeta_deriv_at_zero,
    zeta_deriv_cauchy,
    zeta_second_derivative_closed_form,
)


class TestGamma:

    def test_gamma_one(self, close):
        assert close(gamma_complex(1), 1)

    def test_gamma_half(self, close):
        assert close(gamma_complex(Fraction(1, 2)), mp.sqrt(mp.pi))

    def test_gamma_complex_matches_mpmath(self, close):
        s = mp.mpc('0.25', 40)
        assert close(gamma_complex(s) / mp.gamma(s), 1)

    def test_gamma_vertical_strip_decay(self):
        """|Γ(σ+it)| ≈ √(2π)|t|^(σ-½)e^(-π|t|/2) for large |t|"""
        sigma, t = mp.mpf('0.25'), mp.mpf(40)
        leading = mp.sqrt(2 * mp.pi) * t ** (sigma - mp.mpf(0.5)) * mp.exp(-mp.pi * t / 2)
        assert abs(abs(gamma_complex(mp.mpc(sigma, t))) / leading - 1) < mp.mpf('0.03')

    @pytest.mark.parametrize('s', [0, -3])
    def test_poles(self, s):
        with pytest.raises(PoleError):
            gamma_complex(s)
        with pytest.raises(PoleError):
            digamma_complex(s)


class TestDigamma:

    def test_known_values(self, close):
        assert close(digamma_complex(1), -mp.euler)
        assert close(digamma_complex(2), 1 - mp.euler)
        assert close(digamma_complex(Fraction(1, 2)), -mp.euler - 2 * mp.log(2))

    def test_complex_matches_mpmath(self, close):
        s = mp.mpc(-0.25, 7.5)
        assert close(digamma_complex(s), mp.digamma(s))


class TestHurwitzDeriv:
    """Euler-Maclaurin ζ^(r)(z, x)"""

    @pytest.mark.parametrize('r', [0, 1, 2, 3])
    @pytest.mark.parametrize('z', [2, 3, mp.mpf('0.5')])
    @pytest.mark.parametrize('x', [mp.mpf('0.5'), 1, mp.mpf('2.3')])
    def test_matches_mpmath(self, close, r, z, x):
        assert close(hurwitz_deriv(r, z, x), mp.zeta(z, x, r))

    def test_complex_argument(self, close):
        s = mp.mpc(0.5, 10)
        assert close(hurwitz_deriv(1, s, 1), mp.zeta(s, 1, 1))

    def test_riemann_zeta(self, close):
        assert close(riemann_zeta(2), mp.pi ** 2 / 6)

    def test_bound_is_small(self):
        result = hurwitz_deriv_series(2, 3, 1)
        assert result.trunc_bound < mp.mpf(10) ** -30
        assert result.terms_used > 0

    def test_pole(self):
        with pytest.raises(PoleError):
            hurwitz_deriv(0, 1, 2)

    def test_bad_arguments(self):
        with pytest.raises(DomainError):
            hurwitz_deriv(0, 2, 0)
        with pytest.raises(DomainError):
            hurwitz_deriv(-1, 2, 1)

    def test_depth_limit(self, monkeypatch):
        monkeypatch.setattr(config, 'EM_MAX_DEPTH', 1)
        with pytest.raises(NonConvergenceError):
            hurwitz_deriv_series(0, 2, 1)

    @pytest.mark.parametrize('r', [0, 1, 2, 3, 4, 5])
    @pytest.mark.parametrize('s', [2, mp.mpf('3.5'), mp.mpf('0.5'), mp.mpc(0.5, 3)])
    @pytest.mark.parametrize('x', [mp.mpf('0.5'), mp.mpf('1.7'), 6])
    def test_shift_by_one(self, close, r, s, x):
        """ζ^(r)(s, x) - ζ^(r)(s, x + 1) = (-log x)^r x^(-s)"""
        step = hurwitz_deriv(r, s, x) - hurwitz_deriv(r, s, x + 1)
        assert close(step, (-mp.log(x)) ** r * mp.power(x, -s))

    @pytest.mark.parametrize('r', [0, 1, 2, 3])
    @pytest.mark.parametrize('z', [2, 3])
    def test_leading_terms_remainder(self, r, z):
        """|ζ^(r)(z, x) - leading groups| <= C log^r(x)/x^(z+1), C fitted at x = 50"""
        def scaled(x):
            x = mp.mpf(x)
            delta = abs(hurwitz_deriv(r, z, x) - hurwitz_leading_terms(r, z, x))
            return delta * x ** (z + 1) / mp.log(x) ** r

        fitted = 2 * scaled(50)
        assert fitted > 0
        for x in (100, 200):
            assert scaled(x) <= fitted


class TestLaurentExpansion:
    """ζ(z, x) rebuilt from γ_k(x) on |z - 1| = 0.1"""

    @pytest.mark.parametrize('x', [mp.mpf('0.5'), 1, mp.mpf('2.3')])
    @pytest.mark.parametrize('theta', [mp.mpf('0.3'), mp.mpf('1.7'), mp.pi, mp.mpf('4.5')])
    def test_rebuilds_hurwitz_zeta(self, close, x, theta):
        h = mp.mpf('0.1') * mp.expj(theta)
        rebuilt = 1 / h
        for k, gamma_k in enumerate(laurent_coefficients(x, 16)):
            rebuilt += (-1) ** k * gamma_k / mp.factorial(k) * h ** k
        assert close(rebuilt, mp.zeta(1 + h, x), digits=20)


class TestCauchyOracle:
    """zeta_deriv_cauchy agrees with the Euler-Maclaurin path"""

    @pytest.mark.parametrize('z', [2, 3, 4])
    @pytest.mark.parametrize('x', [mp.mpf('0.5'), 1, mp.mpf('2.3')])
    def test_agreement(self, close, precision, z, x):
        with precision(40):
            for r in range(5):
                assert close(zeta_deriv_cauchy(r, z, x), hurwitz_deriv(r, z, x))

    def test_contour_around_pole(self):
        with pytest.raises(PoleError):
            zeta_deriv_cauchy(1, mp.mpf('1.3'), 1)


class TestConstants:

    def test_euler_gamma(self, close):
        assert close(euler_gamma(), mp.euler)

    @pytest.mark.parametrize('k', [0, 1, 2, 5])
    def test_stieltjes_matches_mpmath(self, close, k):
        assert close(stieltjes(k), mp.stieltjes(k), digits=22)

    @pytest.mark.parametrize('x', [mp.mpf('0.5'), mp.mpf('2.3')])
    def test_generalized_stieltjes(self, close, x):
        values = laurent_coefficients(x, 3)
        for k, value in enumerate(values):
            assert close(value, mp.stieltjes(k, x), digits=22)

    def test_gamma_zero_is_minus_digamma(self, close):
        x = mp.mpf('2.3')
        assert close(stieltjes(0, x), -mp.digamma(x))

    def test_zeta_at_zero(self, close):
        assert close(zeta_deriv_at_zero(0), -mp.mpf(0.5))
        assert close(zeta_deriv_at_zero(1), -mp.log(2 * mp.pi) / 2)

    def test_zeta_second_derivative(self, close):
        assert close(zeta_deriv_at_zero(2), zeta_second_derivative_closed_form())
        assert close(zeta_deriv_at_zero(2), mp.zeta(0, 1, 2))

    def test_prevost_series(self, close):
        result = prevost_gamma1()
        assert close(result.value, mp.stieltjes(1), digits=20)
        assert result.trunc_bound < mp.mpf(10) ** -25

    def test_negative_order(self):
        with pytest.raises(DomainError):
            stieltjes(-1)
        with pytest.raises(DomainError):
            zeta_deriv_at_zero(-2)

"""
Name-dispatch for the evaluable functions shared by `psik eval` and POST /eval.
"""

import logging
from typing import Dict

from mpmath import mp

from psik.combinatorics import h_of_r, stirling_first, stirling_kernel
from psik.digamma import psi_k, psi_k_deriv
from psik.errors import DomainError
from psik.relations import REQUIRED, Param, coerce_param
from psik.series import SeriesValue, epsilon, to_mpf
from psik.xi_integral import script_I, xi_of
from psik.zeta_engine import hurwitz_deriv_series, stieltjes, zeta_deriv_at_zero

logger = logging.getLogger(__name__)


def _rounded(value):
    """A directly computed value, charged a few ulps."""
    return SeriesValue(value, 4 * epsilon() * (abs(value) + 1), 1)


def _stieltjes(k, x):
    return _rounded(stieltjes(k, x))


def _zeta0(k):
    return _rounded(zeta_deriv_at_zero(k))


def _stirling(n, m):
    return SeriesValue.exact(stirling_first(n, m))


def _h(r, z):
    return SeriesValue.exact(h_of_r(r, stirling_kernel(z)))


def _xi(t):
    return _rounded(xi_of(to_mpf(t)))


FUNCTIONS = {
    'psik': (psi_k, (Param('k', 'int', REQUIRED), Param('x', 'real', REQUIRED),
                     Param('method', 'str', 'laurent'))),
    'psik-deriv': (psi_k_deriv, (Param('k', 'int', REQUIRED), Param('m', 'int', REQUIRED),
                                 Param('x', 'real', REQUIRED))),
    'stieltjes': (_stieltjes, (Param('k', 'int', REQUIRED), Param('x', 'real', 1))),
    'hurwitz-deriv': (hurwitz_deriv_series, (Param('r', 'int', REQUIRED), Param('z', 'real', REQUIRED),
                                             Param('x', 'real', REQUIRED))),
    'zeta0-deriv': (_zeta0, (Param('k', 'int', REQUIRED),)),
    'stirling': (_stirling, (Param('n', 'int', REQUIRED), Param('m', 'int', REQUIRED))),
    # h(r) for the kernel s(i) = s(z, i); z = 2 unless given
    'h': (_h, (Param('r', 'int', REQUIRED), Param('z', 'int', 2))),
    'xi': (_xi, (Param('t', 'real', REQUIRED),)),
    'script-i': (script_I, (Param('alpha', 'real', REQUIRED),)),
}


def function_params(name: str):
    if name not in FUNCTIONS:
        raise DomainError(f"unknown function {name!r}; expected one of {sorted(FUNCTIONS)}")
    return FUNCTIONS[name][1]


def evaluate(name: str, params: Dict) -> SeriesValue:
    """
    Evaluate one named function on a parameter mapping.

    Raises:
        DomainError: for unknown names, unknown or missing parameters and
            values outside the function's domain
    """
    declared = function_params(name)
    known = {param.name for param in declared}
    unknown = set(params) - known
    if unknown:
        raise DomainError(f"unknown parameter(s) for {name}: {', '.join(sorted(unknown))}")
    kwargs = {}
    for param in declared:
        if param.name in params and params[param.name] is not None:
            kwargs[param.name] = coerce_param(param.kind, param.name, params[param.name])
        elif param.default is REQUIRED:
            raise DomainError(f"{name} needs parameter {param.name}")
        else:
            kwargs[param.name] = param.default
    result = FUNCTIONS[name][0](**kwargs)
    logger.debug(f"eval {name} {kwargs}: terms_used={result.terms_used} at {mp.prec} bits")
    return result

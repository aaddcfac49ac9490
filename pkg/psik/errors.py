"""
Custom exception classes for special-function evaluation and verification.

Every exception carries the CLI exit code and the HTTP status it maps to,
so the command line and the JSON service report failures the same way.
"""


class PsikError(Exception):
    """
    Base class for all errors raised by the psik package.

    Exit code: 1
    HTTP Status: 500 Internal Server Error
    """
    exit_code = 1
    http_status = 500
    error_type = 'psik_error'


class DomainError(PsikError, ValueError):
    """
    Raised when an operation is called outside its documented domain.

    This typically indicates:
    - A negative order or index (k < 0, r < 0)
    - A non-positive argument where x > 0 is required
    - An argument below the threshold of an asymptotic formula

    Exit code: 2
    HTTP Status: 400 Bad Request
    """
    exit_code = 2
    http_status = 400
    error_type = 'domain_error'


class PoleError(DomainError):
    """
    Raised when evaluating at a pole.

    This typically indicates:
    - Γ or ψ at a non-positive integer
    - ζ(z, x) or one of its z-derivatives at z = 1
    - A Cauchy contour that encloses z = 1

    Exit code: 2
    HTTP Status: 400 Bad Request
    """
    error_type = 'pole_error'


class SingularKernelError(DomainError, ZeroDivisionError):
    """
    Raised when a convolution kernel has s(1) = 0 and cannot be inverted.

    Exit code: 2
    HTTP Status: 400 Bad Request
    """
    error_type = 'singular_kernel'


class ConfigParseError(PsikError):
    """
    Raised when a suite configuration file cannot be parsed.

    This typically indicates:
    - A line without '='
    - An unknown key or relation name
    - A grid value that is not an integer, range, rational or decimal

    Exit code: 2
    HTTP Status: 400 Bad Request
    """
    exit_code = 2
    http_status = 400
    error_type = 'config_error'


class BudgetExceededError(PsikError):
    """
    Raised when a truncation budget cannot be met at the working precision.

    Exit code: 3
    HTTP Status: 422 Unprocessable Entity
    """
    exit_code = 3
    http_status = 422
    error_type = 'budget_exceeded'


class NonConvergenceError(BudgetExceededError):
    """
    Raised when a series or Euler-Maclaurin expansion exhausts its depth limit.

    This typically indicates:
    - Too small a shift for the requested precision
    - PSIK_EM_MAX_DEPTH set too low
    """
    error_type = 'non_convergence'


class DivergentRegimeError(BudgetExceededError):
    """
    Raised when an asymptotic expansion is truncated past its smallest term,
    i.e. the first omitted term exceeds the last included one.
    """
    error_type = 'divergent_regime'


class NoiseFloorError(BudgetExceededError):
    """
    Raised when the imaginary part of a quantity that must be real
    (such as Ξ(t) for real t) exceeds the noise floor of the working precision.
    """
    error_type = 'noise_floor'

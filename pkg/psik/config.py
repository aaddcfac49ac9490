"""
Application configuration management.

All configuration values are loaded from environment variables (.env file).
See .env.example for available options and descriptions.
"""

import logging
import math
import os

from dotenv import load_dotenv

# Load environment variables from .env file if it exists
load_dotenv()

logger = logging.getLogger(__name__)


def _env_int(name, default):
    """Read an integer setting, falling back to the default on bad input."""
    raw = os.getenv(name)
    if raw is None or raw.strip() == '':
        return default
    try:
        return int(raw)
    except ValueError:
        logger.warning(f"Ignoring invalid {name}={raw!r}, using {default}")
        return default


def _env_float(name, default):
    """Read a float setting, falling back to the default on bad input."""
    raw = os.getenv(name)
    if raw is None or raw.strip() == '':
        return default
    try:
        return float(raw)
    except ValueError:
        logger.warning(f"Ignoring invalid {name}={raw!r}, using {default}")
        return default


def _env_flag(name, default):
    return os.getenv(name, default).lower() in ('true', '1', 'yes')


def digits_to_bits(digits):
    """Working precision in bits for D requested digits (15-digit guard band)."""
    return int(math.ceil(3.33 * (digits + 15)))


class Config:
    """
    Configuration object for the psik library, CLI and JSON service.

    All values can be customized via environment variables in .env file.
    """

    # ============================================================================
    # Precision and Budgets
    # ============================================================================

    # Default working precision in bits (CLI --digits overrides per call)
    # Default: 256 bits (about 77 decimal digits)
    PRECISION_BITS = _env_int('PSIK_PRECISION_BITS', 256)

    # Multiplier applied to the error budget when deciding pass/fail
    # Asymptotic "first omitted term" estimates are heuristic, hence the slack
    TOLERANCE_FACTOR = _env_float('PSIK_TOLERANCE_FACTOR', 10.0)

    # Cap on directly summed head terms of an infinite series
    MAX_TERMS = _env_int('PSIK_MAX_TERMS', 2000)

    # Euler-Maclaurin Bernoulli depth limit; evaluation refuses rather than degrade
    EM_MAX_DEPTH = _env_int('PSIK_EM_MAX_DEPTH', 60)

    # Gauss-Legendre order used on every quadrature panel
    QUAD_ORDER = _env_int('PSIK_QUAD_ORDER', 40)

    # ============================================================================
    # Concurrency
    # ============================================================================

    # Worker processes for suite runs (1 = run rows in-process)
    THREADS = _env_int('PSIK_THREADS', 1)

    # ============================================================================
    # Logging Configuration
    # ============================================================================

    # Options: DEBUG, INFO, WARNING, ERROR, CRITICAL
    LOG_LEVEL = os.getenv('LOG_LEVEL', 'INFO').upper()

    # Rotating log file location; set LOG_TO_FILE=false to log to stderr only
    LOG_DIR = os.getenv('LOG_DIR', 'logs')
    LOG_TO_FILE = _env_flag('LOG_TO_FILE', 'true')

    # ============================================================================
    # Flask Configuration
    # ============================================================================

    FLASK_PORT = _env_int('FLASK_PORT', 5000)
    FLASK_DEBUG = _env_flag('FLASK_DEBUG', 'false')

    @property
    def PRECISION_DIGITS(self):
        """Decimal digits corresponding to PRECISION_BITS."""
        return int(self.PRECISION_BITS * math.log10(2))


# Create a default config instance for easy importing
config = Config()

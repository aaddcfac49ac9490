"""
Pytest configuration and fixtures for testing
"""

import os
import sys

import pytest

# Add parent directory to path so we can import psik
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

# Keep test runs from writing rotating log files; must be set before psik.config loads
os.environ['LOG_TO_FILE'] = 'false'

from mpmath import mp  # noqa: E402

from psik import create_app, setup_logging  # noqa: E402
from psik.series import working_precision  # noqa: E402

# Digits used by most numerical tests; oracles are compared a few digits below
TEST_DIGITS = 30

# Attach the console handler once, to the session-wide stderr
setup_logging()


@pytest.fixture(autouse=True)
def default_precision():
    """Run every test at TEST_DIGITS and restore mpmath's precision afterwards."""
    with working_precision(digits=TEST_DIGITS):
        yield mp.prec


@pytest.fixture
def precision():
    """
    Switch precision inside a test:

        with precision(20):
            ...
    """
    return lambda digits: working_precision(digits=digits)


@pytest.fixture
def close():
    """Relative/absolute closeness at a given number of digits."""
    def check(a, b, digits=25):
        tolerance = mp.mpf(10) ** (-digits)
        return abs(a - b) <= tolerance * max(1, abs(a), abs(b))
    return check


@pytest.fixture
def app():
    """
    Flask app instance for pytest-flask (provides the `client` fixture)
    """
    test_app = create_app()
    test_app.config['TESTING'] = True
    return test_app

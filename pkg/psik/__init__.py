"""
psik - generalized digamma functions and their modular relations.

This module holds the logging setup and the Flask application factory for
the JSON service. The numerical library lives in the submodules and never
configures logging on import; the CLI and create_app() call setup_logging().
"""

import logging
import os
from logging.handlers import RotatingFileHandler

from flask import Flask, jsonify, request

from psik.config import config
from psik.errors import PsikError

__version__ = '1.0.0'

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'

logger = logging.getLogger(__name__)


def setup_logging(level=None):
    """
    Configure root logging with a rotating file handler and console output.

    Sets up two handlers:
    1. File handler: rotates at 10MB, keeps 5 backups in LOG_DIR/psik.log
       (skipped when LOG_TO_FILE=false)
    2. Console handler: stderr, so stdout stays clean for CLI results

    Calling it again only adjusts the level.

    Args:
        level: overrides LOG_LEVEL from the config

    Returns:
        logging.Logger: the package logger
    """
    numeric_level = getattr(logging, (level or config.LOG_LEVEL).upper(), logging.INFO)
    root_logger = logging.getLogger()
    root_logger.setLevel(numeric_level)

    if getattr(setup_logging, 'configured', False):
        for handler in root_logger.handlers:
            handler.setLevel(numeric_level)
        return logger

    formatter = logging.Formatter(LOG_FORMAT, datefmt='%Y-%m-%d %H:%M:%S')

    if config.LOG_TO_FILE:
        if not os.path.exists(config.LOG_DIR):
            os.makedirs(config.LOG_DIR)
        file_handler = RotatingFileHandler(
            os.path.join(config.LOG_DIR, 'psik.log'),
            maxBytes=10*1024*1024,
            backupCount=5
        )
        file_handler.setLevel(numeric_level)
        file_handler.setFormatter(formatter)
        root_logger.addHandler(file_handler)

    console_handler = logging.StreamHandler()
    console_handler.setLevel(numeric_level)
    console_handler.setFormatter(formatter)
    root_logger.addHandler(console_handler)

    # Reduce noise from werkzeug (Flask's dev server)
    logging.getLogger('werkzeug').setLevel(logging.WARNING)

    setup_logging.configured = True
    return logger


def create_app():
    """
    Application factory for the JSON service.

    This function:
    1. Configures logging
    2. Creates the Flask application and stores the config on it
    3. Registers all blueprints (routes)
    4. Registers all error handlers

    Returns:
        Flask: Configured Flask application instance

    Environment Variables:
        All configuration is loaded from .env via psik.config.Config
        See .env.example for available options
    """
    setup_logging()
    logger.info("Creating Flask application")

    app = Flask(__name__)
    app.debug = config.FLASK_DEBUG
    app.config['PSIK_CONFIG'] = config
    app.json.sort_keys = False

    logger.info(f"Flask configured - Debug: {config.FLASK_DEBUG}, Port: {config.FLASK_PORT}, "
                f"default precision: {config.PRECISION_BITS} bits")

    from psik.routes import register_blueprints
    register_blueprints(app)

    register_error_handlers(app)

    logger.info("Flask application created successfully")
    return app


def register_error_handlers(app: Flask):
    """
    Register all error handlers with the Flask application.

    Handles:
    - HTTP errors: 400, 404, 405, 500
    - PsikError and subclasses, mapped to their http_status
    - Generic exceptions: Exception

    Args:
        app: Flask application instance
    """

    @app.errorhandler(400)
    def bad_request_error(error):
        """Malformed JSON or missing request body."""
        logger.warning(f"Bad request: {str(error)}")
        return jsonify({
            'error': 'Bad request',
            'message': 'The request could not be understood or was missing required parameters',
            'status': 400
        }), 400

    @app.errorhandler(404)
    def not_found_error(error):
        logger.warning(f"Not found: {request.path}")
        return jsonify({
            'error': 'Not found',
            'message': 'The requested resource was not found on this server',
            'status': 404
        }), 404

    @app.errorhandler(405)
    def method_not_allowed_error(error):
        """Handle HTTP 405 Method Not Allowed errors."""
        logger.warning("Method not allowed: %s %s", request.method, request.path)
        return jsonify({
            'error': 'Method not allowed',
            'message': 'The requested URL does not support this HTTP method.',
            'status': 405
        }), 405

    @app.errorhandler(500)
    def internal_error(error):
        logger.error(f"Internal server error: {str(error)}", exc_info=True)
        return jsonify({
            'error': 'Internal server error',
            'message': 'An internal server error occurred.',
            'status': 500
        }), 500

    @app.errorhandler(PsikError)
    def handle_psik_error(error):
        """
        Map a library error to its HTTP status.

        DomainError and ConfigParseError give 400, budget failures 422 and
        anything else from the library 500. The body carries the error type
        so clients can tell a pole from a non-converging series.
        """
        log = logger.warning if error.http_status < 500 else logger.error
        log(f"{type(error).__name__}: {str(error)}")
        return jsonify({
            'error': type(error).__name__,
            'message': str(error),
            'status': error.http_status,
            'type': error.error_type
        }), error.http_status

    @app.errorhandler(Exception)
    def handle_unexpected_error(error):
        """Catch-all; logs the full traceback."""
        logger.error(f"Unexpected error: {str(error)}", exc_info=True)
        return jsonify({
            'error': 'Unexpected error',
            'message': 'An unexpected error occurred.',
            'status': 500
        }), 500

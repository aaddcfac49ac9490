"""
Flask Blueprint Registration Module

Blueprints:
    - health: liveness and default precision
    - functions: names of evaluable functions and relations
    - evaluate: POST /eval
    - verify: POST /verify
"""

import logging

from flask import Flask, jsonify, request

from psik.errors import DomainError

logger = logging.getLogger(__name__)

# Largest precision a single request may ask for
MAX_REQUEST_DIGITS = 1000


def register_blueprints(app: Flask):
    """
    Register all application blueprints with the Flask app.

    Args:
        app: The Flask application instance
    """
    # Import blueprints locally to avoid circular imports
    from psik.routes.evaluate import bp as evaluate_bp
    from psik.routes.functions import bp as functions_bp
    from psik.routes.health import bp as health_bp
    from psik.routes.verify import bp as verify_bp

    app.register_blueprint(health_bp)
    app.register_blueprint(functions_bp)
    app.register_blueprint(evaluate_bp)
    app.register_blueprint(verify_bp)

    app.logger.info("All blueprints registered successfully")


def invalid_request(message):
    """400 response in the shape the error handlers use."""
    return jsonify({
        'error': 'Invalid request',
        'message': message,
        'status': 400
    }), 400


def read_request(name_key):
    """
    Pull (name, params, digits) out of a JSON body.

    Returns:
        tuple: (name, params, digits, None) on success, or
               (None, None, None, response) when the body is unusable
    """
    data = request.get_json(silent=True)
    if not isinstance(data, dict):
        logger.warning(f"{request.path} request missing JSON data")
        return None, None, None, invalid_request('Request must contain a JSON object')

    name = data.get(name_key)
    if not isinstance(name, str) or not name.strip():
        return None, None, None, invalid_request(f"Missing '{name_key}'")

    params = data.get('params', {})
    if not isinstance(params, dict):
        return None, None, None, invalid_request("'params' must be an object")

    digits = data.get('digits')
    if digits is not None:
        if isinstance(digits, bool) or not isinstance(digits, int) or not 1 <= digits <= MAX_REQUEST_DIGITS:
            raise DomainError(f"digits must be an integer in 1..{MAX_REQUEST_DIGITS}, got {digits!r}")
    return name.strip(), params, digits, None

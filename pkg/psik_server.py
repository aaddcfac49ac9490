#!/usr/bin/env python3
"""
psik JSON service

Serves the evaluation and verification operations over HTTP:

    GET  /health
    GET  /functions
    POST /eval    {"function": "psik", "params": {"k": 0, "x": 2}, "digits": 30}
    POST /verify  {"relation": "carlitz", "params": {"k": 0, "m": 2, "n": 3, "x": "7/10"}}

Configuration:
    Copy .env.example to .env. Key settings:
    - PSIK_PRECISION_BITS: default working precision
    - PSIK_TOLERANCE_FACTOR: budget multiplier for pass/fail
    - FLASK_PORT: Web server port (default: 5000)
    - FLASK_DEBUG: Debug mode (true/false)
"""

from psik import create_app
from psik.config import config

# Create Flask application using factory pattern
app = create_app()

if __name__ == '__main__':
    """
    Run the Flask development server.

    For production deployments, use a WSGI server like Gunicorn:
        gunicorn -w 4 -b 0.0.0.0:5000 psik_server:app
    """
    print("\n" + "="*70)
    print("psik - generalized digamma functions")
    print("="*70)
    print(f"Server starting on http://localhost:{config.FLASK_PORT}")
    print(f"Debug mode: {config.FLASK_DEBUG}")
    print(f"Default precision: {config.PRECISION_BITS} bits (~{config.PRECISION_DIGITS} digits)")
    print("="*70 + "\n")

    app.run(
        host='0.0.0.0',
        port=config.FLASK_PORT,
        debug=config.FLASK_DEBUG
    )

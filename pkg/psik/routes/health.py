"""
Health Routes

Routes:
    GET /health - Liveness check with the default working precision
"""

import logging

from flask import Blueprint, jsonify

import psik
from psik.config import config

bp = Blueprint('health', __name__)
logger = logging.getLogger(__name__)


@bp.route('/health', methods=['GET'])
def health():
    """
    Example Response:
        {"status": "ok", "precision_bits": 256, "version": "1.0.0"}
    """
    return jsonify({
        'status': 'ok',
        'precision_bits': config.PRECISION_BITS,
        'version': psik.__version__
    })

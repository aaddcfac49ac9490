"""
Evaluation Routes

Routes:
    POST /eval - Evaluate one function at one point
"""

import logging

from flask import Blueprint, jsonify
from mpmath import mp

from psik.functions import evaluate as evaluate_function
from psik.routes import read_request
from psik.series import format_value, target_digits, working_precision

bp = Blueprint('evaluate', __name__)
logger = logging.getLogger(__name__)


@bp.route('/eval', methods=['POST'])
def evaluate():
    """
    Evaluate a named function.

    Request JSON:
        {
            "function": "psik",
            "params": {"k": 0, "x": "2"},
            "digits": 30
        }

    Returns:
        JSON: value, truncation bound and terms used
        {
            "function": "psik",
            "value": "0.422784335098467139393487909917",
            "trunc_bound": "1.2e-45",
            "terms_used": 1,
            "precision_bits": 150
        }

    Status Codes:
        200: Success
        400: Unknown function, bad parameters, or value outside the domain
        422: Truncation budget could not be met

    Notes:
        - Rationals may be passed as "m/n" strings and stay exact
        - Without "digits" the default PSIK_PRECISION_BITS is used
    """
    name, params, digits, error_response = read_request('function')
    if error_response is not None:
        return error_response

    logger.info(f"Received /eval request: {name} {params}")
    with working_precision(digits=digits):
        result = evaluate_function(name, params)
        shown = digits or target_digits()
        return jsonify({
            'function': name,
            'params': params,
            'value': format_value(result.value, shown),
            'trunc_bound': format_value(result.trunc_bound, 5),
            'terms_used': result.terms_used,
            'precision_bits': mp.prec,
        })

"""
Verification Routes

Routes:
    POST /verify - Run one relation at one parameter point
"""

import logging

from flask import Blueprint, jsonify

from psik.relations import run_relation
from psik.routes import read_request
from psik.series import working_precision

bp = Blueprint('verify', __name__)
logger = logging.getLogger(__name__)


@bp.route('/verify', methods=['POST'])
def verify():
    """
    Verify a named relation.

    Request JSON:
        {
            "relation": "carlitz",
            "params": {"k": 0, "m": 2, "n": 3, "x": "0.7"},
            "digits": 30
        }

    Returns:
        JSON: the RelationReport records, same schema as `psik verify --json`
        {
            "relation": "carlitz",
            "all_pass": true,
            "reports": [{"name": "carlitz", "params": {...}, "lhs": "...", ...}]
        }

    Status Codes:
        200: Relation evaluated (check "all_pass" for the outcome)
        400: Unknown relation or bad parameters
        422: Truncation budget could not be met
    """
    name, params, digits, error_response = read_request('relation')
    if error_response is not None:
        return error_response

    logger.info(f"Received /verify request: {name} {params}")
    with working_precision(digits=digits):
        reports = run_relation(name, params)
        body = [report.to_dict() for report in reports]

    all_pass = all(report.passed for report in reports)
    logger.info(f"/verify {name}: {'pass' if all_pass else 'FAIL'}")
    return jsonify({
        'relation': name,
        'all_pass': all_pass,
        'reports': body,
    })

"""
Catalogue Routes

Routes:
    GET /functions - Evaluable functions and verifiable relations with their parameters
"""

import logging

from flask import Blueprint, jsonify

from psik.functions import FUNCTIONS
from psik.relations import REQUIRED, RELATIONS

bp = Blueprint('functions', __name__)
logger = logging.getLogger(__name__)


def _describe(declared):
    return [
        {'name': param.name, 'kind': param.kind, 'required': param.default is REQUIRED}
        for param in declared
    ]


@bp.route('/functions', methods=['GET'])
def list_functions():
    """
    Return the names accepted by POST /eval and POST /verify.

    Example Response:
        {
            "functions": {"psik": [{"name": "k", "kind": "int", "required": true}, ...], ...},
            "relations": {"carlitz": [...], ...}
        }
    """
    return jsonify({
        'functions': {name: _describe(entry[1]) for name, entry in FUNCTIONS.items()},
        'relations': {name: _describe(entry[1]) for name, entry in RELATIONS.items()},
    })

"""
Tests for the JSON service routes and error handlers
"""

from mpmath import mp

import psik
from psik.config import config


class TestHealth:

    def test_health(self, client):
        response = client.get('/health')
        assert response.status_code == 200
        assert response.json == {
            'status': 'ok',
            'precision_bits': config.PRECISION_BITS,
            'version': psik.__version__,
        }


class TestCatalogue:

    def test_lists_functions_and_relations(self, client):
        data = client.get('/functions').json
        assert 'psik' in data['functions']
        assert 'carlitz' in data['relations']
        assert data['functions']['psik'][0] == {'name': 'k', 'kind': 'int', 'required': True}
        method = data['functions']['psik'][2]
        assert method['name'] == 'method' and method['required'] is False


class TestEval:

    def test_psi_at_two(self, client):
        response = client.post('/eval', json={
            'function': 'psik', 'params': {'k': 0, 'x': '2'}, 'digits': 20})
        assert response.status_code == 200
        data = response.json
        assert data['function'] == 'psik'
        assert abs(mp.mpf(data['value']) - (1 - mp.euler)) < mp.mpf(10) ** -18
        assert data['precision_bits'] == 117
        assert 'trunc_bound' in data and 'terms_used' in data

    def test_exact_value(self, client):
        response = client.post('/eval', json={'function': 'stirling', 'params': {'n': 4, 'm': 2}})
        assert response.json['value'] == '11'

    def test_unknown_function(self, client):
        response = client.post('/eval', json={'function': 'gamma', 'params': {}})
        assert response.status_code == 400
        assert response.json['type'] == 'domain_error'

    def test_pole(self, client):
        response = client.post('/eval', json={
            'function': 'hurwitz-deriv', 'params': {'r': 0, 'z': 1, 'x': 2}})
        assert response.status_code == 400
        assert response.json['type'] == 'pole_error'

    def test_budget_exceeded(self, client, monkeypatch):
        monkeypatch.setattr(config, 'EM_MAX_DEPTH', 1)
        response = client.post('/eval', json={
            'function': 'hurwitz-deriv', 'params': {'r': 0, 'z': 2, 'x': 1}, 'digits': 20})
        assert response.status_code == 422
        assert response.json['type'] == 'non_convergence'

    def test_missing_body(self, client):
        response = client.post('/eval', data='not json', content_type='text/plain')
        assert response.status_code == 400
        assert response.json['error'] == 'Invalid request'

    def test_missing_name(self, client):
        response = client.post('/eval', json={'params': {}})
        assert response.status_code == 400
        assert "'function'" in response.json['message']

    def test_params_must_be_object(self, client):
        response = client.post('/eval', json={'function': 'psik', 'params': [0, 2]})
        assert response.status_code == 400

    def test_bad_digits(self, client):
        response = client.post('/eval', json={
            'function': 'psik', 'params': {'k': 0, 'x': 2}, 'digits': 0})
        assert response.status_code == 400
        assert response.json['type'] == 'domain_error'


class TestVerify:

    def test_carlitz(self, client):
        response = client.post('/verify', json={
            'relation': 'carlitz',
            'params': {'k': 0, 'm': 2, 'n': 3, 'x': '7/10'},
            'digits': 20,
        })
        assert response.status_code == 200
        data = response.json
        assert data['all_pass'] is True
        report = data['reports'][0]
        assert report['name'] == 'carlitz'
        assert report['params']['x'] == '7/10'
        assert list(report)[:2] == ['name', 'params']

    def test_missing_parameter(self, client):
        response = client.post('/verify', json={'relation': 'carlitz', 'params': {'k': 0}})
        assert response.status_code == 400
        assert 'needs parameter' in response.json['message']


class TestErrorHandlers:

    def test_not_found(self, client):
        response = client.get('/nowhere')
        assert response.status_code == 404
        assert response.json['status'] == 404

    def test_method_not_allowed(self, client):
        response = client.get('/verify')
        assert response.status_code == 405
        assert response.json['error'] == 'Method not allowed'

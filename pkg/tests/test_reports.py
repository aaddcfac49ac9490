"""
Tests for RelationReport and its JSON/CSV output
"""

import csv
import io
import json
import time
from fractions import Fraction

from mpmath import mp

from psik.reports import COLUMNS, RelationReport, build_report, reports_to_csv, reports_to_json
from psik.series import SeriesValue


def _report(lhs, rhs, bound='1e-20', **kwargs):
    return build_report('carlitz', {'k': 0, 'x': Fraction(7, 10)},
                        SeriesValue(mp.mpf(lhs), mp.mpf(bound)),
                        SeriesValue(mp.mpf(rhs), mp.mpf(bound)),
                        time.perf_counter(), **kwargs)


class TestRelationReport:

    def test_pass_within_budget(self):
        report = _report('1.5', '1.5')
        assert report.passed
        assert report.abs_residual == 0

    def test_fail_beyond_budget(self):
        report = _report('1.5', '1.5000001')
        assert not report.passed

    def test_budget_adds_bounds_and_extra(self):
        report = _report('1', '1', bound='1e-10', extra_budget=mp.mpf('1e-9'))
        assert report.error_budget >= mp.mpf('1.2e-9')
        assert report.error_budget < mp.mpf('1.3e-9')

    def test_explicit_outcome_wins(self):
        report = _report('1', '2', passed=True)
        assert report.passed

    def test_tolerance_factor_scales_budget(self):
        report = RelationReport('x', {}, mp.mpf(1), mp.mpf(1) + mp.mpf('5e-20'),
                                mp.mpf('1e-20'), tolerance_factor=10)
        assert report.passed
        report = RelationReport('x', {}, mp.mpf(1), mp.mpf(1) + mp.mpf('5e-20'),
                                mp.mpf('1e-20'), tolerance_factor=1)
        assert not report.passed

    def test_relative_residual(self):
        report = _report('2', '1')
        assert report.rel_residual == mp.mpf(0.5)
        assert _report('0', '0').rel_residual == 0

    def test_plain_values_and_complex_lhs(self):
        report = build_report('x', {}, mp.mpc(1, 1e-40), 1, time.perf_counter())
        assert report.lhs == 1 and report.rhs == 1

    def test_precision_recorded(self, precision):
        with precision(20):
            assert _report('1', '1').precision_bits == mp.prec


class TestSerialization:

    def test_dict_columns(self):
        data = _report('1.5', '1.5').to_dict()
        assert list(data) == list(COLUMNS)
        assert data['params'] == {'k': 0, 'x': '7/10'}
        assert data['pass'] is True

    def test_json(self):
        parsed = json.loads(reports_to_json([_report('1.5', '1.5'), _report('1', '2')]))
        assert [row['pass'] for row in parsed] == [True, False]
        assert parsed[0]['lhs'] == '1.5'

    def test_csv(self):
        text = reports_to_csv([_report('1.5', '1.5')])
        rows = list(csv.reader(io.StringIO(text)))
        assert rows[0] == list(COLUMNS)
        assert rows[1][0] == 'carlitz'
        assert rows[1][1] == 'k=0;x=7/10'
        assert rows[1][COLUMNS.index('pass')] == 'true'

    def test_csv_header_only(self):
        assert reports_to_csv([]) == ','.join(COLUMNS) + '\n'

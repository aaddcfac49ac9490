"""
Tests for the command-line front end
"""

import json

import pytest
from mpmath import mp

import psik.cli as cli
from psik.cli import build_parser, main
from psik.config import config
from psik.reports import RelationReport


def _first_line(capsys):
    return capsys.readouterr().out.splitlines()[0]


class TestParser:

    def test_eval_flags_per_function(self):
        args = build_parser().parse_args(['eval', 'psik', '--k', '0', '--x', '2'])
        assert args.command == 'eval' and args.name == 'psik'
        assert args.param_k == '0' and args.param_x == '2'

    def test_json_and_csv_exclusive(self):
        with pytest.raises(SystemExit) as exc:
            build_parser().parse_args(['verify', 'dup1', '--x', '1', '--json', '--csv'])
        assert exc.value.code == 2

    def test_unknown_flag(self):
        with pytest.raises(SystemExit) as exc:
            main(['eval', 'psik', '--bogus', '1'])
        assert exc.value.code == 2

    def test_no_abbreviations(self):
        with pytest.raises(SystemExit):
            build_parser().parse_args(['suite', 'a.cfg', '--dig', '20'])


class TestEval:

    def test_exact_stirling(self, capsys):
        assert main(['eval', 'stirling', '--n', '2', '--m', '1']) == 0
        assert _first_line(capsys) == '-1'

    def test_h_zero(self, capsys):
        assert main(['eval', 'h', '--r', '0']) == 0
        assert _first_line(capsys) == '1'

    def test_psi_at_two(self, capsys):
        assert main(['eval', 'psik', '--k', '0', '--x', '2', '--digits', '20']) == 0
        out = capsys.readouterr().out
        value, info = out.splitlines()
        assert abs(mp.mpf(value) - (1 - mp.euler)) < mp.mpf(10) ** -18
        assert info.startswith('# trunc_bound=')

    def test_json_output(self, capsys):
        assert main(['eval', 'stieltjes', '--k', '1', '--digits', '20', '--json']) == 0
        data = json.loads(capsys.readouterr().out)
        assert data['function'] == 'stieltjes'
        assert data['params'] == {'k': '1'}
        assert abs(mp.mpf(data['value']) - mp.stieltjes(1)) < mp.mpf(10) ** -18

    def test_csv_to_file(self, tmp_path):
        out = tmp_path / 'value.csv'
        assert main(['eval', 'zeta0-deriv', '--k', '0', '--digits', '15', '--csv', '--out', str(out)]) == 0
        header, row = out.read_text().splitlines()
        assert header == 'function,value,trunc_bound,terms_used'
        assert row.startswith('zeta0-deriv,-0.5,')

    def test_domain_error_exit_code(self, capsys):
        assert main(['eval', 'psik', '--k', '0', '--x', '-1']) == 2
        assert 'error (domain_error)' in capsys.readouterr().err

    def test_pole_exit_code(self, capsys):
        assert main(['eval', 'hurwitz-deriv', '--r', '0', '--z', '1', '--x', '2']) == 2
        assert 'pole_error' in capsys.readouterr().err

    def test_budget_exit_code(self, monkeypatch, capsys):
        monkeypatch.setattr(config, 'EM_MAX_DEPTH', 1)
        assert main(['eval', 'hurwitz-deriv', '--r', '0', '--z', '2', '--x', '1', '--digits', '20']) == 3
        assert 'non_convergence' in capsys.readouterr().err


class TestVerify:

    def test_pass(self, capsys):
        code = main(['verify', 'carlitz', '--k', '0', '--m', '2', '--n', '3', '--x', '7/10',
                     '--digits', '20'])
        assert code == 0
        line = _first_line(capsys)
        assert line.startswith('carlitz k=0 m=2 n=3 x=7/10: PASS')

    def test_json_reports(self, capsys):
        code = main(['verify', 'meeting', '--preset', 'dup1', '--x', '1.3', '--digits', '20', '--json'])
        assert code == 0
        reports = json.loads(capsys.readouterr().out)
        assert reports[0]['name'] == 'meeting'
        assert reports[0]['pass'] is True

    def test_failure_exit_code(self, monkeypatch, capsys):
        def failing(name, params):
            return [RelationReport(name, params, mp.mpf(1), mp.mpf(2), mp.mpf('1e-20'))]

        monkeypatch.setattr(cli, 'run_relation', failing)
        assert main(['verify', 'dup1', '--x', '1']) == 1
        assert 'FAIL' in capsys.readouterr().out

    def test_missing_parameter(self, capsys):
        assert main(['verify', 'carlitz', '--k', '0', '--m', '2', '--n', '3']) == 2
        assert 'needs parameter x' in capsys.readouterr().err

    def test_max_terms_restored(self):
        before = config.MAX_TERMS
        main(['verify', 'dup1', '--x', '1', '--digits', '15', '--max-terms', '50'])
        assert config.MAX_TERMS == before


@pytest.mark.integration
class TestSuiteCommand:

    def test_runs_and_summarizes(self, tmp_path, capsys):
        path = tmp_path / 'small.cfg'
        path.write_text('digits = 20\nrelation = inv6 n=2 ell=0..1 x=1\n')
        assert main(['suite', str(path), '--threads', '1']) == 0
        captured = capsys.readouterr()
        assert captured.out.count('PASS') == 2
        assert '2 reports, 0 failed, 0 errors' in captured.err

    def test_empty_suite(self, tmp_path, capsys):
        path = tmp_path / 'empty.cfg'
        path.write_text('# nothing to run\ndigits = 20\n')
        assert main(['suite', str(path)]) == 0
        assert '0 reports' in capsys.readouterr().err

    def test_malformed_suite(self, tmp_path, capsys):
        path = tmp_path / 'bad.cfg'
        path.write_text('relation = carlitz k=banana\n')
        assert main(['suite', str(path)]) == 2
        assert 'config_error' in capsys.readouterr().err

    def test_row_errors_reported(self, tmp_path, capsys):
        path = tmp_path / 'rows.cfg'
        path.write_text('digits = 20\nrelation = inv6 n=2 ell=0 x=1\nrelation = guinand k=0 z=2 alpha=2\n')
        assert main(['suite', str(path), '--threads', '1', '--csv']) == 2
        captured = capsys.readouterr()
        assert captured.out.startswith('name,params,')
        assert 'error: guinand' in captured.err

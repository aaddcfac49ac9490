"""
Command-line front end.

    python -m psik eval psik --k 0 --x 2 --digits 30
    python -m psik verify carlitz --k 0 --m 2 --n 3 --x 0.7 --json
    python -m psik suite suites/acceptance.cfg --csv --out results.csv
    python -m psik serve

Exit codes: 0 success, 1 a relation failed, 2 invalid parameters or
config, 3 a truncation budget could not be met.
"""

import argparse
import json
import logging
import sys
from typing import List, Optional

from mpmath import mp

from psik import create_app, setup_logging
from psik.config import config, digits_to_bits
from psik.errors import PsikError
from psik.functions import FUNCTIONS, evaluate
from psik.relations import RELATIONS, run_relation
from psik.reports import reports_to_csv, reports_to_json
from psik.series import format_value, working_precision
from psik.suite import config_overrides, load_suite, run_suite

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1


def _common_options():
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument('--digits', type=int, default=None,
                        help='decimal digits; working precision is ceil(3.33(D+15)) bits '
                             f'(default: PSIK_PRECISION_BITS={config.PRECISION_BITS})')
    fmt = parent.add_mutually_exclusive_group()
    fmt.add_argument('--json', action='store_true', help='write JSON')
    fmt.add_argument('--csv', action='store_true', help='write CSV')
    parent.add_argument('--out', metavar='FILE', default=None, help='write output to FILE instead of stdout')
    parent.add_argument('--max-terms', type=int, default=None, dest='max_terms',
                        help=f'cap on directly summed series terms (default: {config.MAX_TERMS})')
    parent.add_argument('--tolerance-factor', type=float, default=None, dest='tolerance_factor',
                        help=f'budget multiplier for pass/fail (default: {config.TOLERANCE_FACTOR})')
    parent.add_argument('--threads', type=int, default=None,
                        help=f'worker processes for suite runs (default: {config.THREADS})')
    parent.add_argument('--log-level', default=None, dest='log_level',
                        help=f'logging level (default: {config.LOG_LEVEL})')
    return parent


def _add_named_commands(subparsers, registry, parent, help_text):
    """One sub-subcommand per registry entry, with a --flag per declared parameter."""
    for name, (_, declared) in registry.items():
        command = subparsers.add_parser(name, parents=[parent], help=f'{help_text} {name}',
                                        allow_abbrev=False)
        for param in declared:
            command.add_argument(f'--{param.name}', dest=f'param_{param.name}', default=None,
                                 metavar=param.kind.upper())


def build_parser() -> argparse.ArgumentParser:
    parent = _common_options()
    parser = argparse.ArgumentParser(
        prog='psik',
        description='Generalized digamma functions and numerical verification of their modular relations.'
    )
    commands = parser.add_subparsers(dest='command', required=True)

    eval_parser = commands.add_parser('eval', help='evaluate a function')
    functions = eval_parser.add_subparsers(dest='name', required=True, metavar='FUNCTION')
    _add_named_commands(functions, FUNCTIONS, parent, 'evaluate')

    verify_parser = commands.add_parser('verify', help='verify a relation')
    relations = verify_parser.add_subparsers(dest='name', required=True, metavar='RELATION')
    _add_named_commands(relations, RELATIONS, parent, 'verify')

    suite_parser = commands.add_parser('suite', parents=[parent], help='run a grid of verifications',
                                       allow_abbrev=False)
    suite_parser.add_argument('config_file', help='suite file (key = value lines)')

    serve_parser = commands.add_parser('serve', help='run the JSON service')
    serve_parser.add_argument('--port', type=int, default=config.FLASK_PORT)
    serve_parser.add_argument('--log-level', default=None, dest='log_level')
    return parser


def _params(args):
    return {key[len('param_'):]: value for key, value in vars(args).items()
            if key.startswith('param_') and value is not None}


def _emit(text, out):
    if out:
        with open(out, 'w', encoding='utf-8') as handle:
            handle.write(text)
        logger.info(f"wrote {out}")
    else:
        sys.stdout.write(text)


def _text_reports(reports):
    lines = []
    for report in reports:
        params = ' '.join(f"{key}={value}" for key, value in report.to_dict()['params'].items())
        lines.append(
            f"{report.name} {params}: {'PASS' if report.passed else 'FAIL'}  "
            f"residual={mp.nstr(report.abs_residual, 3)} budget={mp.nstr(report.error_budget, 3)}"
        )
    return '\n'.join(lines) + ('\n' if lines else '')


def _format_reports(reports, args):
    if args.json:
        return reports_to_json(reports) + '\n'
    if args.csv:
        return reports_to_csv(reports)
    return _text_reports(reports)


def cmd_eval(args) -> int:
    """Print a function value with its truncation bound."""
    with config_overrides(MAX_TERMS=args.max_terms), working_precision(digits=args.digits):
        result = evaluate(args.name, _params(args))
        shown = args.digits or mp.dps
        value = format_value(result.value, shown)
        bound = format_value(result.trunc_bound, 3)
        if args.json:
            text = json.dumps({
                'function': args.name,
                'params': _params(args),
                'value': value,
                'trunc_bound': bound,
                'terms_used': result.terms_used,
                'precision_bits': mp.prec,
            }, indent=2) + '\n'
        elif args.csv:
            text = f"function,value,trunc_bound,terms_used\n{args.name},{value},{bound},{result.terms_used}\n"
        else:
            text = f"{value}\n# trunc_bound={bound} terms_used={result.terms_used}\n"
    _emit(text, args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    """Run one relation; exit 1 if any report fails."""
    with config_overrides(MAX_TERMS=args.max_terms, TOLERANCE_FACTOR=args.tolerance_factor):
        with working_precision(digits=args.digits):
            reports = run_relation(args.name, _params(args))
            text = _format_reports(reports, args)
    _emit(text, args.out)
    failed = [report for report in reports if not report.passed]
    for report in failed:
        logger.warning(f"{report.name} {report.params}: residual exceeds budget")
    return EXIT_FAILED if failed else EXIT_OK


def cmd_suite(args) -> int:
    """Run a suite file; exit with the worst row outcome."""
    suite = load_suite(args.config_file)
    bits = None
    if args.digits is not None:
        bits = digits_to_bits(args.digits)
    result = run_suite(suite, threads=args.threads, precision_bits=bits,
                       tolerance_factor=args.tolerance_factor, max_terms=args.max_terms)
    with working_precision(bits=bits or suite.precision_bits):
        text = _format_reports(result.reports, args)
    _emit(text, args.out)
    for error in result.errors:
        sys.stderr.write(f"error: {error.name} {error.params}: {error.error_type}: {error.message}\n")
    sys.stderr.write(result.summary() + '\n')
    return result.exit_code


def cmd_serve(args) -> int:
    app = create_app()
    logger.info(f"Starting psik service on port {args.port}")
    app.run(host='0.0.0.0', port=args.port, debug=config.FLASK_DEBUG)
    return EXIT_OK


COMMANDS = {
    'eval': cmd_eval,
    'verify': cmd_verify,
    'suite': cmd_suite,
    'serve': cmd_serve,
}


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    setup_logging(args.log_level)
    try:
        return COMMANDS[args.command](args)
    except PsikError as e:
        logger.debug("command failed", exc_info=True)
        sys.stderr.write(f"error ({e.error_type}): {e}\n")
        return e.exit_code


if __name__ == '__main__':
    sys.exit(main())

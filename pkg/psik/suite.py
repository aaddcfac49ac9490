"""
Batch verification over parameter grids.

A suite file is line-oriented `key = value` text with `#` comments:

    digits = 30
    threads = 4
    relation = carlitz k=0..2 m=1..3 n=1..3 x=3/10,7/10,1.1
    relation = meeting preset=dup1 x=0.4,1,2.5

Global keys: digits, precision_bits, tolerance_factor, threads, max_terms.
Every `relation` line expands to the cartesian product of its value lists
in the order written; rows run on a process pool and come back in grid
order.
"""

import itertools
import logging
import re
import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from multiprocessing import Pool
from typing import Dict, List, Optional, Tuple

from psik.config import config, digits_to_bits
from psik.errors import ConfigParseError, PsikError
from psik.relations import relation_params, run_relation
from psik.reports import RelationReport
from psik.series import working_precision

logger = logging.getLogger(__name__)

GLOBAL_KEYS = ('digits', 'precision_bits', 'tolerance_factor', 'threads', 'max_terms')

INT_RE = re.compile(r'^[+-]?\d+$')
RANGE_RE = re.compile(r'^([+-]?\d+)\.\.([+-]?\d+)$')
RATIONAL_RE = re.compile(r'^[+-]?\d+/\d+$')
DECIMAL_RE = re.compile(r'^[+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?$')
WORD_RE = re.compile(r'^[A-Za-z][\w-]*$')


@dataclass
class SuiteConfig:
    """A parsed suite file."""
    precision_bits: Optional[int] = None
    tolerance_factor: Optional[float] = None
    threads: Optional[int] = None
    max_terms: Optional[int] = None
    # (relation name, params) in grid order
    rows: List[Tuple[str, Dict[str, str]]] = field(default_factory=list)


@dataclass
class RowError:
    """A grid row that raised instead of producing a report."""
    name: str
    params: Dict[str, str]
    error_type: str
    message: str
    exit_code: int


@dataclass
class SuiteResult:
    reports: List[RelationReport] = field(default_factory=list)
    errors: List[RowError] = field(default_factory=list)
    wall_time: float = 0.0

    @property
    def failed(self):
        return [report for report in self.reports if not report.passed]

    @property
    def exit_code(self):
        """Worst row error code, else 1 on a failed relation, else 0."""
        if self.errors:
            return max(error.exit_code for error in self.errors)
        return 1 if self.failed else 0

    def summary(self):
        return (f"{len(self.reports)} reports, {len(self.failed)} failed, "
                f"{len(self.errors)} errors in {self.wall_time:.1f}s")


def _expand_value(token, kind, line_no):
    """One comma-separated item of a grid value list."""
    match = RANGE_RE.match(token)
    if match:
        if kind == 'str':
            raise ConfigParseError(f"line {line_no}: range {token!r} given for a name parameter")
        low, high = int(match.group(1)), int(match.group(2))
        if high < low:
            raise ConfigParseError(f"line {line_no}: empty range {token!r}")
        return [str(value) for value in range(low, high + 1)]
    if kind == 'str':
        if not WORD_RE.match(token):
            raise ConfigParseError(f"line {line_no}: invalid name {token!r}")
        return [token]
    if INT_RE.match(token):
        return [token]
    if kind == 'real' and (RATIONAL_RE.match(token) or DECIMAL_RE.match(token)):
        if RATIONAL_RE.match(token) and int(token.split('/')[1]) == 0:
            raise ConfigParseError(f"line {line_no}: zero denominator in {token!r}")
        return [token]
    raise ConfigParseError(f"line {line_no}: cannot parse {token!r} as {kind}")


def _parse_relation(value, line_no):
    parts = value.split()
    if not parts:
        raise ConfigParseError(f"line {line_no}: relation line without a name")
    name = parts[0]
    try:
        declared = {param.name: param.kind for param in relation_params(name)}
    except PsikError as e:
        raise ConfigParseError(f"line {line_no}: {e}") from e
    names = []
    grids = []
    for item in parts[1:]:
        if '=' not in item:
            raise ConfigParseError(f"line {line_no}: expected param=values, got {item!r}")
        key, values = item.split('=', 1)
        if key not in declared:
            raise ConfigParseError(f"line {line_no}: {name} has no parameter {key!r}")
        if key in names:
            raise ConfigParseError(f"line {line_no}: parameter {key!r} given twice")
        expanded = []
        for token in values.split(','):
            expanded.extend(_expand_value(token.strip(), declared[key], line_no))
        names.append(key)
        grids.append(expanded)
    return [(name, dict(zip(names, combo))) for combo in itertools.product(*grids)]


def _parse_number(key, value, line_no, kind):
    try:
        return kind(value)
    except ValueError as e:
        raise ConfigParseError(f"line {line_no}: invalid {key} {value!r}") from e


def parse_suite(text: str) -> SuiteConfig:
    """
    Parse suite text.

    Raises:
        ConfigParseError: on a line without '=', an unknown key or relation,
            or an unparsable value
    """
    suite = SuiteConfig()
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split('#', 1)[0].strip()
        if not line:
            continue
        if '=' not in line:
            raise ConfigParseError(f"line {line_no}: expected key = value, got {raw.strip()!r}")
        key, value = (part.strip() for part in line.split('=', 1))
        if key == 'relation':
            suite.rows.extend(_parse_relation(value, line_no))
        elif key == 'digits':
            suite.precision_bits = digits_to_bits(_parse_number(key, value, line_no, int))
        elif key == 'precision_bits':
            suite.precision_bits = _parse_number(key, value, line_no, int)
        elif key == 'tolerance_factor':
            suite.tolerance_factor = _parse_number(key, value, line_no, float)
        elif key == 'threads':
            suite.threads = _parse_number(key, value, line_no, int)
        elif key == 'max_terms':
            suite.max_terms = _parse_number(key, value, line_no, int)
        else:
            raise ConfigParseError(f"line {line_no}: unknown key {key!r}; expected relation or one of {GLOBAL_KEYS}")
    for key in ('precision_bits', 'threads', 'max_terms'):
        value = getattr(suite, key)
        if value is not None and value < 1:
            raise ConfigParseError(f"{key} must be positive, got {value}")
    logger.debug(f"parsed suite: {len(suite.rows)} rows")
    return suite


def load_suite(path) -> SuiteConfig:
    try:
        with open(path, 'r', encoding='utf-8') as handle:
            text = handle.read()
    except OSError as e:
        raise ConfigParseError(f"cannot read suite file {path}: {e}") from e
    return parse_suite(text)


@contextmanager
def config_overrides(**values):
    """Temporarily set config attributes; None values are left alone."""
    saved = {}
    for key, value in values.items():
        if value is not None:
            saved[key] = getattr(config, key)
            setattr(config, key, value)
    try:
        yield
    finally:
        for key, value in saved.items():
            setattr(config, key, value)


def _init_worker(settings):
    for key, value in settings.items():
        if value is not None:
            setattr(config, key, value)


def _run_row(job):
    """Run one grid row in the current process; never raises PsikError."""
    name, params, bits = job
    with working_precision(bits=bits):
        try:
            return run_relation(name, params)
        except PsikError as e:
            logger.warning(f"{name} {params}: {type(e).__name__}: {e}")
            return RowError(name, params, e.error_type, str(e), e.exit_code)


def run_suite(suite: SuiteConfig, threads=None, precision_bits=None,
              tolerance_factor=None, max_terms=None) -> SuiteResult:
    """
    Run every row of a suite.

    Keyword arguments override the file's global settings, which override
    the process configuration. Output order is grid order.
    """
    settings = {
        'TOLERANCE_FACTOR': tolerance_factor or suite.tolerance_factor,
        'MAX_TERMS': max_terms or suite.max_terms,
    }
    bits = precision_bits or suite.precision_bits or config.PRECISION_BITS
    workers = threads or suite.threads or config.THREADS
    jobs = [(name, params, bits) for name, params in suite.rows]
    started = time.perf_counter()
    logger.info(f"running {len(jobs)} suite rows at {bits} bits on {workers} worker(s)")

    if workers > 1 and len(jobs) > 1:
        with Pool(processes=min(workers, len(jobs)), initializer=_init_worker,
                  initargs=(settings,)) as pool:
            outcomes = pool.map(_run_row, jobs, chunksize=1)
    else:
        with config_overrides(**settings):
            outcomes = [_run_row(job) for job in jobs]

    result = SuiteResult()
    for outcome in outcomes:
        if isinstance(outcome, RowError):
            result.errors.append(outcome)
        else:
            result.reports.extend(outcome)
    result.wall_time = time.perf_counter() - started
    logger.info(f"suite finished: {result.summary()}")
    return result

"""
RelationReport: the record every verification produces, with its JSON and
CSV serializations.
"""

from __future__ import annotations

import csv
import io
import json
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, Iterable, List, Optional

import mpmath
from mpmath import mp

from psik.config import config
from psik.series import SeriesValue, epsilon, format_value, to_mpf

# Stable column order shared by JSON and CSV output
COLUMNS = (
    'name', 'params', 'lhs', 'rhs', 'abs_residual', 'rel_residual',
    'error_budget', 'pass', 'precision_bits', 'wall_time_s',
)

REPORT_DIGITS = 30


def _plain(value):
    """Params as JSON-friendly scalars (rationals kept as 'm/n')."""
    if isinstance(value, (bool, int, str)):
        return value
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, (mpmath.mpf, mpmath.mpc, float)):
        return format_value(value, REPORT_DIGITS)
    return str(value)


@dataclass
class RelationReport:
    """
    Both sides of one identity at one parameter point.

    passed defaults to abs_residual <= tolerance_factor * error_budget;
    checks with their own acceptance rule (asymptotic comparisons, the
    summatory scaling test) pass it explicitly.
    """
    name: str
    params: Dict[str, Any]
    lhs: Any
    rhs: Any
    error_budget: Any
    wall_time: float = 0.0
    precision_bits: int = field(default_factory=lambda: mp.prec)
    tolerance_factor: float = field(default_factory=lambda: config.TOLERANCE_FACTOR)
    passed: Optional[bool] = None

    def __post_init__(self):
        if self.passed is None:
            self.passed = bool(self.abs_residual <= self.tolerance_factor * self.error_budget)

    @property
    def abs_residual(self):
        return abs(self.lhs - self.rhs)

    @property
    def rel_residual(self):
        scale = max(abs(self.lhs), abs(self.rhs))
        if scale == 0:
            return mp.mpf(0)
        return self.abs_residual / scale

    def to_dict(self, digits: int = REPORT_DIGITS) -> Dict[str, Any]:
        return {
            'name': self.name,
            'params': {key: _plain(value) for key, value in self.params.items()},
            'lhs': format_value(self.lhs, digits),
            'rhs': format_value(self.rhs, digits),
            'abs_residual': format_value(self.abs_residual, 5),
            'rel_residual': format_value(self.rel_residual, 5),
            'error_budget': format_value(self.error_budget, 5),
            'pass': self.passed,
            'precision_bits': self.precision_bits,
            'wall_time_s': round(self.wall_time, 6),
        }

    @staticmethod
    def csv_header() -> List[str]:
        return list(COLUMNS)

    def to_csv_row(self, digits: int = REPORT_DIGITS) -> List[str]:
        data = self.to_dict(digits)
        params = ';'.join(f"{key}={value}" for key, value in data['params'].items())
        row = []
        for column in COLUMNS:
            value = params if column == 'params' else data[column]
            if isinstance(value, bool):
                value = 'true' if value else 'false'
            row.append(str(value))
        return row


def build_report(name, params, lhs, rhs, started, extra_budget=0, passed=None) -> RelationReport:
    """
    Assemble a report from two SeriesValues (or plain values).

    The budget is the sum of both truncation bounds plus extra_budget and a
    rounding floor of a few units in the last place of the larger side.
    """
    lhs_bound = lhs.trunc_bound if isinstance(lhs, SeriesValue) else 0
    rhs_bound = rhs.trunc_bound if isinstance(rhs, SeriesValue) else 0
    lhs_value = lhs.value if isinstance(lhs, SeriesValue) else lhs
    rhs_value = rhs.value if isinstance(rhs, SeriesValue) else rhs
    lhs_value = _real_part(lhs_value)
    rhs_value = _real_part(rhs_value)
    floor = 8 * epsilon() * max(abs(lhs_value), abs(rhs_value))
    budget = mp.mpf(lhs_bound) + rhs_bound + extra_budget + floor
    return RelationReport(
        name=name,
        params=dict(params),
        lhs=lhs_value,
        rhs=rhs_value,
        error_budget=budget,
        wall_time=time.perf_counter() - started,
        passed=passed,
    )


def _real_part(value):
    if isinstance(value, mpmath.mpc):
        return value.real
    if isinstance(value, (int, Fraction)):
        return to_mpf(value)
    return value


def reports_to_json(reports: Iterable[RelationReport], digits: int = REPORT_DIGITS) -> str:
    return json.dumps([report.to_dict(digits) for report in reports], indent=2)


def reports_to_csv(reports: Iterable[RelationReport], digits: int = REPORT_DIGITS) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator='\n')
    writer.writerow(RelationReport.csv_header())
    for report in reports:
        writer.writerow(report.to_csv_row(digits))
    return buffer.getvalue()

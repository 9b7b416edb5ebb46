#!/usr/bin/env python3
"""
Report Writer for qeuler
Renders values, tables and verification reports as plain text, JSON Lines or CSV.
"""

import csv
import json
import logging
from typing import Optional, TextIO

from qeuler.algebra.Divisibility import VerificationReport
from qeuler.algebra.PolyArith import QPolynomial, eval_int, render

logger = logging.getLogger(__name__)

TABLE_COLUMNS = ('n', 'k', 'coeffs', 'count')
REPORT_COLUMNS = ('claim', 'params', 'verdict', 'witness', 'elapsed_ms', 'exploratory', 'note')


def coefficient_strings(poly: QPolynomial):
    return [str(c) for c in poly.coeffs]


def format_params(report: VerificationReport, sep: str = ' ') -> str:
    return sep.join(f"{name}={value}" for name, value in report.params)


class ReportWriter:
    """Writes one output format to one text stream."""

    def __init__(self, stream: TextIO, output_format: str = 'plain'):
        self.stream = stream
        self.output_format = output_format
        self._csv = csv.writer(stream, lineterminator='\n') if output_format == 'csv' else None
        self._header_written = False

    def _json(self, record: dict):
        self.stream.write(json.dumps(record, sort_keys=True) + '\n')

    def write_value(self, n: int, k: int, poly: QPolynomial, agreement: Optional[bool] = None):
        """Result of the compute command."""
        count = eval_int(poly, 1)
        if self.output_format == 'json':
            record = {'n': n, 'k': k, 'polynomial': render(poly),
                      'coeffs': coefficient_strings(poly), 'count': str(count)}
            if agreement is not None:
                record['oracle_agreement'] = agreement
            self._json(record)
            return
        self.stream.write(f"E[{n}|{k}](q) = {render(poly)}\n")
        self.stream.write(f"count = {count}\n")
        if agreement is not None:
            self.stream.write(f"oracle agreement: {'yes' if agreement else 'no'}\n")

    def write_table_row(self, n: int, k: int, poly: QPolynomial):
        count = eval_int(poly, 1)
        if self.output_format == 'json':
            self._json({'n': n, 'k': k, 'polynomial': render(poly),
                        'coeffs': coefficient_strings(poly), 'count': str(count)})
        elif self.output_format == 'csv':
            if not self._header_written:
                self._csv.writerow(TABLE_COLUMNS)
                self._header_written = True
            self._csv.writerow([n, k, ';'.join(coefficient_strings(poly)), count])
        else:
            self.stream.write(f"{n:>3}  {count:>12}  E[{n}|{k}](q) = {render(poly)}\n")

    def write_report(self, report: VerificationReport):
        if self.output_format == 'json':
            self._json(report.to_dict())
        elif self.output_format == 'csv':
            if not self._header_written:
                self._csv.writerow(REPORT_COLUMNS)
                self._header_written = True
            record = report.to_dict()
            record['params'] = format_params(report, ';')
            self._csv.writerow([record[column] for column in REPORT_COLUMNS])
        else:
            line = f"{report.claim.value:<26} {format_params(report):<22} {report.verdict.value:<12}"
            witness = report.witness_text()
            if witness:
                line += f" {witness}"
            if report.note:
                line += f"  [{report.note}]"
            self.stream.write(line.rstrip() + '\n')

#!/usr/bin/env python3
"""
Sweep Runner Test Suite
Config parsing, grid expansion, sharded execution and the exit-status contract.
"""

import io
import json
import unittest
from unittest.mock import patch

from qeuler.algebra import SweepRunner
from qeuler.algebra.CacheManager import CacheStore
from qeuler.algebra.Divisibility import Claim, Verdict, VerificationReport
from qeuler.algebra.ErrorHandler import EXIT_OK, EXIT_VERIFICATION_FAILED, ConfigurationError
from qeuler.algebra.PolyArith import QPolynomial
from qeuler.algebra.ReportWriter import ReportWriter
from qeuler.algebra.SweepRunner import (
    SweepConfig,
    SweepSummary,
    claim_grid,
    iter_reports,
    parse_claims,
    parse_int_list,
    run_sweep,
)


def failing_verifier(n, k, i, force=False, memo=None):
    return VerificationReport(Claim.COR_KPOWER_AT_1, (('n', n), ('k', k), ('i', i)),
                              Verdict.FAILS, 1, note='forced')


class TestParsing(unittest.TestCase):

    def test_int_list(self):
        self.assertEqual(parse_int_list(['2,3', '3', ' 5 ']), [2, 3, 5])
        with self.assertRaises(ConfigurationError):
            parse_int_list(['2,x'])

    def test_claims(self):
        self.assertEqual(parse_claims(None), tuple(Claim))
        self.assertEqual(parse_claims(['thm_bracket_power,COR_KPOWER_AT_1']),
                         (Claim.THM_BRACKET_POWER, Claim.COR_KPOWER_AT_1))
        with self.assertRaises(ConfigurationError):
            parse_claims(['NOT_A_CLAIM'])

    def test_config_validation(self):
        for kwargs in ({'k_set': (), 'max_N': 8},
                       {'k_set': (1,), 'max_N': 8},
                       {'k_set': (3,), 'max_N': 1},
                       {'k_set': (3,), 'max_N': 8, 'claims': ()},
                       {'k_set': (3,), 'max_N': 8, 'output_format': 'xml'},
                       {'k_set': (3,), 'max_N': 8, 'max_j': -1},
                       {'k_set': (3,), 'max_N': 8, 'workers': 0}):
            with self.subTest(**{key: str(value) for key, value in kwargs.items()}):
                with self.assertRaises(ConfigurationError):
                    SweepConfig(**kwargs)


class TestClaimGrid(unittest.TestCase):

    def test_tangent_only_for_k2(self):
        self.assertEqual(list(claim_grid(Claim.TANGENT_CLASSICAL, 3, 11)), [])
        self.assertEqual([p['n'] for p in claim_grid(Claim.TANGENT_CLASSICAL, 2, 11)], [1, 2, 3, 4, 5])

    def test_theorem_bound(self):
        """nk + i never exceeds max-N."""
        grid = list(claim_grid(Claim.THM_BRACKET_POWER, 3, 8))
        self.assertTrue(all(p['n'] * 3 + p['i'] <= 8 for p in grid))
        self.assertIn({'n': 2, 'k': 3, 'i': 2}, grid)
        self.assertEqual(len(grid), 6)

    def test_gessel_viennot_max_j(self):
        grid = list(claim_grid(Claim.GESSEL_VIENNOT, 3, 12, max_j=2))
        self.assertTrue(all(p['j'] <= 2 for p in grid))
        self.assertEqual(len(grid), 4 * 3)

    def test_lemma_grid(self):
        grid = list(claim_grid(Claim.LEMMA_BRACKET_RATIO, 2, 6))
        self.assertTrue(all(1 <= p['m'] <= p['n'] for p in grid))
        self.assertTrue(all(p['i'] == 0 for p in grid))


class TestSweeps(unittest.TestCase):

    def setUp(self):
        self.memo = CacheStore()

    def test_theorem_sweep_holds(self):
        config = SweepConfig(k_set=(3,), max_N=8, claims=(Claim.THM_BRACKET_POWER,))
        summary = run_sweep(config, self.memo)
        self.assertEqual(summary.counts[Verdict.HOLDS], 6)
        self.assertEqual(summary.exit_status(), EXIT_OK)

    def test_composite_sweep_is_inapplicable(self):
        reports = list(iter_reports(SweepConfig(k_set=(4,), max_N=8), self.memo))
        self.assertTrue(reports)
        self.assertTrue(all(r.verdict is Verdict.INAPPLICABLE for r in reports))

    def test_workers_keep_order(self):
        base = dict(k_set=(5, 2, 3), max_N=10, claims=(Claim.THM_BRACKET_PRODUCT, Claim.GESSEL_VIENNOT))
        serial = [(r.claim, r.params, r.verdict, r.witness)
                  for r in iter_reports(SweepConfig(**base), CacheStore())]
        threaded = [(r.claim, r.params, r.verdict, r.witness)
                    for r in iter_reports(SweepConfig(workers=3, **base), CacheStore())]
        self.assertEqual(serial, threaded)
        self.assertEqual([p for _, p, _, _ in serial][0][1], ('k', 5))

    def test_explorer_findings_do_not_fail(self):
        config = SweepConfig(k_set=(2,), max_N=4, claims=(Claim.QUOTIENT_COPRIME_EXPLORE,))
        summary = run_sweep(config, self.memo)
        self.assertTrue(summary.explorer_failures())
        self.assertEqual(summary.exit_status(), EXIT_OK)
        self.assertEqual(summary.exit_status(strict_explore=True), EXIT_VERIFICATION_FAILED)

    def test_secant_type_values_are_findings(self):
        """Gessel-Viennot at k | j < nk runs, and its failures do not fail the sweep."""
        config = SweepConfig(k_set=(2,), max_N=8, claims=(Claim.GESSEL_VIENNOT,))
        summary = run_sweep(config, self.memo)
        self.assertEqual(summary.counts[Verdict.INAPPLICABLE], 0)
        self.assertEqual(summary.failures, [])
        secant = [r for r in summary.findings if r.param_dict['j'] % 2 == 0]
        self.assertTrue(any(r.verdict is Verdict.FAILS for r in secant))
        self.assertIn((('n', 4), ('k', 2), ('j', 6)), [r.params for r in secant if r.holds])
        self.assertEqual(summary.exit_status(), EXIT_OK)
        self.assertEqual(summary.exit_status(strict_explore=True), EXIT_VERIFICATION_FAILED)

    def test_failure_sets_exit_status(self):
        config = SweepConfig(k_set=(3,), max_N=5, claims=(Claim.COR_KPOWER_AT_1,))
        with patch.dict(SweepRunner.VERIFIERS, {Claim.COR_KPOWER_AT_1: failing_verifier}):
            summary = run_sweep(config, self.memo)
        self.assertTrue(summary.failures)
        self.assertEqual(summary.exit_status(), EXIT_VERIFICATION_FAILED)

    def test_summary_line(self):
        summary = SweepSummary()
        summary.add(VerificationReport(Claim.COR_KPOWER_AT_1, (('n', 0),), Verdict.HOLDS, 1))
        summary.add(VerificationReport(Claim.COR_KPOWER_AT_1, (('n', 1),), Verdict.INAPPLICABLE))
        self.assertEqual(summary.line(),
                         '2 checks, 1 holds, 0 fails, 1 inapplicable, 0 exploration findings')

    def test_reports_stream_to_callback(self):
        seen = []
        config = SweepConfig(k_set=(2,), max_N=11, claims=(Claim.TANGENT_CLASSICAL,))
        run_sweep(config, self.memo, on_report=seen.append)
        self.assertEqual([r.witness for r in seen], [1, 3, 17, 155, 2073])


class TestReportWriter(unittest.TestCase):

    def test_table_csv(self):
        stream = io.StringIO()
        writer = ReportWriter(stream, 'csv')
        writer.write_table_row(0, 3, QPolynomial([1]))
        writer.write_table_row(5, 3, QPolynomial([0, 1, 2, 2, 2, 1, 1]))
        self.assertEqual(stream.getvalue(), 'n,k,coeffs,count\n0,3,1,1\n5,3,0;1;2;2;2;1;1,9\n')

    def test_report_json(self):
        stream = io.StringIO()
        report = VerificationReport(Claim.GESSEL_VIENNOT, (('n', 2), ('k', 2), ('j', 3)), Verdict.HOLDS, 2)
        ReportWriter(stream, 'json').write_report(report)
        record = json.loads(stream.getvalue())
        self.assertEqual(record['params'], {'n': 2, 'k': 2, 'j': 3})
        self.assertEqual(record['witness'], '2')
        self.assertIn('elapsed_ms', record)

    def test_report_plain(self):
        stream = io.StringIO()
        report = VerificationReport(Claim.TANGENT_CLASSICAL, (('n', 3),), Verdict.HOLDS, 17)
        ReportWriter(stream, 'plain').write_report(report)
        self.assertEqual(stream.getvalue().split(), ['TANGENT_CLASSICAL', 'n=3', 'holds', '17'])


if __name__ == '__main__':
    unittest.main()

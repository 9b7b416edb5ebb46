#!/usr/bin/env python3
"""
Command Line Test Suite
compute, table, verify and cache through click's CliRunner.
"""

import csv
import io
import json
import os
import shutil
import subprocess
import sys
import tempfile
import unittest

import pytest
from click.testing import CliRunner

from qeuler.algebra.CacheManager import CACHE_FORMAT_NAME
from qeuler.algebra.ErrorHandler import EXIT_BUDGET, EXIT_IO, EXIT_USAGE, EXIT_VERIFICATION_FAILED
from qeuler.cli import cli

E53_LINE = 'E[5|3](q) = q + 2*q^2 + 2*q^3 + 2*q^4 + q^5 + q^6'


@pytest.mark.integration
class CliTestCase(unittest.TestCase):
    """Runs commands against a private cache file."""

    def setUp(self):
        self.tmpdir = tempfile.mkdtemp()
        self.cache_path = os.path.join(self.tmpdir, 'cache.json')
        self.runner = CliRunner()
        self.env = {
            'QEULER_LOG_LEVEL': 'WARNING',
            'QEULER_LOG_FILE': '',
            'QEULER_PERMUTATION_MAX_N': '10',
            'QEULER_SWEEP_WORKERS': '1',
        }

    def tearDown(self):
        shutil.rmtree(self.tmpdir)

    def invoke(self, *args, cache_path=None):
        return self.runner.invoke(cli, ['--cache-path', cache_path or self.cache_path, *args],
                                  env=self.env)

    def json_lines(self, result):
        return [json.loads(line) for line in result.stdout.splitlines() if line.strip()]


class TestCompute(CliTestCase):

    def test_e53_value(self):
        result = self.invoke('compute', '5', '3')
        self.assertEqual(result.exit_code, 0, result.stderr)
        self.assertEqual(result.stdout, f'{E53_LINE}\ncount = 9\n')

    def test_boundary(self):
        result = self.invoke('compute', '0', '2')
        self.assertEqual(result.stdout, 'E[0|2](q) = 1\ncount = 1\n')

    def test_check(self):
        result = self.invoke('compute', '4', '3', '--check')
        self.assertEqual(result.exit_code, 0)
        self.assertIn('E[4|3](q) = q + q^2 + q^3', result.stdout)
        self.assertIn('oracle agreement: yes', result.stdout)

    def test_oracle(self):
        result = self.invoke('compute', '5', '3', '--oracle')
        self.assertIn(E53_LINE, result.stdout)

    def test_json(self):
        result = self.invoke('compute', '5', '3', '--format', 'json')
        record = json.loads(result.stdout)
        self.assertEqual(record['count'], '9')
        self.assertEqual(record['coeffs'], ['0', '1', '2', '2', '2', '1', '1'])
        self.assertEqual(record['polynomial'], E53_LINE.split(' = ')[1])

    def test_period_one_is_usage_error(self):
        result = self.invoke('compute', '5', '1')
        self.assertEqual(result.exit_code, EXIT_USAGE)
        self.assertTrue(result.stderr.startswith('error: '))
        self.assertEqual(result.stdout, '')

    def test_negative_n(self):
        self.assertEqual(self.invoke('compute', '--', '-1', '3').exit_code, EXIT_USAGE)

    def test_oracle_budget(self):
        result = self.invoke('compute', '11', '2', '--oracle')
        self.assertEqual(result.exit_code, EXIT_BUDGET)
        self.assertIn('budget', result.stderr)

    def test_invalid_environment(self):
        self.env['QEULER_SWEEP_WORKERS'] = 'many'
        self.assertEqual(self.invoke('compute', '5', '3').exit_code, EXIT_USAGE)

    def test_verbose_logs_to_stderr(self):
        result = self.runner.invoke(cli, ['--cache-path', self.cache_path, '-v', 'compute', '5', '3'],
                                    env=self.env)
        self.assertIn('DEBUG', result.stderr)
        self.assertEqual(result.stdout, f'{E53_LINE}\ncount = 9\n')

    def test_deterministic(self):
        self.assertEqual(self.invoke('compute', '9', '2').stdout, self.invoke('compute', '9', '2').stdout)


class TestTable(CliTestCase):

    def test_csv_row(self):
        result = self.invoke('table', '3', '5', '--format=csv')
        lines = result.stdout.splitlines()
        self.assertEqual(lines[0], 'n,k,coeffs,count')
        self.assertEqual(lines[-1], '5,3,0;1;2;2;2;1;1,9')
        self.assertEqual(len(lines), 7)

    def test_two_rows(self):
        lines = self.invoke('table', '2', '1').stdout.splitlines()
        self.assertEqual(len(lines), 2)
        self.assertTrue(lines[0].endswith('E[0|2](q) = 1'))
        self.assertTrue(lines[1].endswith('E[1|2](q) = 1'))

    def test_tangent_count(self):
        lines = self.invoke('table', '2', '7', '--format', 'csv').stdout.splitlines()
        self.assertTrue(lines[-1].startswith('7,2,'))
        self.assertTrue(lines[-1].endswith(',272'))

    def test_output_file(self):
        target = os.path.join(self.tmpdir, 'table.jsonl')
        result = self.invoke('table', '3', '4', '--format', 'json', '--output', target)
        self.assertEqual(result.exit_code, 0)
        self.assertEqual(result.stdout, '')
        with open(target) as handle:
            rows = [json.loads(line) for line in handle]
        self.assertEqual([row['count'] for row in rows], ['1', '1', '1', '1', '3'])

    def test_unwritable_output(self):
        target = os.path.join(self.tmpdir, 'missing', 'table.csv')
        result = self.invoke('table', '3', '4', '--output', target)
        self.assertEqual(result.exit_code, EXIT_IO)
        self.assertIn('cannot write', result.stderr)
        self.assertNotIn('QEULER_CACHE_PATH', result.stderr)


class TestVerify(CliTestCase):

    def test_theorem_sweep(self):
        result = self.invoke('verify', '--k=3', '--max-N=8', '--claims=THM_BRACKET_POWER')
        self.assertEqual(result.exit_code, 0)
        lines = result.stdout.splitlines()
        self.assertEqual(len(lines), 6)
        self.assertTrue(all('holds' in line.split() for line in lines))
        self.assertIn('6 checks', result.stderr)

    def test_composite_k(self):
        result = self.invoke('verify', '--k=4', '--max-N=8', '--format', 'json')
        self.assertEqual(result.exit_code, 0)
        records = self.json_lines(result)
        self.assertTrue(records)
        self.assertEqual({r['verdict'] for r in records}, {'inapplicable'})

    def test_genocchi_witnesses(self):
        result = self.invoke('verify', '--k=2', '--max-N=11', '--claims=TANGENT_CLASSICAL',
                             '--format', 'json')
        self.assertEqual(result.exit_code, 0)
        self.assertEqual([r['witness'] for r in self.json_lines(result)], ['1', '3', '17', '155', '2073'])

    def test_explorer_exit_status(self):
        args = ('verify', '--k', '2', '--max-N', '4', '--claims', 'QUOTIENT_COPRIME_EXPLORE')
        self.assertEqual(self.invoke(*args).exit_code, 0)
        strict = self.invoke(*args, '--strict-explore')
        self.assertEqual(strict.exit_code, EXIT_VERIFICATION_FAILED)
        self.assertIn('exploration findings', strict.stderr)

    def test_full_default_sweep(self):
        result = self.invoke('verify', '--k', '2,3,5', '--max-N', '12', '--format', 'csv')
        self.assertEqual(result.exit_code, 0, result.stderr)
        rows = list(csv.DictReader(io.StringIO(result.stdout)))
        self.assertEqual(result.stdout.splitlines()[0], 'claim,params,verdict,witness,elapsed_ms,exploratory,note')
        self.assertTrue(rows)
        failures = [r for r in rows if r['verdict'] == 'fails' and r['exploratory'] == 'False']
        self.assertEqual(failures, [])

    def test_workers_are_deterministic(self):
        args = ('verify', '--k', '2,3,5', '--max-N', '10')
        self.assertEqual(self.invoke(*args).stdout, self.invoke(*args, '--workers', '3').stdout)

    def test_force(self):
        result = self.invoke('verify', '--k', '4', '--max-N', '6', '--claims', 'COR_KPOWER_AT_1',
                             '--force', '--format', 'json')
        records = self.json_lines(result)
        self.assertTrue(all(r['exploratory'] for r in records))
        self.assertNotIn('inapplicable', {r['verdict'] for r in records})

    def test_usage_errors(self):
        self.assertEqual(self.invoke('verify', '--k', '3', '--claims', 'NOPE').exit_code, EXIT_USAGE)
        self.assertEqual(self.invoke('verify', '--k', '3', '--max-N', '1').exit_code, EXIT_USAGE)
        self.assertEqual(self.invoke('verify', '--k', 'x').exit_code, EXIT_USAGE)
        self.assertEqual(self.invoke('verify').exit_code, EXIT_USAGE)

    def test_save_cache(self):
        self.invoke('verify', '--k', '3', '--max-N', '8', '--claims', 'THM_BRACKET_POWER')
        self.assertFalse(os.path.exists(self.cache_path))
        self.invoke('verify', '--k', '3', '--max-N', '8', '--claims', 'THM_BRACKET_POWER', '--save-cache')
        self.assertTrue(os.path.exists(self.cache_path))


class TestCache(CliTestCase):

    def test_warm_then_stats(self):
        warm = self.invoke('cache', 'warm', '--k=3', '--max-n=20')
        self.assertEqual(warm.exit_code, 0)
        self.assertIn('k=3: 21 entries', warm.stdout)
        stats = self.invoke('cache', 'stats')
        self.assertIn('entries: 21', stats.stdout)
        self.assertIn('k=3: 21 entries', stats.stdout)

    def test_export_import_round_trip(self):
        cold = self.invoke('compute', '5', '3').stdout
        self.invoke('cache', 'warm', '--k=3', '--max-n=20')
        exported = os.path.join(self.tmpdir, 'export.json')
        self.assertEqual(self.invoke('cache', 'export', exported).exit_code, 0)

        fresh = os.path.join(self.tmpdir, 'fresh.json')
        imported = self.invoke('cache', 'import', exported, cache_path=fresh)
        self.assertEqual(imported.exit_code, 0)
        self.assertIn('imported 21 new entries', imported.stdout)
        self.assertEqual(self.invoke('compute', '5', '3', cache_path=fresh).stdout, cold)

        with open(exported, 'rb') as a, open(fresh, 'rb') as b:
            self.assertEqual(a.read(), b.read())

    def test_version_mismatch(self):
        bad = os.path.join(self.tmpdir, 'bad.json')
        with open(bad, 'w') as handle:
            json.dump({'format': CACHE_FORMAT_NAME, 'version': 999,
                       'entries': [{'n': 0, 'k': 3, 'coeffs': ['1']}]}, handle)
        result = self.invoke('cache', 'import', bad)
        self.assertEqual(result.exit_code, EXIT_IO)
        self.assertIn('999', result.stderr)
        self.assertFalse(os.path.exists(self.cache_path))

    def test_corrupt_cache_file(self):
        with open(self.cache_path, 'w') as handle:
            handle.write('[]')
        self.assertEqual(self.invoke('compute', '5', '3').exit_code, EXIT_IO)

    def test_clear(self):
        self.invoke('cache', 'warm', '--k', '2,3', '--max-n', '5')
        self.assertIn('entries: 12', self.invoke('cache', 'stats').stdout)
        self.assertEqual(self.invoke('cache', 'clear').exit_code, 0)
        self.assertIn('entries: 0', self.invoke('cache', 'stats').stdout)

    def test_environment_cache_path(self):
        self.env['QEULER_CACHE_PATH'] = self.cache_path
        result = self.runner.invoke(cli, ['cache', 'warm', '--k', '2', '--max-n', '3'], env=self.env)
        self.assertEqual(result.exit_code, 0)
        self.assertTrue(os.path.exists(self.cache_path))


@pytest.mark.integration
class TestEntryPoint(unittest.TestCase):
    """python -m qeuler in a child process, so module import sees the environment."""

    ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))

    def setUp(self):
        self.tmpdir = tempfile.mkdtemp()
        self.env = dict(os.environ)
        self.env.update({
            'PYTHONPATH': self.ROOT,
            'QEULER_CACHE_PATH': os.path.join(self.tmpdir, 'cache.json'),
            'QEULER_LOG_FILE': '',
        })

    def tearDown(self):
        shutil.rmtree(self.tmpdir, ignore_errors=True)

    def run_python(self, *args, **env):
        return subprocess.run([sys.executable, *args], env={**self.env, **env}, cwd=self.tmpdir,
                              capture_output=True, text=True, timeout=120)

    def test_compute(self):
        result = self.run_python('-m', 'qeuler', 'compute', '5', '3', QEULER_LOG_LEVEL='WARNING')
        self.assertEqual(result.returncode, 0, result.stderr)
        self.assertEqual(result.stdout, f'{E53_LINE}\ncount = 9\n')

    def test_malformed_variable_is_usage_error(self):
        for key, value in (('QEULER_WORD_BUDGET', 'abc'), ('QEULER_LOG_LEVEL', 'LOUD'),
                           ('QEULER_PERMUTATION_MAX_N', '99')):
            with self.subTest(key=key):
                result = self.run_python('-m', 'qeuler', 'compute', '5', '3', **{key: value})
                self.assertEqual(result.returncode, EXIT_USAGE, result.stderr)
                self.assertIn('error:', result.stderr)
                self.assertIn(key, result.stderr)
                self.assertNotIn('Traceback', result.stderr)

    def test_import_tolerates_malformed_variable(self):
        result = self.run_python('-c', 'import qeuler.cli; from qeuler.resources.qeuler_settings import settings; '
                                 'print(settings.WORD_BUDGET)', QEULER_WORD_BUDGET='abc')
        self.assertEqual(result.returncode, 0, result.stderr)
        self.assertEqual(result.stdout.strip(), '10000000')


if __name__ == '__main__':
    unittest.main()

#!/usr/bin/env python3
"""
qeuler command line
compute, table, verify and cache subcommands over the generalized q-Euler numbers.
"""

import functools
import logging
from typing import Optional

import click

from qeuler.algebra.CacheManager import CacheStore, set_cache_store
from qeuler.algebra.ErrorHandler import (
    EXIT_OK,
    EXIT_VERIFICATION_FAILED,
    DomainError,
    OutputIOError,
    error_handler,
)
from qeuler.algebra.EulerCore import euler_oracle, euler_q, euler_table
from qeuler.algebra.ReportWriter import ReportWriter
from qeuler.algebra.SweepRunner import (
    OUTPUT_FORMATS,
    SweepConfig,
    parse_claims,
    parse_int_list,
    run_sweep,
)
from qeuler.resources import setup_logging
from qeuler.resources.qeuler_settings import reload_settings, settings

logger = logging.getLogger(__name__)


class CliContext:
    """Per-invocation state shared by the subcommands."""

    def __init__(self, cache_path: str, verbose: bool = False):
        self.cache_path = cache_path
        self.verbose = verbose
        self._store: Optional[CacheStore] = None

    @property
    def store(self) -> CacheStore:
        """The CacheStore at --cache-path, loaded on first use."""
        if self._store is None:
            self._store = set_cache_store(CacheStore.load_or_empty(self.cache_path))
        return self._store

    def save(self):
        self.store.save(self.cache_path)


def handle_errors(command):
    """Print qeuler errors with hints on stderr and exit with the mapped status."""
    @functools.wraps(command)
    def wrapper(*args, **kwargs):
        ctx = click.get_current_context()
        verbose = isinstance(ctx.obj, CliContext) and ctx.obj.verbose
        try:
            return command(*args, **kwargs)
        except (click.exceptions.Exit, click.ClickException, click.Abort):
            raise
        except Exception as e:
            for line in error_handler.format_for_terminal(e, debug=verbose):
                click.echo(line, err=True)
            ctx.exit(error_handler.exit_status_for(e))
    return wrapper


def _open_output(path: Optional[str]):
    if not path or path == '-':
        return click.get_text_stream('stdout'), False
    try:
        return open(path, 'w', encoding='utf-8', newline=''), True
    except OSError as e:
        raise OutputIOError(f"cannot write {path}: {e.strerror or e}", {'path': path})


@click.group(context_settings={'help_option_names': ['-h', '--help']})
@click.option('--cache-path', default=None, metavar='PATH',
              help='CacheStore file (default: $QEULER_CACHE_PATH).')
@click.option('-v', '--verbose', is_flag=True, help='Debug logging on stderr.')
@click.version_option(package_name='qeuler', message='%(prog)s %(version)s')
@click.pass_context
def cli(ctx, cache_path, verbose):
    """Generalized q-Euler numbers: compute, tabulate and verify divisibility."""
    try:
        reload_settings()
        setup_logging(settings, verbose)
    except Exception as e:
        for line in error_handler.format_for_terminal(e):
            click.echo(line, err=True)
        ctx.exit(error_handler.exit_status_for(e))
    ctx.obj = CliContext(cache_path or settings.CACHE_PATH, verbose)
    logger.debug(f"Settings: {settings.to_dict()}")


@cli.command()
@click.argument('n', type=int)
@click.argument('k', type=int)
@click.option('--oracle', is_flag=True, help='Enumerate S_n instead of using the recursion.')
@click.option('--check', is_flag=True, help='Compare the recursion with the enumeration oracle.')
@click.option('--format', 'output_format', type=click.Choice(['plain', 'json']), default='plain')
@click.pass_obj
@handle_errors
def compute(obj: CliContext, n, k, oracle, check, output_format):
    """Print E[N|K](q) and its value at q=1."""
    if k < 2:
        raise DomainError(f"descent period k must be at least 2, got {k}", {'k': k})
    if n < 0:
        raise DomainError(f"n must be non-negative, got {n}", {'n': n})

    poly = euler_oracle(n, k) if oracle else euler_q(n, k, obj.store)
    agreement = None
    if check:
        other = euler_q(n, k, obj.store) if oracle else euler_oracle(n, k)
        agreement = other == poly

    ReportWriter(click.get_text_stream('stdout'), output_format).write_value(n, k, poly, agreement)
    if agreement is False:
        click.get_current_context().exit(EXIT_VERIFICATION_FAILED)


@cli.command()
@click.argument('k', type=int)
@click.argument('n_max', metavar='N_MAX', type=int)
@click.option('--format', 'output_format', type=click.Choice(OUTPUT_FORMATS), default='plain')
@click.option('--output', '-o', default=None, metavar='PATH', help='Write to PATH instead of stdout.')
@click.pass_obj
@handle_errors
def table(obj: CliContext, k, n_max, output_format, output):
    """Rows (n, E[n|K](q), E[n|K]) for n = 0..N_MAX."""
    values = euler_table(k, n_max, obj.store)
    stream, owned = _open_output(output)
    try:
        writer = ReportWriter(stream, output_format)
        for n, poly in enumerate(values):
            writer.write_table_row(n, k, poly)
    finally:
        if owned:
            stream.close()


@cli.command()
@click.option('--k', 'k_values', multiple=True, required=True, metavar='K[,K...]',
              help='Descent periods to sweep, e.g. --k 2,3,5.')
@click.option('--max-N', 'max_total', type=int, default=12, show_default=True,
              help='Inclusive bound on nk+i.')
@click.option('--claims', multiple=True, metavar='CLAIM[,CLAIM...]',
              help='Claim identifiers (default: all).')
@click.option('--max-j', type=int, default=None, help='Upper bound on j for the Gessel-Viennot grid.')
@click.option('--format', 'output_format', type=click.Choice(OUTPUT_FORMATS), default='plain')
@click.option('--strict-explore', is_flag=True, help='Exploration failures also fail the run.')
@click.option('--force', is_flag=True, help='Run verifiers for non-prime k as exploration.')
@click.option('--workers', type=int, default=None, help='Concurrent k-shards.')
@click.option('--save-cache', is_flag=True, help='Persist newly computed values at the end.')
@click.pass_obj
@handle_errors
def verify(obj: CliContext, k_values, max_total, claims, max_j, output_format,
           strict_explore, force, workers, save_cache):
    """Check the divisibility claims over a parameter grid."""
    config = SweepConfig(
        k_set=tuple(parse_int_list(k_values)),
        max_N=max_total,
        claims=parse_claims(claims),
        output_format=output_format,
        max_j=max_j,
        strict_explore=strict_explore,
        force=force,
        workers=workers if workers is not None else settings.SWEEP_WORKERS,
    )
    writer = ReportWriter(click.get_text_stream('stdout'), config.output_format)
    summary = run_sweep(config, obj.store, on_report=writer.write_report)
    click.echo(summary.line(), err=True)

    if save_cache:
        obj.save()
    status = summary.exit_status(config.strict_explore)
    if status != EXIT_OK:
        click.get_current_context().exit(status)


@cli.group()
def cache():
    """Manage the persistent polynomial cache."""


@cache.command()
@click.option('--k', 'k_values', multiple=True, required=True, metavar='K[,K...]')
@click.option('--max-n', 'max_n', type=int, required=True, help='Compute E[0|k]..E[max-n|k].')
@click.pass_obj
@handle_errors
def warm(obj: CliContext, k_values, max_n):
    """Compute and persist E[n|k] for n up to --max-n."""
    store = obj.store
    for k in parse_int_list(k_values):
        euler_table(k, max_n, store)
        click.echo(f"k={k}: {len(store.keys_for(k))} entries")
    obj.save()


@cache.command(name='export')
@click.argument('path')
@click.pass_obj
@handle_errors
def export_cache(obj: CliContext, path):
    """Write the cache to PATH."""
    obj.store.save(path)
    click.echo(f"exported {len(obj.store)} entries to {path}")


@cache.command(name='import')
@click.argument('path')
@click.pass_obj
@handle_errors
def import_cache(obj: CliContext, path):
    """Merge the cache file at PATH into the cache."""
    incoming = CacheStore.load(path)
    added = obj.store.merge(incoming)
    obj.save()
    click.echo(f"imported {added} new entries ({len(incoming)} in file)")


@cache.command()
@click.pass_obj
@handle_errors
def stats(obj: CliContext):
    """Entry counts and largest degree."""
    info = obj.store.get_cache_stats()
    click.echo(f"path: {obj.cache_path}")
    click.echo(f"entries: {info['total_entries']}")
    for k, count in info['entries_per_k'].items():
        click.echo(f"k={k}: {count} entries")
    max_degree = info['max_degree']
    click.echo(f"max degree: {'-' if max_degree is None else max_degree}")


@cache.command()
@click.pass_obj
@handle_errors
def clear(obj: CliContext):
    """Remove every cached entry."""
    obj.store.clear()
    obj.save()
    click.echo("cache cleared")

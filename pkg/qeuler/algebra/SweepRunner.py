#!/usr/bin/env python3
"""
Verification sweeps over a bounded parameter grid.

A sweep is split into one shard per k. Shards are independent and may run
on worker threads; inside a shard n increases so that every E_{n|k} is
computed once and then read from the memo.
"""

import logging
import threading
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, Iterator, List, Optional, Tuple

from qeuler.algebra import Divisibility as dv
from qeuler.algebra.CacheManager import CacheStore, get_cache_store
from qeuler.algebra.Divisibility import EXPLORER_CLAIMS, Claim, VerificationReport, Verdict
from qeuler.algebra.ErrorHandler import (
    EXIT_OK,
    EXIT_VERIFICATION_FAILED,
    ConfigurationError,
)

logger = logging.getLogger(__name__)

OUTPUT_FORMATS = ('plain', 'json', 'csv')

VERIFIERS: Dict[Claim, Callable[..., VerificationReport]] = {
    Claim.LEMMA_QBINOM_FACTOR: dv.verify_lemma_qbinom_factor,
    Claim.LEMMA_BRACKET_RATIO: dv.verify_lemma_bracket_ratio,
    Claim.THM_BRACKET_POWER: dv.verify_thm_bracket_power,
    Claim.THM_BRACKET_PRODUCT: dv.verify_thm_bracket_product,
    Claim.COR_KPOWER_AT_1: dv.verify_cor_kpower_at_1,
    Claim.TANGENT_CLASSICAL: dv.verify_tangent_classical,
    Claim.GESSEL_VIENNOT: dv.verify_gessel_viennot,
    Claim.QUOTIENT_COPRIME_EXPLORE: dv.explore_quotient_coprime,
    Claim.RECURSION_TERM_FACTOR: dv.verify_recursion_term_factor,
}


def parse_int_list(text: Iterable[str]) -> List[int]:
    """'2,3,5' (possibly given several times) -> [2, 3, 5], order kept, duplicates dropped."""
    values: List[int] = []
    for chunk in text:
        for piece in str(chunk).split(','):
            piece = piece.strip()
            if not piece:
                continue
            try:
                value = int(piece)
            except ValueError:
                raise ConfigurationError(f"not an integer: {piece!r}", {'value': piece})
            if value not in values:
                values.append(value)
    return values


def parse_claims(text: Optional[Iterable[str]]) -> Tuple[Claim, ...]:
    """Comma-separated claim identifiers; all claims when empty."""
    names = [p.strip().upper() for chunk in (text or ()) for p in str(chunk).split(',') if p.strip()]
    if not names:
        return tuple(Claim)
    claims = []
    for name in names:
        try:
            claim = Claim(name)
        except ValueError:
            raise ConfigurationError(
                f"unknown claim {name!r}; expected one of {', '.join(c.value for c in Claim)}",
                {'claim': name})
        if claim not in claims:
            claims.append(claim)
    return tuple(claims)


@dataclass(frozen=True)
class SweepConfig:
    """Which claims to check, for which k, up to which nk+i."""
    k_set: Tuple[int, ...]
    max_N: int
    claims: Tuple[Claim, ...] = tuple(Claim)
    output_format: str = 'plain'
    max_j: Optional[int] = None
    strict_explore: bool = False
    force: bool = False
    workers: int = 1

    def __post_init__(self):
        if not self.k_set:
            raise ConfigurationError("the k-set must not be empty")
        if any(k < 2 for k in self.k_set):
            raise ConfigurationError(f"every k must be at least 2, got {list(self.k_set)}")
        if self.max_N < 2:
            raise ConfigurationError(f"max-N must be at least 2, got {self.max_N}")
        if not self.claims:
            raise ConfigurationError("no claims selected")
        if self.output_format not in OUTPUT_FORMATS:
            raise ConfigurationError(f"format must be one of {', '.join(OUTPUT_FORMATS)}")
        if self.max_j is not None and self.max_j < 0:
            raise ConfigurationError("max-j must be non-negative")
        if self.workers < 1:
            raise ConfigurationError("workers must be at least 1")


def claim_grid(claim: Claim, k: int, max_N: int, max_j: Optional[int] = None) -> Iterator[Dict[str, int]]:
    """Parameter tuples for one claim and one k, in increasing n."""
    if claim is Claim.LEMMA_QBINOM_FACTOR:
        for n in range(0, max_N // k + 1):
            for i in range(0, k - 1):
                if n * k + i <= max_N:
                    # m = n+1 makes the Gaussian polynomial vanish: one trivial case per row
                    for m in range(1, n + 2):
                        yield dict(n=n, m=m, k=k, i=i)
    elif claim is Claim.LEMMA_BRACKET_RATIO:
        for n in range(1, max_N // k + 1):
            for i in range(0, k - 1):
                if n * k + i <= max_N:
                    for m in range(1, n + 1):
                        yield dict(n=n, m=m, k=k, i=i)
    elif claim in (Claim.THM_BRACKET_POWER, Claim.THM_BRACKET_PRODUCT, Claim.COR_KPOWER_AT_1):
        for n in range(0, max_N // k + 1):
            for i in range(1, k):
                if n * k + i <= max_N:
                    yield dict(n=n, k=k, i=i)
    elif claim is Claim.RECURSION_TERM_FACTOR:
        for n in range(1, max_N // k + 1):
            if n * k + 1 <= max_N:
                yield dict(n=n, k=k)
    elif claim is Claim.TANGENT_CLASSICAL:
        if k == 2:
            for n in range(1, (max_N - 1) // 2 + 1):
                yield dict(n=n)
    elif claim in (Claim.GESSEL_VIENNOT, Claim.QUOTIENT_COPRIME_EXPLORE):
        for n in range(1, max_N // k + 1):
            top = n * k if max_j is None else min(n * k, max_j)
            for j in range(0, top + 1):
                yield dict(n=n, k=k, j=j)


def run_shard(k: int, config: SweepConfig, memo: CacheStore) -> Iterator[VerificationReport]:
    """Every selected claim over the grid for one k."""
    logger.info(f"Sweep shard k={k} started (max-N={config.max_N})")
    count = 0
    for claim in config.claims:
        verifier = VERIFIERS[claim]
        for params in claim_grid(claim, k, config.max_N, config.max_j):
            if claim is Claim.TANGENT_CLASSICAL:
                report = verifier(params['n'], memo=memo)
            else:
                report = verifier(**params, force=config.force, memo=memo)
            count += 1
            yield report
    logger.info(f"Sweep shard k={k} finished: {count} reports")


def iter_reports(config: SweepConfig, memo: Optional[CacheStore] = None) -> Iterator[VerificationReport]:
    """Reports in k-set order; shards computed concurrently when workers > 1."""
    store = memo if memo is not None else get_cache_store()
    if config.workers == 1 or len(config.k_set) == 1:
        for k in config.k_set:
            yield from run_shard(k, config, store)
        return

    with ThreadPoolExecutor(max_workers=config.workers, thread_name_prefix='qeuler-shard') as pool:
        futures = [pool.submit(lambda k=k: list(run_shard(k, config, store))) for k in config.k_set]
        for future in futures:
            yield from future.result()


@dataclass
class SweepSummary:
    """Running verdict counts and the exit-status contract."""
    counts: Counter = field(default_factory=Counter)
    failures: List[VerificationReport] = field(default_factory=list)
    findings: List[VerificationReport] = field(default_factory=list)
    lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    def add(self, report: VerificationReport):
        with self.lock:
            self.counts[report.verdict] += 1
            if report.claim in EXPLORER_CLAIMS or report.exploratory:
                if report.verdict is not Verdict.INAPPLICABLE:
                    self.findings.append(report)
            elif report.verdict is Verdict.FAILS:
                self.failures.append(report)

    def explorer_failures(self) -> List[VerificationReport]:
        return [r for r in self.findings if r.verdict is Verdict.FAILS]

    def exit_status(self, strict_explore: bool = False) -> int:
        if self.failures:
            return EXIT_VERIFICATION_FAILED
        if strict_explore and self.explorer_failures():
            return EXIT_VERIFICATION_FAILED
        return EXIT_OK

    def line(self) -> str:
        total = sum(self.counts.values())
        parts = [f"{total} checks"]
        parts += [f"{self.counts[v]} {v.value}" for v in Verdict]
        parts.append(f"{len(self.explorer_failures())} exploration findings")
        return ', '.join(parts)


def run_sweep(config: SweepConfig, memo: Optional[CacheStore] = None,
              on_report: Optional[Callable[[VerificationReport], None]] = None) -> SweepSummary:
    """Run a whole sweep, passing each report to ``on_report`` as it arrives."""
    summary = SweepSummary()
    for report in iter_reports(config, memo):
        summary.add(report)
        if on_report is not None:
            on_report(report)
    return summary

#!/usr/bin/env python3
"""
q-integers, q-factorials and Gaussian binomial coefficients.

Gaussian polynomials are built row by row with the q-Pascal rule, so no
division is involved; the inversion count over binary words and the
quotient-of-factorials form are kept as independent oracles.
"""

import logging
import math
import threading
from itertools import combinations
from typing import Iterator, List, Sequence, Tuple

from qeuler.algebra.ErrorHandler import BudgetExceededError, DomainError
from qeuler.algebra.PolyArith import (
    QPolynomial,
    div_exact,
    mul,
    one,
    q_bracket,
    zero,
)
from qeuler.resources.qeuler_settings import settings

logger = logging.getLogger(__name__)

# a sequence of k zeros and n-k ones
BinaryWord = Tuple[int, ...]

_rows: List[Tuple[QPolynomial, ...]] = [(one(),)]
_rows_lock = threading.Lock()


def _check_nonneg(name: str, value: int):
    if value < 0:
        raise DomainError(f"{name} must be non-negative, got {value}", {name: value})


def q_int(n: int) -> QPolynomial:
    """[n] = 1 + q + ... + q^{n-1}; [0] is the empty sum 0."""
    _check_nonneg('n', n)
    if n == 0:
        return zero()
    return q_bracket(n, 1)


def q_factorial(n: int) -> QPolynomial:
    """[n]! = [n][n-1]...[1]; [0]! = 1."""
    _check_nonneg('n', n)
    result = one()
    for j in range(2, n + 1):
        result = mul(result, q_int(j))
    return result


def q_binomial_row(n: int) -> Tuple[QPolynomial, ...]:
    """All Gaussian polynomials [n choose k] for k = 0..n."""
    _check_nonneg('n', n)
    if n < len(_rows):
        return _rows[n]

    with _rows_lock:
        while len(_rows) <= n:
            m = len(_rows)
            prev = _rows[-1]
            row = [one()]
            for k in range(1, m):
                row.append(prev[k - 1] + prev[k].shift(k))
            row.append(one())
            # append publishes a complete row; readers never see a partial one
            _rows.append(tuple(row))
        logger.debug(f"Gaussian rows extended to n={len(_rows) - 1}")
    return _rows[n]


def gaussian(n: int, k: int) -> QPolynomial:
    """[n choose k]; zero when k < 0 or k > n."""
    _check_nonneg('n', n)
    if k < 0 or k > n:
        return zero()
    return q_binomial_row(n)[k]


def binary_words(n: int, k: int) -> Iterator[BinaryWord]:
    """Every word with k zeros and n-k ones."""
    for zeros in combinations(range(n), k):
        word = [1] * n
        for p in zeros:
            word[p] = 0
        yield tuple(word)


def word_inversions(word: Sequence[int]) -> int:
    """Pairs i < j with word[i] > word[j], i.e. a 1 before a 0."""
    ones_seen = 0
    inversions = 0
    for bit in word:
        if bit:
            ones_seen += 1
        else:
            inversions += ones_seen
    return inversions


def gaussian_oracle(n: int, k: int) -> QPolynomial:
    """Sum of q^inv over all binary words with k zeros and n-k ones."""
    _check_nonneg('n', n)
    if k < 0 or k > n:
        raise DomainError(f"gaussian_oracle needs 0 <= k <= n, got n={n}, k={k}",
                          {'n': n, 'k': k})
    size = math.comb(n, k)
    if size > settings.WORD_BUDGET:
        raise BudgetExceededError(
            f"C({n},{k}) = {size} words exceeds the budget of {settings.WORD_BUDGET}",
            {'n': n, 'k': k, 'budget': settings.WORD_BUDGET})

    counts = [0] * (k * (n - k) + 1)
    for word in binary_words(n, k):
        counts[word_inversions(word)] += 1
    return QPolynomial(counts)


def gaussian_from_factorials(n: int, k: int) -> QPolynomial:
    """[n]! / ([k]! [n-k]!) by exact division."""
    _check_nonneg('n', n)
    if k < 0 or k > n:
        return zero()
    quotient = div_exact(q_factorial(n), mul(q_factorial(k), q_factorial(n - k)))
    if quotient is None:
        raise ArithmeticError(f"[{n}]! not divisible by [{k}]![{n - k}]!")
    return quotient


def binomial_int(n: int, j: int) -> int:
    """Ordinary binomial coefficient; 0 when j > n."""
    _check_nonneg('n', n)
    _check_nonneg('j', j)
    return math.comb(n, j)

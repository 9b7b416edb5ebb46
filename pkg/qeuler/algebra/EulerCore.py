#!/usr/bin/env python3
"""
Generalized q-Euler numbers.

E_{n|k}(q) is the sum of q^inv(p) over the permutations p of 1..n whose
descent set is exactly {k, 2k, 3k, ...} below n. ``euler_q`` computes it
bottom-up from the recursion on the position of the largest letter;
``euler_oracle`` enumerates the symmetric group directly.

>>> str(euler_q(5, 3))
'q + 2*q^2 + 2*q^3 + 2*q^4 + q^5 + q^6'
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from qeuler.algebra.CacheManager import CacheStore, EulerKey, get_cache_store
from qeuler.algebra.ErrorHandler import BudgetExceededError, DomainError
from qeuler.algebra.PolyArith import QPolynomial, eval_int, mul, one, zero
from qeuler.algebra.QCombinat import gaussian
from qeuler.resources.qeuler_settings import settings

logger = logging.getLogger(__name__)

# one-line notation of a bijection on 1..n
Permutation = Tuple[int, ...]


@dataclass(frozen=True)
class RecursionTerm:
    """One summand of the recursion for E_{(n+1)|k}; m is None for the chi term."""
    m: Optional[int]
    value: QPolynomial


def _check_period(k: int):
    if k < 2:
        raise DomainError(f"descent period k must be at least 2, got {k}", {'k': k})


def _check_permutation(p: Sequence[int]):
    if sorted(p) != list(range(1, len(p) + 1)):
        raise DomainError(f"{tuple(p)!r} is not a permutation of 1..{len(p)}")


def descent_set(p: Sequence[int]) -> FrozenSet[int]:
    """Positions i (1-based) with p_i > p_{i+1}."""
    _check_permutation(p)
    return frozenset(i for i in range(1, len(p)) if p[i - 1] > p[i])


def inversion_count(p: Sequence[int]) -> int:
    """Pairs i < j with p_i > p_j."""
    _check_permutation(p)
    return _inversions(p)


def _inversions(p: Sequence[int]) -> int:
    n = len(p)
    return sum(1 for i in range(n) for j in range(i + 1, n) if p[i] > p[j])


def required_descents(n: int, k: int) -> FrozenSet[int]:
    """{k, 2k, 3k, ...} intersected with 1..n-1."""
    _check_period(k)
    return frozenset(range(k, n, k))


def _descent_mask(positions) -> int:
    mask = 0
    for i in positions:
        mask |= 1 << (i - 1)
    return mask


def _check_permutation_budget(n: int):
    if n > settings.PERMUTATION_MAX_N:
        raise BudgetExceededError(
            f"enumerating S_{n} exceeds the permutation budget (n <= {settings.PERMUTATION_MAX_N})",
            {'n': n, 'max_n': settings.PERMUTATION_MAX_N})


def descent_inversion_profile(n: int) -> Dict[int, Tuple[int, ...]]:
    """
    Enumerate S_n once, tallying inversions per descent set.

    Keys are descent-set bitmasks (bit i-1 set for a descent at i); values
    are inversion-count histograms. Every k reads the same profile.
    """
    _check_permutation_budget(n)
    return _enumerate_profile(n)


# no budget check here: a cached result must not outlive a lowered budget
@lru_cache(maxsize=None)
def _enumerate_profile(n: int) -> Dict[int, Tuple[int, ...]]:
    size = n * (n - 1) // 2 + 1
    profile: Dict[int, List[int]] = {}
    for p in permutations(range(1, n + 1)):
        mask = 0
        for i in range(1, n):
            if p[i - 1] > p[i]:
                mask |= 1 << (i - 1)
        histogram = profile.get(mask)
        if histogram is None:
            histogram = profile[mask] = [0] * size
        histogram[_inversions(p)] += 1
    logger.debug(f"Enumerated S_{n}: {len(profile)} distinct descent sets")
    return {mask: tuple(h) for mask, h in profile.items()}


def euler_oracle(n: int, k: int) -> QPolynomial:
    """E_{n|k}(q) straight from the definition, by enumerating S_n."""
    _check_period(k)
    if n < 0:
        raise DomainError(f"n must be non-negative, got {n}", {'n': n})
    mask = _descent_mask(required_descents(n, k))
    _check_permutation_budget(n)
    return QPolynomial(descent_inversion_profile(n).get(mask, ()))


def _recursion_terms(n: int, k: int, values: Sequence[QPolynomial]) -> List[RecursionTerm]:
    """Summands producing E_{(n+1)|k} from E_{0|k}..E_{n|k}."""
    terms = []
    for m in range(1, n // k + 1):
        left = m * k - 1
        right = n - m * k + 1
        term = mul(mul(gaussian(n, left), values[left]), values[right]).shift(right)
        terms.append(RecursionTerm(m, term))
    if n % k:
        terms.append(RecursionTerm(None, values[n]))
    return terms


def _next_value(j: int, k: int, values: Sequence[QPolynomial]) -> QPolynomial:
    # E_0 = E_1 = 1: the recursion read at n = 0 would give E_1 = 0
    if j <= 1:
        return one()
    total = zero()
    for term in _recursion_terms(j - 1, k, values):
        total = total + term.value
    return total


def euler_table(k: int, n_max: int, memo: Optional[CacheStore] = None) -> List[QPolynomial]:
    """[E_{0|k}(q), ..., E_{n_max|k}(q)], filling the memo bottom-up."""
    _check_period(k)
    if n_max < 0:
        raise DomainError(f"n must be non-negative, got {n_max}", {'n': n_max})
    store = memo if memo is not None else get_cache_store()

    values: List[QPolynomial] = []
    computed = 0
    for j in range(n_max + 1):
        key = EulerKey(j, k)
        value = store.get(key)
        if value is None:
            value = _next_value(j, k, values)
            if not store.set(key, value):
                # another thread got there first; use its entry
                value = store.get(key)
            computed += 1
        values.append(value)

    if computed:
        logger.debug(f"Computed {computed} new values for k={k} up to n={n_max}")
    return values


def euler_q(n: int, k: int, memo: Optional[CacheStore] = None) -> QPolynomial:
    """E_{n|k}(q) via the memoized recursion."""
    key = EulerKey(n, k)
    store = memo if memo is not None else get_cache_store()
    cached = store.get(key)
    if cached is not None:
        return cached
    return euler_table(k, n, store)[n]


def euler_count(n: int, k: int, memo: Optional[CacheStore] = None) -> int:
    """E_{n|k}, the number of permutations counted by E_{n|k}(q)."""
    return eval_int(euler_q(n, k, memo), 1)


def recursion_terms(n: int, k: int, memo: Optional[CacheStore] = None) -> List[RecursionTerm]:
    """The summands whose total is E_{(n+1)|k}(q), for n >= 1."""
    if n < 1:
        raise DomainError(f"the recursion produces E_(n+1) only for n >= 1, got n={n}", {'n': n})
    return _recursion_terms(n, k, euler_table(k, n, memo))


def tangent_number(n: int, memo: Optional[CacheStore] = None) -> int:
    """E_{2n+1}, the count of alternating permutations of odd length."""
    return euler_count(2 * n + 1, 2, memo)


def secant_number(n: int, memo: Optional[CacheStore] = None) -> int:
    """E_{2n}."""
    return euler_count(2 * n, 2, memo)


def genocchi_number(n: int, memo: Optional[CacheStore] = None) -> int:
    """(n+1) E_{2n+1} / 2^{2n}."""
    value, remainder = divmod((n + 1) * tangent_number(n, memo), 4 ** n)
    if remainder:
        raise ArithmeticError(f"2^{2 * n} does not divide {n + 1}*E_{2 * n + 1}")
    return value

#!/usr/bin/env python3
"""
Exact polynomials in q with arbitrary-precision integer coefficients.

Everything in qeuler is built from QPolynomial values: q-integers,
Gaussian polynomials and the generalized q-Euler numbers themselves.
Coefficients are Python ints, so nothing is ever rounded.

>>> a = QPolynomial([0, 1, 1])
>>> str(a * q_bracket(3, 1).shift(1))
'q^2 + 2*q^3 + 2*q^4 + q^5'
"""

import logging
import operator
from typing import Iterable, List, Optional, Sequence, Tuple

from qeuler.algebra.ErrorHandler import DomainError, ZeroDivisorError
from qeuler.resources.qeuler_settings import settings

logger = logging.getLogger(__name__)

# arbitrary-precision signed integer
BigInteger = int


class QPolynomial:
    """
    Dense, immutable polynomial in q.

    ``coeffs[d]`` is the coefficient of q^d. The tuple is normalized: it is
    empty for the zero polynomial, otherwise its last entry is nonzero.
    """

    __slots__ = ('_coeffs',)

    def __init__(self, coeffs: Iterable[int] = ()):
        values = [operator.index(c) for c in coeffs]
        while values and values[-1] == 0:
            values.pop()
        object.__setattr__(self, '_coeffs', tuple(values))

    def __setattr__(self, name, value):
        raise AttributeError("QPolynomial is immutable")

    @property
    def coeffs(self) -> Tuple[int, ...]:
        return self._coeffs

    def is_zero(self) -> bool:
        return not self._coeffs

    @property
    def degree(self) -> int:
        """Degree of a nonzero polynomial; the zero polynomial has none."""
        if not self._coeffs:
            raise DomainError("the zero polynomial has no degree")
        return len(self._coeffs) - 1

    @property
    def low_degree(self) -> Optional[int]:
        """Exponent of the lowest nonzero term, None for zero."""
        for d, c in enumerate(self._coeffs):
            if c:
                return d
        return None

    def coefficient(self, d: int) -> int:
        if 0 <= d < len(self._coeffs):
            return self._coeffs[d]
        return 0

    def shift(self, d: int) -> 'QPolynomial':
        """Multiply by q^d."""
        if d < 0:
            raise DomainError(f"shift exponent must be non-negative, got {d}")
        if not self._coeffs or d == 0:
            return self
        return QPolynomial((0,) * d + self._coeffs)

    def scale(self, c: int) -> 'QPolynomial':
        return QPolynomial(c * x for x in self._coeffs)

    def __len__(self) -> int:
        return len(self._coeffs)

    def __iter__(self):
        return iter(self._coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, QPolynomial):
            return self._coeffs == other._coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._coeffs)

    def __add__(self, other: 'QPolynomial') -> 'QPolynomial':
        return add(self, other)

    def __sub__(self, other: 'QPolynomial') -> 'QPolynomial':
        return sub(self, other)

    def __mul__(self, other: 'QPolynomial') -> 'QPolynomial':
        return mul(self, other)

    def __neg__(self) -> 'QPolynomial':
        return self.scale(-1)

    def __call__(self, x: int) -> int:
        return eval_int(self, x)

    def __str__(self) -> str:
        return render(self)

    def __repr__(self) -> str:
        return f"QPolynomial({list(self._coeffs)!r})"


def zero() -> QPolynomial:
    return QPolynomial()


def one() -> QPolynomial:
    return QPolynomial((1,))


def monomial(c: int, d: int) -> QPolynomial:
    """c * q^d; the zero polynomial when c == 0."""
    if d < 0:
        raise DomainError(f"monomial degree must be non-negative, got {d}")
    if c == 0:
        return zero()
    return QPolynomial([0] * d + [c])


def from_coeffs(coeffs: Iterable[int]) -> QPolynomial:
    """Polynomial from ascending coefficients; a one-shot iterator is fine."""
    return QPolynomial(coeffs)


def _add_lists(a: Sequence[int], b: Sequence[int]) -> List[int]:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return out


def _sub_lists(a: Sequence[int], b: Sequence[int]) -> List[int]:
    out = list(a) + [0] * max(0, len(b) - len(a))
    for i, c in enumerate(b):
        out[i] -= c
    return out


def _schoolbook(a: Sequence[int], b: Sequence[int]) -> List[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _karatsuba(a: Sequence[int], b: Sequence[int], threshold: int) -> List[int]:
    if min(len(a), len(b)) < threshold:
        return _schoolbook(a, b)

    half = max(len(a), len(b)) // 2
    a0, a1 = a[:half], a[half:]
    b0, b1 = b[:half], b[half:]

    z0 = _karatsuba(a0, b0, threshold)
    z2 = _karatsuba(a1, b1, threshold)
    z1 = _karatsuba(_add_lists(a0, a1), _add_lists(b0, b1), threshold)
    z1 = _sub_lists(_sub_lists(z1, z0), z2)
    while z1 and z1[-1] == 0:
        z1.pop()

    out = [0] * (len(a) + len(b) - 1)
    for i, c in enumerate(z0):
        out[i] += c
    for i, c in enumerate(z1):
        out[i + half] += c
    for i, c in enumerate(z2):
        out[i + 2 * half] += c
    return out


def add(a: QPolynomial, b: QPolynomial) -> QPolynomial:
    return QPolynomial(_add_lists(a.coeffs, b.coeffs))


def sub(a: QPolynomial, b: QPolynomial) -> QPolynomial:
    return QPolynomial(_sub_lists(a.coeffs, b.coeffs))


def mul(a: QPolynomial, b: QPolynomial) -> QPolynomial:
    """Exact product: schoolbook convolution, Karatsuba on long operands."""
    if a.is_zero() or b.is_zero():
        return zero()
    threshold = settings.KARATSUBA_THRESHOLD
    return QPolynomial(_karatsuba(a.coeffs, b.coeffs, threshold))


def power(a: QPolynomial, e: int) -> QPolynomial:
    """a^e by repeated squaring; a^0 is 1, including 0^0."""
    if e < 0:
        raise DomainError(f"exponent must be non-negative, got {e}")
    result = one()
    base = a
    while e:
        if e & 1:
            result = mul(result, base)
        e >>= 1
        if e:
            base = mul(base, base)
    return result


def div_rem(a: QPolynomial, b: QPolynomial) -> Optional[Tuple[QPolynomial, QPolynomial]]:
    """
    Long division of a by b over the integers.

    Returns (quotient, remainder) with a = b*quotient + remainder and
    deg(remainder) < deg(b), or None as soon as a quotient coefficient would
    not be an integer.
    """
    if b.is_zero():
        raise ZeroDivisorError()

    rem = list(a.coeffs)
    divisor = b.coeffs
    top = len(divisor) - 1
    lead = divisor[top]
    if len(rem) <= top:
        return zero(), a

    quot = [0] * (len(rem) - top)
    for i in range(len(rem) - 1 - top, -1, -1):
        c = rem[i + top]
        if not c:
            continue
        step, r = divmod(c, lead)
        if r:
            return None
        quot[i] = step
        for j, d in enumerate(divisor):
            rem[i + j] -= step * d

    return QPolynomial(quot), QPolynomial(rem[:top])


def div_exact(a: QPolynomial, b: QPolynomial) -> Optional[QPolynomial]:
    """The c with a = b*c in Z[q], or None when b does not divide a."""
    result = div_rem(a, b)
    if result is None:
        return None
    quotient, remainder = result
    if not remainder.is_zero():
        return None
    return quotient


def eval_int(a: QPolynomial, x: int) -> int:
    """Horner evaluation at an integer."""
    value = 0
    for c in reversed(a.coeffs):
        value = value * x + c
    return value


def q_bracket(k: int, i: int = 1) -> QPolynomial:
    """[k]_{q^i} = 1 + q^i + q^{2i} + ... + q^{(k-1)i}."""
    if k < 1 or i < 1:
        raise DomainError(f"q_bracket needs k >= 1 and i >= 1, got k={k}, i={i}",
                          {'k': k, 'i': i})
    coeffs = [0] * ((k - 1) * i + 1)
    for j in range(k):
        coeffs[j * i] = 1
    return QPolynomial(coeffs)


def bracket_product(k: int, n: int) -> QPolynomial:
    """[k][k]_{q^2}...[k]_{q^n}; the empty product (n = 0) is 1."""
    if n < 0:
        raise DomainError(f"bracket_product needs n >= 0, got {n}")
    result = one()
    for j in range(1, n + 1):
        result = mul(result, q_bracket(k, j))
    return result


def render(a: QPolynomial) -> str:
    """Canonical text form, ascending degree: ``1 + 2*q^2 - q^5``."""
    if a.is_zero():
        return '0'
    parts = []
    for d, c in enumerate(a.coeffs):
        if not c:
            continue
        mag = abs(c)
        if d == 0:
            body = str(mag)
        else:
            var = 'q' if d == 1 else f'q^{d}'
            body = var if mag == 1 else f'{mag}*{var}'
        if not parts:
            parts.append(f'-{body}' if c < 0 else body)
        else:
            parts.append(f'- {body}' if c < 0 else f'+ {body}')
    return ' '.join(parts)

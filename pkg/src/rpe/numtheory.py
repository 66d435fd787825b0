"""Kronecker symbol and class numbers of imaginary quadratic fields.

``class_number_sum`` evaluates

    h(-d) = -(w(d) / 2d) * sum_{n=1}^{d-1} (-d/n) n,   w(3)=6, w(4)=4, else 2,

with (-d/n) read as the Kronecker symbol (n is even for half the terms).
``class_number_forms`` counts reduced primitive forms and serves as the
independent oracle.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from . import _kernels
from .errors import ConsistencyError, DomainError

_I64_SAFE = 2**31


def _tab2(a: int) -> int:
    return (0, 1, 0, -1, 0, -1, 0, 1)[a & 7]


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a/n) for arbitrary integers."""
    a, b = int(a), int(n)
    if abs(a) < _I64_SAFE and abs(b) < _I64_SAFE:
        return int(_kernels.kronecker_i64(a, b))
    if b == 0:
        return 1 if abs(a) == 1 else 0
    if a % 2 == 0 and b % 2 == 0:
        return 0
    v = (b & -b).bit_length() - 1
    b >>= v
    k = 1 if v % 2 == 0 else _tab2(a)
    if b < 0:
        b = -b
        if a < 0:
            k = -k
    while a:
        v = (a & -a).bit_length() - 1
        a >>= v
        if v % 2:
            k *= _tab2(b)
        if a & b & 2:
            k = -k
        r = abs(a)
        a, b = b % r, r
    return k if b == 1 else 0


def check_discriminant(d: int) -> int:
    d = int(d)
    if d < 3:
        raise DomainError(f"need d >= 3, got {d}")
    if (-d) % 4 not in (0, 1):
        raise DomainError(f"-{d} is not a discriminant (must be 0 or 1 mod 4)")
    if d >= _I64_SAFE:
        raise DomainError("d too large for the int64 kernels")
    return d


def units(d: int) -> int:
    return {3: 6, 4: 4}.get(d, 2)


def class_number_sum(d: int) -> int:
    d = check_discriminant(d)
    s = int(_kernels.weighted_symbol_sum(d))
    h = Fraction(-units(d) * s, 2 * d)
    if h.denominator != 1 or h <= 0:
        raise ConsistencyError(f"symbol sum gave h(-{d}) = {h}; not a positive integer")
    return int(h)


def class_number_forms(d: int) -> int:
    d = check_discriminant(d)
    return int(_kernels.reduced_form_count(d))


def _squarefree(m: int) -> bool:
    m = abs(m)
    p = 2
    while p * p <= m:
        if m % (p * p) == 0:
            return False
        p += 1
    return True


def is_fundamental(d: int) -> bool:
    """Whether -d is a fundamental discriminant."""
    D = -int(d)
    if D % 4 == 1:
        return _squarefree(D)
    if D % 4 == 0:
        m = D // 4
        return m % 4 in (2, 3) and _squarefree(m)
    return False


def fundamental_range(lo: int, hi: int) -> list[int]:
    return [d for d in range(max(lo, 3), hi + 1) if is_fundamental(d)]


def class_number_table(ds) -> tuple[np.ndarray, np.ndarray]:
    """Class numbers of -d for each d by both routes, as int64 arrays."""
    ds = np.asarray([check_discriminant(d) for d in ds], dtype=np.int64)
    sums, forms = _kernels.batch_counts(ds)
    w = np.where(ds == 3, 6, np.where(ds == 4, 4, 2))
    numer = -w * sums
    if np.any(numer % (2 * ds)):
        bad = int(ds[np.nonzero(numer % (2 * ds))[0][0]])
        raise ConsistencyError(f"non-integral class number for d={bad}")
    return numer // (2 * ds), forms


def heegner_numbers(limit: int) -> list[int]:
    ds = fundamental_range(3, limit)
    h, _ = class_number_table(ds)
    return [d for d, v in zip(ds, h) if v == 1]

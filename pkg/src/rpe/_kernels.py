"""int64 kernels for the class-number routines (numba-compiled when enabled)."""

import numpy as np

from ._accel import njit


@njit
def _tab2(a):
    # (2/a) for odd a, 0 for even a
    r = a & 7
    if r == 1 or r == 7:
        return 1
    if r == 3 or r == 5:
        return -1
    return 0


@njit
def kronecker_i64(a, b):
    if b == 0:
        return 1 if (a == 1 or a == -1) else 0
    if (a & 1) == 0 and (b & 1) == 0:
        return 0
    v = 0
    while (b & 1) == 0:
        v += 1
        b >>= 1
    k = 1 if (v & 1) == 0 else _tab2(a)
    if b < 0:
        b = -b
        if a < 0:
            k = -k
    while True:
        if a == 0:
            return k if b == 1 else 0
        v = 0
        while (a & 1) == 0:
            v += 1
            a >>= 1
        if v & 1:
            k *= _tab2(b)
        if a & b & 2:
            k = -k
        r = a if a >= 0 else -a
        a = b % r
        b = r


@njit
def weighted_symbol_sum(d):
    """sum_{n=1}^{d-1} (-d/n) n."""
    s = 0
    for n in range(1, d):
        s += kronecker_i64(-d, n) * n
    return s


@njit
def _gcd(a, b):
    a = a if a >= 0 else -a
    b = b if b >= 0 else -b
    while b:
        a, b = b, a % b
    return a


@njit
def reduced_form_count(d):
    """Primitive reduced forms (A, B, C) with B^2 - 4AC = -d."""
    count = 0
    a = 1
    while 3 * a * a <= d:
        for b in range(-a + 1, a + 1):
            num = b * b + d
            if num % (4 * a) != 0:
                continue
            c = num // (4 * a)
            if c < a:
                continue
            if b < 0 and a == c:
                continue
            if _gcd(_gcd(a, b), c) != 1:
                continue
            count += 1
        a += 1
    return count


@njit
def batch_counts(ds):
    """(weighted symbol sums, reduced form counts) for an int64 array of d."""
    n = ds.shape[0]
    sums = np.empty(n, dtype=np.int64)
    forms = np.empty(n, dtype=np.int64)
    for i in range(n):
        sums[i] = weighted_symbol_sum(ds[i])
        forms[i] = reduced_form_count(ds[i])
    return sums, forms

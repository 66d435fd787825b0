"""Exact binary splitting for the Chudnovsky series.

With p(k) = -(6k-5)(6k-3)(6k-1), q(k) = 216 k^3 53360^3 and the integer
linear factor 13591409 + 545140134 k, the partial sum over [0, N) equals
T(0, N) / Q(0, N) exactly, and

    pi = 426880 sqrt(10005) Q / T    (as N -> infinity).

Ranges are merged with P = P_l P_r, Q = Q_l Q_r, T = T_l Q_r + P_l T_r, so
any split of [0, N) into contiguous pieces gives bit-identical integers.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import gmpy2
from gmpy2 import mpfr, mpz

from .precision import PrecisionContext, format_real

Z_DENOM = 53360
DIGITS_PER_TERM = 3 * math.log10(Z_DENOM)
A_INT = 13591409
B_INT = 545140134
PI_NUMERATOR = 426880  # times sqrt(10005)
NORMALIZER = 4270934400  # = 426880 * 10005

_Q_FACTOR = mpz(216) * mpz(Z_DENOM) ** 3
_LEAF = 16


@dataclass(frozen=True)
class BinSplitNode:
    P: mpz
    Q: mpz
    T: mpz

    def merge(self, right: "BinSplitNode") -> "BinSplitNode":
        return BinSplitNode(
            self.P * right.P,
            self.Q * right.Q,
            self.T * right.Q + self.P * right.T,
        )


def _leaf(lo: int, hi: int) -> BinSplitNode:
    P, Q, T = mpz(1), mpz(1), mpz(0)
    for k in range(lo, hi):
        if k == 0:
            pk, qk = mpz(1), mpz(1)
        else:
            pk = -mpz(6 * k - 5) * (6 * k - 3) * (6 * k - 1)
            qk = _Q_FACTOR * k * k * k
        # node for [lo, k] = node[lo, k) merged with single term k
        P, Q, T = P * pk, Q * qk, T * qk + P * pk * (A_INT + B_INT * k)
    return BinSplitNode(P, Q, T)


def binsplit(lo: int, hi: int) -> BinSplitNode:
    """Exact (P, Q, T) for the term range [lo, hi)."""
    if hi - lo <= _LEAF:
        return _leaf(lo, hi)
    mid = (lo + hi) // 2
    return binsplit(lo, mid).merge(binsplit(mid, hi))


def _binsplit_tuple(bounds: tuple[int, int]) -> tuple[mpz, mpz, mpz]:
    node = binsplit(*bounds)
    return node.P, node.Q, node.T


def binsplit_parallel(N: int, workers: int = 1) -> BinSplitNode:
    """Split [0, N) into ``workers`` contiguous chunks, merge left to right."""
    workers = max(1, min(workers, N))
    if workers == 1:
        return binsplit(0, N)
    edges = [N * i // workers for i in range(workers + 1)]
    chunks = [(edges[i], edges[i + 1]) for i in range(workers)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        parts = [BinSplitNode(*t) for t in pool.map(_binsplit_tuple, chunks)]
    node = parts[0]
    for part in parts[1:]:
        node = node.merge(part)
    return node


def terms_for_digits(digits: int) -> int:
    return math.ceil(digits / DIGITS_PER_TERM) + 2


def chudnovsky_partial_sum(N: int, ctx: PrecisionContext) -> mpfr:
    """Normalized partial sum over [0, N), i.e. converging to 1/pi."""
    node = binsplit(0, N)
    with ctx.local():
        return mpfr(node.T) * gmpy2.sqrt(mpfr(10005)) / (mpfr(node.Q) * NORMALIZER)


def chudnovsky_pi(digits: int, workers: int = 1) -> mpfr:
    ctx = PrecisionContext(digits)
    node = binsplit_parallel(terms_for_digits(digits), workers)
    with ctx.local():
        return PI_NUMERATOR * gmpy2.sqrt(mpfr(10005)) * mpfr(node.Q) / mpfr(node.T)


def eval_chudnovsky_binsplit(digits: int, workers: int = 1) -> str:
    """pi to ``digits`` significant digits as a decimal string."""
    if digits < 1:
        raise ValueError("digits must be >= 1")
    return format_real(chudnovsky_pi(digits, workers), digits)

"""Forward-recurrence evaluation of level-1 series and two companion identities.

The level-1 weight is t_n = (1/6)_n (1/2)_n (5/6)_n / (n!)^3 z^n, built by the
exact ratio (6n+1)(6n+3)(6n+5) / (216 (n+1)^3) so no Pochhammer symbol or
factorial is ever formed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import gmpy2
from gmpy2 import mpfr

from .elliptic import ellip_K_E, pi_reference
from .errors import DivergentSeriesError, DomainError
from .params import SeriesParams, digits_per_term
from .precision import PrecisionContext, real

_MAX_TERMS = 10_000_000


@dataclass(frozen=True)
class TruncationEstimate:
    N: int
    bound: mpfr


def level1_ratio(n: int) -> Fraction:
    """t_{n+1} / (t_n z) as an exact rational."""
    return Fraction((6 * n + 1) * (6 * n + 3) * (6 * n + 5), 216 * (n + 1) ** 3)


def level1_weights(z, N: int, ctx: PrecisionContext) -> list[mpfr]:
    """[t_0, ..., t_{N-1}] for argument ``z``."""
    with ctx.local():
        z = real(z, ctx)
        out = []
        t = mpfr(1)
        for n in range(N):
            out.append(t)
            t = t * z * ((6 * n + 1) * (6 * n + 3) * (6 * n + 5)) / (216 * (n + 1) ** 3)
        return out


def partial_sum(p: SeriesParams, N: int, ctx: PrecisionContext) -> mpfr:
    """sum_{n < N} t_n (a + b n)."""
    with ctx.local():
        z, a, b = real(p.z, ctx), real(p.a, ctx), real(p.b, ctx)
        s = mpfr(0)
        t = mpfr(1)
        for n in range(N):
            s += t * (a + b * n)
            t = t * z * ((6 * n + 1) * (6 * n + 3) * (6 * n + 5)) / (216 * (n + 1) ** 3)
        return s


def truncation_bound(p: SeriesParams, N: int, ctx: PrecisionContext) -> TruncationEstimate:
    """Geometric bound on |sum_{n >= N} t_n (a + b n)|.

    Valid because the Pochhammer ratio is below 1 for every n >= 0, so
    |t_n| <= |t_N| |z|^(n-N).
    """
    with ctx.local():
        z = abs(real(p.z, ctx))
        if z >= 1:
            raise DivergentSeriesError("|z| >= 1")
        if z == 0:
            return TruncationEstimate(N, mpfr(0))
        a, b = abs(real(p.a, ctx)), abs(real(p.b, ctx))
        tN = abs(level1_weights(z, N + 1, ctx)[N])
        q = 1 / (1 - z)
        return TruncationEstimate(N, tN * (a + b * N + b * q) * q)


def select_terms(p: SeriesParams, target_digits: int, ctx: PrecisionContext) -> int:
    """Smallest certified N: digits-per-term estimate plus two, then bound-checked."""
    with ctx.local():
        z = real(p.z, ctx)
        if abs(z) >= 1:
            raise DivergentSeriesError("|z| >= 1: series diverges")
        if z == 0:
            return 1
        dpt = float(digits_per_term(z, ctx))
        N = math.ceil(target_digits / dpt) + 2
        limit = mpfr(10) ** -target_digits
        while truncation_bound(p, N, ctx).bound >= limit:
            N += max(1, N // 8)
            if N > _MAX_TERMS:
                raise DivergentSeriesError("term budget exhausted")
        return N


def eval_level1_series(p: SeriesParams, target_digits: int, ctx: PrecisionContext) -> mpfr:
    """Sum the series with a truncation error certified below 10**-target_digits."""
    return partial_sum(p, select_terms(p, target_digits, ctx), ctx)


def central_binomial_cube_series(x, ctx: PrecisionContext) -> mpfr:
    """sum (1/2)_n^3 / (n!)^3 x^n for |x| < 1."""
    with ctx.local():
        x = real(x, ctx)
        if abs(x) >= 1:
            raise DivergentSeriesError("|x| >= 1")
        cutoff = mpfr(2) ** -(ctx.bits + 8)
        s, t, n = mpfr(0), mpfr(1), 0
        while True:
            s += t
            t = t * x * (2 * n + 1) ** 3 / (8 * (n + 1) ** 3)
            n += 1
            if abs(t) <= cutoff * abs(s) and n > 2:
                # geometric tail bound |t| / (1 - |x|)
                if abs(t) / (1 - abs(x)) <= cutoff * abs(s):
                    return s
            if n > _MAX_TERMS:
                raise DivergentSeriesError("term budget exhausted")


def _level1_sum_until(w, ctx: PrecisionContext) -> mpfr:
    with ctx.local():
        cutoff = mpfr(2) ** -(ctx.bits + 8)
        s, t, n = mpfr(0), mpfr(1), 0
        while True:
            s += t
            t = t * w * ((6 * n + 1) * (6 * n + 3) * (6 * n + 5)) / (216 * (n + 1) ** 3)
            n += 1
            if abs(t) / (1 - abs(w)) <= cutoff * abs(s):
                return s
            if n > _MAX_TERMS:
                raise DivergentSeriesError("term budget exhausted")


def check_bailey(x, ctx: PrecisionContext) -> mpfr:
    """|LHS - RHS| of the cubic Bailey specialization at ``x``."""
    with ctx.local():
        x = real(x, ctx)
        # w(x) peaks at w = 1 when x = -1/8; further left |w| < 1 again but on
        # the wrong branch, so the identity fails there although both sides converge
        if x <= mpfr(-1) / 8 or 1 - 4 * x <= 0:
            raise DomainError(f"x={x} outside the Bailey region (-1/8, 0.0265...)")
        w = -27 * x / (1 - 4 * x) ** 3
        if abs(w) >= 1:
            raise DomainError(f"x={x}: transformed argument has |w| >= 1")
        lhs = central_binomial_cube_series(x, ctx)
        rhs = _level1_sum_until(w, ctx) / gmpy2.sqrt(1 - 4 * x)
        return abs(lhs - rhs)


def check_K_generating_function(x, ctx: PrecisionContext) -> mpfr:
    """|sum (1/2)_n^3/(n!)^3 x^n - 4 K(k)^2 / pi^2| with k^2 = (1 - sqrt(1-x))/2."""
    with ctx.local():
        x = real(x, ctx)
        if x < 0 or x >= 1:
            raise DomainError(f"x={x} outside [0, 1)")
        k = gmpy2.sqrt((1 - gmpy2.sqrt(1 - x)) / 2)
        K, _ = ellip_K_E(k, ctx)
        pi = pi_reference(ctx)
        return abs(central_binomial_cube_series(x, ctx) - 4 * K * K / (pi * pi))

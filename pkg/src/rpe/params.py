"""Parameters (z, a, b) of level-1 series sum t_n z^n (a + b n) = 1/pi.

Both families are driven by x = 4 k^2 (1 - k^2) at k = lambda*(r):

* positive convergence: z = 27 x^2 / (4 - x)^3
* negative convergence (analytic continuation): z = -27 x / (1 - 4x)^3

The Bagis-Glasser normalization (J, T) of the positive family and the
Borwein-style coefficient f_n(N) are exposed as cross-checks.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import gmpy2
from gmpy2 import mpfr

from .elliptic import THETA, elliptic_alpha, lambda_star
from .errors import DomainError, FamilyInapplicableError
from .precision import PrecisionContext, real

POSITIVE = "positive"
NEGATIVE = "negative"


@dataclass(frozen=True)
class SeriesParams:
    r: Fraction | int | None
    family: str
    z: mpfr
    a: mpfr
    b: mpfr


@dataclass(frozen=True)
class BGNormalization:
    J: mpfr
    T: mpfr


def x_from_k(k, ctx: PrecisionContext) -> mpfr:
    """x = 4 k^2 (1 - k^2), in (0, 1] for 0 < k < 1."""
    with ctx.local():
        k = real(k, ctx)
        if not 0 < k < 1:
            raise DomainError(f"modulus must lie in (0, 1), got {k}")
        k2 = k * k
        return 4 * k2 * (1 - k2)


def x_of_index(r, ctx: PrecisionContext, method: str = THETA) -> mpfr:
    return x_from_k(lambda_star(r, method, ctx), ctx)


def params_positive(r, ctx: PrecisionContext) -> SeriesParams:
    r = Fraction(r)
    x = x_of_index(r, ctx)
    alpha = elliptic_alpha(r, ctx)
    with ctx.local():
        sr = gmpy2.sqrt(real(r, ctx))
        s1x = gmpy2.sqrt(1 - x)
        d = gmpy2.sqrt((4 - x) ** 3)
        z = 27 * x * x / (4 - x) ** 3
        if 1 - abs(z) < ctx.tolerance():
            raise FamilyInapplicableError(f"positive family has |z| >= 1 at r={r}")
        a = (2 * (4 - x) * alpha + (x - 4 + 4 * s1x) * sr) / d
        b = 2 * (x + 8) * s1x * sr / d
        if b <= 0:
            raise FamilyInapplicableError(f"positive family degenerates at r={r}")
    return SeriesParams(r, POSITIVE, z, a, b)


def params_negative(r, ctx: PrecisionContext) -> SeriesParams:
    r = Fraction(r)
    if r <= 1:
        raise DomainError(f"negative family needs r > 1, got {r}")
    x = x_of_index(r, ctx)
    alpha = elliptic_alpha(r, ctx)
    with ctx.local():
        if not x < mpfr(1) / 4:
            raise FamilyInapplicableError(f"x >= 1/4 at r={r}; real branch unavailable")
        sr = gmpy2.sqrt(real(r, ctx))
        s1x = gmpy2.sqrt(1 - x)
        d = gmpy2.sqrt((1 - 4 * x) ** 3)
        z = -27 * x / (1 - 4 * x) ** 3
        if 1 - abs(z) < ctx.tolerance():
            raise FamilyInapplicableError(f"negative family has |z| >= 1 at r={r}")
        a = (2 * (1 - 4 * x) * alpha + (4 * x - 1 + s1x) * sr) / (2 * d)
        b = (1 + 8 * x) * s1x * sr / d
    return SeriesParams(r, NEGATIVE, z, a, b)


def bg_J_T(p: SeriesParams, ctx: PrecisionContext) -> BGNormalization:
    """J = z and T = 1 - 3a / (sqrt(r) sqrt(1 - z)) for a positive-family series."""
    if p.family != POSITIVE:
        raise DomainError("Bagis-Glasser normalization applies to the positive family")
    with ctx.local():
        sr = gmpy2.sqrt(real(Fraction(p.r), ctx))
        J = +p.z
        T = 1 - 3 * p.a / (sr * gmpy2.sqrt(1 - J))
    return BGNormalization(J, T)


def bg_coefficients(J, T, r, ctx: PrecisionContext) -> tuple[mpfr, mpfr]:
    """Inverse of :func:`bg_J_T`: a = sqrt(1-J) sqrt(r) (1-T)/3, b = 2 sqrt(1-J) sqrt(r)."""
    with ctx.local():
        w = gmpy2.sqrt(1 - real(J, ctx)) * gmpy2.sqrt(real(Fraction(r), ctx))
        return w * (1 - real(T, ctx)) / 3, 2 * w


def bg_series_params(J, T, r, ctx: PrecisionContext) -> SeriesParams:
    a, b = bg_coefficients(J, T, r, ctx)
    with ctx.local():
        return SeriesParams(Fraction(r), POSITIVE, real(J, ctx), a, b)


def borwein_coeffs(N, n: int, ctx: PrecisionContext) -> mpfr:
    """f_n(N) with G_N^(-24) taken as x = 4 k^2 k'^2 and k_N = lambda*(N).

    Paired with the factor J^(n + 1/2), J the positive-family z, this
    reproduces the positive-family (a, b) exactly.
    """
    N = Fraction(N)
    k = lambda_star(N, THETA, ctx)
    x = x_from_k(k, ctx)
    alpha = elliptic_alpha(N, ctx)
    with ctx.local():
        sn = gmpy2.sqrt(real(N, ctx))
        s3 = gmpy2.sqrt(mpfr(3))
        s1x = gmpy2.sqrt(1 - x)
        g24 = 1 / x
        const = (sn * s1x + 2 * (alpha - sn * k * k) * (4 * g24 - 1)) / (3 * s3)
        slope = sn * 2 / (3 * s3) * ((8 * g24 + 1) * s1x)
        return const + n * slope


def digits_per_term(z, ctx: PrecisionContext) -> mpfr:
    """-log10 |z|, the asymptotic number of digits gained per term."""
    with ctx.local():
        z = abs(real(z, ctx))
        if z == 0 or z >= 1:
            raise DomainError("digits per term needs 0 < |z| < 1")
        return -gmpy2.log10(z)

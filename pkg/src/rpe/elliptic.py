"""Complete elliptic integrals, singular moduli and the elliptic alpha function.

K and E come from the arithmetic-geometric mean; no quadrature is used.
The singular modulus lambda*(r) is available through two independent
routes (Jacobi theta quotient and monotone bisection on K'/K) so that each
can serve as the oracle for the other.
"""

from __future__ import annotations

import functools
from fractions import Fraction

import gmpy2
from gmpy2 import mpfr

from .errors import DomainError
from .precision import PrecisionContext, real

THETA = "theta"
BISECT = "agm-bisect"
_METHOD_ALIASES = {"theta": THETA, "agm-bisect": BISECT, "bisect": BISECT}

_AGM_MAX_STEPS = 10_000


def _eps(ctx: PrecisionContext) -> mpfr:
    with ctx.local():
        return mpfr(2) ** (8 - ctx.bits)


def agm(a, b, ctx: PrecisionContext) -> mpfr:
    """Arithmetic-geometric mean of two positive reals."""
    with ctx.local():
        a, b = real(a, ctx), real(b, ctx)
        if a <= 0 or b <= 0:
            raise DomainError("agm needs positive arguments")
        eps = _eps(ctx)
        for _ in range(_AGM_MAX_STEPS):
            if abs(a - b) <= eps * a:
                break
            a, b = (a + b) / 2, gmpy2.sqrt(a * b)
        return (a + b) / 2


@functools.lru_cache(maxsize=64)
def _pi_bits(bits: int) -> mpfr:
    # Gauss-Legendre / Brent-Salamin iteration
    with gmpy2.context(precision=bits, emax=gmpy2.get_emax_max(), emin=gmpy2.get_emin_min()):
        eps = mpfr(2) ** (4 - bits)
        a = mpfr(1)
        b = 1 / gmpy2.sqrt(mpfr(2))
        t = mpfr(1) / 4
        p = mpfr(1)
        while abs(a - b) > eps:
            a1 = (a + b) / 2
            b = gmpy2.sqrt(a * b)
            t -= p * (a - a1) ** 2
            a = a1
            p *= 2
        return (a + b) ** 2 / (4 * t)


def pi_reference(ctx: PrecisionContext) -> mpfr:
    """pi by the Gauss-Legendre AGM iteration (independent of every series)."""
    with ctx.local():
        return +_pi_bits(ctx.bits)


def complementary(k, ctx: PrecisionContext) -> mpfr:
    with ctx.local():
        k = real(k, ctx)
        return gmpy2.sqrt((1 - k) * (1 + k))


def ellip_K_E(k, ctx: PrecisionContext) -> tuple[mpfr, mpfr]:
    """Return ``(K(k), E(k))`` for a modulus ``0 <= k < 1``.

    K = pi / (2 agm(1, k')); E = K (1 - sum 2**(n-1) c_n**2) where the c_n
    are generated without cancellation by c_{n+1} = c_n**2 / (4 a_{n+1}).
    """
    with ctx.local():
        k = real(k, ctx)
        if k < 0 or k >= 1:
            raise DomainError(f"modulus must satisfy 0 <= k < 1, got {k}")
        pi = pi_reference(ctx)
        a, b = mpfr(1), complementary(k, ctx)
        c = k
        weight = mpfr(1) / 2
        acc = weight * c * c
        eps = _eps(ctx)
        for _ in range(_AGM_MAX_STEPS):
            if c == 0 or abs(a - b) <= eps * a:
                break
            a_next = (a + b) / 2
            b = gmpy2.sqrt(a * b)
            c = c * c / (4 * a_next)
            a = a_next
            weight *= 2
            acc += weight * c * c
        K = pi / (2 * a)
        return K, K * (1 - acc)


def ratio_Kprime_over_K(k, ctx: PrecisionContext) -> mpfr:
    """K(k')/K(k) = agm(1, k')/agm(1, k); strictly decreasing on (0, 1)."""
    with ctx.local():
        k = real(k, ctx)
        if not 0 < k < 1:
            raise DomainError(f"modulus must lie in (0, 1), got {k}")
        return agm(1, complementary(k, ctx), ctx) / agm(1, k, ctx)


def _sqrt_index(r, ctx: PrecisionContext) -> mpfr:
    with ctx.local():
        return gmpy2.sqrt(real(Fraction(r), ctx))


def _check_index(r) -> Fraction:
    r = Fraction(r)
    if r < 1:
        raise DomainError(
            f"singular value index must be >= 1, got {r}; use k(1/r) = k'(r) instead"
        )
    return r


def _lambda_theta(r: Fraction, ctx: PrecisionContext) -> mpfr:
    with ctx.local():
        q = gmpy2.exp(-pi_reference(ctx) * _sqrt_index(r, ctx))
        cutoff = mpfr(10) ** -(ctx.digits + 20)
        # theta2 = 2 q^(1/4) sum q^(n(n+1)), theta3 = 1 + 2 sum q^(n^2)
        s2, n = mpfr(0), 0
        while True:
            term = q ** (n * (n + 1))
            s2 += term
            if term < cutoff * s2:
                break
            n += 1
        s3, n = mpfr(1), 1
        while True:
            term = 2 * q ** (n * n)
            s3 += term
            if term < cutoff:
                break
            n += 1
        theta2 = 2 * gmpy2.root(q, 4) * s2
        return (theta2 / s3) ** 2


def _lambda_bisect(r: Fraction, ctx: PrecisionContext) -> mpfr:
    with ctx.local():
        target = _sqrt_index(r, ctx)
        hi = 1 / gmpy2.sqrt(mpfr(2))
        if r == 1:
            return hi
        # walk down geometrically (k -> k^2) until K'/K exceeds sqrt(r)
        lo = hi
        while ratio_Kprime_over_K(lo, ctx) <= target:
            hi, lo = lo, lo * lo
        # bisect in log scale: the midpoint is the geometric mean
        width = mpfr(10) ** -(ctx.digits + 10)
        while hi - lo >= width * lo:
            mid = gmpy2.sqrt(lo * hi)
            if ratio_Kprime_over_K(mid, ctx) > target:
                lo = mid
            else:
                hi = mid
        return gmpy2.sqrt(lo * hi)


@functools.lru_cache(maxsize=128)
def _lambda_cached(r: Fraction, method: str, digits: int, guard: int) -> mpfr:
    ctx = PrecisionContext(digits, guard)
    if method == THETA:
        return _lambda_theta(r, ctx)
    return _lambda_bisect(r, ctx)


def lambda_star(r, method: str = THETA, ctx: PrecisionContext | None = None) -> mpfr:
    """Singular modulus k with K'(k)/K(k) = sqrt(r), for r >= 1.

    ``method`` is ``"theta"`` (default) or ``"agm-bisect"`` (alias ``"bisect"``).
    """
    if ctx is None:
        raise DomainError("a PrecisionContext is required")
    try:
        method = _METHOD_ALIASES[method]
    except KeyError:
        raise DomainError(f"unknown lambda* method {method!r}") from None
    r = _check_index(r)
    return _lambda_cached(r, method, ctx.digits, ctx.guard)


def elliptic_alpha(r, ctx: PrecisionContext, method: str = THETA) -> mpfr:
    """alpha(r) = pi/(4K^2) - sqrt(r) (E/K - 1) at k = lambda*(r)."""
    r = _check_index(r)
    k = lambda_star(r, method, ctx)
    with ctx.local():
        K, E = ellip_K_E(k, ctx)
        return pi_reference(ctx) / (4 * K * K) - _sqrt_index(r, ctx) * (E / K - 1)

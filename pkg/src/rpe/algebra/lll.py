"""Exact integral LLL reduction and minimal-polynomial recognition."""

from __future__ import annotations

from fractions import Fraction

import gmpy2
from gmpy2 import mpfr

from ..errors import DomainError
from ..precision import PrecisionContext, real
from .poly import IntPolynomial

DEFAULT_DELTA = Fraction(99, 100)


def _dot(u, v) -> int:
    return sum(a * b for a, b in zip(u, v))


def lll_reduce(basis, delta=DEFAULT_DELTA) -> list[list[int]]:
    """LLL-reduce the rows of ``basis`` with Lovasz parameter ``delta``.

    All-integer variant: Gram-Schmidt data is carried as the integers
    d_i (Gram determinants) and lambda_{k,j} = d_{j+1} mu_{k,j}, so every
    division is exact.
    """
    delta = Fraction(delta)
    if not Fraction(1, 4) < delta < 1:
        raise DomainError("delta must lie in (1/4, 1)")
    p, q = delta.numerator, delta.denominator
    b = [[int(v) for v in row] for row in basis]
    n = len(b)
    if n == 0:
        return []
    # 1-based bookkeeping: d[0] = 1, d[i] belongs to row i-1
    d = [1] + [0] * n
    lam = [[0] * n for _ in range(n)]

    def red(k: int, l: int) -> None:
        if 2 * abs(lam[k][l]) > d[l + 1]:
            r = (2 * lam[k][l] + d[l + 1]) // (2 * d[l + 1])
            b[k] = [x - r * y for x, y in zip(b[k], b[l])]
            lam[k][l] -= r * d[l + 1]
            for i in range(l):
                lam[k][i] -= r * lam[l][i]

    def swap(k: int) -> None:
        b[k], b[k - 1] = b[k - 1], b[k]
        for j in range(k - 1):
            lam[k][j], lam[k - 1][j] = lam[k - 1][j], lam[k][j]
        lk = lam[k][k - 1]
        B = (d[k - 1] * d[k + 1] + lk * lk) // d[k]
        for i in range(k + 1, kmax + 1):
            t = lam[i][k]
            lam[i][k] = (d[k + 1] * lam[i][k - 1] - lk * t) // d[k]
            lam[i][k - 1] = (B * t + lk * lam[i][k]) // d[k + 1]
        d[k] = B

    def gram_schmidt_row(k: int) -> None:
        for j in range(k + 1):
            u = _dot(b[k], b[j])
            for i in range(j):
                u = (d[i + 1] * u - lam[k][i] * lam[j][i]) // d[i]
            if j < k:
                lam[k][j] = u
            else:
                if u == 0:
                    raise DomainError("basis rows are linearly dependent")
                d[k + 1] = u

    gram_schmidt_row(0)
    k, kmax = 1, 0
    while k < n:
        if k > kmax:
            kmax = k
            gram_schmidt_row(k)
        red(k, k - 1)
        lk = lam[k][k - 1]
        if q * d[k + 1] * d[k - 1] < p * d[k] * d[k] - q * lk * lk:
            swap(k)
            k = max(1, k - 1)
            continue
        for l in range(k - 2, -1, -1):
            red(k, l)
        k += 1
    return b


def _round_int(x: mpfr) -> int:
    return int(gmpy2.rint(x))


def recognize_min_poly(v, max_degree: int, ctx: PrecisionContext) -> IntPolynomial | None:
    """Find a primitive integer polynomial of least degree vanishing at ``v``.

    Uses the lattice spanned by rows [round(10^m v^i), e_i], m = P - 10, and
    accepts a reduced row only when |q(v)| < 10**(-P/2) and its height H
    satisfies H**(2(d+1)) < 10**m. Generic short vectors of a (d+1)-dim
    lattice have H near 10**(m/(d+1)) and small |q(v)| too, so without the
    height test every degree >= 2 would report a spurious relation.
    """
    if max_degree < 1:
        raise DomainError("max_degree must be >= 1")
    m = ctx.digits - 10
    with ctx.local():
        v = real(v, ctx)
        scale = mpfr(10) ** m
        accept = mpfr(10) ** -(ctx.digits / 2)
        powers = [mpfr(1)]
        for _ in range(max_degree):
            powers.append(powers[-1] * v)
        for deg in range(1, max_degree + 1):
            rows = []
            for i in range(deg + 1):
                unit = [0] * (deg + 1)
                unit[i] = 1
                rows.append([_round_int(scale * powers[i])] + unit)
            found = []
            for row in lll_reduce(rows):
                poly = IntPolynomial(tuple(row[1:]))
                if poly.is_zero() or poly.degree < 1:
                    continue
                height = max(abs(c) for c in poly.coeffs)
                if height ** (2 * (deg + 1)) >= 10**m:
                    continue
                if abs(poly(v)) < accept:
                    found.append(poly.primitive())
            if found:
                return min(found, key=lambda f: (f.degree, sum(abs(c) for c in f.coeffs)))
    return None

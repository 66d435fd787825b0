"""Exact integer polynomials and certified real-root refinement."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce

from gmpy2 import mpfr, mpq

from ..errors import DomainError
from ..precision import PrecisionContext


@dataclass(frozen=True)
class IntPolynomial:
    """Integer polynomial, coefficients in ascending degree order."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        c = [int(v) for v in self.coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def from_text(cls, line: str) -> "IntPolynomial":
        """Parse ascending, whitespace-separated decimal integer coefficients."""
        try:
            return cls(tuple(int(tok) for tok in line.split()))
        except ValueError:
            raise DomainError(f"bad polynomial line: {line!r}") from None

    def to_text(self) -> str:
        return " ".join(str(c) for c in self.coeffs) if self.coeffs else "0"

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def content(self) -> int:
        return reduce(math.gcd, self.coeffs, 0)

    def primitive(self) -> "IntPolynomial":
        """Divide out the content and make the leading coefficient positive."""
        if self.is_zero():
            return self
        g = self.content()
        if self.coeffs[-1] < 0:
            g = -g
        return IntPolynomial(tuple(c // g for c in self.coeffs))

    def derivative(self) -> "IntPolynomial":
        return IntPolynomial(tuple(i * c for i, c in enumerate(self.coeffs))[1:])

    def __neg__(self) -> "IntPolynomial":
        return IntPolynomial(tuple(-c for c in self.coeffs))

    def __call__(self, x):
        acc = 0 * x
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __str__(self) -> str:
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}" if i == 0 else f"{c}*x" if i == 1 else f"{c}*x^{i}")
        return " + ".join(terms) if terms else "0"


@dataclass(frozen=True)
class RootSpec:
    """The ``index``-th real root (1-based, ascending) of ``poly``."""

    poly: IntPolynomial
    index: int


@dataclass(frozen=True)
class RealRoot:
    lo: Fraction
    hi: Fraction
    value: mpfr


# --- rational polynomial helpers (lists of Fractions, ascending) ---


def _trim(p: list) -> list:
    while p and p[-1] == 0:
        p.pop()
    return p


def _rem(a: list, b: list) -> list:
    a = list(a)
    db, lead = len(b) - 1, b[-1]
    while len(a) - 1 >= db and a:
        factor = a[-1] / lead
        shift = len(a) - 1 - db
        for i, c in enumerate(b):
            a[shift + i] -= factor * c
        a.pop()
        _trim(a)
    return a


def _gcd(a: list, b: list) -> list:
    while b:
        a, b = b, _rem(a, b)
    return [c / a[-1] for c in a]


def _quo(a: list, b: list) -> list:
    a = list(a)
    db, lead = len(b) - 1, b[-1]
    q = [Fraction(0)] * max(len(a) - db, 1)
    while len(a) - 1 >= db and a:
        factor = a[-1] / lead
        shift = len(a) - 1 - db
        q[shift] = factor
        for i, c in enumerate(b):
            a[shift + i] -= factor * c
        a.pop()
    return _trim(q)


def _eval_exact(p: list, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def squarefree_part(p: IntPolynomial) -> IntPolynomial:
    f = [Fraction(c) for c in p.coeffs]
    g = _gcd(f, [Fraction(c) for c in p.derivative().coeffs]) if p.degree > 0 else [Fraction(1)]
    q = _quo(f, g)
    den = reduce(math.lcm, (c.denominator for c in q), 1)
    return IntPolynomial(tuple(int(c * den) for c in q)).primitive()


def sturm_sequence(p: IntPolynomial) -> list[list[Fraction]]:
    f0 = [Fraction(c) for c in p.coeffs]
    seq = [f0, [Fraction(c) for c in p.derivative().coeffs]]
    while seq[-1] and len(seq[-1]) > 1:
        r = _rem(seq[-2], seq[-1])
        if not r:
            break
        seq.append([-c for c in r])
    return [s for s in seq if s]


def _variations(seq: list[list[Fraction]], x: Fraction) -> int:
    signs = [v for v in (_eval_exact(s, x) for s in seq) if v != 0]
    return sum(1 for u, v in zip(signs, signs[1:]) if (u > 0) != (v > 0))


def count_real_roots(p: IntPolynomial, lo: Fraction | None = None, hi: Fraction | None = None) -> int:
    """Distinct real roots in (lo, hi]; the whole line when bounds are omitted."""
    sq = squarefree_part(p)
    if sq.degree < 1:
        return 0
    seq = sturm_sequence(sq)
    bound = _cauchy_bound(sq)
    lo = -bound if lo is None else lo
    hi = bound if hi is None else hi
    return _variations(seq, lo) - _variations(seq, hi)


def _cauchy_bound(p: IntPolynomial) -> Fraction:
    lead = abs(p.coeffs[-1])
    return 1 + Fraction(max(abs(c) for c in p.coeffs[:-1]), lead) if p.degree > 0 else Fraction(1)


def _isolate(sq: IntPolynomial) -> list[tuple[Fraction, Fraction]]:
    seq = sturm_sequence(sq)
    bound = _cauchy_bound(sq)
    out = []
    stack = [(-bound, bound, _variations(seq, -bound) - _variations(seq, bound))]
    while stack:
        lo, hi, n = stack.pop()
        if n == 0:
            continue
        if n == 1:
            out.append((lo, hi))
            continue
        mid = (lo + hi) / 2
        v_mid = _variations(seq, mid)
        stack.append((lo, mid, _variations(seq, lo) - v_mid))
        stack.append((mid, hi, v_mid - _variations(seq, hi)))
    return sorted(out)


def _refine(sq: IntPolynomial, lo: Fraction, hi: Fraction, ctx: PrecisionContext) -> mpfr:
    """Safeguarded Newton on a bracket containing exactly one simple root."""
    dp = sq.derivative()
    if sq(hi) == 0:
        with ctx.local():
            return mpfr(mpq(hi.numerator, hi.denominator))
    # shrink exactly until the bracket excludes zero and is relatively narrow;
    # signs are read at hi because lo may itself be a neighbouring root
    s_hi = sq(hi) > 0
    while lo < 0 < hi or (hi - lo) > max(abs(lo), abs(hi)) / 4:
        mid = (lo + hi) / 2
        f_mid = sq(mid)
        if f_mid == 0:
            with ctx.local():
                return mpfr(mpq(mid.numerator, mid.denominator))
        if (f_mid > 0) != s_hi:
            lo = mid
        else:
            hi = mid
    with ctx.local():
        a = mpfr(mpq(lo.numerator, lo.denominator))
        b = mpfr(mpq(hi.numerator, hi.denominator))
        x = (a + b) / 2
        eps = mpfr(2) ** (8 - ctx.bits)
        for _ in range(20 * ctx.bits):
            fx = sq(x)
            if fx == 0:
                return x
            if (fx > 0) != s_hi:
                a = x
            else:
                b = x
            d = dp(x)
            nxt = x - fx / d if d != 0 else a
            if not a < nxt < b:
                nxt = (a + b) / 2
            if abs(nxt - x) <= eps * abs(x) or b - a <= eps * abs(x):
                return nxt
            x = nxt
        return x


def real_roots(p: IntPolynomial, ctx: PrecisionContext) -> list[RealRoot]:
    """Isolate and refine all distinct real roots, ascending.

    Each refined root rho satisfies |p(rho)| < |p'(rho)| 10**-(P-20) for the
    square-free part of ``p``.
    """
    if p.is_zero():
        raise DomainError("zero polynomial has no isolated roots")
    sq = squarefree_part(p)
    if sq.degree < 1:
        return []
    out = []
    for lo, hi in _isolate(sq):
        value = _refine(sq, lo, hi, ctx)
        out.append(RealRoot(lo, hi, value))
    return out


def root_by_spec(spec: RootSpec, ctx: PrecisionContext) -> mpfr:
    roots = real_roots(spec.poly, ctx)
    if not 1 <= spec.index <= len(roots):
        raise DomainError(f"root index {spec.index} out of range: {len(roots)} real roots")
    return roots[spec.index - 1].value


def residual_certified(p: IntPolynomial, rho: mpfr, ctx: PrecisionContext) -> bool:
    sq = squarefree_part(p)
    with ctx.local():
        return abs(sq(rho)) < abs(sq.derivative()(rho)) * ctx.tolerance()

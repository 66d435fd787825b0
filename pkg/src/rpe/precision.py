"""Arbitrary-precision scalars and the precision contract.

Integers and rationals are plain :class:`int` and :class:`fractions.Fraction`.
Reals and complexes are ``gmpy2.mpfr`` / ``gmpy2.mpc`` computed inside the
MPFR context described by a :class:`PrecisionContext`.

A context requesting ``P`` decimal digits works with
``ceil((P + guard) * log2(10)) + 64`` bits, so each primitive operation is
accurate to roughly ``10**(guard - P)`` relative. Callers compare results
with the looser tolerance ``10**-(P - 20)``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import gmpy2
from gmpy2 import mpc, mpfr, mpq

from .errors import DomainError, RangeError

PrecReal = mpfr
PrecComplex = mpc
BigInt = int
BigRational = Fraction

LOG2_10 = math.log2(10)
MAX_GUARD = 20

_DECIMAL_RE = re.compile(r"^[+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?$")


@dataclass(frozen=True)
class PrecisionContext:
    """Requested decimal digits plus a fixed number of guard digits."""

    digits: int
    guard: int = 10

    def __post_init__(self):
        if self.digits < 1:
            raise DomainError(f"digits must be positive, got {self.digits}")
        if not 0 <= self.guard <= MAX_GUARD:
            raise DomainError(f"guard must lie in [0, {MAX_GUARD}], got {self.guard}")

    @property
    def bits(self) -> int:
        return math.ceil((self.digits + self.guard) * LOG2_10) + 64

    def local(self):
        """MPFR context manager; use as ``with ctx.local(): ...``."""
        return gmpy2.context(
            precision=self.bits,
            real_prec=self.bits,
            imag_prec=self.bits,
            emax=gmpy2.get_emax_max(),
            emin=gmpy2.get_emin_min(),
        )

    def tolerance(self) -> mpfr:
        """Comparison tolerance 10**-(P - 20) used by every equality check."""
        with self.local():
            return mpfr(10) ** -(self.digits - 20)

    def with_digits(self, digits: int) -> "PrecisionContext":
        return PrecisionContext(digits, self.guard)

    def doubled(self) -> "PrecisionContext":
        return self.with_digits(2 * self.digits)


def real(value, ctx: PrecisionContext) -> mpfr:
    """Coerce int, Fraction, decimal string or mpfr into a real under ``ctx``."""
    with ctx.local():
        if isinstance(value, Fraction):
            return mpfr(mpq(value.numerator, value.denominator))
        if isinstance(value, str):
            return parse_real(value, ctx)
        return mpfr(value)


def nth_root_real(x, n: int, ctx: PrecisionContext) -> mpfr:
    """Real n-th root; odd roots of negative numbers are negative."""
    if n < 1:
        raise DomainError(f"root index must be >= 1, got {n}")
    with ctx.local():
        x = real(x, ctx)
        if x < 0 and n % 2 == 0:
            raise DomainError(f"even root (n={n}) of negative value")
        return gmpy2.rootn(x, n)


def exp_real(x, ctx: PrecisionContext) -> mpfr:
    with ctx.local():
        x = real(x, ctx)
        if abs(x) > 10**6:
            raise RangeError("exp argument exceeds 1e6 in magnitude")
        y = gmpy2.exp(x)
        if gmpy2.is_infinite(y) or y == 0:
            raise RangeError("exp result outside the exponent range")
        return y


def ln_real(x, ctx: PrecisionContext) -> mpfr:
    with ctx.local():
        x = real(x, ctx)
        if x <= 0:
            raise DomainError("logarithm of a non-positive value")
        return gmpy2.log(x)


def log10_abs(x, ctx: PrecisionContext) -> mpfr:
    with ctx.local():
        x = abs(real(x, ctx))
        if x == 0:
            raise DomainError("log10 of zero")
        return gmpy2.log10(x)


def parse_real(text: str, ctx: PrecisionContext) -> mpfr:
    """Parse ``[sign]digits[.digits][e[sign]exp]`` correctly rounded."""
    s = text.strip()
    if not _DECIMAL_RE.match(s):
        raise DomainError(f"not a decimal number: {text!r}")
    with ctx.local():
        return mpfr(s)


def format_real(x: mpfr, digits: int, ctx: PrecisionContext | None = None) -> str:
    """Print ``min(P, digits)`` significant digits, ties to even.

    Plain positional notation is used while the decimal exponent stays in
    [-6, digits); otherwise ``d.ddde±N``.
    """
    if ctx is not None:
        digits = min(digits, ctx.digits)
    if digits < 1:
        raise DomainError("need at least one significant digit")
    if gmpy2.is_nan(x) or gmpy2.is_infinite(x):
        raise DomainError(f"cannot format non-finite value {x}")
    if x == 0:
        return "0"
    if not isinstance(x, mpfr):
        x = mpfr(x, max(53, math.ceil(digits * LOG2_10) + 16))
    mant, exp10, _ = x.digits(10, digits)
    sign = ""
    if mant.startswith("-"):
        sign, mant = "-", mant[1:]
    point = exp10  # value = 0.mant * 10**exp10
    if -6 < point <= digits:
        if point <= 0:
            body = "0." + "0" * (-point) + mant
        elif point >= len(mant):
            body = mant + "0" * (point - len(mant))
        else:
            body = mant[:point] + "." + mant[point:]
        return sign + body
    tail = mant[1:]
    body = mant[0] + ("." + tail if tail else "")
    return f"{sign}{body}e{point - 1:+d}"


def format_residual(x: mpfr) -> str:
    """Short scientific form for residuals and tolerances."""
    if x == 0:
        return "0"
    if not gmpy2.is_finite(x):
        return "nan" if gmpy2.is_nan(x) else "inf"
    mant, exp10, _ = abs(x).digits(10, 6)
    return f"{mant[0]}.{mant[1:]}e{exp10 - 1:+d}"


def agree(x, y, ctx: PrecisionContext, relative: bool = False) -> bool:
    with ctx.local():
        diff = abs(mpfr(x) - mpfr(y))
        tol = ctx.tolerance()
        if relative:
            tol *= max(abs(mpfr(x)), abs(mpfr(y)))
        return diff < tol


def stabilized(fn: Callable[[PrecisionContext], mpfr], ctx: PrecisionContext) -> mpfr:
    """Run ``fn`` at P and 2P; return the 2P value once both agree.

    Raises :class:`RangeError` if the two runs disagree beyond 10**-(P-20)
    relative, which signals an unstable composite computation.
    """
    low = fn(ctx)
    high = fn(ctx.doubled())
    if not agree(low, high, ctx, relative=True):
        raise RangeError("result did not stabilize between P and 2P digits")
    with ctx.local():
        return mpfr(high)

"""Published closed forms for the r = 163 and r = 243 series, loaded from package data."""

from __future__ import annotations

from functools import lru_cache
from importlib import resources

import gmpy2
from gmpy2 import mpfr

from .algebra.poly import IntPolynomial, RootSpec, root_by_spec
from .algebra.radical import RadicalExpr, parse_radical
from .precision import PrecisionContext, real

CHUDNOVSKY_Z_DENOM = 53360


def _read(name: str) -> str:
    return resources.files("rpe.data").joinpath(name).read_text()


@lru_cache(maxsize=None)
def radical(name: str) -> RadicalExpr:
    """One of ``"J163"``, ``"T163"``, ``"lambda163"``."""
    return parse_radical(_read(f"{name}.rad"))


def read_polynomials(text: str) -> list[IntPolynomial]:
    return [IntPolynomial.from_text(ln) for ln in text.splitlines() if ln.strip()]


@lru_cache(maxsize=None)
def r243_polynomials() -> tuple[IntPolynomial, IntPolynomial, IntPolynomial]:
    """Minimal polynomials of z, -a and -b for the r = 243 series."""
    z, a, b = read_polynomials(_read("r243.poly"))
    return z, a, b


def g163_cubic() -> IntPolynomial:
    return read_polynomials(_read("g163.poly"))[0]


def r243_params(ctx: PrecisionContext, indices=(1, 1, 1)):
    """(z, a, b) from the Root specs: z = root_1, a = -root_1, b = -root_1."""
    zp, ap, bp = r243_polynomials()
    z = root_by_spec(RootSpec(zp, indices[0]), ctx)
    a = root_by_spec(RootSpec(ap, indices[1]), ctx)
    b = root_by_spec(RootSpec(bp, indices[2]), ctx)
    with ctx.local():
        return +z, -a, -b


def alpha163_closed_form(x, ctx: PrecisionContext, middle_sign: int = 1) -> mpfr:
    """13591409 sqrt(1-4x)/(426880 sqrt(10005)) + sqrt(163) sqrt(1-x)/(8x-2) + sqrt(163)/2."""
    with ctx.local():
        x = real(x, ctx)
        s163 = gmpy2.sqrt(mpfr(163))
        first = 13591409 * gmpy2.sqrt(1 - 4 * x) / (426880 * gmpy2.sqrt(mpfr(10005)))
        middle = s163 * gmpy2.sqrt(1 - x) / (8 * x - 2)
        return first + middle_sign * middle + s163 / 2


def chudnovsky_normalized(ctx: PrecisionContext) -> tuple[mpfr, mpfr, mpfr]:
    """(z, a, b) of the Chudnovsky series rescaled to sum to 1/pi."""
    with ctx.local():
        s = gmpy2.sqrt(mpfr(10005))
        z = -1 / mpfr(CHUDNOVSKY_Z_DENOM) ** 3
        return z, 13591409 / (426880 * s), 272570067 / (213440 * s)

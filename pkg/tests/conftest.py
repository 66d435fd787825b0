import os
import sys

import mpmath
import pytest
from gmpy2 import mpfr

from rpe.precision import PrecisionContext

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))


@pytest.fixture
def ctx():
    return PrecisionContext(60)


def P(digits: int) -> PrecisionContext:
    return PrecisionContext(digits)


def to_mp(x: mpfr, dps: int) -> mpmath.mpf:
    """Carry an mpfr into mpmath through its exact binary representation."""
    mpmath.mp.dps = dps
    m, e = x.as_mantissa_exp()
    return mpmath.ldexp(mpmath.mpf(int(m)), int(e))


def run_cli(*args, env=None):
    import subprocess

    full_env = dict(os.environ)
    full_env.pop("RPE_DIGITS", None)
    full_env.update(env or {})
    return subprocess.run(
        [sys.executable, "-m", "rpe", *args], capture_output=True, text=True, env=full_env, timeout=600
    )


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for n in range(1, 12):
        terminalreporter.write_line(results.get(n, f"CRITERION {n:>2}: NOT RUN"))

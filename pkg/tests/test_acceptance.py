"""Acceptance criteria 1-11, each at its stated tolerance.

Every test records one ``CRITERION n: PASS|FAIL ...`` line; the lines are
printed in the pytest terminal summary, or directly when this file is run
as a script.
"""

import time
from fractions import Fraction

import gmpy2
import pytest
from gmpy2 import mpfr

from rpe.chudnovsky import binsplit_parallel, chudnovsky_partial_sum, eval_chudnovsky_binsplit
from rpe.closed_forms import chudnovsky_normalized
from rpe.elliptic import complementary, ellip_K_E, pi_reference
from rpe.numtheory import class_number_table, fundamental_range, heegner_numbers
from rpe.params import SeriesParams, digits_per_term
from rpe.precision import PrecisionContext, format_real
from rpe.series import check_bailey, check_K_generating_function, partial_sum
from rpe.verify import verify_alpha163, verify_bg163, verify_g163, verify_lambda163, verify_r243

from conftest import run_cli

RESULTS: dict[int, str] = {}


def record(n: int, ok: bool, detail: str) -> None:
    RESULTS[n] = f"CRITERION {n:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
    print(RESULTS[n])
    assert ok, RESULTS[n]


def _chudnovsky_series(ctx):
    z, a, b = chudnovsky_normalized(ctx)
    return SeriesParams(None, "negative", z, a, b)


@pytest.mark.slow
def test_criterion_01_chudnovsky_100k():
    t0 = time.perf_counter()
    res = run_cli("pi", "--method", "chudnovsky", "--digits", "100000", "--workers", "4")
    elapsed = time.perf_counter() - t0
    c = PrecisionContext(100000)
    ref = format_real(pi_reference(c), 100000, c)
    got = res.stdout.strip()
    match = next((i for i, (u, v) in enumerate(zip(got, ref)) if u != v), min(len(got), len(ref)))
    digits_ok = res.returncode == 0 and got[:99996] == ref[:99996]  # 99,995 digits plus the point
    record(1, digits_ok and elapsed < 60, f"matching chars={match}, wall={elapsed:.2f}s (limit 60s)")


def test_criterion_02_chudnovsky_digits_per_term():
    c = PrecisionContext(1500)
    p = _chudnovsky_series(c)
    dpt = digits_per_term(p.z, c)
    pi = pi_reference(c)
    worst = None
    with c.local():
        s, t = mpfr(0), mpfr(1)
        for n in range(100):
            s += t * (p.a + p.b * n)
            t = t * p.z * ((6 * n + 1) * (6 * n + 3) * (6 * n + 5)) / (216 * (n + 1) ** 3)
            N = n + 1  # terms summed
            slack = -gmpy2.log10(abs(pi * s - 1)) - (14 * N - 3)
            worst = slack if worst is None or slack < worst else worst
    ok = abs(dpt - mpfr("14.18")) <= mpfr("0.01") and worst >= 0
    record(2, ok, f"-log10|z|={float(dpt):.5f}, min slack over N<=100 = {float(worst):.3f} digits")


def test_criterion_03_bagis_glasser_series():
    c = PrecisionContext(1000)
    r = verify_bg163(c)
    res = r.check("bg163.series_times_pi").residual
    N = int(r.metadata["series.terms"])
    dpt = float(r.metadata["series.realized_digits_per_term"])
    ok = res < mpfr(10) ** -980 and N <= 34 and 31.5 <= dpt <= 32.5 and r.overall
    record(3, ok, f"|pi*S-1|={r.check('bg163.series_times_pi').to_dict()['residual']}, terms={N}, dpt={dpt}")


def test_criterion_04_lambda163():
    parts, ok = [], True
    for P in (120, 300, 1000):
        r = verify_lambda163(PrecisionContext(P))
        ok &= r.check("lambda163.theta_vs_bisect").passed and r.check("lambda163.fixed_point").passed
        parts.append(f"P={P}:{'ok' if r.overall else 'bad'}")
    record(4, ok, " ".join(parts))


def test_criterion_05_alpha163():
    parts, ok = [], True
    for P in (120, 300, 1000):
        r = verify_alpha163(PrecisionContext(P))
        ok &= r.overall
        parts.append(f"P={P}:{r.check('alpha163.closed_form').to_dict()['residual']}")
    record(5, ok, " ".join(parts))


def test_criterion_06_J_T_match():
    r = verify_bg163(PrecisionContext(300))
    j, t = r.check("bg163.J_matches_closed_form"), r.check("bg163.T_matches_closed_form")
    record(
        6,
        j.passed and t.passed,
        f"J residual={j.to_dict()['residual']} branch={r.metadata['J_matches_closed_form.branch']}; "
        f"T residual={t.to_dict()['residual']} branch={r.metadata['T_matches_closed_form.branch']}",
    )


def test_criterion_07_r243_recovery():
    r = verify_r243(PrecisionContext(600))
    printed = "6561 7046099782711303104000 -8241190499340288000000 4245232549888000000000"
    rec = r.metadata["recognized_z_poly"] == printed and r.metadata["recognition_digits"] == "600"
    ok = rec and r.check("r243.series_times_pi").passed and r.check("r243.digits_per_term").passed
    record(7, ok, f"cubic recovered={rec}, series={r.check('r243.series_times_pi').to_dict()['residual']}, "
           f"dpt={r.metadata['digits_per_term']}")


def test_criterion_08_identity_suites():
    c = PrecisionContext(200)
    tol = c.tolerance()
    bailey = [Fraction(n, 1000) for n in (-120, -90, -60, -30, -10, -1, 1, 5, 15, 25)]
    kgf = [Fraction(n, 10) for n in range(10)]
    wb = max(check_bailey(x, c) for x in bailey)
    wk = max(check_K_generating_function(x, c) for x in kgf)
    with c.local():
        pi = pi_reference(c)
        wl = mpfr(0)
        for i in range(10):
            k = mpfr(10) ** (mpfr(-9) + mpfr(i) * mpfr("8.9") / 9)
            kp = complementary(k, c)
            K, E = ellip_K_E(k, c)
            Kp, Ep = ellip_K_E(kp, c)
            wl = max(wl, abs(E * Kp + Ep * K - K * Kp - pi / 2))
    ok = wb < tol and wk < tol and wl < tol
    fmt = lambda v: f"{float(v):.2e}" if v else "0"
    record(8, ok, f"max residuals: Bailey={fmt(wb)} K-gen={fmt(wk)} Legendre={fmt(wl)} (tol 1e-180)")


def test_criterion_09_class_numbers():
    t0 = time.perf_counter()
    ds = fundamental_range(3, 499)
    h, forms = class_number_table(ds)
    h163 = int(h[ds.index(163)])
    heeg = heegner_numbers(200)
    elapsed = time.perf_counter() - t0
    ok = bool((h == forms).all()) and h163 == 1 and heeg == [3, 4, 7, 8, 11, 19, 43, 67, 163] and elapsed < 10
    record(9, ok, f"{len(ds)} discriminants agree={bool((h == forms).all())}, h(-163)={h163}, "
           f"heegner={heeg}, {elapsed:.2f}s")


def test_criterion_10_oracle_equivalence():
    c = PrecisionContext(200)
    p = _chudnovsky_series(c)
    with c.local():
        worst = max(abs(chudnovsky_partial_sum(N, c) - partial_sum(p, N, c)) for N in range(1, 51))
    same = all(binsplit_parallel(500, w) == binsplit_parallel(500, 1) for w in (2, 3, 4))
    same &= eval_chudnovsky_binsplit(5000, 4) == eval_chudnovsky_binsplit(5000, 1)
    record(10, worst < c.tolerance() and same, f"max |binsplit - recurrence| = {float(worst):.2e}, worker-independent={same}")


def test_criterion_11_g163():
    r = verify_g163(PrecisionContext(300))
    record(11, r.check("g163.cubic_residual").passed, f"cubic residual={r.check('g163.cubic_residual').to_dict()['residual']}")


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q"]))

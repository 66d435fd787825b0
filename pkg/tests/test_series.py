from fractions import Fraction
from math import factorial

import gmpy2
import pytest
from gmpy2 import mpfr

from rpe.chudnovsky import (
    BinSplitNode,
    binsplit,
    binsplit_parallel,
    chudnovsky_partial_sum,
    eval_chudnovsky_binsplit,
    terms_for_digits,
)
from rpe.closed_forms import chudnovsky_normalized
from rpe.elliptic import pi_reference
from rpe.errors import DivergentSeriesError, DomainError
from rpe.params import SeriesParams, params_positive, x_from_k
from rpe.precision import PrecisionContext, format_real
from rpe.series import (
    check_bailey,
    check_K_generating_function,
    eval_level1_series,
    level1_ratio,
    level1_weights,
    partial_sum,
    select_terms,
    truncation_bound,
)

P200 = PrecisionContext(200)
BAILEY_GRID = [Fraction(n, 1000) for n in (-120, -90, -60, -30, -10, -1, 1, 5, 15, 25)]
KGF_GRID = [Fraction(n, 10) for n in range(10)]


def _chudnovsky_params(ctx):
    z, a, b = chudnovsky_normalized(ctx)
    return SeriesParams(None, "negative", z, a, b)


def _poch(q: Fraction, n: int) -> Fraction:
    out = Fraction(1)
    for i in range(n):
        out *= q + i
    return out


def test_level1_ratio_matches_pochhammer_definition():
    for n in range(25):
        direct = _poch(Fraction(1, 6), n + 1) * _poch(Fraction(1, 2), n + 1) * _poch(Fraction(5, 6), n + 1)
        direct /= factorial(n + 1) ** 3
        prev = _poch(Fraction(1, 6), n) * _poch(Fraction(1, 2), n) * _poch(Fraction(5, 6), n) / factorial(n) ** 3
        assert level1_ratio(n) == direct / prev
        assert level1_ratio(n) < 1


def test_level1_weights_against_exact():
    c = PrecisionContext(60)
    z = Fraction(-1, 7)
    w = level1_weights(z, 12, c)
    exact = Fraction(1)
    with c.local():
        for n in range(12):
            assert abs(w[n] - mpfr(gmpy2.mpq(exact))) <= abs(mpfr(gmpy2.mpq(exact))) * c.tolerance()
            exact *= level1_ratio(n) * z


def test_z_zero_sums_to_a():
    p = SeriesParams(None, "positive", mpfr(0), mpfr(3), mpfr(11))
    assert eval_level1_series(p, 50, PrecisionContext(50)) == 3
    assert truncation_bound(p, 5, PrecisionContext(50)).bound == 0


def test_divergent_input_rejected():
    p = SeriesParams(None, "positive", mpfr(1), mpfr(1), mpfr(1))
    with pytest.raises(DivergentSeriesError):
        eval_level1_series(p, 20, PrecisionContext(30))
    with pytest.raises(DomainError):
        eval_level1_series(SeriesParams(None, "negative", mpfr(-2), mpfr(1), mpfr(1)), 20, PrecisionContext(30))


def test_chudnovsky_series_1000_digits():
    c = PrecisionContext(1000)
    s = eval_level1_series(_chudnovsky_params(c), 1000, c)
    with c.local():
        assert abs(s - 1 / pi_reference(c)) < mpfr(10) ** -1000


def test_r163_positive_series_1000_digits():
    c = PrecisionContext(1000)
    p = params_positive(163, c)
    N = select_terms(p, 1000, c)
    assert N <= -(-1000 // 32) + 2 + 2
    with c.local():
        assert abs(partial_sum(p, N, c) - 1 / pi_reference(c)) < mpfr(10) ** -1000


def test_truncation_bound_examples():
    c = PrecisionContext(100)
    assert truncation_bound(_chudnovsky_params(c), 2, c).bound < mpfr(10) ** -28


@pytest.mark.parametrize("N", [1, 2, 5, 10])
def test_truncation_bound_dominates_true_tail(N):
    c = PrecisionContext(300)
    for p in (_chudnovsky_params(c), params_positive(7, c)):
        with c.local():
            tail = abs(partial_sum(p, 400, c) - partial_sum(p, N, c))
            assert truncation_bound(p, N, c).bound >= tail


def _correct_digits(p, count, c):
    """D[m] = correct digits of pi after summing terms n = 0..m."""
    pi = pi_reference(c)
    out = []
    with c.local():
        s, t = mpfr(0), mpfr(1)
        for n in range(count):
            s += t * (p.a + p.b * n)
            t = t * p.z * ((6 * n + 1) * (6 * n + 3) * (6 * n + 5)) / (216 * (n + 1) ** 3)
            out.append(-gmpy2.log10(abs(pi * s - 1)))
    return out


def test_r163_realized_digits_per_term():
    # N is the last summed index, matching the sum_{n=0}^{N} convention
    c = PrecisionContext(2200)
    D = _correct_digits(params_positive(163, c), 61, c)
    for N in range(61):
        assert D[N] >= 31 * N, N
    # the first term alone is 0.15 digits short of 31; see the design notes
    assert 30.8 < D[0] < 31


def test_bailey_examples():
    assert check_bailey(0, P200) == 0
    for x in (Fraction(1, 100), Fraction(-1, 50)):
        assert check_bailey(x, P200) < mpfr(10) ** -180


def test_bailey_grid():
    for x in BAILEY_GRID:
        assert check_bailey(x, P200) < P200.tolerance(), x


def test_bailey_domain():
    # -1/2 has |w| = 1/2 but lies past the w = 1 fold at x = -1/8
    for x in (Fraction(1, 4), Fraction(1, 2), Fraction(-1, 2), Fraction(-1, 8), Fraction(1, 30), 1):
        with pytest.raises(DomainError):
            check_bailey(x, P200)


def test_K_generating_function_examples():
    c = PrecisionContext(50)
    assert check_K_generating_function(0, c) < c.tolerance()
    assert check_K_generating_function(Fraction(1, 4), P200) < mpfr(10) ** -180
    with P200.local():
        x = x_from_k(mpfr("0.3"), P200)
        k2 = (1 - gmpy2.sqrt(1 - x)) / 2
        assert abs(k2 - mpfr("0.3") ** 2) < P200.tolerance()
    assert check_K_generating_function(x, P200) < mpfr(10) ** -180
    with pytest.raises(DomainError):
        check_K_generating_function(1, c)
    with pytest.raises(DomainError):
        check_K_generating_function(-Fraction(1, 10), c)


def test_K_generating_function_grid():
    for x in KGF_GRID:
        assert check_K_generating_function(x, P200) < P200.tolerance(), x


def test_binsplit_merge_is_associative():
    a, b, c = binsplit(0, 7), binsplit(7, 20), binsplit(20, 33)
    assert a.merge(b).merge(c) == a.merge(b.merge(c)) == binsplit(0, 33)


@pytest.mark.parametrize("N", [1, 2, 3, 10, 17, 33, 50])
def test_binsplit_equals_forward_recurrence(N):
    c = P200
    p = _chudnovsky_params(c)
    with c.local():
        assert abs(chudnovsky_partial_sum(N, c) - partial_sum(p, N, c)) < c.tolerance()


def test_binsplit_exact_against_fractions():
    node = binsplit(0, 6)
    exact = Fraction(0)
    for k in range(6):
        num = factorial(6 * k) * (13591409 + 545140134 * k) * (-1) ** k
        den = factorial(3 * k) * factorial(k) ** 3 * 640320 ** (3 * k)
        exact += Fraction(num, den)
    # T/Q differs from the raw Chudnovsky sum only by the normalization folded in elsewhere
    assert Fraction(int(node.T), int(node.Q)) == exact


@pytest.mark.parametrize("workers", [1, 2, 3, 4])
def test_output_independent_of_workers(workers):
    ref = binsplit(0, 301)
    assert binsplit_parallel(301, workers) == ref
    assert eval_chudnovsky_binsplit(2000, workers) == eval_chudnovsky_binsplit(2000, 1)


def test_chudnovsky_50_digits():
    s = eval_chudnovsky_binsplit(50, 1)
    assert s == "3.1415926535897932384626433832795028841971693993751"
    assert s == format_real(pi_reference(PrecisionContext(50)), 50)
    with pytest.raises(ValueError):
        eval_chudnovsky_binsplit(0)


def test_terms_for_digits():
    assert terms_for_digits(1000) == 73
    assert isinstance(binsplit(0, 1), BinSplitNode)

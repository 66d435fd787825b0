import gmpy2
import pytest
from gmpy2 import mpfr

from rpe.closed_forms import chudnovsky_normalized, r243_params
from rpe.elliptic import THETA, lambda_star, pi_reference
from rpe.errors import DomainError, FamilyInapplicableError
from rpe.params import (
    NEGATIVE,
    POSITIVE,
    bg_coefficients,
    bg_J_T,
    borwein_coeffs,
    digits_per_term,
    params_negative,
    params_positive,
    x_from_k,
    x_of_index,
)
from rpe.precision import PrecisionContext, format_real
from rpe.series import partial_sum, select_terms, truncation_bound

P200 = PrecisionContext(200)
TOL180 = mpfr(10) ** -180


def test_x_from_k_examples():
    c = PrecisionContext(50)
    with c.local():
        assert abs(x_from_k(1 / gmpy2.sqrt(mpfr(2)), c) - 1) < c.tolerance()
        k = mpfr("1e-7")
        assert abs(x_from_k(k, c) / (4 * k * k) - 1) < mpfr("1e-13")
    x = x_of_index(163, PrecisionContext(60))
    assert format_real(x, 12) == "2.43774779968e-16"  # mpmath theta oracle
    with pytest.raises(DomainError):
        x_from_k(0, c)
    with pytest.raises(DomainError):
        x_from_k(1, c)


def test_x_is_one_only_at_r1():
    c = PrecisionContext(50)
    with c.local():
        assert abs(x_of_index(1, c) - 1) < c.tolerance()
        assert x_of_index(2, c) < 1


def test_positive_family_rejects_r1():
    with pytest.raises(FamilyInapplicableError):
        params_positive(1, PrecisionContext(50))


def test_positive_163_digits_per_term():
    p = params_positive(163, P200)
    assert p.family == POSITIVE
    assert 31.5 <= float(digits_per_term(p.z, P200)) <= 32.5


def test_negative_163_reproduces_chudnovsky_constants():
    p = params_negative(163, P200)
    z, a, b = chudnovsky_normalized(P200)
    with P200.local():
        assert abs(p.z - z) < TOL180
        assert abs(p.a - a) < TOL180
        assert abs(p.b - b) < TOL180
    assert format_real(digits_per_term(p.z, P200), 6) == "14.1816"
    with P200.local():
        assert abs(digits_per_term(p.z, P200) - 3 * gmpy2.log10(mpfr(53360))) < P200.tolerance()


def test_negative_243_matches_root_values():
    p = params_negative(243, P200)
    z, a, b = r243_params(P200)
    with P200.local():
        assert abs(p.z - z) < P200.tolerance()
        assert abs(p.b - b) < P200.tolerance()
        assert abs(p.a - a) < P200.tolerance()


def test_negative_family_needs_r_above_one():
    with pytest.raises(DomainError):
        params_negative(1, PrecisionContext(40))


@pytest.mark.parametrize("r", [2, 3, 4])
def test_negative_family_inapplicable_for_small_r(r):
    with pytest.raises(FamilyInapplicableError):
        params_negative(r, P200)


@pytest.mark.parametrize(
    "r,family",
    [(2, "pos"), (3, "pos"), (4, "pos"), (7, "pos"), (163, "pos"), (7, "neg"), (163, "neg")],
)
def test_series_sums_to_one_over_pi(r, family):
    p = params_positive(r, P200) if family == "pos" else params_negative(r, P200)
    N = select_terms(p, 190, P200)
    bound = truncation_bound(p, N, P200).bound
    with P200.local():
        err = abs(pi_reference(P200) * partial_sum(p, N, P200) - 1)
        assert err < max(bound * 4, P200.tolerance())
        assert p.b > 0 and abs(p.z) < 1


def test_duality_at_163_uses_one_x():
    pos, neg = params_positive(163, P200), params_negative(163, P200)
    x = x_of_index(163, P200)
    with P200.local():
        assert abs(pos.z - 27 * x * x / (4 - x) ** 3) < P200.tolerance()
        assert abs(neg.z + 27 * x / (1 - 4 * x) ** 3) < P200.tolerance()


def test_fixed_point_identity():
    x = x_of_index(163, P200)
    with P200.local():
        assert abs(-27 * x / (1 - 4 * x) ** 3 + mpfr(53360) ** -3) < P200.tolerance()


@pytest.mark.parametrize("r", [2, 7, 163])
def test_bg_round_trip(r):
    p = params_positive(r, P200)
    bg = bg_J_T(p, P200)
    assert bg.J == p.z and 0 < bg.J < 1
    a, b = bg_coefficients(bg.J, bg.T, r, P200)
    with P200.local():
        assert abs(a - p.a) < P200.tolerance()
        assert abs(b - p.b) < P200.tolerance()


def test_bg_needs_positive_family():
    with pytest.raises(DomainError):
        bg_J_T(params_negative(163, P200), P200)
    assert params_negative(163, P200).family == NEGATIVE


def test_borwein_coefficients_match_positive_family():
    p = params_positive(163, P200)
    f0 = borwein_coeffs(163, 0, P200)
    f1 = borwein_coeffs(163, 1, P200)
    with P200.local():
        sJ = gmpy2.sqrt(p.z)
        assert abs(f0 * sJ / p.a - 1) < P200.tolerance()
        assert abs((f1 - f0) * sJ / p.b - 1) < P200.tolerance()


def test_borwein_slope_vanishes_at_N1():
    c = PrecisionContext(50)
    with c.local():
        assert abs(borwein_coeffs(1, 1, c) - borwein_coeffs(1, 0, c)) < c.tolerance()


def test_digits_per_term_examples():
    c = PrecisionContext(50)
    with c.local():
        assert abs(digits_per_term(mpfr("0.1"), c) - 1) < c.tolerance()
        assert format_real(digits_per_term(-1 / mpfr(53360) ** 3, c), 6) == "14.1816"
    z243 = r243_params(PrecisionContext(60))[0]
    assert format_real(digits_per_term(z243, c), 4) == "18.03"
    for bad in (0, 1, -1, 2):
        with pytest.raises(DomainError):
            digits_per_term(bad, c)


def test_lambda_matches_between_params_and_elliptic():
    c = PrecisionContext(80)
    with c.local():
        k = lambda_star(163, THETA, c)
        assert x_of_index(163, c) == x_from_k(k, c)

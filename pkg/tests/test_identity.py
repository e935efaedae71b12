from fractions import Fraction

import pytest
from hypothesis import given, strategies as st
from mpmath import mp

from heckeconv.errors import DomainError, RegimeError
from heckeconv.identity import (
    BranchCase, IdentityParams, Regime, cusp_term, lhs_sum, rhs_parts, verify, weight_q, weight_q_cut_form,
    z_term,
)
from heckeconv.identity.exact import exact_applicable, lhs_over_pi, weight_q_over_pi, z_term_over_pi
from heckeconv.identity.regularized import (
    extrapolate_limit, interior_sum, regularized_limit, regularized_parts, regularized_value, regularized_weight,
    regularized_weight_parts, weight_limit_check,
)
from heckeconv.mpcore.context import precision

from conftest import close


# --------------------------------------------------------------------------- parameters

def test_weight_is_computed():
    assert IdentityParams.convergent(1, 3, 1).k == 8
    assert IdentityParams.convergent(1, 3, 1).regime is Regime.CONVERGENT
    assert IdentityParams.convergent("1/3", "1/3", "14/3").k == 12
    assert IdentityParams.convergent("1+i", "1+i", "1-i").k == 6


@pytest.mark.parametrize("args", [
    (0, 0, 1),          # excluded triple, weight 4
    (1, 2, 1),          # odd weight
    ("1/3", 0, 1),      # non-integer weight
    (-1, 5, 1),         # negative r1
    (2, 4, 0),          # d not positive
])
def test_convergent_regime_rejections(args):
    with pytest.raises(RegimeError):
        IdentityParams.convergent(*args)


@pytest.mark.parametrize("args", [
    (3, 5, -2),   # r1 < r2
    (7, 7, -1),   # d above -2
    (7, 7, -7),   # d below -r2 + 1
    (7, 6, -2),   # even r2
    (3, 3, -2),   # weight 4
])
def test_regularized_regime_rejections(args):
    with pytest.raises(RegimeError):
        IdentityParams.regularized(*args)


def test_regularized_regime_accepts_printed_cases():
    assert IdentityParams.regularized(7, 7, -2).k == 12
    assert IdentityParams.regularized(13, 11, -4).k == 18


def test_finite_support_flag():
    assert IdentityParams.convergent(3, 5, 2).finite_support
    assert not IdentityParams.convergent(2, 4, 1).finite_support


# --------------------------------------------------------------------------- weights

def test_branch_cases():
    p = IdentityParams.convergent(3, 5, 2)
    assert weight_q(p, -3, 7).branch_case is BranchCase.N1_NEGATIVE
    assert weight_q(p, 3, 7).branch_case is BranchCase.N1_BETWEEN
    assert weight_q(p, 9, 7).branch_case is BranchCase.N1_ABOVE_N
    with pytest.raises(DomainError):
        weight_q(p, 0, 7)
    with pytest.raises(DomainError):
        weight_q(p, 7, 7)


@pytest.mark.parametrize("n1", range(1, 7))
def test_jump_matches_closed_cut_form(n1):
    p = IdentityParams.convergent(3, 5, 2)
    assert close(weight_q(p, n1, 7).jump, weight_q_cut_form(p, n1, 7), mp.mpf(10) ** -25)


def test_cut_form_vanishes_off_the_cut():
    p = IdentityParams.convergent(3, 5, 2)
    assert weight_q_cut_form(p, -4, 7) == 0
    assert weight_q_cut_form(p, 11, 7) == 0


def test_cut_form_for_non_integer_parameters():
    p = IdentityParams.convergent("1/3", "1/3", "14/3")
    for n1 in (1, 2, 4):
        assert close(weight_q(p, n1, 5).jump, weight_q_cut_form(p, n1, 5), mp.mpf(10) ** -25)


@given(st.integers(-60, -1), st.integers(1, 12))
def test_odd_r1_kills_negative_n1(n1, n):
    p = IdentityParams.convergent(3, 5, 2)
    assert abs(weight_q(p, n1, n).q) < mp.mpf(10) ** -45


@given(st.integers(-40, 40).filter(lambda v: v != 0), st.integers(1, 9))
def test_real_parameters_give_real_weight(n1, n):
    if n1 == n:
        return
    p = IdentityParams.convergent("1/3", "1/3", "14/3")
    q = weight_q(p, n1, n).q
    assert abs(mp.im(q)) <= mp.mpf(10) ** -40 * max(abs(q), 1)


@pytest.mark.parametrize("n1", [1, 2, 3, 4, 5, 6])
def test_exact_weight_agrees_with_hypergeometric_route(n1):
    p = IdentityParams.convergent(3, 5, 2)
    exact = weight_q_over_pi(p, n1, 7) * mp.pi
    assert close(mp.re(weight_q(p, n1, 7).q), exact, mp.mpf(10) ** -40)


# --------------------------------------------------------------------------- boundary terms

def test_z_term_at_beta_zero_is_continuous():
    near = z_term(2, mp.mpf(10) ** -20, 2, 3)
    assert close(z_term(2, 0, 2, 3), near, mp.mpf(10) ** -15)


@pytest.mark.parametrize("alpha,beta,d,n", [(3, 1, 2, 4), (1, 3, 1, 6), (5, 3, 2, 1)])
def test_z_term_exact_family(alpha, beta, d, n):
    assert close(z_term(alpha, beta, d, n), z_term_over_pi(alpha, beta, d, n) * mp.pi, mp.mpf(10) ** -40)


def test_cusp_term_zero_for_empty_space():
    assert cusp_term(IdentityParams.convergent(1, 3, 1), 5) == 0


# --------------------------------------------------------------------------- full identity

def test_exact_family_verifies_in_rationals():
    p = IdentityParams.convergent(1, 3, 1)
    assert exact_applicable(p)
    for n in range(1, 51):
        rep = verify(p, n)
        assert rep.exact and rep.passed and rep.residual == 0


def test_exact_and_floating_routes_agree():
    p = IdentityParams.convergent(3, 5, 2)
    for n in (3, 8, 13):
        rep = verify(p, n, exact=False)
        assert rep.passed
        assert close(rep.lhs, lhs_over_pi(p, n) * mp.pi, mp.mpf(10) ** -40)


@pytest.mark.parametrize("n", range(1, 6))
def test_cusp_case_with_finite_support(n):
    rep = verify(IdentityParams.convergent(3, 3, 2), n)
    assert rep.passed
    assert abs(rep.residual) < mp.mpf(10) ** -20


def test_summation_order_does_not_matter():
    p = IdentityParams.convergent(2, 4, 1)
    up = lhs_sum(p, 3, 200)
    down = lhs_sum(p, 3, 200, order="descending")
    assert close(up.value, down.value, mp.mpf(10) ** -40)
    assert up.tail_bound == down.tail_bound


def test_lhs_truncation_guard():
    with pytest.raises(DomainError):
        lhs_sum(IdentityParams.convergent(2, 4, 1), 10, 20)


def test_precision_increase_is_stable():
    p = IdentityParams.convergent(3, 3, 2)
    with precision(50):
        low = verify(p, 4)
    with precision(80):
        high = verify(p, 4)
    assert close(low.lhs, high.lhs, mp.mpf(10) ** -45)
    assert close(low.rhs, high.rhs, mp.mpf(10) ** -45)


def test_rhs_parts_assemble():
    p = IdentityParams.convergent(2, 4, 1)
    z1, z2, cusp, rhs = rhs_parts(p, 2)
    assert cusp == 0
    s1 = 1 + mp.mpf(2) ** -2
    s2 = 1 + mp.mpf(2) ** -4
    assert close(rhs, -p.i_k * z1 * s1 - z2 * s2, mp.mpf(10) ** -45)


def test_regularized_params_rejected_by_convergent_routines():
    p = IdentityParams.regularized(7, 7, -2)
    with pytest.raises(RegimeError):
        verify(p, 2)
    with pytest.raises(RegimeError):
        weight_q(p, 1, 2)


# --------------------------------------------------------------------------- regularized identity

def test_regularized_weight_is_exact():
    p = IdentityParams.regularized(7, 7, -2)
    w = regularized_weight_parts(p, 1, 3)
    assert isinstance(w.interior.coeff, Fraction) and isinstance(w.signed.coeff, Fraction)
    # outside the interval only the signed part survives
    assert regularized_weight_parts(p, -2, 3).interior.coeff == 0
    assert regularized_weight_parts(p, 5, 3).interior.coeff == 0


@pytest.mark.parametrize("case,n1,n", [((7, 7, -2), 1, 3), ((7, 7, -2), -4, 2), ((13, 11, -4), 2, 5),
                                       ((13, 11, -4), 9, 4), ((5, 3, -2), -1, 1)])
def test_weight_is_limit_of_convergent_weight(case, n1, n):
    p = IdentityParams.regularized(*case)
    limit, err = extrapolate_limit(p, n1, n)
    exact = regularized_weight(p, n1, n).to_mp()
    assert err < mp.mpf(10) ** -10
    assert abs(limit - exact) <= 10 * err + mp.mpf(10) ** -12 * max(abs(exact), 1)


def test_limit_check_needs_positive_eps():
    p = IdentityParams.regularized(7, 7, -2)
    with pytest.raises(DomainError):
        weight_limit_check(p, 1, 3, 0)


@pytest.mark.parametrize("case,n", [((7, 7, -2), 2), ((7, 7, -2), 3), ((13, 11, -4), 2), ((5, 3, -2), 4)])
def test_regularized_value_dual_route(case, n):
    p = IdentityParams.regularized(*case)
    value = regularized_value(p, n)
    limit, err = regularized_limit(p, n)
    assert abs(value - limit) <= mp.mpf(10) ** -15 * max(abs(value), 1) + 10 * err


def test_regularized_parts_assemble():
    p = IdentityParams.regularized(13, 11, -4)
    parts = regularized_parts(p, 3)
    assert parts.cusp_term != 0
    assert interior_sum(p, 1).coeff == 0

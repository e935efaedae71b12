from fractions import Fraction
from math import factorial

import pytest
from mpmath import mp

from heckeconv.errors import DomainError
from heckeconv.identity import IdentityParams, cusp_coefficient
from heckeconv.identity.registry import (
    CASE_IDS, thirds_cusp_constant, finite_part_constant, fit_normalization, fit_signed_weight, get_case,
    printed_case, _l_pair,
)

from conftest import close


def test_case_ids():
    assert {"k8_r1r3", "k14_r3r5", "k12_thirds", "reg_k12_r7r7", "reg_k18_r13r11", "q1", "q4"} <= set(CASE_IDS)
    with pytest.raises(DomainError):
        get_case("no_such_case")


@pytest.mark.parametrize("case_id,n,value", [
    ("k8_r1r3", 2, Fraction(-1, 2)), ("k8_r1r3", 5, Fraction(-131, 5)),
    ("k14_r3r5", 2, Fraction(-1)), ("k14_r3r5", 4, Fraction(-41)),
])
def test_exact_printed_identities(case_id, n, value):
    rec = printed_case(case_id, n)
    assert rec.passed
    assert rec.printed_lhs == rec.printed_rhs == value


@pytest.mark.parametrize("case_id,const,power", [
    ("k8_r1r3", lambda: -12 / mp.pi, 4), ("k14_r3r5", lambda: 302400 / mp.pi, 8),
])
def test_normalization_fit(case_id, const, power):
    case = get_case(case_id)
    c, spread = fit_normalization(case)
    assert case.n_power == power
    assert close(c, const(), mp.mpf(10) ** -40)
    assert spread < mp.mpf(10) ** -40


@pytest.mark.parametrize("case_id,n", [("k12_r3r3", 2), ("k12_r3r3", 3), ("k16_r5r5", 2)])
def test_cusp_printed_identities(case_id, n):
    assert printed_case(case_id, n).passed


def test_thirds_constant_matches_cusp_coefficient():
    p = IdentityParams.convergent("1/3", "1/3", "14/3")
    # n^(16/3) from the normalization cancels n^-(d + r1 + r2)
    printed = thirds_cusp_constant() * _l_pair(12, 6, mp.mpf(19) / 3)
    assert close(cusp_coefficient(p), printed, mp.mpf(10) ** -15)


def test_historical_case_is_unsupported():
    rec = printed_case("historical_phi_weighted", 3)
    assert not rec.passed
    assert rec.note.startswith("unsupported")


def test_regularized_finite_part_constants():
    assert finite_part_constant("reg_k12_r7r7") == (Fraction(-factorial(12), 6), True)
    assert finite_part_constant("reg_k18_r13r11") == (Fraction(factorial(19)), True)


def test_regularized_signed_weights():
    c, spread = fit_signed_weight("reg_k12_r7r7")
    assert c == Fraction(-factorial(12), 6) and spread == 0
    # printed weight for the second case lacks the sign of n1
    c, spread = fit_signed_weight("reg_k18_r13r11")
    assert spread == 2


@pytest.mark.parametrize("case_id,bad", [("reg_k12_r7r7", "cusp"), ("reg_k18_r13r11", "z_r2")])
def test_regularized_printed_values_disagree(case_id, bad):
    rec = printed_case(case_id, 3)
    assert not rec.passed
    assert rec.components[bad]["rel_diff"] > mp.mpf("1.9")
    agree = [k for k, v in rec.components.items() if isinstance(v, dict) and k != bad]
    for key in agree:
        assert rec.components[key]["rel_diff"] < mp.mpf(10) ** -15


def test_n_must_be_positive():
    with pytest.raises(DomainError):
        printed_case("k8_r1r3", 0)

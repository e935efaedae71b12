from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, strategies as st
from mpmath import mp

from heckeconv.arith import (
    DivisorIndex, divisors, euler_phi, kloosterman, mobius, mod_inverse, ramanujan_c, sigma, sigma_table,
    sigma_zero,
)
from heckeconv.errors import DomainError
from heckeconv.gaussq import GaussRational
from heckeconv.mpcore.zeta import riemann_zeta

from conftest import close


def test_sigma_examples():
    assert sigma(-1, 6) == 2
    assert sigma(Fraction(2, 3), 1) == 1
    assert sigma(-7, -4) == sigma(-7, 4) == 1 + Fraction(1, 2 ** 7) + Fraction(1, 4 ** 7)
    with pytest.raises(DomainError):
        sigma(1, 0)


def test_sigma_complex_index():
    val = sigma(mp.mpc(0, 1), 6)
    ref = sum(mp.power(q, mp.mpc(0, 1)) for q in (1, 2, 3, 6))
    assert close(val, ref, mp.mpf(10) ** -45)


@given(st.integers(1, 300), st.integers(1, 300), st.integers(-6, 6))
def test_sigma_multiplicative(m, n, a):
    if gcd(m, n) == 1:
        assert sigma(a, m * n) == sigma(a, m) * sigma(a, n)


@pytest.mark.parametrize("p", [2, 3, 5, 7, 101])
def test_sigma_prime(p):
    assert sigma(3, p) == 1 + p ** 3
    assert sigma(-2, p) == 1 + Fraction(1, p ** 2)


@given(st.integers(1, 2000), st.floats(1.1, 4), st.floats(-5, 5))
def test_sigma_bound(m, re_r, im_r):
    r = mp.mpc(re_r, im_r)
    lhs = abs(sigma(-r, m))
    mid = sigma(-mp.mpf(re_r), m)
    assert lhs <= mid * (1 + mp.mpf(10) ** -40)
    assert mid <= riemann_zeta(mp.mpf(re_r))


def test_sigma_table_matches_sigma():
    tab = sigma_table(-3, 60)
    assert all(tab[m] == sigma(-3, m) for m in range(1, 61))


def test_divisor_index():
    idx = DivisorIndex.of("1/3")
    assert idx.exact_rational == GaussRational(Fraction(1, 3)) and idx.integer is None
    assert DivisorIndex.of(-7).integer == -7
    assert close(idx.a, mp.mpf(1) / 3, mp.mpf(10) ** -45)


def test_sigma_zero():
    assert close(sigma_zero(2), mp.pi ** 2 / 6, mp.mpf(10) ** -45)
    assert close(sigma_zero(3), riemann_zeta(3), mp.mpf(10) ** -45)
    with pytest.raises(DomainError):
        sigma_zero(1)
    # sigma_{-r}(0) = zeta(1 + r) sum phi(l) l^(-1-r); the tail beyond L is
    # completed with the mean value phi(l) ~ 6 l / pi^2, error O(L^-4 log L)
    from heckeconv import _kernels

    r, L = 4, 200_000
    phi = _kernels.totient_sieve(L)
    series = mp.fsum(mp.mpf(int(phi[ell])) / mp.mpf(ell) ** (r + 1) for ell in range(1, L + 1))
    series += 6 / mp.pi ** 2 * mp.mpf(L) ** (1 - r) / (r - 1)
    assert abs(sigma_zero(r) - riemann_zeta(r + 1) * series) < 1e-20


def test_totient_inverse():
    assert euler_phi(12) == 4
    assert euler_phi(1) == 1
    assert mod_inverse(3, 7) == 5
    with pytest.raises(DomainError):
        mod_inverse(4, 8)


@given(st.integers(1, 500))
def test_divisors_and_mobius(n):
    ds = divisors(n)
    assert all(n % d == 0 for d in ds) and len(ds) == sum(1 for d in range(1, n + 1) if n % d == 0)
    assert sum(mobius(d) for d in ds) == (1 if n == 1 else 0)
    assert sum(euler_phi(d) for d in ds) == n


def test_ramanujan_sums():
    assert ramanujan_c(9, 0) == euler_phi(9)
    assert ramanujan_c(4, 2) == -2
    assert all(ramanujan_c(1, x) == 1 for x in (-3, 0, 5, 17))


@given(st.integers(1, 60), st.integers(-100, 100))
def test_ramanujan_sum_is_direct_sum(ell, x):
    direct = mp.fsum(mp.cospi(mp.mpf(2 * v * x) / ell) for v in range(1, ell + 1) if gcd(v, ell) == 1)
    assert abs(ramanujan_c(ell, x) - direct) < mp.mpf(10) ** -40


def _kl_direct(m, n, ell):
    if ell == 1:
        return mp.one
    return mp.fsum(mp.expjpi(mp.mpf(2 * (m * h + n * pow(h, -1, ell))) / ell)
                   for h in range(1, ell) if gcd(h, ell) == 1)


def test_kloosterman_examples():
    assert kloosterman(3, 5, 1) == 1
    assert abs(kloosterman(1, 1, 3) + 1) < mp.mpf(10) ** -45
    assert abs(kloosterman(-1, -1, 5) - _kl_direct(-1, -1, 5)) < mp.mpf(10) ** -45


@given(st.integers(-30, 30).filter(bool), st.integers(-30, 30).filter(bool), st.integers(1, 80))
def test_kloosterman_symmetric_real_and_bounded(m, n, ell):
    s = kloosterman(m, n, ell)
    assert abs(s - kloosterman(n, m, ell)) < mp.mpf(10) ** -40
    direct = _kl_direct(m, n, ell)
    assert abs(mp.im(direct)) < mp.mpf(10) ** -40
    assert abs(s - mp.re(direct)) < mp.mpf(10) ** -40
    tau = len(divisors(ell))
    assert abs(s) <= tau * mp.sqrt(gcd(gcd(m, n), ell) * ell) + mp.mpf(10) ** -40

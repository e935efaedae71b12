"""Exact rational arithmetic for odd integer r1, r2 and positive integer d.

In this family Q(n1, n2) vanishes outside 0 < n1 < n, and on that range
it is pi times a rational function of n1/n.  Every boundary term is also
pi times a rational number.  So the identity holds exactly, and it is
checked by comparing the coefficients of pi as Fractions.
"""

from __future__ import annotations

import time
from fractions import Fraction
from math import factorial

from mpmath import mp

from ..arith import sigma, sigma_table
from ..errors import DomainError
from ..modforms import cusp_dimension
from .params import IdentityParams, Regime


def bernoulli_exact(m: int) -> Fraction:
    p, q = mp.bernfrac(m)
    return Fraction(int(p), int(q))


def zeta_even_over_pi(two_j: int) -> Fraction:
    """zeta(2j) / pi^(2j) as an exact rational."""
    j = two_j // 2
    return Fraction((-1) ** (j + 1)) * bernoulli_exact(two_j) * 2 ** (two_j - 1) / factorial(two_j)


def exact_applicable(p: IdentityParams) -> bool:
    return (p.regime is Regime.CONVERGENT and p.exact and p.finite_support and p.d.is_integer
            and p.d.as_int() > 0 and cusp_dimension(p.k) == 0)


def _family(p: IdentityParams):
    if not (p.exact and p.finite_support and p.d.is_integer and p.d.as_int() > 0):
        raise DomainError("exact arithmetic needs odd integer r1, r2 and a positive integer d")
    return p.r1.as_int(), p.r2.as_int(), p.d.as_int(), p.k


def _terminating_2f1(a: int, b: int, c: int, z: Fraction) -> Fraction:
    # a <= 0 integer: finite sum
    total = Fraction(1)
    term = Fraction(1)
    for j in range(-a):
        term = term * (a + j) * (b + j) / ((c + j) * (j + 1)) * z
        total += term
    return total


def weight_q_over_pi(p: IdentityParams, n1: int, n: int) -> Fraction:
    """Q(n1, n - n1) / pi, exact."""
    r1, r2, d, k = _family(p)
    if n1 <= 0 or n1 >= n:
        return Fraction(0)
    x = Fraction(n, n1)
    # 2F1(k-d-1, d+r2+1; r2+1; 1-x) = x^(1-k) 2F1(-(d+r1), -d; r2+1; 1-x)
    f = x ** (1 - k) * _terminating_2f1(-d, -(d + r1), r2 + 1, 1 - x)
    sin_r2 = -1 if ((r2 - 1) // 2) % 2 else 1
    coeff = Fraction(-2 * p.i_k * sin_r2, factorial(r2) * factorial(d) * factorial(d + r1))
    return coeff * x ** (d + 1) * (x - 1) ** r2 * f


def z_term_over_pi(alpha: int, beta: int, d: int, n: int) -> Fraction:
    """Z^(alpha, beta)_d(n) / pi for odd positive beta and integer d > 0."""
    if beta < 1 or beta % 2 == 0:
        raise DomainError("exact Z needs an odd positive beta")
    first = Fraction(0)
    if beta == 1:
        first = Fraction(-1, factorial(alpha + beta + d) * factorial(d + beta))
    # zeta(1+beta) (2 pi)^-beta = pi * zeta(1+beta)/pi^(1+beta) * 2^-beta
    second = zeta_even_over_pi(beta + 1) / 2 ** beta / Fraction(n) ** beta / (factorial(d) * factorial(d + alpha))
    return first + second


def lhs_over_pi(p: IdentityParams, n: int) -> Fraction:
    r1, r2, _, _ = _family(p)
    s1 = sigma_table(-r1, n)
    s2 = s1 if r1 == r2 else sigma_table(-r2, n)
    return sum((weight_q_over_pi(p, n1, n) * s1[n1] * s2[n - n1] for n1 in range(1, n)), Fraction(0))


def boundary_over_pi(p: IdentityParams, n: int) -> tuple[Fraction, Fraction, Fraction]:
    """(Z^(r1,r2)/pi, Z^(r2,r1)/pi, boundary part of the right side / pi)."""
    r1, r2, d, _ = _family(p)
    z1 = z_term_over_pi(r1, r2, d, n)
    z2 = z_term_over_pi(r2, r1, d, n)
    rhs = -p.i_k * z1 * sigma(-r1, n) - z2 * sigma(-r2, n)
    return z1, z2, rhs


def verify_exact(p: IdentityParams, n: int):
    from .sums import EvaluationReport

    if not exact_applicable(p):
        raise DomainError("exact verification needs odd r1, r2, integer d > 0 and an empty cusp space")
    t0 = time.perf_counter()
    lhs = lhs_over_pi(p, n)
    z1, z2, rhs = boundary_over_pi(p, n)
    residual = lhs - rhs
    t1 = time.perf_counter()
    pi = mp.pi
    return EvaluationReport(
        params=p.as_dict(), n=n, N=n, lhs=lhs * pi, lhs_tail_bound=Fraction(0),
        z_term_1=z1 * pi, z_term_2=z2 * pi, cusp_term=Fraction(0), rhs=rhs * pi,
        residual=residual * pi if residual else Fraction(0), tolerance=Fraction(0),
        passed=residual == 0, exact=True, digits=0, timings={"total": t1 - t0})

"""Jacobi polynomials and complete elliptic integrals on the cut."""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational

from mpmath import mp

from ..errors import DomainError
from ..gaussq import GaussRational, to_mp
from .context import working
from .hypergeom import CutPair, hyp2f1_cut_pair


def _is_exact(v) -> bool:
    if isinstance(v, str):
        v = GaussRational.parse(v)
    if isinstance(v, GaussRational):
        return not v.inexact
    return isinstance(v, Rational) and not isinstance(v, bool)


def _binom_general(top, k: int):
    """binomial(top, k) for arbitrary top and integer k >= 0."""
    num = 1
    for j in range(k):
        num = num * (top - j)
    den = 1
    for j in range(2, k + 1):
        den *= j
    return num * Fraction(1, den)


def jacobi_p(n: int, alpha, beta, z):
    """P_n^(alpha,beta)(z) = sum_m C(n+alpha, n-m) C(n+beta, m) ((z-1)/2)^m ((z+1)/2)^(n-m).

    Returns an exact GaussRational/Fraction when every input is exact.
    """
    if int(n) != n or n < 0:
        raise DomainError("jacobi_p needs an integer degree n >= 0")
    n = int(n)
    if all(_is_exact(v) for v in (alpha, beta, z)):
        al, be, zz = (GaussRational.of(v) for v in (alpha, beta, z))
        zm = (zz - 1) / 2
        zp = (zz + 1) / 2
        total = GaussRational(0)
        for m in range(n + 1):
            total = total + _binom_general(al + n, n - m) * _binom_general(be + n, m) * _gpow(zm, m) * _gpow(zp, n - m)
        return total.re if total.is_real else total
    return _jacobi_numeric(n, to_mp(alpha), to_mp(beta), to_mp(z))


def _gpow(x, e):
    out = GaussRational(1)
    for _ in range(e):
        out = out * x
    return out


@working
def _jacobi_numeric(n, alpha, beta, z):
    zm = (z - 1) / 2
    zp = (z + 1) / 2
    terms = [mp.binomial(n + alpha, n - m) * mp.binomial(n + beta, m) * zm ** m * zp ** (n - m)
             for m in range(n + 1)]
    return mp.fsum(terms)


@working
def elliptic_ke_cut(x) -> tuple[CutPair, CutPair]:
    """Cut pairs of K(x) = (pi/2) 2F1(1/2,1/2;1;x) and E(x) = (pi/2) 2F1(-1/2,1/2;1;x)."""
    x = to_mp(x)
    if mp.im(x) != 0:
        raise DomainError("elliptic_ke_cut needs real x")
    x = mp.re(x)
    if x == 1:
        raise DomainError("K has a logarithmic singularity at x = 1")
    half = mp.mpf(1) / 2
    k_pair = hyp2f1_cut_pair(half, half, 1, x)
    e_pair = hyp2f1_cut_pair(-half, half, 1, x)
    s = mp.pi / 2
    return (CutPair(s * k_pair.above, s * k_pair.below),
            CutPair(s * e_pair.above, s * e_pair.below))

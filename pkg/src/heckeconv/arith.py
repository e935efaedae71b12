"""Divisor sums, totients, Ramanujan sums and Kloosterman sums."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt

from mpmath import mp

from . import _kernels
from .errors import DomainError
from .gaussq import GaussRational, to_mp
from .mpcore.context import working
from .mpcore.zeta import riemann_zeta


@dataclass(frozen=True)
class DivisorIndex:
    """Index a of sigma_a, with its exact value when it is known."""

    a: object
    exact_rational: GaussRational | None = None

    @classmethod
    def of(cls, value) -> "DivisorIndex":
        if isinstance(value, DivisorIndex):
            return value
        try:
            g = GaussRational.of(value)
        except TypeError:
            return cls(to_mp(value), None)
        return cls(g.to_mp(), None if g.inexact else g)

    @property
    def integer(self) -> int | None:
        e = self.exact_rational
        if e is not None and e.is_integer:
            return e.as_int()
        return None


def divisors(x: int) -> list[int]:
    x = abs(int(x))
    if x == 0:
        raise DomainError("0 has infinitely many divisors")
    small, large = [], []
    for d in range(1, isqrt(x) + 1):
        if x % d == 0:
            small.append(d)
            if d * d != x:
                large.append(x // d)
    return small + large[::-1]


def _exact_power(d: int, a: int):
    return d ** a if a >= 0 else Fraction(1, d ** -a)


def sigma(a, x: int):
    """sigma_a(x) = sum of d^a over positive divisors of |x|.

    Exact (int or Fraction) when a is an integer, an mpmath number otherwise.
    """
    x = int(x)
    if x == 0:
        raise DomainError("sigma(a, 0) is undefined; use sigma_zero for the regularized value")
    idx = DivisorIndex.of(a)
    ai = idx.integer
    if ai is not None:
        return sum(_exact_power(d, ai) for d in divisors(x))
    return _sigma_mp(idx.a, x)


@working
def _sigma_mp(a, x):
    return mp.fsum(mp.mpf(d) ** a for d in divisors(x))


@working
def sigma_zero(r2):
    """sigma_{-r2}(0) := zeta(r2) for Re r2 > 1."""
    r2 = to_mp(r2)
    if mp.re(r2) <= 1:
        raise DomainError("sigma_zero needs Re(r2) > 1")
    return riemann_zeta(r2)


def sigma_table(a, nmax: int) -> list:
    """[None, sigma_a(1), ..., sigma_a(nmax)], exact when a is an integer."""
    idx = DivisorIndex.of(a)
    ai = idx.integer
    if ai is not None:
        if ai >= 0:
            pw = [0] + [d ** ai for d in range(1, nmax + 1)]
            tab = [0] * (nmax + 1)
        else:
            # common denominator lcm is impractical; accumulate Fractions
            pw = [0] + [Fraction(1, d ** -ai) for d in range(1, nmax + 1)]
            tab = [Fraction(0)] * (nmax + 1)
        for d in range(1, nmax + 1):
            p = pw[d]
            for mult in range(d, nmax + 1, d):
                tab[mult] += p
        tab[0] = None
        return tab
    return _sigma_table_mp(idx.a, nmax)


@working
def _sigma_table_mp(a, nmax):
    pw = [mp.zero] + [mp.mpf(d) ** a for d in range(1, nmax + 1)]
    acc: list[list] = [[] for _ in range(nmax + 1)]
    for d in range(1, nmax + 1):
        for mult in range(d, nmax + 1, d):
            acc[mult].append(pw[d])
    out = [None] + [mp.fsum(acc[m]) for m in range(1, nmax + 1)]
    return out


def euler_phi(ell: int) -> int:
    ell = int(ell)
    if ell < 1:
        raise DomainError("euler_phi needs ell >= 1")
    result, m, p = ell, ell, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def mod_inverse(h: int, ell: int) -> int:
    if ell < 1:
        raise DomainError("modulus must be positive")
    if gcd(h, ell) != 1:
        raise DomainError(f"{h} is not invertible modulo {ell}")
    if ell == 1:
        return 0
    return pow(h, -1, ell)


def mobius(n: int) -> int:
    n = int(n)
    if n < 1:
        raise DomainError("mobius needs n >= 1")
    result, p = 1, 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            result = -result
        p += 1
    return -result if n > 1 else result


def ramanujan_c(ell: int, x: int) -> int:
    """c_ell(x) = sum_{d | gcd(ell, x)} mu(ell/d) d, exact."""
    ell = int(ell)
    if ell < 1:
        raise DomainError("ramanujan_c needs ell >= 1")
    g = gcd(ell, abs(int(x))) if x != 0 else ell
    return sum(mobius(ell // d) * d for d in divisors(g))


def ramanujan_c_table(x: int, lmax: int) -> list[int]:
    return [int(v) for v in _kernels.ramanujan_table(int(x), int(lmax))]


@lru_cache(maxsize=4096)
def _residue_counts(m: int, n: int, ell: int):
    counts = _kernels.kloosterman_residue_counts(m, n, ell)
    return tuple((int(r), int(c)) for r, c in enumerate(counts) if c)


@working
def kloosterman(m: int, n: int, ell: int):
    """S(m, n; ell), real; exact residue histogram then one cosine per class."""
    ell = int(ell)
    if ell < 1:
        raise DomainError("kloosterman needs ell >= 1")
    m %= ell
    n %= ell
    # symmetric under h <-> hbar; canonical order improves cache reuse
    key = (min(m, n), max(m, n), ell)
    counts = _residue_counts(*key)
    return mp.fsum(c * mp.cospi(mp.mpf(2 * r) / ell) for r, c in counts)


def kloosterman_float_table(m: int, n: int, lmax: int):
    """float64 S(m, n; ell) for ell <= lmax; entry 0 unused."""
    return _kernels.kloosterman_float_table([m], [n], lmax)[0]

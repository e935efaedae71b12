"""Riemann and Hurwitz zeta via Euler-Maclaurin summation."""

from __future__ import annotations

from functools import lru_cache

from mpmath import mp

from ..errors import DomainError, PoleError, PrecisionExhaustedError
from ..gaussq import to_mp
from .context import eps, working


@lru_cache(maxsize=64)
def _bernoulli_ratios(count: int, prec: int):
    """B_{2j}/(2j)! for j = 1..count at binary precision ``prec``."""
    with mp.workprec(prec):
        return tuple(mp.bernoulli(2 * j) / mp.factorial(2 * j) for j in range(1, count + 1))


def _euler_maclaurin(s, a):
    tol = eps()
    dps = mp.dps
    abs_s = float(abs(s))
    n_direct = int(0.6 * dps + abs_s) + 10
    while True:
        x = n_direct + a
        head = mp.fsum((k + a) ** (-s) for k in range(n_direct))
        xs = x ** (-s)
        total = head + x * xs / (s - 1) + xs / 2
        scale = max(abs(total), abs(head), mp.mpf(1) if abs(total) == 0 else abs(total))
        # correction terms B_{2j}/(2j)! * s(s+1)...(s+2j-2) * x^{-s-2j+1}
        count = int(dps) + 40
        ratios = _bernoulli_ratios(count, mp.prec)
        poch = s
        xpow = xs / x
        inv_x2 = 1 / (x * x)
        prev = None
        converged = False
        for j in range(1, count + 1):
            term = ratios[j - 1] * poch * xpow
            total += term
            mag = abs(term)
            if mag <= tol * scale:
                converged = True
                break
            if prev is not None and mag > prev and j > 3:
                break
            prev = mag
            poch *= (s + 2 * j - 1) * (s + 2 * j)
            xpow *= inv_x2
        if converged:
            return total
        n_direct *= 2
        if n_direct > 10 ** 6:
            raise PrecisionExhaustedError("Euler-Maclaurin failed to converge")


@working
def hurwitz_zeta(s, a=1):
    """zeta(s, a) = sum_{n>=0} (n+a)^(-s) continued to s != 1."""
    s = to_mp(s)
    a = to_mp(a)
    if mp.im(a) != 0 or a <= 0:
        raise DomainError("hurwitz_zeta needs a real positive shift a")
    if s == 1:
        raise PoleError("zeta has a pole at s = 1", residue=1)
    return _euler_maclaurin(s, a)


@working
def riemann_zeta(s):
    s = to_mp(s)
    if s == 1:
        raise PoleError("zeta has a pole at s = 1", residue=1)
    # trivial zeros are returned exactly
    if mp.im(s) == 0 and s < 0 and s == mp.nint(s) and int(mp.nint(s)) % 2 == 0:
        return mp.mpf(0)
    if mp.re(s) < -1:
        # functional equation keeps Euler-Maclaurin in its comfortable half-plane
        t = 1 - s
        return 2 * (2 * mp.pi) ** (-t) * mp.cospi(t / 2) * mp.gamma(t) * _euler_maclaurin(t, mp.mpf(1))
    return _euler_maclaurin(s, mp.mpf(1))


def riemann_zeta_deriv(s):
    """zeta'(s) by central differencing at tripled precision."""
    s = to_mp(s)
    from .context import current, GUARD_DIGITS

    digits = max(mp.dps, current().digits + GUARD_DIGITS)
    with mp.workdps(3 * digits):
        h = mp.mpf(10) ** (-digits)
        val = (riemann_zeta(s + h) - riemann_zeta(s - h)) / (2 * h)
    return +val

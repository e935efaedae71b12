"""Bessel function of the first kind J_nu(x) for real nu > -1 and x > 0."""

from __future__ import annotations

from mpmath import mp

from ..errors import DomainError, PrecisionExhaustedError
from ..gaussq import to_mp
from .context import eps, series_cap, working


def _series(nu, x):
    # the terms peak near e^x/... so carry x/ln(10) guard digits
    extra = int(float(x) / 2.302585) + 5
    with mp.workdps(mp.dps + extra):
        tol = eps()
        q = -(x * x) / 4
        term = mp.one
        total = mp.one
        for k in range(1, series_cap()):
            term *= q / (k * (nu + k))
            total += term
            if abs(term) <= tol * abs(total) and k > x / 2:
                return +((x / 2) ** nu * mp.rgamma(nu + 1) * total)
    raise PrecisionExhaustedError("Bessel series did not converge")


def _asymptotic(nu, x):
    """Hankel expansion; returns None when it cannot reach the tolerance."""
    tol = eps()
    mu = 4 * nu * nu
    p = mp.one
    q = mp.zero
    term = mp.one
    best = None
    for k in range(1, series_cap()):
        term = term * (mu - (2 * k - 1) ** 2) / (k * 8 * x)
        mag = abs(term)
        if k % 2 == 1:
            q += term if (k // 2) % 2 == 0 else -term
        else:
            p += -term if (k // 2) % 2 == 1 else term
        if term == 0 or mag <= tol * (abs(p) + abs(q)):
            omega = x - (nu / 2 + mp.mpf(1) / 4) * mp.pi
            return mp.sqrt(2 / (mp.pi * x)) * (p * mp.cos(omega) - q * mp.sin(omega))
        if best is not None and mag > best and k > nu + 1:
            return None
        best = mag if best is None else min(best, mag)
    return None


@working
def bessel_j(nu, x):
    nu = to_mp(nu)
    x = to_mp(x)
    if mp.im(nu) != 0 or mp.im(x) != 0:
        raise DomainError("bessel_j needs real order and argument")
    nu, x = mp.re(nu), mp.re(x)
    if nu <= -1:
        raise DomainError("bessel_j needs nu > -1")
    if x <= 0:
        raise DomainError("bessel_j needs x > 0")
    if x > max(20, nu):
        val = _asymptotic(nu, x)
        if val is not None:
            return val
    return _series(nu, x)

"""Upper incomplete gamma function."""

from __future__ import annotations

import warnings

from mpmath import mp

from ..errors import DomainError, PrecisionExhaustedError
from ..gaussq import to_mp
from .context import eps, series_cap, working
from .gammafn import nonpositive_integer


def _continued_fraction(s, x):
    # modified Lentz on Gamma(s,x) = e^{-x} x^s / (x+1-s- 1(1-s)/(x+3-s- ...))
    tiny = mp.mpf(2) ** (-mp.prec * 2)
    tol = eps()
    b = x + 1 - s
    f = b if b != 0 else tiny
    c = f
    d = mp.zero
    for n in range(1, series_cap()):
        an = -n * (n - s)
        b += 2
        d = b + an * d
        if d == 0:
            d = tiny
        c = b + an / c
        if c == 0:
            c = tiny
        d = 1 / d
        delta = c * d
        f *= delta
        if abs(delta - 1) < tol:
            return mp.exp(-x) * x ** s / f
    raise PrecisionExhaustedError("incomplete gamma continued fraction did not converge")


def _lower_series(s, x):
    # gamma(s,x) = x^s e^{-x} sum x^n / (s (s+1) ... (s+n))
    tol = eps()
    term = 1 / s
    total = term
    for n in range(1, series_cap()):
        term *= x / (s + n)
        total += term
        if abs(term) <= tol * abs(total) and abs(s + n) > abs(x):
            return x ** s * mp.exp(-x) * total
    raise PrecisionExhaustedError("incomplete gamma series did not converge")


def _e1(x):
    # E1(x) = -gamma - log x - sum_{k>=1} (-x)^k/(k k!)
    tol = eps()
    term = mp.one
    total = mp.zero
    for k in range(1, series_cap()):
        term *= -x / k
        total += term / k
        if abs(term) <= tol * max(abs(total), 1) and k > abs(x):
            return -mp.euler - mp.log(x) - total
    raise PrecisionExhaustedError("E1 series did not converge")


def _small_x(s, x):
    m = nonpositive_integer(s)
    if m is not None:
        # downward recursion from Gamma(0,x) = E1(x)
        val = _e1(x)
        for j in range(1, m + 1):
            sj = -j
            val = (val - x ** sj * mp.exp(-x)) / sj
        return val
    full = mp.gamma(s)
    lower = _lower_series(s, x)
    return full - lower


@working
def upper_incomplete_gamma(s, x):
    """Gamma(s, x) = int_x^inf t^(s-1) e^(-t) dt for real x > 0."""
    s = to_mp(s)
    x = to_mp(x)
    if mp.im(x) != 0 or x <= 0:
        raise DomainError("upper_incomplete_gamma needs real x > 0")
    x = mp.re(x)
    if x >= abs(s) + 1:
        return _continued_fraction(s, x)
    if nonpositive_integer(s) is not None:
        return _small_x(s, x)
    # Gamma(s) - gamma(s, x) cancels when the result is small.  Retry with
    # extra digits, doubling them until two evaluations agree.
    val = _small_x(s, x)
    scale = abs(mp.gamma(s))
    if val != 0 and scale <= 100 * abs(val):
        return val
    extra = (mp.dps if val == 0 else int(mp.log10(scale / abs(val)))) + 5
    target = mp.mpf(10) ** (-mp.dps)
    for _ in range(8):
        with mp.workdps(mp.dps + extra):
            first = _small_x(s, x)
        with mp.workdps(mp.dps + extra + 15):
            second = _small_x(s, x)
        if second != 0 and abs(first - second) <= target * abs(second):
            return +second
        extra *= 2
        val = second
    warnings.warn("upper_incomplete_gamma: cancellation exceeded the precision budget", RuntimeWarning)
    return +val

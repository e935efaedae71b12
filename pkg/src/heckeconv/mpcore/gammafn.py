"""Gamma function wrappers with explicit pole diagnostics."""

from __future__ import annotations

from fractions import Fraction
from math import factorial

from mpmath import mp

from ..errors import PoleError
from ..gaussq import to_mp
from .context import working


def nonpositive_integer(z) -> int | None:
    """Return m if z equals -m for an integer m >= 0, else None."""
    z = to_mp(z)
    if mp.im(z) != 0:
        return None
    x = mp.re(z)
    if x > 0:
        return None
    m = int(mp.nint(x))
    return -m if x == m else None


@working
def gamma(z):
    """Gamma(z); raises PoleError (with residue) at non-positive integers."""
    z = to_mp(z)
    m = nonpositive_integer(z)
    if m is not None:
        raise PoleError(f"Gamma has a pole at {-m}",
                        residue=Fraction((-1) ** m, factorial(m)))
    return mp.gamma(z)


@working
def rgamma(z):
    """1/Gamma(z), entire; zero at non-positive integers."""
    return mp.rgamma(to_mp(z))


@working
def loggamma(z):
    return mp.loggamma(to_mp(z))


@working
def digamma(z):
    z = to_mp(z)
    m = nonpositive_integer(z)
    if m is not None:
        raise PoleError(f"digamma has a pole at {-m}", residue=-1)
    return mp.digamma(z)

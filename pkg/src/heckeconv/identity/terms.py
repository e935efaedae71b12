"""Boundary terms Z and the cusp-form term of the convergent identity."""

from __future__ import annotations

from mpmath import mp

from ..errors import TableTooShortError
from ..gaussq import to_mp
from ..modforms import cusp_dimension, eigenform_coeffs, l_value, petersson_norm
from ..mpcore.context import current, GUARD_DIGITS, working
from ..mpcore.zeta import riemann_zeta
from .params import IdentityParams

# The cusp contribution enters the convergent identity with coefficient
# +i^k.  Numerical evaluation of both sides (k = 12 with finite support,
# and the infinite k = 12 example at r1 = r2 = 1/3) fixes this sign; the
# opposite sign leaves residuals of order 1e-5.
CUSP_SIGN = +1

_TABLE_LEN = 120


def eigenform_for(k: int, n: int = 1):
    """Eigenform table long enough for L-values and the coefficient a_f(n)."""
    need = max(_TABLE_LEN, n)
    return eigenform_coeffs(k, need)


def l_value_auto(f, s):
    try:
        return l_value(f, s)
    except TableTooShortError as exc:
        return l_value(eigenform_coeffs(f.k, exc.required + 10), s)


def _z_plain(alpha, beta, d, n):
    first = riemann_zeta(1 - beta) * (2 * mp.pi) ** beta * mp.rgamma(alpha + beta + d + 1) * mp.rgamma(d + beta + 1)
    second = (riemann_zeta(1 + beta) * (2 * mp.pi) ** (-beta) * mp.mpf(n) ** (-beta)
              * mp.rgamma(d + 1) * mp.rgamma(d + alpha + 1))
    return first + second


@working
def z_term(alpha, beta, d, n: int):
    """Z^(alpha, beta)_d(n).

    At beta = 0 the two zeta poles cancel and the symmetric average
    (Z(h) + Z(-h))/2 at tripled precision gives the limit.
    """
    alpha, beta, d = (to_mp(v) for v in (alpha, beta, d))
    if beta != 0:
        return _z_plain(alpha, beta, d, n)
    digits = max(mp.dps, current().digits + GUARD_DIGITS)
    with mp.workdps(3 * digits):
        h = mp.mpf(10) ** (-digits)
        val = (_z_plain(alpha, h, d, n) + _z_plain(alpha, -h, d, n)) / 2
    return +val


@working
def cusp_coefficient_raw(k: int, r1, r2, d):
    """Cusp coefficient for arbitrary complex (r1, r2, d) of weight k, without regime checks."""
    if cusp_dimension(k) == 0:
        return mp.zero
    ik = -1 if (k // 2) % 2 else 1
    f = eigenform_for(k)
    ls = l_value_auto(f, d + r2 + 1) * l_value_auto(f, d + r1 + r2 + 1)
    return (CUSP_SIGN * ik * mp.gamma(k - 1) * (4 * mp.pi) ** (1 - k) * (2 * mp.pi) ** (-r2)
            * ls * mp.rgamma(d + 1) * mp.rgamma(d + r1 + 1) / petersson_norm(k))


def cusp_coefficient(p: IdentityParams):
    """Coefficient C with cusp_term(p, n) = C * a_f(n) / n^(d+r1+r2); 0 for dim S_k = 0."""
    return cusp_coefficient_raw(p.k, *p.mp_values())


@working
def cusp_term(p: IdentityParams, n: int):
    k = p.k
    if cusp_dimension(k) == 0:
        return mp.zero
    r1, r2, d = p.mp_values()
    a_n = eigenform_for(k, n).a(n)
    return cusp_coefficient(p) * a_n * mp.power(mp.mpf(n), -(d + r1 + r2))

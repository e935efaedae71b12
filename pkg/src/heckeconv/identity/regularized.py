"""Regularized value of the divergent sum for odd r1 >= r2 >= 3 and negative d."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from mpmath import mp

from ..arith import sigma
from ..errors import DomainError, RegimeError
from ..modforms import cusp_dimension, petersson_norm
from ..mpcore.context import working
from ..mpcore.orthopoly import jacobi_p
from ..mpcore.zeta import riemann_zeta, riemann_zeta_deriv
from .params import IdentityParams, Regime
from .terms import CUSP_SIGN, cusp_coefficient_raw, eigenform_for, l_value_auto, z_term
from .weights import _weight_raw


@dataclass(frozen=True)
class PiMultiple:
    """An exact value pi * coeff."""

    coeff: Fraction

    def to_mp(self):
        return self.coeff * mp.pi

    def __add__(self, other: "PiMultiple") -> "PiMultiple":
        return PiMultiple(self.coeff + other.coeff)

    def __str__(self):
        return f"({self.coeff})*pi"


@dataclass(frozen=True)
class RegularizedWeight:
    interior: PiMultiple  # supported on 0 < n1 < n
    signed: PiMultiple    # carries sgn(n1)

    @property
    def total(self) -> PiMultiple:
        return self.interior + self.signed

    def to_mp(self):
        return self.total.to_mp()


def _require_b(p: IdentityParams):
    if p.regime is not Regime.REGULARIZED:
        raise RegimeError("the regularized weight needs regularized-regime parameters")


def _ipow_real(e: int) -> int:
    e %= 4
    if e % 2:
        raise DomainError("power of i is not real")
    return 1 if e == 0 else -1


def regularized_weight_parts(p: IdentityParams, n1: int, n: int) -> RegularizedWeight:
    _require_b(p)
    n1, n = int(n1), int(n)
    if n1 in (0, n) or n <= 0:
        raise DomainError("need n > 0 and n1 not in {0, n}")
    r1, r2, d, k = p.r1.as_int(), p.r2.as_int(), p.d.as_int(), p.k
    scale = Fraction(1, factorial(k - d - 2))
    interior = Fraction(0)
    if 0 < n1 < n:
        jac = Fraction(jacobi_p(d + r1, r2, -r1, Fraction(2 * n1, n) - 1))
        interior = 2 * _ipow_real(k + r2 + 1) * Fraction(n - n1, n) ** r2 * jac * scale
    jac2 = Fraction(jacobi_p(-d - 1, k - 1, -r2, 1 - Fraction(2 * n, n1)))
    sgn = 1 if n1 > 0 else -1
    signed = sgn * _ipow_real(r1 + 1) * Fraction(n, n1) ** (d + 1) * jac2 * scale
    return RegularizedWeight(PiMultiple(interior), PiMultiple(signed))


def regularized_weight(p: IdentityParams, n1: int, n: int) -> PiMultiple:
    """P(n1, n - n1) as an exact multiple of pi."""
    return regularized_weight_parts(p, n1, n).total


@working
def regularized_z_term(p: IdentityParams, n: int, swap: bool = False):
    _require_b(p)
    r1, r2, d = p.r1.as_int(), p.r2.as_int(), p.d.as_int()
    if swap:
        r1, r2 = r2, r1
    first = ((-1) ** (d + 1) * (2 * mp.pi) ** r2 * riemann_zeta_deriv(1 - r2)
             / (mp.factorial(d + r2) * mp.factorial(d + r1 + r2) * mp.factorial(-d - 1)))
    second = (2 * mp.pi) ** (-r2) * riemann_zeta(1 + r2) * mp.mpf(n) ** (-r2) / mp.factorial(d + r1)
    return first + second


@working
def regularized_cusp_term(p: IdentityParams, n: int):
    _require_b(p)
    k = p.k
    if cusp_dimension(k) == 0:
        return mp.zero
    r1, r2, d = p.r1.as_int(), p.r2.as_int(), p.d.as_int()
    f = eigenform_for(k, n)
    ls = l_value_auto(f, 1 + d + r2) * l_value_auto(f, 1 + d + r1 + r2)
    coeff = (CUSP_SIGN * p.i_k * mp.mpf(2) ** (2 - 2 * k - r2) * mp.pi ** (1 - k - r2)
             * mp.factorial(k - 2) / mp.factorial(d + r1))
    return coeff * ls / petersson_norm(k) * f.a(n) / mp.mpf(n) ** (d + r1 + r2)


@dataclass
class RegularizedValue:
    z_term_1: object
    z_term_2: object
    cusp_term: object
    value: object


@working
def regularized_parts(p: IdentityParams, n: int) -> RegularizedValue:
    z1 = regularized_z_term(p, n)
    z2 = regularized_z_term(p, n, swap=True)
    cusp = regularized_cusp_term(p, n)
    r1, r2 = p.r1.as_int(), p.r2.as_int()
    value = -p.i_k * z1 * sigma(-r1, n) - z2 * sigma(-r2, n) + cusp
    return RegularizedValue(z1, z2, cusp, value)


def regularized_value(p: IdentityParams, n: int):
    """Regularized value of sum_{n1} sigma_{-r1}(n1) sigma_{-r2}(n - n1) P(n1, n - n1)."""
    return regularized_parts(p, n).value


def interior_sum(p: IdentityParams, n: int) -> PiMultiple:
    """Finite part sum_{0<n1<n} sigma sigma * (interior part of P), exact."""
    r1, r2 = p.r1.as_int(), p.r2.as_int()
    total = Fraction(0)
    for n1 in range(1, n):
        w = regularized_weight_parts(p, n1, n).interior.coeff
        if w:
            total += w * sigma(-r1, n1) * sigma(-r2, n - n1)
    return PiMultiple(total)


@working
def weight_limit_check(p: IdentityParams, n1: int, n: int, eps):
    """Gamma(d - eps + 1) * Q at (r1 + eps, r2 + eps, d - eps); tends to P as eps -> 0."""
    _require_b(p)
    eps = mp.mpf(eps)
    if not (0 < eps <= mp.mpf(1) / 4):
        raise DomainError("eps must lie in (0, 1/4]")
    n1, n = int(n1), int(n)
    if n1 in (0, n):
        raise DomainError("n1 must avoid {0, n}")
    r1, r2, d = (mp.mpf(v.as_int()) for v in (p.r1, p.r2, p.d))
    dh = d - eps
    q = _weight_raw(r1 + eps, r2 + eps, dh, p.k, n1, n).q
    return mp.gamma(dh + 1) * q


@working
def extrapolate_limit(p: IdentityParams, n1: int, n: int, eps_values=None):
    """Neville extrapolation of weight_limit_check to eps = 0.

    Returns (limit, error estimate) where the estimate is the change from
    dropping the smallest step.
    """
    if eps_values is None:
        eps_values = [mp.mpf(2) ** (-j) for j in range(6, 13)]
    xs = [mp.mpf(e) for e in eps_values]
    ys = [weight_limit_check(p, n1, n, e) for e in xs]

    full = _neville_zero(xs, ys)
    return full, abs(full - _neville_zero(xs[:-1], ys[:-1]))


def _neville_zero(xs, ys):
    t = list(ys)
    for j in range(1, len(xs)):
        for i in range(len(xs) - j):
            t[i] = (xs[i + j] * t[i] - xs[i] * t[i + 1]) / (xs[i + j] - xs[i])
    return t[0]


@working
def deformed_rhs(p: IdentityParams, n: int, eps):
    """Gamma(d - eps + 1) times the convergent right side at (r1 + eps, r2 + eps, d - eps)."""
    _require_b(p)
    eps = mp.mpf(eps)
    r1, r2, d = (mp.mpf(v.as_int()) for v in (p.r1, p.r2, p.d))
    a, b, dh = r1 + eps, r2 + eps, d - eps
    s1 = mp.fsum(mp.mpf(m) ** (-a) for m in range(1, n + 1) if n % m == 0)
    s2 = mp.fsum(mp.mpf(m) ** (-b) for m in range(1, n + 1) if n % m == 0)
    rhs = -p.i_k * z_term(a, b, dh, n) * s1 - z_term(b, a, dh, n) * s2
    if cusp_dimension(p.k):
        rhs += cusp_coefficient_raw(p.k, a, b, dh) * eigenform_for(p.k, n).a(n) * mp.mpf(n) ** (-(dh + a + b))
    return mp.gamma(dh + 1) * rhs


@working
def regularized_limit(p: IdentityParams, n: int, eps_values=None):
    """Extrapolate deformed_rhs to eps = 0; an independent route to regularized_value.

    Returns (limit, error estimate).
    """
    if eps_values is None:
        eps_values = [mp.mpf(2) ** (-j) for j in range(8, 15)]
    xs = [mp.mpf(e) for e in eps_values]
    ys = [deformed_rhs(p, n, e) for e in xs]
    full = _neville_zero(xs, ys)
    return full, abs(full - _neville_zero(xs[:-1], ys[:-1]))

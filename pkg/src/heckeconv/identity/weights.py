"""The hypergeometric convolution weight Q(n1, n2) and its cut-jump form."""

from __future__ import annotations

import enum
from dataclasses import dataclass

from mpmath import mp

from ..errors import DomainError, RegimeError
from ..mpcore.context import working
from ..mpcore.hypergeom import hyp2f1, hyp2f1_cut_pair
from .params import IdentityParams, Regime


class BranchCase(str, enum.Enum):
    N1_NEGATIVE = "n1_negative"
    N1_BETWEEN = "n1_between_0_and_n"
    N1_ABOVE_N = "n1_above_n"


@dataclass(frozen=True)
class WeightValue:
    q: object
    g_above: object
    g_below: object
    branch_case: BranchCase
    jump: object = None  # contribution of the G+ - G- term to q


def branch_case(n1: int, n: int) -> BranchCase:
    if n1 == 0 or n1 == n:
        raise DomainError("n1 must avoid 0 and n")
    if n1 < 0:
        return BranchCase.N1_NEGATIVE
    return BranchCase.N1_BETWEEN if n1 < n else BranchCase.N1_ABOVE_N


@dataclass(frozen=True)
class _Coefficients:
    jump: object  # i^{k+1} sin(pi r2 / 2)
    pos: object   # i^k cos(pi r2 / 2)
    neg: object   # cos(pi r1 / 2)


def _coefficients(r1, r2, k: int) -> _Coefficients:
    ik = -1 if (k // 2) % 2 else 1
    return _Coefficients(jump=mp.j * ik * mp.sinpi(r2 / 2),
                         pos=ik * mp.cospi(r2 / 2),
                         neg=mp.cospi(r1 / 2))


def _weight_raw(r1, r2, d, k: int, n1: int, n: int, coeffs: _Coefficients | None = None,
                skip_zero: bool = False) -> WeightValue:
    """Q for arbitrary complex (r1, r2, d) without regime checks."""
    case = branch_case(n1, n)
    if coeffs is None:
        coeffs = _coefficients(r1, r2, k)
    a, b, c = d + 1, d + r1 + 1, mp.mpf(k)
    z = mp.mpf(n) / n1
    norm = mp.gamma(k) * mp.power(abs(mp.mpf(n1) / n), d + 1)
    if case is BranchCase.N1_BETWEEN:
        pair = hyp2f1_cut_pair(a, b, c, z)
        gp, gm = pair.above, pair.below
        jump = (gp - gm) * coeffs.jump / norm
        even = (gp + gm) * coeffs.pos / norm
        return WeightValue(jump + even, gp, gm, case, jump)
    factor = coeffs.neg if case is BranchCase.N1_NEGATIVE else coeffs.pos
    if skip_zero and factor == 0:
        return WeightValue(mp.zero, None, None, case, mp.zero)
    g = hyp2f1(a, b, c, z)
    return WeightValue(2 * g * factor / norm, g, g, case, mp.zero)


def _require_a(p: IdentityParams):
    if p.regime is not Regime.CONVERGENT:
        raise RegimeError("the convergent weight needs convergent-regime parameters")


@working
def weight_q(p: IdentityParams, n1: int, n: int) -> WeightValue:
    """Q(n1, n - n1) with G+- taken as boundary values of 2F1(d+1, d+r1+1; k; n/n1)."""
    _require_a(p)
    r1, r2, d = p.mp_values()
    return _weight_raw(r1, r2, d, p.k, int(n1), int(n))


@working
def weight_q_cut_form(p: IdentityParams, n1: int, n: int):
    """Jump contribution to Q from the closed form of G+ - G-.

    G+ - G- = 2 pi i Gamma(k) / (Gamma(d+1) Gamma(d+r1+1) Gamma(r2+1))
              * (n/n1 - 1)^r2 * 2F1(k-d-1, d+r2+1; r2+1; 1 - n/n1)
    for 0 < n1 < n, and 0 when no cut is crossed.
    """
    _require_a(p)
    n1, n = int(n1), int(n)
    if branch_case(n1, n) is not BranchCase.N1_BETWEEN:
        return mp.zero
    r1, r2, d = p.mp_values()
    k = p.k
    x = mp.mpf(n) / n1
    jump = (2 * mp.pi * mp.j * mp.gamma(k) * mp.rgamma(d + 1) * mp.rgamma(d + r1 + 1) * mp.rgamma(r2 + 1)
            * mp.power(x - 1, r2) * hyp2f1(k - d - 1, d + r2 + 1, r2 + 1, 1 - x))
    coeffs = _coefficients(r1, r2, k)
    norm = mp.gamma(k) * mp.power(mp.mpf(n1) / n, d + 1)
    return jump * coeffs.jump / norm

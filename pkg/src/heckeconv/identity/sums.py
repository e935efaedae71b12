"""Truncated left-hand sums, the assembled right-hand side and reports."""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from mpmath import mp

from ..arith import sigma, sigma_table
from ..errors import DomainError, RegimeError
from ..mpcore.context import current, working
from ..mpcore.zeta import hurwitz_zeta
from .params import IdentityParams, Regime
from .terms import cusp_term, z_term
from .weights import _coefficients, _weight_raw

TAIL_EPS = mp.mpf("0.05")


def _as_mp(v):
    if v is None:
        return None
    if isinstance(v, int):
        return mp.mpf(v)
    if hasattr(v, "numerator") and hasattr(v, "denominator"):
        return mp.mpf(v.numerator) / v.denominator
    return v


@dataclass(frozen=True)
class LhsResult:
    value: object
    tail_bound: object
    terms_used: int


def lhs_terms(p: IdentityParams, n: int, N: int, order: str = "ascending"):
    """Yield (n1, term) over n1 in [-N, N] minus {0, n}; zero factors are skipped exactly."""
    r1, r2, d = p.mp_values()
    coeffs = _coefficients(r1, r2, p.k)
    top = N + n
    s1 = sigma_table(-p.r1 if p.exact else -r1, top)
    s2 = s1 if p.r1 == p.r2 else sigma_table(-p.r2 if p.exact else -r2, top)
    seq = []
    for m in range(1, N + 1):
        seq.append(m)
        seq.append(-m)
    if order == "descending":
        seq.reverse()
    real = p.is_real
    for n1 in seq:
        if n1 == n:
            continue
        wv = _weight_raw(r1, r2, d, p.k, n1, n, coeffs, skip_zero=True)
        q = wv.q
        if q == 0:
            yield n1, mp.zero
            continue
        if real:
            q = mp.re(q)
        yield n1, q * _as_mp(s1[abs(n1)]) * _as_mp(s2[abs(n - n1)])


def truncated_sum(pairs, N: int, sig):
    """fsum of the terms of (n1, term) pairs plus the empirical tail bound.

    The tail model fits C |n1|^-sig to the largest term in the outer decade
    N/10 <= |n1| <= N and sums it over |n1| > N on both sides.
    """
    terms = []
    outer_lo = max(1, N // 10)
    c_emp = mp.zero
    for n1, t in pairs:
        terms.append(t)
        if abs(n1) >= outer_lo and t != 0:
            c_emp = max(c_emp, abs(t) * mp.mpf(abs(n1)) ** sig)
    value = mp.fsum(terms)
    tail = 2 * c_emp * hurwitz_zeta(sig, N + 1) if c_emp else mp.zero
    return value, tail, len(terms)


@working
def lhs_sum(p: IdentityParams, n: int, N: int, order: str = "ascending") -> LhsResult:
    """Truncated sum of Q(n1, n2) sigma_{-r1}(n1) sigma_{-r2}(n2) with an empirical tail bound."""
    if p.regime is not Regime.CONVERGENT:
        raise RegimeError("lhs_sum needs convergent-regime parameters")
    n, N = int(n), int(N)
    if n < 1:
        raise DomainError("n must be positive")
    if N < 4 * n:
        raise DomainError("truncation N must be at least 4n")
    sig = mp.re(p.d.to_mp()) + 1 - TAIL_EPS
    value, tail, count = truncated_sum(lhs_terms(p, n, N, order), N, sig)
    return LhsResult(value, tail, count)


@dataclass
class EvaluationReport:
    params: dict
    n: int
    N: int
    lhs: object
    lhs_tail_bound: object
    z_term_1: object
    z_term_2: object
    cusp_term: object
    rhs: object
    residual: object
    tolerance: object
    passed: bool
    exact: bool = False
    digits: int = 50
    timings: dict = field(default_factory=dict)

    @property
    def abs_residual(self):
        return abs(self.residual)

    @property
    def rel_residual(self):
        scale = max(abs(self.rhs), abs(self.lhs))
        return abs(self.residual) / scale if scale else abs(self.residual)


@working
def rhs_parts(p: IdentityParams, n: int):
    """(Z^(r1,r2), Z^(r2,r1), cusp, rhs) for the convergent identity."""
    r1, r2, d = p.mp_values()
    z1 = z_term(r1, r2, d, n)
    z2 = z_term(r2, r1, d, n)
    cusp = cusp_term(p, n)
    s1 = _as_mp(sigma(-p.r1 if p.exact else -r1, n))
    s2 = _as_mp(sigma(-p.r2 if p.exact else -r2, n))
    rhs = -p.i_k * z1 * s1 - z2 * s2 + cusp
    return z1, z2, cusp, rhs


def default_tolerance(*values):
    scale = max([abs(v) for v in values] + [mp.mpf(1e-30)])
    return scale * mp.mpf(10) ** (10 - current().digits)


def verify(p: IdentityParams, n: int, N: int | None = None, tol=None, exact: bool | None = None) -> EvaluationReport:
    """Assemble both sides of the convergent identity at n."""
    from .exact import exact_applicable, verify_exact

    if p.regime is not Regime.CONVERGENT:
        raise RegimeError("verify needs convergent-regime parameters")
    if exact is None:
        exact = exact_applicable(p)
    if exact:
        return verify_exact(p, n)
    digits = current().digits
    if N is None:
        N = 4 * n if p.finite_support else max(4 * n, 2000)
    with mp.workdps(digits + 10):
        t0 = time.perf_counter()
        lhs = lhs_sum(p, n, N)
        t1 = time.perf_counter()
        z1, z2, cusp, rhs = rhs_parts(p, n)
        t2 = time.perf_counter()
        residual = lhs.value - rhs
        if tol is None:
            tol = default_tolerance(lhs.value, z1, z2, cusp)
        passed = bool(abs(residual) <= tol + lhs.tail_bound)
    return EvaluationReport(p.as_dict(), n, N, lhs.value, lhs.tail_bound, z1, z2, cusp, rhs, residual,
                            tol, passed, False, digits, {"lhs": t1 - t0, "rhs": t2 - t1})

"""Independent numerical checks of the analytic ingredients.

Each check returns a ResidualRecord holding both sides and the size of
their difference, so callers can apply their own tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

import numpy as np
from mpmath import mp

from . import _kernels
from .arith import kloosterman, mod_inverse, ramanujan_c_table, sigma
from .errors import DomainError, PoleError
from .gaussq import to_mp
from .modforms import (
    _mp_cutoff,
    cusp_dimension,
    eigenform_coeffs,
    petersson_norm,
    trace_tail_bound,
)
from .mpcore.bessel import bessel_j
from .mpcore.context import current, working
from .mpcore.hypergeom import hyp2f1
from .mpcore.zeta import hurwitz_zeta, riemann_zeta


@dataclass
class ResidualRecord:
    check: str
    inputs: dict
    left: object
    right: object
    truncation: dict = field(default_factory=dict)

    @property
    def abs_residual(self):
        return abs(self.left - self.right)

    @property
    def rel_residual(self):
        scale = max(abs(self.left), abs(self.right))
        return self.abs_residual / scale if scale else self.abs_residual

    def passes(self, tol, relative: bool = False) -> bool:
        err = self.rel_residual if relative else self.abs_residual
        return bool(err <= tol + self.truncation.get("tail_bound", 0))


# ---------------------------------------------------------------------------
# Petersson trace formula

def _trace_side(k, pairs, L, table=None, target=None):
    """sum_{ell <= L} (2 pi / ell) S(-m, -n; ell) J_{k-1}(4 pi sqrt(mn) / ell) for each pair."""
    if target is None:
        target = mp.mpf(10) ** (-(current().digits - 5))
    nu = k - 1
    out = []
    for idx, (m, n) in enumerate(pairs):
        x_num = 4 * mp.pi * mp.sqrt(mp.mpf(m) * n)
        cut = _mp_cutoff(k, m, n, L, target)
        head = mp.fsum(2 * mp.pi / ell * kloosterman(-m, -n, ell) * bessel_j(nu, x_num / ell)
                       for ell in range(1, cut + 1))
        if cut < L:
            svals = table[idx][cut + 1:L + 1]
            ells = np.arange(cut + 1, L + 1, dtype=np.float64)
            jvals = _kernels.bessel_j_small_f64(float(nu), float(x_num) / ells)
            head += float(np.sum(2 * np.pi / ells * svals * jvals))
        out.append(head)
    return out


def _spectral_side(k, m, n):
    eps = (-1) ** (k // 2)
    delta = 1 if m == n else 0
    if cusp_dimension(k) == 0:
        return -eps * delta
    f = eigenform_coeffs(k, max(m, n, 2))
    x = 4 * mp.pi * mp.sqrt(mp.mpf(m) * n)
    return eps * (mp.gamma(k - 1) * x ** (1 - k) * f.a(m) * f.a(n) / petersson_norm(k) - delta)


@working
def petersson_residuals(k: int, pairs, L: int = 10_000, table=None, target=None) -> list[ResidualRecord]:
    """Trace formula check for several (m, n) pairs sharing one Kloosterman table.

    ``target`` bounds the float64 error of the Bessel tail; terms above it are
    summed exactly in mp.  The default 1e-20 is far below any useful tolerance.
    """
    if target is None:
        target = mp.mpf("1e-20")
    if L < 1000:
        raise DomainError("truncation L must be at least 1000")
    if cusp_dimension(k) > 1:
        from .errors import UnsupportedWeightError
        raise UnsupportedWeightError(f"weight {k} has a cusp space of dimension {cusp_dimension(k)}")
    pairs = [(int(m), int(n)) for m, n in pairs]
    if table is None:
        table = _kernels.kloosterman_float_table([-m for m, _ in pairs], [-n for _, n in pairs], L)
    lefts = _trace_side(k, pairs, L, table, target)
    out = []
    for (m, n), left in zip(pairs, lefts):
        out.append(ResidualRecord("petersson", {"k": k, "m": m, "n": n}, left, _spectral_side(k, m, n),
                                  {"L": L, "tail_bound": trace_tail_bound(k, m, n, L)}))
    return out


def petersson_residual(m: int, n: int, k: int, L: int = 10_000) -> ResidualRecord:
    return petersson_residuals(k, [(m, n)], L)[0]


def kloosterman_table(pairs, L: int):
    """Shared float64 Kloosterman table for petersson_residuals."""
    return _kernels.kloosterman_float_table([-m for m, _ in pairs], [-n for _, n in pairs], L)


# ---------------------------------------------------------------------------
# Estermann zeta function

def _check_coprime(v, ell):
    if ell < 1 or gcd(int(v), int(ell)) != 1:
        raise DomainError("need ell >= 1 and gcd(v, ell) = 1")


@working
def estermann_eval(s, v: int, ell: int, a):
    """E(s; v/ell, a) = ell^(a-2s) sum_{m1,m2} e(v m1 m2/ell) zeta(s-a, m1/ell) zeta(s, m2/ell)."""
    v, ell = int(v), int(ell)
    _check_coprime(v, ell)
    s, a = to_mp(s), to_mp(a)
    if s == 1 or s == 1 + a:
        raise PoleError(f"Estermann zeta has a pole at s = {s}")
    z1 = [hurwitz_zeta(s - a, mp.mpf(m) / ell) for m in range(1, ell + 1)]
    z2 = [hurwitz_zeta(s, mp.mpf(m) / ell) for m in range(1, ell + 1)]
    roots = [mp.expjpi(mp.mpf(2 * j) / ell) for j in range(ell)]
    total = mp.fsum(roots[(v * m1 * m2) % ell] * z1[m1 - 1] * z2[m2 - 1]
                    for m1 in range(1, ell + 1) for m2 in range(1, ell + 1))
    return mp.power(ell, a - 2 * s) * total


@working
def estermann_direct(s, v: int, ell: int, a, terms: int = 20_000):
    """Truncated Dirichlet series sum_{n <= terms} sigma_a(n) e(vn/ell) n^-s, for Re s large."""
    from .arith import sigma_table

    s, a = to_mp(s), to_mp(a)
    tab = sigma_table(a, terms)
    roots = [mp.expjpi(mp.mpf(2 * j) / ell) for j in range(ell)]
    return mp.fsum(to_mp(tab[n]) * roots[(v * n) % ell] * mp.power(n, -s) for n in range(1, terms + 1))


@working
def estermann_fe_residual(s, v: int, ell: int, a) -> ResidualRecord:
    """Functional equation relating E(s; v/ell, a) to E(1+a-s; +-vbar/ell, a)."""
    v, ell = int(v), int(ell)
    _check_coprime(v, ell)
    s, a = to_mp(s), to_mp(a)
    vbar = mod_inverse(v, ell) if ell > 1 else 1
    left = estermann_eval(s, v, ell, a)
    sp = 1 + a - s
    right = (mp.power(ell / (2 * mp.pi), 1 + a - 2 * s) / mp.pi * mp.gamma(1 - s) * mp.gamma(1 + a - s)
             * (mp.cospi(a / 2) * estermann_eval(sp, vbar, ell, a)
                - mp.cospi(s - a / 2) * estermann_eval(sp, -vbar, ell, a)))
    return ResidualRecord("estermann_fe", {"s": s, "v": v, "ell": ell, "a": a}, left, right)


@working
def estermann_residue_probe(pole: str, v: int, ell: int, a, delta=None) -> ResidualRecord:
    """Residue of E at s = 1 or s = 1 + a from two probes at distance delta and 2 delta.

    (s - s0) E(s) = Res + O(s - s0), so 2 R(delta) - R(2 delta) cancels the linear term.
    """
    a = to_mp(a)
    if delta is None:
        delta = mp.mpf("1e-8")
    if pole == "1":
        s0 = mp.one
        expected = riemann_zeta(1 - a) * mp.power(ell, a - 1)
    elif pole == "1+a":
        s0 = 1 + a
        expected = riemann_zeta(1 + a) * mp.power(ell, -a - 1)
    else:
        raise DomainError("pole must be '1' or '1+a'")

    def probe(h):
        return h * estermann_eval(s0 + h, v, ell, a)

    left = 2 * probe(delta) - probe(2 * delta)
    return ResidualRecord("estermann_residue", {"pole": pole, "v": v, "ell": ell, "a": a}, left, expected,
                          {"delta": delta})


# ---------------------------------------------------------------------------
# Ramanujan's expansion of the divisor function

@working
def ramanujan_residual(r2, x: int, L: int) -> ResidualRecord:
    """sigma_{-r2}(x) against zeta(1 + r2) sum_{ell <= L} ell^(-r2-1) c_ell(x)."""
    r2 = to_mp(r2)
    if mp.re(r2) <= 0:
        raise DomainError("Ramanujan's expansion needs Re(r2) > 0")
    cs = ramanujan_c_table(int(x), int(L))
    series = mp.fsum(int(cs[ell]) * mp.power(ell, -r2 - 1) for ell in range(1, L + 1) if cs[ell])
    left = to_mp(sigma(-r2, x))
    zeta = riemann_zeta(1 + r2)
    # |c_ell(x)| <= sigma_1(x), so the dropped terms sum to at most this
    tail = abs(zeta) * to_mp(sigma(1, x)) * mp.power(L, -mp.re(r2)) / mp.re(r2)
    return ResidualRecord("ramanujan", {"r2": r2, "x": x}, left, zeta * series, {"L": L, "tail_bound": tail})


# ---------------------------------------------------------------------------
# Mellin-Barnes integrals

def _vertical_integral(f, c, T, conj_symmetric: bool, pieces: int):
    """(1 / 2 pi i) int_{c - iT}^{c + iT} f(s) ds, split into equal pieces."""
    nodes = [T * j / pieces for j in range(pieces + 1)]
    method = "gauss-legendre"
    if conj_symmetric:
        val = mp.quad(lambda t: mp.re(f(mp.mpc(c, t))), nodes, method=method)
        return val / mp.pi
    up = mp.quad(lambda t: f(mp.mpc(c, t)), nodes, method=method)
    down = mp.quad(lambda t: f(mp.mpc(c, -t)), nodes, method=method)
    return (up + down) / (2 * mp.pi)


@working
def mellin_bessel_residual(r1, r2, d, x, c, target=None, max_T=4000) -> ResidualRecord:
    """J_{2d+r1+r2+1}(x) against its Mellin-Barnes integral along Re s = c.

    The integrand is Gamma(d-s+1)/Gamma(d+s+r1+r2+1) (x/2)^(2s+r1+r2-1); its
    modulus decays like |t|^(-2c-Re(r1+r2)), which fixes the cut-off T
    (capped at max_T; a slowly decaying contour then shows up in the tail bound).
    """
    r1, r2, d, x, c = (to_mp(v) for v in (r1, r2, d, x, c))
    lo = mp.re(1 - r1 - r2) / 2
    hi = mp.re(d) + 1
    if not (lo < c < hi):
        raise DomainError(f"contour Re s = {c} must lie strictly inside ({lo}, {hi})")
    if x <= 0:
        raise DomainError("x must be positive")
    if target is None:
        target = mp.mpf("1e-11")
    p = 2 * c + mp.re(r1 + r2)

    def f(s):
        return mp.gamma(d - s + 1) * mp.rgamma(d + s + r1 + r2 + 1) * mp.power(x / 2, 2 * s + r1 + r2 - 1)

    # T is where the envelope A t^-p of |integrand| drops below the target,
    # with A fitted at t = 50.  The tail beyond T oscillates with phase
    # derivative phi'(t), so its size is at most about 2 |f(T)| / |phi'(T)|.
    t0 = mp.mpf(50)
    amp = abs(f(mp.mpc(c, t0))) * t0 ** p
    T = t0
    while amp * T ** (-p) > target and T < max_T:
        T *= mp.mpf(1.25)
    T = min(T, mp.mpf(max_T))
    sT = mp.mpc(c, T)
    phase_rate = abs(mp.re(2 * mp.log(x / 2) - mp.digamma(d - sT + 1) - mp.digamma(d + sT + r1 + r2 + 1)))
    tail = 2 * amp * T ** (-p) / phase_rate / mp.pi
    real = all(mp.im(v) == 0 for v in (r1, r2, d))
    pieces = max(8, int(T * phase_rate / (4 * mp.pi)) + 8)
    with mp.workdps(max(25, int(-mp.log10(target)) + 10)):
        integral = _vertical_integral(f, c, T, real, pieces)
    right = bessel_j(2 * d + r1 + r2 + 1, x)
    return ResidualRecord("mellin_bessel", {"r1": r1, "r2": r2, "d": d, "x": x, "c": c}, integral, right,
                          {"T": T, "tail_bound": tail})


@working
def mellin_2f1_residual(r1, r2, d, w, t, c) -> ResidualRecord:
    """Mellin-Barnes integral of Gamma(d-s+1) Gamma(s) Gamma(r1+s) / Gamma(d+r1+r2+s+1) against 2F1."""
    r1, r2, d, w, t, c = (to_mp(v) for v in (r1, r2, d, w, t, c))
    bound = min(mp.re(d + 1), mp.re(d + r1 + 1))
    if not (0 < c < bound):
        raise DomainError(f"contour Re s = {c} must lie strictly inside (0, {bound})")
    if abs(mp.arg(w / t)) >= mp.pi:
        raise DomainError("need |arg(w/t)| < pi")

    def f(s):
        return (mp.gamma(d - s + 1) * mp.gamma(s) * mp.gamma(r1 + s) * mp.rgamma(d + r1 + r2 + s + 1)
                * mp.power(w, -d + s - 1) * mp.power(t, -s))

    # three Gamma factors over one decay like exp(-(pi - |arg(w/t)|) |t|)
    rate = mp.pi - abs(mp.arg(w / t))
    T = mp.mpf(20)
    while abs(f(mp.mpc(c, T))) + abs(f(mp.mpc(c, -T))) > mp.mpf(10) ** (-(current().digits // 2)) * rate:
        T *= 1.5
    real = all(mp.im(v) == 0 for v in (r1, r2, d, w, t))
    with mp.workdps(max(25, current().digits // 2 + 10)):
        left = _vertical_integral(f, c, T, real, max(8, int(T)))
    right = (mp.power(t, -1 - d) * mp.gamma(d + 1) * mp.gamma(d + r1 + 1) * mp.rgamma(2 * d + r1 + r2 + 2)
             * hyp2f1(d + 1, d + r1 + 1, 2 * d + r1 + r2 + 2, -w / t))
    return ResidualRecord("mellin_2f1", {"r1": r1, "r2": r2, "d": d, "w": w, "t": t, "c": c}, left, right,
                          {"T": T})

"""Float64/int64 hot loops with a numba backend and a pure-numpy fallback.

Backend selection: ``HECKECONV_KERNELS=numpy`` forces the fallback;
otherwise numba is used when importable.  Both backends implement the
same contracts; integer kernels agree exactly, float kernels to
rounding.
"""

from __future__ import annotations

import math
import os

import numpy as np

ENV_KERNELS = "HECKECONV_KERNELS"


def _want_numba() -> bool:
    if os.environ.get(ENV_KERNELS, "").strip().lower() == "numpy":
        return False
    try:
        import numba  # noqa: F401
    except ImportError:
        return False
    return True


USE_NUMBA = _want_numba()
BACKEND = "numba" if USE_NUMBA else "numpy"

if USE_NUMBA:
    from numba import njit
else:  # pragma: no cover - exercised under HECKECONV_KERNELS=numpy
    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]
        return lambda fn: fn


# ---------------------------------------------------------------------------
# numba implementations


@njit(cache=True)
def _inv_or_zero(h, ell):
    # extended Euclid; returns 0 when gcd(h, ell) != 1 (ell > 1)
    r0, r1 = ell, h % ell
    t0, t1 = 0, 1
    while r1 != 0:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        t0, t1 = t1, t0 - q * t1
    if r0 != 1:
        return 0
    t0 %= ell
    if t0 < 0:
        t0 += ell
    return t0


@njit(cache=True)
def _kl_counts_nb(m, n, ell):
    counts = np.zeros(ell, dtype=np.int64)
    if ell == 1:
        counts[0] = 1
        return counts
    mm = ((m % ell) + ell) % ell
    nn = ((n % ell) + ell) % ell
    for h in range(1, ell):
        hb = _inv_or_zero(h, ell)
        if hb == 0:
            continue
        r = (mm * h + nn * hb) % ell
        counts[r] += 1
    return counts


@njit(cache=True)
def _kl_table_nb(ms, ns, lmax):
    npairs = ms.shape[0]
    out = np.zeros((npairs, lmax + 1))
    units = np.empty(lmax, dtype=np.int64)
    invs = np.empty(lmax, dtype=np.int64)
    for ell in range(1, lmax + 1):
        if ell == 1:
            for p in range(npairs):
                out[p, 1] = 1.0
            continue
        # inv(ell - h) = ell - inv(h): only half the inverses need Euclid
        cnt = 0
        for h in range(1, ell // 2 + 1):
            hb = _inv_or_zero(h, ell)
            if hb != 0:
                units[cnt] = h
                invs[cnt] = hb
                cnt += 1
                if 2 * h != ell:
                    units[cnt] = ell - h
                    invs[cnt] = ell - hb
                    cnt += 1
        costab = np.empty(ell)
        for r in range(ell):
            costab[r] = math.cos(2.0 * math.pi * r / ell)
        for p in range(npairs):
            mm = ((ms[p] % ell) + ell) % ell
            nn = ((ns[p] % ell) + ell) % ell
            s = 0.0
            c = 0.0
            for j in range(cnt):
                v = costab[(mm * units[j] + nn * invs[j]) % ell]
                t = s + v
                if abs(s) >= abs(v):
                    c += (s - t) + v
                else:
                    c += (v - t) + s
                s = t
            out[p, ell] = s + c
    return out


@njit(cache=True)
def _mobius_nb(nmax):
    mu = np.ones(nmax + 1, dtype=np.int64)
    mu[0] = 0
    is_comp = np.zeros(nmax + 1, dtype=np.bool_)
    for p in range(2, nmax + 1):
        if not is_comp[p]:
            for q in range(p, nmax + 1, p):
                if q > p:
                    is_comp[q] = True
                mu[q] = -mu[q]
            pp = p * p
            for q in range(pp, nmax + 1, pp):
                mu[q] = 0
    return mu


@njit(cache=True)
def _totient_nb(nmax):
    phi = np.arange(nmax + 1, dtype=np.int64)
    for p in range(2, nmax + 1):
        if phi[p] == p:
            for q in range(p, nmax + 1, p):
                phi[q] -= phi[q] // p
    return phi


@njit(cache=True)
def _ramanujan_nb(x, lmax, mu):
    # c_ell(x) = sum_{d | gcd(ell, x)} mu(ell/d) d, scattered from each divisor d of x
    out = np.zeros(lmax + 1, dtype=np.int64)
    ax = abs(x)
    for d in range(1, lmax + 1):
        if ax != 0 and ax % d != 0:
            continue
        for ell in range(d, lmax + 1, d):
            out[ell] += mu[ell // d] * d
    return out


@njit(cache=True)
def _bessel_series_nb(nu, xs, lognorm):
    # J_nu(x) = (x/2)^nu / Gamma(nu+1) * sum (-x^2/4)^k / (k! (nu+1)_k); small x only
    out = np.empty(xs.shape[0])
    for i in range(xs.shape[0]):
        x = xs[i]
        q = -x * x / 4.0
        term = 1.0
        total = 1.0
        k = 1
        while True:
            term *= q / (k * (nu + k))
            total += term
            if abs(term) < 1e-18 * abs(total) or k > 500:
                break
            k += 1
        out[i] = math.exp(nu * math.log(x / 2.0) - lognorm) * total
    return out


# ---------------------------------------------------------------------------
# numpy fallbacks


def _modinv_array(h: np.ndarray, ell: int) -> np.ndarray:
    r0 = np.full_like(h, ell)
    r1 = h % ell
    t0 = np.zeros_like(h)
    t1 = np.ones_like(h)
    while np.any(r1 != 0):
        mask = r1 != 0
        safe = np.where(mask, r1, 1)
        q = np.where(mask, r0 // safe, 0)
        r0, r1 = np.where(mask, r1, r0), np.where(mask, r0 - q * r1, r1)
        t0, t1 = np.where(mask, t1, t0), np.where(mask, t0 - q * t1, t1)
    return r0, t0 % ell


def _units_np(ell: int):
    h = np.arange(1, ell, dtype=np.int64)
    g, inv = _modinv_array(h, ell)
    keep = g == 1
    return h[keep], inv[keep]


def _kl_counts_np(m, n, ell):
    if ell == 1:
        out = np.zeros(1, dtype=np.int64)
        out[0] = 1
        return out
    h, inv = _units_np(ell)
    r = (m % ell * h + n % ell * inv) % ell
    return np.bincount(r, minlength=ell).astype(np.int64)


def _kl_table_np(ms, ns, lmax):
    out = np.zeros((len(ms), lmax + 1))
    out[:, 1] = 1.0
    for ell in range(2, lmax + 1):
        h, inv = _units_np(ell)
        costab = np.cos(2.0 * np.pi * np.arange(ell) / ell)
        for p, (m, n) in enumerate(zip(ms, ns)):
            out[p, ell] = costab[(int(m) % ell * h + int(n) % ell * inv) % ell].sum()
    return out


def _mobius_np(nmax):
    mu = np.ones(nmax + 1, dtype=np.int64)
    mu[0] = 0
    sieve = np.ones(nmax + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, int(nmax) + 1):
        if sieve[p]:
            sieve[2 * p::p] = False
            mu[p::p] *= -1
            mu[p * p::p * p] = 0
    return mu


def _totient_np(nmax):
    phi = np.arange(nmax + 1, dtype=np.int64)
    for p in range(2, int(nmax) + 1):
        if phi[p] == p:
            phi[p::p] -= phi[p::p] // p
    return phi


def _ramanujan_np(x, lmax, mu):
    out = np.zeros(lmax + 1, dtype=np.int64)
    ax = abs(int(x))
    for d in range(1, lmax + 1):
        if ax != 0 and ax % d:
            continue
        ells = np.arange(d, lmax + 1, d)
        out[ells] += mu[ells // d] * d
    return out


def _bessel_series_np(nu, xs, lognorm):
    xs = np.asarray(xs, dtype=float)
    q = -xs * xs / 4.0
    term = np.ones_like(xs)
    total = np.ones_like(xs)
    for k in range(1, 501):
        term = term * q / (k * (nu + k))
        total = total + term
        if np.all(np.abs(term) < 1e-18 * np.abs(total)):
            break
    return np.exp(nu * np.log(xs / 2.0) - lognorm) * total


# ---------------------------------------------------------------------------
# public entry points


def kloosterman_residue_counts(m: int, n: int, ell: int) -> np.ndarray:
    """counts[r] = #{h mod ell coprime : m h + n hbar = r (mod ell)}."""
    if USE_NUMBA:
        return _kl_counts_nb(int(m), int(n), int(ell))
    return _kl_counts_np(int(m), int(n), int(ell))


def kloosterman_float_table(ms, ns, lmax: int) -> np.ndarray:
    """float64 S(m_p, n_p; ell) for ell = 0..lmax (column 0 unused)."""
    ms = np.asarray(ms, dtype=np.int64)
    ns = np.asarray(ns, dtype=np.int64)
    if USE_NUMBA:
        return _kl_table_nb(ms, ns, int(lmax))
    return _kl_table_np(ms, ns, int(lmax))


def mobius_sieve(nmax: int) -> np.ndarray:
    return _mobius_nb(int(nmax)) if USE_NUMBA else _mobius_np(int(nmax))


def totient_sieve(nmax: int) -> np.ndarray:
    return _totient_nb(int(nmax)) if USE_NUMBA else _totient_np(int(nmax))


def ramanujan_table(x: int, lmax: int) -> np.ndarray:
    """Exact c_ell(x) for ell = 0..lmax (entry 0 unused)."""
    mu = mobius_sieve(lmax)
    if USE_NUMBA:
        return _ramanujan_nb(int(x), int(lmax), mu)
    return _ramanujan_np(int(x), int(lmax), mu)


def bessel_j_small_f64(nu: float, xs) -> np.ndarray:
    """float64 J_nu on small arguments (x < ~ nu) by the ascending series."""
    xs = np.ascontiguousarray(xs, dtype=np.float64)
    lognorm = math.lgamma(nu + 1.0)
    if USE_NUMBA:
        return _bessel_series_nb(float(nu), xs, lognorm)
    return _bessel_series_np(float(nu), xs, lognorm)

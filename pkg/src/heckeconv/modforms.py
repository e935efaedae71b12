"""Level-one Hecke eigenforms of one-dimensional cusp spaces.

Coefficients are exact integers built from power-series products
(Delta = q * prod (1-q^n)^24, then multiplication by E4 / E6).
L-values use the completed function Lambda(s) = (2 pi)^-s Gamma(s) L(s, f)
with Lambda(s) = (-1)^(k/2) Lambda(k - s), expanded as an incomplete
gamma series that converges for every complex s.
"""

from __future__ import annotations

import logging
import os
import tempfile
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path

import numpy as np
from mpmath import mp

from . import _kernels
from .arith import kloosterman
from .errors import DomainError, KernelFailure, TableTooShortError, UnsupportedWeightError
from .gaussq import to_mp
from .mpcore.bessel import bessel_j
from .mpcore.context import current, working
from .mpcore.incgamma import upper_incomplete_gamma

try:
    import gmpy2

    _mpz = gmpy2.mpz
except ImportError:  # pragma: no cover
    _mpz = int

log = logging.getLogger(__name__)

SUPPORTED_WEIGHTS = (12, 16, 18, 20, 22, 26)


# ---------------------------------------------------------------------------
# cusp space catalog


def cusp_dimension(k: int) -> int:
    if k < 0 or k % 2:
        return 0
    if k == 2:
        return 0
    base = k // 12
    return base - 1 if k % 12 == 2 else base


@dataclass(frozen=True)
class CuspSpaceCatalog:
    """dim S_k and the construction used when the space is a line."""

    recipes: tuple = (
        (12, (0, 0)),
        (16, (1, 0)),
        (18, (0, 1)),
        (20, (2, 0)),
        (22, (1, 1)),
        (26, (2, 1)),
    )

    def dimension(self, k: int) -> int:
        return cusp_dimension(k)

    def recipe(self, k: int) -> tuple[int, int] | None:
        """(a, b) with f_k = Delta * E4^a * E6^b, or None for dim 0."""
        dim = cusp_dimension(k)
        if dim == 0:
            return None
        for kk, ab in self.recipes:
            if kk == k:
                return ab
        raise UnsupportedWeightError(f"weight {k} has dim S_k = {dim}; only one-dimensional spaces are supported")


CATALOG = CuspSpaceCatalog()


# ---------------------------------------------------------------------------
# exact power series


def _pack(coeffs, bits):
    # signed Kronecker packing through a non-negative offset representation
    n = len(coeffs)
    off = 1 << (bits - 1)
    nbytes = bits // 8
    buf = b"".join(int(c + off).to_bytes(nbytes, "little") for c in coeffs)
    val = _mpz(int.from_bytes(buf, "little"))
    rep = _mpz(int.from_bytes((b"\x01" + b"\x00" * (nbytes - 1)) * n, "little"))
    return val - off * rep


def _unpack(value, bits, count):
    off = 1 << (bits - 1)
    nbytes = bits // 8
    rep = _mpz(int.from_bytes((b"\x01" + b"\x00" * (nbytes - 1)) * count, "little"))
    shifted = int(value + off * rep)
    raw = shifted.to_bytes(nbytes * count + 1, "little")
    return [int.from_bytes(raw[i * nbytes:(i + 1) * nbytes], "little") - off for i in range(count)]


def series_mul(a: list[int], b: list[int], n: int) -> list[int]:
    """First n coefficients of the product of two integer power series."""
    a = a[:n]
    b = b[:n]
    if not a or not b:
        return [0] * n
    ma, mb = max(abs(x) for x in a), max(abs(x) for x in b)
    # slots must hold both the inputs and every product coefficient
    bound = max(ma * mb * min(len(a), len(b)), ma, mb)
    bits = bound.bit_length() + 2
    bits = (bits + 7) // 8 * 8
    prod = _pack(a, bits) * _pack(b, bits)
    total = len(a) + len(b) - 1
    digits = _unpack(prod, bits, total)
    out = digits[:n]
    return out + [0] * (n - len(out))


def _pentagonal(n: int) -> list[int]:
    """prod_{m>=1} (1 - q^m) truncated to n coefficients (Euler)."""
    out = [0] * n
    j = 0
    while True:
        for e in (j * (3 * j - 1) // 2, j * (3 * j + 1) // 2):
            if e < n:
                out[e] = -1 if j % 2 else 1
        if j * (3 * j - 1) // 2 >= n:
            break
        j += 1
    return out


def _divisor_power_sums(p: int, n: int) -> list[int]:
    tab = [0] * n
    for d in range(1, n):
        dp = d ** p
        for m in range(d, n, d):
            tab[m] += dp
    return tab


def _eisenstein(weight: int, n: int) -> list[int]:
    factor = {4: 240, 6: -504}[weight]
    sig = _divisor_power_sums(weight - 1, n)
    return [1] + [factor * sig[m] for m in range(1, n)]


@lru_cache(maxsize=8)
def _delta_series(n: int) -> tuple[int, ...]:
    # q-expansion coefficients of Delta: index j holds tau(j), length n + 1
    p = _pentagonal(n)
    p2 = series_mul(p, p, n)
    p4 = series_mul(p2, p2, n)
    p8 = series_mul(p4, p4, n)
    p16 = series_mul(p8, p8, n)
    p24 = series_mul(p16, p8, n)
    return tuple([0] + p24)


def _compute_coeffs(k: int, n: int) -> list[int]:
    ab = CATALOG.recipe(k)
    if ab is None:
        return [0] * n
    f = list(_delta_series(n))  # index 0..n
    a, b = ab
    for _ in range(a):
        f = series_mul(f, _eisenstein(4, n + 1), n + 1)
    for _ in range(b):
        f = series_mul(f, _eisenstein(6, n + 1), n + 1)
    lead = f[1]
    if lead != 1:
        raise KernelFailure(f"weight {k} product has leading coefficient {lead}")
    return f[1:n + 1]


# ---------------------------------------------------------------------------
# tables and cache


@dataclass(frozen=True)
class EigenformTable:
    k: int
    coeffs: tuple[int, ...]

    @property
    def N(self) -> int:
        return len(self.coeffs)

    @property
    def is_zero_space(self) -> bool:
        return cusp_dimension(self.k) == 0

    def a(self, m: int) -> int:
        """a_f(m), 1-based."""
        if m < 1:
            raise DomainError("coefficient index must be >= 1")
        if self.is_zero_space:
            return 0
        if m > self.N:
            raise TableTooShortError(f"table for weight {self.k} has only {self.N} coefficients", m)
        return self.coeffs[m - 1]


def _cache_path(cache_dir, k: int) -> Path:
    return Path(cache_dir) / f"eigenform_k{k}.txt"


def read_cache(path: Path) -> tuple[int, list[int]] | None:
    try:
        with open(path, encoding="ascii") as fh:
            header = fh.readline().split()
            k, n = int(header[0]), int(header[1])
            vals = [int(line) for line in fh if line.strip()]
    except (OSError, ValueError, IndexError):
        return None
    if len(vals) != n:
        return None
    return k, vals


def write_cache(path: Path, k: int, coeffs: list[int]) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    with os.fdopen(fd, "w", encoding="ascii") as fh:
        fh.write(f"{k} {len(coeffs)}\n")
        fh.write("\n".join(str(c) for c in coeffs))
        fh.write("\n")
    os.replace(tmp, path)


_MEMO: dict[int, tuple[int, ...]] = {}
_DEFAULT_CACHE_DIR: Path | None = None


def set_default_cache_dir(path) -> None:
    """Directory used for coefficient tables when a call passes no cache_dir."""
    global _DEFAULT_CACHE_DIR
    _DEFAULT_CACHE_DIR = Path(path) if path is not None else None


def eigenform_coeffs(k: int, N: int, cache_dir=None) -> EigenformTable:
    """Exact coefficients a_f(1..N) of the normalized eigenform of weight k."""
    k, N = int(k), int(N)
    if N < 1:
        raise DomainError("N must be >= 1")
    if k % 2 or k < 4:
        raise UnsupportedWeightError(f"weight {k} is not an even weight >= 4")
    if cusp_dimension(k) == 0:
        return EigenformTable(k, ())
    CATALOG.recipe(k)  # raises for dim >= 2
    if cache_dir is None:
        cache_dir = _DEFAULT_CACHE_DIR
    have = _MEMO.get(k)
    coeffs = list(have) if have is not None and len(have) >= N else None
    if coeffs is None and cache_dir is not None:
        path = _cache_path(cache_dir, k)
        cached = read_cache(path)
        if cached is not None and cached[0] == k and len(cached[1]) >= N:
            coeffs = cached[1]
        elif cached is None and path.exists():
            log.warning("ignoring malformed coefficient cache %s", path)
    if coeffs is None:
        coeffs = _compute_coeffs(k, N)
    if cache_dir is not None:
        path = _cache_path(cache_dir, k)
        on_disk = read_cache(path)
        if on_disk is None or on_disk[0] != k or len(on_disk[1]) < len(coeffs):
            write_cache(path, k, coeffs)
    if have is None or len(coeffs) > len(have):
        _MEMO[k] = tuple(coeffs)
    return EigenformTable(k, tuple(coeffs[:N]))


# ---------------------------------------------------------------------------
# L-values


def _terms_needed(k: int, s, tol) -> int:
    """Smallest M with the coefficient-bounded tail beyond M below tol."""
    sig = mp.re(s)
    n = 1
    while True:
        x = 2 * mp.pi * n
        bound = mp.mpf(n) ** (mp.mpf(k + 1) / 2) * (
            upper_incomplete_gamma(sig, x) * x ** (-sig) + upper_incomplete_gamma(k - sig, x) * x ** (sig - k))
        if n > 3 and bound < tol:
            return n
        n += 1


@working
def completed_l(f: EigenformTable, s):
    """Lambda(s) = (2 pi)^-s Gamma(s) L(s, f)."""
    s = to_mp(s)
    if f.is_zero_space:
        return mp.zero
    k = f.k
    eps_sign = (-1) ** (k // 2)
    tol = mp.mpf(10) ** (-(mp.dps + 2))
    need = _terms_needed(k, s, tol)
    if need > f.N:
        raise TableTooShortError(f"L-value at s = {s} needs {need} coefficients, table has {f.N}", need)
    terms = []
    for m in range(1, need + 1):
        am = f.coeffs[m - 1]
        if am == 0:
            continue
        x = 2 * mp.pi * m
        terms.append(am * (upper_incomplete_gamma(s, x) * x ** (-s)
                           + eps_sign * upper_incomplete_gamma(k - s, x) * x ** (s - k)))
    return mp.fsum(terms)


@working
def l_value(f: EigenformTable, s):
    """L(s, f) for any complex s."""
    s = to_mp(s)
    if f.is_zero_space:
        return mp.zero
    return completed_l(f, s) * (2 * mp.pi) ** s * mp.rgamma(s)


@working
def l_value_direct(f: EigenformTable, s, terms: int | None = None):
    """Truncated Dirichlet series; an oracle for Re s > (k+1)/2."""
    s = to_mp(s)
    n = f.N if terms is None else min(terms, f.N)
    return mp.fsum(f.coeffs[m - 1] * mp.mpf(m) ** (-s) for m in range(1, n + 1) if f.coeffs[m - 1])


# ---------------------------------------------------------------------------
# Petersson norm via the trace formula


def _bessel_bound(nu, x):
    # |J_nu(x)| <= (x/2)^nu / Gamma(nu+1) for x > 0, nu >= -1/2
    return (x / 2) ** nu * mp.rgamma(nu + 1)


def trace_tail_bound(k: int, m: int, n: int, L: int):
    """Bound on sum_{ell > L} (2 pi/ell) |S| |J_{k-1}(4 pi sqrt(mn)/ell)| with |S| <= ell."""
    x_num = 4 * mp.pi * mp.sqrt(m * n)
    nu = k - 1
    # term <= 2 pi * (x_num/2)^nu / Gamma(k) * ell^{-nu}; sum_{ell>L} ell^{-nu} <= L^{1-nu}/(nu-1)
    return 2 * mp.pi * _bessel_bound(nu, x_num) * mp.mpf(L) ** (1 - nu) / (nu - 1)


def _mp_cutoff(k: int, m: int, n: int, L: int, target) -> int:
    """Last ell summed with exact Kloosterman and mp Bessel; beyond it float64 is enough."""
    x_num = 4 * mp.pi * mp.sqrt(m * n)
    nu = k - 1
    ell = 1
    while ell < L:
        # float error per term ~ 1e-15 * ell * (2 pi / ell) * J bound; summed over <= L terms
        err = mp.mpf("1e-15") * 2 * mp.pi * _bessel_bound(nu, x_num / ell) * L
        if err < target and x_num / ell < nu:
            return ell
        ell += 1
    return L


@working
def kloosterman_bessel_sum(k: int, m: int, n: int, L: int, target=None):
    """sum_{ell <= L} (2 pi/ell) S(-m, -n; ell) J_{k-1}(4 pi sqrt(mn)/ell).

    Small ell use exact residue histograms and mp Bessel values; the long
    tail, whose terms are tiny, uses float64 kernels.
    """
    if target is None:
        target = mp.mpf(10) ** (-(current().digits - 5))
    x_num = 4 * mp.pi * mp.sqrt(mp.mpf(m) * n)
    nu = k - 1
    cut = _mp_cutoff(k, m, n, L, target)
    head = []
    for ell in range(1, cut + 1):
        s_val = kloosterman(-m, -n, ell)
        if s_val == 0:
            continue
        head.append(2 * mp.pi / ell * s_val * bessel_j(nu, x_num / ell))
    total = mp.fsum(head)
    if cut < L:
        ells = np.arange(cut + 1, L + 1, dtype=np.float64)
        svals = _kernels.kloosterman_float_table([-m], [-n], L)[0][cut + 1:]
        jvals = _kernels.bessel_j_small_f64(float(nu), float(x_num) / ells)
        tail = float(np.sum(2 * np.pi / ells * svals * jvals))
        total += tail
    return total


_NORM_MEMO: dict = {}


def petersson_norm(k: int, m: int = 1):
    """<f, f> from the trace formula with m = n and dim S_k = 1."""
    k, m = int(k), int(m)
    digits = current().digits
    key = (k, m, digits)
    if key in _NORM_MEMO:
        return _NORM_MEMO[key]
    if cusp_dimension(k) != 1:
        raise UnsupportedWeightError(f"petersson_norm needs dim S_k = 1, weight {k} has {cusp_dimension(k)}")
    with mp.workdps(digits + 10):
        target = mp.mpf(10) ** (-min(digits, 40))
        L = 50
        while trace_tail_bound(k, m, m, L) > target:
            L = int(L * 1.25) + 1
        a_m = eigenform_coeffs(k, m).a(m)
        if a_m == 0:
            raise DomainError(f"a_f({m}) = 0; bootstrap needs a nonzero coefficient")
        eps_sign = (-1) ** (k // 2)
        trace = kloosterman_bessel_sum(k, m, m, L, target)
        value = eps_sign * mp.gamma(k - 1) * (4 * mp.pi * m) ** (1 - k) * a_m ** 2 / (trace + eps_sign)
    if mp.im(value) != 0 or value <= 0:
        raise KernelFailure(f"Petersson norm came out non-positive: {value}")
    _NORM_MEMO[key] = value
    return value


def petersson_norm_quadrature(k: int, ymax=4, nodes: int = 40):
    """Oracle: integrate |f|^2 y^(k-2) over the fundamental domain (about 1e-6 accurate).

    For y >= 1 the x-integral collapses by Parseval to a Fourier sum,
    leaving a 1-D y-integral; the corner region sqrt(3)/2 <= y <= 1 is
    integrated in two dimensions.
    """
    f = eigenform_coeffs(k, 60)
    coeffs = [mp.mpf(c) for c in f.coeffs]

    def fz(x, y):
        q = mp.exp(2j * mp.pi * mp.mpc(x, y))
        acc = mp.mpc(0)
        qp = q
        for c in coeffs:
            acc += c * qp
            qp *= q
            if abs(qp) < mp.mpf(10) ** (-mp.dps):
                break
        return acc

    def upper(y):
        return mp.fsum(c * c * mp.exp(-4 * mp.pi * (j + 1) * y) for j, c in enumerate(coeffs)) * y ** (k - 2)

    with mp.workdps(20):
        part_upper = mp.quad(upper, [1, 2, ymax, mp.inf])

        def inner(x):
            ylo = mp.sqrt(1 - x * x)
            return mp.quad(lambda y: abs(fz(x, y)) ** 2 * y ** (k - 2), [ylo, 1])

        part_corner = mp.quad(inner, [-0.5, 0, 0.5])
    return part_upper + part_corner


# ---------------------------------------------------------------------------
# Hecke sigma Dirichlet series


@working
def hecke_sigma_dirichlet(f: EigenformTable, r1, d, r2, method: str = "auto", terms: int | None = None):
    """sum_m a_f(m) sigma_{-r1}(m) m^{-d-r2-1} = L(d+r2+1) L(d+r1+r2+1) / zeta(r2+1)."""
    from .arith import sigma_table
    from .mpcore.zeta import riemann_zeta

    r1, d, r2 = (to_mp(v) for v in (r1, d, r2))
    if f.is_zero_space:
        return mp.zero
    direct_ok = mp.re(r2 - r1) > mp.mpf(3) / 2
    if method == "auto":
        method = "product"
    if method == "direct":
        if not direct_ok:
            raise DomainError("direct summation needs Re(r2 - r1) > 3/2")
        n = f.N if terms is None else min(terms, f.N)
        sig = sigma_table(-r1, n)
        return mp.fsum(f.coeffs[m - 1] * sig[m] * mp.mpf(m) ** (-d - r2 - 1)
                       for m in range(1, n + 1) if f.coeffs[m - 1])
    if method != "product":
        raise DomainError(f"unknown method {method!r}")
    return l_value(f, d + r2 + 1) * l_value(f, d + r1 + r2 + 1) / riemann_zeta(r2 + 1)

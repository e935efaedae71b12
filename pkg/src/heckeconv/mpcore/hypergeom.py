"""Gauss hypergeometric function 2F1 and its boundary values on [1, inf).

The principal branch is evaluated by choosing, among the six standard
variables z, 1-z, 1/z and their Pfaff images, the one of smallest
modulus and applying the matching connection formula.  Integer
parameter differences (c-a-b or b-a) use the logarithmic limit forms
instead of perturbation.  On the cut the two sides are produced by the
same connection formulas with log(-z) or log(1-z) continued explicitly
to the requested side.
"""

from __future__ import annotations

from dataclasses import dataclass

from mpmath import mp

from ..errors import CutContactError, DomainError, PrecisionExhaustedError
from ..gaussq import to_mp
from .context import eps, series_cap, working
from .gammafn import nonpositive_integer


@dataclass(frozen=True)
class CutPair:
    """Boundary values F(x + i0) and F(x - i0)."""

    above: object
    below: object

    @property
    def jump(self):
        return self.above - self.below

    @property
    def mean(self):
        return (self.above + self.below) / 2


# ---------------------------------------------------------------------------
# helpers


def _snap(x):
    """Return (m, True) if x is an integer to within working precision."""
    if mp.im(x) != 0 and abs(mp.im(x)) > mp.mpf(10) ** (-(mp.dps - 8)):
        return None, False
    xr = mp.re(x)
    m = int(mp.nint(xr))
    if abs(xr - m) <= mp.mpf(10) ** (-(mp.dps - 8)) * max(1, abs(m)):
        return m, True
    return m, False


def _int_distance(x):
    xr = mp.re(x)
    return mp.sqrt((xr - mp.nint(xr)) ** 2 + mp.im(x) ** 2)


def _guard_for(*values):
    """Extra digits to absorb cancellation from near-integer differences."""
    extra = 0
    for v in values:
        dist = _int_distance(v)
        if dist != 0 and dist < mp.mpf("0.1"):
            extra = max(extra, int(-mp.log10(dist)) + 3)
    return extra


def _series(a, b, c, z):
    """Plain Gauss series; caller guarantees |z| < 1 (or termination)."""
    tol = eps()
    term = mp.one
    total = mp.one
    peak = mp.one
    cap = series_cap()
    for n in range(cap):
        term = term * (a + n) * (b + n) / ((c + n) * (n + 1)) * z
        if term == 0:
            return total
        total += term
        mag = abs(term)
        if mag > peak:
            peak = mag
        nn = n + 1
        ratio = abs((a + nn) * (b + nn) / ((c + nn) * (nn + 1)) * z)
        if ratio < 1 and mag * ratio / (1 - ratio) <= tol * max(abs(total), tol * peak):
            return total
    raise PrecisionExhaustedError(f"2F1 series did not converge in {cap} terms")


def _terminating(a, b, c, z):
    """Finite sum when a or b is a non-positive integer (evaluated exactly in z)."""
    for p, q in ((a, b), (b, a)):
        m = nonpositive_integer(p)
        if m is not None:
            terms = []
            term = mp.one
            terms.append(term)
            for n in range(m):
                term = term * (p + n) * (q + n) / ((c + n) * (n + 1)) * z
                terms.append(term)
            return mp.fsum(terms)
    return None


def _poch(x, n):
    return mp.rf(x, n)


# ---------------------------------------------------------------------------
# connection at z = 1, in the variable w = 1 - z with log(w) supplied


def _conn_one(a, b, c, w, logw):
    g = c - a - b
    m, is_int = _snap(g)
    if is_int:
        if m < 0:
            # Euler: F(a,b;c;z) = w^{c-a-b} F(c-a,c-b;c;z); integer power is single-valued
            return mp.exp(m * logw) * _conn_one(c - a, c - b, c, w, logw)
        return _conn_one_log(a, b, m, w, logw)
    t1 = mp.gamma(c) * mp.gamma(g) * mp.rgamma(c - a) * mp.rgamma(c - b)
    t2 = mp.gamma(c) * mp.gamma(-g) * mp.rgamma(a) * mp.rgamma(b)
    part1 = t1 * _series(a, b, 1 - g, w) if t1 != 0 else mp.zero
    part2 = t2 * mp.exp(g * logw) * _series(c - a, c - b, 1 + g, w) if t2 != 0 else mp.zero
    return part1 + part2


def _conn_one_log(a, b, m, w, logw):
    """F(a, b; a+b+m; 1-w) for integer m >= 0 (logarithmic case)."""
    c = a + b + m
    finite = mp.zero
    if m > 0:
        acc = []
        term_ab = mp.one
        for n in range(m):
            acc.append(term_ab * mp.factorial(m - n - 1) / mp.factorial(n) * (-w) ** n)
            term_ab *= (a + n) * (b + n)
        finite = mp.rgamma(a + m) * mp.rgamma(b + m) * mp.fsum(acc)
    ra, rb = mp.rgamma(a), mp.rgamma(b)
    if ra == 0 or rb == 0:
        return mp.gamma(c) * finite
    tol = eps()
    psi_a = mp.digamma(a + m)
    psi_b = mp.digamma(b + m)
    psi_1 = mp.digamma(1)
    psi_m = mp.digamma(m + 1)
    coeff = mp.one / mp.factorial(m)
    total = mp.zero
    peak = mp.zero
    wn = mp.one
    for n in range(series_cap()):
        term = coeff * wn * (logw - psi_1 - psi_m + psi_a + psi_b)
        total += term
        mag = abs(term)
        peak = max(peak, mag)
        if n > 2 and mag <= tol * max(abs(total), tol * peak) and abs(w) < 1:
            break
        # advance n -> n+1
        coeff = coeff * (a + m + n) * (b + m + n) / ((n + 1) * (n + m + 1))
        psi_a += 1 / (a + m + n)
        psi_b += 1 / (b + m + n)
        psi_1 += mp.one / (n + 1)
        psi_m += mp.one / (n + m + 1)
        wn *= w
    else:
        raise PrecisionExhaustedError("logarithmic connection series did not converge")
    log_part = -((-w) ** m) * ra * rb * total
    return mp.gamma(c) * (finite + log_part)


# ---------------------------------------------------------------------------
# connection at z = infinity with log(-z) supplied


def _conn_inf(a, b, c, z, log_negz):
    delta = b - a
    m, is_int = _snap(delta)
    if is_int:
        if m < 0:
            a, b, m = b, a, -m
        return _conn_inf_log(a, m, c, z, log_negz)
    u = 1 / z
    t1 = mp.gamma(c) * mp.gamma(b - a) * mp.rgamma(b) * mp.rgamma(c - a)
    t2 = mp.gamma(c) * mp.gamma(a - b) * mp.rgamma(a) * mp.rgamma(c - b)
    part1 = t1 * mp.exp(-a * log_negz) * _series(a, a - c + 1, a - b + 1, u) if t1 != 0 else mp.zero
    part2 = t2 * mp.exp(-b * log_negz) * _series(b, b - c + 1, b - a + 1, u) if t2 != 0 else mp.zero
    return part1 + part2


def _conn_inf_log(a, m, c, z, log_negz):
    """F(a, a+m; c; z) near infinity for integer m >= 0."""
    pref = mp.exp(-a * log_negz)
    u = 1 / z
    finite = mp.zero
    if m > 0:
        acc = []
        term_a = mp.one
        for k in range(m):
            acc.append(term_a * mp.factorial(m - k - 1) / mp.factorial(k) * mp.rgamma(c - a - k) * u ** k)
            term_a *= a + k
        finite = mp.rgamma(a + m) * mp.fsum(acc)
    ra = mp.rgamma(a)
    if ra == 0:
        return mp.gamma(c) * pref * finite
    tol = eps()
    # R_k = 1/Gamma(c-a-k-m), S_k = psi(c-a-k-m)/Gamma(c-a-k-m), stepped through poles
    x0 = c - a - m
    if nonpositive_integer(x0) is not None:
        r_k = mp.zero
        s_k = (-1) ** (nonpositive_integer(x0) + 1) * mp.factorial(nonpositive_integer(x0))
    else:
        r_k = mp.rgamma(x0)
        s_k = mp.digamma(x0) * r_k
    psi_1 = mp.digamma(1)
    psi_m = mp.digamma(m + 1)
    psi_am = mp.digamma(a + m)
    coeff = mp.one / mp.factorial(m)
    upow = u ** m
    total = mp.zero
    peak = mp.zero
    for k in range(series_cap()):
        term = coeff * (-1) ** k * upow * (r_k * (log_negz + psi_m + psi_1 - psi_am) - s_k)
        total += term
        mag = abs(term)
        peak = max(peak, mag)
        if k > 2 and mag <= tol * max(abs(total), tol * peak):
            break
        x = x0 - k
        r_k, s_k = (x - 1) * r_k, (x - 1) * s_k - r_k
        coeff = coeff * (a + m + k) / ((k + 1) * (k + m + 1))
        psi_1 += mp.one / (k + 1)
        psi_m += mp.one / (k + m + 1)
        psi_am += 1 / (a + m + k)
        upow *= u
    else:
        raise PrecisionExhaustedError("logarithmic connection series at infinity did not converge")
    return mp.gamma(c) * pref * (finite + ra * total)


# ---------------------------------------------------------------------------
# dispatch


def _principal(a, b, c, z):
    term = _terminating(a, b, c, z)
    if term is not None:
        return term
    if z == 0:
        return mp.one
    one_m_z = 1 - z
    w = z / (z - 1)
    cands = [
        (abs(z), "direct"),
        (abs(w), "pfaff"),
        (abs(one_m_z), "one"),
        (abs(1 / z), "inf"),
        (abs(1 / one_m_z), "pfaff_one"),
        (abs(1 / w), "pfaff_inf"),
    ]
    best, route = min(cands, key=lambda t: t[0])
    if best > mp.mpf("0.9"):
        # neighbourhood of exp(+-i pi/3): every variable has modulus ~1
        return mp.hyp2f1(a, b, c, z)
    if route == "direct":
        return _series(a, b, c, z)
    if route == "one":
        return _conn_one(a, b, c, one_m_z, mp.log(one_m_z))
    if route == "inf":
        return _conn_inf(a, b, c, z, mp.log(-z))
    # Pfaff: F(a,b;c;z) = (1-z)^{-a} F(a, c-b; c; w)
    pre = mp.exp(-a * mp.log(one_m_z))
    b2 = c - b
    term = _terminating(a, b2, c, w)
    if term is not None:
        return pre * term
    if route == "pfaff":
        return pre * _series(a, b2, c, w)
    if route == "pfaff_one":
        w1 = 1 / one_m_z
        return pre * _conn_one(a, b2, c, w1, -mp.log(one_m_z))
    return pre * _conn_inf(a, b2, c, w, mp.log(-w))


def _check_c(c):
    if nonpositive_integer(c) is not None:
        raise DomainError(f"2F1 is undefined for c = {c} (non-positive integer)")


@working
def hyp2f1(a, b, c, z):
    """Principal branch of 2F1(a, b; c; z) for z off the cut [1, inf)."""
    a, b, c, z = (to_mp(v) for v in (a, b, c, z))
    _check_c(c)
    if mp.im(z) == 0 and mp.re(z) >= 1:
        if _terminating(a, b, c, z) is None:
            raise CutContactError(f"z = {z} lies on the branch cut [1, inf)")
    extra = _guard_for(c - a - b, b - a, c - a, c - b, a, b)
    with mp.workdps(mp.dps + extra):
        return +_principal(a, b, c, z)


def _on_cut(a, b, c, x, side):
    """F(x + side*i0) for real x > 1, side = +1 (above) or -1 (below)."""
    lx1 = mp.log(x - 1)
    if x >= mp.mpf("1.62"):
        # |1/x| <= |x - 1|: expand at infinity, log(-z) = log x - side*i*pi
        return _conn_inf(a, b, c, x, mp.log(x) - side * mp.j * mp.pi)
    # expand at 1: w = 1 - z = -(x-1) - side*i0, log w = log(x-1) - side*i*pi
    return _conn_one(a, b, c, 1 - x, lx1 - side * mp.j * mp.pi)


@working
def hyp2f1_cut_pair(a, b, c, x) -> CutPair:
    """Boundary values of the principal 2F1 across the cut at real x >= 1."""
    a, b, c, x = (to_mp(v) for v in (a, b, c, x))
    _check_c(c)
    if mp.im(x) != 0:
        raise DomainError("hyp2f1_cut_pair needs real x")
    x = mp.re(x)
    if x < 1:
        v = hyp2f1(a, b, c, x)
        return CutPair(v, v)
    term = _terminating(a, b, c, x)
    if term is not None:
        return CutPair(term, term)
    if x == 1:
        if mp.re(c - a - b) <= 0:
            raise DomainError("2F1 diverges at z = 1 when Re(c-a-b) <= 0")
        v = mp.gamma(c) * mp.gamma(c - a - b) * mp.rgamma(c - a) * mp.rgamma(c - b)
        return CutPair(v, v)
    extra = _guard_for(c - a - b, b - a, c - a, c - b, a, b)
    with mp.workdps(mp.dps + extra):
        above = _on_cut(a, b, c, x, +1)
        below = _on_cut(a, b, c, x, -1)
    return CutPair(+above, +below)


@working
def hyp2f1_offset_pair(a, b, c, x, offsets=None) -> CutPair:
    """Cross-check oracle: evaluate at x +- i*eta and extrapolate eta -> 0.

    Uses mpmath's own hyp2f1 so it is independent of the connection
    formulas above.  Polynomial (Richardson) extrapolation in eta.
    """
    a, b, c, x = (to_mp(v) for v in (a, b, c, x))
    if offsets is None:
        offsets = [mp.mpf(10) ** (-j) for j in range(6, 10)]
    with mp.workdps(mp.dps + 20):
        res = []
        for side in (1, -1):
            vals = [mp.hyp2f1(a, b, c, x + side * 1j * h) for h in offsets]
            res.append(_richardson_zero(offsets, vals))
    return CutPair(+res[0], +res[1])


def _richardson_zero(xs, ys):
    """Value at 0 of the interpolating polynomial through (xs, ys) (Neville)."""
    p = list(ys)
    n = len(xs)
    for level in range(1, n):
        for i in range(n - level):
            p[i] = (xs[i + level] * p[i] - xs[i] * p[i + 1]) / (xs[i + level] - xs[i])
    return p[0]

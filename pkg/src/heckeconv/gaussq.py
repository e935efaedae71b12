"""Exact Gaussian rationals used for identity parameters.

Parameters such as r1 = 1/3 or d = 3 - i are kept as exact pairs of
fractions so integer and rational structure (odd r, integer k, ...)
can be detected without floating-point guesswork.  Values parsed from
decimal or float input are tagged ``inexact``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Integral, Rational

import mpmath
from mpmath import mp

_NUM = r"(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?(?:/\d+)?"
_REAL_RE = re.compile(rf"^([+-]?)({_NUM})$")
_IMAG_RE = re.compile(rf"^([+-]?)({_NUM})?\*?[ij]$")
_SPLIT_RE = re.compile(r"(?<=[0-9.])(?<![eE])(?=[+-])")


def _parse_fraction(text: str) -> tuple[Fraction, bool]:
    if "/" in text:
        num, den = text.split("/")
        f_num, ex_num = _parse_fraction(num)
        f_den, ex_den = _parse_fraction(den)
        if f_den == 0:
            raise ValueError("zero denominator")
        return f_num / f_den, ex_num and ex_den
    exact = not any(ch in text for ch in ".eE")
    return Fraction(text), exact


def _mpf_fraction(x) -> Fraction:
    if not mpmath.isfinite(x):
        raise ValueError("cannot convert a non-finite value")
    sign, man, exp, _ = x._mpf_
    if not man:
        return Fraction(0)
    return (-1) ** sign * Fraction(int(man)) * (Fraction(2) ** int(exp))


@dataclass(frozen=True)
class GaussRational:
    """A complex number re + im*i with rational parts."""

    re: Fraction
    im: Fraction = Fraction(0)
    inexact: bool = field(default=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "re", Fraction(self.re))
        object.__setattr__(self, "im", Fraction(self.im))

    # -- construction ----------------------------------------------------
    @classmethod
    def parse(cls, text: str) -> "GaussRational":
        """Parse ``"p/q"``, decimals, and ``"a+bi"`` forms (``i`` or ``j``)."""
        s = text.strip().replace(" ", "")
        if not s:
            raise ValueError("empty number")
        if s.startswith("(") and s.endswith(")"):
            s = s[1:-1]
        parts = [p for p in _SPLIT_RE.split(s) if p]
        # a leading sign on the first part stays attached
        re_part, im_part = Fraction(0), Fraction(0)
        exact = True
        seen_re = seen_im = False
        for part in parts:
            m = _IMAG_RE.match(part)
            if m:
                if seen_im:
                    raise ValueError(f"cannot parse {text!r}")
                sign, mag = m.groups()
                val, ex = _parse_fraction(mag) if mag else (Fraction(1), True)
                im_part = -val if sign == "-" else val
                exact &= ex
                seen_im = True
                continue
            m = _REAL_RE.match(part)
            if m and not seen_re:
                sign, mag = m.groups()
                val, ex = _parse_fraction(mag)
                re_part = -val if sign == "-" else val
                exact &= ex
                seen_re = True
                continue
            raise ValueError(f"cannot parse {text!r}")
        return cls(re_part, im_part, inexact=not exact)

    @classmethod
    def of(cls, value) -> "GaussRational":
        """Coerce ints, fractions, floats, complexes, strings."""
        if isinstance(value, GaussRational):
            return value
        if isinstance(value, bool):
            raise TypeError("bool is not a number here")
        if isinstance(value, (Integral, Rational)):
            return cls(Fraction(value))
        if isinstance(value, str):
            return cls.parse(value)
        if isinstance(value, float):
            return cls(Fraction(value), inexact=True)
        if isinstance(value, complex):
            return cls(Fraction(value.real), Fraction(value.imag), inexact=True)
        if isinstance(value, mpmath.mpf):
            return cls(_mpf_fraction(value), inexact=True)
        if isinstance(value, mpmath.mpc):
            return cls(_mpf_fraction(value.real), _mpf_fraction(value.imag), inexact=True)
        raise TypeError(f"cannot convert {type(value).__name__}")

    # -- predicates ------------------------------------------------------
    @property
    def is_real(self) -> bool:
        return self.im == 0

    @property
    def is_integer(self) -> bool:
        return self.im == 0 and self.re.denominator == 1

    @property
    def is_odd_integer(self) -> bool:
        return self.is_integer and self.re.numerator % 2 == 1

    def as_int(self) -> int:
        if not self.is_integer:
            raise ValueError(f"{self} is not an integer")
        return self.re.numerator

    # -- conversion ------------------------------------------------------
    def to_mp(self):
        re_ = mp.mpf(self.re.numerator) / self.re.denominator
        if self.im == 0:
            return re_
        return mp.mpc(re_, mp.mpf(self.im.numerator) / self.im.denominator)

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    # -- arithmetic ------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, GaussRational):
            return other
        if isinstance(other, (Integral, Rational)) and not isinstance(other, bool):
            return GaussRational(Fraction(other))
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return GaussRational(self.re + o.re, self.im + o.im, self.inexact or o.inexact)

    __radd__ = __add__

    def __neg__(self):
        return GaussRational(-self.re, -self.im, self.inexact)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return GaussRational(self.re * o.re - self.im * o.im,
                             self.re * o.im + self.im * o.re,
                             self.inexact or o.inexact)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        den = o.re * o.re + o.im * o.im
        if den == 0:
            raise ZeroDivisionError("division by zero")
        return GaussRational((self.re * o.re + self.im * o.im) / den,
                             (self.im * o.re - self.re * o.im) / den,
                             self.inexact or o.inexact)

    def conjugate(self):
        return GaussRational(self.re, -self.im, self.inexact)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __str__(self) -> str:
        if self.im == 0:
            return str(self.re)
        im_abs = abs(self.im)
        im_txt = "i" if im_abs == 1 else f"{im_abs}i"
        if self.re == 0:
            return ("-" if self.im < 0 else "") + im_txt
        return f"{self.re}{'-' if self.im < 0 else '+'}{im_txt}"

    def __repr__(self) -> str:
        tag = ", inexact" if self.inexact else ""
        return f"GaussRational({self}{tag})"


def to_mp(x):
    """Convert any supported scalar to an mpmath number at current precision."""
    if isinstance(x, GaussRational):
        return x.to_mp()
    if isinstance(x, Fraction):
        return mp.mpf(x.numerator) / x.denominator
    if isinstance(x, (mpmath.mpf, mpmath.mpc)):
        return x
    if isinstance(x, str):
        return GaussRational.parse(x).to_mp()
    return mp.mpmathify(x)

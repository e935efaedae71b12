"""Working-precision context.

Every public special function evaluates inside ``mp.workdps`` at the
active context's digits plus a fixed guard, so results meet a relative
error target of ``10**(6 - digits)`` regardless of the caller's global
mpmath settings.
"""

from __future__ import annotations

import functools
import os
from contextlib import contextmanager
from contextvars import ContextVar
from dataclasses import dataclass

from mpmath import mp

ENV_PREC = "HECKECONV_PREC"
DEFAULT_DIGITS = 50
GUARD_DIGITS = 10


def default_digits() -> int:
    raw = os.environ.get(ENV_PREC)
    if raw is None or not raw.strip():
        return DEFAULT_DIGITS
    try:
        digits = int(raw)
    except ValueError as exc:
        raise ValueError(f"{ENV_PREC} must be an integer, got {raw!r}") from exc
    if digits < 15:
        raise ValueError(f"{ENV_PREC} must be >= 15")
    return digits


@dataclass(frozen=True)
class PrecisionContext:
    digits: int = DEFAULT_DIGITS
    max_series_terms: int = 200_000

    def __post_init__(self):
        if self.digits < 15:
            raise ValueError("digits must be >= 15")
        if self.max_series_terms < 10:
            raise ValueError("max_series_terms too small")

    @property
    def error_target(self):
        return mp.mpf(10) ** (6 - self.digits)


_ACTIVE: ContextVar[PrecisionContext | None] = ContextVar("heckeconv_precision", default=None)


def current() -> PrecisionContext:
    ctx = _ACTIVE.get()
    if ctx is None:
        ctx = PrecisionContext(digits=default_digits())
        _ACTIVE.set(ctx)
    return ctx


@contextmanager
def precision(digits: int | None = None, max_series_terms: int | None = None):
    """Activate a precision context for the enclosed block."""
    base = current()
    ctx = PrecisionContext(digits if digits is not None else base.digits,
                           max_series_terms if max_series_terms is not None else base.max_series_terms)
    token = _ACTIVE.set(ctx)
    try:
        with mp.workdps(ctx.digits):
            yield ctx
    finally:
        _ACTIVE.reset(token)


def working(fn):
    """Run ``fn`` at context digits + guard; values are returned unrounded.

    Never lowers the precision: internal callers that raised ``mp.dps``
    for cancellation control keep their extra digits.
    """

    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        with mp.workdps(max(mp.dps, current().digits + GUARD_DIGITS)):
            return fn(*args, **kwargs)

    return wrapper


def series_cap() -> int:
    return current().max_series_terms


def eps():
    """Relative tolerance for series termination at the active working precision."""
    return mp.mpf(2) ** (-mp.prec - 4)

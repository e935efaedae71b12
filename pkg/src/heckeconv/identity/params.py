"""Parameter triples (r1, r2, d) and their admissibility regimes."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from ..errors import RegimeError
from ..gaussq import GaussRational


class Regime(str, enum.Enum):
    CONVERGENT = "convergent"
    REGULARIZED = "regularized"


@dataclass(frozen=True)
class IdentityParams:
    """(r1, r2, d) with the even weight k = r1 + r2 + 2d + 2."""

    r1: GaussRational
    r2: GaussRational
    d: GaussRational
    regime: Regime = Regime.CONVERGENT
    k: int = field(init=False)

    def __post_init__(self):
        for name in ("r1", "r2", "d"):
            object.__setattr__(self, name, GaussRational.of(getattr(self, name)))
        object.__setattr__(self, "regime", Regime(self.regime))
        ksum = self.r1 + self.r2 + self.d * 2 + 2
        if not ksum.is_integer:
            raise RegimeError(f"r1 + r2 + 2d + 2 = {ksum} is not an integer")
        k = ksum.as_int()
        if k % 2 or k < 6:
            raise RegimeError(f"weight k = {k} must be an even integer >= 6")
        object.__setattr__(self, "k", k)
        if self.regime is Regime.CONVERGENT:
            self._check_a()
        else:
            self._check_b()

    def _check_a(self):
        if self.r1.re < 0 or self.r2.re < 0:
            raise RegimeError("convergent regime needs Re(r1), Re(r2) >= 0")
        if self.d.re <= 0:
            raise RegimeError("convergent regime needs Re(d) > 0")
        if self.r1 == 0 and self.r2 == 0 and self.d == 1:
            raise RegimeError("the case r1 = r2 = 0, d = 1 is excluded")

    def _check_b(self):
        r1, r2, d = self.r1, self.r2, self.d
        if not (r1.is_odd_integer and r2.is_odd_integer and d.is_integer):
            raise RegimeError("regularized regime needs odd integers r1, r2 and an integer d")
        a, b, dd = r1.as_int(), r2.as_int(), d.as_int()
        if not (a >= b >= 3):
            raise RegimeError("regularized regime needs r1 >= r2 >= 3")
        if not (-b + 1 <= dd <= -2):
            raise RegimeError(f"regularized regime needs {-b + 1} <= d <= -2, got d = {dd}")
        if dd in (-a - 1, -a - b - 1):
            raise RegimeError("d hits an excluded value")

    # convenience ----------------------------------------------------------
    @classmethod
    def convergent(cls, r1, r2, d) -> "IdentityParams":
        return cls(r1, r2, d, Regime.CONVERGENT)

    @classmethod
    def regularized(cls, r1, r2, d) -> "IdentityParams":
        return cls(r1, r2, d, Regime.REGULARIZED)

    @property
    def exact(self) -> bool:
        return not (self.r1.inexact or self.r2.inexact or self.d.inexact)

    @property
    def is_real(self) -> bool:
        return self.r1.is_real and self.r2.is_real and self.d.is_real

    @property
    def i_k(self) -> int:
        """i^k for even k, as an exact integer."""
        return -1 if (self.k // 2) % 2 else 1

    @property
    def finite_support(self) -> bool:
        """Odd integer r1, r2 kill every term with n1 outside (0, n)."""
        return self.r1.is_odd_integer and self.r2.is_odd_integer

    def mp_values(self):
        return self.r1.to_mp(), self.r2.to_mp(), self.d.to_mp()

    def as_dict(self) -> dict:
        return {"r1": str(self.r1), "r2": str(self.r2), "d": str(self.d), "k": self.k,
                "regime": self.regime.value}

    def __str__(self) -> str:
        return f"(r1={self.r1}, r2={self.r2}, d={self.d}; k={self.k})"

"""Extended-precision special functions."""

from .bessel import bessel_j
from .context import PrecisionContext, current, precision
from .gammafn import digamma, gamma, loggamma, rgamma
from .hypergeom import CutPair, hyp2f1, hyp2f1_cut_pair, hyp2f1_offset_pair
from .incgamma import upper_incomplete_gamma
from .orthopoly import elliptic_ke_cut, jacobi_p
from .zeta import hurwitz_zeta, riemann_zeta, riemann_zeta_deriv

__all__ = [
    "CutPair", "PrecisionContext", "bessel_j", "current", "digamma", "elliptic_ke_cut",
    "gamma", "hurwitz_zeta", "hyp2f1", "hyp2f1_cut_pair", "hyp2f1_offset_pair",
    "jacobi_p", "loggamma", "precision", "rgamma", "riemann_zeta", "riemann_zeta_deriv",
    "upper_incomplete_gamma",
]

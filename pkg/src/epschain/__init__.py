"""epschain: exact recurrence production and solving for parameterized sums,
hyperexponential integrals and coupled linear ODE systems, with order-by-order
epsilon expansion inside the class of indefinite nested sums over
hypergeometric products."""

from .rationals import BigRational, rat_from_str, rat_to_str
from .poly import MultiPoly, integer_roots, dispersion, poly_gcd
from .ratfun import RationalFunction

__all__ = [
    "BigRational",
    "rat_from_str",
    "rat_to_str",
    "MultiPoly",
    "integer_roots",
    "dispersion",
    "poly_gcd",
    "RationalFunction",
]

__version__ = "0.1.0"

"""Exact rational scalars and their wire format.

All scalar arithmetic in the package runs on ``fractions.Fraction`` (arbitrary
precision, always reduced, denominator positive).  On the wire every number is
a string "p/q" (or just "p" for integers) so that no precision is ever lost.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

BigRational = Fraction

Q0 = Fraction(0)
Q1 = Fraction(1)


def rat_from_str(s: str) -> Fraction:
    """Parse "p/q" or "p" into a Fraction. Raises ValueError on junk."""
    s = s.strip()
    if "/" in s:
        p, q = s.split("/", 1)
        return Fraction(int(p), int(q))
    return Fraction(int(s))


def rat_to_str(x: Fraction) -> str:
    """Serialize exactly; integers lose the "/1"."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def frac_gcd(a: Fraction, b: Fraction) -> Fraction:
    """gcd on Q: the positive generator of the Z-module a*Z + b*Z.

    frac_gcd(p1/q1, p2/q2) = gcd(p1, p2) / lcm(q1, q2); dividing a list of
    rationals by its frac_gcd leaves coprime integers.
    """
    if a == 0:
        return abs(b)
    if b == 0:
        return abs(a)
    num = gcd(a.numerator, b.numerator)
    den = a.denominator * b.denominator // gcd(a.denominator, b.denominator)
    return Fraction(num, den)

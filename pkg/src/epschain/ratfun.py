"""Reduced rational functions num/den over the MultiPoly ring.

Normal form: gcd(num, den) = 1, den primitive with positive leading
coefficient under the lex term order, any rational content carried by num.
Construction always normalizes, so structural equality is semantic equality.
"""

from __future__ import annotations

from fractions import Fraction

from .poly import MultiPoly, PolyError, poly_gcd


class RationalFunction:
    __slots__ = ("num", "den")

    def __init__(self, num, den=None, _normalized=False):
        if not isinstance(num, MultiPoly):
            num = MultiPoly.const(num)
        if den is None:
            den = MultiPoly.const(1)
        elif not isinstance(den, MultiPoly):
            den = MultiPoly.const(den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if not _normalized:
            num, den = self._normalize(num, den)
        self.num = num
        self.den = den

    @staticmethod
    def _normalize(num: MultiPoly, den: MultiPoly):
        num, den = num._pair(den)
        if num.is_zero():
            return num, MultiPoly.const(1, num.vars)
        g = poly_gcd(num, den)
        if not g.is_const() or g.const_value() != 1:
            num = num.divexact(g.in_vars(num.vars))
            den = den.divexact(g.in_vars(den.vars))
        c = den.content()
        if den.lead_coeff() < 0:
            c = -c
        if c != 1:
            den = den * (1 / c)
            num = num * (1 / c)
        return num, den

    @staticmethod
    def var(name: str) -> "RationalFunction":
        return RationalFunction(MultiPoly.var(name))

    @staticmethod
    def const(c) -> "RationalFunction":
        return RationalFunction(MultiPoly.const(c))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_const(self) -> bool:
        return self.num.is_const() and self.den.is_const()

    def const_value(self) -> Fraction:
        if not self.is_const():
            raise PolyError("not a constant")
        return self.num.const_value() / self.den.const_value()

    def is_polynomial(self) -> bool:
        return self.den.is_const()

    def as_poly(self) -> MultiPoly:
        if not self.is_polynomial():
            raise PolyError("not a polynomial")
        return self.num * (1 / self.den.const_value())

    # -- field operations ----------------------------------------------------

    def _coerce(self, other) -> "RationalFunction":
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, MultiPoly):
            return RationalFunction(other)
        return RationalFunction(MultiPoly.const(other))

    def __add__(self, other):
        o = self._coerce(other)
        return RationalFunction(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den, _normalized=True)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        return RationalFunction(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RationalFunction(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, k: int):
        if k < 0:
            return (RationalFunction(self.den, self.num)) ** (-k)
        return RationalFunction(self.num ** k, self.den ** k)

    def inverse(self) -> "RationalFunction":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return RationalFunction(self.den, self.num)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_const() and self.const_value() == other
        if isinstance(other, MultiPoly):
            other = RationalFunction(other)
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __bool__(self):
        return not self.is_zero()

    # -- substitution --------------------------------------------------------

    def shift(self, var: str, offset) -> "RationalFunction":
        num = self.num.shift(var, offset) if var in self.num.vars else self.num
        den = self.den.shift(var, offset) if var in self.den.vars else self.den
        return RationalFunction(num, den)

    def rename(self, mapping: dict) -> "RationalFunction":
        return RationalFunction(self.num.rename(mapping), self.den.rename(mapping))

    def compose(self, var: str, value: "RationalFunction | MultiPoly") -> "RationalFunction":
        if isinstance(value, MultiPoly):
            value = RationalFunction(value)
        num = _compose_poly(self.num, var, value)
        den = _compose_poly(self.den, var, value)
        return num / den

    def derivative(self, var: str) -> "RationalFunction":
        dn = self.num.derivative(var) if var in self.num.vars else MultiPoly.const(0)
        dd = self.den.derivative(var) if var in self.den.vars else MultiPoly.const(0)
        return RationalFunction(dn * self.den - self.num * dd, self.den * self.den)

    def eval(self, assignment: dict) -> "Fraction | RationalFunction":
        num = self.num.eval(assignment)
        den = self.den.eval(assignment)
        if isinstance(num, Fraction) and isinstance(den, Fraction):
            if den == 0:
                raise ZeroDivisionError(f"pole at {assignment}")
            return num / den
        if not isinstance(num, MultiPoly):
            num = MultiPoly.const(num)
        if not isinstance(den, MultiPoly):
            den = MultiPoly.const(den)
        return RationalFunction(num, den)

    def variables(self) -> tuple[str, ...]:
        return tuple(sorted(set(self.num.drop_unused().vars)
                            | set(self.den.drop_unused().vars)))

    def __str__(self):
        if self.den == MultiPoly.const(1, self.den.vars) or self.den.is_const() and self.den.const_value() == 1:
            return str(self.num)
        return f"({self.num})/({self.den})"

    __repr__ = __str__


def _compose_poly(p: MultiPoly, var: str, value: RationalFunction) -> RationalFunction:
    if var not in p.vars or p.degree(var) <= 0:
        return RationalFunction(p)
    cs = p.as_univariate(var)
    acc = RationalFunction(cs[-1])
    for c in reversed(cs[:-1]):
        acc = acc * value + RationalFunction(c)
    return acc


RF0 = RationalFunction.const(0)
RF1 = RationalFunction.const(1)

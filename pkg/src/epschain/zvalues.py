"""Exact values: rationals extended by opaque zeta symbols.

Evaluation of nested-sum expressions lands in Q[z2, z3, ...] where the z_w are
commuting indeterminates with no relations (powers of z2 stay symbolic).  A
ZValue maps each zeta monomial -- a descending tuple of weights, () for the
rational part -- to its Fraction coefficient.
"""

from __future__ import annotations

from fractions import Fraction

from .rationals import rat_from_str, rat_to_str


class ZValue:
    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        if isinstance(terms, (int, Fraction)):
            terms = {(): Fraction(terms)}
        if terms:
            for mono, c in terms.items():
                c = Fraction(c)
                if c != 0:
                    clean[tuple(sorted(mono, reverse=True))] = c
        self.terms = clean

    @staticmethod
    def zeta(weight: int) -> "ZValue":
        if weight < 2:
            raise ValueError("zeta symbols need weight >= 2")
        return ZValue({(weight,): Fraction(1)})

    def is_rational(self) -> bool:
        return all(m == () for m in self.terms)

    def rational_part(self) -> Fraction:
        return self.terms.get((), Fraction(0))

    def __add__(self, other):
        other = _coerce(other)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            s = terms.get(m, Fraction(0)) + c
            if s == 0:
                terms.pop(m, None)
            else:
                terms[m] = s
        return ZValue(terms)

    __radd__ = __add__

    def __neg__(self):
        return ZValue({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _coerce(other)
        terms: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(sorted(m1 + m2, reverse=True))
                s = terms.get(m, Fraction(0)) + c1 * c2
                if s == 0:
                    terms.pop(m, None)
                else:
                    terms[m] = s
        return ZValue(terms)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, ZValue):
            if not other.is_rational():
                raise ZeroDivisionError("cannot divide by a zeta-valued quantity")
            other = other.rational_part()
        q = Fraction(other)
        if q == 0:
            raise ZeroDivisionError("division by zero")
        return ZValue({m: c / q for m, c in self.terms.items()})

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.terms == ZValue(other).terms
        if not isinstance(other, ZValue):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(tuple(sorted(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms, key=lambda m: (len(m), m)):
            c = self.terms[m]
            sym = "*".join(f"zeta({w})" for w in m)
            if not sym:
                parts.append(rat_to_str(c))
            elif c == 1:
                parts.append(sym)
            elif c == -1:
                parts.append(f"-{sym}")
            else:
                parts.append(f"{rat_to_str(c)}*{sym}")
        return " + ".join(parts).replace("+ -", "- ")

    __repr__ = __str__

    def to_json(self):
        if self.is_rational():
            return rat_to_str(self.rational_part())
        return {"+".join(f"z{w}" for w in m) if m else "1": rat_to_str(c)
                for m, c in sorted(self.terms.items())}

    @staticmethod
    def from_json(obj) -> "ZValue":
        if isinstance(obj, str):
            return ZValue(rat_from_str(obj))
        if isinstance(obj, int):
            return ZValue(Fraction(obj))
        terms = {}
        for key, c in obj.items():
            mono = () if key == "1" else tuple(int(t[1:]) for t in key.split("+"))
            terms[mono] = rat_from_str(c)
        return ZValue(terms)


def _coerce(x) -> ZValue:
    if isinstance(x, ZValue):
        return x
    return ZValue(Fraction(x))


ZV0 = ZValue()
ZV1 = ZValue(Fraction(1))

"""Truncated Laurent series in eps and truncated power series in x.

EpsSeries is generic in its coefficient ring: Fractions, ZValues, or nested-sum
expressions all work (anything with +, -, * and a falsy zero).  A series knows
its start order and its truncation order (the first order it says nothing
about), so arithmetic can refuse to fabricate precision it does not have.
"""

from __future__ import annotations

from fractions import Fraction


class SeriesError(ValueError):
    pass


def _is_zero_coeff(c) -> bool:
    if hasattr(c, "is_zero"):
        return c.is_zero()
    return not c


class EpsSeries:
    """sum_{j=start}^{trunc-1} coeffs[j-start] * eps^j + O(eps^trunc)."""

    __slots__ = ("start", "coeffs", "trunc")

    def __init__(self, start: int, coeffs, trunc: int | None = None):
        coeffs = list(coeffs)
        if trunc is None:
            trunc = start + len(coeffs)
        if trunc != start + len(coeffs):
            raise SeriesError("coefficient list length must match trunc - start")
        self.start = start
        self.coeffs = coeffs
        self.trunc = trunc

    @staticmethod
    def const(value, trunc: int = 1) -> "EpsSeries":
        """value * eps^0 + O(eps^trunc)."""
        if trunc <= 0:
            return EpsSeries(trunc, [], trunc)
        return EpsSeries(0, [value] + [_zero_like(value)] * (trunc - 1), trunc)

    @staticmethod
    def zero(start: int, trunc: int) -> "EpsSeries":
        return EpsSeries(start, [Fraction(0)] * (trunc - start), trunc)

    def coeff(self, j: int):
        """Coefficient of eps^j; zero below start, error at/after truncation."""
        if j >= self.trunc:
            raise SeriesError(f"order {j} beyond truncation {self.trunc}")
        if j < self.start:
            return Fraction(0)
        return self.coeffs[j - self.start]

    def known_orders(self) -> range:
        return range(self.start, self.trunc)

    def is_zero(self) -> bool:
        return all(_is_zero_coeff(c) for c in self.coeffs)

    def valuation(self) -> int | None:
        """Order of the first nonzero known coefficient; None if all zero."""
        for j, c in enumerate(self.coeffs):
            if not _is_zero_coeff(c):
                return self.start + j
        return None

    def normalized(self) -> "EpsSeries":
        """Drop leading known-zero coefficients (truncation unchanged)."""
        v = self.valuation()
        if v is None:
            return EpsSeries(self.trunc, [], self.trunc)
        return EpsSeries(v, self.coeffs[v - self.start:], self.trunc)

    def truncate(self, trunc: int) -> "EpsSeries":
        if trunc > self.trunc:
            raise SeriesError("cannot extend a truncated series")
        if trunc <= self.start:
            return EpsSeries(trunc, [], trunc)
        return EpsSeries(self.start, self.coeffs[: trunc - self.start], trunc)

    def shift_orders(self, s: int) -> "EpsSeries":
        """Multiply by eps^s (s may be negative)."""
        return EpsSeries(self.start + s, list(self.coeffs), self.trunc + s)

    def map(self, f) -> "EpsSeries":
        return EpsSeries(self.start, [f(c) for c in self.coeffs], self.trunc)

    def __add__(self, other):
        if not isinstance(other, EpsSeries):
            other = EpsSeries.const(other if isinstance(other, (int, Fraction)) else other,
                                    trunc=self.trunc)
        start = min(self.start, other.start)
        trunc = min(self.trunc, other.trunc)
        if trunc < start:
            trunc = start
        coeffs = []
        for j in range(start, trunc):
            a = self.coeff(j) if j < self.trunc else None
            b = other.coeff(j) if j < other.trunc else None
            coeffs.append(a + b)
        return EpsSeries(start, coeffs, trunc)

    __radd__ = __add__

    def __neg__(self):
        return EpsSeries(self.start, [-c for c in self.coeffs], self.trunc)

    def __sub__(self, other):
        if not isinstance(other, EpsSeries):
            other = EpsSeries.const(other, trunc=self.trunc)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, EpsSeries):
            # scalar multiply keeps precision
            return EpsSeries(self.start, [c * other for c in self.coeffs], self.trunc)
        a, b = self.normalized(), other.normalized()
        if not a.coeffs or not b.coeffs:
            start = a.start + b.start
            return EpsSeries(start, [], start)
        start = a.start + b.start
        trunc = min(a.start + b.trunc, b.start + a.trunc)
        coeffs = [None] * (trunc - start)
        for i, ca in enumerate(a.coeffs):
            if _is_zero_coeff(ca):
                continue
            for j, cb in enumerate(b.coeffs):
                k = i + j
                if k >= trunc - start:
                    break
                prod = ca * cb
                coeffs[k] = prod if coeffs[k] is None else coeffs[k] + prod
        zero = Fraction(0)
        coeffs = [zero if c is None else c for c in coeffs]
        return EpsSeries(start, coeffs, trunc)

    def __rmul__(self, other):
        return self.__mul__(other)

    def inverse(self) -> "EpsSeries":
        """Laurent inverse; leading coefficient must be invertible (Fraction/ZValue)."""
        a = self.normalized()
        if not a.coeffs:
            raise ZeroDivisionError("inverse of (known-)zero series")
        lead = a.coeffs[0]
        n = len(a.coeffs)
        inv0 = Fraction(1) / lead if isinstance(lead, (int, Fraction)) else _zvalue_inv(lead)
        out = [inv0]
        for k in range(1, n):
            acc = None
            for j in range(1, k + 1):
                t = a.coeffs[j] * out[k - j]
                acc = t if acc is None else acc + t
            out.append(-(acc * inv0) if acc is not None else _zero_like(inv0))
        return EpsSeries(-a.start, out, -a.start + n)

    def __truediv__(self, other):
        if isinstance(other, EpsSeries):
            return self * other.inverse()
        return self * (Fraction(1) / Fraction(other))

    def __eq__(self, other):
        if not isinstance(other, EpsSeries):
            return NotImplemented
        a, b = self.normalized(), other.normalized()
        lo = min(a.start, b.start)
        hi = min(a.trunc, b.trunc)
        for j in range(lo, hi):
            if not _is_zero_coeff(a.coeff(j) - b.coeff(j)):
                return False
        return True

    def __str__(self):
        if not self.coeffs:
            return f"O(eps^{self.trunc})"
        parts = [f"({c})*eps^{self.start + j}" for j, c in enumerate(self.coeffs)
                 if not _is_zero_coeff(c)]
        body = " + ".join(parts) if parts else "0"
        return f"{body} + O(eps^{self.trunc})"

    __repr__ = __str__


def _zero_like(c):
    if isinstance(c, (int, Fraction)):
        return Fraction(0)
    try:
        return c - c
    except TypeError:
        return Fraction(0)


def _zvalue_inv(z):
    from .zvalues import ZValue
    if isinstance(z, ZValue):
        if z.is_rational():
            return ZValue(Fraction(1) / z.rational_part())
        raise ZeroDivisionError("cannot invert a zeta-valued leading coefficient")
    raise ZeroDivisionError(f"cannot invert coefficient {z!r}")


class TruncatedPowerSeries:
    """sum_{k=0}^{K} coeffs[k] x^k + O(x^{K+1}), exact coefficients."""

    __slots__ = ("variable", "coeffs")

    def __init__(self, variable: str, coeffs):
        self.variable = variable
        self.coeffs = list(coeffs)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def coeff(self, k: int):
        if k < 0:
            return Fraction(0)
        if k >= len(self.coeffs):
            raise SeriesError(f"coefficient {k} beyond truncation {self.order}")
        return self.coeffs[k]

    def _check(self, other: "TruncatedPowerSeries"):
        if self.variable != other.variable:
            raise SeriesError(
                f"variable mismatch: {self.variable} vs {other.variable}")

    def __add__(self, other):
        self._check(other)
        K = min(self.order, other.order)
        return TruncatedPowerSeries(
            self.variable, [self.coeffs[k] + other.coeffs[k] for k in range(K + 1)])

    def __sub__(self, other):
        self._check(other)
        K = min(self.order, other.order)
        return TruncatedPowerSeries(
            self.variable, [self.coeffs[k] - other.coeffs[k] for k in range(K + 1)])

    def __neg__(self):
        return TruncatedPowerSeries(self.variable, [-c for c in self.coeffs])

    def __mul__(self, other):
        if not isinstance(other, TruncatedPowerSeries):
            return TruncatedPowerSeries(self.variable, [c * other for c in self.coeffs])
        self._check(other)
        K = min(self.order, other.order)
        out = []
        for k in range(K + 1):
            acc = None
            for i in range(k + 1):
                t = self.coeffs[i] * other.coeffs[k - i]
                acc = t if acc is None else acc + t
            out.append(acc)
        return TruncatedPowerSeries(self.variable, out)

    __rmul__ = __mul__

    def differentiate(self) -> "TruncatedPowerSeries":
        """d/dx; the result is exact one order lower."""
        return TruncatedPowerSeries(
            self.variable,
            [(k + 1) * self.coeffs[k + 1] for k in range(len(self.coeffs) - 1)])

    def multiply_by_x(self) -> "TruncatedPowerSeries":
        zero = _zero_like(self.coeffs[0]) if self.coeffs else Fraction(0)
        return TruncatedPowerSeries(self.variable, [zero] + self.coeffs[:-1])

    def __eq__(self, other):
        if not isinstance(other, TruncatedPowerSeries):
            return NotImplemented
        if self.variable != other.variable:
            return False
        K = min(self.order, other.order)
        return all(not _is_zero_coeff(self.coeffs[k] - other.coeffs[k])
                   for k in range(K + 1))

    def __str__(self):
        x = self.variable
        parts = [f"({c})*{x}^{k}" for k, c in enumerate(self.coeffs) if not _is_zero_coeff(c)]
        return (" + ".join(parts) if parts else "0") + f" + O({x}^{self.order + 1})"

    __repr__ = __str__

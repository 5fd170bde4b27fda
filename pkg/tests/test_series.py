import random
from fractions import Fraction

import pytest

from epschain.series import EpsSeries, SeriesError, TruncatedPowerSeries
from epschain.zvalues import ZValue


def F(*args):
    return Fraction(*args)


class TestZValue:
    def test_ring(self):
        z2 = ZValue.zeta(2)
        v = ZValue(F(3)) + F(1, 2) * z2
        w = v * v
        assert w.terms[()] == 9
        assert w.terms[(2,)] == 3
        assert w.terms[(2, 2)] == F(1, 4)

    def test_no_collapse(self):
        # z2^2 stays symbolic, never becomes z4
        z2 = ZValue.zeta(2)
        assert (z2 * z2).terms == {(2, 2): F(1)}

    def test_paper_pole_value(self):
        v = ZValue(F(1393, 486)) + F(5, 18) * ZValue.zeta(2)
        assert str(v) == "1393/486 + 5/18*zeta(2)"

    def test_json_roundtrip(self):
        v = ZValue(F(-3, 7)) + F(2) * ZValue.zeta(3) * ZValue.zeta(2)
        assert ZValue.from_json(v.to_json()) == v


class TestEpsSeries:
    def test_laurent_product(self):
        # (eps^-1 + 1) * (eps - eps^2) = 1 - eps + eps^2 - eps^3 -> truncated
        a = EpsSeries(-1, [F(1), F(1)])
        b = EpsSeries(1, [F(1), F(-1)])
        c = a * b
        assert c.coeff(0) == 1
        assert c.coeff(1) == 0  # 1*(-1) + 1*1
        assert c.trunc == 2

    def test_inverse(self):
        # 1/(eps*(1+eps)) = eps^-1 - 1 + eps - ...
        a = EpsSeries(1, [F(1), F(1), F(0), F(0)])
        inv = a.inverse()
        assert inv.start == -1
        assert inv.coeff(-1) == 1
        assert inv.coeff(0) == -1
        assert inv.coeff(1) == 1

    def test_ring_laws_random(self):
        rng = random.Random(2)
        def rand_series():
            start = rng.randint(-2, 1)
            coeffs = [F(rng.randint(-5, 5)) for _ in range(4)]
            return EpsSeries(start, coeffs)
        for _ in range(40):
            a, b, c = rand_series(), rand_series(), rand_series()
            assert (a + b) + c == a + (b + c)
            lhs = a * (b + c)
            rhs = a * b + a * c
            assert lhs == rhs

    def test_truncation_barrier(self):
        a = EpsSeries(0, [F(1), F(2)])
        with pytest.raises(SeriesError):
            a.coeff(2)

    def test_zvalue_coeffs(self):
        z2 = ZValue.zeta(2)
        a = EpsSeries(-1, [ZValue(F(1)), z2])
        b = a * a
        assert b.coeff(-2) == ZValue(F(1))
        assert b.coeff(-1) == F(2) * z2


class TestPowerSeries:
    def test_product(self):
        one_plus = TruncatedPowerSeries("x", [F(1), F(1), F(0)])
        one_minus = TruncatedPowerSeries("x", [F(1), F(-1), F(0)])
        p = one_plus * one_minus
        assert p.coeffs == [F(1), F(0), F(-1)]

    def test_differentiate_exp(self):
        import math
        exp = TruncatedPowerSeries("x", [F(1, math.factorial(k)) for k in range(5)])
        d = exp.differentiate()
        assert d.coeffs == exp.coeffs[:4]

    def test_multiply_by_x(self):
        p = TruncatedPowerSeries("x", [F(1), F(1), F(0)])
        assert p.multiply_by_x().coeffs == [F(0), F(1), F(1)]

    def test_variable_mismatch(self):
        p = TruncatedPowerSeries("x", [F(1)])
        q = TruncatedPowerSeries("y", [F(1)])
        with pytest.raises(SeriesError):
            p + q

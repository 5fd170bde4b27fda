import random
from fractions import Fraction

import pytest

from epschain.poly import (
    MultiPoly,
    PolyError,
    dispersion,
    factor_univariate,
    integer_roots,
    poly_gcd,
    poly_lcm,
    rational_roots,
    resultant,
    squarefree_decomposition,
)

n = MultiPoly.var("n")
eps = MultiPoly.var("eps")
one = MultiPoly.const(1)


def rand_poly(rng, vars=("n",), deg=6, nterms=5):
    terms = {}
    for _ in range(nterms):
        e = tuple(rng.randint(0, deg) for _ in vars)
        terms[e] = Fraction(rng.randint(-9, 9))
    p = MultiPoly(tuple(sorted(vars)), terms)
    return p


class TestArithmetic:
    def test_basic_ring(self):
        p = (n + 1) * (n - 1)
        assert p == n * n - 1
        assert (p - p).is_zero()
        assert (n + 1) ** 3 == n ** 3 + 3 * n ** 2 + 3 * n + 1

    def test_multivariate_alignment(self):
        p = n * eps + 1
        q = n + eps
        assert (p * q).degree("n") == 2
        assert (p * q).degree("eps") == 2
        assert p.eval({"eps": 2}) == 2 * n + 1

    def test_shift_examples(self):
        # the three shift contract cases
        assert (n * n).shift("n", 1) == n * n + 2 * n + 1
        assert (eps * n).shift("n", 0) == eps * n
        assert (n - 3).shift("n", 2) == n - 1

    def test_shift_roundtrip_random(self):
        rng = random.Random(1)
        for _ in range(25):
            p = rand_poly(rng)
            a = rng.randint(-4, 4)
            assert p.shift("n", a).shift("n", -a) == p

    def test_divexact(self):
        p = (n + 1) * (n - 2) * (2 * n + 3)
        assert p.divexact(n + 1) == (n - 2) * (2 * n + 3)
        with pytest.raises(PolyError):
            p.divexact(n + 5)

    def test_eval_full_and_partial(self):
        p = n ** 2 * eps + 3 * n
        assert p.eval({"n": 2, "eps": Fraction(1, 2)}) == 8
        q = p.eval({"n": 2})
        assert q == 4 * eps + 6

    def test_derivative(self):
        p = n ** 3 + 2 * n
        assert p.derivative("n") == 3 * n ** 2 + 2


class TestGcd:
    def test_univariate(self):
        a = (n + 1) ** 2 * (n - 3)
        b = (n + 1) * (2 * n + 5)
        assert poly_gcd(a, b) == n + 1

    def test_coprime(self):
        assert poly_gcd(n + 1, n + 2).is_const()

    def test_multivariate(self):
        g = n * eps + 2
        a = g * (n + 1)
        b = g * (eps + 5)
        assert poly_gcd(a, b) == g

    def test_random_products(self):
        rng = random.Random(7)
        for _ in range(15):
            g = rand_poly(rng, deg=2, nterms=3) + 1
            a = g * (rand_poly(rng, deg=2, nterms=2) + n)
            b = g * (rand_poly(rng, deg=2, nterms=2) + 1)
            d = poly_gcd(a, b)
            a.divexact(d)
            b.divexact(d)  # no exception: d divides both
            assert d.degree("n") >= g.primitive().degree("n") or g.is_const()

    def test_lcm(self):
        a = (n + 1) * (n + 2)
        b = (n + 2) * (n + 3)
        assert poly_lcm(a, b) == (n + 1) * (n + 2) * (n + 3)

    def test_canonical_normalization(self):
        # (c*p)/(c*q) normalizes identically for random nonzero c
        rng = random.Random(3)
        from epschain.ratfun import RationalFunction
        for _ in range(20):
            p = rand_poly(rng, deg=3, nterms=3)
            q = rand_poly(rng, deg=3, nterms=3) + n + 17
            if q.is_zero():
                continue
            c = Fraction(rng.randint(1, 40), rng.randint(1, 40)) * rng.choice([1, -1])
            r1 = RationalFunction(p, q)
            r2 = RationalFunction(p * c, q * c)
            assert r1.num == r2.num and r1.den == r2.den


class TestRoots:
    def test_examples(self):
        assert integer_roots(n - 3) == [3]
        assert integer_roots(n * n + 1) == []
        assert integer_roots((n - 2) * (2 * n - 1)) == [2]

    def test_exhaustive_crosscheck(self):
        rng = random.Random(11)
        for _ in range(30):
            p = rand_poly(rng, deg=5, nterms=4)
            if p.is_zero() or p.is_const():
                continue
            roots = integer_roots(p)
            # coefficient-ratio bound on |roots|
            cs = [abs(c) for c in p.terms.values()]
            bound = 1 + int(max(cs) / min(cs)) + max(abs(r) for r in roots + [0])
            brute = [i for i in range(-bound, bound + 1) if p.eval({"n": i}) == 0]
            assert roots == brute

    def test_rational_roots(self):
        p = (2 * n - 1) * (n + 3) * (3 * n + 2)
        assert rational_roots(p) == sorted([Fraction(1, 2), Fraction(-3), Fraction(-2, 3)])

    def test_zero_rejected(self):
        with pytest.raises(PolyError):
            integer_roots(MultiPoly.const(0))


class TestDispersion:
    def test_examples(self):
        assert dispersion(n, n, "n") == 0
        assert dispersion(n, n - 5, "n") == 5
        assert dispersion(n ** 2 + 1, n + 2, "n") is None

    def test_brute_force_agreement(self):
        rng = random.Random(5)
        for _ in range(20):
            p = rand_poly(rng, deg=3, nterms=3)
            q = rand_poly(rng, deg=3, nterms=3)
            if p.is_zero() or q.is_zero() or p.is_const() or q.is_const():
                continue
            got = dispersion(p, q, "n")
            roots = integer_roots(p) + integer_roots(q)
            bound = p.degree("n") * q.degree("n") + max([abs(r) for r in roots] + [0]) * 2 + 4
            brute = None
            for j in range(bound + 1):
                if not poly_gcd(p, q.shift("n", j)).is_const():
                    brute = j
            assert got == brute


class TestResultant:
    def test_common_root(self):
        a = (n - 2) * (n + 1)
        b = (n - 2) * (n + 5)
        assert resultant(a, b, "n").is_zero()

    def test_sylvester_value(self):
        # res(n^2+1, n-1) = 1^2+1 = 2
        assert resultant(n * n + 1, n - 1, "n") == MultiPoly.const(2)


class TestFactor:
    def test_squarefree(self):
        p = (n + 1) ** 2 * (n - 2)
        d = dict((m, f) for f, m in squarefree_decomposition(p, "n"))
        assert d[2] == n + 1 and d[1] == n - 2

    def test_linear_factors(self):
        c, fs = factor_univariate((n + 1) * (2 * n + 3) * (n - 4))
        rebuilt = MultiPoly.const(c)
        for f, m in fs:
            rebuilt = rebuilt * f ** m
        assert rebuilt == (n + 1) * (2 * n + 3) * (n - 4)
        assert len(fs) == 3

    def test_kronecker_quadratic(self):
        p = (n ** 2 + n + 1) * (n ** 2 + 3)
        c, fs = factor_univariate(p)
        assert sorted(f.degree("n") for f, _ in fs) == [2, 2]

    def test_irreducible_kept(self):
        c, fs = factor_univariate(n ** 2 + 1)
        assert len(fs) == 1 and fs[0][0] == n ** 2 + 1

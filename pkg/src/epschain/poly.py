"""Sparse multivariate polynomials over exact rationals.

A MultiPoly is an immutable map {exponent tuple: Fraction} together with an
ordered tuple of variable names.  The variable order is canonical (sorted
names); binary operations align variable sets automatically.  Everything the
solvers need lives here: shifts, composition, differentiation, exact division,
multivariate gcd (primitive PRS), resultants, integer/rational root finding,
dispersion and univariate factorization over Q.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd, isqrt
from typing import Iterable, Sequence

from .rationals import Q0, Q1, frac_gcd


class PolyError(ValueError):
    pass


def _merged_vars(a: Sequence[str], b: Sequence[str]) -> tuple[str, ...]:
    return tuple(sorted(set(a) | set(b)))


class MultiPoly:
    __slots__ = ("vars", "terms")

    def __init__(self, vars: Iterable[str], terms: dict | None = None):
        vs = tuple(vars)
        if list(vs) != sorted(vs):
            raise PolyError(f"variables must be sorted: {vs}")
        clean = {}
        if terms:
            for e, c in terms.items():
                c = Fraction(c)
                if c != 0:
                    clean[tuple(e)] = c
        self.vars = vs
        self.terms = clean

    # -- constructors -------------------------------------------------------

    @staticmethod
    def const(c, vars: Iterable[str] = ()) -> "MultiPoly":
        vs = tuple(sorted(vars))
        c = Fraction(c)
        if c == 0:
            return MultiPoly(vs, {})
        return MultiPoly(vs, {(0,) * len(vs): c})

    @staticmethod
    def var(name: str) -> "MultiPoly":
        return MultiPoly((name,), {(1,): Q1})

    # -- alignment ----------------------------------------------------------

    def in_vars(self, vs: Sequence[str]) -> "MultiPoly":
        """Re-embed into the (sorted) variable tuple vs, a superset of ours."""
        vs = tuple(vs)
        if vs == self.vars:
            return self
        pos = {v: i for i, v in enumerate(vs)}
        for v in self.vars:
            if v not in pos:
                raise PolyError(f"cannot drop variable {v}")
        terms = {}
        for e, c in self.terms.items():
            ne = [0] * len(vs)
            for v, x in zip(self.vars, e):
                ne[pos[v]] = x
            terms[tuple(ne)] = c
        return MultiPoly(vs, terms)

    def _pair(self, other) -> tuple["MultiPoly", "MultiPoly"]:
        if not isinstance(other, MultiPoly):
            other = MultiPoly.const(other)
        vs = _merged_vars(self.vars, other.vars)
        return self.in_vars(vs), other.in_vars(vs)

    def rename(self, mapping: dict) -> "MultiPoly":
        """Relabel variables; the new names must stay pairwise distinct."""
        new_names = [mapping.get(v, v) for v in self.vars]
        if len(set(new_names)) != len(new_names):
            raise PolyError(f"rename collides: {new_names}")
        order = sorted(range(len(new_names)), key=lambda i: new_names[i])
        vs = tuple(new_names[i] for i in order)
        terms = {tuple(e[i] for i in order): c for e, c in self.terms.items()}
        return MultiPoly(vs, terms)

    def drop_unused(self) -> "MultiPoly":
        used = [i for i in range(len(self.vars)) if any(e[i] for e in self.terms)]
        vs = tuple(self.vars[i] for i in used)
        terms = {tuple(e[i] for i in used): c for e, c in self.terms.items()}
        return MultiPoly(vs, terms)

    # -- ring operations ----------------------------------------------------

    def __add__(self, other):
        a, b = self._pair(other)
        terms = dict(a.terms)
        for e, c in b.terms.items():
            s = terms.get(e, Q0) + c
            if s == 0:
                terms.pop(e, None)
            else:
                terms[e] = s
        return MultiPoly(a.vars, terms)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other if isinstance(other, MultiPoly) else MultiPoly.const(-Fraction(other)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c0 = Fraction(other)
            if c0 == 0:
                return MultiPoly(self.vars, {})
            return MultiPoly(self.vars, {e: c * c0 for e, c in self.terms.items()})
        a, b = self._pair(other)
        terms: dict = {}
        for e1, c1 in a.terms.items():
            for e2, c2 in b.terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                s = terms.get(e, Q0) + c1 * c2
                if s == 0:
                    terms.pop(e, None)
                else:
                    terms[e] = s
        return MultiPoly(a.vars, terms)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise PolyError("negative power of a polynomial")
        result = MultiPoly.const(1, self.vars)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_const() and self.const_value() == other
        if not isinstance(other, MultiPoly):
            return NotImplemented
        a, b = self._pair(other)
        return a.terms == b.terms

    def __hash__(self):
        p = self.drop_unused()
        return hash((p.vars, tuple(sorted(p.terms.items()))))

    def __bool__(self):
        return bool(self.terms)

    # -- queries ------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_const(self) -> bool:
        return all(all(x == 0 for x in e) for e in self.terms)

    def const_value(self) -> Fraction:
        if not self.terms:
            return Q0
        if not self.is_const():
            raise PolyError("not a constant")
        return next(iter(self.terms.values()))

    def degree(self, var: str) -> int:
        """Degree in var; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        if var not in self.vars:
            return 0
        i = self.vars.index(var)
        return max(e[i] for e in self.terms)

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def is_univariate(self) -> bool:
        return len(self.drop_unused().vars) <= 1

    def coefficient_of(self, var: str, power: int) -> "MultiPoly":
        """Coefficient of var**power, as a polynomial in the other variables."""
        if var not in self.vars:
            return self if power == 0 else MultiPoly(self.vars, {})
        i = self.vars.index(var)
        rest = self.vars[:i] + self.vars[i + 1:]
        terms = {}
        for e, c in self.terms.items():
            if e[i] == power:
                terms[e[:i] + e[i + 1:]] = c
        return MultiPoly(rest, terms)

    def as_univariate(self, var: str) -> list["MultiPoly"]:
        """Dense coefficient list [c0, c1, ...] in var over the other vars."""
        d = self.degree(var)
        if d < 0:
            return []
        return [self.coefficient_of(var, j) for j in range(d + 1)]

    @staticmethod
    def from_univariate(coeffs: Sequence["MultiPoly"], var: str) -> "MultiPoly":
        acc = MultiPoly.const(0, (var,))
        xv = MultiPoly.var(var)
        for j, c in enumerate(coeffs):
            if isinstance(c, MultiPoly) and c.is_zero():
                continue
            acc = acc + c * xv ** j
        return acc

    def lead_key(self) -> tuple:
        """Lexicographically largest exponent vector (canonical term order)."""
        if not self.terms:
            raise PolyError("zero polynomial has no leading term")
        return max(self.terms)

    def lead_coeff(self) -> Fraction:
        return self.terms[self.lead_key()]

    def lc(self, var: str) -> "MultiPoly":
        """Leading coefficient as a polynomial in the remaining variables."""
        return self.coefficient_of(var, self.degree(var))

    # -- substitution and calculus ------------------------------------------

    def eval(self, assignment: dict) -> "MultiPoly | Fraction":
        """Substitute values (Fraction/int) for some variables.

        Full assignments return a Fraction, partial ones a MultiPoly.
        """
        vals = {v: Fraction(x) for v, x in assignment.items() if v in self.vars}
        keep = [i for i, v in enumerate(self.vars) if v not in vals]
        if not keep:
            acc = Q0
            for e, c in self.terms.items():
                t = c
                for v, x in zip(self.vars, e):
                    if x:
                        t *= vals[v] ** x
                acc += t
            return acc
        vs = tuple(self.vars[i] for i in keep)
        terms: dict = {}
        for e, c in self.terms.items():
            t = c
            for i, (v, x) in enumerate(zip(self.vars, e)):
                if i not in keep and x:
                    t *= vals[v] ** x
            ne = tuple(e[i] for i in keep)
            s = terms.get(ne, Q0) + t
            if s == 0:
                terms.pop(ne, None)
            else:
                terms[ne] = s
        return MultiPoly(vs, terms)

    def compose(self, var: str, value: "MultiPoly") -> "MultiPoly":
        """Substitute a polynomial for var (Horner in var)."""
        if var not in self.vars:
            return self
        cs = self.as_univariate(var)
        if not cs:
            return MultiPoly(tuple(v for v in self.vars if v != var), {})
        acc = cs[-1]
        for c in reversed(cs[:-1]):
            acc = acc * value + c
        if var in acc.vars and acc.degree(var) <= 0:
            acc = acc.drop_unused()
        return acc

    def shift(self, var: str, offset) -> "MultiPoly":
        """var -> var + offset, expanded."""
        if var not in self.vars:
            raise PolyError(f"unknown variable {var}")
        offset = Fraction(offset)
        if offset == 0:
            return self
        return self.compose(var, MultiPoly.var(var) + MultiPoly.const(offset))

    def derivative(self, var: str) -> "MultiPoly":
        if var not in self.vars:
            return MultiPoly(self.vars, {})
        i = self.vars.index(var)
        terms = {}
        for e, c in self.terms.items():
            if e[i] == 0:
                continue
            ne = e[:i] + (e[i] - 1,) + e[i + 1:]
            terms[ne] = terms.get(ne, Q0) + c * e[i]
        return MultiPoly(self.vars, terms)

    # -- content, primitive part, exact division ----------------------------

    def content(self) -> Fraction:
        """Positive rational c with self/c having coprime integer coefficients."""
        c = Q0
        for v in self.terms.values():
            c = frac_gcd(c, v)
        return c

    def primitive(self) -> "MultiPoly":
        if not self.terms:
            return self
        c = self.content()
        if self.lead_coeff() < 0:
            c = -c
        return self * (1 / c)

    def monomial_content(self) -> tuple:
        """Componentwise min exponent vector across all terms."""
        if not self.terms:
            return (0,) * len(self.vars)
        its = iter(self.terms)
        m = list(next(its))
        for e in its:
            for i, x in enumerate(e):
                if x < m[i]:
                    m[i] = x
        return tuple(m)

    def divide_monomial(self, m: tuple) -> "MultiPoly":
        return MultiPoly(self.vars, {tuple(x - y for x, y in zip(e, m)): c
                                     for e, c in self.terms.items()})

    def divexact(self, other) -> "MultiPoly":
        """Exact division; raises PolyError if the division is not exact."""
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            if q == 0:
                raise PolyError("division by zero")
            return self * (1 / q)
        a, b = self._pair(other)
        if b.is_zero():
            raise PolyError("division by zero polynomial")
        if b.is_const():
            return a * (1 / b.const_value())
        rem = a
        qterms: dict = {}
        bkey = b.lead_key()
        bc = b.terms[bkey]
        while rem.terms:
            rkey = rem.lead_key()
            qe = tuple(x - y for x, y in zip(rkey, bkey))
            if any(x < 0 for x in qe):
                raise PolyError("inexact polynomial division")
            qc = rem.terms[rkey] / bc
            qterms[qe] = qterms.get(qe, Q0) + qc
            rem = rem - MultiPoly(a.vars, {qe: qc}) * b
        return MultiPoly(a.vars, qterms)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            mono = "*".join(f"{v}^{x}" if x > 1 else v
                            for v, x in zip(self.vars, e) if x)
            if mono:
                cs = "" if c == 1 else ("-" if c == -1 else f"{c}*")
                parts.append(f"{cs}{mono}")
            else:
                parts.append(str(c))
        s = " + ".join(parts).replace("+ -", "- ")
        return s

    __repr__ = __str__


# -- gcd machinery -----------------------------------------------------------

def _prem(a: MultiPoly, b: MultiPoly, var: str) -> MultiPoly:
    """Pseudo-remainder of a by b in var (coefficients stay polynomial)."""
    da, db = a.degree(var), b.degree(var)
    if db < 0:
        raise PolyError("pseudo-division by zero")
    if da < db:
        return a
    lb = b.lc(var)
    xv = MultiPoly.var(var)
    r = a
    while not r.is_zero() and r.degree(var) >= db:
        dr = r.degree(var)
        r = r * lb - b * r.lc(var) * xv ** (dr - db)
    return r


def poly_gcd(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    """Primitive gcd over Q, positive leading coefficient (lex order)."""
    a, b = a._pair(b)
    if a.is_zero():
        return b.primitive() if not b.is_zero() else b
    if b.is_zero():
        return a.primitive()
    ma, mb = a.monomial_content(), b.monomial_content()
    m = tuple(min(x, y) for x, y in zip(ma, mb))
    a, b = a.divide_monomial(ma), b.divide_monomial(mb)
    g = _gcd_primitive(a.primitive(), b.primitive())
    if any(m):
        g = g.in_vars(a.vars) * MultiPoly(a.vars, {m: Q1})
    return g.primitive()


def _gcd_list(ps: Sequence[MultiPoly]) -> MultiPoly:
    return reduce(poly_gcd, ps)


def _poly_content_in(p: MultiPoly, var: str) -> MultiPoly:
    """gcd of the coefficients of p viewed in var."""
    cs = [c for c in p.as_univariate(var) if not c.is_zero()]
    if not cs:
        return MultiPoly.const(0)
    g = cs[0]
    for c in cs[1:]:
        g = poly_gcd(g, c)
        if g.is_const():
            break
    return g


def _gcd_primitive(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    if a.is_const() or b.is_const():
        return MultiPoly.const(1)
    avars = set(a.drop_unused().vars)
    bvars = set(b.drop_unused().vars)
    common = sorted(avars & bvars)
    if not common:
        return MultiPoly.const(1)
    var = common[0]
    ca, cb = _poly_content_in(a, var), _poly_content_in(b, var)
    if not ca.is_const():
        a = a.divexact(ca.in_vars(a.vars))
    if not cb.is_const():
        b = b.divexact(cb.in_vars(b.vars))
    cg = poly_gcd(ca, cb)
    # primitive PRS in var
    if a.degree(var) < b.degree(var):
        a, b = b, a
    while True:
        if b.is_zero():
            g = a
            break
        if b.degree(var) == 0:
            g = MultiPoly.const(1)
            break
        r = _prem(a, b, var)
        if r.is_zero():
            g = b
            break
        c = _poly_content_in(r, var)
        if not c.is_const():
            r = r.divexact(c.in_vars(r.vars))
        a, b = b, r
    g = g.primitive()
    cont = _poly_content_in(g, var)
    if not cont.is_const():
        g = g.divexact(cont.in_vars(g.vars))
    return (g * cg).primitive()


def poly_lcm(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    if a.is_zero() or b.is_zero():
        return MultiPoly.const(0)
    return (a * b).divexact(poly_gcd(a, b)).primitive()


# -- resultants and roots -----------------------------------------------------

def resultant(a: MultiPoly, b: MultiPoly, var: str) -> MultiPoly:
    """Resultant in var via fraction-free (Bareiss) Sylvester determinant."""
    da, db = a.degree(var), b.degree(var)
    if da < 0 or db < 0:
        raise PolyError("resultant of zero polynomial")
    if da == 0 and db == 0:
        return MultiPoly.const(1)
    ac = a.as_univariate(var)
    bc = b.as_univariate(var)
    if da == 0:
        return ac[0] ** db
    if db == 0:
        return bc[0] ** da
    n = da + db
    vs = tuple(sorted((set(a.vars) | set(b.vars)) - {var}))
    zero = MultiPoly.const(0, vs)
    M = [[zero] * n for _ in range(n)]
    for i in range(db):
        for j, c in enumerate(ac):
            M[i][i + (da - j)] = c.in_vars(vs) if vs else c
    for i in range(da):
        for j, c in enumerate(bc):
            M[db + i][i + (db - j)] = c.in_vars(vs) if vs else c
    # rows hold coefficients from highest power; Bareiss determinant
    return _bareiss_det(M)


def _bareiss_det(M: list[list[MultiPoly]]) -> MultiPoly:
    n = len(M)
    M = [row[:] for row in M]
    sign = 1
    prev = MultiPoly.const(1)
    for k in range(n - 1):
        if M[k][k].is_zero():
            for i in range(k + 1, n):
                if not M[i][k].is_zero():
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return MultiPoly.const(0)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = M[i][j] * M[k][k] - M[i][k] * M[k][j]
                M[i][j] = num.divexact(prev)
            M[i][k] = MultiPoly.const(0)
        prev = M[k][k]
    det = M[n - 1][n - 1]
    return det if sign == 1 else -det


def _int_divisors(n: int) -> list[int]:
    """All positive divisors of |n| (n != 0) via factorization."""
    n = abs(n)
    divs = [1]
    for p, e in _factorize(n).items():
        divs = [d * p ** k for d in divs for k in range(e + 1)]
    return sorted(divs)


def _is_probable_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_rho(n: int) -> int:
    if n % 2 == 0:
        return 2
    from random import Random
    rng = Random(0xC0FFEE ^ n)
    while True:
        c = rng.randrange(1, n)
        x = y = rng.randrange(2, n)
        d = 1
        while d == 1:
            x = (x * x + c) % n
            y = (y * y + c) % n
            y = (y * y + c) % n
            d = gcd(abs(x - y), n)
        if d != n:
            return d


def _factorize(n: int) -> dict[int, int]:
    n = abs(n)
    out: dict[int, int] = {}
    if n <= 1:
        return out
    stack = [n]
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if _is_probable_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        f = None
        for p in (2, 3, 5, 7, 11, 13):
            if m % p == 0:
                f = p
                break
        if f is None:
            f = _pollard_rho(m)
        stack.append(f)
        stack.append(m // f)
    return out


def _to_int_coeffs(p: MultiPoly, var: str) -> list[int]:
    cs = p.as_univariate(var)
    vals = []
    for c in cs:
        if not c.is_const():
            raise PolyError(f"polynomial is not univariate in {var}")
        vals.append(c.const_value())
    den = 1
    for v in vals:
        den = den * v.denominator // gcd(den, v.denominator)
    ints = [int(v * den) for v in vals]
    g = 0
    for x in ints:
        g = gcd(g, x)
    return [x // g for x in ints] if g else ints


def _eval_int(coeffs: list[int], x: int) -> int:
    acc = 0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def integer_roots(p: MultiPoly, var: str | None = None) -> list[int]:
    """Exactly the integer zeros of a nonzero univariate polynomial over Q."""
    if p.is_zero():
        raise PolyError("integer_roots of the zero polynomial")
    q = p.drop_unused()
    if q.is_const():
        return []
    if var is None:
        if len(q.vars) != 1:
            raise PolyError("polynomial is not univariate")
        var = q.vars[0]
    coeffs = _to_int_coeffs(q, var)
    roots = set()
    # strip var^v: v > 0 means 0 is a root
    v = 0
    while coeffs[v] == 0:
        v += 1
    if v:
        roots.add(0)
        coeffs = coeffs[v:]
    if len(coeffs) > 1:
        trailing = coeffs[0]
        for d in _int_divisors(trailing):
            for cand in (d, -d):
                if _eval_int(coeffs, cand) == 0:
                    roots.add(cand)
    return sorted(roots)


def rational_roots(p: MultiPoly, var: str | None = None) -> list[Fraction]:
    """All rational zeros of a nonzero univariate polynomial over Q."""
    if p.is_zero():
        raise PolyError("rational_roots of the zero polynomial")
    q = p.drop_unused()
    if q.is_const():
        return []
    if var is None:
        var = q.vars[0]
    coeffs = _to_int_coeffs(q, var)
    roots = set()
    v = 0
    while coeffs[v] == 0:
        v += 1
    if v:
        roots.add(Q0)
        coeffs = coeffs[v:]
    if len(coeffs) > 1:
        for dn in _int_divisors(coeffs[0]):
            for dd in _int_divisors(coeffs[-1]):
                for cand in (Fraction(dn, dd), Fraction(-dn, dd)):
                    acc = Q0
                    for c in reversed(coeffs):
                        acc = acc * cand + c
                    if acc == 0:
                        roots.add(cand)
    return sorted(roots)


def dispersion(p: MultiPoly, q: MultiPoly, var: str) -> int | None:
    """max j >= 0 with gcd(p(var), q(var+j)) nontrivial; None if no such j."""
    if p.is_zero() or q.is_zero():
        raise PolyError("dispersion of zero polynomial")
    js = shift_overlaps(p, q, var)
    return max(js) if js else None


def shift_overlaps(p: MultiPoly, q: MultiPoly, var: str) -> list[int]:
    """All j >= 0 with gcd(p(var), q(var+j)) nontrivial, ascending."""
    h = "_h"
    while h in p.vars or h in q.vars:
        h += "_"
    qh = q.compose(var, MultiPoly.var(var) + MultiPoly.var(h))
    r = resultant(p.in_vars(_merged_vars(p.vars, (h,))), qh, var)
    if r.is_zero():
        # degenerate (shared factor free of var); every shift overlaps
        raise PolyError("resultant vanished: inputs share a var-free factor")
    if r.is_const():
        return []
    return [j for j in integer_roots(r, h) if j >= 0]


# -- univariate factorization over Q ----------------------------------------

def squarefree_decomposition(p: MultiPoly, var: str) -> list[tuple[MultiPoly, int]]:
    """Yun's algorithm: [(factor, multiplicity)], factors squarefree, primitive."""
    p = p.primitive()
    out = []
    d = p.derivative(var)
    g = poly_gcd(p, d)
    if g.is_const():
        return [(p, 1)]
    w = p.divexact(g)
    i = 1
    y = d.divexact(g)
    z = y - w.derivative(var)
    while not w.is_const():
        g1 = poly_gcd(w, z)
        if not g1.is_const():
            out.append((g1.primitive(), i))
        w = w.divexact(g1)
        y = z.divexact(g1)
        z = y - w.derivative(var)
        i += 1
    return out


def _kronecker_factor(coeffs: list[int], var: str) -> list[MultiPoly]:
    """Split one squarefree integer polynomial into two nontrivial factors,
    or return [] if irreducible.  Classical Kronecker interpolation; fine for
    the small degrees the solvers meet."""
    n = len(coeffs) - 1
    if n <= 1:
        return []
    # linear factors are found by rational roots upstream; try degree 2..n//2
    pts = []
    x = 0
    while len(pts) <= n // 2:
        val = _eval_int(coeffs, x)
        if val != 0:
            pts.append((x, val))
        x = -x + (1 if x <= 0 else 0)
    for d in range(2, n // 2 + 1):
        sel = pts[: d + 1]
        divisor_lists = []
        for _, val in sel:
            ds = _int_divisors(val)
            divisor_lists.append([x for t in ds for x in (t, -t)])
        if reduce(lambda a, b: a * len(b), divisor_lists, 1) > 200000:
            return []  # give up: treat as irreducible at desk scale
        from itertools import product as iproduct
        xs = [p for p, _ in sel]
        for combo in iproduct(*divisor_lists):
            cand = _lagrange_int(xs, list(combo))
            if cand is None or len(cand) - 1 != d or cand[-1] == 0:
                continue
            q, r = _int_poly_divmod(coeffs, cand)
            if q is not None and all(c == 0 for c in r):
                f = MultiPoly((var,), {(i,): Fraction(c) for i, c in enumerate(cand)})
                g = MultiPoly((var,), {(i,): Fraction(c) for i, c in enumerate(q)})
                return [f.primitive(), g.primitive()]
    return []


def _lagrange_int(xs: list[int], ys: list[int]) -> list[int] | None:
    n = len(xs)
    coeffs = [Q0] * n
    for i in range(n):
        num = [Q1]
        den = Q1
        for j in range(n):
            if j == i:
                continue
            num = _poly_mul_frac(num, [Fraction(-xs[j]), Q1])
            den *= Fraction(xs[i] - xs[j])
        scale = Fraction(ys[i]) / den
        for k, c in enumerate(num):
            coeffs[k] += c * scale
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    out = []
    for c in coeffs:
        if c.denominator != 1:
            return None
        out.append(int(c))
    return out


def _poly_mul_frac(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    out = [Q0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _int_poly_divmod(a: list[int], b: list[int]):
    a = list(a)
    q = [0] * (len(a) - len(b) + 1)
    for i in range(len(a) - len(b), -1, -1):
        if a[i + len(b) - 1] % b[-1] != 0:
            return None, a
        c = a[i + len(b) - 1] // b[-1]
        q[i] = c
        for j, bc in enumerate(b):
            a[i + j] -= c * bc
    return q, a


def factor_univariate(p: MultiPoly, var: str | None = None) -> tuple[Fraction, list[tuple[MultiPoly, int]]]:
    """Factor a univariate polynomial over Q.

    Returns (content, [(monic-free primitive irreducible factor, mult), ...]).
    Linear factors come from rational roots; higher-degree remainders go
    through Kronecker's method and are returned whole if it gives up.
    """
    if p.is_zero():
        raise PolyError("factor of zero polynomial")
    q = p.drop_unused()
    if q.is_const():
        return q.const_value(), []
    if var is None:
        var = q.vars[0]
    cont = q.content()
    if q.lc(var).const_value() < 0:
        cont = -cont
    prim = q * (1 / cont)
    factors: list[tuple[MultiPoly, int]] = []
    for sqf, mult in squarefree_decomposition(prim, var):
        for root in rational_roots(sqf, var):
            lin = (MultiPoly.var(var) - MultiPoly.const(root)).primitive()
            factors.append((lin, mult))
            sqf = sqf.divexact(lin)
        sqf = sqf.primitive()
        stack = [sqf]
        while stack:
            f = stack.pop()
            if f.is_const():
                continue
            if f.degree(var) == 1:
                factors.append((f.primitive(), mult))
                continue
            split = _kronecker_factor(_to_int_coeffs(f, var), var)
            if split:
                stack.extend(split)
            else:
                factors.append((f.primitive(), mult))
    factors.sort(key=lambda fm: (fm[0].degree(var), sorted(fm[0].terms.items())))
    rebuilt = MultiPoly.const(cont)
    for f, m in factors:
        rebuilt = rebuilt * f ** m
    cont = cont * q.divexact(rebuilt.in_vars(q.vars) if rebuilt.vars != q.vars else rebuilt).const_value()
    return cont, factors

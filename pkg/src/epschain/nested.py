"""Indefinite nested sums over hypergeometric products.

The expression class is built recursively from rational functions of the
active variable, hypergeometric products, zeta constants and indefinite sums
under +, -, *.  Every expression denotes a unary function of its (implicit)
outer variable; the body of a Sum is again a unary function of the inner
variable.  The active variable is always called "k" internally -- renderers
map it to whatever letter the context wants.

Key operations: exact evaluation at integers (values in Q[zeta]), shifting the
argument by integers, the quasi-shuffle (stuffle) product of harmonic sums,
and canonicalization to a merged linear-combination normal form whose
structural equality is a sound zero test.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .poly import MultiPoly, integer_roots
from .ratfun import RationalFunction
from .zvalues import ZV1, ZValue

VAR = "k"
NEG_INF = -(10 ** 9)


class EvalPoleError(ArithmeticError):
    """An evaluation hit a pole; the input violates the class definition."""


class NestedSumError(ValueError):
    pass


# ---------------------------------------------------------------------------
# nodes


class Expr:
    __slots__ = ()

    def __add__(self, other):
        return Add((self, _coerce(other)))

    def __radd__(self, other):
        return Add((_coerce(other), self))

    def __sub__(self, other):
        return Add((self, Mul((RATM1, _coerce(other)))))

    def __rsub__(self, other):
        return Add((_coerce(other), Mul((RATM1, self))))

    def __neg__(self):
        return Mul((RATM1, self))

    def __mul__(self, other):
        return Mul((self, _coerce(other)))

    def __rmul__(self, other):
        return Mul((_coerce(other), self))

    def key(self) -> tuple:
        raise NotImplementedError

    def __eq__(self, other):
        return isinstance(other, Expr) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        from .exprio import render_text
        return render_text(self)


def _coerce(x) -> Expr:
    if isinstance(x, Expr):
        return x
    if isinstance(x, (int, Fraction)):
        return Rat(RationalFunction.const(x))
    if isinstance(x, RationalFunction):
        return Rat(x)
    if isinstance(x, MultiPoly):
        return Rat(RationalFunction(x))
    raise TypeError(f"cannot interpret {x!r} as a nested-sum expression")


class Rat(Expr):
    __slots__ = ("fun",)

    def __init__(self, fun):
        if not isinstance(fun, RationalFunction):
            fun = RationalFunction.const(fun) if isinstance(fun, (int, Fraction)) \
                else RationalFunction(fun)
        extra = set(fun.variables()) - {VAR}
        if extra:
            raise NestedSumError(f"rational leaf uses foreign variables {extra}")
        self.fun = fun

    def key(self):
        return ("rat", self.fun.num, self.fun.den)


class HGProd(Expr):
    """prod_{j=lower}^{k} ratio(j); empty product below lower is 1."""

    __slots__ = ("lower", "ratio", "tag")

    def __init__(self, lower: int, ratio: RationalFunction, tag: str | None = None):
        if not isinstance(ratio, RationalFunction):
            ratio = RationalFunction.const(ratio) if isinstance(ratio, (int, Fraction)) \
                else RationalFunction(ratio)
        if ratio.is_zero():
            raise NestedSumError("hypergeometric product with zero ratio")
        bad = [r for r in integer_roots(ratio.num * ratio.den, VAR)
               if r >= lower] if not ratio.is_const() else []
        if bad:
            raise NestedSumError(
                f"product ratio vanishes or blows up at j={bad[0]} >= lower bound {lower}")
        self.lower = lower
        self.ratio = ratio
        self.tag = tag

    def key(self):
        return ("prod", self.lower, self.ratio.num, self.ratio.den)


class Zeta(Expr):
    __slots__ = ("weight",)

    def __init__(self, weight: int):
        if weight < 2:
            raise NestedSumError("zeta constants need weight >= 2")
        self.weight = weight

    def key(self):
        return ("zeta", self.weight)


class SSum(Expr):
    """Generalized harmonic sum S_{a1,...,ap}(k); negative a_i alternate."""

    __slots__ = ("signature",)

    def __init__(self, signature):
        sig = tuple(int(a) for a in signature)
        if not sig or any(a == 0 for a in sig):
            raise NestedSumError(f"invalid harmonic signature {sig}")
        self.signature = sig

    @property
    def weight(self) -> int:
        return sum(abs(a) for a in self.signature)

    @property
    def depth(self) -> int:
        return len(self.signature)

    def key(self):
        return ("ssum", self.signature)


class Sum(Expr):
    """sum_{j=lower}^{k} body(j); empty below lower."""

    __slots__ = ("lower", "body")

    def __init__(self, lower: int, body: Expr):
        self.lower = lower
        self.body = _coerce(body)

    def key(self):
        return ("sum", self.lower, self.body.key())


class Add(Expr):
    __slots__ = ("terms",)

    def __init__(self, terms):
        self.terms = tuple(_coerce(t) for t in terms)

    def key(self):
        return ("add",) + tuple(t.key() for t in self.terms)


class Mul(Expr):
    __slots__ = ("factors",)

    def __init__(self, factors):
        self.factors = tuple(_coerce(f) for f in factors)

    def key(self):
        return ("mul",) + tuple(f.key() for f in self.factors)


RATM1 = None  # set below once Rat exists
RATM1 = Rat(RationalFunction.const(-1))

ZERO = Rat(RationalFunction.const(0))
ONE = Rat(RationalFunction.const(1))


def const_expr(c) -> Rat:
    return Rat(RationalFunction.const(c))


def rat_expr(num, den=1) -> Rat:
    return Rat(RationalFunction(num if isinstance(num, MultiPoly) else MultiPoly.const(num),
                                den if isinstance(den, MultiPoly) else MultiPoly.const(den)))


def kvar() -> MultiPoly:
    return MultiPoly.var(VAR)


def power_base(c) -> HGProd:
    """c^k as a hypergeometric product (constant ratio, lower bound 1)."""
    return HGProd(1, RationalFunction.const(c))


def S(*signature) -> SSum:
    return SSum(signature)


def is_zero_expr(e: Expr) -> bool:
    return isinstance(e, Rat) and e.fun.is_zero()


# ---------------------------------------------------------------------------
# evaluation


class Evaluator:
    """Exact evaluation with per-expression prefix caching for sums/products."""

    def __init__(self):
        self._sums: dict = {}   # key -> {n: ZValue}
        self._cache: dict = {}  # (key, n) -> ZValue

    def eval(self, e: Expr, n: int) -> ZValue:
        if isinstance(e, Rat):
            try:
                v = e.fun.eval({VAR: n})
            except ZeroDivisionError:
                raise EvalPoleError(f"pole of {e.fun} at {VAR}={n}")
            return ZValue(v)
        if isinstance(e, Zeta):
            return ZValue.zeta(e.weight)
        if isinstance(e, Add):
            acc = ZValue()
            for t in e.terms:
                acc = acc + self.eval(t, n)
            return acc
        if isinstance(e, Mul):
            acc = ZV1
            for f in e.factors:
                acc = acc * self.eval(f, n)
            return acc
        ck = (e.key(), n)
        hit = self._cache.get(ck)
        if hit is not None:
            return hit
        if isinstance(e, HGProd):
            v = self._eval_prod(e, n)
        elif isinstance(e, Sum):
            v = self._eval_sum(e.key(), n, e.lower, lambda j: self.eval(e.body, j))
        elif isinstance(e, SSum):
            v = self._eval_ssum(e, n)
        else:
            raise NestedSumError(f"cannot evaluate node {type(e).__name__}")
        self._cache[ck] = v
        return v

    def _eval_prod(self, e: HGProd, n: int) -> ZValue:
        if n < e.lower:
            return ZV1
        store = self._sums.setdefault(e.key(), {})
        top = store.get("max")
        if top is not None and n <= top:
            return ZValue(store[n])
        start, acc = (top, store[top]) if top is not None else (e.lower - 1, Fraction(1))
        for j in range(start + 1, n + 1):
            try:
                acc = acc * e.ratio.eval({VAR: j})
            except ZeroDivisionError:
                raise EvalPoleError(f"product ratio pole at j={j}")
            store[j] = acc
        store["max"] = n
        return ZValue(acc)

    def _eval_sum(self, key, n: int, lower: int, term) -> ZValue:
        if n < lower:
            return ZValue()
        store = self._sums.setdefault(key, {})
        top = store.get("max")
        if top is not None and n <= top:
            return store[n]
        start, acc = (top, store[top]) if top is not None else (lower - 1, ZValue())
        for j in range(start + 1, n + 1):
            acc = acc + term(j)
            store[j] = acc
        store["max"] = n
        return acc

    def _eval_ssum(self, e: SSum, n: int) -> ZValue:
        a, tail = e.signature[0], e.signature[1:]
        sign = -1 if a < 0 else 1
        p = abs(a)
        if tail:
            inner = SSum(tail)
            def term(j):
                return ZValue(Fraction(sign ** j, j ** p)) * self.eval(inner, j)
        else:
            def term(j):
                return ZValue(Fraction(sign ** j, j ** p))
        return self._eval_sum(e.key(), n, 1, term)


_default_evaluator = Evaluator()


def eval_expr(e: Expr, n: int, evaluator: Evaluator | None = None) -> ZValue:
    """Exact value of e at the integer n, as an element of Q[zeta]."""
    ev = evaluator or _default_evaluator
    return ev.eval(e, n)


# ---------------------------------------------------------------------------
# shifting


def shift_expr(e: Expr, m: int) -> Expr:
    """Expression e' with e'(n) = e(n+m); see shift_floor for where it holds."""
    if m == 0:
        return e
    if isinstance(e, (Zeta,)):
        return e
    if isinstance(e, Rat):
        return Rat(e.fun.shift(VAR, m))
    if isinstance(e, Add):
        return Add(tuple(shift_expr(t, m) for t in e.terms))
    if isinstance(e, Mul):
        return Mul(tuple(shift_expr(f, m) for f in e.factors))
    if isinstance(e, HGProd):
        if m > 0:
            extra = RationalFunction.const(1)
            for t in range(1, m + 1):
                extra = extra * e.ratio.shift(VAR, t)
            return Mul((e, Rat(extra)))
        extra = RationalFunction.const(1)
        for t in range(0, -m):
            extra = extra * e.ratio.shift(VAR, -t)
        return Mul((e, Rat(extra.inverse())))
    if isinstance(e, SSum):
        return shift_expr(_ssum_as_sum(e), m)
    if isinstance(e, Sum):
        if m > 0:
            peeled = [shift_expr(e.body, t) for t in range(1, m + 1)]
            return Add((e, *peeled))
        peeled = [Mul((RATM1, shift_expr(e.body, -t))) for t in range(0, -m)]
        return Add((e, *peeled))
    raise NestedSumError(f"cannot shift node {type(e).__name__}")


def shift_floor(e: Expr, m: int) -> int:
    """Smallest n for which shift_expr(e, m) provably equals e(n+m)."""
    if m == 0 or isinstance(e, (Zeta, Rat)):
        return NEG_INF
    if isinstance(e, Add):
        return max((shift_floor(t, m) for t in e.terms), default=NEG_INF)
    if isinstance(e, Mul):
        return max((shift_floor(f, m) for f in e.factors), default=NEG_INF)
    if isinstance(e, HGProd):
        # positive shifts evaluate the ratio at n+1..n+m, negative at n-|m|+1..n
        return e.lower - m if m > 0 else e.lower + (-m) - 1
    if isinstance(e, SSum):
        return shift_floor(_ssum_as_sum(e), m)
    if isinstance(e, Sum):
        inner = max((shift_floor(e.body, t) for t in range(1, abs(m) + 1)), default=NEG_INF)
        return max(e.lower - 1, inner)
    raise NestedSumError(f"cannot shift node {type(e).__name__}")


def _ssum_as_sum(e: SSum) -> Sum:
    a, tail = e.signature[0], e.signature[1:]
    k = MultiPoly.var(VAR)
    body_rat = RationalFunction(MultiPoly.const(1), k ** abs(a))
    factors: list[Expr] = [Rat(body_rat)]
    if a < 0:
        factors.append(power_base(-1))
    if tail:
        factors.append(SSum(tail))
    body = Mul(tuple(factors)) if len(factors) > 1 else factors[0]
    return Sum(1, body)


# ---------------------------------------------------------------------------
# quasi-shuffle (stuffle) product


@lru_cache(maxsize=None)
def _stuffle_cached(a: tuple, b: tuple) -> tuple:
    if not a:
        return ((b, 1),)
    if not b:
        return ((a, 1),)
    out: dict[tuple, int] = {}

    def addin(sig, c):
        out[sig] = out.get(sig, 0) + c
        if out[sig] == 0:
            del out[sig]

    for sig, c in _stuffle_cached(a[1:], b):
        addin((a[0],) + sig, c)
    for sig, c in _stuffle_cached(a, b[1:]):
        addin((b[0],) + sig, c)
    w = abs(a[0]) + abs(b[0])
    merged = w if (a[0] > 0) == (b[0] > 0) else -w
    for sig, c in _stuffle_cached(a[1:], b[1:]):
        addin((merged,) + sig, -c)
    return tuple(sorted(out.items()))


def quasi_shuffle(a, b) -> dict[tuple, int]:
    """S_a(n) * S_b(n) = sum_i c_i S_{sigma_i}(n), with integer c_i."""
    a = tuple(a.signature) if isinstance(a, SSum) else tuple(a)
    b = tuple(b.signature) if isinstance(b, SSum) else tuple(b)
    return dict(_stuffle_cached(a, b))


# ---------------------------------------------------------------------------
# canonical form


def _prod_value(ratio: RationalFunction, lo: int, hi: int) -> Fraction:
    """prod_{j=lo}^{hi} ratio(j) as an exact Fraction (empty product is 1)."""
    acc = Fraction(1)
    for j in range(lo, hi + 1):
        acc *= ratio.eval({VAR: j})
    return acc


def _normalize_prod(e: HGProd):
    """Canonical lower bound; returns (adjust, atom) with atom None for units."""
    ratio = e.ratio
    if ratio.is_const():
        c = ratio.const_value()
        if c == 1:
            return RationalFunction.const(1), None
        l0 = 1
    else:
        roots = integer_roots(ratio.num * ratio.den, VAR)
        l0 = max([r + 1 for r in roots] + [0])
    if l0 > e.lower:
        raise NestedSumError("product bound below a zero/pole of its ratio")
    adjust = RationalFunction.const(1 / _prod_value(ratio, l0, e.lower - 1))
    return adjust, HGProd(l0, ratio, e.tag)


_ATOM_RANK = {"zeta": 0, "ssum": 1, "prod": 2, "sum": 3}


def _atom_sort_key(atom: Expr):
    if isinstance(atom, Zeta):
        return (0, atom.weight, 0, ())
    if isinstance(atom, SSum):
        return (1, atom.weight, atom.depth, atom.signature)
    if isinstance(atom, HGProd):
        return (2, atom.lower, 0, str(atom.ratio))
    if isinstance(atom, Sum):
        return (3, atom.lower, 0, str(atom.key()))
    raise NestedSumError(f"not an atom: {atom!r}")


class _Combo:
    """Linear combination over Q(k): {monomial-key: (coef, atoms tuple)}."""

    def __init__(self):
        self.data: dict[tuple, tuple[RationalFunction, tuple]] = {}

    def add_term(self, coef: RationalFunction, atoms: tuple):
        if coef.is_zero():
            return
        key = tuple(a.key() for a in atoms)
        if key in self.data:
            old, _ = self.data[key]
            s = old + coef
            if s.is_zero():
                del self.data[key]
            else:
                self.data[key] = (s, atoms)
        else:
            self.data[key] = (coef, atoms)

    def add_combo(self, other: "_Combo", scale: RationalFunction | None = None):
        for coef, atoms in other.data.values():
            self.add_term(coef * scale if scale is not None else coef, atoms)

    def mul_combo(self, other: "_Combo") -> "_Combo":
        out = _Combo()
        for c1, a1 in self.data.values():
            for c2, a2 in other.data.values():
                for coef, atoms in _reduce_monomial(c1 * c2, a1 + a2):
                    out.add_term(coef, atoms)
        return out


def _reduce_monomial(coef: RationalFunction, atoms: tuple):
    """Merge products, stuffle harmonic pairs; yields (coef, sorted atoms)."""
    prods = [a for a in atoms if isinstance(a, HGProd)]
    ssums = [a for a in atoms if isinstance(a, SSum)]
    others = [a for a in atoms if not isinstance(a, (HGProd, SSum))]
    # merge all hypergeometric products into one
    while len(prods) >= 2:
        p, q = prods.pop(), prods.pop()
        lo = max(p.lower, q.lower)
        adj = _prod_value(p.ratio, p.lower, lo - 1) * _prod_value(q.ratio, q.lower, lo - 1)
        coef = coef * adj
        merged = HGProd(lo, p.ratio * q.ratio)
        a2, atom = _normalize_prod(merged)
        coef = coef * a2
        if atom is not None:
            prods.append(atom)
    if not ssums or len(ssums) == 1:
        yield coef, tuple(sorted(prods + ssums + others, key=_atom_sort_key))
        return
    # stuffle the harmonic sums pairwise
    expansion = {ssums[0].signature: 1}
    for s in ssums[1:]:
        nxt: dict[tuple, int] = {}
        for sig, c in expansion.items():
            for sig2, c2 in quasi_shuffle(sig, s.signature).items():
                nxt[sig2] = nxt.get(sig2, 0) + c * c2
        expansion = nxt
    base = prods + others
    for sig, c in expansion.items():
        yield coef * c, tuple(sorted(base + [SSum(sig)], key=_atom_sort_key))


def _to_combo(e: Expr) -> _Combo:
    out = _Combo()
    if isinstance(e, Rat):
        out.add_term(e.fun, ())
        return out
    if isinstance(e, Zeta):
        out.add_term(RationalFunction.const(1), (e,))
        return out
    if isinstance(e, SSum):
        out.add_term(RationalFunction.const(1), (e,))
        return out
    if isinstance(e, HGProd):
        adj, atom = _normalize_prod(e)
        out.add_term(adj, (atom,) if atom is not None else ())
        return out
    if isinstance(e, Add):
        for t in e.terms:
            out.add_combo(_to_combo(t))
        return out
    if isinstance(e, Mul):
        acc = None
        for f in e.factors:
            c = _to_combo(f)
            acc = c if acc is None else acc.mul_combo(c)
        if acc is None:
            out.add_term(RationalFunction.const(1), ())
            return out
        return acc
    if isinstance(e, Sum):
        body = _to_combo(e.body)
        for coef, atoms in body.data.values():
            zetas = tuple(a for a in atoms if isinstance(a, Zeta))
            rest = tuple(a for a in atoms if not isinstance(a, Zeta))
            inner_key = _harmonic_pattern(e.lower, coef, rest)
            if inner_key is not None:
                c, sig = inner_key
                out.add_term(c, (SSum(sig),))
            else:
                inner = _rebuild(coef, rest)
                out.add_term(RationalFunction.const(1), zetas + (Sum(e.lower, inner),))
        return out
    raise NestedSumError(f"cannot canonicalize node {type(e).__name__}")


def _harmonic_pattern(lower: int, coef: RationalFunction, atoms: tuple):
    """Recognize c * sign^j/j^a * S_tail(j) summed from 1: -> (c, signature)."""
    if lower != 1:
        return None
    if not coef.num.is_const():
        return None
    den = coef.den
    dk = den.degree(VAR)
    if dk < 1 or den.coefficient_of(VAR, dk).const_value() * MultiPoly.var(VAR) ** dk != den:
        return None
    c = coef.num.const_value() / den.coefficient_of(VAR, dk).const_value()
    sign = 1
    tail: tuple[int, ...] = ()
    for a in atoms:
        if isinstance(a, SSum) and not tail:
            tail = a.signature
        elif isinstance(a, HGProd) and a.ratio.is_const() and a.ratio.const_value() == -1 and sign == 1:
            sign = -1
            c = c * _prod_value(a.ratio, a.lower, 0)  # align to (-1)^j from j=1
        else:
            return None
    return RationalFunction.const(c), (sign * dk,) + tail


def _rebuild(coef: RationalFunction, atoms: tuple) -> Expr:
    factors: list[Expr] = []
    if not (coef.is_const() and coef.const_value() == 1) or not atoms:
        factors.append(Rat(coef))
    factors.extend(atoms)
    if len(factors) == 1:
        return factors[0]
    return Mul(tuple(factors))


def canonicalize(e: Expr) -> Expr:
    """Merged normal form: like terms collected, harmonic products stuffled.

    Structural equality of canonical forms is a sound (not complete) zero
    test, and canonicalize is idempotent.
    """
    combo = _to_combo(_coerce(e))
    if not combo.data:
        return ZERO
    items = sorted(combo.data.items(),
                   key=lambda kv: tuple(_atom_sort_key(a) for a in kv[1][1]))
    terms = [_rebuild(coef, atoms) for _, (coef, atoms) in items]
    if len(terms) == 1:
        return terms[0]
    return Add(tuple(terms))


def wrap_indefinite(e: Expr, lower: int) -> Expr:
    """sum_{j=lower}^{n} e(j), canonicalized; rejects poles at j >= lower."""
    _check_pole_free(e, lower)
    return canonicalize(Sum(lower, e))


def _check_pole_free(e: Expr, from_int: int):
    if isinstance(e, Rat):
        if not e.fun.den.is_const():
            bad = [r for r in integer_roots(e.fun.den, VAR) if r >= from_int]
            if bad:
                raise EvalPoleError(f"pole of 1/({e.fun.den}) at {VAR}={bad[0]} >= {from_int}")
    elif isinstance(e, (Add, Mul)):
        for t in (e.terms if isinstance(e, Add) else e.factors):
            _check_pole_free(t, from_int)
    elif isinstance(e, Sum):
        _check_pole_free(e.body, e.lower)
    # HGProd validated at construction; SSum/Zeta are pole-free


def expr_from_value(v: ZValue) -> Expr:
    """Lift an exact Q[zeta] value back into the expression class."""
    terms: list[Expr] = []
    for mono, c in sorted(v.terms.items()):
        factors: list[Expr] = [const_expr(c)]
        factors.extend(Zeta(w) for w in mono)
        terms.append(Mul(tuple(factors)) if len(factors) > 1 else factors[0])
    if not terms:
        return ZERO
    if len(terms) == 1:
        return terms[0]
    return Add(tuple(terms))

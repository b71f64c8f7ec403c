"""Exact sparse multivariate polynomials over Q and their fraction field.

An :class:`MPoly` maps parameter-exponent tuples to nonzero ``Fraction``
coefficients; the parameter names are carried along so that values built
from different parameter lists never mix silently.  Terms are ordered
graded-lexicographically by the declared parameter order.

:class:`RatFunc` is a reduced quotient of two ``MPoly``.  Reduction is eager:
numerator and denominator are coprime, both have integer coefficients with
joint content 1, and the leading coefficient of the denominator is positive.

Rationals are plain :class:`fractions.Fraction` values.
"""

from __future__ import annotations

import heapq
from fractions import Fraction
from math import gcd as igcd
from typing import Dict, Iterable, Mapping, Sequence, Tuple, Union

from .errors import (
    ArityError,
    DivisionByZero,
    EvalPoleError,
    NotExactDivision,
    UndefinedGcd,
)

Exponent = Tuple[int, ...]
Scalar = Union[int, Fraction]

__all__ = [
    "MPoly",
    "RatFunc",
    "mpoly_arith",
    "mpoly_gcd",
    "ratfunc_reduce",
    "ratfunc_equal",
    "eval_at_point",
]


def _grlex(e: Exponent):
    return (sum(e), e)


def _lcm(a: int, b: int) -> int:
    return a // igcd(a, b) * b


class MPoly:
    """Sparse polynomial in named parameters with rational coefficients."""

    __slots__ = ("params", "terms", "_hash")

    def __init__(self, params: Sequence[str], terms: Mapping[Exponent, Scalar] | None = None):
        self.params: Tuple[str, ...] = tuple(params)
        n = len(self.params)
        clean: Dict[Exponent, Fraction] = {}
        for e, c in (terms or {}).items():
            e = tuple(int(k) for k in e)
            if len(e) != n:
                raise ArityError(f"exponent {e} has length {len(e)}, expected {n}")
            if any(k < 0 for k in e):
                raise ValueError(f"negative parameter exponent {e}")
            c = Fraction(c)
            if c:
                clean[e] = clean.get(e, Fraction(0)) + c
        self.terms = {e: c for e, c in clean.items() if c}
        self._hash = None

    @classmethod
    def _raw(cls, params: Tuple[str, ...], terms: Dict[Exponent, Fraction]) -> "MPoly":
        # trusted constructor: terms already clean
        p = object.__new__(cls)
        p.params = params
        p.terms = terms
        p._hash = None
        return p

    # constructors
    @classmethod
    def zero(cls, params: Sequence[str]) -> "MPoly":
        return cls._raw(tuple(params), {})

    @classmethod
    def const(cls, params: Sequence[str], value: Scalar) -> "MPoly":
        params = tuple(params)
        value = Fraction(value)
        if not value:
            return cls._raw(params, {})
        return cls._raw(params, {(0,) * len(params): value})

    @classmethod
    def var(cls, params: Sequence[str], name: str) -> "MPoly":
        params = tuple(params)
        if name not in params:
            raise ArityError(f"unknown parameter {name!r}")
        e = [0] * len(params)
        e[params.index(name)] = 1
        return cls._raw(params, {tuple(e): Fraction(1)})

    # inspection
    @property
    def nparams(self) -> int:
        return len(self.params)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self.terms.get((0,) * self.nparams, Fraction(0))

    def sorted_terms(self):
        """Terms in descending graded-lex order."""
        return sorted(self.terms.items(), key=lambda t: _grlex(t[0]), reverse=True)

    def leading_term(self) -> Tuple[Exponent, Fraction]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self.terms, key=_grlex)
        return e, self.terms[e]

    def lc(self) -> Fraction:
        return self.leading_term()[1]

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, k: int) -> int:
        return max((e[k] for e in self.terms), default=-1)

    # arithmetic
    def _coerce(self, other) -> "MPoly":
        if isinstance(other, MPoly):
            if other.params != self.params:
                raise ArityError(f"parameter lists differ: {self.params} vs {other.params}")
            return other
        if isinstance(other, (int, Fraction)):
            return MPoly.const(self.params, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not other.terms:
            return self
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e)
            if v is None:
                out[e] = c
            else:
                v += c
                if v:
                    out[e] = v
                else:
                    del out[e]
        return MPoly._raw(self.params, out)

    __radd__ = __add__

    def __neg__(self) -> "MPoly":
        return MPoly._raw(self.params, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self.terms or not other.terms:
            return MPoly._raw(self.params, {})
        a, b = (self, other) if len(self.terms) >= len(other.terms) else (other, self)
        if len(b.terms) == 1:
            (eb, cb), = b.terms.items()
            if not any(eb):
                return MPoly._raw(self.params, {e: c * cb for e, c in a.terms.items()})
            return MPoly._raw(
                self.params,
                {tuple(x + y for x, y in zip(e, eb)): c * cb for e, c in a.terms.items()},
            )
        out: Dict[Exponent, Fraction] = {}
        get = out.get
        for eb, cb in b.terms.items():
            for ea, ca in a.terms.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                out[e] = get(e, 0) + ca * cb
        return MPoly._raw(self.params, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "MPoly":
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result = MPoly.const(self.params, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, MPoly):
            return self.params == other.params and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.is_constant() and self.constant_value() == other
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.params, frozenset(self.terms.items())))
        return self._hash

    def scale(self, c: Scalar) -> "MPoly":
        c = Fraction(c)
        if not c:
            return MPoly._raw(self.params, {})
        return MPoly._raw(self.params, {e: v * c for e, v in self.terms.items()})

    def exquo(self, other: "MPoly") -> "MPoly":
        """Exact quotient ``self / other``; raises if the division leaves a remainder."""
        other = self._coerce(other)
        if not other.terms:
            raise DivisionByZero("division by the zero polynomial")
        if not self.terms:
            return self
        if len(other.terms) == 1:
            (eb, cb), = other.terms.items()
            out = {}
            for e, c in self.terms.items():
                q = tuple(x - y for x, y in zip(e, eb))
                if any(k < 0 for k in q):
                    raise NotExactDivision("monomial does not divide")
                out[q] = c / cb
            return MPoly._raw(self.params, out)
        eb, cb = other.leading_term()
        rest = [(e, c) for e, c in other.terms.items() if e != eb]
        rem = dict(self.terms)
        heap = [(-sum(e), tuple(-k for k in e)) for e in rem]
        heapq.heapify(heap)
        quot: Dict[Exponent, Fraction] = {}
        while heap:
            _, neg = heapq.heappop(heap)
            e = tuple(-k for k in neg)
            c = rem.pop(e, None)
            if c is None:
                continue
            q = tuple(x - y for x, y in zip(e, eb))
            if any(k < 0 for k in q):
                raise NotExactDivision("leading monomial does not divide")
            qc = c / cb
            quot[q] = qc
            for er, cr in rest:
                t = tuple(x + y for x, y in zip(q, er))
                v = rem.get(t)
                if v is None:
                    rem[t] = -qc * cr
                    heapq.heappush(heap, (-sum(t), tuple(-k for k in t)))
                else:
                    v -= qc * cr
                    if v:
                        rem[t] = v
                    else:
                        del rem[t]
        return MPoly._raw(self.params, quot)

    # content
    def content(self) -> Fraction:
        """Positive rational c with ``self / c`` integral and primitive."""
        if not self.terms:
            return Fraction(0)
        num = 0
        den = 1
        for c in self.terms.values():
            num = igcd(num, c.numerator)
            den = _lcm(den, c.denominator)
        return Fraction(num, den)

    def primitive(self) -> "MPoly":
        """Integer-coefficient primitive part with positive leading coefficient."""
        if not self.terms:
            return self
        c = self.content()
        if self.lc() < 0:
            c = -c
        return self.scale(1 / c)

    # evaluation
    def evaluate(self, assignment: Mapping[str, Scalar]):
        missing = [p for p in self.params if p not in assignment]
        if missing:
            raise ArityError(f"assignment misses parameter(s) {missing}")
        vals = [assignment[p] for p in self.params]
        vals = [v if isinstance(v, (complex, float)) else Fraction(v) for v in vals]
        total = Fraction(0)
        for e, c in self.terms.items():
            t = c
            for v, k in zip(vals, e):
                if k:
                    t = t * v**k
            total = total + t
        return total

    def rename(self, params: Sequence[str]) -> "MPoly":
        """Embed into a (super)list of parameters."""
        params = tuple(params)
        try:
            idx = [params.index(p) for p in self.params]
        except ValueError as exc:
            raise ArityError(f"cannot embed {self.params} into {params}") from exc
        out = {}
        for e, c in self.terms.items():
            ne = [0] * len(params)
            for i, k in zip(idx, e):
                ne[i] = k
            out[tuple(ne)] = c
        return MPoly._raw(params, out)

    def __str__(self) -> str:
        from .grammar import format_mpoly

        return format_mpoly(self)

    def __repr__(self) -> str:
        return f"MPoly({str(self)!r}, params={list(self.params)})"


def mpoly_arith(a: MPoly, b: MPoly, op: str) -> MPoly:
    """Apply ``op`` in ``{'add', 'sub', 'mul'}``."""
    if not isinstance(a, MPoly) or not isinstance(b, MPoly):
        raise TypeError("mpoly_arith expects two MPoly values")
    if a.params != b.params:
        raise ArityError(f"parameter lists differ: {a.params} vs {b.params}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")


# ---------------------------------------------------------------------------
# GCD: recursive subresultant PRS over Z[p_k, ..., p_last]
# ---------------------------------------------------------------------------


def _split(p: MPoly, k: int) -> list:
    """Coefficients of ``p`` as a univariate polynomial in parameter ``k``."""
    deg = p.degree_in(k)
    parts = [dict() for _ in range(deg + 1)]
    for e, c in p.terms.items():
        parts[e[k]][e[:k] + (0,) + e[k + 1:]] = c
    return [MPoly._raw(p.params, d) for d in parts]


def _join(coeffs: list, k: int, params) -> MPoly:
    out = {}
    for d, c in enumerate(coeffs):
        for e, v in c.terms.items():
            out[e[:k] + (d,) + e[k + 1:]] = v
    return MPoly._raw(params, out)


def _trim(u: list) -> list:
    while u and not u[-1].terms:
        u.pop()
    return u


def _prem(f: list, g: list, params) -> list:
    """Pseudo-remainder of univariate polys (lists, low degree first)."""
    df, dg = len(f) - 1, len(g) - 1
    r = list(f)
    lg = g[-1]
    e = df - dg + 1
    while r and len(r) - 1 >= dg:
        lr = r[-1]
        shift = len(r) - 1 - dg
        r = [c * lg for c in r]
        for i, gc in enumerate(g):
            r[i + shift] = r[i + shift] - lr * gc
        r = _trim(r)
        e -= 1
    if e:
        s = lg**e
        r = [c * s for c in r]
    return r


def _int_gcd_const(a: MPoly, b: MPoly) -> MPoly:
    ca, cb = a.constant_value(), b.constant_value()
    return MPoly.const(a.params, Fraction(igcd(ca.numerator, cb.numerator)))


def _gcd_rec(a: MPoly, b: MPoly, k: int) -> MPoly:
    """gcd of nonzero integer polynomials involving only parameters >= k."""
    n = a.nparams
    if a.is_constant() and b.is_constant():
        return _int_gcd_const(a, b)
    while k < n and a.degree_in(k) <= 0 and b.degree_in(k) <= 0:
        k += 1
    if a.is_constant() or b.is_constant():
        # reduce to gcd of integer contents
        const, other = (a, b) if a.is_constant() else (b, a)
        return MPoly.const(a.params, Fraction(igcd(const.constant_value().numerator, other.content().numerator)))
    ua, ub = _split(a, k), _split(b, k)
    conta = _content_rec(ua, k + 1)
    contb = _content_rec(ub, k + 1)
    cont = _gcd_rec(conta, contb, k + 1)
    if len(ua) == 1 or len(ub) == 1:
        # one side does not involve parameter k
        return cont
    pa = [c.exquo(conta) for c in ua]
    pb = [c.exquo(contb) for c in ub]
    if len(pa) < len(pb):
        pa, pb = pb, pa
    g = _subresultant_last(pa, pb, a.params)
    if len(g) == 1:
        return cont
    # primitive part of the last nonzero remainder
    gc = _content_rec(g, k + 1)
    g = [c.exquo(gc) for c in g]
    res = _join(g, k, a.params) * cont
    return res


def _content_rec(coeffs: list, k: int) -> MPoly:
    g = None
    for c in coeffs:
        if not c.terms:
            continue
        g = c if g is None else _gcd_rec(g, c, k)
        if g.is_constant():
            break
    # normalise sign so exact division keeps a positive leading coefficient
    if g.lc() < 0:
        g = -g
    return g


def _subresultant_last(f: list, g: list, params) -> list:
    """Last nonzero element of the subresultant PRS of ``f`` and ``g``."""
    one = MPoly.const(params, 1)
    gg = one
    h = one
    while True:
        d = len(f) - len(g)
        r = _prem(f, g, params)
        if not r:
            return g
        if len(r) == 1:
            return r
        div = gg * h**d
        r = [c.exquo(div) for c in r]
        f, g = g, r
        gg = f[-1]
        if d == 0:
            pass
        elif d == 1:
            h = gg
        else:
            h = (gg**d).exquo(h ** (d - 1))


def _integer_normal(p: MPoly) -> Tuple[MPoly, Fraction]:
    c = p.content()
    return p.scale(1 / c), c


def mpoly_gcd(a: MPoly, b: MPoly) -> MPoly:
    """Greatest common divisor, primitive over Z with positive leading coefficient."""
    if a.params != b.params:
        raise ArityError(f"parameter lists differ: {a.params} vs {b.params}")
    if not a.terms and not b.terms:
        raise UndefinedGcd("gcd(0, 0) is undefined")
    if not a.terms:
        return b.primitive()
    if not b.terms:
        return a.primitive()
    if a.is_constant() or b.is_constant():
        return MPoly.const(a.params, 1)
    ia, _ = _integer_normal(a)
    ib, _ = _integer_normal(b)
    # cheap exits for common shapes
    if len(ia.terms) == 1 or len(ib.terms) == 1:
        return _monomial_gcd(ia, ib)
    return _gcd_rec(ia, ib, 0).primitive()


def _monomial_gcd(a: MPoly, b: MPoly) -> MPoly:
    mono, other = (a, b) if len(a.terms) == 1 else (b, a)
    (e, _), = mono.terms.items()
    m = list(e)
    for f in other.terms:
        m = [min(x, y) for x, y in zip(m, f)]
    # a monomial's divisors are monomials (times integer content, here 1)
    return MPoly._raw(a.params, {tuple(m): Fraction(1)})


# ---------------------------------------------------------------------------
# Rational functions
# ---------------------------------------------------------------------------


class RatFunc:
    """Reduced fraction ``num / den`` of two :class:`MPoly` values."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if isinstance(num, RatFunc) and den is None:
            self.num, self.den = num.num, num.den
            return
        if not isinstance(num, MPoly):
            raise TypeError("RatFunc numerator must be an MPoly; use RatFunc.const")
        if den is None:
            den = MPoly.const(num.params, 1)
        elif isinstance(den, (int, Fraction)):
            den = MPoly.const(num.params, den)
        if den.params != num.params:
            raise ArityError(f"parameter lists differ: {num.params} vs {den.params}")
        if not den.terms:
            raise DivisionByZero("zero denominator")
        self.num, self.den = _reduce(num, den)

    @classmethod
    def _raw(cls, num: MPoly, den: MPoly) -> "RatFunc":
        r = object.__new__(cls)
        r.num, r.den = num, den
        return r

    @classmethod
    def const(cls, params: Sequence[str], value: Scalar) -> "RatFunc":
        v = Fraction(value)
        return cls._raw(MPoly.const(params, v.numerator), MPoly.const(params, v.denominator))

    @classmethod
    def zero(cls, params: Sequence[str]) -> "RatFunc":
        return cls.const(params, 0)

    @classmethod
    def var(cls, params: Sequence[str], name: str) -> "RatFunc":
        return cls._raw(MPoly.var(params, name), MPoly.const(params, 1))

    @property
    def params(self) -> Tuple[str, ...]:
        return self.num.params

    def is_zero(self) -> bool:
        return not self.num.terms

    def __bool__(self) -> bool:
        return bool(self.num.terms)

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def size(self) -> int:
        return len(self.num.terms) + len(self.den.terms)

    def _coerce(self, other) -> "RatFunc":
        if isinstance(other, RatFunc):
            if other.params != self.params:
                raise ArityError(f"parameter lists differ: {self.params} vs {other.params}")
            return other
        if isinstance(other, (int, Fraction)):
            return RatFunc.const(self.params, other)
        if isinstance(other, MPoly):
            return RatFunc(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not other.num.terms:
            return self
        if not self.num.terms:
            return other
        if self.den == other.den:
            return _make(self.num + other.num, self.den)
        return _make(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> "RatFunc":
        return RatFunc._raw(-self.num, self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self.num.terms or not other.num.terms:
            return RatFunc.zero(self.params)
        if self.den.is_constant() and other.den.is_constant():
            return _make(self.num * other.num, self.den * other.den)
        # cross cancellation keeps intermediate sizes down
        g1 = mpoly_gcd(self.num, other.den)
        g2 = mpoly_gcd(other.num, self.den)
        n = self.num.exquo(g1) * other.num.exquo(g2)
        d = self.den.exquo(g2) * other.den.exquo(g1)
        return _make(n, d, reduced=True)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if not self.num.terms:
            raise DivisionByZero("inverse of zero")
        return _make(self.den, self.num, reduced=True)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, k: int) -> "RatFunc":
        if k < 0:
            return self.inverse() ** (-k)
        return RatFunc._raw(self.num**k, self.den**k)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = RatFunc.const(self.params, other)
        if isinstance(other, MPoly):
            other = RatFunc(other)
        if not isinstance(other, RatFunc):
            return NotImplemented
        return ratfunc_equal(self, other)

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def evaluate(self, assignment: Mapping[str, Scalar]):
        d = self.den.evaluate(assignment)
        if d == 0:
            raise EvalPoleError("denominator vanishes at the assignment")
        return self.num.evaluate(assignment) / d

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("rational function is not constant")
        return self.num.constant_value() / self.den.constant_value()

    def __str__(self) -> str:
        if self.den == 1:
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self) -> str:
        return f"RatFunc({str(self.num)!r}, {str(self.den)!r})"


def _normalize_scale(num: MPoly, den: MPoly) -> Tuple[MPoly, MPoly]:
    # integer coefficients, joint content 1, positive leading coefficient of den
    l = 1
    g = 0
    for c in num.terms.values():
        l = _lcm(l, c.denominator)
    for c in den.terms.values():
        l = _lcm(l, c.denominator)
    for c in num.terms.values():
        g = igcd(g, (c * l).numerator)
    for c in den.terms.values():
        g = igcd(g, (c * l).numerator)
    s = Fraction(l, g)
    if den.lc() < 0:
        s = -s
    if s == 1:
        return num, den
    return num.scale(s), den.scale(s)


def _reduce(num: MPoly, den: MPoly) -> Tuple[MPoly, MPoly]:
    if not num.terms:
        return num, MPoly.const(num.params, 1)
    if not den.is_constant():
        g = mpoly_gcd(num, den)
        if not g.is_constant():
            num, den = num.exquo(g), den.exquo(g)
    return _normalize_scale(num, den)


def _make(num: MPoly, den: MPoly, reduced: bool = False) -> RatFunc:
    if not den.terms:
        raise DivisionByZero("zero denominator")
    if reduced:
        if not num.terms:
            return RatFunc._raw(num, MPoly.const(num.params, 1))
        return RatFunc._raw(*_normalize_scale(num, den))
    return RatFunc._raw(*_reduce(num, den))


def ratfunc_reduce(num: MPoly, den: MPoly) -> RatFunc:
    """Reduce ``num/den`` to canonical form."""
    if not den.terms:
        raise DivisionByZero("zero denominator")
    return RatFunc(num, den)


def ratfunc_equal(x: RatFunc, y: RatFunc) -> bool:
    """Equality by cross-multiplication, independent of the canonical form."""
    if x.params != y.params:
        raise ArityError(f"parameter lists differ: {x.params} vs {y.params}")
    return (x.num * y.den - y.num * x.den).is_zero()


def eval_at_point(p, assignment: Mapping[str, Scalar]):
    """Exact value of an MPoly or RatFunc at a parameter assignment."""
    if isinstance(p, (MPoly, RatFunc)):
        return p.evaluate(assignment)
    if isinstance(p, (int, Fraction)):
        return Fraction(p)
    raise TypeError(f"cannot evaluate {type(p).__name__}")


def as_field_element(value, params: Iterable[str] | None):
    """Coerce to RatFunc when ``params`` is given, else to Fraction."""
    if params is None:
        if isinstance(value, RatFunc):
            return value.constant_value()
        return Fraction(value)
    params = tuple(params)
    if isinstance(value, RatFunc):
        return value
    if isinstance(value, MPoly):
        return RatFunc(value)
    return RatFunc.const(params, value)

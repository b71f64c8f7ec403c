"""Sparse Laurent polynomials, Newton polytopes and the toric Jacobian.

Coefficients come from one of three domains, never mixed within a value:

* ``"rational"``: :class:`~fractions.Fraction` (ints are promoted),
* ``"ratfunc"``: :class:`~sparse_residue.exact.RatFunc` over a shared
  parameter list,
* ``"float"``: Python ``complex``; only used for numeric oracle output.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Complex
from typing import Dict, Mapping, Optional, Sequence, Tuple

from .errors import (
    ArityError,
    CoefficientDomainError,
    DimensionError,
    SupportError,
    TorusDomainError,
    ZeroPolynomial,
)
from .exact import RatFunc
from .geometry import LatticePolytope, contains, convex_hull, minkowski_sum_all, mixed_volume

Exponent = Tuple[int, ...]


def _kind(c) -> str:
    if isinstance(c, RatFunc):
        return "ratfunc"
    if isinstance(c, (int, Fraction)) and not isinstance(c, bool):
        return "rational"
    if isinstance(c, Complex):
        return "float"
    raise CoefficientDomainError(f"unsupported coefficient type {type(c).__name__}")


class LaurentPolynomial:
    """Map from integer exponent vectors to nonzero coefficients."""

    __slots__ = ("nvars", "terms", "kind", "params")

    def __init__(self, nvars: int, terms: Mapping[Sequence[int], object] | None = None):
        self.nvars = int(nvars)
        clean: Dict[Exponent, object] = {}
        kind = None
        params = None
        for e, c in (terms or {}).items():
            e = tuple(int(k) for k in e)
            if len(e) != self.nvars:
                raise DimensionError(f"exponent {e} has length {len(e)}, expected {self.nvars}")
            k = _kind(c)
            if k == "rational":
                c = Fraction(c)
            elif k == "float":
                c = complex(c)
            if kind is None:
                kind = k
            elif kind != k:
                raise CoefficientDomainError(f"mixed coefficient kinds {kind} and {k}")
            if k == "ratfunc":
                if params is None:
                    params = c.params
                elif c.params != params:
                    raise ArityError(f"parameter lists differ: {params} vs {c.params}")
            clean[e] = clean[e] + c if e in clean else c
        self.terms = {e: c for e, c in clean.items() if c != 0}
        self.kind = kind if self.terms else None
        self.params = params if self.terms else None

    @classmethod
    def monomial(cls, exp: Sequence[int], coeff=1) -> "LaurentPolynomial":
        return cls(len(exp), {tuple(exp): coeff})

    def support(self) -> Tuple[Exponent, ...]:
        return tuple(sorted(self.terms))

    def sorted_terms(self):
        return sorted(self.terms.items())

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def coefficient(self, exp: Sequence[int]):
        return self.terms.get(tuple(exp), 0)

    def _check(self, other: "LaurentPolynomial"):
        if other.nvars != self.nvars:
            raise DimensionError(f"variable counts differ: {self.nvars} vs {other.nvars}")
        if self.kind and other.kind and self.kind != other.kind:
            raise CoefficientDomainError(f"mixed coefficient kinds {self.kind} and {other.kind}")

    def __add__(self, other):
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out[e] + c if e in out else c
        return LaurentPolynomial(self.nvars, out)

    def __neg__(self):
        return LaurentPolynomial(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, LaurentPolynomial):
            return self.scale(other)
        self._check(other)
        out: Dict[Exponent, object] = {}
        for ea, ca in self.terms.items():
            for eb, cb in other.terms.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                p = ca * cb
                out[e] = out[e] + p if e in out else p
        return LaurentPolynomial(self.nvars, out)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c) -> "LaurentPolynomial":
        return LaurentPolynomial(self.nvars, {e: c * v for e, v in self.terms.items()})

    def shift(self, exp: Sequence[int]) -> "LaurentPolynomial":
        """Multiply by the monomial t^exp."""
        return LaurentPolynomial(
            self.nvars, {tuple(x + y for x, y in zip(e, exp)): c for e, c in self.terms.items()}
        )

    def euler_derivative(self, j: int) -> "LaurentPolynomial":
        """t_j * d/dt_j."""
        return LaurentPolynomial(self.nvars, {e: e[j] * c for e, c in self.terms.items() if e[j]})

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        if self.nvars != other.nvars or set(self.terms) != set(other.terms):
            return False
        return all(self.terms[e] == other.terms[e] for e in self.terms)

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms)))

    def newton_polytope(self) -> LatticePolytope:
        return newton_polytope(self)

    def evaluate(self, point, assignment: Optional[Mapping] = None):
        return evaluate(self, point, assignment)

    def as_complex(self) -> "LaurentPolynomial":
        if self.kind == "ratfunc":
            raise CoefficientDomainError("substitute parameters before converting to complex")
        return LaurentPolynomial(self.nvars, {e: complex(c) for e, c in self.terms.items()})

    def __repr__(self) -> str:
        body = " + ".join(f"({c})*t^{list(e)}" for e, c in self.sorted_terms()) or "0"
        return f"LaurentPolynomial({body})"


def newton_polytope(f: LaurentPolynomial) -> LatticePolytope:
    if not f.terms:
        raise ZeroPolynomial("the zero polynomial has no Newton polytope")
    return convex_hull(f.terms.keys())


def _det(matrix):
    n = len(matrix)
    if n == 1:
        return matrix[0][0]
    if n == 2:
        return matrix[0][0] * matrix[1][1] - matrix[0][1] * matrix[1][0]
    total = None
    for j in range(n):
        entry = matrix[0][j]
        if not entry:
            continue
        minor = [row[:j] + row[j + 1:] for row in matrix[1:]]
        term = entry * _det(minor)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    if total is None:
        return LaurentPolynomial(matrix[0][0].nvars, {})
    return total


@dataclass(frozen=True)
class SparseSystem:
    """Square system f_1 = ... = f_n = 0 with full-dimensional Newton polytopes."""

    polys: Tuple[LaurentPolynomial, ...]
    newton: Tuple[LatticePolytope, ...] = field(init=False, repr=False)
    delta: LatticePolytope = field(init=False, repr=False)
    mv: int = field(init=False)

    def __init__(self, polys: Sequence[LaurentPolynomial]):
        polys = tuple(polys)
        if not polys:
            raise DimensionError("empty system")
        n = polys[0].nvars
        if len(polys) != n or any(f.nvars != n for f in polys):
            raise DimensionError(f"system must have n = {n} equations in {n} variables")
        kinds = {f.kind for f in polys if f.kind}
        if len(kinds) > 1:
            raise CoefficientDomainError(f"mixed coefficient kinds {sorted(kinds)}")
        params = {f.params for f in polys if f.params is not None}
        if len(params) > 1:
            raise ArityError("polynomials use different parameter lists")
        newton = tuple(newton_polytope(f) for f in polys)
        for i, P in enumerate(newton):
            if P.degenerate:
                raise DimensionError(f"Newton polytope of f_{i + 1} is not {n}-dimensional")
        object.__setattr__(self, "polys", polys)
        object.__setattr__(self, "newton", newton)
        object.__setattr__(self, "delta", minkowski_sum_all(newton))
        object.__setattr__(self, "mv", mixed_volume(newton))

    @property
    def n(self) -> int:
        return len(self.polys)

    @property
    def kind(self) -> str:
        return self.polys[0].kind

    @property
    def params(self):
        return self.polys[0].params


def toric_jacobian(sys) -> LaurentPolynomial:
    """det(t_j * df_i/dt_j) by cofactor expansion.

    Accepts a :class:`SparseSystem` or a plain square list of polynomials
    (no full-dimensionality requirement).
    """
    polys = sys.polys if isinstance(sys, SparseSystem) else tuple(sys)
    n = len(polys)
    if any(f.nvars != n for f in polys):
        raise DimensionError("toric Jacobian needs n polynomials in n variables")
    matrix = [[f.euler_derivative(j) for j in range(n)] for f in polys]
    return _det(matrix)


def boundary_restrict(f: LaurentPolynomial, delta: LatticePolytope) -> LaurentPolynomial:
    """Drop the terms of ``f`` whose exponents lie strictly inside ``delta``."""
    keep = {}
    for e, c in f.terms.items():
        if not contains(delta, e, strict=False):
            raise SupportError(f"exponent {e} lies outside the polytope")
        if not contains(delta, e, strict=True):
            keep[e] = c
    return LaurentPolynomial(f.nvars, keep)


def evaluate(f: LaurentPolynomial, point: Sequence, assignment: Optional[Mapping] = None):
    """Value of ``f`` at a torus point; exact for rational input."""
    if len(point) != f.nvars:
        raise DimensionError(f"point has {len(point)} coordinates, expected {f.nvars}")
    if any(x == 0 for x in point):
        raise TorusDomainError("evaluation point has a zero coordinate")
    if f.kind == "ratfunc":
        if assignment is None:
            raise ArityError("symbolic coefficients need a parameter assignment")
        f = substitute_params(f, assignment)
    exact = all(isinstance(x, (int, Fraction)) for x in point) and f.kind in (None, "rational")
    pt = [Fraction(x) for x in point] if exact else [complex(x) for x in point]
    total = Fraction(0) if exact else 0j
    for e, c in f.sorted_terms():
        term = c
        for x, k in zip(pt, e):
            if k:
                term = term * x**k
        total = total + term
    return total


def substitute_params(f: LaurentPolynomial, assignment: Mapping) -> LaurentPolynomial:
    """Evaluate every RatFunc coefficient at ``assignment``."""
    if f.kind != "ratfunc":
        return f
    return LaurentPolynomial(f.nvars, {e: c.evaluate(assignment) for e, c in f.terms.items()})


def lift_to_ratfunc(f: LaurentPolynomial, params: Sequence[str]) -> LaurentPolynomial:
    """Promote rational coefficients to constant RatFuncs over ``params``."""
    if f.kind == "ratfunc":
        return f
    if f.kind == "float":
        raise CoefficientDomainError("cannot lift float coefficients")
    return LaurentPolynomial(f.nvars, {e: RatFunc.const(params, c) for e, c in f.terms.items()})

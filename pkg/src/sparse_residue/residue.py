"""Global residue as a linear-algebra problem.

For Delta_0 with 0 in its interior and g supported strictly inside
Delta~ = Delta_0 + Delta, write

    g = h_0 + h_1 f_1 + ... + h_n f_n + c J

with h_i supported strictly inside Delta~_(i) (the sum omitting the i-th
summand, Delta_0 for i = 0).  Then the residue of g is c times the
normalized mixed volume.  Columns are ordered: h_0 block, h_1 block, ...,
h_n block, then c; rows are the interior lattice points of Delta~ in
lexicographic order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Tuple

from .errors import (
    CoefficientDomainError,
    DegenerateSystem,
    Delta0Invalid,
    NonGenericSystem,
)
from .exact import MPoly, RatFunc, mpoly_gcd
from .geometry import (
    LatticePolytope,
    contains,
    interior_lattice_points,
    minkowski_sum,
    minkowski_sum_all,
)
from .laurent import (
    LaurentPolynomial,
    SparseSystem,
    boundary_restrict,
    lift_to_ratfunc,
    newton_polytope,
    toric_jacobian,
)
from .linalg import back_substitute, bareiss_echelon

Point = Tuple[int, ...]


def _field(sys: SparseSystem):
    """(zero, one) of the coefficient field of ``sys``."""
    if sys.kind == "ratfunc":
        return RatFunc.zero(sys.params), RatFunc.const(sys.params, 1)
    if sys.kind == "rational":
        return Fraction(0), Fraction(1)
    raise CoefficientDomainError(f"residue engine needs exact coefficients, got {sys.kind!r}")


def _align(sys: SparseSystem, g: LaurentPolynomial) -> LaurentPolynomial:
    if g.nvars != sys.n:
        raise CoefficientDomainError(f"g has {g.nvars} variables, system has {sys.n}")
    if not g.terms:
        return g
    if g.kind == "float" or (g.kind == "ratfunc" and sys.kind == "rational"):
        raise CoefficientDomainError(f"g has {g.kind} coefficients but the system is {sys.kind}")
    if sys.kind == "ratfunc":
        if g.kind == "ratfunc" and g.params != sys.params:
            raise CoefficientDomainError("g and the system use different parameters")
        return lift_to_ratfunc(g, sys.params)
    return g


@dataclass(frozen=True)
class ResidueLinearSystem:
    rows: Tuple[Point, ...]
    blocks: Tuple[Tuple[Point, ...], ...]   # block 0 is h_0, block i is h_i
    matrix: Tuple[Tuple[object, ...], ...]
    rhs: Tuple[object, ...]
    delta0: LatticePolytope
    jacobian: LaurentPolynomial = field(repr=False)

    @property
    def shape(self) -> Tuple[int, int]:
        return len(self.rows), (len(self.matrix[0]) if self.matrix else sum(map(len, self.blocks)) + 1)

    @property
    def block_sizes(self) -> Tuple[int, ...]:
        return tuple(len(b) for b in self.blocks) + (1,)

    def column_labels(self) -> List[Tuple[int, Point]]:
        """(block index, monomial) per column; the c column is (-1, ())."""
        out = [(i, m) for i, block in enumerate(self.blocks) for m in block]
        out.append((-1, ()))
        return out

    def to_json(self) -> dict:
        from .grammar import coeff_to_str, ratfunc_to_json

        def enc(x):
            if isinstance(x, RatFunc) and not x.is_polynomial():
                return ratfunc_to_json(x)
            return coeff_to_str(x)

        return {
            "rows": [list(r) for r in self.rows],
            "blocks": [[list(m) for m in b] for b in self.blocks],
            "shape": list(self.shape),
            "matrix": [[enc(x) for x in row] for row in self.matrix],
            "rhs": [enc(x) for x in self.rhs],
            "delta0": self.delta0.to_json(),
        }


@dataclass(frozen=True)
class ResidueResult:
    residue: object
    c: object
    mv: int
    delta0: Optional[LatticePolytope]
    certificate: Tuple[object, ...] = ()
    linear_system: Optional[ResidueLinearSystem] = field(default=None, repr=False)
    parts: Tuple[Tuple[Point, object, "ResidueResult"], ...] = field(default=(), repr=False)
    mode: str = "whole-polytope"
    restrict_jacobian: bool = True

    def h_polynomials(self) -> List[LaurentPolynomial]:
        """h_0, ..., h_n read back from the certificate."""
        lin = self.linear_system
        if lin is None:
            raise ValueError("no linear system recorded for this result")
        n = len(lin.rows[0]) if lin.rows else len(lin.blocks) - 1
        out = []
        k = 0
        for block in lin.blocks:
            terms = {}
            for m in block:
                terms[m] = self.certificate[k]
                k += 1
            out.append(LaurentPolynomial(n, terms))
        return out


def step1_check(sys: SparseSystem, g: LaurentPolynomial, delta0: LatticePolytope) -> LatticePolytope:
    """Validate Delta_0 for ``g``; returns Delta~ = Delta_0 + Delta."""
    n = sys.n
    if delta0.dim_ambient != n:
        raise Delta0Invalid(f"Delta_0 lives in dimension {delta0.dim_ambient}, expected {n}")
    if delta0.degenerate:
        raise Delta0Invalid("Delta_0 is not full-dimensional")
    if not contains(delta0, (0,) * n, strict=True):
        raise Delta0Invalid("0 is not in the interior of Delta_0")
    total = minkowski_sum(delta0, sys.delta)
    for e in g.terms:
        if not contains(total, e, strict=True):
            raise Delta0Invalid(f"exponent {e} of g is not interior to Delta_0 + Delta")
    return total


def system_jacobian(sys: SparseSystem, restrict: bool = True) -> LaurentPolynomial:
    J = toric_jacobian(sys)
    return boundary_restrict(J, sys.delta) if restrict else J


def assemble_system(
    sys: SparseSystem,
    g: LaurentPolynomial,
    delta0: LatticePolytope,
    restrict_jacobian: bool = True,
    jacobian: Optional[LaurentPolynomial] = None,
) -> ResidueLinearSystem:
    g = _align(sys, g)
    zero, _ = _field(sys)
    total = step1_check(sys, g, delta0)
    rows = tuple(interior_lattice_points(total))
    index = {r: i for i, r in enumerate(rows)}
    summands = [delta0] + list(sys.newton)
    blocks = []
    for i in range(sys.n + 1):
        others = summands[:i] + summands[i + 1:]
        blocks.append(tuple(interior_lattice_points(minkowski_sum_all(others))))
    J = jacobian if jacobian is not None else system_jacobian(sys, restrict_jacobian)
    ncols = sum(len(b) for b in blocks) + 1
    cols: List[dict] = []
    for m in blocks[0]:
        cols.append({m: _one_like(zero)})
    for i, block in enumerate(blocks[1:]):
        f = sys.polys[i]
        for m in block:
            cols.append({tuple(a + b for a, b in zip(m, e)): c for e, c in f.terms.items()})
    cols.append(dict(J.terms))
    matrix = [[zero] * ncols for _ in rows]
    for j, col in enumerate(cols):
        for e, c in col.items():
            if e not in index:
                raise AssertionError(f"column {j} reaches {e}, outside the row basis")
            matrix[index[e]][j] = c
    rhs = [zero] * len(rows)
    for e, c in g.terms.items():
        rhs[index[e]] = c
    return ResidueLinearSystem(
        rows, tuple(blocks), tuple(tuple(r) for r in matrix), tuple(rhs), delta0, J
    )


def _one_like(zero):
    if isinstance(zero, RatFunc):
        return RatFunc.const(zero.params, 1)
    return Fraction(1)


def _lcm(a: MPoly, b: MPoly) -> MPoly:
    if a == 1:
        return b
    if b == 1:
        return a
    return (a * b).exquo(mpoly_gcd(a, b))


def _to_ring(lin: ResidueLinearSystem):
    """Clear denominators row by row: (matrix over Q[params], rhs, one)."""
    sample = lin.rhs[0] if lin.rhs else None
    if sample is None or not isinstance(sample, RatFunc):
        return [list(r) for r in lin.matrix], list(lin.rhs), Fraction(1)
    params = sample.params
    one = MPoly.const(params, 1)
    A, b = [], []
    for row, rv in zip(lin.matrix, lin.rhs):
        L = one
        for x in row + (rv,):
            if x.den != 1:
                L = _lcm(L, x.den)
        if L == 1:
            A.append([x.num for x in row])
            b.append(rv.num)
        else:
            A.append([x.num * L.exquo(x.den) for x in row])
            b.append(rv.num * L.exquo(rv.den))
    return A, b, one


def solve_for_c(lin: ResidueLinearSystem, certificate: bool = True):
    """Return ``(c, x)``: the unique c and one solution of the system.

    Raises NonGenericSystem when the system is inconsistent and
    DegenerateSystem when c is not determined by it.
    """
    A, b, one = _to_ring(lin)
    ech = bareiss_echelon(A, b, one)
    if not ech.consistent():
        raise NonGenericSystem("linear system is inconsistent for these coefficients")
    ccol = ech.ncols - 1
    if not ech.pivots or ech.pivots[-1] != ccol:
        raise DegenerateSystem("c is not determined: the Jacobian column lies in the span of the others")
    k = ech.rank - 1
    crow = ech.rows[k]
    symbolic = isinstance(one, MPoly)
    if symbolic:
        c = RatFunc(crow[-1], crow[ccol])
    else:
        c = crow[-1] / crow[ccol]
    if not certificate:
        return c, None
    D = ech.det if symbolic else Fraction(1)
    xs = back_substitute(ech, D)
    # A x = D b must hold exactly
    for row, rv in zip(A, b):
        acc = one - one
        for a, x in zip(row, xs):
            if a and x:
                acc = acc + a * x
        if acc != D * rv:
            raise AssertionError("certificate does not reproduce the right-hand side")
    if symbolic:
        sol = tuple(RatFunc(x, D) for x in xs)
    else:
        sol = tuple(xs)
    return c, sol


def _monomial_result(sys, exp, delta0, J, restrict, certificate):
    g = LaurentPolynomial.monomial(exp, 1)
    lin = assemble_system(sys, g, delta0, restrict, jacobian=J)
    c, x = solve_for_c(lin, certificate)
    return ResidueResult(c * sys.mv, c, sys.mv, delta0, x or (), lin, (), "whole-polytope", restrict)


def global_residue(
    sys: SparseSystem,
    g: LaurentPolynomial,
    delta0: Optional[LatticePolytope] = None,
    mode: str = "per-monomial",
    restrict_jacobian: bool = True,
    certificate: bool = True,
) -> ResidueResult:
    """Global residue of ``g`` as an exact field element.

    ``mode='per-monomial'`` solves one small system per monomial of g (each
    with its own Delta_0 unless one is given) and sums by linearity;
    ``mode='whole-polytope'`` solves a single system for all of g.
    """
    from .delta0 import choose_delta0

    g = _align(sys, g)
    zero, _ = _field(sys)
    J = system_jacobian(sys, restrict_jacobian)
    if mode not in ("per-monomial", "whole-polytope"):
        raise ValueError(f"unknown mode {mode!r}")
    if not g.terms:
        return ResidueResult(zero, zero, sys.mv, delta0, (), None, (), mode, restrict_jacobian)
    if mode == "whole-polytope":
        if delta0 is None:
            delta0 = choose_delta0(sys, newton_polytope(g).vertices)
        lin = assemble_system(sys, g, delta0, restrict_jacobian, jacobian=J)
        c, x = solve_for_c(lin, certificate)
        return ResidueResult(c * sys.mv, c, sys.mv, delta0, x or (), lin, (), mode, restrict_jacobian)
    parts = []
    c_total = zero
    for exp, coeff in g.sorted_terms():
        d0 = delta0 if delta0 is not None else choose_delta0(sys, [exp])
        part = _monomial_result(sys, exp, d0, J, restrict_jacobian, certificate)
        parts.append((exp, coeff, part))
        c_total = c_total + coeff * part.c
    shared = {p.delta0 for _, _, p in parts}
    d0 = shared.pop() if len(shared) == 1 else None
    single = parts[0][2] if len(parts) == 1 else None
    return ResidueResult(
        c_total * sys.mv,
        c_total,
        sys.mv,
        d0,
        single.certificate if single and parts[0][1] == 1 else (),
        single.linear_system if single else None,
        tuple(parts),
        mode,
        restrict_jacobian,
    )

"""Numeric cross-checks: root sums, Euler-Jacobi vanishing, sparse interpolation.

Everything here is floating point (numpy) and exists only to verify the
exact engine.  Roots can always be supplied by the caller; the built-in
solvers cover n = 1 (companion matrix) and n = 2 (Sylvester resultant plus
back-substitution), both best-effort.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

from .errors import (
    DimensionError,
    GenericityFailure,
    IncompleteRootSet,
    MultipleRootSuspected,
    NonGenericInput,
    SupportError,
)
from .exact import MPoly
from .geometry import contains, interior_lattice_points, minkowski_sum, normalized_volume
from .laurent import LaurentPolynomial, SparseSystem, toric_jacobian
from .linalg import determinant

ROOT_RESIDUAL = 1e-10
RESIDUE_RTOL = 1e-8
INTERP_TOL = 1e-8
JAC_TOL = 1e-12

Number = Union[complex, Fraction]


def _fingerprint(sys: SparseSystem) -> str:
    text = repr([sorted((e, str(c)) for e, c in f.terms.items()) for f in sys.polys])
    return hashlib.sha256(text.encode()).hexdigest()[:16]


@dataclass(frozen=True)
class RootSet:
    roots: Tuple[Tuple[Number, ...], ...]
    source: str = "user-supplied"
    fingerprint: str = ""

    def __len__(self) -> int:
        return len(self.roots)

    def to_json(self) -> dict:
        return {
            "roots": [[[complex(x).real, complex(x).imag] for x in r] for r in self.roots],
            "source": self.source,
        }

    @classmethod
    def from_json(cls, obj: Mapping) -> "RootSet":
        roots = []
        for r in obj["roots"]:
            pt = []
            for x in r:
                if isinstance(x, (list, tuple)):
                    pt.append(complex(float(x[0]), float(x[1])))
                else:
                    pt.append(complex(float(x)))
            roots.append(tuple(pt))
        return cls(tuple(roots), obj.get("source", "user-supplied"))


def _numeric(f: LaurentPolynomial) -> LaurentPolynomial:
    if f.kind == "ratfunc":
        raise NonGenericInput("oracle needs numeric coefficients; substitute parameters first")
    return f


def _eval(f: LaurentPolynomial, pt) -> complex:
    total = 0j
    for e, c in f.sorted_terms():
        term = complex(c)
        for x, k in zip(pt, e):
            if k:
                term *= complex(x) ** k
        total += term
    return total


def _eval_scale(f: LaurentPolynomial, pt) -> float:
    total = 0.0
    for e, c in f.terms.items():
        term = abs(complex(c))
        for x, k in zip(pt, e):
            if k:
                term *= abs(complex(x)) ** k
        total += term
    return total


def _csum(values: Sequence[complex]) -> complex:
    return complex(math.fsum(v.real for v in values), math.fsum(v.imag for v in values))


def residual(sys: SparseSystem, pt) -> float:
    """max_i |f_i(pt)| relative to the size of f_i's terms at pt."""
    worst = 0.0
    for f in sys.polys:
        scale = _eval_scale(f, pt) or 1.0
        worst = max(worst, abs(_eval(f, pt)) / scale)
    return worst


def _check_roots(sys: SparseSystem, roots: RootSet, tol: float = ROOT_RESIDUAL):
    if len(roots) != sys.mv:
        raise IncompleteRootSet(f"{len(roots)} roots given, mixed volume is {sys.mv}")
    for r in roots.roots:
        if len(r) != sys.n:
            raise IncompleteRootSet(f"root {r} has wrong dimension")
        if any(x == 0 for x in r):
            raise IncompleteRootSet(f"root {r} is not in the torus")
        res = residual(sys, r)
        if res > tol:
            raise IncompleteRootSet(f"root {r} has residual {res:.3g}")


def _jacobian_values(sys: SparseSystem, roots: RootSet, J: Optional[LaurentPolynomial] = None):
    J = J if J is not None else toric_jacobian(sys)
    vals = []
    for r in roots.roots:
        v = _eval(J, r)
        if abs(v) <= JAC_TOL * (_eval_scale(J, r) or 1.0):
            raise MultipleRootSuspected(f"toric Jacobian vanishes at {r}")
        vals.append(v)
    return J, vals


def residue_root_sum(
    sys: SparseSystem, g: LaurentPolynomial, roots: RootSet, tol: float = ROOT_RESIDUAL
) -> complex:
    """Sum of g(a) / J(a) over the roots."""
    for f in sys.polys:
        _numeric(f)
    _check_roots(sys, roots, tol)
    _, jv = _jacobian_values(sys, roots)
    return _csum([_eval(g, r) / j for r, j in zip(roots.roots, jv)])


# ---------------------------------------------------------------------------
# solvers
# ---------------------------------------------------------------------------


def _newton_1d(coeffs: np.ndarray, z: complex, steps: int = 4) -> complex:
    d = np.polyder(coeffs)
    for _ in range(steps):
        fz = np.polyval(coeffs, z)
        dz = np.polyval(d, z)
        if dz == 0:
            break
        z = z - fz / dz
    return z


def solve_univariate(f: LaurentPolynomial) -> RootSet:
    """Nonzero roots of a univariate Laurent polynomial."""
    _numeric(f)
    if f.nvars != 1:
        raise ValueError("solve_univariate expects one variable")
    if not f.terms:
        raise NonGenericInput("zero polynomial")
    exps = [e[0] for e in f.terms]
    lo, hi = min(exps), max(exps)
    coeffs = np.zeros(hi - lo + 1, dtype=complex)
    for e, c in f.terms.items():
        coeffs[hi - e[0]] = complex(c)
    roots = np.roots(coeffs) if hi > lo else np.array([], dtype=complex)
    out = tuple((complex(_newton_1d(coeffs, z)),) for z in roots)
    return RootSet(out, "univariate-solver")


def _poly_form(f: LaurentPolynomial) -> Dict[Tuple[int, int], Fraction]:
    lo = [min(e[k] for e in f.terms) for k in range(2)]
    return {(e[0] - lo[0], e[1] - lo[1]): Fraction(c) for e, c in f.terms.items()}


def _y_coeffs(p: Dict[Tuple[int, int], Fraction]) -> List[MPoly]:
    """Coefficients of p in y (ascending), each an exact polynomial in x."""
    dy = max(e[1] for e in p)
    out = [dict() for _ in range(dy + 1)]
    for (i, j), c in p.items():
        out[j][(i,)] = c
    return [MPoly(("x",), d) for d in out]


def sylvester_resultant_y(p1, p2) -> MPoly:
    """Res_y(p1, p2) in Q[x], exactly."""
    a = _y_coeffs(p1)
    b = _y_coeffs(p2)
    m, n = len(a) - 1, len(b) - 1
    size = m + n
    zero = MPoly.zero(("x",))
    rows = []
    for i in range(n):
        row = [zero] * size
        for k, c in enumerate(reversed(a)):
            row[i + k] = c
        rows.append(row)
    for i in range(m):
        row = [zero] * size
        for k, c in enumerate(reversed(b)):
            row[i + k] = c
        rows.append(row)
    return determinant(rows, MPoly.const(("x",), 1))


def _newton_2d(sys: SparseSystem, pt, steps: int = 12):
    """Polished point, or None when the iteration does not settle (drift to the boundary)."""
    f1, f2 = sys.polys
    d = [[f.euler_derivative(j) for j in range(2)] for f in sys.polys]
    x = np.array(pt, dtype=complex)
    with np.errstate(all="ignore"):
        for _ in range(steps):
            F = np.array([_eval(f1, x), _eval(f2, x)])
            # t_j d/dt_j f = x_j * df/dx_j
            M = np.array([[_eval(d[i][j], x) / x[j] for j in range(2)] for i in range(2)])
            try:
                step = np.linalg.solve(M, F)
            except np.linalg.LinAlgError:
                return None
            x = x - step
            if not np.all(np.isfinite(x)):
                return None
            if np.max(np.abs(step)) <= 1e-14 * max(1.0, np.max(np.abs(x))):
                break
        else:
            if np.max(np.abs(step)) > 1e-9 * max(1.0, np.max(np.abs(x))):
                return None
    if not all(1e-8 < abs(v) < 1e8 for v in x):
        return None
    return tuple(complex(v) for v in x)


def _y_roots(p: Dict[Tuple[int, int], Fraction], x0: complex):
    dy = max(e[1] for e in p)
    if dy == 0:
        return []
    cy = np.zeros(dy + 1, dtype=complex)
    for (i, j), c in p.items():
        cy[dy - j] += float(c) * x0**i
    return list(np.roots(cy))


@dataclass(frozen=True)
class _PlaneSystem:
    """Stand-in for a 2 x 2 system whose Newton polygons may be segments."""

    polys: Tuple[LaurentPolynomial, LaurentPolynomial]
    mv: int
    n: int = 2


def _area2(P) -> int:
    return 0 if P.degenerate else normalized_volume(P)


def _plane_system(f1: LaurentPolynomial, f2: LaurentPolynomial):
    try:
        return SparseSystem([f1, f2])
    except DimensionError:
        # Bernstein count in the plane: 2! V(P, Q) = Vol2(P + Q) - Vol2(P) - Vol2(Q)
        P, Q = f1.newton_polytope(), f2.newton_polytope()
        mv = (_area2(minkowski_sum(P, Q)) - _area2(P) - _area2(Q)) // 2
        return _PlaneSystem((f1, f2), mv)


def solve_bivariate(f1: LaurentPolynomial, f2: LaurentPolynomial, tol: float = ROOT_RESIDUAL) -> RootSet:
    """Torus roots of a generic 2 x 2 system (Sylvester elimination of y)."""
    sys = _plane_system(_numeric(f1), _numeric(f2))
    p1, p2 = _poly_form(f1), _poly_form(f2)
    res = sylvester_resultant_y(p1, p2)
    if res.is_zero():
        raise NonGenericInput("resultant vanishes identically")
    lo = min(e[0] for e in res.terms)
    hi = max(e[0] for e in res.terms)
    coeffs = np.zeros(hi - lo + 1, dtype=complex)
    for (k,), c in res.terms.items():
        coeffs[hi - k] = float(c)
    xs = np.roots(coeffs) if hi > lo else np.array([], dtype=complex)
    found: List[Tuple[complex, complex]] = []
    for x0 in xs:
        if abs(x0) < 1e-12:
            continue
        ys = [y0 for p in (p1, p2) for y0 in _y_roots(p, x0)]
        # several roots may share this x (e.g. y -> -y symmetry): polish every candidate
        for y0 in ys:
            if abs(y0) < 1e-12:
                continue
            pt = _newton_2d(sys, (x0, y0))
            if pt is None or residual(sys, pt) > tol:
                continue
            if any(max(abs(pt[0] - q[0]), abs(pt[1] - q[1])) <= 1e-8 * max(1.0, abs(q[0]), abs(q[1])) for q in found):
                continue
            found.append(pt)
    found.sort(key=lambda p: (p[0].real, p[0].imag, p[1].real, p[1].imag))
    rs = RootSet(tuple(found), "bivariate-solver", _fingerprint(sys))
    if len(rs) != sys.mv:
        raise IncompleteRootSet(f"found {len(rs)} torus roots, mixed volume is {sys.mv}")
    return rs


def solve_system(sys: SparseSystem) -> RootSet:
    if sys.n == 1:
        return solve_univariate(sys.polys[0])
    if sys.n == 2:
        return solve_bivariate(*sys.polys)
    raise NotImplementedError("built-in solver covers n <= 2; supply roots explicitly")


# ---------------------------------------------------------------------------
# Euler-Jacobi and interpolation
# ---------------------------------------------------------------------------


def euler_jacobi_check(sys: SparseSystem, roots: RootSet, h: LaurentPolynomial) -> float:
    """|sum h(a)/J(a)| for h supported strictly inside Delta (expected ~ 0)."""
    for e in h.terms:
        if not contains(sys.delta, e, strict=True):
            raise SupportError(f"exponent {e} is not interior to Delta")
    if not h.terms:
        return 0.0
    return abs(residue_root_sum(sys, h, roots))


@dataclass(frozen=True)
class InterpolationResult:
    g: LaurentPolynomial
    h: LaurentPolynomial
    c: Number
    mv: int
    residual: float


def _exact_min_norm(M: List[List[Fraction]], r: List[Fraction]) -> List[Fraction]:
    """Least-norm exact solution of M h = r via (M M^T) y = r, h = M^T y."""
    from .linalg import back_substitute, bareiss_echelon

    m = len(M)
    k = len(M[0]) if m else 0
    G = [[sum(M[i][t] * M[j][t] for t in range(k)) for j in range(m)] for i in range(m)]
    ech = bareiss_echelon(G, r, Fraction(1))
    if not ech.consistent():
        raise GenericityFailure("interpolation system is inconsistent")
    y = back_substitute(ech, Fraction(1))
    return [sum(M[i][t] * y[i] for i in range(m)) for t in range(k)]


def sparse_interpolate(
    sys: SparseSystem,
    roots: RootSet,
    phi: Union[Sequence[Number], Callable, Mapping],
    tol: float = INTERP_TOL,
) -> InterpolationResult:
    """g = h + (c / MV) J with Delta(h) inside Delta and g(a) = phi(a) on the roots.

    Exact when the roots, phi and the coefficients are all rational;
    otherwise least squares (minimum-norm h) with a residual check.
    """
    for f in sys.polys:
        _numeric(f)
    if len(roots) != sys.mv:
        raise IncompleteRootSet(f"{len(roots)} roots given, mixed volume is {sys.mv}")
    if callable(phi):
        values = [phi(r) for r in roots.roots]
    elif isinstance(phi, Mapping):
        values = [phi[r] for r in roots.roots]
    else:
        values = list(phi)
    if len(values) != len(roots):
        raise ValueError("phi must give one value per root")
    J = toric_jacobian(sys)
    basis = interior_lattice_points(sys.delta)
    exact = all(isinstance(x, (int, Fraction)) for r in roots.roots for x in r) and all(
        isinstance(v, (int, Fraction)) for v in values
    )
    mv = sys.mv
    if exact:
        from .laurent import evaluate

        jv = [evaluate(J, r) for r in roots.roots]
        if any(v == 0 for v in jv):
            raise MultipleRootSuspected("toric Jacobian vanishes at a root")
        for r in roots.roots:
            if any(evaluate(f, r) != 0 for f in sys.polys):
                raise IncompleteRootSet(f"{r} is not an exact root")
        c = sum((Fraction(v) / j for v, j in zip(values, jv)), Fraction(0))
        rhs = [Fraction(v) - c / mv * j for v, j in zip(values, jv)]
        M = [[_monomial_exact(r, z) for z in basis] for r in roots.roots]
        coef = _exact_min_norm(M, rhs) if basis else []
        res = [sum((M[i][t] * coef[t] for t in range(len(basis))), Fraction(0)) - rhs[i] for i in range(len(rhs))]
        if any(res):
            raise GenericityFailure("exact interpolation left a residual")
        h = LaurentPolynomial(sys.n, dict(zip(basis, coef)))
        g = h + J.scale(c / mv)
        return InterpolationResult(g, h, c, mv, 0.0)
    _check_roots(sys, roots)
    _, jv = _jacobian_values(sys, roots, J)
    vals = [complex(v) for v in values]
    c = _csum([v / j for v, j in zip(vals, jv)])
    rhs = np.array([v - c / mv * j for v, j in zip(vals, jv)])
    if basis:
        M = np.array([[np.prod([complex(x) ** k for x, k in zip(r, z)]) for z in basis] for r in roots.roots])
        coef, *_ = np.linalg.lstsq(M, rhs, rcond=None)
        fit = M @ coef
    else:
        coef = np.zeros(0, dtype=complex)
        fit = np.zeros(len(rhs), dtype=complex)
    scale = max(1.0, float(np.max(np.abs(vals))) if vals else 1.0)
    err = float(np.max(np.abs(fit - rhs))) if len(rhs) else 0.0
    if err > tol * scale:
        raise GenericityFailure(f"interpolation residual {err:.3g} exceeds tolerance")
    h = LaurentPolynomial(sys.n, {z: complex(v) for z, v in zip(basis, coef) if abs(v) > 0})
    g = h + J.as_complex().scale(c / mv)
    return InterpolationResult(g, h, c, mv, err)


def _monomial_exact(r, z) -> Fraction:
    out = Fraction(1)
    for x, k in zip(r, z):
        out *= Fraction(x) ** k
    return out

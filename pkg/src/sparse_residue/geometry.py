"""Lattice polytopes in Z^n with exact integer arithmetic.

Hulls are built by an incremental beneath-beyond pass over simplicial
boundary facets (points coplanar with a facet count as seeing it), then the
simplices are grouped into facets with primitive integer normals.  The
simplicial boundary is kept because volumes and facet volumes are read off
it directly.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from math import factorial, gcd
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .errors import DimensionError, EmptyHull

Point = Tuple[int, ...]


def det(rows: Sequence[Sequence[int]]) -> int:
    """Integer determinant by fraction-free elimination."""
    m = [list(r) for r in rows]
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pk = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (pk * m[i][j] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = pk
    return sign * m[n - 1][n - 1]


def rank(vectors: Sequence[Sequence]) -> int:
    rows = [[Fraction(x) for x in v] for v in vectors]
    if not rows:
        return 0
    ncols = len(rows[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        for i in range(r + 1, len(rows)):
            f = rows[i][c] / rows[r][c]
            if f:
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        r += 1
        if r == len(rows):
            break
    return r


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _normal(pts: Sequence[Point]) -> Tuple[int, ...]:
    """Integer normal of the hyperplane through n points in Z^n (cofactor vector)."""
    base = pts[0]
    diffs = [_sub(p, base) for p in pts[1:]]
    n = len(base)
    out = []
    for j in range(n):
        minor = [[d[k] for k in range(n) if k != j] for d in diffs]
        out.append((-1) ** j * det(minor))
    return tuple(out)


def _primitive(v: Sequence[int]) -> Tuple[Tuple[int, ...], int]:
    g = reduce(gcd, (abs(x) for x in v), 0)
    if g == 0:
        return tuple(v), 0
    return tuple(x // g for x in v), g


@dataclass(frozen=True)
class Facet:
    """Facet inequality ``<normal, x> <= offset`` with primitive ``normal``."""

    normal: Tuple[int, ...]
    offset: int

    def value(self, z) -> int:
        return self.offset - _dot(self.normal, z)

    def to_json(self) -> dict:
        return {"normal": list(self.normal), "offset": self.offset}


@dataclass(frozen=True)
class LatticePolytope:
    """Convex hull of lattice points.

    ``facets`` is ``None`` for lower-dimensional (degenerate) polytopes.
    ``simplices`` triangulates the boundary; each entry is (facet index,
    n points spanning an (n-1)-simplex of that facet).
    """

    dim_ambient: int
    vertices: Tuple[Point, ...]
    facets: Optional[Tuple[Facet, ...]]
    simplices: Tuple[Tuple[int, Tuple[Point, ...]], ...] = field(default=(), repr=False, compare=False)
    affine_dim: int = 0

    @property
    def is_full_dimensional(self) -> bool:
        return self.facets is not None

    @property
    def degenerate(self) -> bool:
        return self.facets is None

    def _require_full(self, what: str):
        if self.facets is None:
            raise DimensionError(f"{what} needs a full-dimensional polytope (affine dim {self.affine_dim} < {self.dim_ambient})")

    def to_json(self, with_facets: bool = False) -> dict:
        out = {"dim": self.dim_ambient, "vertices": [list(v) for v in self.vertices]}
        if with_facets and self.facets is not None:
            out["facets"] = [f.to_json() for f in self.facets]
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "LatticePolytope":
        verts = [tuple(int(x) for x in v) for v in obj["vertices"]]
        dim = int(obj.get("dim", len(verts[0]) if verts else 0))
        if any(len(v) != dim for v in verts):
            raise DimensionError("vertex length does not match 'dim'")
        return convex_hull(verts)

    def bounding_box(self):
        lo = tuple(min(v[i] for v in self.vertices) for i in range(self.dim_ambient))
        hi = tuple(max(v[i] for v in self.vertices) for i in range(self.dim_ambient))
        return lo, hi

    def __contains__(self, z) -> bool:
        return contains(self, z, strict=False)


# ---------------------------------------------------------------------------
# Hull construction
# ---------------------------------------------------------------------------


def _initial_simplex(pts: List[Point]) -> List[int]:
    chosen = [0]
    diffs: List[Point] = []
    n = len(pts[0])
    for i in range(1, len(pts)):
        d = _sub(pts[i], pts[0])
        if rank(diffs + [d]) > len(diffs):
            diffs.append(d)
            chosen.append(i)
            if len(diffs) == n:
                break
    return chosen


def _hull_full(pts: List[Point]):
    """Beneath-beyond hull; returns (facets, simplices) for full-dim input."""
    n = len(pts[0])
    init = _initial_simplex(pts)
    # 0 < inner interior in scaled coordinates: (n+1) * centroid
    inner = tuple(sum(pts[i][k] for i in init) for k in range(n))
    scale = n + 1

    facets: Dict[int, Tuple[Tuple[int, ...], Tuple[int, ...], int]] = {}
    ridges: Dict[frozenset, set] = {}
    counter = itertools.count()

    def add_facet(idx: Tuple[int, ...]):
        normal = _normal([pts[i] for i in idx])
        normal, _ = _primitive(normal)
        offset = _dot(normal, pts[idx[0]])
        if _dot(normal, inner) > scale * offset:
            normal = tuple(-x for x in normal)
            offset = -offset
        fid = next(counter)
        facets[fid] = (idx, normal, offset)
        for r in itertools.combinations(idx, n - 1):
            ridges.setdefault(frozenset(r), set()).add(fid)

    def drop_facet(fid):
        idx, _, _ = facets.pop(fid)
        for r in itertools.combinations(idx, n - 1):
            s = ridges[frozenset(r)]
            s.discard(fid)
            if not s:
                del ridges[frozenset(r)]

    for face in itertools.combinations(init, n):
        add_facet(face)

    used = set(init)
    for pi, p in enumerate(pts):
        if pi in used:
            continue
        visible = []
        strict = False
        for fid, (idx, normal, offset) in facets.items():
            v = _dot(normal, p) - offset
            if v >= 0:
                visible.append(fid)
                if v > 0:
                    strict = True
        if not strict:
            continue
        vis = set(visible)
        horizon = []
        for fid in visible:
            idx = facets[fid][0]
            for r in itertools.combinations(idx, n - 1):
                others = ridges[frozenset(r)] - {fid}
                if not others or not (others <= vis):
                    horizon.append(r)
        for fid in visible:
            drop_facet(fid)
        for r in horizon:
            add_facet(tuple(r) + (pi,))
    return facets, pts


def _group(facets, pts):
    groups: Dict[Tuple[Tuple[int, ...], int], List[Tuple[Point, ...]]] = {}
    for idx, normal, offset in facets.values():
        groups.setdefault((normal, offset), []).append(tuple(pts[i] for i in idx))
    keys = sorted(groups)
    flist = tuple(Facet(k[0], k[1]) for k in keys)
    simplices = tuple((i, s) for i, k in enumerate(keys) for s in groups[k])
    return flist, simplices


def _extreme(pts: Sequence[Point], flist: Sequence[Facet]) -> Tuple[Point, ...]:
    n = len(pts[0])
    out = []
    for p in set(pts):
        tight = [f.normal for f in flist if f.value(p) == 0]
        if len(tight) >= n and rank(tight) == n:
            out.append(p)
    return tuple(sorted(out))


def _affine_projection(pts: List[Point], diffs_rank: int) -> Tuple[int, ...]:
    """Coordinates on which projection is injective on the affine hull."""
    diffs = [_sub(p, pts[0]) for p in pts[1:]]
    for coords in itertools.combinations(range(len(pts[0])), diffs_rank):
        if rank([[d[c] for c in coords] for d in diffs]) == diffs_rank:
            return coords
    raise AssertionError("no injective coordinate projection")


def convex_hull(points: Iterable[Sequence[int]]) -> LatticePolytope:
    """Convex hull of lattice points, with facets when full-dimensional."""
    pts = sorted({tuple(int(x) for x in p) for p in points})
    if not pts:
        raise EmptyHull("convex hull of no points")
    n = len(pts[0])
    if any(len(p) != n for p in pts):
        raise DimensionError("points of mixed dimension")
    affine = rank([_sub(p, pts[0]) for p in pts[1:]]) if len(pts) > 1 else 0
    if affine < n:
        if affine == 0:
            verts = (pts[0],)
        else:
            coords = _affine_projection(pts, affine)
            proj = [tuple(p[c] for c in coords) for p in pts]
            sub = convex_hull(proj)
            keep = set(sub.vertices)
            verts = tuple(p for p, q in zip(pts, proj) if q in keep)
        return LatticePolytope(n, verts, None, (), affine)
    if n == 1:
        lo, hi = pts[0], pts[-1]
        flist = (Facet((-1,), -lo[0]), Facet((1,), hi[0]))
        return LatticePolytope(1, (lo, hi), flist, ((0, (lo,)), (1, (hi,))), 1)
    facets, pts = _hull_full(pts)
    flist, simplices = _group(facets, pts)
    verts = _extreme([p for _, s in simplices for p in s], flist)
    return LatticePolytope(n, verts, flist, simplices, n)


# ---------------------------------------------------------------------------
# Operations
# ---------------------------------------------------------------------------


def minkowski_sum(P: LatticePolytope, Q: LatticePolytope) -> LatticePolytope:
    if P.dim_ambient != Q.dim_ambient:
        raise DimensionError(f"ambient dimensions differ: {P.dim_ambient} vs {Q.dim_ambient}")
    return convex_hull(tuple(a + b for a, b in zip(p, q)) for p in P.vertices for q in Q.vertices)


def minkowski_sum_all(polys: Sequence[LatticePolytope]) -> LatticePolytope:
    if not polys:
        raise EmptyHull("Minkowski sum of no polytopes")
    return reduce(minkowski_sum, polys)


def contains(P: LatticePolytope, z: Sequence, strict: bool = False) -> bool:
    P._require_full("contains")
    if len(z) != P.dim_ambient:
        raise DimensionError("point dimension does not match polytope")
    if strict:
        return all(f.value(z) > 0 for f in P.facets)
    return all(f.value(z) >= 0 for f in P.facets)


def interior_lattice_points(P: LatticePolytope) -> List[Point]:
    """Lattice points strictly inside ``P``, in lexicographic order."""
    P._require_full("interior_lattice_points")
    lo, hi = P.bounding_box()
    ranges = [range(a + 1, b) for a, b in zip(lo, hi)]
    return [z for z in itertools.product(*ranges) if all(f.value(z) > 0 for f in P.facets)]


def lattice_points(P: LatticePolytope) -> List[Point]:
    P._require_full("lattice_points")
    lo, hi = P.bounding_box()
    ranges = [range(a, b + 1) for a, b in zip(lo, hi)]
    return [z for z in itertools.product(*ranges) if all(f.value(z) >= 0 for f in P.facets)]


def normalized_volume(P: LatticePolytope) -> int:
    """n! times the Euclidean volume (an integer for lattice polytopes)."""
    P._require_full("normalized_volume")
    if P.dim_ambient == 1:
        return P.vertices[-1][0] - P.vertices[0][0]
    v0 = P.vertices[0]
    total = 0
    for fi, simplex in P.simplices:
        if P.facets[fi].value(v0) == 0:
            continue
        total += abs(det([_sub(q, v0) for q in simplex]))
    return total


def facet_volumes(P: LatticePolytope) -> List[int]:
    """(n-1)! times the lattice volume of each facet, in facet order."""
    P._require_full("facet_volumes")
    n = P.dim_ambient
    vols = [0] * len(P.facets)
    if n == 1:
        return [1] * len(P.facets)
    for fi, simplex in P.simplices:
        normal = P.facets[fi].normal
        cof = _normal(simplex)
        j = next(k for k, a in enumerate(normal) if a)
        vols[fi] += abs(cof[j] // normal[j])
    return vols


def mixed_volume(polytopes: Sequence[LatticePolytope]) -> int:
    """Normalized mixed volume n! V(P_1, ..., P_n) by inclusion-exclusion.

    With Vol the Euclidean volume, n! V = sum over nonempty S of
    (-1)^(n-|S|) Vol(sum_{i in S} P_i); in normalized volumes this is that
    alternating sum divided by n!.
    """
    n = len(polytopes)
    if n == 0:
        raise DimensionError("mixed volume of no polytopes")
    for P in polytopes:
        if P.dim_ambient != n:
            raise DimensionError(f"need {P.dim_ambient} polytopes in dimension {P.dim_ambient}, got {n}")
        P._require_full("mixed_volume")
    sums: Dict[Tuple[int, ...], LatticePolytope] = {}
    total = 0
    for size in range(1, n + 1):
        for S in itertools.combinations(range(n), size):
            if size == 1:
                Q = polytopes[S[0]]
            else:
                Q = minkowski_sum(sums[S[:-1]], polytopes[S[-1]])
            sums[S] = Q
            total += (-1) ** (n - size) * normalized_volume(Q)
    mv, rem = divmod(total, factorial(n))
    assert rem == 0, "inclusion-exclusion did not give an integer"
    return mv


def translate(P: LatticePolytope, v: Sequence[int]) -> LatticePolytope:
    return convex_hull(tuple(a + b for a, b in zip(p, v)) for p in P.vertices)


def dilate(P: LatticePolytope, k: int) -> LatticePolytope:
    if int(k) != k or k < 1:
        raise ValueError("dilation factor must be a positive integer")
    return convex_hull(tuple(k * a for a in p) for p in P.vertices)


def transform(P: LatticePolytope, action: str, arg) -> LatticePolytope:
    """``action`` is ``'translate'`` (arg = vector) or ``'dilate'`` (arg = k)."""
    if action == "translate":
        return translate(P, arg)
    if action == "dilate":
        return dilate(P, arg)
    raise ValueError(f"unknown action {action!r}")


def simplex(n: int) -> LatticePolytope:
    """Unit simplex conv{0, e_1, ..., e_n}."""
    pts = [(0,) * n] + [tuple(int(i == j) for j in range(n)) for i in range(n)]
    return convex_hull(pts)


def cube(n: int) -> LatticePolytope:
    return convex_hull(itertools.product((0, 1), repeat=n))


def gamma_simplex(n: int, m: int) -> LatticePolytope:
    """conv{0, e_1, ..., e_{n-1}, m e_n}."""
    pts = [(0,) * n] + [tuple(int(i == j) for j in range(n)) for i in range(n - 1)]
    pts.append(tuple(0 if j < n - 1 else m for j in range(n)))
    return convex_hull(pts)

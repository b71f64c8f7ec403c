"""Choosing the auxiliary polytope Delta_0.

The target point ``u`` must end up strictly inside Delta_0 + Delta with 0
strictly inside Delta_0.  We look for a short segment [0, m] with
``u in Delta + [0, m]`` of least added volume; the added volume of a segment
[0, v] is half the support function of the facet zonotope of Delta,

    h_Z(v) = sum over facets G of |<n_G, v>|,

where n_G is the outer normal scaled to the (n-1)-volume of G.  Minimising
h_Z over Delta - u is a linear program.  The rounded optimiser becomes a
vertex of a narrow polytope around 0, and every candidate is validated; a
failed candidate is repaired by a neighbourhood search and then by dilation.
"""

from __future__ import annotations

import itertools
import logging
import os
from dataclasses import dataclass
from fractions import Fraction
from math import factorial, floor
from typing import List, Optional, Sequence, Tuple

from .errors import Delta0SearchFailed, DimensionError, ZeroDirection
from .geometry import (
    LatticePolytope,
    contains,
    convex_hull,
    dilate,
    facet_volumes,
    interior_lattice_points,
    minkowski_sum,
    translate,
)
from .lp import linprog_exact

log = logging.getLogger(__name__)

RETRY_ENV = "SPARSE_RESIDUE_DELTA0_RETRIES"
DEFAULT_RETRIES = 8


@dataclass(frozen=True)
class ZonotopeSupport:
    """Generators of the facet zonotope: one (primitive normal, facet volume) per facet.

    ``volume`` is the Euclidean-normalised lattice volume of the facet
    (the (n-1)-volume measured in the facet's own lattice), so
    ``volume * normal`` is the volume-scaled outer normal.
    """

    generators: Tuple[Tuple[Tuple[int, ...], Fraction], ...]

    def __call__(self, v: Sequence) -> Fraction:
        return sum(
            (vol * abs(sum(Fraction(a) * Fraction(x) for a, x in zip(normal, v))) for normal, vol in self.generators),
            Fraction(0),
        )


def zonotope(delta: LatticePolytope) -> ZonotopeSupport:
    delta._require_full("zonotope_support")
    k = factorial(delta.dim_ambient - 1)
    gens = tuple(
        (f.normal, Fraction(vol, k)) for f, vol in zip(delta.facets, facet_volumes(delta))
    )
    return ZonotopeSupport(gens)


def zonotope_support(delta: LatticePolytope, v: Sequence) -> Fraction:
    """h_Z(v); Vol(delta + [0, v]) = Vol(delta) + h_Z(v) / 2."""
    return zonotope(delta)(v)


def min_support(delta: LatticePolytope, u: Sequence[int]) -> Tuple[Tuple[Fraction, ...], Fraction]:
    """Minimise h_Z over delta - u by exact LP; returns (x*, h_Z(x*))."""
    delta._require_full("min_support")
    n = delta.dim_ambient
    if len(u) != n:
        raise DimensionError("target dimension does not match polytope")
    Z = zonotope(delta)
    F = len(Z.generators)
    # variables: x_1..x_n (free), s_1..s_F >= 0
    c = [0] * n + [1] * F
    A: List[List[Fraction]] = []
    b: List[Fraction] = []
    for k, (normal, vol) in enumerate(Z.generators):
        scaled = [vol * a for a in normal]
        for sign in (1, -1):
            row = [sign * a for a in scaled] + [0] * F
            row[n + k] = -1
            A.append(row)
            b.append(Fraction(0))
    for f in delta.facets:
        A.append(list(f.normal) + [0] * F)
        b.append(Fraction(f.offset - sum(a * x for a, x in zip(f.normal, u))))
    res = linprog_exact(c, A, b, free=range(n))
    x = res.x[:n]
    return tuple(x), Z(x)


def _round_away(q: Fraction) -> int:
    a = abs(q)
    r = floor(a + Fraction(1, 2))
    return r if q >= 0 else -r


def unit_cross_polytope(n: int) -> LatticePolytope:
    pts = []
    for i in range(n):
        for s in (1, -1):
            pts.append(tuple(s if j == i else 0 for j in range(n)))
    return convex_hull(pts)


def _narrow(ms: Sequence[Sequence[int]], n: int) -> LatticePolytope:
    ms = [tuple(m) for m in ms if any(m)]
    if ms and all(x > 0 for m in ms for x in m):
        base = [tuple(-1 if j == i else 0 for j in range(n)) for i in range(n)]
    else:
        base = [tuple(s if j == i else 0 for j in range(n)) for i in range(n) for s in (1, -1)]
    return convex_hull(base + ms)


def build_delta0(m: Sequence[int], n: Optional[int] = None) -> LatticePolytope:
    """Narrow polytope with 0 inside and ``m`` a vertex.

    All coordinates of ``m`` positive: conv{-e_1, ..., -e_n, m}.
    Otherwise: conv{+-e_1, ..., +-e_n, m}.
    """
    m = tuple(int(x) for x in m)
    n = len(m) if n is None else n
    if len(m) != n:
        raise DimensionError("direction has the wrong dimension")
    if not any(m):
        raise ZeroDirection("the zero vector is not a valid direction")
    return _narrow([m], n)


@dataclass(frozen=True)
class Delta0Report:
    delta0: LatticePolytope
    lp: Tuple[Tuple[Tuple[Fraction, ...], Fraction], ...]   # (x*, value) per target
    directions: Tuple[Tuple[int, ...], ...]
    stage: str          # initial | neighbourhood | dilation | fallback
    dilations: int

    def to_json(self) -> dict:
        from .grammar import format_rational

        return {
            "delta0": self.delta0.to_json(),
            "lp": [
                {"x": [format_rational(v) for v in x], "value": format_rational(val)}
                for x, val in self.lp
            ],
            "directions": [list(m) for m in self.directions],
            "stage": self.stage,
            "dilations": self.dilations,
        }


def validate_delta0(delta0: LatticePolytope, delta: LatticePolytope, targets: Sequence[Sequence[int]]) -> bool:
    """0 strictly inside delta0 and every target strictly inside delta0 + delta."""
    if delta0.dim_ambient != delta.dim_ambient or delta0.degenerate:
        return False
    n = delta.dim_ambient
    if not contains(delta0, (0,) * n, strict=True):
        return False
    total = minkowski_sum(delta0, delta)
    return all(contains(total, tuple(u), strict=True) for u in targets)


def _retry_budget(retries: Optional[int]) -> int:
    if retries is not None:
        return retries
    try:
        return int(os.environ.get(RETRY_ENV, DEFAULT_RETRIES))
    except ValueError:
        return DEFAULT_RETRIES


def choose_delta0_report(
    delta: LatticePolytope, targets: Sequence[Sequence[int]], retries: Optional[int] = None
) -> Delta0Report:
    delta._require_full("choose_delta0")
    n = delta.dim_ambient
    targets = [tuple(int(x) for x in u) for u in targets]
    if not targets:
        raise ValueError("choose_delta0 needs at least one target")
    budget = _retry_budget(retries)

    lps = []
    dirs = []
    for u in targets:
        x, val = min_support(delta, u)
        lps.append((x, val))
        dirs.append(tuple(_round_away(-q) for q in x))

    cand = _narrow(dirs, n)
    if validate_delta0(cand, delta, targets):
        return Delta0Report(cand, tuple(lps), tuple(dirs), "initial", 0)

    # repair each failing direction: try its lattice neighbours in order of
    # the volume they add to Delta (h_Z), keep the first that validates
    Z = zonotope(delta)
    offsets = [d for d in itertools.product((-1, 0, 1), repeat=n) if any(d)]
    for k, u in enumerate(targets):
        if validate_delta0(_narrow(dirs, n), delta, [u]):
            continue
        near = [tuple(a + b for a, b in zip(dirs[k], d)) for d in offsets]
        near = sorted((m for m in near if any(m)), key=lambda m: (Z(m), m))
        for m in near:
            trial = dirs[:k] + [m] + dirs[k + 1:]
            if validate_delta0(_narrow(trial, n), delta, [u]):
                dirs[k] = m
                break
    cand = _narrow(dirs, n)
    if validate_delta0(cand, delta, targets):
        return Delta0Report(cand, tuple(lps), tuple(dirs), "neighbourhood", 0)

    for attempt in range(1, budget + 1):
        cand = dilate(cand, 2)
        if validate_delta0(cand, delta, targets):
            return Delta0Report(cand, tuple(lps), tuple(dirs), "dilation", attempt)

    fb = _fallback(delta, targets)
    if fb is not None:
        return Delta0Report(fb, tuple(lps), tuple(dirs), "fallback", budget)
    raise Delta0SearchFailed(f"no valid Delta_0 found within {budget} retries")


def _fallback(delta: LatticePolytope, targets, kmax: int = 64) -> Optional[LatticePolytope]:
    for k in range(1, kmax + 1):
        big = dilate(delta, k)
        pts = interior_lattice_points(big)
        if not pts:
            continue
        # centre-most interior point keeps the translate balanced
        lo, hi = big.bounding_box()
        centre = [Fraction(a + b, 2) for a, b in zip(lo, hi)]
        w = min(pts, key=lambda z: (sum((Fraction(a) - c) ** 2 for a, c in zip(z, centre)), z))
        cand = translate(big, tuple(-a for a in w))
        if validate_delta0(cand, delta, targets):
            return cand
    return None


def choose_delta0(sys_or_delta, targets: Sequence[Sequence[int]], retries: Optional[int] = None) -> LatticePolytope:
    """A validated Delta_0 for the given target exponents."""
    delta = getattr(sys_or_delta, "delta", sys_or_delta)
    return choose_delta0_report(delta, targets, retries).delta0

import itertools
import random
from math import factorial

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy.spatial import ConvexHull

from sparse_residue.errors import DimensionError, EmptyHull
from sparse_residue.geometry import (
    contains,
    convex_hull,
    cube,
    dilate,
    facet_volumes,
    gamma_simplex,
    interior_lattice_points,
    lattice_points,
    minkowski_sum,
    minkowski_sum_all,
    mixed_volume,
    normalized_volume,
    simplex,
    translate,
)

D1 = [(1, 0), (0, 1), (2, 2)]
D2 = [(1, 0), (1, 2), (2, 2)]
D0 = [(-1, 0), (0, -1), (2, 1)]


def scipy_nvol(points):
    pts = np.array(points, dtype=float)
    n = pts.shape[1]
    if n == 1:
        return round(pts.max() - pts.min())
    return round(ConvexHull(pts).volume * factorial(n))


def point_sets(n, lo=-2, hi=3, min_size=None):
    return st.lists(st.tuples(*[st.integers(lo, hi)] * n), min_size=min_size or n + 1, max_size=7)


def full(pts):
    P = convex_hull(pts)
    return P if P.is_full_dimensional else None


class TestHull:
    def test_square_with_duplicates(self):
        P = convex_hull([(0, 0), (1, 0), (0, 1), (1, 1), (0, 0)])
        assert sorted(P.vertices) == [(0, 0), (0, 1), (1, 0), (1, 1)]
        assert len(P.facets) == 4

    def test_worked_triangle(self):
        P = convex_hull(D1)
        assert sorted(P.vertices) == sorted(D1)
        assert len(P.facets) == 3

    def test_collinear_degenerate(self):
        P = convex_hull([(0, 0), (2, 0), (1, 0)])
        assert P.degenerate and P.facets is None
        assert sorted(P.vertices) == [(0, 0), (2, 0)]

    def test_empty(self):
        with pytest.raises(EmptyHull):
            convex_hull([])

    def test_interior_and_edge_points_dropped(self):
        P = convex_hull([(0, 0), (4, 0), (0, 4), (1, 1), (2, 0), (2, 2)])
        assert sorted(P.vertices) == [(0, 0), (0, 4), (4, 0)]

    @given(st.integers(2, 3).flatmap(point_sets))
    def test_matches_scipy(self, pts):
        P = convex_hull(pts)
        if not P.is_full_dimensional:
            return
        H = ConvexHull(np.array(pts, dtype=float))
        assert sorted(P.vertices) == sorted({tuple(pts[i]) for i in H.vertices})
        assert normalized_volume(P) == scipy_nvol(pts)

    @given(st.integers(2, 3).flatmap(point_sets))
    def test_facet_invariants(self, pts):
        P = convex_hull(pts)
        if not P.is_full_dimensional:
            return
        n = P.dim_ambient
        for f in P.facets:
            assert np.gcd.reduce(np.abs(f.normal)) == 1
            tight = [v for v in P.vertices if f.value(v) == 0]
            assert all(f.value(v) >= 0 for v in P.vertices)
            assert np.linalg.matrix_rank(np.array([np.subtract(v, tight[0]) for v in tight])) == n - 1


class TestMinkowski:
    def test_worked_interior_points(self):
        delta = minkowski_sum(convex_hull(D1), convex_hull(D2))
        assert interior_lattice_points(delta) == [(2, 1), (2, 2), (2, 3), (3, 3)]

    def test_identity(self):
        P = convex_hull(D1)
        assert minkowski_sum(P, convex_hull([(0, 0)])).vertices == P.vertices

    def test_triangle_plus_square(self):
        S = minkowski_sum(simplex(2), cube(2))
        assert sorted(S.vertices) == sorted([(0, 0), (2, 0), (2, 1), (1, 2), (0, 2)])

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionError):
            minkowski_sum(simplex(2), simplex(3))

    @given(point_sets(2, min_size=1), point_sets(2, min_size=1), point_sets(2, min_size=1))
    def test_commutative_associative_bruteforce(self, a, b, c):
        P, Q, R = convex_hull(a), convex_hull(b), convex_hull(c)
        assert minkowski_sum(P, Q).vertices == minkowski_sum(Q, P).vertices
        assert minkowski_sum(minkowski_sum(P, Q), R).vertices == minkowski_sum(P, minkowski_sum(Q, R)).vertices
        brute = convex_hull([tuple(x + y for x, y in zip(p, q)) for p in a for q in b])
        S = minkowski_sum(P, Q)
        assert S.vertices == brute.vertices
        sums = {tuple(x + y for x, y in zip(p, q)) for p in P.vertices for q in Q.vertices}
        assert set(S.vertices) <= sums


class TestLatticePoints:
    def test_worked_tilde_delta_15(self):
        tilde = minkowski_sum_all([convex_hull(D0), convex_hull(D1), convex_hull(D2)])
        pts = interior_lattice_points(tilde)
        assert len(pts) == 15
        assert pts[-1] == (5, 4)

    def test_square_empty(self):
        assert interior_lattice_points(cube(2)) == []

    def test_gamma_2_3(self):
        S = minkowski_sum(gamma_simplex(2, 2), gamma_simplex(2, 3))
        assert interior_lattice_points(S) == [(1, 1), (1, 2)]

    def test_degenerate_rejected(self):
        with pytest.raises(DimensionError):
            interior_lattice_points(convex_hull([(0, 0), (1, 1)]))

    @given(st.integers(2, 3).flatmap(point_sets))
    def test_interior_against_scipy_equations(self, pts):
        P = convex_hull(pts)
        if not P.is_full_dimensional:
            return
        H = ConvexHull(np.array(pts, dtype=float))
        lo = np.min(pts, axis=0)
        hi = np.max(pts, axis=0)
        ref = [z for z in itertools.product(*[range(a, b + 1) for a, b in zip(lo, hi)])
               if np.all(H.equations[:, :-1] @ np.array(z) + H.equations[:, -1] < -1e-9)]
        assert interior_lattice_points(P) == sorted(ref)
        assert set(interior_lattice_points(P)) <= set(lattice_points(P))


class TestVolumes:
    def test_simplex(self):
        for n in (1, 2, 3, 4):
            assert normalized_volume(simplex(n)) == 1

    def test_worked_triangle(self):
        assert normalized_volume(convex_hull(D1)) == 3

    def test_square(self):
        assert normalized_volume(cube(2)) == 2

    def test_degenerate(self):
        with pytest.raises(DimensionError):
            normalized_volume(convex_hull([(0, 0, 0), (1, 0, 0), (0, 1, 0)]))

    def test_dilate(self):
        for n in (2, 3):
            assert normalized_volume(dilate(simplex(n), 3)) == 3**n
        assert normalized_volume(dilate(convex_hull(D1), 2)) == 12

    def test_translate_vertex_not_interior(self):
        P = translate(cube(2), (-1, -1))
        assert not contains(P, (0, 0), strict=True)

    def test_facet_volumes_square(self):
        assert facet_volumes(cube(2)) == [1, 1, 1, 1]

    def test_facet_volumes_match_lattice_lengths(self):
        P = convex_hull(D1)
        # edges (1,0)-(0,1), (0,1)-(2,2), (2,2)-(1,0): lattice lengths 1, 1, 1
        assert sorted(facet_volumes(P)) == [1, 1, 1]
        Q = convex_hull([(0, 0), (4, 0), (0, 2)])
        assert sorted(facet_volumes(Q)) == [2, 2, 4]


class TestMixedVolume:
    def test_worked(self):
        assert mixed_volume([convex_hull(D1), convex_hull(D2)]) == 4

    def test_unmixed(self):
        P = convex_hull(D1)
        assert mixed_volume([P, P]) == normalized_volume(P)
        T = convex_hull([(0, 0, 0), (2, 0, 0), (0, 1, 0), (1, 1, 2)])
        assert mixed_volume([T, T, T]) == normalized_volume(T)

    @pytest.mark.parametrize("ms", [(1, 1), (2, 3), (1, 4), (2, 2, 5), (1, 3, 3), (1, 1, 1, 2)])
    def test_gamma(self, ms):
        n = len(ms)
        assert mixed_volume([gamma_simplex(n, m) for m in ms]) == ms[-1]

    def test_wrong_count(self):
        with pytest.raises(DimensionError):
            mixed_volume([simplex(2)])

    @given(point_sets(2), point_sets(2))
    def test_2d_against_areas(self, a, b):
        P, Q = full(a), full(b)
        if P is None or Q is None:
            return
        # MV = Area(P+Q) - Area(P) - Area(Q), areas from scipy
        S = [tuple(x + y for x, y in zip(p, q)) for p in a for q in b]
        ref = scipy_nvol(S) - scipy_nvol(a) - scipy_nvol(b)
        assert ref % 2 == 0
        assert mixed_volume([P, Q]) == ref // 2
        assert normalized_volume(minkowski_sum(P, Q)) == normalized_volume(P) + normalized_volume(Q) + 2 * mixed_volume([P, Q])

    @given(point_sets(3, 0, 2), point_sets(3, 0, 2), point_sets(3, 0, 2), st.integers(1, 3),
           st.tuples(*[st.integers(-3, 3)] * 3))
    def test_3d_symmetry_translation_scaling(self, a, b, c, k, t):
        P, Q, R = full(a), full(b), full(c)
        if None in (P, Q, R):
            return
        mv = mixed_volume([P, Q, R])
        assert mv > 0
        assert mixed_volume([R, P, Q]) == mv == mixed_volume([Q, R, P])
        assert mixed_volume([translate(P, t), Q, R]) == mv
        assert mixed_volume([dilate(P, k), Q, R]) == k * mv


class TestContains:
    def test_worked_target(self):
        tilde = minkowski_sum_all([convex_hull(D0), convex_hull(D1), convex_hull(D2)])
        assert contains(tilde, (5, 4), strict=True)
        delta = minkowski_sum(convex_hull(D1), convex_hull(D2))
        assert contains(delta, (2, 2), strict=True)

    def test_square_corner(self):
        assert not contains(cube(2), (0, 0), strict=True)
        assert contains(cube(2), (0, 0), strict=False)


def test_lattice_point_bound_random():
    rng = random.Random(11)
    done = 0
    while done < 60:
        n = rng.choice([2, 3])
        polys = [convex_hull([tuple(rng.randint(0, 2) for _ in range(n)) for _ in range(n + 2)]) for _ in range(n)]
        if not all(p.is_full_dimensional for p in polys):
            continue
        assert len(interior_lattice_points(minkowski_sum_all(polys))) >= mixed_volume(polys) - 1
        done += 1

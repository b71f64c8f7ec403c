import cmath
import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import POINT, random_system
from sparse_residue.errors import (
    GenericityFailure,
    IncompleteRootSet,
    MultipleRootSuspected,
    NonGenericInput,
    SupportError,
)
from sparse_residue.exact import eval_at_point
from sparse_residue.geometry import contains, interior_lattice_points
from sparse_residue.laurent import LaurentPolynomial as L, SparseSystem, evaluate, substitute_params, toric_jacobian
from sparse_residue.oracle import (
    RootSet,
    euler_jacobi_check,
    residual,
    residue_root_sum,
    solve_bivariate,
    solve_system,
    solve_univariate,
    sparse_interpolate,
    sylvester_resultant_y,
)
from sparse_residue.residue import global_residue


def t_poly(terms):
    return L(1, {(k,): Fraction(c) for k, c in terms.items()})


def rootset(*pts):
    return RootSet(tuple(tuple(p) if isinstance(p, tuple) else (p,) for p in pts), "user-supplied")


@pytest.fixture(scope="module")
def worked_numeric(worked_system):
    return SparseSystem([substitute_params(f, POINT) for f in worked_system.polys])


@pytest.fixture(scope="module")
def worked_roots(worked_numeric):
    return solve_system(worked_numeric)


# -- root sums ---------------------------------------------------------------


class TestRootSum:
    def test_t2_minus_4(self):
        sys = SparseSystem([t_poly({2: 1, 0: -4})])
        assert residue_root_sum(sys, L.monomial((4,)), rootset(2.0, -2.0)) == pytest.approx(4)

    def test_zero_g(self):
        sys = SparseSystem([t_poly({2: 1, 0: -4})])
        assert residue_root_sum(sys, L(1, {}), rootset(2.0, -2.0)) == 0

    def test_worked_point(self, worked_numeric, worked_roots, worked_residue):
        value = residue_root_sum(worked_numeric, L.monomial((5, 4)), worked_roots)
        expected = eval_at_point(worked_residue, POINT)
        assert expected == 1
        assert abs(value - 1) < 1e-8

    def test_missing_root(self):
        sys = SparseSystem([t_poly({2: 1, 0: -4})])
        with pytest.raises(IncompleteRootSet):
            residue_root_sum(sys, L.monomial((1,)), rootset(2.0))

    def test_not_a_root(self):
        sys = SparseSystem([t_poly({2: 1, 0: -4})])
        with pytest.raises(IncompleteRootSet):
            residue_root_sum(sys, L.monomial((1,)), rootset(2.0, 3.0))

    def test_double_root(self):
        sys = SparseSystem([t_poly({2: 1, 1: -2, 0: 1})])
        with pytest.raises(MultipleRootSuspected):
            residue_root_sum(sys, L.monomial((1,)), rootset(1.0, 1.0))

    def test_rootset_json_roundtrip(self, worked_roots):
        back = RootSet.from_json(worked_roots.to_json())
        assert back.source == "bivariate-solver"
        assert np.allclose(np.array(back.roots), np.array(worked_roots.roots))


# -- solvers -----------------------------------------------------------------


class TestUnivariate:
    def test_t2_minus_4(self):
        rs = solve_univariate(t_poly({2: 1, 0: -4}))
        assert sorted(r[0].real for r in rs.roots) == pytest.approx([-2, 2])
        assert rs.source == "univariate-solver"

    def test_t_factor_cleared(self):
        rs = solve_univariate(t_poly({3: 1, 1: -1}))
        assert sorted(r[0].real for r in rs.roots) == pytest.approx([-1, 1])

    def test_laurent_support(self):
        rs = solve_univariate(t_poly({1: 1, -1: -4}))
        assert sorted(r[0].real for r in rs.roots) == pytest.approx([-2, 2])

    @pytest.mark.parametrize("d", range(1, 7))
    def test_roots_of_unity(self, d):
        f = t_poly({d: 1, 0: -1})
        rs = solve_univariate(f)
        assert len(rs) == d
        assert max(abs(evaluate(f, r)) for r in rs.roots) < 1e-10
        got = sorted(cmath.phase(r[0]) % (2 * cmath.pi) for r in rs.roots)
        assert got == pytest.approx([2 * cmath.pi * k / d for k in range(d)], abs=1e-9)

    def test_zero(self):
        with pytest.raises(NonGenericInput):
            solve_univariate(L(1, {}))


class TestBivariate:
    def test_linear(self):
        f1 = L(2, {(1, 0): 1, (0, 0): -1})
        f2 = L(2, {(0, 1): 1, (0, 0): -2})
        rs = solve_bivariate(f1, f2)
        assert len(rs) == 1
        assert rs.roots[0] == pytest.approx((1, 2))

    def test_worked_point(self, worked_numeric, worked_roots):
        assert worked_numeric.mv == 4
        assert len(worked_roots) == 4
        assert all(residual(worked_numeric, r) < 1e-10 for r in worked_roots.roots)

    def test_identical_equations(self):
        f = L(2, {(1, 0): 1, (0, 1): 2, (1, 1): -3})
        with pytest.raises(NonGenericInput):
            solve_bivariate(f, f)

    def test_resultant_against_sympy(self):
        sp = pytest.importorskip("sympy")
        x, y = sp.symbols("x y")
        p1 = {(1, 0): Fraction(2), (0, 2): Fraction(-1), (2, 1): Fraction(3, 2)}
        p2 = {(0, 0): Fraction(5), (1, 1): Fraction(1), (0, 1): Fraction(-7)}
        ours = sylvester_resultant_y(p1, p2)
        to_sp = lambda p: sum(sp.Rational(c.numerator, c.denominator) * x**i * y**j for (i, j), c in p.items())
        ref = sp.Poly(sp.resultant(to_sp(p1), to_sp(p2), y), x)
        assert {k: Fraction(int(v.p), int(v.q)) for (k,), v in ref.terms()} == {k: c for (k,), c in ours.terms.items()}

    def test_shared_x_coordinates(self):
        # only even powers of y: roots come in pairs (x, +-y)
        f1 = L(2, {(2, 2): Fraction(-1, 2), (2, 0): 9, (1, 2): 4, (1, 0): -3})
        f2 = L(2, {(2, 2): Fraction(-1, 2), (1, 0): Fraction(3, 2), (0, 0): Fraction(-3, 2)})
        sys = SparseSystem([f1, f2])
        rs = solve_bivariate(f1, f2)
        assert len(rs) == sys.mv == 6

    def test_root_at_infinity_reported(self):
        f1 = L(2, {(0, 0): -2, (1, 1): Fraction(5, 4), (1, 2): Fraction(6, 5), (0, 2): 6})
        f2 = L(2, {(1, 0): 2, (1, 1): 2, (2, 0): 3, (2, 1): Fraction(2, 5)})
        with pytest.raises(IncompleteRootSet):
            solve_bivariate(f1, f2)

    def test_three_variables_unsupported(self):
        sys = SparseSystem([L(3, {(0, 0, 0): 1, (1, 0, 0): 1, (0, 1, 0): 1, (0, 0, 1): 1})] * 3)
        with pytest.raises(NotImplementedError):
            solve_system(sys)

    def test_bernstein_count(self):
        solved = 0
        for seed in range(40):
            sys = random_system(random.Random(seed), 2, 5, 2)
            try:
                rs = solve_bivariate(*sys.polys)
            except IncompleteRootSet:
                continue
            solved += 1
            assert len(rs) == sys.mv
        assert solved >= 36


# -- Euler-Jacobi ------------------------------------------------------------


class TestEulerJacobi:
    def test_worked_interior_monomial(self, worked_numeric, worked_roots):
        assert euler_jacobi_check(worked_numeric, worked_roots, L.monomial((2, 2))) < 1e-8

    def test_zero(self, worked_numeric, worked_roots):
        assert euler_jacobi_check(worked_numeric, worked_roots, L(2, {})) == 0.0

    def test_boundary_rejected(self, worked_numeric, worked_roots):
        with pytest.raises(SupportError):
            euler_jacobi_check(worked_numeric, worked_roots, L.monomial((5, 4)))

    def test_random_systems(self):
        done = 0
        seed = 0
        while done < 20:
            rng = random.Random(1000 + seed)
            seed += 1
            sys = random_system(rng, 2, 5, 2)
            pts = interior_lattice_points(sys.delta)
            if not pts:
                continue
            try:
                rs = solve_bivariate(*sys.polys)
            except IncompleteRootSet:
                continue
            h = L(2, {p: Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for p in pts})
            assert euler_jacobi_check(sys, rs, h) < 1e-7
            done += 1


# -- interpolation -----------------------------------------------------------


class TestInterpolate:
    T2 = SparseSystem([t_poly({2: 1, 0: -4})])
    EXACT = RootSet(((Fraction(2),), (Fraction(-2),)), "user-supplied")

    def test_hand_worked(self):
        res = sparse_interpolate(self.T2, self.EXACT, [Fraction(1), Fraction(0)])
        assert res.c == Fraction(1, 8)
        assert res.h == t_poly({1: Fraction(1, 4)})
        assert res.g == t_poly({1: Fraction(1, 4), 2: Fraction(1, 8)})
        assert evaluate(res.g, (2,)) == 1 and evaluate(res.g, (-2,)) == 0

    def test_zero_phi(self):
        res = sparse_interpolate(self.T2, self.EXACT, [0, 0])
        assert res.g.is_zero()

    def test_jacobian_values(self, worked_numeric, worked_roots):
        J = toric_jacobian(worked_numeric)
        res = sparse_interpolate(worked_numeric, worked_roots, lambda a: evaluate(J.as_complex(), a))
        assert abs(res.c - worked_numeric.mv) < 1e-9
        assert all(abs(v) < 1e-9 for v in res.h.terms.values())

    def test_jacobian_values_exact(self):
        J = toric_jacobian(self.T2)
        res = sparse_interpolate(self.T2, self.EXACT, lambda a: evaluate(J, a))
        assert res.c == 2 and res.h.is_zero() and res.g == J

    def test_structure(self):
        res = sparse_interpolate(self.T2, self.EXACT, {(Fraction(2),): Fraction(3), (Fraction(-2),): Fraction(5)})
        J = toric_jacobian(self.T2)
        assert res.g == res.h + J.scale(res.c / res.mv)
        assert all(contains(self.T2.delta, e, strict=True) for e in res.h.terms)

    def test_random_numeric(self):
        rng = random.Random(7)
        done = 0
        while done < 10:
            sys = random_system(rng, 2, 5, 2)
            try:
                rs = solve_bivariate(*sys.polys)
            except IncompleteRootSet:
                continue
            phi = [complex(rng.uniform(-1, 1), rng.uniform(-1, 1)) for _ in rs.roots]
            res = sparse_interpolate(sys, rs, phi)
            assert all(abs(evaluate(res.g, a) - v) < 1e-8 for a, v in zip(rs.roots, phi))
            assert all(contains(sys.delta, e) for e in res.g.terms)
            done += 1

    def test_residue_free_phi(self, worked_numeric, worked_roots):
        # phi = h on the roots for interior h has zero residue, so c vanishes
        h = L(2, {(2, 1): 3, (3, 3): -2})
        phi = [evaluate(h.as_complex(), a) for a in worked_roots.roots]
        res = sparse_interpolate(worked_numeric, worked_roots, phi)
        assert abs(res.c) < 1e-9

    def test_wrong_length(self):
        with pytest.raises(ValueError):
            sparse_interpolate(self.T2, self.EXACT, [1])

    def test_incomplete(self):
        with pytest.raises(IncompleteRootSet):
            sparse_interpolate(self.T2, RootSet(((Fraction(2),),), "user-supplied"), [1])

    def test_residual_check(self):
        roots = rootset(2.0, -2.0)
        with pytest.raises(GenericityFailure):
            sparse_interpolate(self.T2, roots, [1.0, 0.0], tol=-1.0)

    @given(st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=6), min_size=2, max_size=2))
    def test_exact_interpolates(self, phi):
        res = sparse_interpolate(self.T2, self.EXACT, phi)
        assert [evaluate(res.g, r) for r in self.EXACT.roots] == phi

    def test_engine_agrees_with_interpolation(self):
        # the residue of the interpolant equals c
        res = sparse_interpolate(self.T2, self.EXACT, [Fraction(3), Fraction(-1)])
        assert global_residue(self.T2, res.g).residue == res.c

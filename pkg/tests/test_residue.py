import dataclasses
import random
import time
from fractions import Fraction

import numpy as np
import pytest

from sparse_residue.delta0 import choose_delta0, validate_delta0
from sparse_residue.errors import Delta0Invalid, DegenerateSystem, NonGenericSystem
from sparse_residue.exact import RatFunc, eval_at_point, ratfunc_equal
from sparse_residue.geometry import convex_hull, dilate, interior_lattice_points, translate
from sparse_residue.laurent import LaurentPolynomial as L, SparseSystem, substitute_params
from sparse_residue.oracle import residue_root_sum, solve_bivariate
from sparse_residue.residue import ResidueLinearSystem, assemble_system, global_residue, solve_for_c

from conftest import WORKED_MATRIX, POINT, R, random_system

D0 = convex_hull([(-1, 0), (0, -1), (2, 1)])
W = ("w",)


def uni(d, params=W):
    return SparseSystem([L(1, {(d,): RatFunc.const(params, 1), (0,): -RatFunc.var(params, "w")})])


def certificate_identity(sys, g, res):
    """h_0 + sum h_i f_i + c J == g, rebuilt from the certificate."""
    lin = res.linear_system
    hs = res.h_polynomials()
    total = hs[0]
    for h, f in zip(hs[1:], sys.polys):
        total = total + h * f
    total = total + lin.jacobian.scale(res.c)
    return total == g


def delta0_family(sys, target):
    """Several distinct valid Delta_0 for one target."""
    base = choose_delta0(sys, [target])
    cands = [base, dilate(base, 2), dilate(base, 3)]
    P = sys.delta
    for k in (1, 2):
        big = dilate(P, k)
        for w in interior_lattice_points(big)[:3]:
            cands.append(translate(big, tuple(-a for a in w)))
    out = []
    for c in cands:
        if validate_delta0(c, sys.delta, [target]) and c not in out:
            out.append(c)
    return out


class TestAssemble:
    def test_worked_shape_and_blocks(self, worked_system):
        lin = assemble_system(worked_system, L.monomial((5, 4)), D0)
        assert lin.shape == (15, 17)
        assert lin.block_sizes == (4, 6, 6, 1)
        assert lin.blocks[0] == ((2, 1), (2, 2), (2, 3), (3, 3))
        assert lin.blocks[1] == ((1, 0), (1, 1), (1, 2), (2, 1), (2, 2), (3, 2))
        assert lin.blocks[2] == ((0, 1), (1, 0), (1, 1), (2, 1), (2, 2), (3, 2))

    def test_worked_matrix_entry_by_entry(self, worked_system):
        lin = assemble_system(worked_system, L.monomial((5, 4)), D0)
        for i, line in enumerate(WORKED_MATRIX):
            for j, text in enumerate(line.split()):
                assert ratfunc_equal(lin.matrix[i][j], R(text)), (i, j, text)
        assert [str(x) for x in lin.rhs] == ["0"] * 14 + ["1"]

    def test_audit_json(self, worked_system):
        obj = assemble_system(worked_system, L.monomial((5, 4)), D0).to_json()
        assert obj["shape"] == [15, 17]
        assert obj["matrix"][8][16] == "2*a1*b3-2*a3*b1"

    def test_univariate_small(self):
        lin = assemble_system(uni(2), L.monomial((4,)), convex_hull([(-1,), (3,)]))
        assert lin.rows == tuple((k,) for k in range(5))
        assert lin.shape == (5, 5)
        assert lin.block_sizes == (1, 3, 1)

    def test_boundary_target_rejected(self):
        with pytest.raises(Delta0Invalid):
            assemble_system(uni(2), L.monomial((5,)), convex_hull([(-1,), (3,)]))

    def test_zero_inside_delta0_required(self):
        with pytest.raises(Delta0Invalid):
            assemble_system(uni(2), L.monomial((2,)), convex_hull([(0,), (3,)]))


class TestSolve:
    def test_worked_c(self, worked_system, worked_residue):
        c, x = solve_for_c(assemble_system(worked_system, L.monomial((5, 4)), D0))
        assert ratfunc_equal(c, worked_residue / 4)
        assert str(c.num) == "a1^2*b2"

    def test_univariate_c(self):
        c, _ = solve_for_c(assemble_system(uni(2), L.monomial((4,)), convex_hull([(-1,), (3,)])))
        assert c == RatFunc.var(W, "w") / 2

    def test_zero_rhs(self, worked_system):
        lin = assemble_system(worked_system, L.monomial((5, 4)), D0)
        zero = dataclasses.replace(lin, rhs=tuple(r * 0 for r in lin.rhs))
        c, _ = solve_for_c(zero)
        assert c.is_zero()

    def test_nongeneric(self):
        f1 = L(2, {(1, 0): 1, (0, 1): 1, (2, 2): 1})
        f2 = L(2, {(1, 0): 1, (1, 2): 1, (2, 2): 1})
        with pytest.raises(NonGenericSystem):
            global_residue(SparseSystem([f1, f2]), L.monomial((5, 4)), delta0=D0)

    def test_c_not_unique(self):
        # one h column parallel to the c column: c is free
        lin = ResidueLinearSystem(((0,),), (((0,),),), ((Fraction(1), Fraction(2)),), (Fraction(1),),
                                  convex_hull([(-1,), (1,)]), L(1, {(0,): 2}))
        with pytest.raises(DegenerateSystem):
            solve_for_c(lin)


class TestGlobalResidue:
    def test_worked_value_and_runtime(self, worked_system, worked_residue):
        t = time.perf_counter()
        res = global_residue(worked_system, L.monomial((5, 4)), delta0=D0)
        assert time.perf_counter() - t < 5
        assert ratfunc_equal(res.residue, worked_residue)
        assert res.residue == res.c * res.mv and res.mv == 4
        assert certificate_identity(worked_system, L(2, {(5, 4): R("1")}), res)

    def test_worked_auto_delta0(self, worked_system, worked_residue):
        res = global_residue(worked_system, L.monomial((5, 4)))
        assert ratfunc_equal(res.residue, worked_residue)
        assert validate_delta0(res.delta0, worked_system.delta, [(5, 4)])

    @pytest.mark.parametrize("d", [1, 2, 3, 4])
    @pytest.mark.parametrize("k", range(-4, 9))
    def test_univariate_closed_form(self, d, k):
        res = global_residue(uni(d), L.monomial((k,)))
        w = RatFunc.var(W, "w")
        expected = w ** (k // d - 1) if k % d == 0 else RatFunc.zero(W)
        assert res.residue == expected

    def test_univariate_against_roots(self):
        # independent: Σ a^k / (d a^d) over the d-th roots of w = 3
        for d in (1, 2, 3, 4):
            roots = [3 ** (1 / d) * np.exp(2j * np.pi * j / d) for j in range(d)]
            for k in range(-4, 9):
                ref = sum(a**k / (d * a**d) for a in roots)
                got = eval_at_point(global_residue(uni(d), L.monomial((k,))).residue, {"w": 3})
                assert abs(complex(float(got)) - ref) < 1e-9

    @pytest.mark.parametrize("e", [(2, 1), (2, 2), (2, 3), (3, 3)])
    def test_euler_jacobi_symbolic(self, worked_system, e):
        assert global_residue(worked_system, L.monomial(e)).residue.is_zero()

    def test_whole_polytope_mode(self, worked_system, worked_residue):
        g = L(2, {(5, 4): R("1"), (2, 2): R("a1"), (1, 1): R("b2")})
        a = global_residue(worked_system, g, mode="per-monomial")
        b = global_residue(worked_system, g, mode="whole-polytope")
        assert ratfunc_equal(a.residue, b.residue)
        assert ratfunc_equal(a.residue, worked_residue + b2_residue(worked_system))
        assert certificate_identity(worked_system, g, b)

    def test_zero_g(self, worked_system):
        assert global_residue(worked_system, L(2, {})).residue.is_zero()


def b2_residue(sys):
    return R("b2") * global_residue(sys, L.monomial((1, 1))).residue


class TestProperties:
    def test_linearity(self, worked_system):
        rng = random.Random(4)
        g1, g2 = L.monomial((5, 4)), L.monomial((4, 4))
        r1 = global_residue(worked_system, g1).residue
        r2 = global_residue(worked_system, g2).residue
        for _ in range(3):
            al, be = Fraction(rng.randint(-9, 9), rng.randint(1, 5)), Fraction(rng.randint(-9, 9), rng.randint(1, 5))
            g = g1.scale(al) + g2.scale(be)
            assert ratfunc_equal(global_residue(worked_system, g).residue, r1 * al + r2 * be)

    def test_delta0_independence_worked(self, worked_system, worked_residue):
        fam = delta0_family(worked_system, (5, 4))
        assert len(fam) >= 3
        for d0 in fam[:3]:
            for restrict in (True, False):
                r = global_residue(worked_system, L.monomial((5, 4)), delta0=d0, restrict_jacobian=restrict)
                assert ratfunc_equal(r.residue, worked_residue)

    def test_delta0_independence_random(self):
        rng = random.Random(21)
        for _ in range(6):
            sys = random_system(rng)
            target = tuple(rng.randint(-1, 4) for _ in range(2))
            values = set()
            for d0 in delta0_family(sys, target)[:4]:
                for restrict in (True, False):
                    res = global_residue(sys, L.monomial(target), delta0=d0, restrict_jacobian=restrict)
                    assert certificate_identity(sys, L.monomial(target), res)
                    values.add(res.residue)
            assert len(values) == 1

    def test_oracle_agreement_worked_point(self, worked_system, worked_residue):
        num = SparseSystem([substitute_params(f, POINT) for f in worked_system.polys])
        roots = solve_bivariate(*num.polys)
        assert abs(residue_root_sum(num, L.monomial((5, 4)), roots) - 1) < 1e-8

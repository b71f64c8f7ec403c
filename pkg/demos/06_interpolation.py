"""
Interpolating values on the zero set
====================================

Any function on the roots is the restriction of g = h + (c / MV) J where h
uses only interior monomials and c is the residue of the data.
"""

from fractions import Fraction

from sparse_residue import LaurentPolynomial, SparseSystem
from sparse_residue.laurent import evaluate
from sparse_residue.oracle import RootSet, solve_bivariate, sparse_interpolate

# exact: t^2 - 4 with values 1 at t = 2 and 0 at t = -2
system = SparseSystem([LaurentPolynomial(1, {(2,): Fraction(1), (0,): Fraction(-4)})])
roots = RootSet(((Fraction(2),), (Fraction(-2),)), "user-supplied")
res = sparse_interpolate(system, roots, [Fraction(1), Fraction(0)])
print("c =", res.c, " h =", res.h, " g =", res.g)
print("g(2), g(-2) =", evaluate(res.g, (2,)), evaluate(res.g, (-2,)))

# numeric: indicator of the first root of a 2 x 2 system
f1 = LaurentPolynomial(2, {(1, 0): Fraction(3), (0, 1): Fraction(-1), (2, 2): Fraction(1, 2)})
f2 = LaurentPolynomial(2, {(1, 0): Fraction(1), (1, 2): Fraction(2), (2, 2): Fraction(-5, 3)})
system = SparseSystem([f1, f2])
roots = solve_bivariate(f1, f2)
phi = [1.0] + [0.0] * (len(roots) - 1)
res = sparse_interpolate(system, roots, phi)
print("support of g:", sorted(res.g.terms))
print("values at the roots:", [round(abs(evaluate(res.g, a)), 12) for a in roots.roots])

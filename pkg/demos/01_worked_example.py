"""
Global residue of a parametric 2 x 2 system
===========================================

Two trinomials with symbolic coefficients, the monomial x^5 y^4, and the
exact answer as a rational function of the six coefficients.
"""

from sparse_residue import LaurentPolynomial, SparseSystem, global_residue, mixed_volume
from sparse_residue.exact import RatFunc
from sparse_residue.geometry import convex_hull
from sparse_residue.grammar import parse_mpoly, ratfunc_to_json

params = ("a1", "a2", "a3", "b1", "b2", "b3")
c = lambda s: RatFunc(parse_mpoly(s, params))

# f1 = a1 x + a2 y + a3 x^2 y^2,  f2 = b1 x + b2 x y^2 + b3 x^2 y^2
f1 = LaurentPolynomial(2, {(1, 0): c("a1"), (0, 1): c("a2"), (2, 2): c("a3")})
f2 = LaurentPolynomial(2, {(1, 0): c("b1"), (1, 2): c("b2"), (2, 2): c("b3")})
system = SparseSystem([f1, f2])
print("mixed volume:", mixed_volume(system.newton))

# a hand-picked auxiliary triangle with the origin inside
delta0 = convex_hull([(-1, 0), (0, -1), (2, 1)])
res = global_residue(system, LaurentPolynomial.monomial((5, 4)), delta0=delta0)

lin = res.linear_system
print("linear system:", lin.shape, "column blocks", lin.block_sizes)
print("c       =", ratfunc_to_json(res.c))
print("residue =", ratfunc_to_json(res.residue))

# the certificate rebuilds g = h0 + h1 f1 + h2 f2 + c J exactly
h0, h1, h2 = res.h_polynomials()
rebuilt = h0 + h1 * f1 + h2 * f2 + lin.jacobian.scale(res.c)
print("certificate reproduces g:", rebuilt == LaurentPolynomial.monomial((5, 4)))

# leaving Delta_0 out lets the optimizer pick one
auto = global_residue(system, LaurentPolynomial.monomial((5, 4)))
print("same answer with an optimized Delta_0:", auto.residue == res.residue)

"""
Checking the engine against the roots
=====================================

At a numeric point the residue is a plain sum over the torus roots.  The
oracle solves 2 x 2 systems by a Sylvester resultant and compares.
"""

import random
from fractions import Fraction

from sparse_residue import LaurentPolynomial, SparseSystem, global_residue
from sparse_residue.errors import DimensionError
from sparse_residue.geometry import interior_lattice_points
from sparse_residue.oracle import euler_jacobi_check, residue_root_sum, solve_bivariate

f1 = LaurentPolynomial(2, {(1, 0): Fraction(1), (0, 1): Fraction(1), (2, 2): Fraction(1)})
f2 = LaurentPolynomial(2, {(1, 0): Fraction(1), (1, 2): Fraction(1), (2, 2): Fraction(2)})
system = SparseSystem([f1, f2])
roots = solve_bivariate(f1, f2)
print(f"{len(roots)} torus roots (mixed volume {system.mv})")
for r in roots.roots:
    print("   ", tuple(complex(round(z.real, 6), round(z.imag, 6)) for z in r))

g = LaurentPolynomial.monomial((5, 4))
print("exact residue:", global_residue(system, g).residue)
print("root sum:     ", residue_root_sum(system, g, roots))

# interior monomials have residue zero
for e in interior_lattice_points(system.delta):
    print(f"x^{e[0]} y^{e[1]}: |root sum| = {euler_jacobi_check(system, roots, LaurentPolynomial.monomial(e)):.2e}")

# random rational systems
def random_system(rng):
    while True:
        polys = []
        for _ in range(2):
            pts = {(rng.randint(0, 2), rng.randint(0, 2)) for _ in range(4)}
            polys.append(LaurentPolynomial(2, {p: Fraction(rng.choice([-1, 1]) * rng.randint(1, 9), rng.randint(1, 5))
                                               for p in pts}))
        try:
            return SparseSystem(polys)
        except DimensionError:  # a flat Newton polygon
            continue


rng = random.Random(1)
g = LaurentPolynomial.monomial((2, 3))
worst = 0.0
for _ in range(10):
    sys_ = random_system(rng)
    rs = solve_bivariate(*sys_.polys)
    exact = complex(float(global_residue(sys_, g).residue))
    worst = max(worst, abs(exact - residue_root_sum(sys_, g, rs)) / max(1, abs(exact)))
print(f"worst relative disagreement over 10 random systems: {worst:.1e}")

"""
Residues of t^d - w
===================

For one variable the residue of t^k is a sum over the d-th roots of w,
which collapses to w^(k/d - 1) when d divides k and to 0 otherwise.  The
engine never sees the roots; it works with the coefficient w directly.
"""

import numpy as np

from sparse_residue import LaurentPolynomial, SparseSystem, global_residue
from sparse_residue.exact import RatFunc, eval_at_point

W = ("w",)
w = RatFunc.var(W, "w")

for d in (1, 2, 3, 4):
    system = SparseSystem([LaurentPolynomial(1, {(d,): RatFunc.const(W, 1), (0,): -w})])
    row = [str(global_residue(system, LaurentPolynomial.monomial((k,))).residue) for k in range(-4, 9)]
    print(f"d={d}:", " ".join(f"{s:>6}" for s in row))

# spot check against the roots themselves at w = 3
d, k = 3, 6
roots = 3 ** (1 / d) * np.exp(2j * np.pi * np.arange(d) / d)
by_roots = np.sum(roots**k / (d * roots**d))
system = SparseSystem([LaurentPolynomial(1, {(d,): RatFunc.const(W, 1), (0,): -w})])
exact = eval_at_point(global_residue(system, LaurentPolynomial.monomial((k,))).residue, {"w": 3})
print(f"t^{k} mod t^{d} - 3: exact {exact}, root sum {by_roots.real:.12f}")

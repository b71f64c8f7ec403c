"""
Newton polytopes, mixed volume and interior points
==================================================

The residue problem is sized by lattice geometry: the mixed volume counts
roots, and the interior points of the Minkowski sum span the monomials
whose residue is always zero.
"""

import random

from sparse_residue.geometry import (
    convex_hull,
    gamma_simplex,
    interior_lattice_points,
    minkowski_sum,
    minkowski_sum_all,
    mixed_volume,
    normalized_volume,
)

P = convex_hull([(1, 0), (0, 1), (2, 2)])
Q = convex_hull([(1, 0), (1, 2), (2, 2)])
S = minkowski_sum(P, Q)
print("P vertices:", P.vertices, " normalized volume", normalized_volume(P))
print("P + Q vertices:", S.vertices)
print("mixed volume:", mixed_volume([P, Q]))
print("interior of P + Q:", interior_lattice_points(S))

# the simplices conv{0, e1, ..., m e_n} are tight for the interior-point bound
for ms in [(2, 3), (1, 5), (2, 2, 4)]:
    n = len(ms)
    polys = [gamma_simplex(n, m) for m in ms]
    pts = interior_lattice_points(minkowski_sum_all(polys))
    print(f"Gamma{ms}: mixed volume {mixed_volume(polys)}, interior {pts}")

# on random polytopes the count never drops below mixed volume - 1
rng = random.Random(0)
slack = []
while len(slack) < 200:
    polys = [convex_hull([(rng.randint(0, 3), rng.randint(0, 3)) for _ in range(4)]) for _ in range(2)]
    if all(p.is_full_dimensional for p in polys):
        slack.append(len(interior_lattice_points(minkowski_sum_all(polys))) - mixed_volume(polys) + 1)
print("smallest slack over 200 random pairs:", min(slack))

"""
Choosing the auxiliary polytope
===============================

The linear system grows with the volume of Delta_0 + Delta, so Delta_0 is
chosen to add as little volume as possible while still swallowing the
target exponent.  Stretching Delta by a segment [0, v] adds h_Z(v) / 2,
and minimizing h_Z is an exact linear program.
"""

from fractions import Fraction

from sparse_residue.delta0 import choose_delta0_report, min_support, zonotope
from sparse_residue.geometry import convex_hull, minkowski_sum, normalized_volume

delta = convex_hull([(1, 1), (1, 3), (2, 0), (3, 4), (4, 4)])
Z = zonotope(delta)
print("zonotope generators (normal, facet volume):")
for normal, vol in Z.generators:
    print("   ", normal, vol)

# the volume identity, checked exactly
for v in [(1, 0), (2, 1), (-1, 3)]:
    seg = convex_hull([(0, 0), v])
    added = Fraction(normalized_volume(minkowski_sum(delta, seg)) - normalized_volume(delta), 2)
    print(f"v={v}: added volume {added}, h_Z(v)/2 = {Z(v) / 2}")

# LP for the target x^5 y^4, then the validated polytope built from it
x, value = min_support(delta, (5, 4))
print("LP optimum:", [str(q) for q in x], "h_Z =", value)
report = choose_delta0_report(delta, [(5, 4)])
print("Delta_0:", report.delta0.vertices, f"(stage {report.stage})")

# several targets share one Delta_0
report = choose_delta0_report(delta, [(5, 4), (0, 0), (6, 1)])
print("for three targets:", report.delta0.vertices, f"(stage {report.stage})")

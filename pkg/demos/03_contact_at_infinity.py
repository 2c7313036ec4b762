"""Contact exponents of curve pairs, recovered numerically.

Two unbounded arcs have contact exponent b when the gap between them inside
the norm annulus [r/K, K*r] scales like r^b.  The estimator samples both
curves over a geometric radius grid, regresses log(gap) on log(r), and
rounds the slope onto a small-denominator fraction.  The result does not
depend on K, and coinciding curves get the conventional minus infinity.
"""

import numpy as np

from horncode.contact import annulus_distance, cones_differ, estimate_contact, parse_curve

axis = parse_curve("t; 0")

print("contact of the x-axis with the graph of x^b:")
for text in ("t; t", "t; t^(1/2)", "t; 1", "t; t^(-1/2)", "t; t^(-1)"):
    curve = parse_curve(text)
    est = estimate_contact(axis, curve)
    print(f"  {text:14s} slope {est.slope:+.4f}  rounded {str(est.rounded):>4s}"
          f"  residual {est.residual:.2g}")

# K does not matter (only the slope survives the limit)
est = estimate_contact(axis, parse_curve("t; t^(1/2)"), Ks=(2.0, 3.0, 4.0))
print("\nper-K slopes:", {k: round(v, 4) for k, v in est.per_K.items()})

# a single annulus gap, against its closed form
gap = annulus_distance(axis, parse_curve("t; t^(1/2)"), K=3.0, r=6400.0)
print(f"gap at r=6400, K=3: {gap:.3f}  (closed form ~ sqrt(r/K) = "
      f"{np.sqrt(6400/3):.3f})")

# identical curves share an unbounded tail
same = estimate_contact(axis, parse_curve("t; 0"))
print("\nidentical curves ->", "-inf" if same.neg_infinity else same.rounded)

# contact 1 happens exactly when the tangent directions at infinity differ
for a, b in (("t; 0", "t; t"), ("t; 0", "t; t^(1/2)")):
    c1, c2 = parse_curve(a), parse_curve(b)
    est = estimate_contact(c1, c2)
    print(f"cones differ({a} | {b}) = {cones_differ(c1, c2)},"
          f" contact = {est.rounded}")

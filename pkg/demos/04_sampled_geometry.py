"""Numeric invariants from triangulated samples: exponents, distances,
topology, and tangent directions at infinity.

Everything the symbolic layer states about model surfaces is re-measured
here on meshes: link-length growth recovers horn and tube exponents,
geodesic-vs-Euclidean ratios certify Lipschitz normal embedding, Euler
characteristics and orientation propagation read off the topology, and
epsilon-net counting classifies the dimension of the direction set.
"""

import numpy as np

from horncode.mesh_geometry import (
    cone_directions,
    cylinder,
    growth_exponent,
    horn,
    inner_distance,
    link_length,
    lne_constant,
    mesh_topology,
    moebius_band,
    sphere,
    strip,
    torus,
    tube,
)

# -- horn exponents at the apex ------------------------------------------------

print("horn exponents from link-length growth (radii 2^-k):")
for beta in (1.0, 1.5, 2.0):
    mesh = horn(beta=beta, n_axial=160, n_angular=160)
    # max_den=6: with ~0.03 slope bias, a larger cap would let some
    # closer large-denominator fraction win over the true exponent
    est = growth_exponent(mesh, (0, 0, 0), [2.0 ** -k for k in range(2, 9)],
                          max_den=6)
    print(f"  beta={beta:g}: slope {est.slope:.3f} -> {est.rounded}")

# -- tube exponents toward infinity ----------------------------------------------

print("tube exponents (radii 2^k):")
for beta in (1.0, 0.5, 0.0):
    mesh = tube(beta=beta, z_max=1024.0, n_axial=160, n_angular=160)
    est = growth_exponent(mesh, (0, 0, 0), [2.0 ** k for k in range(3, 9)])
    print(f"  beta={beta:g}: slope {est.slope:.3f} -> {est.rounded}")

# -- a single link, against its closed form --------------------------------------

mesh = horn(beta=2.0, n_axial=160, n_angular=160)
r = 2.0 ** -5
out = link_length(mesh, (0, 0, 0), r)
print(f"\nlink of the 2-horn at r=2^-5: length {out.length:.5f}"
      f"  (2*pi*r^2 = {2 * np.pi * r ** 2:.5f}), {out.components} component")

# -- geodesics and the LNE constant ----------------------------------------------

cyl = cylinder(radius=1.0, half_length=2.0, n_axial=48, n_angular=128)
ring = 24 * 128
d = inner_distance(cyl, ring, ring + 64)
print(f"\nantipodal cross-section geodesic on the unit cylinder: {d:.4f}"
      f"  (pi = {np.pi:.4f})")

convex = strip(beta=0.5, x_max=100.0, n_x=1500, n_y=20)
thin = strip(beta=-1.0, x_max=1000.0, n_x=1500, n_y=12)
print(f"LNE constant of T_(1/2): {lne_constant(convex, 5000):.3f} (convex, ~1)")
print(f"LNE constant of T_(-1) : {lne_constant(thin, 5000):.3f} (<= 2)")

# -- topology ---------------------------------------------------------------------

print("\ntopology (theta, genus-or-crosscaps, boundary components):")
for name, mesh in (("torus", torus(n_u=48, n_v=24)),
                   ("sphere", sphere(n_theta=32, n_phi=32)),
                   ("moebius band", moebius_band(n_u=64, n_v=8))):
    print(f"  {name:13s}", tuple(mesh_topology(mesh)))

# -- direction sets at infinity ----------------------------------------------------

cone = tube(beta=1.0, z_max=512.0, n_axial=72, n_angular=72)
parab = tube(beta=0.5, z_max=4096.0, n_axial=72, n_angular=72)
for name, mesh in (("cone (beta=1)", cone), ("paraboloid tube (beta=1/2)", parab)):
    s = cone_directions(mesh)
    print(f"\n{name}: eps-net counts {s.count_eps}/{s.count_half_eps}"
          f" (ratio {s.ratio:.2f}) -> direction dim {s.direction_dim},"
          f" cone dim {s.cone_dim}")
print("\nA surface end is a 1-tube exactly when its cone at infinity is"
      " 2-dimensional.")

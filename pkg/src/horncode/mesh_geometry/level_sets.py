"""Distance-sphere level sets on a mesh and power-law growth of their length.

The polyline {x : |x - center| = r} traced across the triangles measures the
link of the surface at the center: its length grows like r^beta near a
beta-horn apex (r -> 0) and along a beta-tube (r -> infinity), so the
log-log slope over a radius grid recovers the exponent.
"""

from __future__ import annotations

from fractions import Fraction
from typing import NamedTuple

import numpy as np

from ..errors import GridTooSmall, LevelSetEmpty, NoRationalNearby
from ..rationals import rational_round
from .mesh import Mesh


class LinkPolyline(NamedTuple):
    length: float
    components: int
    segments: int


class GrowthEstimate(NamedTuple):
    """Fitted growth exponent of link length against radius.

    ``rounded`` is None when no small-denominator fraction sits within the
    rounding window (the slope is still reported).
    """

    slope: float
    rounded: Fraction | None
    residual: float
    radii_used: tuple[float, ...]


def link_length(mesh: Mesh, center, r: float) -> LinkPolyline:
    """Length and component count of the level set |x - center| = r.

    Vertices landing exactly on the level are nudged by a 1e-12 relative
    jitter so every crossing is a clean edge crossing.
    """
    center = np.asarray(center, dtype=float)
    if center.shape != (mesh.ambient_dim,):
        raise ValueError("center dimension does not match the mesh")
    g = np.linalg.norm(mesh.vertices - center, axis=1) - r
    eps = 1e-12 * max(r, 1.0)
    g[np.abs(g) < eps] = eps

    tri = mesh.triangles
    gt = g[tri]
    pos = gt > 0
    n_pos = pos.sum(axis=1)
    crossing = (n_pos == 1) | (n_pos == 2)
    if not crossing.any():
        raise LevelSetEmpty(f"no triangle crosses radius {r:g}")

    tri = tri[crossing]
    gt = gt[crossing]
    # the lone vertex on one side determines the two crossed edges
    lone_is_pos = (gt > 0).sum(axis=1) == 1
    lone = np.where(lone_is_pos, np.argmax(gt > 0, axis=1),
                    np.argmax(gt <= 0, axis=1))
    idx = np.arange(len(tri))
    o1 = (lone + 1) % 3
    o2 = (lone + 2) % 3

    def crossing_point(a_col, b_col):
        ga, gb = gt[idx, a_col], gt[idx, b_col]
        t = ga / (ga - gb)
        pa = mesh.vertices[tri[idx, a_col]]
        pb = mesh.vertices[tri[idx, b_col]]
        return pa + t[:, None] * (pb - pa)

    p1 = crossing_point(lone, o1)
    p2 = crossing_point(lone, o2)
    seg_len = np.linalg.norm(p1 - p2, axis=1)
    total = float(seg_len.sum())

    # connectivity: segments in adjacent triangles share the crossing point
    # on their common edge; union-find over crossed-edge keys
    n = mesh.n_vertices

    def edge_key(a_col, b_col):
        a, b = tri[idx, a_col], tri[idx, b_col]
        return np.minimum(a, b) * n + np.maximum(a, b)

    k1, k2 = edge_key(lone, o1), edge_key(lone, o2)
    parent: dict[int, int] = {}

    def find(x):
        root = x
        while parent.setdefault(root, root) != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    for a, b in zip(k1.tolist(), k2.tolist()):
        parent[find(a)] = find(b)
    components = len({find(k) for k in parent})
    return LinkPolyline(total, components, len(tri))


def growth_exponent(mesh: Mesh, center, radii, max_den: int = 12,
                    round_tol: float = 0.05) -> GrowthEstimate:
    """Log-log slope of link length over the radius grid, plus its rational
    rounding when one is near enough."""
    radii = [float(r) for r in radii]
    if len(radii) < 6:
        raise GridTooSmall(f"need at least 6 radii, got {len(radii)}")
    lengths = [link_length(mesh, center, r).length for r in radii]
    x = np.log(radii)
    y = np.log(lengths)
    slope, intercept = np.polyfit(x, y, 1)
    residual = float(np.sqrt(np.mean((y - (slope * x + intercept)) ** 2)))
    try:
        rounded = rational_round(float(slope), max_den, round_tol)
    except NoRationalNearby:
        rounded = None
    return GrowthEstimate(float(slope), rounded, residual, tuple(radii))

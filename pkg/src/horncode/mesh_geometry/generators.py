"""Triangulated samples of the model surfaces.

Families map directly to the standard models: horns x^2+y^2 = z^(2b) with
b >= 1 near the apex, tubes/strips with b <= 1 toward infinity, and the
classical closed examples.  Axial grids are geometric so that level sets
stay resolved over several octaves of radius; angular resolution is uniform.
"""

from __future__ import annotations

import numpy as np

from ..errors import BadParams
from .mesh import Mesh

FAMILIES = ("horn", "tube", "strip", "cylinder", "paraboloid", "torus",
            "genus_g", "moebius_band", "sphere")


def generate_surface(family: str, **params) -> Mesh:
    """Build one of the named surface families at a requested resolution.

    Raises BadParams for unknown families or exponents out of the family's
    range (horn needs beta >= 1, tube and strip need beta <= 1).
    """
    builders = {
        "horn": horn,
        "tube": tube,
        "strip": strip,
        "cylinder": cylinder,
        "paraboloid": paraboloid,
        "torus": torus,
        "genus_g": genus_g,
        "moebius_band": moebius_band,
        "sphere": sphere,
    }
    if family not in builders:
        raise BadParams(f"unknown surface family {family!r}; "
                        f"choose from {', '.join(FAMILIES)}")
    return builders[family](**params)


# -- surfaces of revolution --------------------------------------------------

def _ring_surface(zs, radii, n_angular, apex=None, marks=None):
    """Stacked rings of ``n_angular`` vertices, optional apex fan at the start."""
    phi = np.linspace(0.0, 2.0 * np.pi, n_angular, endpoint=False)
    cos, sin = np.cos(phi), np.sin(phi)
    rings = np.stack([
        np.outer(radii, cos).ravel(),
        np.outer(radii, sin).ravel(),
        np.repeat(zs, n_angular),
    ], axis=1)
    verts = rings
    base = 0
    tris = []
    if apex is not None:
        verts = np.vstack([np.asarray(apex, dtype=float), rings])
        base = 1
        nxt = (np.arange(n_angular) + 1) % n_angular
        for j in range(n_angular):
            tris.append((0, base + j, base + nxt[j]))
    n_rings = len(zs)
    for i in range(n_rings - 1):
        row, row2 = base + i * n_angular, base + (i + 1) * n_angular
        for j in range(n_angular):
            jn = (j + 1) % n_angular
            tris.append((row + j, row2 + j, row2 + jn))
            tris.append((row + j, row2 + jn, row + jn))
    mesh = Mesh(verts, np.array(tris, dtype=np.int64), marks or {})
    return mesh, base


def horn(beta=2.0, z_max=1.0, n_axial=200, n_angular=200,
         z_min_frac=1e-4) -> Mesh:
    """The horn x^2+y^2 = z^(2*beta), 0 <= z <= z_max, apex included."""
    beta = float(beta)
    if beta < 1:
        raise BadParams(f"horn exponent must be >= 1, got {beta:g}")
    if n_axial < 2 or n_angular < 3 or z_max <= 0:
        raise BadParams("bad horn resolution")
    zs = np.geomspace(z_max * z_min_frac, z_max, n_axial)
    mesh, _ = _ring_surface(zs, zs ** beta, n_angular, apex=(0.0, 0.0, 0.0))
    mesh.boundary_marks[0] = "apex"
    return mesh


def tube(beta=0.5, z_min=1.0, z_max=512.0, n_axial=200, n_angular=200) -> Mesh:
    """The tube x^2+y^2 = z^(2*beta), z_min <= z <= z_max (beta <= 1)."""
    beta = float(beta)
    if beta > 1:
        raise BadParams(f"tube exponent must be <= 1, got {beta:g}")
    if z_min <= 0 or z_max <= z_min or n_axial < 2 or n_angular < 3:
        raise BadParams("bad tube parameters")
    zs = np.geomspace(z_min, z_max, n_axial)
    mesh, base = _ring_surface(zs, zs ** beta, n_angular)
    for j in range(n_angular):
        mesh.boundary_marks[base + j] = "base"
        mesh.boundary_marks[base + (n_axial - 1) * n_angular + j] = "far"
    return mesh


def cylinder(radius=1.0, half_length=8.0, n_axial=128, n_angular=128) -> Mesh:
    """Right cylinder x^2+y^2 = radius^2, |z| <= half_length: two ends."""
    if radius <= 0 or half_length <= 0 or n_axial < 2 or n_angular < 3:
        raise BadParams("bad cylinder parameters")
    zs = np.linspace(-half_length, half_length, n_axial)
    mesh, base = _ring_surface(zs, np.full(n_axial, float(radius)), n_angular)
    for j in range(n_angular):
        mesh.boundary_marks[base + j] = "end0"
        mesh.boundary_marks[base + (n_axial - 1) * n_angular + j] = "end1"
    return mesh


def paraboloid(z_max=64.0, n_axial=160, n_angular=160) -> Mesh:
    """The paraboloid z = x^2 + y^2 up to height z_max, apex included."""
    if z_max <= 0 or n_axial < 2 or n_angular < 3:
        raise BadParams("bad paraboloid parameters")
    rho = np.geomspace(np.sqrt(z_max) * 1e-3, np.sqrt(z_max), n_axial)
    mesh, _ = _ring_surface(rho ** 2, rho, n_angular, apex=(0.0, 0.0, 0.0))
    return mesh


# -- planar strip -------------------------------------------------------------

def _strip_x_grid(beta, x_min, x_max, n_x, n_y):
    """x samples whose cells are near-square where the strip is thick.

    The step targets the local cell height x^beta/(n_y-1) so geodesic
    distortion stays low where it matters; a geometric floor bounds the
    total count by roughly n_x where aspect-1 cells would be unaffordable
    (very thin tails).
    """
    g = np.log(x_max / x_min) / max(0.8 * n_x, 8.0)
    xs = [x_min]
    while xs[-1] < x_max and len(xs) < n_x:
        x = xs[-1]
        dx = max(x ** beta / (n_y - 1), g * x)
        xs.append(min(x + dx, x_max))
    if xs[-1] < x_max:
        xs.append(x_max)
    return np.array(xs)


def strip(beta=-1.0, x_min=1.0, x_max=1000.0, n_x=4000, n_y=24) -> Mesh:
    """The planar strip x_min <= x <= x_max, 0 <= y <= x^beta (beta <= 1).

    ``n_x`` caps the number of x samples; the actual grid adapts its
    spacing to keep cells near-square where the strip is thick.  Boundary
    marks tag the two arcs: "arc_lower" (y = 0), "arc_upper" (y = x^beta).
    """
    beta = float(beta)
    if beta > 1:
        raise BadParams(f"strip exponent must be <= 1, got {beta:g}")
    if x_min <= 0 or x_max <= x_min or n_x < 2 or n_y < 2:
        raise BadParams("bad strip parameters")
    xs = _strip_x_grid(beta, x_min, x_max, n_x, n_y)
    ss = np.linspace(0.0, 1.0, n_y)
    X, S = np.meshgrid(xs, ss, indexing="ij")
    verts = np.stack([X.ravel(), (S * X ** beta).ravel()], axis=1)
    tris = []
    for i in range(len(xs) - 1):
        for j in range(n_y - 1):
            a = i * n_y + j
            b = (i + 1) * n_y + j
            tris.append((a, b, b + 1))
            tris.append((a, b + 1, a + 1))
    marks = {}
    for i in range(len(xs)):
        marks[i * n_y] = "arc_lower"
        marks[i * n_y + n_y - 1] = "arc_upper"
    return Mesh(verts, np.array(tris, dtype=np.int64), marks)


def disc(radius=1.0, n_rings=16) -> Mesh:
    """Flat round disc in R^2: hexagonal rings, Delaunay-triangulated.

    Ring i carries 6i points, so cells stay near-equilateral from center to
    rim.  Not one of the model families; used as the convex planar reference
    for distance checks.
    """
    from scipy.spatial import Delaunay

    if radius <= 0 or n_rings < 2:
        raise BadParams("bad disc parameters")
    pts = [(0.0, 0.0)]
    for i in range(1, n_rings + 1):
        r = radius * i / n_rings
        phi = np.linspace(0.0, 2.0 * np.pi, 6 * i, endpoint=False)
        phi += (i % 2) * np.pi / (6 * i)
        pts.extend(zip(r * np.cos(phi), r * np.sin(phi)))
    verts = np.array(pts)
    tris = Delaunay(verts).simplices
    return Mesh(verts, np.asarray(tris, dtype=np.int64))


# -- closed surfaces ----------------------------------------------------------

def sphere(radius=1.0, n_theta=64, n_phi=64, center=(0.0, 0.0, 0.0),
           polar_refine=None) -> Mesh:
    """Round sphere; vertex 0 is the north pole, vertex 1 the south pole.

    ``polar_refine`` grades the polar-angle grid geometrically down to the
    given minimum angle at both poles (used when punctures sit there and the
    nearby rings must stay resolved).
    """
    if radius <= 0 or n_theta < 4 or n_phi < 3:
        raise BadParams("bad sphere parameters")
    if polar_refine is None:
        thetas = np.linspace(0.0, np.pi, n_theta + 1)[1:-1]
    else:
        if not 0 < polar_refine < np.pi / 2:
            raise BadParams("polar_refine must lie in (0, pi/2)")
        half = np.geomspace(polar_refine, np.pi / 2, (n_theta + 1) // 2)
        thetas = np.concatenate([half[:-1], [np.pi / 2], np.pi - half[:-1][::-1]])
    phi = np.linspace(0.0, 2.0 * np.pi, n_phi, endpoint=False)
    T, P = np.meshgrid(thetas, phi, indexing="ij")
    pts = np.stack([
        np.sin(T) * np.cos(P),
        np.sin(T) * np.sin(P),
        np.cos(T) * np.ones_like(P),
    ], axis=-1).reshape(-1, 3)
    north = np.array([[0.0, 0.0, 1.0]])
    south = np.array([[0.0, 0.0, -1.0]])
    verts = radius * np.vstack([north, south, pts]) + np.asarray(center, float)
    n_rings = len(thetas)
    tris = []
    ring = lambda i, j: 2 + i * n_phi + (j % n_phi)
    for j in range(n_phi):
        tris.append((0, ring(0, j), ring(0, j + 1)))
        tris.append((1, ring(n_rings - 1, j + 1), ring(n_rings - 1, j)))
    for i in range(n_rings - 1):
        for j in range(n_phi):
            tris.append((ring(i, j), ring(i + 1, j), ring(i + 1, j + 1)))
            tris.append((ring(i, j), ring(i + 1, j + 1), ring(i, j + 1)))
    return Mesh(verts, np.array(tris, dtype=np.int64))


def _wrapped_grid_tris(nu, nv, vertex_id):
    tris = []
    for i in range(nu):
        for j in range(nv):
            a = vertex_id(i, j)
            b = vertex_id(i + 1, j)
            c = vertex_id(i + 1, j + 1)
            d = vertex_id(i, j + 1)
            tris.append((a, b, c))
            tris.append((a, c, d))
    return tris


def torus(ring_radius=2.0, tube_radius=0.6, n_u=96, n_v=48,
          refine_toward=None, min_step=None) -> Mesh:
    """Torus of revolution; optional geometric grading toward a (u0, v0)
    grid point (used when a puncture sits there)."""
    if not 0 < tube_radius < ring_radius or n_u < 3 or n_v < 3:
        raise BadParams("bad torus parameters")
    if refine_toward is None:
        us = np.linspace(0.0, 2.0 * np.pi, n_u, endpoint=False)
        vs = np.linspace(0.0, 2.0 * np.pi, n_v, endpoint=False)
    else:
        u0, v0 = refine_toward
        step = min_step if min_step is not None else 1e-3
        us = _graded_circle(n_u, u0, step)
        vs = _graded_circle(n_v, v0, step)
    U, V = np.meshgrid(us, vs, indexing="ij")
    w = ring_radius + tube_radius * np.cos(V)
    verts = np.stack([w * np.cos(U), w * np.sin(U),
                      tube_radius * np.sin(V)], axis=-1).reshape(-1, 3)
    nu, nv = len(us), len(vs)
    vid = lambda i, j: (i % nu) * nv + (j % nv)
    return Mesh(verts, np.array(_wrapped_grid_tris(nu, nv, vid), dtype=np.int64))


def _graded_circle(n, focus, min_step):
    """Angles on the circle clustered geometrically around ``focus``."""
    half = max(3, n // 2)
    offsets = np.geomspace(min_step, np.pi, half)
    angles = np.concatenate([[focus], focus + offsets[:-1], focus - offsets[:-1],
                             [focus + np.pi]])
    return np.sort(np.mod(angles, 2.0 * np.pi))


def moebius_band(ring_radius=2.0, width=0.8, n_u=128, n_v=16) -> Mesh:
    """Moebius band in R^3: half-twisted strip around a circle."""
    if width <= 0 or ring_radius <= width or n_u < 3 or n_v < 2:
        raise BadParams("bad moebius parameters")
    us = np.linspace(0.0, 2.0 * np.pi, n_u, endpoint=False)
    ss = np.linspace(-width, width, n_v)
    U, S = np.meshgrid(us, ss, indexing="ij")
    w = ring_radius + S * np.cos(U / 2.0)
    verts = np.stack([w * np.cos(U), w * np.sin(U),
                      S * np.sin(U / 2.0)], axis=-1).reshape(-1, 3)

    def vid(i, j):
        if i == n_u:  # seam: the band re-enters with the width flipped
            return vid(0, n_v - 1 - j)
        return i * n_v + j

    tris = []
    for i in range(n_u):
        for j in range(n_v - 1):
            a, b = vid(i, j), vid(i + 1, j)
            c, d = vid(i + 1, j + 1), vid(i, j + 1)
            tris.append((a, b, c))
            tris.append((a, c, d))
    marks = {}
    for i in range(n_u):
        marks[vid(i, 0)] = "rim"
        marks[vid(i, n_v - 1)] = "rim"
    return Mesh(verts, np.array(tris, dtype=np.int64), marks)


def klein_bottle(ring_radius=2.0, tube_radius=0.6, n_u=96, n_v=48) -> Mesh:
    """Klein bottle embedded in R^4 (figure-eight-free, injective)."""
    if not 0 < tube_radius < ring_radius or n_u < 3 or n_v < 3:
        raise BadParams("bad klein bottle parameters")
    us = np.linspace(0.0, 2.0 * np.pi, n_u, endpoint=False)
    vs = np.linspace(0.0, 2.0 * np.pi, n_v, endpoint=False)
    U, V = np.meshgrid(us, vs, indexing="ij")
    w = ring_radius + tube_radius * np.cos(V)
    verts = np.stack([
        w * np.cos(U),
        w * np.sin(U),
        tube_radius * np.sin(V) * np.cos(U / 2.0),
        tube_radius * np.sin(V) * np.sin(U / 2.0),
    ], axis=-1).reshape(-1, 4)

    def vid(i, j):
        if i >= n_u:  # seam identification (u, v) ~ (u + 2pi, -v)
            return vid(i - n_u, (n_v - j) % n_v)
        return i * n_v + (j % n_v)

    return Mesh(verts, np.array(_wrapped_grid_tris(n_u, n_v, vid),
                                dtype=np.int64))


def projective_plane(n_theta=48, n_phi=48) -> Mesh:
    """Projective plane in R^4: antipodal weld of a symmetric sphere mesh
    pushed through the even map (xy, xz, yz, x^2 - y^2)."""
    if n_theta % 2 or n_phi % 2:
        raise BadParams("projective plane needs even resolutions")
    # antipodally symmetric sphere triangulation: quad diagonals flip
    # orientation across the equator so the triangle set is invariant
    thetas = np.linspace(0.0, np.pi, n_theta + 1)[1:-1]
    phi = np.linspace(0.0, 2.0 * np.pi, n_phi, endpoint=False)
    T, P = np.meshgrid(thetas, phi, indexing="ij")
    pts = np.stack([np.sin(T) * np.cos(P), np.sin(T) * np.sin(P),
                    np.cos(T) * np.ones_like(P)], axis=-1).reshape(-1, 3)
    verts3 = np.vstack([[0.0, 0.0, 1.0], [0.0, 0.0, -1.0], pts])
    n_rings = len(thetas)
    ring = lambda i, j: 2 + i * n_phi + (j % n_phi)
    tris = []
    for j in range(n_phi):
        tris.append((0, ring(0, j), ring(0, j + 1)))
        tris.append((1, ring(n_rings - 1, j + 1), ring(n_rings - 1, j)))
    for i in range(n_rings - 1):
        for j in range(n_phi):
            if i < n_rings // 2:
                tris.append((ring(i, j), ring(i + 1, j), ring(i + 1, j + 1)))
                tris.append((ring(i, j), ring(i + 1, j + 1), ring(i, j + 1)))
            else:
                tris.append((ring(i, j), ring(i + 1, j), ring(i, j + 1)))
                tris.append((ring(i + 1, j), ring(i + 1, j + 1), ring(i, j + 1)))

    half = n_phi // 2

    def antipode(v):
        if v == 0:
            return 1
        if v == 1:
            return 0
        i, j = divmod(v - 2, n_phi)
        return ring(n_rings - 1 - i, j + half)

    rep = {v: min(v, antipode(v)) for v in range(len(verts3))}
    kept = sorted({r for r in rep.values()})
    new_id = {old: k for k, old in enumerate(kept)}
    x, y, z = verts3[kept].T
    verts4 = np.stack([x * y, x * z, y * z, x * x - y * y], axis=1)
    seen = set()
    out = []
    for a, b, c in tris:
        t = tuple(sorted((new_id[rep[a]], new_id[rep[b]], new_id[rep[c]])))
        if t not in seen:
            seen.add(t)
            out.append(t)
    return Mesh(verts4, np.array(out, dtype=np.int64))


def genus_g(genus=2, voxel=0.07, ring_radius=1.5, tube_radius=0.45,
            spacing=2.95) -> Mesh:
    """Closed orientable surface of the given genus.

    genus 0 and 1 are parametric (sphere, torus); higher genus is extracted
    by marching cubes from a chain of overlapping solid tori whose pairwise
    intersections are single blobs, so each overlap adds exactly one handle.
    """
    if genus < 0:
        raise BadParams("genus must be >= 0")
    if genus == 0:
        return sphere()
    if genus == 1:
        return torus()
    from skimage.measure import marching_cubes

    centers = [i * spacing for i in range(genus)]
    pad = ring_radius + tube_radius + 4 * voxel
    xs = np.arange(-pad, centers[-1] + pad, voxel)
    ys = np.arange(-pad, pad, voxel)
    zs = np.arange(-tube_radius - 4 * voxel, tube_radius + 4 * voxel, voxel)
    X, Y, Z = np.meshgrid(xs, ys, zs, indexing="ij")
    field = np.full_like(X, np.inf)
    for cx in centers:
        rho = np.sqrt((X - cx) ** 2 + Y ** 2)
        field = np.minimum(field,
                           (rho - ring_radius) ** 2 + Z ** 2 - tube_radius ** 2)
    verts, faces, _, _ = marching_cubes(field, level=0.0,
                                        spacing=(voxel, voxel, voxel))
    return Mesh(verts, faces.astype(np.int64))

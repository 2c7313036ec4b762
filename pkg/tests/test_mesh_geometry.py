import math
from fractions import Fraction

import numpy as np
import pytest

from horncode.errors import (
    BadParams,
    Disconnected,
    LevelSetEmpty,
    NonManifold,
    TooFewFarSamples,
)
from horncode.mesh_geometry import (
    Mesh,
    cone_directions,
    cylinder,
    generate_surface,
    genus_g,
    geodesic_distances,
    growth_exponent,
    horn,
    inner_distance,
    klein_bottle,
    link_length,
    lne_constant,
    load_mesh,
    merge_meshes,
    mesh_topology,
    moebius_band,
    projective_plane,
    save_mesh,
    sphere,
    strip,
    subdivide,
    torus,
    tube,
)

F = Fraction


def flat_grid(n, spacing=1.0):
    xs, ys = np.meshgrid(np.arange(n) * spacing, np.arange(n) * spacing,
                         indexing="ij")
    verts = np.stack([xs.ravel(), ys.ravel()], axis=1)
    tris = []
    for i in range(n - 1):
        for j in range(n - 1):
            a, b = i * n + j, (i + 1) * n + j
            tris.append((a, b, b + 1))
            tris.append((a, b + 1, a + 1))
    return Mesh(verts, np.array(tris))


def flat_disc(radius=10.0, n_rings=24):
    from horncode.mesh_geometry.generators import disc

    return disc(radius=radius, n_rings=n_rings)


class TestGenerators:
    def test_unknown_family(self):
        with pytest.raises(BadParams):
            generate_surface("helicoid")

    def test_horn_rejects_small_beta(self):
        with pytest.raises(BadParams):
            generate_surface("horn", beta=0.5)

    def test_tube_rejects_large_beta(self):
        with pytest.raises(BadParams):
            generate_surface("tube", beta=1.5)

    def test_horn_lies_on_surface(self):
        mesh = generate_surface("horn", beta=2.0, n_axial=40, n_angular=24)
        x, y, z = mesh.vertices[1:].T  # skip apex
        assert np.allclose(x ** 2 + y ** 2, z ** 4, rtol=1e-9)

    def test_tube_marks(self):
        mesh = generate_surface("tube", beta=0.5, n_axial=20, n_angular=12)
        tags = set(mesh.boundary_marks.values())
        assert tags == {"base", "far"}

    def test_strip_region(self):
        mesh = generate_surface("strip", beta=-1.0, x_min=1.0, x_max=100.0,
                                n_x=500, n_y=10)
        x, y = mesh.vertices.T
        assert (y >= -1e-12).all() and (y <= x ** -1.0 + 1e-9).all()
        assert x.max() == 100.0
        assert set(mesh.boundary_marks.values()) == {"arc_lower", "arc_upper"}


class TestTopology:
    def test_torus(self):
        assert mesh_topology(torus(n_u=48, n_v=24)) == (1, 1, 0)

    def test_sphere(self):
        assert mesh_topology(sphere(n_theta=24, n_phi=24)) == (1, 0, 0)

    def test_moebius(self):
        theta, crosscaps, b = mesh_topology(moebius_band(n_u=64, n_v=8))
        assert (theta, crosscaps, b) == (-1, 1, 1)

    def test_klein_bottle(self):
        assert mesh_topology(klein_bottle(n_u=48, n_v=24)) == (-1, 2, 0)

    def test_projective_plane(self):
        assert mesh_topology(projective_plane(n_theta=24, n_phi=24)) == (-1, 1, 0)

    def test_cylinder(self):
        assert mesh_topology(cylinder(n_axial=16, n_angular=24)) == (1, 0, 2)

    @pytest.mark.parametrize("g", [2, 3])
    def test_genus_g(self, g):
        assert mesh_topology(genus_g(g)) == (1, g, 0)

    def test_invariant_under_permutation(self):
        mesh = torus(n_u=24, n_v=12)
        rng = np.random.default_rng(3)
        perm = rng.permutation(mesh.n_vertices)
        inv = np.empty_like(perm)
        inv[perm] = np.arange(len(perm))
        tris = inv[mesh.triangles]
        rng.shuffle(tris)
        shuffled = Mesh(mesh.vertices[perm], tris)
        assert mesh_topology(shuffled) == mesh_topology(mesh)

    def test_nonmanifold_detected(self):
        # three triangles sharing one edge
        verts = np.array([[0, 0, 0], [1, 0, 0], [0, 1, 0], [0, -1, 0],
                          [0, 0, 1]], dtype=float)
        tris = np.array([[0, 1, 2], [0, 1, 3], [0, 1, 4]])
        with pytest.raises(NonManifold):
            mesh_topology(Mesh(verts, tris))

    def test_disconnected_rejected(self):
        two = merge_meshes([sphere(n_theta=8, n_phi=8),
                            sphere(center=(5, 0, 0), n_theta=8, n_phi=8)])
        with pytest.raises(NonManifold):
            mesh_topology(two)


class TestInnerDistance:
    def test_zero_on_same_vertex(self):
        mesh = flat_grid(5)
        assert inner_distance(mesh, 7, 7) == 0.0

    def test_flat_grid_distortion_bound(self):
        mesh = flat_grid(41)
        center = (41 // 2) * 41 + 41 // 2
        d = geodesic_distances(mesh, [center])[0]
        eu = np.linalg.norm(mesh.vertices - mesh.vertices[center], axis=1)
        mask = eu > 0
        ratio = d[mask] / eu[mask]
        assert ratio.max() <= 1.0131
        assert ratio.min() >= 1.0 - 1e-12

    def test_never_below_euclid(self):
        mesh = torus(n_u=24, n_v=12)
        d = geodesic_distances(mesh, [0])[0]
        eu = np.linalg.norm(mesh.vertices - mesh.vertices[0], axis=1)
        assert (d >= eu - 1e-9).all()

    def test_cylinder_antipodal_geodesic(self):
        mesh = cylinder(radius=1.0, half_length=2.0, n_axial=32, n_angular=128)
        # same cross-section ring, opposite angular positions
        p = 32 * 0 + 16 * 128 // 128  # placeholder, replaced below
        ring_start = 16 * 128
        p, q = ring_start, ring_start + 64
        d = inner_distance(mesh, p, q)
        assert abs(d - math.pi) / math.pi <= 0.05

    def test_metric_axioms_on_random_triples(self):
        mesh = torus(n_u=24, n_v=16)
        rng = np.random.default_rng(0x5EED)
        subset = rng.choice(mesh.n_vertices, size=24, replace=False)
        rows = geodesic_distances(mesh, subset)
        lut = {int(v): i for i, v in enumerate(subset)}
        for _ in range(500):
            p, q, r = rng.choice(subset, size=3)
            dpq = rows[lut[int(p)], int(q)]
            dqp = rows[lut[int(q)], int(p)]
            assert dpq == dqp  # exact: weights live on a dyadic grid
            dpr = rows[lut[int(p)], int(r)]
            dqr = rows[lut[int(q)], int(r)]
            assert dpr <= dpq + dqr  # exact triangle inequality
            if p != q:
                assert dpq > 0.0

    def test_disconnected_raises(self):
        two = merge_meshes([sphere(n_theta=8, n_phi=8),
                            sphere(center=(5, 0, 0), n_theta=8, n_phi=8)])
        with pytest.raises(Disconnected):
            inner_distance(two, 0, two.n_vertices - 1)

    def test_refinement_monotone_on_developable_families(self):
        # regular flat and developable grids: every coarse strip shortcut
        # halves into two valid fine ones, so refining can only shorten
        # paths (up to one weight quantum per hop)
        for mesh in (flat_grid(9),
                     cylinder(half_length=1.0, n_axial=9, n_angular=16)):
            fine = subdivide(mesh)
            n = mesh.n_vertices
            rng = np.random.default_rng(1)
            sources = rng.choice(n, size=4, replace=False)
            coarse_d = geodesic_distances(mesh, sources)
            fine_d = geodesic_distances(fine, sources)[:, :n]
            assert (fine_d <= coarse_d + 1e-9).all()
            assert (fine_d >= coarse_d * 0.95 - 1e-9).all()


class TestLne:
    def test_flat_disc(self):
        disc = flat_disc()
        assert lne_constant(disc, 2000) <= 1.02

    def test_convex_strip(self):
        mesh = strip(beta=0.5, x_max=100.0, n_x=2000, n_y=24)
        assert lne_constant(mesh, 10000) <= 1.05

    def test_thin_strip_paper_bound(self):
        mesh = strip(beta=-1.0, x_max=1000.0, n_x=2500, n_y=16)
        assert lne_constant(mesh, 10000) <= 2.05

    def test_at_least_one(self):
        assert lne_constant(flat_grid(7), 100) >= 1.0


class TestLinkLength:
    def test_sphere_great_circle(self):
        # level |x - north_pole| = sqrt(2) on the unit sphere is the equator
        mesh = sphere(n_theta=64, n_phi=64)
        out = link_length(mesh, (0.0, 0.0, 1.0), math.sqrt(2.0))
        assert out.length == pytest.approx(2 * math.pi, rel=0.02)
        assert out.components == 1

    def test_horn_quadratic_link(self):
        mesh = horn(beta=2.0, n_axial=200, n_angular=200)
        r = 2.0 ** -5
        out = link_length(mesh, (0.0, 0.0, 0.0), r)
        # oracle: circumference 2*pi*z^2 with z ~ r at small radii
        assert out.length == pytest.approx(2 * math.pi * r ** 2, rel=0.05)

    def test_edge_of_spheres_two_components(self):
        pair = merge_meshes([
            sphere(center=(-1.0, 0.0, 0.0), n_theta=48, n_phi=48),
            sphere(center=(1.0, 0.0, 0.0), n_theta=48, n_phi=48),
        ])
        out = link_length(pair, (0.0, 0.0, 0.0), 0.35)
        assert out.components == 2

    def test_empty_level_set(self):
        with pytest.raises(LevelSetEmpty):
            link_length(sphere(n_theta=12, n_phi=12), (0.0, 0.0, 0.0), 9.0)


class TestGrowthExponent:
    @pytest.mark.parametrize("beta", [1.0, 1.5, 2.0])
    def test_horn_exponents(self, beta):
        mesh = horn(beta=beta, n_axial=200, n_angular=200)
        radii = [2.0 ** -k for k in range(2, 9)]
        est = growth_exponent(mesh, (0.0, 0.0, 0.0), radii)
        assert abs(est.slope - beta) <= 0.1

    @pytest.mark.parametrize("beta", [1.0, 0.5, 0.0])
    def test_tube_exponents(self, beta):
        mesh = tube(beta=beta, z_min=1.0, z_max=1024.0, n_axial=200,
                    n_angular=200)
        radii = [2.0 ** k for k in range(3, 9)]
        est = growth_exponent(mesh, (0.0, 0.0, 0.0), radii)
        assert abs(est.slope - beta) <= 0.1

    def test_cylinder_end_is_zero(self):
        mesh = tube(beta=0.0, z_min=1.0, z_max=1024.0, n_axial=160,
                    n_angular=160)
        radii = [2.0 ** k for k in range(3, 9)]
        est = growth_exponent(mesh, (0.0, 0.0, 0.0), radii)
        assert est.rounded == F(0)

    def test_paraboloid_end(self):
        mesh = tube(beta=0.5, z_min=1.0, z_max=1024.0, n_axial=200,
                    n_angular=200)
        radii = [2.0 ** k for k in range(3, 9)]
        est = growth_exponent(mesh, (0.0, 0.0, 0.0), radii)
        assert est.rounded == F(1, 2)


class TestConeDirections:
    def test_cone_is_two_dimensional(self):
        mesh = tube(beta=1.0, z_min=1.0, z_max=512.0, n_axial=96, n_angular=96)
        assert cone_directions(mesh).cone_dim == 2

    def test_paraboloid_tube_collapses(self):
        mesh = tube(beta=0.5, z_min=1.0, z_max=4096.0, n_axial=96, n_angular=96)
        summary = cone_directions(mesh)
        assert summary.cone_dim < 2
        assert summary.direction_dim == 0

    def test_one_sided_cylinder_single_cluster(self):
        mesh = tube(beta=0.0, z_min=1.0, z_max=4096.0, n_axial=96, n_angular=96)
        summary = cone_directions(mesh)
        assert summary.count_eps == 1
        assert summary.direction_dim == 0

    def test_too_few_far_samples(self):
        mesh = sphere(n_theta=12, n_phi=12)
        with pytest.raises(TooFewFarSamples):
            cone_directions(mesh, R_grid=[50.0])

    def test_curve_sampler_directions(self):
        from horncode.contact import parse_curve

        summary = cone_directions(parse_curve("t; t^(1/2)"))
        assert summary.direction_dim == 0


class TestMeshIO:
    def test_off_round_trip(self, tmp_path):
        mesh = tube(beta=0.5, n_axial=10, n_angular=8)
        path = tmp_path / "tube.off"
        save_mesh(mesh, path)
        back = load_mesh(path)
        assert np.allclose(back.vertices, mesh.vertices)
        assert np.array_equal(back.triangles, mesh.triangles)
        assert back.boundary_marks == mesh.boundary_marks

    def test_high_dimensional_vertices(self, tmp_path):
        verts = np.arange(24, dtype=float).reshape(4, 6)
        mesh = Mesh(verts, np.array([[0, 1, 2], [0, 2, 3]]))
        path = tmp_path / "hd.off"
        save_mesh(mesh, path)
        back = load_mesh(path)
        assert back.ambient_dim == 6
        assert np.allclose(back.vertices, verts)

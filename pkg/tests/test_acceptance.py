"""Acceptance suite: one test per criterion, at the stated tolerances.

Run with ``pytest tests/test_acceptance.py -v``; a summary table with one
pass/fail line per criterion prints at the end of the session.
"""

import io
import math
import random
import time
from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest

from _code_samples import random_code, scrambled
from horncode.cli import run_command
from horncode.code_model import (
    canonical_json,
    canonicalize,
    code_equiv,
    curve_code,
    load_code,
    make_code,
    make_component_code,
)
from horncode.contact import estimate_contact, parse_curve
from horncode.mesh_geometry import (
    cone_directions,
    cylinder,
    geodesic_distances,
    growth_exponent,
    horn,
    inner_distance,
    lne_constant,
    mesh_topology,
    moebius_band,
    sphere,
    strip,
    torus,
    tube,
)
from horncode.normal_forms import NormalFormSpec, verify_normal_form
from horncode.strata import code_from_strata, glue_strips, load_strata, tube_from_strips

F = Fraction
from horncode.corpus import corpus_dir

CORPUS = Path(str(corpus_dir()))
BETAS = (F(1), F(1, 2), F(0), F(-1, 2), F(-1))


@pytest.fixture(scope="module")
def contact_estimates():
    """Estimates for the graph-arc pairs, shared by criteria 1 and 2."""
    start = time.monotonic()
    axis = parse_curve("t; 0")
    out = {}
    for beta in BETAS:
        text = (f"t; t^({beta.numerator}/{beta.denominator})"
                if beta.denominator > 1 else f"t; t^({beta.numerator})")
        out[beta] = estimate_contact(axis, parse_curve(text),
                                     Ks=(2.0, 3.0, 4.0))
    return out, time.monotonic() - start


@pytest.fixture(scope="module")
def big_cylinder():
    """256^2 cylinder with its geodesic rows, shared inside criterion 10."""
    mesh = cylinder(radius=1.0, half_length=2.0, n_axial=256, n_angular=256)
    return mesh


def test_01_contact_recovery(contact_estimates):
    estimates, elapsed = contact_estimates
    for beta, est in estimates.items():
        assert est.rounded == beta, f"beta={beta}: rounded to {est.rounded}"
        assert est.residual <= 0.05, f"beta={beta}: residual {est.residual}"
    assert elapsed < 10.0, f"contact suite took {elapsed:.1f}s"


def test_02_contact_k_independence(contact_estimates):
    estimates, _ = contact_estimates
    for beta, est in estimates.items():
        gap = abs(est.per_K[2.0] - est.per_K[4.0])
        assert gap <= 0.05, f"beta={beta}: K gap {gap}"


def test_03_identical_curves_neg_infinity():
    est = estimate_contact(parse_curve("t; 0"), parse_curve("t; 0"))
    assert est.neg_infinity
    assert est.slope is None and est.rounded is None


def test_04_gluing_algebra_laws():
    rng = random.Random(0x5EED)
    for _ in range(1000):
        chain = [min(F(rng.randint(-8, 2), rng.choice([1, 2, 3, 4, 5, 7])), F(1))
                 for _ in range(rng.randint(1, 8))]
        shuffled = list(chain)
        rng.shuffle(shuffled)
        total = glue_strips(chain)
        # order independence, exact
        assert glue_strips(shuffled) == total
        # associativity of the fold, exact
        cut = rng.randint(1, len(chain))
        left, right = chain[:cut], chain[cut:]
        if right:
            assert glue_strips([glue_strips(left), glue_strips(right)]) == total
        # idempotence, exact
        assert glue_strips(chain + [total]) == total
        # chains and cycles agree
        assert tube_from_strips(chain) == total


def test_05_paper_corpus_reproduced():
    names = ["a_cylinder", "b_moebius_band", "c_global_horn", "d_cubic_curve",
             "e_paraboloid", "f_torus", "g_klein_bottle", "h_edge_of_spheres",
             "i_cayley_surface"]
    for name in names:
        computed = code_from_strata(load_strata(CORPUS / f"{name}.strata.json"))
        expected = load_code(CORPUS / f"{name}.code.json")
        witness = code_equiv(computed, expected)
        assert witness is not None and witness.maps_exactly(computed, expected), name
        assert canonical_json(canonicalize(computed)) == \
            canonical_json(canonicalize(expected)), name
    cayley = code_from_strata(load_strata(CORPUS / "i_cayley_surface.strata.json"))
    assert len(cayley.components) == 5
    assert len(cayley.singular_labels) == 4
    # the corpus runner itself exits 0
    rc = run_command(["corpus"], stdout=io.StringIO(), stderr=io.StringIO())
    assert rc == 0


def test_06_equivalence_laws():
    rng = random.Random(0x5EED)
    pairs_checked = []
    for _ in range(100):
        a = random_code(rng)
        b = scrambled(a, rng)
        c = scrambled(b, rng)
        # reflexive / symmetric / transitive, plus permutation and
        # relabeling invariance (b and c are scrambles of a)
        assert code_equiv(a, a) is not None
        w_ab, w_ba = code_equiv(a, b), code_equiv(b, a)
        assert w_ab is not None and w_ba is not None
        assert w_ab.maps_exactly(a, b) and w_ba.maps_exactly(b, a)
        assert code_equiv(b, c) is not None and code_equiv(a, c) is not None
        other = random_code(rng)
        pairs_checked += [(a, b), (a, c), (a, other)]
    # canonicalize agrees with the decision procedure on every pair tested
    for x, y in pairs_checked:
        same = code_equiv(x, y) is not None
        assert same == (canonical_json(canonicalize(x))
                        == canonical_json(canonicalize(y)))
    # torus vs Klein bottle differ exactly in theta
    torus_code = make_code([make_component_code(1, 1, [], {})])
    klein_code = make_code([make_component_code(-1, 1, [], {})])
    assert code_equiv(torus_code, klein_code) is None
    # edge of two spheres: self-equivalent under component swap + relabel
    sphere_c = make_component_code(1, 0, [], {"o": [1]})
    edge = make_code([sphere_c, sphere_c])
    swapped = make_code([
        make_component_code(1, 0, [], {"q": [1]}),
        make_component_code(1, 0, [], {"q": [1]}),
    ])
    w = code_equiv(edge, swapped)
    assert w is not None and w.maps_exactly(edge, swapped)


@pytest.mark.parametrize("beta", [1.0, 1.5, 2.0])
def test_07_horn_exponents(beta):
    start = time.monotonic()
    mesh = horn(beta=beta, z_max=1.0, n_axial=200, n_angular=200)
    radii = [2.0 ** -k for k in range(2, 9)]
    est = growth_exponent(mesh, (0.0, 0.0, 0.0), radii)
    elapsed = time.monotonic() - start
    assert abs(est.slope - beta) <= 0.1, f"slope {est.slope} vs {beta}"
    assert elapsed < 30.0, f"horn({beta}) took {elapsed:.1f}s"


@pytest.mark.parametrize("beta", [1.0, 0.5, 0.0])
def test_08_tube_exponents(beta):
    mesh = tube(beta=beta, z_min=1.0, z_max=1024.0, n_axial=200, n_angular=200)
    radii = [2.0 ** k for k in range(3, 9)]
    est = growth_exponent(mesh, (0.0, 0.0, 0.0), radii)
    assert abs(est.slope - beta) <= 0.1
    if beta == 0.0:  # cylinder end
        assert est.rounded == F(0)
    if beta == 0.5:  # paraboloid end
        assert est.rounded == F(1, 2)


def test_09_lne_bounds():
    convex = strip(beta=0.5, x_min=1.0, x_max=100.0, n_x=2000, n_y=24)
    value = lne_constant(convex, pair_budget=10000)
    assert value <= 1.05, f"T_1/2 constant {value}"
    thin = strip(beta=-1.0, x_min=1.0, x_max=1000.0, n_x=2500, n_y=16)
    value = lne_constant(thin, pair_budget=10000)
    assert value <= 2.05, f"T_-1 constant {value}"


def test_10_inner_distance_sanity(big_cylinder):
    mesh = big_cylinder
    ring = (256 // 2) * 256
    d = inner_distance(mesh, ring, ring + 128)
    assert abs(d - math.pi) / math.pi <= 0.05
    # metric axioms, exact, on 1000 random triples over a vertex subset
    rng = np.random.default_rng(0x5EED)
    subset = rng.choice(mesh.n_vertices, size=40, replace=False)
    rows = geodesic_distances(mesh, subset)
    lut = {int(v): i for i, v in enumerate(subset)}
    for _ in range(1000):
        p, q, r = (int(x) for x in rng.choice(subset, size=3))
        assert rows[lut[p], q] == rows[lut[q], p]
        assert rows[lut[p], r] <= rows[lut[p], q] + rows[lut[q], r]
        assert (rows[lut[p], q] == 0.0) == (p == q)


def test_11_topology_extraction():
    assert tuple(mesh_topology(torus(n_u=64, n_v=32))) == (1, 1, 0)
    assert tuple(mesh_topology(sphere(n_theta=48, n_phi=48))) == (1, 0, 0)
    topo = mesh_topology(moebius_band(n_u=96, n_v=12))
    assert topo.theta == -1
    assert topo.boundary_components == 1


def test_12_normal_forms():
    start = time.monotonic()
    for args in ((1, 0, ["1"]), (1, 1, ["1"]), (1, 0, ["1/2", "1"])):
        report = verify_normal_form(NormalFormSpec.build(*args))
        assert report.passed, report.to_text()
    elapsed = time.monotonic() - start
    assert elapsed < 120.0, f"normal forms took {elapsed:.1f}s"


def test_13_complex_curve_codes():
    cubic = curve_code([(1, 3)], {})
    assert cubic == make_code([make_component_code(1, 1, [1, 1, 1], {})])
    node = curve_code([(0, 1), (0, 1)], {"p": {0: 1, 1: 1}})
    assert node.sheet_total("p") == 2
    assert sorted(node.singular_labels) == ["p"]


def test_14_cone_dimension():
    cone = tube(beta=1.0, z_min=1.0, z_max=512.0, n_axial=96, n_angular=96)
    assert cone_directions(cone).cone_dim == 2
    parab = tube(beta=0.5, z_min=1.0, z_max=4096.0, n_axial=96, n_angular=96)
    assert cone_directions(parab).cone_dim < 2

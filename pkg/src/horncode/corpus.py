"""The reproducible check corpus: worked examples plus estimator suites.

`run_corpus` executes every symbolic example (the nine classical surfaces),
the equivalence and gluing laws on seeded random data, and scaled-down
numeric suites (contact, growth, LNE, geodesic, topology, cone dimension),
collecting one named CheckResult per claim.  Resolutions here favor a
sub-minute total; the acceptance test suite re-runs the expensive cases at
full resolution.
"""

from __future__ import annotations

import random
from fractions import Fraction
from importlib import resources

import numpy as np

from .code_model import canonical_json, canonicalize, code_equiv, load_code
from .contact import estimate_contact, parse_curve
from .mesh_geometry import (
    cone_directions,
    cylinder,
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
from .normal_forms import NormalFormSpec, verify_normal_form
from .report import CheckResult, RunReport, check_close, check_equal, check_true, file_digest
from .strata import code_from_strata, glue_strips, load_strata, tube_from_strips

F = Fraction

CORPUS_ENTRIES = (
    "a_cylinder", "b_moebius_band", "c_global_horn", "d_cubic_curve",
    "e_paraboloid", "f_torus", "g_klein_bottle", "h_edge_of_spheres",
    "i_cayley_surface",
)


def corpus_dir():
    return resources.files("horncode") / "data" / "corpus"


def run_corpus(seed: int = 0x5EED, command=("corpus",)) -> RunReport:
    report = RunReport(command=list(command), seed=seed)
    base = corpus_dir()
    for name in CORPUS_ENTRIES:
        report.inputs[f"{name}.strata.json"] = file_digest(
            base / f"{name}.strata.json")

    _check_strata_corpus(report, base)
    _check_equivalence_laws(report, seed)
    _check_gluing_laws(report, seed)
    _check_contact_suite(report)
    _check_growth_suite(report)
    _check_lne_suite(report, seed)
    _check_geodesic(report)
    _check_topology(report)
    _check_cone_dims(report)
    _check_normal_forms(report)
    return report


def _check_strata_corpus(report, base):
    for name in CORPUS_ENTRIES:
        spec = load_strata(base / f"{name}.strata.json")
        expected = load_code(base / f"{name}.code.json")
        computed = code_from_strata(spec)
        witness = code_equiv(computed, expected)
        exact = (witness is not None
                 and canonical_json(canonicalize(computed))
                 == canonical_json(canonicalize(expected)))
        report.add(check_true(f"corpus_{name}", exact))


def _random_code(rng):
    from .code_model import make_code, make_component_code

    pool = ["p1", "p2"][: rng.randint(1, 2)]
    comps, used = [], set()
    for _ in range(rng.randint(1, 3)):
        ends = sorted(min(F(rng.randint(-2, 2), rng.choice([1, 2, 3])), F(1))
                      for _ in range(rng.randint(0, 2)))
        attach = {}
        for lbl in pool:
            if rng.random() < 0.5:
                attach[lbl] = [1 + F(rng.randint(0, 2), 2)]
                used.add(lbl)
        comps.append(make_component_code(rng.choice([-1, 1]),
                                         rng.randint(0, 2), ends, attach))
    for lbl in pool:
        if lbl not in used:
            last = comps[-1]
            attach = dict(last.attachments) | {lbl: [F(1)]}
            comps[-1] = make_component_code(last.theta, last.genus,
                                            last.ends, attach)
    return make_code(comps)


def _scrambled(code, rng):
    from .code_model import make_code, make_component_code

    order = list(range(len(code.components)))
    rng.shuffle(order)
    names = sorted(code.singular_labels)
    rename = dict(zip(names, rng.sample([f"z{k}" for k in range(len(names))],
                                        len(names))))
    return make_code([
        make_component_code(c.theta, c.genus, c.ends,
                            {rename[l]: list(v) for l, v in c.attachments})
        for c in (code.components[i] for i in order)
    ])


def _check_equivalence_laws(report, seed):
    rng = random.Random(seed)
    laws_hold = True
    agreement = True
    for _ in range(25):
        a = _random_code(rng)
        b = _scrambled(a, rng)
        c = _scrambled(b, rng)
        laws_hold &= code_equiv(a, a) is not None
        laws_hold &= code_equiv(a, b) is not None
        laws_hold &= code_equiv(b, a) is not None
        laws_hold &= code_equiv(a, c) is not None
        other = _random_code(rng)
        same = code_equiv(a, other) is not None
        agreement &= same == (canonical_json(canonicalize(a))
                              == canonical_json(canonicalize(other)))
    report.add(check_true("equiv_laws_random", laws_hold))
    report.add(check_true("equiv_canonical_agreement", agreement))

    base = corpus_dir()
    torus_code = load_code(base / "f_torus.code.json")
    klein_code = load_code(base / "g_klein_bottle.code.json")
    report.add(check_true("equiv_torus_vs_klein_differ",
                          code_equiv(torus_code, klein_code) is None))
    edge = load_code(base / "h_edge_of_spheres.code.json")
    rng2 = random.Random(seed + 1)
    report.add(check_true("equiv_edge_of_spheres_swap",
                          code_equiv(edge, _scrambled(edge, rng2)) is not None))


def _check_gluing_laws(report, seed):
    rng = random.Random(seed)
    ok = True
    for _ in range(200):
        chain = [F(rng.randint(-6, 1), rng.choice([1, 2, 3, 4, 5]))
                 for _ in range(rng.randint(1, 7))]
        chain = [min(b, F(1)) for b in chain]
        shuffled = list(chain)
        rng.shuffle(shuffled)
        ok &= glue_strips(chain) == glue_strips(shuffled)
        ok &= glue_strips(chain) == tube_from_strips(chain)
        ok &= glue_strips(chain + [glue_strips(chain)]) == glue_strips(chain)
        cut = rng.randint(1, len(chain))
        left, right = chain[:cut], chain[cut:]
        if right:
            ok &= glue_strips([glue_strips(left), glue_strips(right)]) \
                == glue_strips(chain)
    report.add(check_true("gluing_max_fold_laws", ok))


def _check_contact_suite(report):
    for beta in (F(1), F(1, 2), F(0), F(-1, 2), F(-1)):
        text = (f"t; t^({beta.numerator}/{beta.denominator})"
                if beta.denominator > 1 else f"t; t^({beta.numerator})")
        est = estimate_contact(parse_curve("t; 0"), parse_curve(text))
        label = str(beta).replace("/", "_").replace("-", "m")
        report.add(check_true(
            f"contact_beta_{label}",
            est.rounded == beta and est.residual <= 0.05,
            detail=f"rounded={est.rounded} residual={est.residual:.3g}"))
    est = estimate_contact(parse_curve("t; 0"), parse_curve("t; t^(1/2)"),
                           Ks=(2.0, 4.0))
    report.add(check_close("contact_k_independence",
                           abs(est.per_K[2.0] - est.per_K[4.0]), 0.0, 0.05))
    same = estimate_contact(parse_curve("t; 0"), parse_curve("t; 0"))
    report.add(check_true("contact_identical_neg_infinity", same.neg_infinity))
    lines = estimate_contact(parse_curve("t; 0"), parse_curve("t; t"))
    report.add(check_equal("contact_transverse_rounds_to_one",
                           lines.rounded, F(1)))


def _check_growth_suite(report):
    for beta in (1.0, 1.5, 2.0):
        mesh = horn(beta=beta, n_axial=120, n_angular=120)
        est = growth_exponent(mesh, (0.0, 0.0, 0.0),
                              [2.0 ** -k for k in range(2, 9)])
        label = f"{beta:g}".replace(".", "_")
        report.add(check_close(f"horn_exponent_{label}", est.slope, beta, 0.1))
    for beta in (1.0, 0.5, 0.0):
        mesh = tube(beta=beta, z_min=1.0, z_max=1024.0, n_axial=120,
                    n_angular=120)
        est = growth_exponent(mesh, (0.0, 0.0, 0.0),
                              [2.0 ** k for k in range(3, 9)])
        label = f"{beta:g}".replace(".", "_")
        report.add(check_close(f"tube_exponent_{label}", est.slope, beta, 0.1))


def _check_lne_suite(report, seed):
    convex = strip(beta=0.5, x_max=100.0, n_x=2000, n_y=20)
    value = lne_constant(convex, 10000, seed=seed)
    report.add(_bounded_check("lne_strip_half", value, 1.05))
    thin = strip(beta=-1.0, x_max=1000.0, n_x=1800, n_y=12)
    value = lne_constant(thin, 10000, seed=seed)
    report.add(_bounded_check("lne_strip_minus_one", value, 2.05))


def _bounded_check(name, value, bound):
    return CheckResult(name, value, f"<= {bound:g}", None, value <= bound)


def _check_geodesic(report):
    mesh = cylinder(radius=1.0, half_length=2.0, n_axial=24, n_angular=128)
    ring = 12 * 128
    d = inner_distance(mesh, ring, ring + 64)
    report.add(check_close("cylinder_antipodal_geodesic", d, np.pi,
                           0.05 * np.pi))


def _check_topology(report):
    report.add(check_equal("topology_torus",
                           tuple(mesh_topology(torus(n_u=48, n_v=24))),
                           (1, 1, 0)))
    report.add(check_equal("topology_sphere",
                           tuple(mesh_topology(sphere(n_theta=32, n_phi=32))),
                           (1, 0, 0)))
    topo = mesh_topology(moebius_band(n_u=64, n_v=8))
    report.add(check_equal("topology_moebius_band",
                           (topo.theta, topo.boundary_components), (-1, 1)))


def _check_cone_dims(report):
    cone = tube(beta=1.0, z_min=1.0, z_max=512.0, n_axial=72, n_angular=72)
    report.add(check_equal("cone_dim_beta_one",
                           cone_directions(cone).cone_dim, 2))
    parab = tube(beta=0.5, z_min=1.0, z_max=4096.0, n_axial=72, n_angular=72)
    report.add(check_true("cone_dim_beta_half_collapses",
                          cone_directions(parab).cone_dim < 2))


def _check_normal_forms(report):
    for theta, genus, beta in ((1, 0, ["1"]), (1, 1, ["1"]),
                               (1, 0, ["1/2", "1"])):
        spec = NormalFormSpec.build(theta, genus, beta)
        rep = verify_normal_form(spec, resolution=128)
        tag = f"{genus}_" + "_".join(str(b).replace("/", "over")
                                     for b in spec.beta)
        report.add(check_true(f"normal_form_g{tag}", rep.passed,
                              detail="; ".join(
                                  f"{c.name}={'ok' if c.passed else 'fail'}"
                                  for c in rep.checks)))

"""Command-line front end.

Subcommands:

- ``code <strata.json>``: canonical code of a stratified description.
- ``equiv <a.json> <b.json>``: decide code equivalence; exit 0/1.
- ``contact <curveA> <curveB>``: contact-exponent estimate for two curves
  (inline text or paths to one-curve files).
- ``estimate --mesh m.off --mode horn|tube [--at x,y,z] --radii r0:f:n``:
  growth exponent of a mesh's link lengths.
- ``normal-form --theta T --genus G --beta b1,b2 --out m.off --code c.json``:
  build a normal-form mesh and its code.
- ``corpus``: run the full check corpus; exit 0 iff everything passes.

Exit codes: 0 success, 1 failed checks or non-equivalence, 2 usage errors,
3 malformed inputs.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .code_model import (
    canonical_json,
    canonicalize,
    code_equiv,
    dump_code,
    load_code,
)
from .errors import HorncodeError
from .rationals import as_rational

DEFAULT_SEED = 0x5EED


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="horncode",
        description="inner-Lipschitz invariants of semialgebraic surfaces")
    parser.add_argument("--seed", type=int, default=DEFAULT_SEED,
                        help="seed for all sampling (default 0x5EED)")
    sub = parser.add_subparsers(dest="command", required=True)

    p_code = sub.add_parser("code", help="canonical code of a strata file")
    p_code.add_argument("strata", help="strata JSON file")

    p_equiv = sub.add_parser("equiv", help="decide equivalence of two codes")
    p_equiv.add_argument("a")
    p_equiv.add_argument("b")

    p_contact = sub.add_parser("contact", help="contact exponent of two curves")
    p_contact.add_argument("curve_a")
    p_contact.add_argument("curve_b")
    p_contact.add_argument("--K", default="2,3,4",
                           help="comma-separated annulus factors > 1")
    p_contact.add_argument("--grid", default="10:2:12",
                           help="radius grid r0:factor:count")

    p_est = sub.add_parser("estimate", help="growth exponent from a mesh")
    p_est.add_argument("--mesh", required=True, help="OFF file")
    p_est.add_argument("--mode", choices=("horn", "tube"), required=True)
    p_est.add_argument("--at", default=None,
                       help="center point x,y,... (default: origin)")
    p_est.add_argument("--radii", required=True,
                       help="radius grid r0:factor:count")

    p_nf = sub.add_parser("normal-form", help="build a normal-form surface")
    p_nf.add_argument("--theta", type=int, required=True, choices=(-1, 1))
    p_nf.add_argument("--genus", type=int, required=True)
    p_nf.add_argument("--beta", default="",
                      help="comma-separated end exponents, e.g. 1,1/2")
    p_nf.add_argument("--out", default=None, help="write the mesh (OFF)")
    p_nf.add_argument("--code", default=None, help="write the code (JSON)")
    p_nf.add_argument("--resolution", type=int, default=128)
    p_nf.add_argument("--verify", action="store_true",
                      help="measure the built mesh against the requested code")

    p_corpus = sub.add_parser("corpus", help="run the full check corpus")
    p_corpus.add_argument("--jsonl", default=None,
                          help="also write the machine-readable report here")
    return parser


def run_command(argv, stdout=None, stderr=None) -> int:
    """Execute one CLI invocation; returns the process exit code."""
    stdout = stdout if stdout is not None else sys.stdout
    stderr = stderr if stderr is not None else sys.stderr
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0,) else 0
    try:
        handler = {
            "code": _cmd_code,
            "equiv": _cmd_equiv,
            "contact": _cmd_contact,
            "estimate": _cmd_estimate,
            "normal-form": _cmd_normal_form,
            "corpus": _cmd_corpus,
        }[args.command]
        return handler(args, stdout)
    except (HorncodeError, OSError, json.JSONDecodeError, ValueError) as exc:
        print(f"error: {exc}", file=stderr)
        return 3


def main() -> None:
    raise SystemExit(run_command(sys.argv[1:]))


# ---------------------------------------------------------------------------

def _cmd_code(args, out) -> int:
    from .strata import code_from_strata, load_strata

    code = canonicalize(code_from_strata(load_strata(args.strata)))
    out.write(canonical_json(code).decode() + "\n")
    return 0


def _cmd_equiv(args, out) -> int:
    a = load_code(args.a)
    b = load_code(args.b)
    witness = code_equiv(a, b)
    if witness is None:
        out.write("NOT EQUIVALENT\n")
        return 1
    out.write(json.dumps({
        "equivalent": True,
        "component_bijection": list(witness.component_bijection),
        "point_bijection": dict(witness.point_bijection),
    }, sort_keys=True) + "\n")
    return 0


def _read_curve(spec: str):
    from .contact import parse_curve

    if os.path.exists(spec):
        with open(spec, encoding="utf-8") as fh:
            return parse_curve(fh.read().strip())
    return parse_curve(spec)


def _parse_grid(text: str):
    parts = text.split(":")
    if len(parts) != 3:
        raise ValueError(f"grid spec must be r0:factor:count, got {text!r}")
    r0, factor, count = float(parts[0]), float(parts[1]), int(parts[2])
    if count < 1 or r0 <= 0 or factor <= 0:
        raise ValueError(f"bad grid spec {text!r}")
    return [r0 * factor ** j for j in range(count)]


def _cmd_contact(args, out) -> int:
    from .contact import estimate_contact

    c1 = _read_curve(args.curve_a)
    c2 = _read_curve(args.curve_b)
    Ks = [float(k) for k in args.K.split(",") if k]
    grid = _parse_grid(args.grid)
    est = estimate_contact(c1, c2, Ks=Ks, r_grid=grid)
    out.write(json.dumps(est.to_dict(), sort_keys=True) + "\n")
    return 0


def _cmd_estimate(args, out) -> int:
    import numpy as np

    from .mesh_geometry import growth_exponent, load_mesh
    from .rationals import format_rational

    mesh = load_mesh(args.mesh)
    if args.at is not None:
        center = np.array([float(x) for x in args.at.split(",")])
    else:
        center = np.zeros(mesh.ambient_dim)
    radii = _parse_grid(args.radii)
    est = growth_exponent(mesh, center, radii)
    out.write(json.dumps({
        "mode": args.mode,
        "slope": est.slope,
        "rounded": (format_rational(est.rounded)
                    if est.rounded is not None else None),
        "residual": est.residual,
        "radii": list(est.radii_used),
    }, sort_keys=True) + "\n")
    return 0


def _cmd_normal_form(args, out) -> int:
    from .mesh_geometry import save_mesh
    from .normal_forms import (
        NormalFormSpec,
        base_surface,
        default_punctures,
        normal_form_code,
        puncture_embed,
        verify_normal_form,
    )

    beta = [as_rational(b) for b in args.beta.split(",") if b]
    spec = NormalFormSpec.build(args.theta, args.genus, beta)
    code = normal_form_code(spec)
    if args.code:
        dump_code(code, args.code)
    if args.out:
        base = base_surface(spec, args.resolution)
        mesh = puncture_embed(base, default_punctures(base, spec), spec.beta)
        save_mesh(mesh, args.out)
        out.write(f"mesh: {mesh.n_vertices} vertices in R^{mesh.ambient_dim}"
                  f" -> {args.out}\n")
    out.write("code: " + canonical_json(canonicalize(code)).decode() + "\n")
    if args.verify:
        report = verify_normal_form(spec, resolution=args.resolution)
        out.write(report.to_text())
        return 0 if report.passed else 1
    return 0


def _cmd_corpus(args, out) -> int:
    from .corpus import run_corpus

    report = run_corpus(seed=args.seed, command=["corpus"])
    out.write(report.to_text())
    if args.jsonl:
        with open(args.jsonl, "w", encoding="utf-8") as fh:
            fh.write(report.to_jsonl())
    return report.exit_code

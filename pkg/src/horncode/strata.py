"""Symbolic gluing calculus for stratified surface descriptions.

A surface piece is described per component by its orientability and genus,
its ends as cyclic sequences of strips (each strip carrying an exponent
<= 1, given directly or through a profile function), and its singular points
as labeled horn-exponent vectors.  Gluing a chain or a cycle of strips
produces a strip/tube whose exponent is the maximum of the pieces, which is
all the assembly of a code needs.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .code_model import InnerLipschitzCode, make_code, make_component_code, normalize
from .errors import EmptyChain, EmptyCycle, InvalidProfile, OutOfRangeExponent
from .puiseux import PuiseuxExpr
from .rationals import as_rational, format_rational

__all__ = [
    "StripSpec",
    "StrataSpec",
    "PuiseuxExpr",
    "strip_exponent_from_profile",
    "glue_strips",
    "tube_from_strips",
    "code_from_strata",
    "load_strata",
]


def strip_exponent_from_profile(profile: PuiseuxExpr) -> Fraction:
    """Exponent of the strip bounded by 0 <= y <= profile(x) at infinity.

    The region under a positive function growing like x^beta is a beta-strip,
    so the leading exponent is the answer.  Raises InvalidProfile when the
    leading coefficient is not positive or the leading exponent exceeds 1.
    """
    if profile.is_zero:
        raise InvalidProfile("profile is identically zero")
    coeff, exponent = profile.leading
    if coeff <= 0:
        raise InvalidProfile(f"leading coefficient {coeff:g} <= 0")
    if exponent > 1:
        raise InvalidProfile(
            f"leading exponent {format_rational(exponent)} > 1")
    return exponent


@dataclass(frozen=True)
class StripSpec:
    """One strip at infinity: an exponent <= 1, possibly via a profile."""

    beta: Fraction

    def __post_init__(self):
        object.__setattr__(self, "beta", as_rational(self.beta))
        if self.beta > 1:
            raise OutOfRangeExponent(
                f"strip exponent {format_rational(self.beta)} > 1")

    @staticmethod
    def from_profile(profile: PuiseuxExpr) -> "StripSpec":
        return StripSpec(strip_exponent_from_profile(profile))


def _checked(exponents, empty_error):
    vals = [as_rational(b.beta if isinstance(b, StripSpec) else b)
            for b in exponents]
    if not vals:
        raise empty_error
    for b in vals:
        if b > 1:
            raise OutOfRangeExponent(f"strip exponent {format_rational(b)} > 1")
    return vals


def glue_strips(chain) -> Fraction:
    """Exponent of a chain of strips glued along consecutive boundary arcs.

    The union of an adjacent chain of beta_i-strips is a strip again, with
    exponent max(beta_1, ..., beta_r).
    """
    return max(_checked(chain, EmptyChain("no strips to glue")))


def tube_from_strips(cycle) -> Fraction:
    """Exponent of the tube obtained by gluing a cyclic sequence of strips.

    Same maximum rule as chains; a length-1 cycle is a strip self-glued along
    both arcs, a length-2 cycle shares both boundary arcs.
    """
    return max(_checked(cycle, EmptyCycle("no strips in the cycle")))


@dataclass(frozen=True)
class StrataSpec:
    """Stratified description of one surface component.

    ``ends`` holds one cyclic strip sequence per end; ``singular_points``
    maps labels to horn exponent vectors (entries >= 1).  Adjacency of the
    strips along boundary arcs is implied by the cyclic order and not
    re-verified here (it is not computable from exponents alone).
    """

    theta: int
    genus: int
    ends: tuple[tuple[StripSpec, ...], ...] = ()
    singular_points: tuple[tuple[str, tuple[Fraction, ...]], ...] = ()

    @staticmethod
    def build(theta, genus, ends=(), singular_points=None) -> "StrataSpec":
        end_cycles = []
        for cycle in ends:
            strips = tuple(s if isinstance(s, StripSpec) else StripSpec(s)
                           for s in cycle)
            if not strips:
                raise EmptyCycle("an end needs at least one strip")
            end_cycles.append(strips)
        points = tuple(
            (str(lbl), tuple(sorted(as_rational(q) for q in vec)))
            for lbl, vec in sorted((singular_points or {}).items())
        )
        return StrataSpec(int(theta), int(genus), tuple(end_cycles), points)


def _component_from_spec(spec: StrataSpec):
    tube_exponents = [tube_from_strips(cycle) for cycle in spec.ends]
    return make_component_code(
        spec.theta, spec.genus, tube_exponents,
        {lbl: list(vec) for lbl, vec in spec.singular_points})


def code_from_strata(spec) -> InnerLipschitzCode:
    """Assemble the code of a stratified description.

    Accepts a single StrataSpec or a sequence of them (one per component;
    singular labels shared by name).  Each end cycle collapses to its tube
    exponent, exponent vectors are sorted, and the result is normalized so
    regular marked points disappear.
    """
    specs = [spec] if isinstance(spec, StrataSpec) else list(spec)
    return normalize(make_code(_component_from_spec(s) for s in specs))


# ---------------------------------------------------------------------------
# file format: one component object {theta, genus, ends, singular_points},
# a bare array of them, or {"components": [...]}.  Strip entries are "p/q"
# strings or {"profile": [["c", "p/q"], ...]} term lists.

def _strip_from_json(entry) -> StripSpec:
    if isinstance(entry, dict):
        terms = [(float(c), as_rational(q)) for c, q in entry["profile"]]
        return StripSpec.from_profile(PuiseuxExpr.from_terms(terms))
    return StripSpec(as_rational(entry))


def _spec_from_json(data: dict) -> StrataSpec:
    return StrataSpec.build(
        data["theta"],
        data["genus"],
        [[_strip_from_json(s) for s in cycle] for cycle in data.get("ends", [])],
        {lbl: [as_rational(q) for q in vec]
         for lbl, vec in data.get("singular_points", {}).items()},
    )


def load_strata(path):
    """Read a strata file; returns a StrataSpec or a list of them."""
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    if isinstance(data, dict) and "components" in data:
        data = data["components"]
    if isinstance(data, list):
        return [_spec_from_json(entry) for entry in data]
    return _spec_from_json(data)

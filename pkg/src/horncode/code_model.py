"""Classification codes of surfaces and their equivalence decision.

A code is a finite list of component symbols: orientability flag, genus,
sorted vector of end exponents (each <= 1), and per-singular-point horn
exponent vectors (each entry >= 1) keyed by opaque labels shared between
components.  Two codes are equivalent when some pair of bijections (one over
components, one over labels) matches them symbol-for-symbol; this module
decides that, and also produces a canonical relabeled form so that
equivalence coincides with byte equality of the serialized code.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .errors import EmptyIncidence, OutOfRangeExponent
from .rationals import as_rational, format_rational, rational_round

__all__ = [
    "ComponentCode",
    "InnerLipschitzCode",
    "EquivWitness",
    "make_component_code",
    "make_code",
    "code_equiv",
    "canonicalize",
    "normalize",
    "curve_code",
    "rational_round",
    "code_to_dict",
    "code_from_dict",
    "canonical_json",
    "load_code",
    "dump_code",
]


@dataclass(frozen=True)
class ComponentCode:
    """Symbols of one component: (theta, genus, end exponents, attachments).

    ``ends`` is sorted ascending with every entry <= 1.  ``attachments`` is a
    tuple of (label, exponent-vector) pairs sorted by label, every vector
    non-empty, sorted ascending, all entries >= 1.
    """

    theta: int
    genus: int
    ends: tuple[Fraction, ...]
    attachments: tuple[tuple[str, tuple[Fraction, ...]], ...]

    @property
    def end_count(self) -> int:
        return len(self.ends)

    def attachment_map(self) -> dict[str, tuple[Fraction, ...]]:
        return dict(self.attachments)

    def sheet_count(self, label: str) -> int:
        """Number of sheets this component contributes at ``label``."""
        for name, vec in self.attachments:
            if name == label:
                return len(vec)
        return 0


@dataclass(frozen=True)
class InnerLipschitzCode:
    """A full code: non-empty component tuple plus the shared label set.

    ``singular_labels`` always equals the set of labels used by attachments;
    the constructor helpers enforce that.
    """

    components: tuple[ComponentCode, ...]
    singular_labels: frozenset[str]

    def sheet_total(self, label: str) -> int:
        """Aggregated link component count at ``label`` over all components."""
        return sum(c.sheet_count(label) for c in self.components)


@dataclass(frozen=True)
class EquivWitness:
    """Bijections realizing an equivalence of two codes.

    ``component_bijection[i] = j`` sends component i of the first code to
    component j of the second; ``point_bijection`` pairs labels likewise.
    """

    component_bijection: tuple[int, ...]
    point_bijection: tuple[tuple[str, str], ...]

    def maps_exactly(self, a: "InnerLipschitzCode", b: "InnerLipschitzCode") -> bool:
        """Field-by-field check that applying the bijections maps a onto b."""
        if sorted(self.component_bijection) != list(range(len(a.components))):
            return False
        sigma = dict(self.point_bijection)
        if sorted(sigma) != sorted(a.singular_labels):
            return False
        if sorted(sigma.values()) != sorted(b.singular_labels):
            return False
        for i, j in enumerate(self.component_bijection):
            ca, cb = a.components[i], b.components[j]
            if (ca.theta, ca.genus, ca.ends) != (cb.theta, cb.genus, cb.ends):
                return False
            mapped = sorted((sigma[lbl], vec) for lbl, vec in ca.attachments)
            if mapped != list(cb.attachments):
                return False
        return True


def _sorted_vector(entries) -> tuple[Fraction, ...]:
    return tuple(sorted(as_rational(e) for e in entries))


def make_component_code(theta, genus, ends, attachments=None) -> ComponentCode:
    """Validate and sort the symbols of one component.

    Raises OutOfRangeExponent when an end exponent exceeds 1 or a horn
    exponent is below 1.
    """
    if theta not in (-1, 1):
        raise ValueError(f"theta must be -1 or +1, got {theta!r}")
    if not isinstance(genus, int) or genus < 0:
        raise ValueError(f"genus must be a non-negative integer, got {genus!r}")
    end_vec = _sorted_vector(ends)
    for q in end_vec:
        if q > 1:
            raise OutOfRangeExponent(f"end exponent {format_rational(q)} > 1")
    attach = []
    for label, entries in sorted((attachments or {}).items()):
        vec = _sorted_vector(entries)
        if not vec:
            raise ValueError(f"attachment vector at {label!r} is empty")
        for q in vec:
            if q < 1:
                raise OutOfRangeExponent(
                    f"horn exponent {format_rational(q)} < 1 at {label!r}")
        attach.append((str(label), vec))
    return ComponentCode(int(theta), genus, end_vec, tuple(attach))


def make_code(components) -> InnerLipschitzCode:
    """Assemble components into a code; the label set is the attachment union."""
    comps = tuple(components)
    if not comps:
        raise ValueError("a code needs at least one component")
    labels = frozenset(lbl for c in comps for lbl, _ in c.attachments)
    return InnerLipschitzCode(comps, labels)


def normalize(code: InnerLipschitzCode) -> InnerLipschitzCode:
    """Drop labels that mark inner-Lipschitz-regular points.

    A label is removable when its aggregated sheet count over all components
    is 1 and its single horn exponent equals 1; such a point has a disc-like
    neighborhood.  Labels with more sheets, or a single sheet of exponent > 1,
    stay.  Idempotent.
    """
    removable = {
        label
        for label in code.singular_labels
        if code.sheet_total(label) == 1
        and sum((vec for c in code.components for l, vec in c.attachments
                 if l == label), ()) == (Fraction(1),)
    }
    if not removable:
        return code
    comps = []
    for c in code.components:
        kept = tuple((l, v) for l, v in c.attachments if l not in removable)
        comps.append(ComponentCode(c.theta, c.genus, c.ends, kept))
    return make_code(comps)


def curve_code(components, incidences) -> InnerLipschitzCode:
    """Code of a complex plane curve from per-component (genus, end count)
    data and singular-point incidences.

    ``incidences`` maps label -> {component index: sheet count}.  Every end of
    such a curve is a 1-tube and every sheet at a singular point a 1-horn, so
    the code is assembled from all-ones vectors and then normalized (which
    erases labels where only a single smooth sheet passes).
    """
    comps = list(components)
    attach_by_comp: list[dict[str, list[Fraction]]] = [dict() for _ in comps]
    for label, by_comp in incidences.items():
        if not by_comp:
            raise EmptyIncidence(f"label {label!r} touches no component")
        for idx, sheets in by_comp.items():
            if not 0 <= idx < len(comps):
                raise ValueError(f"component index {idx} out of range")
            if sheets < 1:
                raise ValueError(f"sheet count at {label!r} must be >= 1")
            attach_by_comp[idx][str(label)] = [Fraction(1)] * sheets
    built = [
        make_component_code(1, genus, [Fraction(1)] * end_count, attach_by_comp[i])
        for i, (genus, end_count) in enumerate(comps)
    ]
    return normalize(make_code(built))


# ---------------------------------------------------------------------------
# serialization

def _component_to_dict(c: ComponentCode) -> dict:
    return {
        "theta": c.theta,
        "genus": c.genus,
        "ends": [format_rational(q) for q in c.ends],
        "attachments": {l: [format_rational(q) for q in vec]
                        for l, vec in c.attachments},
    }


def code_to_dict(code: InnerLipschitzCode) -> dict:
    return {
        "components": [_component_to_dict(c) for c in code.components],
        "singular_labels": sorted(code.singular_labels),
    }


def code_from_dict(data: dict) -> InnerLipschitzCode:
    comps = [
        make_component_code(
            entry["theta"],
            entry["genus"],
            [as_rational(e) for e in entry.get("ends", [])],
            {l: [as_rational(q) for q in vec]
             for l, vec in entry.get("attachments", {}).items()},
        )
        for entry in data["components"]
    ]
    code = make_code(comps)
    declared = data.get("singular_labels")
    if declared is not None and frozenset(declared) != code.singular_labels:
        raise ValueError("singular_labels does not match the attachment labels")
    return code


def canonical_json(code: InnerLipschitzCode) -> bytes:
    """Compact, key-sorted JSON bytes; components in the stored order."""
    return json.dumps(code_to_dict(code), sort_keys=True,
                      separators=(",", ":")).encode()


def load_code(path) -> InnerLipschitzCode:
    with open(path, encoding="utf-8") as fh:
        return code_from_dict(json.load(fh))


def dump_code(code: InnerLipschitzCode, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(code_to_dict(code), fh, sort_keys=True, indent=2)
        fh.write("\n")


# ---------------------------------------------------------------------------
# canonical form: color refinement on the component/label incidence structure
# with backtracking on tied colors, lexicographically smallest serialization.

def _static_key(c: ComponentCode):
    return (c.theta, c.genus, c.ends, tuple(sorted(vec for _, vec in c.attachments)))


def _rank(values: list) -> list[int]:
    order = {v: i for i, v in enumerate(sorted(set(values)))}
    return [order[v] for v in values]


def _refine(code, labels, incidence, comp_colors, label_colors):
    """Iterate color refinement until both partitions stabilize."""
    pos = {l: k for k, l in enumerate(labels)}
    while True:
        new_comp = _rank([
            (comp_colors[i],
             tuple(sorted((label_colors[pos[l]], vec)
                          for l, vec in code.components[i].attachments)))
            for i in range(len(code.components))
        ])
        new_label = _rank([
            (label_colors[k],
             tuple(sorted((new_comp[i], vec) for i, vec in incidence[l])))
            for k, l in enumerate(labels)
        ])
        if new_comp == comp_colors and new_label == label_colors:
            return comp_colors, label_colors
        comp_colors, label_colors = new_comp, new_label


def _orderings(code, labels, incidence, comp_colors, label_colors):
    """Yield every component ordering reachable by individualize-refine."""
    comp_colors, label_colors = _refine(code, labels, incidence,
                                        comp_colors, label_colors)
    by_color: dict[int, list[int]] = {}
    for i, col in enumerate(comp_colors):
        by_color.setdefault(col, []).append(i)
    tied = [members for _, members in sorted(by_color.items())
            if len(members) > 1]
    if not tied:
        yield tuple(i for _, i in sorted((c, i) for i, c in enumerate(comp_colors)))
        return
    bump = max(comp_colors) + 1
    for member in tied[0]:
        branched = list(comp_colors)
        branched[member] = bump
        yield from _orderings(code, labels, incidence, branched, label_colors)


def _apply_ordering(code, labels, incidence, order):
    """Relabel and reorder; returns (candidate code, label map old->new)."""
    pos_of = {old: new for new, old in enumerate(order)}
    signatures = {
        l: tuple(sorted((pos_of[i], vec) for i, vec in incidence[l]))
        for l in labels
    }
    label_order = sorted(labels, key=lambda l: signatures[l])
    rename = {old: f"s{k + 1}" for k, old in enumerate(label_order)}
    comps = []
    for old in order:
        c = code.components[old]
        attach = tuple(sorted((rename[l], vec) for l, vec in c.attachments))
        comps.append(ComponentCode(c.theta, c.genus, c.ends, attach))
    return make_code(comps), rename


def _canonicalize_with_maps(code: InnerLipschitzCode):
    labels = sorted(code.singular_labels)
    incidence = {l: [] for l in labels}
    for i, c in enumerate(code.components):
        for l, vec in c.attachments:
            incidence[l].append((i, vec))
    comp_colors = _rank([_static_key(c) for c in code.components])
    pos = {l: k for k, l in enumerate(labels)}
    label_colors = _rank([
        tuple(sorted((comp_colors[i], vec) for i, vec in incidence[l]))
        for l in labels
    ])
    best = None
    for order in _orderings(code, labels, incidence, comp_colors, label_colors):
        candidate, rename = _apply_ordering(code, labels, incidence, order)
        key = canonical_json(candidate)
        if best is None or key < best[0]:
            best = (key, candidate, order, rename)
    _, canonical, order, rename = best
    perm = {old: new for new, old in enumerate(order)}
    return canonical, perm, rename


def canonicalize(code: InnerLipschitzCode) -> InnerLipschitzCode:
    """Canonical representative: equivalent codes get byte-identical JSON.

    Components are reordered by iterated color refinement on the bipartite
    component/label incidence structure, branching on tied colors and keeping
    the lexicographically smallest serialization; labels are renamed
    s1, s2, ... in signature order.
    """
    canonical, _, _ = _canonicalize_with_maps(code)
    return canonical


# ---------------------------------------------------------------------------
# equivalence decision: backtracking over component pairings plus a bipartite
# label matching.  Independent of canonicalize so the two can cross-check.

def _label_matching(a, b, pi):
    """Perfect matching of labels compatible with the component pairing pi.

    Label l may map to l' iff for every component i the vector of l in a_i
    equals the vector of l' in b_{pi[i]} (including absence).
    """
    labels_a = sorted(a.singular_labels)
    labels_b = sorted(b.singular_labels)
    prof_a = {l: tuple(a.components[i].attachment_map().get(l)
                       for i in range(len(a.components))) for l in labels_a}
    prof_b = {l: tuple(b.components[pi[i]].attachment_map().get(l)
                       for i in range(len(a.components))) for l in labels_b}
    allowed = {l: [m for m in labels_b if prof_b[m] == prof_a[l]]
               for l in labels_a}

    match_of_b: dict[str, str] = {}

    def augment(l, seen):
        for m in allowed[l]:
            if m in seen:
                continue
            seen.add(m)
            if m not in match_of_b or augment(match_of_b[m], seen):
                match_of_b[m] = l
                return True
        return False

    for l in labels_a:
        if not augment(l, set()):
            return None
    return {l: m for m, l in match_of_b.items()}


def code_equiv(a: InnerLipschitzCode, b: InnerLipschitzCode):
    """Decide equivalence; returns an EquivWitness or None.

    Searches component bijections compatible with the per-component symbols,
    then completes each candidate with a label matching.  Total on valid
    codes.  For connected codes (one component each) this degenerates to
    equality of the symbol tuples up to the label bijection.
    """
    n = len(a.components)
    if n != len(b.components):
        return None
    if len(a.singular_labels) != len(b.singular_labels):
        return None
    keys_a = [_static_key(c) for c in a.components]
    keys_b = [_static_key(c) for c in b.components]
    if sorted(keys_a) != sorted(keys_b):
        return None

    candidates = [[j for j in range(n) if keys_b[j] == keys_a[i]]
                  for i in range(n)]
    order = sorted(range(n), key=lambda i: len(candidates[i]))

    def search(k, pi, used):
        if k == n:
            sigma = _label_matching(a, b, pi)
            if sigma is None:
                return None
            witness = EquivWitness(
                tuple(pi[i] for i in range(n)),
                tuple(sorted(sigma.items())),
            )
            return witness if witness.maps_exactly(a, b) else None
        i = order[k]
        for j in candidates[i]:
            if j in used:
                continue
            pi[i] = j
            used.add(j)
            found = search(k + 1, pi, used)
            if found is not None:
                return found
            used.remove(j)
        return None

    return search(0, {}, set())

import itertools
import random
from fractions import Fraction

import pytest

from horncode.code_model import (
    canonical_json,
    canonicalize,
    code_equiv,
    code_from_dict,
    code_to_dict,
    curve_code,
    make_code,
    make_component_code,
    normalize,
)
from horncode.errors import EmptyIncidence, OutOfRangeExponent

F = Fraction


def component(theta=1, genus=0, ends=(), attachments=None):
    return make_component_code(theta, genus, list(ends), attachments or {})


def paraboloid_code():
    return make_code([component(1, 0, [F(1, 2)])])


def torus_code():
    return make_code([component(1, 1)])


def klein_code():
    return make_code([component(-1, 1)])


def edge_of_spheres_code(label="o"):
    sphere = component(1, 0, [], {label: [1]})
    return make_code([sphere, sphere])


def cayley_code(labels=("p1", "p2", "p3", "p4")):
    horns = [component(1, 0, [1], {lbl: [1]}) for lbl in labels]
    center = component(1, 0, [], {lbl: [1] for lbl in labels})
    return make_code(horns + [center])


class TestMakeComponentCode:
    def test_paraboloid(self):
        c = component(1, 0, [F(1, 2)])
        assert (c.theta, c.genus, c.ends, c.attachments) == (1, 0, (F(1, 2),), ())

    def test_torus(self):
        c = component(1, 1)
        assert (c.theta, c.genus, c.ends) == (1, 1, ())

    def test_ends_sorted(self):
        c = component(1, 0, [1, F(1, 3)])
        assert c.ends == (F(1, 3), F(1))

    def test_end_exponent_above_one_rejected(self):
        with pytest.raises(OutOfRangeExponent):
            component(1, 0, [F(3, 2)])

    def test_horn_exponent_below_one_rejected(self):
        with pytest.raises(OutOfRangeExponent):
            component(1, 0, [], {"p": [F(1, 2)]})

    def test_attachment_vectors_sorted(self):
        c = component(1, 0, [], {"p": [2, F(3, 2)]})
        assert c.attachments == (("p", (F(3, 2), F(2))),)


class TestNormalize:
    def test_single_regular_point_removed(self):
        code = make_code([component(1, 0, [1], {"p": [1]})])
        out = normalize(code)
        assert out.singular_labels == frozenset()
        assert out.components[0].attachments == ()

    def test_horn_point_kept(self):
        code = make_code([component(1, 0, [1], {"v": [F(3, 2)]})])
        assert normalize(code) == code

    def test_shared_point_kept(self):
        # Two sheets meet at the label, so the point stays even though each
        # sheet is smooth.
        code = edge_of_spheres_code()
        assert normalize(code) == code

    def test_idempotent(self):
        code = make_code([
            component(1, 0, [1], {"p": [1], "q": [2]}),
            component(1, 2, [], {"q": [1]}),
        ])
        once = normalize(code)
        assert normalize(once) == once
        assert once.singular_labels == frozenset({"q"})


class TestCurveCode:
    def test_cubic(self):
        code = curve_code([(1, 3)], {})
        assert code == make_code([component(1, 1, [1, 1, 1])])

    def test_node_curve(self):
        code = curve_code([(0, 1), (0, 1)], {"p": {0: 1, 1: 1}})
        expected = make_code([
            component(1, 0, [1], {"p": [1]}),
            component(1, 0, [1], {"p": [1]}),
        ])
        assert code == expected
        assert code.sheet_total("p") == 2

    def test_smooth_curve(self):
        assert curve_code([(0, 1)], {}) == make_code([component(1, 0, [1])])

    def test_empty_incidence_rejected(self):
        with pytest.raises(EmptyIncidence):
            curve_code([(0, 1)], {"p": {}})


class TestCodeEquiv:
    def test_torus_vs_klein(self):
        assert code_equiv(torus_code(), klein_code()) is None

    def test_reflexive_identity(self):
        code = cayley_code()
        w = code_equiv(code, code)
        assert w is not None
        assert w.maps_exactly(code, code)

    def test_edge_of_spheres_component_swap_and_relabel(self):
        a = make_code([
            component(1, 0, [], {"o": [1]}),
            component(1, 2, [], {"o": [1]}),
        ])
        b = make_code([
            component(1, 2, [], {"x": [1]}),
            component(1, 0, [], {"x": [1]}),
        ])
        w = code_equiv(a, b)
        assert w is not None
        assert w.component_bijection == (1, 0)
        assert w.maps_exactly(a, b)

    def test_different_exponents_not_equivalent(self):
        a = make_code([component(1, 0, [F(1, 2)])])
        b = make_code([component(1, 0, [F(1, 3)])])
        assert code_equiv(a, b) is None

    def test_incidence_structure_matters(self):
        # Same component multiset, different sharing pattern.
        a = make_code([
            component(1, 0, [], {"p": [1], "q": [1]}),
            component(1, 0, [], {"p": [1]}),
            component(1, 0, [], {"q": [1]}),
        ])
        b = make_code([
            component(1, 0, [], {"p": [1], "q": [1]}),
            component(1, 0, [], {"p": [1], "q": [1]}),
            # third component shares no labels: invalid sharing for q...
        ] + [component(1, 0, [], {"r": [1]})])
        # different label counts
        assert code_equiv(a, b) is None

    def test_witness_on_cayley_permuted(self):
        base = cayley_code()
        shuffled = make_code([base.components[i] for i in (4, 2, 0, 3, 1)])
        w = code_equiv(base, shuffled)
        assert w is not None and w.maps_exactly(base, shuffled)


from _code_samples import random_code, scrambled  # noqa: E402


class TestEquivalenceLaws:
    def test_laws_on_random_codes(self):
        rng = random.Random(0x5EED)
        for _ in range(100):
            a = random_code(rng)
            b = scrambled(a, rng)
            c = scrambled(b, rng)
            # reflexive
            assert code_equiv(a, a) is not None
            # symmetric
            w_ab = code_equiv(a, b)
            w_ba = code_equiv(b, a)
            assert w_ab is not None and w_ba is not None
            assert w_ab.maps_exactly(a, b) and w_ba.maps_exactly(b, a)
            # transitive: a ~ b and b ~ c gives a ~ c
            assert code_equiv(b, c) is not None
            assert code_equiv(a, c) is not None

    def test_agreement_with_canonicalize(self):
        rng = random.Random(1234)
        for _ in range(100):
            a = random_code(rng)
            b = scrambled(a, rng) if rng.random() < 0.5 else random_code(rng)
            same = code_equiv(a, b) is not None
            assert same == (canonical_json(canonicalize(a))
                            == canonical_json(canonicalize(b)))


class TestCanonicalize:
    def test_single_component_labels_renamed(self):
        code = make_code([component(1, 0, [1], {"weird-name": [2]})])
        out = canonicalize(code)
        assert sorted(out.singular_labels) == ["s1"]

    def test_deterministic_over_all_permutations(self):
        # Two structurally identical components sharing one point, plus a
        # third distinct one: every input order canonicalizes identically.
        twin = component(1, 0, [1], {"a": [1]})
        other = component(1, 1, [], {"a": [F(3, 2)]})
        comps = [twin, twin, other]
        forms = set()
        for perm in itertools.permutations(range(3)):
            code = make_code([comps[i] for i in perm])
            forms.add(canonical_json(canonicalize(code)))
        assert len(forms) == 1

    def test_cayley_any_order_one_canonical_form(self):
        base = cayley_code()
        rng = random.Random(7)
        forms = {canonical_json(canonicalize(scrambled(base, rng)))
                 for _ in range(12)}
        forms.add(canonical_json(canonicalize(base)))
        assert len(forms) == 1

    def test_canonical_is_equivalent_to_input(self):
        code = cayley_code()
        out = canonicalize(code)
        assert code_equiv(code, out) is not None


class TestJson:
    def test_round_trip(self):
        code = cayley_code()
        assert code_from_dict(code_to_dict(code)) == code

    def test_schema_shape(self):
        data = code_to_dict(paraboloid_code())
        assert data == {
            "components": [
                {"theta": 1, "genus": 0, "ends": ["1/2"], "attachments": {}}
            ],
            "singular_labels": [],
        }

    def test_declared_labels_checked(self):
        data = code_to_dict(edge_of_spheres_code())
        data["singular_labels"] = ["o", "ghost"]
        with pytest.raises(ValueError):
            code_from_dict(data)

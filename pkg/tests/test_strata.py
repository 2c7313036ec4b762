import random
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import given, strategies as st

from horncode.code_model import canonical_json, canonicalize, code_equiv, load_code
from horncode.errors import EmptyChain, EmptyCycle, InvalidProfile
from horncode.puiseux import PuiseuxExpr
from horncode.strata import (
    StrataSpec,
    code_from_strata,
    glue_strips,
    load_strata,
    strip_exponent_from_profile,
    tube_from_strips,
)

F = Fraction
from horncode.corpus import corpus_dir

CORPUS = Path(str(corpus_dir()))

rationals = st.fractions(min_value=-3, max_value=1, max_denominator=8)


class TestProfiles:
    def test_sqrt_profile(self):
        f = PuiseuxExpr.from_terms([(1.0, F(1, 2))])
        assert strip_exponent_from_profile(f) == F(1, 2)

    def test_leading_term_dominates(self):
        f = PuiseuxExpr.from_terms([(3.0, F(1, 3)), (7.0, F(-2))])
        assert strip_exponent_from_profile(f) == F(1, 3)

    def test_superlinear_rejected(self):
        f = PuiseuxExpr.from_terms([(1.0, F(2))])
        with pytest.raises(InvalidProfile):
            strip_exponent_from_profile(f)

    def test_negative_leading_coefficient_rejected(self):
        f = PuiseuxExpr.from_terms([(-1.0, F(1, 2))])
        with pytest.raises(InvalidProfile):
            strip_exponent_from_profile(f)


class TestGluing:
    def test_chain_max(self):
        assert glue_strips([F(1, 2), F(-1), F(1, 3)]) == F(1, 2)

    def test_singleton(self):
        assert glue_strips([F(-5, 7)]) == F(-5, 7)

    def test_zeros(self):
        assert glue_strips([F(0), F(0), F(0)]) == F(0)

    def test_empty_chain(self):
        with pytest.raises(EmptyChain):
            glue_strips([])

    def test_cycle_max(self):
        assert tube_from_strips([F(1), F(-1, 2)]) == F(1)

    def test_paraboloid_quadrants(self):
        assert tube_from_strips([F(1, 2)] * 4) == F(1, 2)

    def test_empty_cycle(self):
        with pytest.raises(EmptyCycle):
            tube_from_strips([])

    @given(st.lists(rationals, min_size=1, max_size=8))
    def test_chain_equals_cycle(self, chain):
        assert glue_strips(chain) == tube_from_strips(chain)

    @given(st.lists(rationals, min_size=1, max_size=8), st.randoms())
    def test_order_independent(self, chain, rng):
        shuffled = list(chain)
        rng.shuffle(shuffled)
        assert glue_strips(chain) == glue_strips(shuffled)

    @given(st.lists(rationals, min_size=1, max_size=5),
           st.lists(rationals, min_size=1, max_size=5))
    def test_associative(self, xs, ys):
        assert glue_strips([glue_strips(xs), glue_strips(ys)]) == glue_strips(xs + ys)

    @given(st.lists(rationals, min_size=1, max_size=5))
    def test_idempotent(self, xs):
        b = glue_strips(xs)
        assert glue_strips(xs + [b]) == b


class TestCodeFromStrata:
    def test_paraboloid(self):
        spec = StrataSpec.build(1, 0, [[F(1, 2)] * 4])
        code = code_from_strata(spec)
        assert code.components[0].ends == (F(1, 2),)
        assert code.singular_labels == frozenset()

    def test_moebius(self):
        spec = StrataSpec.build(-1, 0, [[F(1), F(1)]])
        code = code_from_strata(spec)
        assert (code.components[0].theta, code.components[0].ends) == (-1, (F(1),))

    def test_torus(self):
        code = code_from_strata(StrataSpec.build(1, 1))
        assert (code.components[0].theta, code.components[0].genus,
                code.components[0].ends) == (1, 1, ())

    def test_regular_marked_point_normalized_away(self):
        spec = StrataSpec.build(1, 0, [[F(0)]], {"m": [F(1)]})
        assert code_from_strata(spec).singular_labels == frozenset()

    def test_multi_component_keeps_shared_point(self):
        specs = [
            StrataSpec.build(1, 0, [], {"o": [F(1)]}),
            StrataSpec.build(1, 0, [], {"o": [F(1)]}),
        ]
        code = code_from_strata(specs)
        assert code.sheet_total("o") == 2


# Example 4.4 corpus: every entry reproduces the recorded code exactly.
ENTRIES = [
    "a_cylinder", "b_moebius_band", "c_global_horn", "d_cubic_curve",
    "e_paraboloid", "f_torus", "g_klein_bottle", "h_edge_of_spheres",
    "i_cayley_surface",
]


@pytest.mark.parametrize("name", ENTRIES)
def test_corpus_entry_reproduces_code(name):
    spec = load_strata(CORPUS / f"{name}.strata.json")
    expected = load_code(CORPUS / f"{name}.code.json")
    computed = code_from_strata(spec)
    witness = code_equiv(computed, expected)
    assert witness is not None and witness.maps_exactly(computed, expected)
    assert canonical_json(canonicalize(computed)) == canonical_json(canonicalize(expected))


def test_cayley_has_four_shared_labels():
    code = code_from_strata(load_strata(CORPUS / "i_cayley_surface.strata.json"))
    assert len(code.components) == 5
    assert len(code.singular_labels) == 4
    assert all(code.sheet_total(lbl) == 2 for lbl in code.singular_labels)


def test_random_strata_codes_satisfy_invariants():
    rng = random.Random(42)
    for _ in range(50):
        ends = [[F(rng.randint(-4, 2), rng.choice([1, 2, 3, 4]))
                 for _ in range(rng.randint(1, 4))]
                for _ in range(rng.randint(0, 3))]
        ends = [[min(b, F(1)) for b in cyc] for cyc in ends]
        spec = StrataSpec.build(rng.choice([-1, 1]), rng.randint(0, 2), ends)
        code = code_from_strata(spec)
        comp = code.components[0]
        assert list(comp.ends) == sorted(comp.ends)
        assert all(b <= 1 for b in comp.ends)
        assert len(comp.ends) == len(ends)

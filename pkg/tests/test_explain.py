from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from aspdebug.explain import (
    ErrorAtom,
    ErrorKind,
    error_atom_from_key,
    error_base,
    error_universe,
    explains,
    interpretations_of,
    is_admissible,
    uf_loop,
    unsatisfied,
    unsupported,
    violated,
)
from aspdebug.program import atom, atoms, ground, parse_program
from aspdebug.semantics import (
    interpretation_space,
    is_answer_set,
    is_model,
    unfounded_loops,
)
from corpus import random_program_source


def gp_of(source: str):
    return ground(parse_program(source))


NO_BG = frozenset()


class TestErrorBase:
    def test_odd_loop_single_true_atom(self, odd_loop_ground):
        assert error_base(odd_loop_ground, atoms("a")) == frozenset({unsatisfied("r2")})

    def test_odd_loop_empty_interpretation(self, odd_loop_ground):
        assert error_base(odd_loop_ground, frozenset()) == frozenset({unsatisfied("r1")})

    def test_odd_loop_everything_true_violates_constraint(self, odd_loop_ground):
        # r1 is blocked by d, so a loses its only support as well
        assert error_base(odd_loop_ground, atoms("a,b,c,d")) == frozenset(
            {violated("r5"), unsupported(atom("a"))}
        )

    def test_unsupported_atom_reported(self):
        gp = gp_of("a :- not b.")
        assert error_base(gp, atoms("b")) == frozenset({unsupported(atom("b"))})


class TestAdmissible:
    def test_violating_background_constraint_inadmissible(self, odd_loop_ground):
        assert not is_admissible(odd_loop_ground, frozenset({"r5"}), atoms("a,b,c,d"))

    def test_non_background_errors_are_fine(self, odd_loop_ground):
        assert is_admissible(odd_loop_ground, frozenset({"r5"}), atoms("a"))

    def test_empty_background_protects_nothing(self, odd_loop_ground):
        for i in interpretation_space(odd_loop_ground.atom_universe):
            assert is_admissible(odd_loop_ground, NO_BG, i)


class TestErrorUniverse:
    def test_odd_loop_with_background(self, odd_loop_ground):
        universe = error_universe(odd_loop_ground, frozenset({"r5"}))
        assert len(universe) == 12
        assert universe == frozenset(
            [unsatisfied(f"r{k}") for k in range(1, 5)]
            + [unsupported(atom(a)) for a in "abcd"]
            + [uf_loop(atom(a)) for a in "abcd"]
        )

    def test_odd_loop_without_background(self, odd_loop_ground):
        universe = error_universe(odd_loop_ground, NO_BG)
        assert len(universe) == 13
        assert violated("r5") in universe

    def test_empty_program(self):
        assert error_universe(gp_of(""), NO_BG) == frozenset()


class TestExplains:
    def test_table_row_d2(self, odd_loop_ground, d2):
        assert explains(odd_loop_ground, frozenset({"r5"}), d2.errors, atoms("a"))

    def test_wrong_interpretation_not_explained(self, odd_loop_ground, d2):
        assert not explains(odd_loop_ground, frozenset({"r5"}), d2.errors, atoms("a,b"))

    def test_unfounded_loop_explanation(self):
        gp = gp_of("a :- b.\nb :- a.")
        d = frozenset({uf_loop(atom("a")), uf_loop(atom("b"))})
        assert explains(gp, NO_BG, d, atoms("a,b"))

    def test_loop_cover_required_when_base_empty(self):
        gp = gp_of("a :- b.\nb :- a.")
        assert not explains(gp, NO_BG, frozenset({uf_loop(atom("a"))}), atoms("a,b"))

    def test_monotone_in_diagnosis(self, odd_loop_ground, d2):
        larger = d2.errors | {unsupported(atom("c"))}
        for i in interpretation_space(odd_loop_ground.atom_universe):
            if explains(odd_loop_ground, frozenset({"r5"}), d2.errors, i):
                assert explains(odd_loop_ground, frozenset({"r5"}), larger, i)


class TestInterpretationsOf:
    def test_odd_loop_table_rows(self, odd_loop_ground, d1, d2, d3, d4):
        bg = frozenset({"r5"})
        expected = {
            d1: [frozenset()],
            d2: [atoms("a")],
            d3: [atoms("a,b")],
            d4: [atoms("a,b,c")],
        }
        for d, interps in expected.items():
            assert list(interpretations_of(odd_loop_ground, bg, d.errors)) == interps

    def test_empty_diagnosis_explains_nothing(self, odd_loop_ground):
        assert interpretations_of(odd_loop_ground, frozenset({"r5"}), frozenset()) == ()

    def test_full_universe_explains_all_admissible_non_answer_sets(self, odd_loop_ground):
        bg = frozenset({"r5"})
        got = set(interpretations_of(odd_loop_ground, bg, error_universe(odd_loop_ground, bg)))
        expected = {
            i
            for i in interpretation_space(odd_loop_ground.atom_universe)
            if is_admissible(odd_loop_ground, bg, i) and not is_answer_set(odd_loop_ground, i)
        }
        assert got == expected


class TestErrorAtoms:
    def test_kind_target_validation(self):
        with pytest.raises(ValueError):
            ErrorAtom(ErrorKind.UNSATISFIED, atom=atom("a"))
        with pytest.raises(ValueError):
            ErrorAtom(ErrorKind.UNSUPPORTED, rule_id="r1")

    def test_key_roundtrip(self):
        for e in [unsatisfied("r2"), violated("r5"), unsupported(atom("p(1,2)")), uf_loop(atom("a"))]:
            assert error_atom_from_key(e.key) == e

    def test_canonical_order(self):
        es = sorted(
            [uf_loop(atom("a")), unsupported(atom("a")), violated("r1"), unsatisfied("r9")]
        )
        assert [e.kind for e in es] == [
            ErrorKind.UNSATISFIED,
            ErrorKind.VIOLATED,
            ErrorKind.UNSUPPORTED,
            ErrorKind.UF_LOOP,
        ]


@given(st.integers(0, 10_000))
@settings(max_examples=25, deadline=None)
def test_support_loop_characterization_matches_reduct_check(seed):
    # answer set <=> model with empty error base and no unfounded loop
    gp = ground(parse_program(random_program_source(random.Random(seed))))
    for i in interpretation_space(gp.atom_universe):
        lhs = is_answer_set(gp, i)
        rhs = (
            is_model(gp, i)
            and not error_base(gp, i)
            and not unfounded_loops(gp, i)
        )
        assert lhs == rhs


def test_background_rules_never_blamed(odd_loop_ground):
    bg = frozenset({"r5"})
    for e in error_universe(odd_loop_ground, bg):
        if e.kind in (ErrorKind.UNSATISFIED, ErrorKind.VIOLATED):
            assert e.rule_id not in bg

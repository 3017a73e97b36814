from __future__ import annotations

import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from aspdebug.diagnosis import (
    DPI,
    Diagnosis,
    DiagnosisError,
    SignedAtomSet,
    complement,
    compute_diagnoses,
    diagnosis_from_json,
    diagnosis_to_json,
    dpi_to_json,
    feasible,
    meta_satisfies,
    normalize_tests,
    signed_set_from_json,
    signed_set_to_json,
    verify_diagnosis,
)
from aspdebug.explain import ErrorKind, unsatisfied, violated
from aspdebug.program import atoms, ground, parse_program
from corpus import random_program_source


def signed(pos="", neg=""):
    return SignedAtomSet(positive=atoms(pos), negative=atoms(neg))


def dpi_of(source: str, bg=frozenset(), pos=frozenset(), neg=frozenset()) -> DPI:
    gp = ground(parse_program(source))
    return DPI(gp=gp, bg=frozenset(bg), pos_tests=frozenset(pos), neg_tests=frozenset(neg))


@pytest.fixture()
def odd_loop_dpi_with_tests(odd_loop_ground) -> DPI:
    return DPI(
        gp=odd_loop_ground,
        bg=odd_loop_ground.background_ids,
        pos_tests=frozenset({signed(pos="a")}),
        neg_tests=frozenset({signed(neg="b")}),
    )


class TestSignedAtomSets:
    def test_complement_swaps_signs(self):
        assert complement(signed(pos="b")) == signed(neg="b")

    def test_complement_of_empty(self):
        assert complement(signed()) == signed()

    def test_complement_is_involution(self):
        t = signed(pos="a", neg="c")
        assert complement(complement(t)) == t

    def test_overlapping_signs_rejected(self):
        with pytest.raises(DiagnosisError):
            SignedAtomSet(positive=atoms("a"), negative=atoms("a"))


class TestNormalizeTests:
    def test_bravely_false_becomes_positive(self):
        pos, neg = normalize_tests(
            frozenset(), frozenset(), frozenset(), frozenset({signed(pos="c")})
        )
        assert pos == frozenset({signed(neg="c")})
        assert neg == frozenset()

    def test_cautious_pair(self):
        pos, neg = normalize_tests(
            frozenset({signed(pos="a")}),
            frozenset({signed(pos="b")}),
            frozenset(),
            frozenset(),
        )
        assert pos == frozenset({signed(pos="a")})
        assert neg == frozenset({signed(neg="b")})

    def test_all_empty(self):
        assert normalize_tests(frozenset(), frozenset(), frozenset(), frozenset()) == (
            frozenset(),
            frozenset(),
        )


class TestMetaSatisfies:
    def test_positive_membership(self):
        assert meta_satisfies(atoms("a"), signed(pos="a"))

    def test_negative_violation(self):
        assert not meta_satisfies(atoms("a,b"), signed(neg="b"))

    def test_empty_interpretation_satisfies_negatives(self):
        assert meta_satisfies(frozenset(), signed(neg="b"))


class TestVerifyDiagnosis:
    def test_plain_odd_loop_accepts_each_unsatisfied_rule(self, odd_loop_dpi, d2):
        assert verify_diagnosis(odd_loop_dpi, d2)

    def test_tests_reject_d3(self, odd_loop_dpi_with_tests, d3):
        assert not verify_diagnosis(odd_loop_dpi_with_tests, d3)

    def test_tests_keep_d2(self, odd_loop_dpi_with_tests, d2):
        assert verify_diagnosis(odd_loop_dpi_with_tests, d2)

    def test_out_of_universe_error_atom_rejected(self, odd_loop_dpi):
        with pytest.raises(DiagnosisError):
            verify_diagnosis(odd_loop_dpi, frozenset({unsatisfied("r99")}))
        with pytest.raises(DiagnosisError):
            # r5 is background, so blaming it is outside the universe
            verify_diagnosis(odd_loop_dpi, frozenset({violated("r5")}))


class TestDpiValidation:
    def test_unknown_background_rule_rejected(self, odd_loop_ground):
        with pytest.raises(DiagnosisError, match="r99"):
            DPI(gp=odd_loop_ground, bg=frozenset({"r99"}))

    def test_test_case_with_unknown_atom_rejected(self, odd_loop_ground):
        with pytest.raises(DiagnosisError, match="zz"):
            DPI(
                gp=odd_loop_ground,
                bg=odd_loop_ground.background_ids,
                pos_tests=frozenset({signed(pos="zz")}),
            )


class TestFeasible:
    def test_plain_odd_loop(self, odd_loop_dpi):
        assert feasible(odd_loop_dpi)

    def test_contradictory_positive_tests(self, odd_loop_ground):
        dpi = DPI(
            gp=odd_loop_ground,
            bg=odd_loop_ground.background_ids,
            pos_tests=frozenset({signed(pos="a"), signed(neg="a")}),
        )
        assert not feasible(dpi)

    def test_odd_loop_with_consistent_tests(self, odd_loop_dpi_with_tests):
        assert feasible(odd_loop_dpi_with_tests)


class TestComputeDiagnoses:
    def test_odd_loop_yields_four_singletons(self, odd_loop_dpi):
        search = compute_diagnoses(odd_loop_dpi, 9)
        assert [d.key for d in search.diagnoses] == [
            "unsatisfied:r1",
            "unsatisfied:r2",
            "unsatisfied:r3",
            "unsatisfied:r4",
        ]
        assert not search.truncated

    def test_tests_narrow_to_d2(self, odd_loop_dpi_with_tests, d2):
        search = compute_diagnoses(odd_loop_dpi_with_tests, 9)
        assert search.diagnoses == (d2,)

    def test_positive_c_narrows_to_d4(self, odd_loop_ground, d4):
        dpi = DPI(
            gp=odd_loop_ground,
            bg=odd_loop_ground.background_ids,
            pos_tests=frozenset({signed(pos="c")}),
        )
        assert compute_diagnoses(dpi, 9).diagnoses == (d4,)

    def test_n_truncates_deterministically(self, odd_loop_dpi):
        full = compute_diagnoses(odd_loop_dpi, 9).diagnoses
        for n in (1, 2, 3):
            search = compute_diagnoses(odd_loop_dpi, n)
            assert search.diagnoses == full[:n]
            assert search.truncated

    def test_diagnoses_never_blame_background(self, odd_loop_dpi):
        for d in compute_diagnoses(odd_loop_dpi, 9).diagnoses:
            for e in d.errors:
                if e.kind in (ErrorKind.UNSATISFIED, ErrorKind.VIOLATED):
                    assert e.rule_id not in odd_loop_dpi.bg

    def test_loop_program_diagnosis(self):
        dpi = dpi_of("a :- b.\nb :- a.\nc.")
        keys = [d.key for d in compute_diagnoses(dpi, 20).diagnoses]
        # the two-atom loop explanation needs both loop atoms, so it only
        # appears at cardinality 2
        assert "unsatisfied:r3" in keys
        assert "ufLoop:a,ufLoop:b" in keys


def all_subsets(errors):
    members = sorted(errors)
    for size in range(len(members)):
        yield from (frozenset(c) for c in itertools.combinations(members, size))


@given(st.integers(0, 10_000))
@settings(max_examples=15, deadline=None)
def test_returned_diagnoses_are_subset_minimal(seed):
    dpi = dpi_of(random_program_source(random.Random(seed)))
    search = compute_diagnoses(dpi, 6, k_max=3)
    for d in search.diagnoses:
        assert verify_diagnosis(dpi, d)
        for subset in all_subsets(d.errors):
            if subset:
                assert not verify_diagnosis(dpi, subset)
    for a, b in itertools.permutations(search.diagnoses, 2):
        assert not (a.errors <= b.errors)


@given(st.integers(0, 10_000))
@settings(max_examples=15, deadline=None)
def test_prefix_property(seed):
    dpi = dpi_of(random_program_source(random.Random(seed)))
    longer = compute_diagnoses(dpi, 7).diagnoses
    shorter = compute_diagnoses(dpi, 3).diagnoses
    assert longer[: len(shorter)] == shorter
    assert len(shorter) <= 3


@given(st.integers(0, 10_000))
@settings(max_examples=15, deadline=None)
def test_positive_test_prunes_monotonically_at_min_cardinality(seed):
    rng = random.Random(seed)
    dpi = dpi_of(random_program_source(rng))
    before = compute_diagnoses(dpi, 12).diagnoses
    if not before or not dpi.gp.atom_universe:
        return
    min_card = len(before[0])
    at_min = {d for d in before if len(d) == min_card}
    pinned = rng.choice(sorted(dpi.gp.atom_universe))
    updated = dpi.with_tests(pos=frozenset({SignedAtomSet(positive=frozenset({pinned}))}))
    after = compute_diagnoses(updated, 12).diagnoses
    assert {d for d in after if len(d) == min_card} <= at_min


class TestJson:
    def test_diagnosis_rendering(self, d2):
        assert diagnosis_to_json(d2) == {"errors": [{"kind": "unsatisfied", "rule": "r2"}]}
        assert diagnosis_from_json(diagnosis_to_json(d2)) == d2

    def test_test_case_rendering(self):
        t = signed(pos="a", neg="b")
        assert signed_set_to_json(t) == {"pos": ["a"], "neg": ["b"]}
        assert signed_set_from_json(signed_set_to_json(t)) == t

    def test_dpi_rendering(self, odd_loop_dpi_with_tests):
        data = dpi_to_json(odd_loop_dpi_with_tests)
        assert data["background"] == ["r5"]
        assert data["positive_tests"] == [{"pos": ["a"], "neg": []}]
        assert data["negative_tests"] == [{"pos": [], "neg": ["b"]}]

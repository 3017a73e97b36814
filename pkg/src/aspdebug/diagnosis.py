"""Diagnosis problem instances and cardinality-minimal diagnosis search.

A diagnosis is a set of error atoms whose explained interpretations satisfy
every positive test case universally and every negative one existentially.
The solver loop of the original formulation is replaced by deterministic
subset enumeration over the error universe in nondecreasing cardinality;
never revisiting a candidate plays the role of the exclusion constraint.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field, replace

from . import explain
from .explain import ErrorAtom, InterpretationRow
from .program import Atom, DEFAULT_ATOM_CAP, GroundProgram, Interpretation

DEFAULT_N = 9
DEFAULT_K_MAX = 4


class DiagnosisError(Exception):
    pass


@dataclass(frozen=True)
class SignedAtomSet:
    """A test case: atoms required true and atoms required false."""

    positive: frozenset[Atom] = frozenset()
    negative: frozenset[Atom] = frozenset()

    def __post_init__(self):
        if self.positive & self.negative:
            raise DiagnosisError("test case asserts an atom both true and false")

    def sort_key(self) -> tuple:
        return (
            tuple(sorted(str(a) for a in self.positive)),
            tuple(sorted(str(a) for a in self.negative)),
        )

    def __str__(self) -> str:
        pos = ",".join(sorted(str(a) for a in self.positive))
        neg = ",".join(f"-{a}" for a in sorted(str(a) for a in self.negative))
        return "{" + ",".join(p for p in (pos, neg) if p) + "}"


def complement(t: SignedAtomSet) -> SignedAtomSet:
    return SignedAtomSet(positive=t.negative, negative=t.positive)


def normalize_tests(
    tc_plus: frozenset[SignedAtomSet],
    tc_minus: frozenset[SignedAtomSet],
    tb_plus: frozenset[SignedAtomSet],
    tb_minus: frozenset[SignedAtomSet],
) -> tuple[frozenset[SignedAtomSet], frozenset[SignedAtomSet]]:
    """Collapse the four test-case flavors into positive/negative sets:
    P gets the cautiously-true cases plus complemented bravely-false ones,
    N the bravely-true cases plus complemented cautiously-false ones."""
    pos = frozenset(tc_plus) | frozenset(complement(t) for t in tb_minus)
    neg = frozenset(tb_plus) | frozenset(complement(t) for t in tc_minus)
    return pos, neg


def meta_satisfies(i: Interpretation, t: SignedAtomSet) -> bool:
    return t.positive <= i and not (t.negative & i)


@dataclass(frozen=True)
class Diagnosis:
    errors: frozenset[ErrorAtom]

    def __post_init__(self):
        if not self.errors:
            raise DiagnosisError("a diagnosis must contain at least one error atom")

    @property
    def key(self) -> str:
        return ",".join(e.key for e in sorted(self.errors))

    def sorted_errors(self) -> tuple[ErrorAtom, ...]:
        return tuple(sorted(self.errors))

    def __len__(self) -> int:
        return len(self.errors)

    def __str__(self) -> str:
        return "{" + ", ".join(str(e) for e in self.sorted_errors()) + "}"


@dataclass(frozen=True)
class DPI:
    """Diagnosis problem instance: program, protected background rule ids and
    the accumulated positive/negative test cases."""

    gp: GroundProgram
    bg: frozenset[str] = frozenset()
    pos_tests: frozenset[SignedAtomSet] = frozenset()
    neg_tests: frozenset[SignedAtomSet] = frozenset()
    atom_cap: int = field(default=DEFAULT_ATOM_CAP, compare=False)

    def __post_init__(self):
        unknown = self.bg - self.gp.rule_ids()
        if unknown:
            raise DiagnosisError(
                f"background references unknown rule ids: {sorted(unknown)}"
            )
        universe = self.gp.atom_universe
        for t in self.pos_tests | self.neg_tests:
            stray = (t.positive | t.negative) - universe
            if stray:
                names = ", ".join(sorted(str(a) for a in stray))
                raise DiagnosisError(f"test case mentions unknown atoms: {names}")

    def with_tests(
        self,
        pos: frozenset[SignedAtomSet] | None = None,
        neg: frozenset[SignedAtomSet] | None = None,
    ) -> "DPI":
        return replace(
            self,
            pos_tests=self.pos_tests if pos is None else pos,
            neg_tests=self.neg_tests if neg is None else neg,
        )

    def rows(self) -> tuple[InterpretationRow, ...]:
        return explain.interpretation_rows(self.gp, self.bg, self.atom_cap)

    def error_universe(self) -> frozenset[ErrorAtom]:
        return explain.error_universe(self.gp, self.bg)


def _explained_rows(
    dpi: DPI, errors: frozenset[ErrorAtom]
) -> tuple[InterpretationRow, ...]:
    return tuple(
        row for row in dpi.rows() if explain._row_explained(row, errors)
    )


def _rows_pass_tests(
    dpi: DPI, rows: tuple[InterpretationRow, ...]
) -> bool:
    if not rows:
        return False
    for p in dpi.pos_tests:
        if not all(meta_satisfies(row.interpretation, p) for row in rows):
            return False
    for n in dpi.neg_tests:
        if not any(meta_satisfies(row.interpretation, n) for row in rows):
            return False
    return True


def verify_diagnosis(dpi: DPI, errors: frozenset[ErrorAtom] | Diagnosis) -> bool:
    """Check the diagnosis conditions: a non-empty explained interpretation
    set, every positive test satisfied by all of them, every negative test by
    at least one."""
    if isinstance(errors, Diagnosis):
        errors = errors.errors
    stray = errors - dpi.error_universe()
    if stray:
        names = ", ".join(str(e) for e in sorted(stray))
        raise DiagnosisError(f"error atoms outside the universe: {names}")
    return _rows_pass_tests(dpi, _explained_rows(dpi, errors))


def diagnosis_interpretations(
    dpi: DPI, d: Diagnosis | frozenset[ErrorAtom]
) -> tuple[Interpretation, ...]:
    errors = d.errors if isinstance(d, Diagnosis) else d
    return explain.interpretations_of(dpi.gp, dpi.bg, errors, dpi.atom_cap)


def feasible(dpi: DPI) -> bool:
    """The semantic form of the existence check: some admissible non-answer-set
    interpretation satisfies all positive tests, and for every negative test
    one of those also satisfies it."""
    candidates = [
        row.interpretation
        for row in dpi.rows()
        if row.admissible
        and not row.answer_set
        and all(meta_satisfies(row.interpretation, p) for p in dpi.pos_tests)
    ]
    if not candidates:
        return False
    for n in dpi.neg_tests:
        if not any(meta_satisfies(i, n) for i in candidates):
            return False
    return True


@dataclass(frozen=True)
class DiagnosisSearch:
    """Ordered minimal-diagnosis search result.  ``cap_reached`` warns that
    the cardinality cap cut enumeration short of the requested count;
    ``truncated`` that enumeration stopped at the requested count with
    candidates still unexamined."""

    diagnoses: tuple[Diagnosis, ...]
    cap_reached: bool = False
    truncated: bool = False

    def __iter__(self):
        return iter(self.diagnoses)

    def __len__(self) -> int:
        return len(self.diagnoses)

    def __getitem__(self, idx):
        return self.diagnoses[idx]


def _active_error_atoms(dpi: DPI) -> tuple[ErrorAtom, ...]:
    # only atoms occurring in some admissible row's base or loop cover can
    # change what a candidate explains; diagnoses using any other atom are
    # always supersets of ones found earlier
    active: set[ErrorAtom] = set()
    for row in dpi.rows():
        if not row.admissible or row.answer_set:
            continue
        active |= row.base
        for cover in row.loop_covers:
            active |= cover
    return tuple(sorted(active))


def compute_diagnoses(
    dpi: DPI, n: int = DEFAULT_N, k_max: int = DEFAULT_K_MAX
) -> DiagnosisSearch:
    """Enumerate subsets of the error universe in nondecreasing cardinality
    (lexicographic within a level), collecting those that verify, skipping
    supersets of anything already found, until ``n`` hits or ``k_max``."""
    if n < 1:
        raise ValueError("n must be at least 1")
    found: list[Diagnosis] = []
    atoms = _active_error_atoms(dpi)
    rows = dpi.rows()
    for size in range(1, min(k_max, len(atoms)) + 1):
        for combo in itertools.combinations(atoms, size):
            candidate = frozenset(combo)
            if any(d.errors <= candidate for d in found):
                continue
            if _rows_pass_tests(
                dpi,
                tuple(r for r in rows if explain._row_explained(r, candidate)),
            ):
                found.append(Diagnosis(errors=candidate))
                if len(found) >= n:
                    return DiagnosisSearch(diagnoses=tuple(found), truncated=True)
    return DiagnosisSearch(
        diagnoses=tuple(found),
        cap_reached=len(found) < n and k_max < len(atoms),
    )


def diagnosis_to_json(d: Diagnosis) -> dict:
    errors = []
    for e in d.sorted_errors():
        entry: dict[str, str] = {"kind": e.kind.value}
        if e.rule_id is not None:
            entry["rule"] = e.rule_id
        else:
            entry["atom"] = str(e.atom)
        errors.append(entry)
    return {"errors": errors}


def diagnosis_from_json(data: dict) -> Diagnosis:
    errors = set()
    for entry in data["errors"]:
        target = entry.get("rule") or entry.get("atom")
        errors.add(explain.error_atom_from_key(f"{entry['kind']}:{target}"))
    return Diagnosis(errors=frozenset(errors))


def signed_set_to_json(t: SignedAtomSet) -> dict:
    return {
        "pos": sorted(str(a) for a in t.positive),
        "neg": sorted(str(a) for a in t.negative),
    }


def signed_set_from_json(data: dict) -> SignedAtomSet:
    from .program import atom as parse_atom

    return SignedAtomSet(
        positive=frozenset(parse_atom(a) for a in data.get("pos", ())),
        negative=frozenset(parse_atom(a) for a in data.get("neg", ())),
    )


def dpi_to_json(dpi: DPI) -> dict:
    return {
        "background": sorted(dpi.bg),
        "positive_tests": [
            signed_set_to_json(t)
            for t in sorted(dpi.pos_tests, key=SignedAtomSet.sort_key)
        ],
        "negative_tests": [
            signed_set_to_json(t)
            for t in sorted(dpi.neg_tests, key=SignedAtomSet.sort_key)
        ],
    }


def dumps(obj: dict) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))

"""Fault explanations for interpretations that fail to be answer sets.

The debugging meta-program's semantics is implemented directly: for an
interpretation I the deterministic error base collects unsatisfied rules,
violated constraints and unsupported atoms; unfounded loops are the guessed
part and only need to be covered by an explanation when the base is empty
(otherwise the base already witnesses that I is broken).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

from . import semantics
from .program import (
    Atom,
    AtomCapExceededError,
    DEFAULT_ATOM_CAP,
    GroundProgram,
    Interpretation,
    atom as parse_atom,
)


class ErrorKind(Enum):
    UNSATISFIED = "unsatisfied"
    VIOLATED = "violated"
    UNSUPPORTED = "unsupported"
    UF_LOOP = "ufLoop"


_KIND_RANK = {
    ErrorKind.UNSATISFIED: 0,
    ErrorKind.VIOLATED: 1,
    ErrorKind.UNSUPPORTED: 2,
    ErrorKind.UF_LOOP: 3,
}


@dataclass(frozen=True)
class ErrorAtom:
    """One error-indicating atom: a rule id for unsatisfied/violated, an atom
    of the universe for unsupported/ufLoop."""

    kind: ErrorKind
    rule_id: str | None = None
    atom: Atom | None = None

    def __post_init__(self):
        if self.kind in (ErrorKind.UNSATISFIED, ErrorKind.VIOLATED):
            if self.rule_id is None or self.atom is not None:
                raise ValueError(f"{self.kind.value} must target a rule id")
        else:
            if self.atom is None or self.rule_id is not None:
                raise ValueError(f"{self.kind.value} must target an atom")

    @property
    def target(self) -> str:
        return self.rule_id if self.rule_id is not None else str(self.atom)

    def sort_key(self) -> tuple[int, str]:
        return (_KIND_RANK[self.kind], self.target)

    def __lt__(self, other: "ErrorAtom") -> bool:
        return self.sort_key() < other.sort_key()

    def __str__(self) -> str:
        return f"{self.kind.value}({self.target})"

    @property
    def key(self) -> str:
        return f"{self.kind.value}:{self.target}"


def unsatisfied(rule_id: str) -> ErrorAtom:
    return ErrorAtom(ErrorKind.UNSATISFIED, rule_id=rule_id)


def violated(rule_id: str) -> ErrorAtom:
    return ErrorAtom(ErrorKind.VIOLATED, rule_id=rule_id)


def unsupported(a: Atom) -> ErrorAtom:
    return ErrorAtom(ErrorKind.UNSUPPORTED, atom=a)


def uf_loop(a: Atom) -> ErrorAtom:
    return ErrorAtom(ErrorKind.UF_LOOP, atom=a)


def error_atom_from_key(key: str) -> ErrorAtom:
    """Inverse of :attr:`ErrorAtom.key`, e.g. ``"unsatisfied:r2"``."""
    kind_name, _, target = key.partition(":")
    if not target:
        raise ValueError(f"malformed error-atom key {key!r}")
    kind = ErrorKind(kind_name)
    if kind in (ErrorKind.UNSATISFIED, ErrorKind.VIOLATED):
        return ErrorAtom(kind, rule_id=target)
    return ErrorAtom(kind, atom=parse_atom(target))


def error_base(gp: GroundProgram, i: Interpretation) -> frozenset[ErrorAtom]:
    """The deterministic error atoms of ``i``: unsatisfied non-constraints,
    violated constraints and unsupported true atoms."""
    out: set[ErrorAtom] = set()
    for r in gp.rules:
        if not semantics.is_applicable(r, i):
            continue
        if r.is_constraint:
            out.add(violated(r.id))
        elif not (r.head & i):
            out.add(unsatisfied(r.id))
    for a in i:
        if not semantics.is_supported_atom(gp, a, i):
            out.add(unsupported(a))
    return frozenset(out)


def is_admissible(
    gp: GroundProgram, bg: frozenset[str], i: Interpretation
) -> bool:
    """False when the interpretation blames a background rule."""
    return not any(
        e.kind in (ErrorKind.UNSATISFIED, ErrorKind.VIOLATED)
        and e.rule_id in bg
        for e in error_base(gp, i)
    )


def error_universe(
    gp: GroundProgram, bg: frozenset[str] = frozenset()
) -> frozenset[ErrorAtom]:
    out: set[ErrorAtom] = set()
    for r in gp.rules:
        if r.id in bg:
            continue
        out.add(violated(r.id) if r.is_constraint else unsatisfied(r.id))
    for a in gp.atom_universe:
        out.add(unsupported(a))
        out.add(uf_loop(a))
    return frozenset(out)


@dataclass(frozen=True)
class InterpretationRow:
    """Everything the diagnosis engine needs to know about one interpretation."""

    interpretation: Interpretation
    base: frozenset[ErrorAtom]
    loop_covers: tuple[frozenset[ErrorAtom], ...]
    admissible: bool
    answer_set: bool


@lru_cache(maxsize=32)
def interpretation_rows(
    gp: GroundProgram, bg: frozenset[str], atom_cap: int = DEFAULT_ATOM_CAP
) -> tuple[InterpretationRow, ...]:
    """Error base, unfounded-loop covers and status for every I ⊆ At(P),
    computed once per (program, background) pair."""
    if len(gp.atom_universe) > atom_cap:
        raise AtomCapExceededError(len(gp.atom_universe), atom_cap)
    rows = []
    for i in semantics.interpretation_space(gp.atom_universe):
        base = error_base(gp, i)
        loops = semantics.unfounded_loops(gp, i)
        covers = tuple(
            sorted(
                (frozenset(uf_loop(a) for a in loop) for loop in loops),
                key=lambda c: sorted(e.sort_key() for e in c),
            )
        )
        admissible = not any(
            e.kind in (ErrorKind.UNSATISFIED, ErrorKind.VIOLATED)
            and e.rule_id in bg
            for e in base
        )
        rows.append(
            InterpretationRow(
                interpretation=i,
                base=base,
                loop_covers=covers,
                admissible=admissible,
                answer_set=semantics.is_answer_set(gp, i),
            )
        )
    return tuple(rows)


def _row_explained(row: InterpretationRow, d: frozenset[ErrorAtom]) -> bool:
    if not row.admissible or row.answer_set:
        return False
    if not (row.base <= d):
        return False
    if row.base:
        return True
    return any(cover <= d for cover in row.loop_covers)


def explains(
    gp: GroundProgram,
    bg: frozenset[str],
    d: frozenset[ErrorAtom],
    i: Interpretation,
) -> bool:
    """True iff ``d`` is a consistent explanation for ``i`` missing from the
    answer sets: ``i`` is admissible, not an answer set, its error base is
    covered by ``d`` and, when the base is empty, ``d`` covers some unfounded
    loop of ``i``."""
    base = error_base(gp, i)
    covers = tuple(
        frozenset(uf_loop(a) for a in loop)
        for loop in semantics.unfounded_loops(gp, i)
    )
    row = InterpretationRow(
        interpretation=i,
        base=base,
        loop_covers=covers,
        admissible=is_admissible(gp, bg, i),
        answer_set=semantics.is_answer_set(gp, i),
    )
    return _row_explained(row, d)


def interpretations_of(
    gp: GroundProgram,
    bg: frozenset[str],
    d: frozenset[ErrorAtom],
    atom_cap: int = DEFAULT_ATOM_CAP,
) -> tuple[Interpretation, ...]:
    """All interpretations ``d`` explains, in (size, lexicographic) order."""
    return tuple(
        row.interpretation
        for row in interpretation_rows(gp, bg, atom_cap)
        if _row_explained(row, d)
    )

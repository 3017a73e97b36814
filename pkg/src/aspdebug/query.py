"""Query generation and selection for discriminating between diagnoses.

A query is a set of atoms put to the oracle ("must all of these be true in
the intended answer sets?").  Candidate queries come from the atoms shared
by all interpretations of a seed subset of diagnoses; each seed contributes
its full common-positive set and every single atom of it.  The single-atom
queries are what makes the elimination guarantees sound, but the combined
query is kept because it can carry more information per answer.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from enum import Enum
from typing import Mapping

from .diagnosis import (
    DPI,
    Diagnosis,
    SignedAtomSet,
    diagnosis_interpretations,
)
from .explain import ErrorAtom, error_atom_from_key
from .program import Atom

YES = "yes"
NO = "no"
CAUTIOUSLY_TRUE = "cautiously_true"
CAUTIOUSLY_FALSE = "cautiously_false"
BRAVELY_TRUE = "bravely_true"
BRAVELY_FALSE = "bravely_false"

BINARY_ANSWERS = (YES, NO)
TEST_ANSWERS = (CAUTIOUSLY_TRUE, CAUTIOUSLY_FALSE, BRAVELY_TRUE, BRAVELY_FALSE)
# which of yes/no each four-valued answer behaves like for prediction purposes
ANSWER_DIRECTION = {
    YES: YES,
    CAUTIOUSLY_TRUE: YES,
    BRAVELY_TRUE: YES,
    NO: NO,
    CAUTIOUSLY_FALSE: NO,
    BRAVELY_FALSE: NO,
}

PriorMap = dict[Diagnosis, float]

Query = frozenset[Atom]


class QueryError(Exception):
    pass


class InconsistentAnswersError(QueryError):
    """Raised when an answer contradicts every remaining diagnosis."""


class Classification(Enum):
    X = "X"
    NOT_X = "notX"
    ZERO = "zero"


@dataclass(frozen=True)
class Partition:
    """A query together with the diagnoses predicting yes (dx), predicting
    no (dnx) and making no prediction (dz)."""

    query: Query
    dx: tuple[Diagnosis, ...]
    dnx: tuple[Diagnosis, ...]
    dz: tuple[Diagnosis, ...]

    def query_key(self) -> tuple[str, ...]:
        return tuple(sorted(str(a) for a in self.query))

    def diagnoses(self) -> tuple[Diagnosis, ...]:
        return self.dx + self.dnx + self.dz

    def __str__(self) -> str:
        atoms = ",".join(self.query_key())
        return (
            f"<{{{atoms}}}, |dx|={len(self.dx)}, "
            f"|dnx|={len(self.dnx)}, |dz|={len(self.dz)}>"
        )


@dataclass(frozen=True)
class PartitionSearch:
    partitions: tuple[Partition, ...]
    subsets_examined: int

    def __iter__(self):
        return iter(self.partitions)

    def __len__(self) -> int:
        return len(self.partitions)


def common_atoms(dpi: DPI, ds: tuple[Diagnosis, ...]) -> SignedAtomSet:
    """The signed atoms shared by every interpretation of every diagnosis:
    positive part true everywhere, negative part false everywhere."""
    if not ds:
        raise QueryError("common_atoms needs at least one diagnosis")
    universe = dpi.gp.atom_universe
    true_everywhere = set(universe)
    false_everywhere = set(universe)
    for d in ds:
        for i in diagnosis_interpretations(dpi, d):
            true_everywhere &= i
            false_everywhere -= i
    return SignedAtomSet(
        positive=frozenset(true_everywhere), negative=frozenset(false_everywhere)
    )


def classify(dpi: DPI, d: Diagnosis, q: Query) -> Classification:
    """X when all query atoms are true in every interpretation of ``d``,
    notX when all are false in every interpretation, zero otherwise."""
    if not q:
        raise QueryError("queries must be non-empty")
    interps = diagnosis_interpretations(dpi, d)
    if all(q <= i for i in interps):
        return Classification.X
    if all(not (q & i) for i in interps):
        return Classification.NOT_X
    return Classification.ZERO


def _partition_for_query(
    dpi: DPI, ds: tuple[Diagnosis, ...], q: Query
) -> Partition:
    dx, dnx, dz = [], [], []
    for d in ds:
        c = classify(dpi, d, q)
        (dx if c is Classification.X else dnx if c is Classification.NOT_X else dz).append(d)
    return Partition(query=q, dx=tuple(dx), dnx=tuple(dnx), dz=tuple(dz))


def find_partitions(
    dpi: DPI, ds: tuple[Diagnosis, ...], max_diagnoses: int = 16
) -> PartitionSearch:
    """Examine every non-empty subset of ``ds`` as a seed, derive queries from
    its common positive atoms and keep the partitions able to discriminate
    (non-empty dnx).  Output is deduplicated by query, first seed wins."""
    ds = tuple(ds)
    if len(ds) > max_diagnoses:
        raise QueryError(
            f"{len(ds)} diagnoses exceed the subset-enumeration limit of "
            f"{max_diagnoses}"
        )
    examined = 0
    seen_queries: set[Query] = set()
    partitions: list[Partition] = []
    for mask in range(1, 1 << len(ds)):
        examined += 1
        seed = tuple(d for bit, d in enumerate(ds) if mask & (1 << bit))
        shared = common_atoms(dpi, seed)
        if not shared.positive:
            continue
        candidates: list[Query] = [frozenset(shared.positive)]
        if len(shared.positive) > 1:
            candidates.extend(frozenset({a}) for a in sorted(shared.positive))
        for q in candidates:
            if q in seen_queries:
                continue
            seen_queries.add(q)
            partition = _partition_for_query(dpi, ds, q)
            if partition.dnx:
                partitions.append(partition)
    return PartitionSearch(
        partitions=tuple(partitions), subsets_examined=examined
    )


def apply_answer(dpi: DPI, q: Query, answer: str) -> DPI:
    """yes adds the query as a positive test case, no as a negative one."""
    if not q:
        raise QueryError("queries must be non-empty")
    if answer == YES:
        return dpi.with_tests(pos=dpi.pos_tests | {SignedAtomSet(positive=q)})
    if answer == NO:
        return dpi.with_tests(neg=dpi.neg_tests | {SignedAtomSet(negative=q)})
    raise QueryError(f"binary answer must be yes or no, got {answer!r}")


def apply_test_answer(dpi: DPI, q: Query, answer: str) -> DPI:
    """Four-valued answer vocabulary: cautious answers constrain all
    interpretations (P) or demand a witness (N); brave answers the reverse."""
    if not q:
        raise QueryError("queries must be non-empty")
    if answer == CAUTIOUSLY_TRUE:
        return dpi.with_tests(pos=dpi.pos_tests | {SignedAtomSet(positive=q)})
    if answer == CAUTIOUSLY_FALSE:
        return dpi.with_tests(neg=dpi.neg_tests | {SignedAtomSet(negative=q)})
    if answer == BRAVELY_TRUE:
        return dpi.with_tests(neg=dpi.neg_tests | {SignedAtomSet(positive=q)})
    if answer == BRAVELY_FALSE:
        return dpi.with_tests(pos=dpi.pos_tests | {SignedAtomSet(negative=q)})
    raise QueryError(f"unknown test answer {answer!r}")


def apply_any_answer(dpi: DPI, q: Query, answer: str) -> DPI:
    if answer in BINARY_ANSWERS:
        return apply_answer(dpi, q, answer)
    return apply_test_answer(dpi, q, answer)


def score_split(p: Partition) -> int:
    """Myopic split-in-half score; 0 is a perfect halving with no bystanders."""
    return abs(len(p.dx) - len(p.dnx)) + len(p.dz)


def query_probability(p: Partition, pr: PriorMap) -> tuple[float, float]:
    """Chance of a yes/no answer if the target diagnosis is drawn from the
    priors; non-predicting diagnoses split their mass evenly."""
    p_yes = sum(pr[d] for d in p.dx) + 0.5 * sum(pr[d] for d in p.dz)
    return p_yes, 1.0 - p_yes


def score_entropy(p: Partition, pr: PriorMap) -> float:
    """Expected residual uncertainty, shifted to [0, 2]; lower is better and
    0 means a perfectly even, bystander-free split."""

    def plog(x: float) -> float:
        return x * math.log2(x) if x > 0.0 else 0.0

    p_yes, p_no = query_probability(p, pr)
    dz_mass = sum(pr[d] for d in p.dz)
    return plog(p_yes) + plog(p_no) + dz_mass + 1.0


def select_query(
    ps: tuple[Partition, ...] | PartitionSearch,
    strategy: str = "split",
    pr: PriorMap | None = None,
) -> Partition:
    """Pick the partition minimizing the strategy score; ties prefer fewer
    query atoms, then the lexicographically smallest query."""
    partitions = tuple(ps)
    if not partitions:
        raise QueryError("no partitions to select from")
    if strategy == "split":
        score = lambda p: float(score_split(p))
    elif strategy == "entropy":
        if pr is None:
            raise QueryError("entropy strategy requires priors")
        score = lambda p: score_entropy(p, pr)
    else:
        raise QueryError(f"unknown strategy {strategy!r}")
    return min(
        partitions, key=lambda p: (score(p), len(p.query), p.query_key())
    )


def bayes_update(pr: PriorMap, p: Partition, answer: str) -> PriorMap:
    """Posterior over diagnoses after an answer: the predicting set keeps its
    mass, the contradicted set drops to zero, bystanders are discounted by
    the indifference likelihood 1/2."""
    direction = ANSWER_DIRECTION.get(answer)
    if direction is None:
        raise QueryError(f"unknown answer {answer!r}")
    predicted = p.dx if direction == YES else p.dnx
    contradicted = p.dnx if direction == YES else p.dx
    posterior: PriorMap = {}
    for d in p.diagnoses():
        if d in contradicted:
            likelihood = 0.0
        elif d in predicted:
            likelihood = 1.0
        else:
            likelihood = 0.5
        posterior[d] = likelihood * pr[d]
    total = sum(posterior.values())
    if total <= 0.0:
        raise InconsistentAnswersError(
            "the answer contradicts every remaining diagnosis"
        )
    return {d: mass / total for d, mass in posterior.items()}


def diagnosis_prior(
    fault_probs: Mapping[ErrorAtom, float],
    d: Diagnosis,
    universe: frozenset[ErrorAtom],
) -> float:
    """Unnormalized prior of ``d`` from independent per-error-atom fault
    probabilities; the caller normalizes over the live diagnosis set."""
    for e, prob in fault_probs.items():
        if not (0.0 < prob < 1.0):
            raise QueryError(
                f"fault probability for {e} must be strictly between 0 and 1"
            )
    mass = 1.0
    # sorted so the float product is reproducible across processes
    for e in sorted(universe):
        prob = fault_probs[e]
        mass *= prob if e in d.errors else (1.0 - prob)
    return mass


def uniform_priors(ds: tuple[Diagnosis, ...]) -> PriorMap:
    if not ds:
        return {}
    return {d: 1.0 / len(ds) for d in ds}


def priors_from_fault_probs(
    fault_probs: Mapping[ErrorAtom, float],
    ds: tuple[Diagnosis, ...],
    universe: frozenset[ErrorAtom],
    default_prob: float = 0.1,
) -> PriorMap:
    """Normalized priors over ``ds``; error atoms absent from the map get
    ``default_prob``."""
    full = {e: fault_probs.get(e, default_prob) for e in universe}
    raw = {d: diagnosis_prior(full, d, universe) for d in ds}
    total = sum(raw.values())
    if total <= 0.0:
        raise QueryError("fault probabilities assign zero mass to every diagnosis")
    return {d: mass / total for d, mass in raw.items()}


def load_fault_probs(text: str) -> dict[ErrorAtom, float]:
    """Parse the priors file format: ``{"fault_probs": {"kind:target": p}}``."""
    data = json.loads(text)
    table = data.get("fault_probs", {})
    return {error_atom_from_key(key): float(p) for key, p in table.items()}

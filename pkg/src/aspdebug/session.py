"""Interactive debugging sessions.

A session owns the evolving diagnosis problem: it computes the initial
diagnoses, keeps normalized beliefs over them, picks the next query, applies
answers and stops once a single explanation remains (or none can be told
apart).  Answers only ever shrink the live diagnosis list, which is what
bounds the number of queries and keeps the belief bookkeeping exact.
"""

from __future__ import annotations

import json
import uuid
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone
from typing import Callable

from . import query as q
from .diagnosis import (
    DEFAULT_K_MAX,
    DEFAULT_N,
    DPI,
    Diagnosis,
    SignedAtomSet,
    compute_diagnoses,
    diagnosis_from_json,
    diagnosis_interpretations,
    diagnosis_to_json,
    feasible,
    signed_set_from_json,
    signed_set_to_json,
    verify_diagnosis,
)
from .explain import ErrorAtom, error_atom_from_key
from .program import (
    Atom,
    DEFAULT_ATOM_CAP,
    atom as parse_atom,
    ground,
    parse_program,
)

SCHEMA_VERSION = 1

AWAITING_ANSWER = "awaiting_answer"
DONE = "done"
UNDISCRIMINABLE = "undiscriminable"


class SessionError(Exception):
    pass


class InfeasibleProblemError(SessionError):
    pass


class NoPendingQueryError(SessionError):
    pass


class SchemaVersionError(SessionError):
    pass


@dataclass(frozen=True)
class SessionConfig:
    n: int = DEFAULT_N
    k_max: int = DEFAULT_K_MAX
    strategy: str = "split"
    atom_cap: int = DEFAULT_ATOM_CAP
    default_fault_prob: float = 0.1


@dataclass(frozen=True)
class HistoryEntry:
    query: tuple[str, ...]
    answer: str
    timestamp: str


@dataclass
class Session:
    id: str
    source: str
    config: SessionConfig
    dpi: DPI
    fault_probs: dict[ErrorAtom, float] | None
    initial_pos_tests: frozenset[SignedAtomSet]
    initial_neg_tests: frozenset[SignedAtomSet]
    live: list[Diagnosis]
    priors: dict[Diagnosis, float]
    pending: q.Partition | None = None
    history: list[HistoryEntry] = field(default_factory=list)
    status: str = DONE
    cap_reached: bool = False
    truncated: bool = False

    @property
    def done(self) -> bool:
        return self.status != AWAITING_ANSWER

    def survivors(self) -> list[Diagnosis]:
        return list(self.live)


def _select_pending(session: Session) -> None:
    if len(session.live) <= 1:
        session.pending = None
        session.status = DONE
        return
    search = q.find_partitions(
        session.dpi,
        tuple(session.live),
        max_diagnoses=max(16, session.config.n),
    )
    if not search.partitions:
        session.pending = None
        session.status = UNDISCRIMINABLE
        return
    session.pending = q.select_query(
        search, session.config.strategy, session.priors
    )
    session.status = AWAITING_ANSWER


def start_session(
    source: str,
    config: SessionConfig | None = None,
    fault_probs: dict[ErrorAtom, float] | None = None,
    session_id: str | None = None,
    initial_pos_tests: frozenset[SignedAtomSet] = frozenset(),
    initial_neg_tests: frozenset[SignedAtomSet] = frozenset(),
) -> Session:
    """Parse and ground the program, build the diagnosis problem and compute
    the first round of diagnoses and the opening query."""
    config = config or SessionConfig()
    program = parse_program(source)
    gp = ground(program, atom_cap=config.atom_cap)
    dpi = DPI(
        gp=gp,
        bg=gp.background_ids,
        pos_tests=frozenset(initial_pos_tests),
        neg_tests=frozenset(initial_neg_tests),
        atom_cap=config.atom_cap,
    )
    if not feasible(dpi):
        raise InfeasibleProblemError(
            "no diagnosis exists for this problem: no admissible missing-answer-set "
            "interpretation satisfies the positive test cases, or some negative "
            "test case conflicts with them"
        )
    search = compute_diagnoses(dpi, config.n, config.k_max)
    live = list(search.diagnoses)
    if fault_probs is not None:
        priors = q.priors_from_fault_probs(
            fault_probs,
            tuple(live),
            dpi.error_universe(),
            config.default_fault_prob,
        )
    else:
        priors = q.uniform_priors(tuple(live))
    session = Session(
        id=session_id or uuid.uuid4().hex,
        source=source,
        config=config,
        dpi=dpi,
        fault_probs=dict(fault_probs) if fault_probs is not None else None,
        initial_pos_tests=frozenset(initial_pos_tests),
        initial_neg_tests=frozenset(initial_neg_tests),
        live=live,
        priors=priors,
        cap_reached=search.cap_reached,
        truncated=search.truncated,
    )
    _select_pending(session)
    return session


def submit_answer(
    session: Session, answer: str, timestamp: str | None = None
) -> Session:
    """Apply an oracle answer to the pending query: update the test cases,
    drop diagnoses that stop verifying, rebalance beliefs and pick the next
    query (or finish)."""
    if session.pending is None:
        raise NoPendingQueryError("the session has no pending query")
    if answer not in q.ANSWER_DIRECTION:
        raise q.QueryError(f"unknown answer {answer!r}")
    pending = session.pending
    new_dpi = q.apply_any_answer(session.dpi, pending.query, answer)
    survivors = [d for d in session.live if verify_diagnosis(new_dpi, d)]
    posterior = q.bayes_update(session.priors, pending, answer)
    surviving_mass = sum(posterior[d] for d in survivors)
    if surviving_mass <= 0.0:
        raise q.InconsistentAnswersError(
            "answers so far contradict every remaining diagnosis; "
            f"history: {[ (h.query, h.answer) for h in session.history ]}"
        )
    new_priors: dict[Diagnosis, float] = {}
    for d in session.priors:
        if d in survivors:
            new_priors[d] = posterior[d] / surviving_mass
        else:
            new_priors[d] = 0.0
    session.dpi = new_dpi
    session.live = survivors
    session.priors = new_priors
    session.history.append(
        HistoryEntry(
            query=tuple(sorted(str(a) for a in pending.query)),
            answer=answer,
            timestamp=timestamp
            or datetime.now(timezone.utc).isoformat(timespec="microseconds"),
        )
    )
    _select_pending(session)
    return session


Oracle = Callable[[q.Query], str]


@dataclass(frozen=True)
class SimulatedOracle:
    """Answers membership queries against one fixed intended answer set."""

    target: frozenset[Atom]

    def __call__(self, query: q.Query) -> str:
        return q.YES if query <= self.target else q.NO


def run_with_oracle(session: Session, oracle: Oracle) -> Diagnosis:
    """Drive the session to completion with an oracle and return the surviving
    diagnosis.  Undiscriminable endings leave several equally consistent
    survivors; the most probable one wins, and among equals the most specific
    explanation (fewest explained interpretations) is returned."""
    while session.status == AWAITING_ANSWER:
        submit_answer(session, oracle(session.pending.query))
    if not session.live:
        raise SessionError("no diagnosis survived")
    order = {d: idx for idx, d in enumerate(session.live)}
    return min(
        session.live,
        key=lambda d: (
            -session.priors.get(d, 0.0),
            len(diagnosis_interpretations(session.dpi, d)),
            order[d],
        ),
    )


def _fault_probs_to_json(fp: dict[ErrorAtom, float] | None):
    if fp is None:
        return None
    return {e.key: p for e, p in sorted(fp.items(), key=lambda kv: kv[0].sort_key())}


def _partition_to_json(p: q.Partition | None):
    if p is None:
        return None
    return {
        "query": list(p.query_key()),
        "dx": [d.key for d in p.dx],
        "dnx": [d.key for d in p.dnx],
        "dz": [d.key for d in p.dz],
    }


def serialize(session: Session) -> str:
    """Versioned, canonical JSON snapshot of the whole session state."""
    payload = {
        "version": SCHEMA_VERSION,
        "id": session.id,
        "source": session.source,
        "config": asdict(session.config),
        "fault_probs": _fault_probs_to_json(session.fault_probs),
        "initial_pos_tests": [
            signed_set_to_json(t)
            for t in sorted(session.initial_pos_tests, key=SignedAtomSet.sort_key)
        ],
        "initial_neg_tests": [
            signed_set_to_json(t)
            for t in sorted(session.initial_neg_tests, key=SignedAtomSet.sort_key)
        ],
        "pos_tests": [
            signed_set_to_json(t)
            for t in sorted(session.dpi.pos_tests, key=SignedAtomSet.sort_key)
        ],
        "neg_tests": [
            signed_set_to_json(t)
            for t in sorted(session.dpi.neg_tests, key=SignedAtomSet.sort_key)
        ],
        "live": [diagnosis_to_json(d) for d in session.live],
        "priors": {d.key: session.priors[d] for d in sorted(session.priors, key=lambda d: d.key)},
        "pending": _partition_to_json(session.pending),
        "history": [asdict(h) for h in session.history],
        "status": session.status,
        "cap_reached": session.cap_reached,
        "truncated": session.truncated,
    }
    return json.dumps(payload, sort_keys=True, separators=(",", ":"))


def deserialize(text: str | bytes) -> Session:
    """Rebuild a session from :func:`serialize` output; the program is
    re-grounded from the stored source and all derived state is restored."""
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SessionError(f"corrupt session payload: {exc}") from exc
    version = payload.get("version")
    if version != SCHEMA_VERSION:
        raise SchemaVersionError(
            f"unsupported session schema version {version!r}, expected {SCHEMA_VERSION}"
        )
    config = SessionConfig(**payload["config"])
    program = parse_program(payload["source"])
    gp = ground(program, atom_cap=config.atom_cap)
    dpi = DPI(
        gp=gp,
        bg=gp.background_ids,
        pos_tests=frozenset(
            signed_set_from_json(t) for t in payload["pos_tests"]
        ),
        neg_tests=frozenset(
            signed_set_from_json(t) for t in payload["neg_tests"]
        ),
        atom_cap=config.atom_cap,
    )
    live = [diagnosis_from_json(d) for d in payload["live"]]
    by_key = {d.key: d for d in live}
    priors = {by_key[key]: p for key, p in payload["priors"].items() if key in by_key}
    # eliminated diagnoses keep their zero mass even though they left `live`
    for key, p in payload["priors"].items():
        if key not in by_key:
            d = _diagnosis_from_key(key)
            priors[d] = p
    pending = None
    if payload["pending"] is not None:
        pend = payload["pending"]
        lookup = {d.key: d for d in priors}
        pending = q.Partition(
            query=frozenset(parse_atom(a) for a in pend["query"]),
            dx=tuple(lookup[k] for k in pend["dx"]),
            dnx=tuple(lookup[k] for k in pend["dnx"]),
            dz=tuple(lookup[k] for k in pend["dz"]),
        )
    fault_probs = None
    if payload["fault_probs"] is not None:
        fault_probs = {
            error_atom_from_key(k): p for k, p in payload["fault_probs"].items()
        }
    session = Session(
        id=payload["id"],
        source=payload["source"],
        config=config,
        dpi=dpi,
        fault_probs=fault_probs,
        initial_pos_tests=frozenset(
            signed_set_from_json(t) for t in payload["initial_pos_tests"]
        ),
        initial_neg_tests=frozenset(
            signed_set_from_json(t) for t in payload["initial_neg_tests"]
        ),
        live=live,
        priors=priors,
        pending=pending,
        history=[HistoryEntry(**{**h, "query": tuple(h["query"])}) for h in payload["history"]],
        status=payload["status"],
        cap_reached=payload["cap_reached"],
        truncated=payload["truncated"],
    )
    return session


def _diagnosis_from_key(key: str) -> Diagnosis:
    return Diagnosis(
        errors=frozenset(error_atom_from_key(part) for part in key.split(","))
    )


def replay_session(session: Session) -> Session:
    """Re-run the recorded history from the initial problem; with the recorded
    timestamps this reproduces the serialized state byte for byte."""
    fresh = start_session(
        session.source,
        config=session.config,
        fault_probs=session.fault_probs,
        session_id=session.id,
        initial_pos_tests=session.initial_pos_tests,
        initial_neg_tests=session.initial_neg_tests,
    )
    for entry in session.history:
        submit_answer(fresh, entry.answer, timestamp=entry.timestamp)
    return fresh


def interpretation_table(session: Session) -> dict[str, list[list[str]]]:
    """Per-diagnosis interpretation sets rendered as sorted atom-name lists."""
    table: dict[str, list[list[str]]] = {}
    for d in session.live:
        interps = diagnosis_interpretations(session.dpi, d)
        table[d.key] = [sorted(str(a) for a in i) for i in interps]
    return table

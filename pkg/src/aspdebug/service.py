"""HTTP/JSON API over debugging sessions.

One service hosts many independent sessions; mutations of a single session
are serialized through a per-session lock, reads return a consistent
snapshot.  All identifiers in payloads are the rule labels and atom names
from the submitted source text.
"""

from __future__ import annotations

import threading
import uuid
from dataclasses import replace

from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel

from . import query as q
from .diagnosis import diagnosis_to_json
from .program import ProgramError
from .session import (
    Session,
    SessionConfig,
    SessionError,
    interpretation_table,
    start_session,
    submit_answer,
)


class CreateSessionRequest(BaseModel):
    program: str
    n: int | None = None
    k_max: int | None = None
    strategy: str | None = None
    atom_cap: int | None = None
    priors: dict | None = None


class AnswerRequest(BaseModel):
    answer: str


def session_state(session: Session) -> dict:
    diagnoses = []
    for d in session.live:
        entry = diagnosis_to_json(d)
        entry["key"] = d.key
        entry["size"] = len(d)
        diagnoses.append(entry)
    return {
        "id": session.id,
        "status": session.status,
        "atoms": [str(a) for a in session.dpi.gp.sorted_atoms()],
        "diagnoses": diagnoses,
        "interpretations": interpretation_table(session),
        "probabilities": {d.key: session.priors.get(d, 0.0) for d in session.live},
        "query": (
            {"atoms": list(session.pending.query_key())}
            if session.pending is not None
            else None
        ),
        "history": [
            {"query": list(h.query), "answer": h.answer, "timestamp": h.timestamp}
            for h in session.history
        ],
        "cap_reached": session.cap_reached,
        "truncated": session.truncated,
    }


class SessionStore:
    def __init__(self):
        self._sessions: dict[str, Session] = {}
        self._locks: dict[str, threading.Lock] = {}
        self._registry_lock = threading.Lock()

    def add(self, session: Session) -> None:
        with self._registry_lock:
            self._sessions[session.id] = session
            self._locks[session.id] = threading.Lock()

    def get(self, session_id: str) -> Session:
        try:
            return self._sessions[session_id]
        except KeyError:
            raise HTTPException(status_code=404, detail="unknown session id")

    def lock(self, session_id: str) -> threading.Lock:
        with self._registry_lock:
            if session_id not in self._locks:
                raise HTTPException(status_code=404, detail="unknown session id")
            return self._locks[session_id]

    def remove(self, session_id: str) -> None:
        with self._registry_lock:
            if session_id not in self._sessions:
                raise HTTPException(status_code=404, detail="unknown session id")
            del self._sessions[session_id]
            del self._locks[session_id]


def create_app() -> FastAPI:
    app = FastAPI(title="aspdebug", version="0.1.0")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    store = SessionStore()
    app.state.store = store

    @app.post("/api/sessions", status_code=201)
    def create_session(request: CreateSessionRequest) -> dict:
        config = SessionConfig()
        overrides = {
            name: value
            for name, value in (
                ("n", request.n),
                ("k_max", request.k_max),
                ("strategy", request.strategy),
                ("atom_cap", request.atom_cap),
            )
            if value is not None
        }
        if overrides:
            config = replace(config, **overrides)
        fault_probs = None
        if request.priors is not None:
            fault_probs = {
                q.error_atom_from_key(key): float(p)
                for key, p in request.priors.get("fault_probs", {}).items()
            }
        try:
            session = start_session(
                request.program,
                config=config,
                fault_probs=fault_probs,
                session_id=uuid.uuid4().hex,
            )
        except (ProgramError, SessionError, q.QueryError) as exc:
            raise HTTPException(status_code=422, detail=str(exc))
        store.add(session)
        return session_state(session)

    @app.get("/api/sessions/{session_id}")
    def get_session(session_id: str) -> dict:
        return session_state(store.get(session_id))

    @app.post("/api/sessions/{session_id}/answer")
    def answer(session_id: str, request: AnswerRequest) -> dict:
        with store.lock(session_id):
            session = store.get(session_id)
            try:
                submit_answer(session, request.answer)
            except SessionError as exc:
                raise HTTPException(status_code=409, detail=str(exc))
            except q.QueryError as exc:
                raise HTTPException(status_code=422, detail=str(exc))
            return session_state(session)

    @app.delete("/api/sessions/{session_id}", status_code=204)
    def delete_session(session_id: str) -> None:
        store.remove(session_id)

    return app


app = create_app()

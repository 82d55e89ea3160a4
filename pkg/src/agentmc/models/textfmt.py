"""The line-oriented model text format.

One section per line; '#' starts a comment; commas between identifiers are
decorative.  ModelType comes first and fixes the dialect:

    ModelType: CGS                      ModelType: Kripke
    Agents: A0 A1                       States: S0 S1
    States: S0 S1                       Initial: S0
    Initial: S0                         Atoms: p
    Atoms: p                            Label: S1 p
    Label: S1 p                         Edge: S0 -> S0 S1
    Actions A0: A B                     Edge: S1 -> S1
    Actions A1: A
    Transition: S0 A A -> S1

Syntax problems raise ParseError with a 1-based line and column; structures
that parse but break an invariant raise ValidationError listing every
violation.  serialize_model writes the canonical form: fixed section order,
declaration-ordered identifiers, transitions sorted by state and then by
per-agent action declaration index, atoms sorted by name.
"""

from __future__ import annotations

from ..errors import ParseError, UnknownModelClass, ValidationError
from ..kernel import model_class
from .structures import (
    ConcurrentGameStructure,
    KripkeStructure,
    ModelDocument,
    rows_to_transitions,
    validate_cgs,
    validate_kripke,
)

_DIALECT_SECTIONS = {
    "CGS": frozenset(
        ["ModelType", "Agents", "States", "Initial", "Atoms", "Label", "Actions", "Transition"]
    ),
    "Kripke": frozenset(["ModelType", "States", "Initial", "Atoms", "Label", "Edge"]),
}

_ALL_SECTIONS = frozenset().union(*_DIALECT_SECTIONS.values())

_RESERVED_PAYLOAD_FREE = ("LTS", "IS")


class _Tok:
    __slots__ = ("kind", "text", "column")

    def __init__(self, kind, text, column):
        self.kind = kind
        self.text = text
        self.column = column


def _scan(line, lineno):
    """Tokens of one line: IDENT, COLON and ARROW; commas and comments vanish."""
    cut = line.find("#")
    if cut >= 0:
        line = line[:cut]
    tokens = []
    i, n = 0, len(line)
    while i < n:
        ch = line[i]
        if ch in " \t\r":
            i += 1
            continue
        if ch == ",":
            i += 1
            continue
        if ch.isalpha() or ch == "_":
            j = i + 1
            while j < n and (line[j].isalnum() or line[j] == "_"):
                j += 1
            tokens.append(_Tok("IDENT", line[i:j], i + 1))
            i = j
            continue
        if line.startswith("->", i):
            tokens.append(_Tok("ARROW", "->", i + 1))
            i += 2
            continue
        if ch == ":":
            tokens.append(_Tok("COLON", ":", i + 1))
            i += 1
            continue
        raise ParseError("unexpected character %r" % ch, lineno, i + 1)
    return tokens


class _LineParser:
    def __init__(self, tokens, lineno):
        self.tokens = tokens
        self.lineno = lineno
        self.pos = 0

    def done(self):
        return self.pos >= len(self.tokens)

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def _fail(self, message, expected=()):
        tok = self.peek()
        column = tok.column if tok else (self.tokens[-1].column + len(self.tokens[-1].text) if self.tokens else 1)
        raise ParseError(message, self.lineno, column, expected)

    def take(self, kind, what):
        tok = self.peek()
        if tok is None or tok.kind != kind:
            shown = repr(tok.text) if tok else "end of line"
            self._fail("unexpected %s" % shown, expected=(what,))
        self.pos += 1
        return tok

    def idents(self, minimum, what):
        out = []
        while self.peek() is not None and self.peek().kind == "IDENT":
            out.append(self.take("IDENT", what))
        if len(out) < minimum:
            self._fail("expected %s" % what, expected=(what,))
        return out

    def end(self, context):
        tok = self.peek()
        if tok is not None:
            raise ParseError(
                "unexpected %r after %s" % (tok.text, context), self.lineno, tok.column
            )


def _unique(tokens, lineno, what):
    seen = set()
    for tok in tokens:
        if tok.text in seen:
            raise ParseError("duplicate %s %r" % (what, tok.text), lineno, tok.column)
        seen.add(tok.text)
    return [t.text for t in tokens]


def parse_model_text(text: str) -> ModelDocument:
    """Parse model text into a ModelDocument, validating all invariants."""
    model_type = None
    single = {}  # section name -> list of names (Agents/States/Initial/Atoms)
    labels = {}  # state -> set of atoms, merged across Label lines
    actions = {}  # agent -> list of actions
    trans_rows = []  # (state, lhs action tokens, target, lineno)
    edges = {}  # state -> list of targets, merged across Edge lines
    last_line = 0

    for lineno, raw in enumerate(text.splitlines(), start=1):
        last_line = lineno
        tokens = _scan(raw, lineno)
        if not tokens:
            continue
        lp = _LineParser(tokens, lineno)
        head = lp.take("IDENT", "section name")
        if head.text not in _ALL_SECTIONS:
            raise ParseError(
                "unknown section %r" % head.text, lineno, head.column,
                expected=sorted(_ALL_SECTIONS),
            )
        if model_type is None and head.text != "ModelType":
            raise ParseError(
                "ModelType must be declared before any other section",
                lineno,
                head.column,
            )

        if head.text == "ModelType":
            if model_type is not None:
                raise ParseError("duplicate section ModelType", lineno, head.column)
            lp.take("COLON", "':'")
            value = lp.take("IDENT", "model class name")
            lp.end("model class name")
            if value.text not in _DIALECT_SECTIONS:
                note = ""
                if value.text in _RESERVED_PAYLOAD_FREE:
                    note = (
                        "model class %r is a declared identifier without a text format in this build"
                        % value.text
                    )
                raise UnknownModelClass(
                    value.text, known=tuple(sorted(_DIALECT_SECTIONS)), note=note
                )
            model_type = value.text
            continue

        if head.text not in _DIALECT_SECTIONS[model_type]:
            raise ParseError(
                "section %r is not part of ModelType %s" % (head.text, model_type),
                lineno,
                head.column,
            )

        if head.text in ("Agents", "States", "Initial", "Atoms"):
            if head.text in single:
                raise ParseError("duplicate section %s" % head.text, lineno, head.column)
            lp.take("COLON", "':'")
            minimum = 0 if head.text == "Atoms" else 1
            names = lp.idents(minimum, "identifier")
            lp.end("%s list" % head.text)
            single[head.text] = _unique(names, lineno, "identifier")
            continue

        if head.text == "Label":
            lp.take("COLON", "':'")
            state = lp.take("IDENT", "state name")
            atoms_here = lp.idents(1, "atom name")
            lp.end("label atoms")
            labels.setdefault(state.text, set()).update(t.text for t in atoms_here)
            continue

        if head.text == "Actions":
            agent = lp.take("IDENT", "agent name")
            lp.take("COLON", "':'")
            if agent.text in actions:
                raise ParseError(
                    "duplicate Actions section for agent %r" % agent.text,
                    lineno,
                    agent.column,
                )
            acts = lp.idents(1, "action name")
            lp.end("action list")
            actions[agent.text] = _unique(acts, lineno, "action")
            continue

        if head.text == "Transition":
            lp.take("COLON", "':'")
            lhs = lp.idents(1, "state and action names")
            lp.take("ARROW", "'->'")
            target = lp.take("IDENT", "target state")
            lp.end("transition target")
            trans_rows.append((lhs[0].text, lhs[1:], target.text, lineno))
            continue

        if head.text == "Edge":
            lp.take("COLON", "':'")
            source = lp.take("IDENT", "source state")
            lp.take("ARROW", "'->'")
            targets = lp.idents(1, "target state")
            lp.end("edge targets")
            edges.setdefault(source.text, []).extend(t.text for t in targets)
            continue

        raise AssertionError(head.text)

    if model_type is None:
        raise ParseError("missing ModelType section", last_line + 1, 1)

    if model_type == "Kripke":
        if "States" not in single:
            raise ParseError("missing States section", last_line + 1, 1)
        k = KripkeStructure.build(
            states=single["States"],
            initial=single.get("Initial", ()),
            atoms=single.get("Atoms", ()),
            label=labels,
            edges=edges,
        )
        violations = validate_kripke(k)
        if violations:
            raise ValidationError(violations)
        return ModelDocument(model_class=model_class("Kripke"), payload=k)

    if "Agents" not in single:
        raise ParseError("missing Agents section", last_line + 1, 1)
    if "States" not in single:
        raise ParseError("missing States section", last_line + 1, 1)
    agents = single["Agents"]
    rows = []
    for state, act_tokens, target, lineno in trans_rows:
        if len(act_tokens) != len(agents):
            column = act_tokens[0].column if act_tokens else 1
            raise ParseError(
                "transition lists %d actions for %d agents"
                % (len(act_tokens), len(agents)),
                lineno,
                column,
            )
        rows.append((state, tuple(t.text for t in act_tokens), target, lineno))
    transitions, violations = rows_to_transitions(rows)
    g = ConcurrentGameStructure.build(
        agents=agents,
        states=single["States"],
        initial=single.get("Initial", ()),
        atoms=single.get("Atoms", ()),
        label=labels,
        actions=actions,
        transitions=transitions,
    )
    violations = violations + validate_cgs(g)
    if violations:
        raise ValidationError(violations)
    return ModelDocument(model_class=model_class("CGS"), payload=g)


def _ident_line(section, names):
    return section + (": " + " ".join(names) if names else ":")


def serialize_model(doc: ModelDocument) -> str:
    """Canonical text for a document; parse_model_text inverts it exactly."""
    payload = doc.payload
    lines = []
    if isinstance(payload, ConcurrentGameStructure):
        g = payload
        lines.append("ModelType: CGS")
        lines.append(_ident_line("Agents", g.agents))
        lines.append(_ident_line("States", g.states))
        lines.append(_ident_line("Initial", [s for s in g.states if s in g.initial]))
        lines.append(_ident_line("Atoms", sorted(g.atoms)))
        for s in g.states:
            if g.label.get(s):
                lines.append("Label: %s %s" % (s, " ".join(sorted(g.label[s]))))
        for agent in g.agents:
            lines.append(_ident_line("Actions %s" % agent, g.actions.get(agent, ())))
        for s in g.states:
            for vec, target in g.rows_by_state[s]:
                lines.append("Transition: %s %s -> %s" % (s, " ".join(vec), target))
    elif isinstance(payload, KripkeStructure):
        k = payload
        lines.append("ModelType: Kripke")
        lines.append(_ident_line("States", k.states))
        lines.append(_ident_line("Initial", [s for s in k.states if s in k.initial]))
        lines.append(_ident_line("Atoms", sorted(k.atoms)))
        for s in k.states:
            if k.label.get(s):
                lines.append("Label: %s %s" % (s, " ".join(sorted(k.label[s]))))
        for s in k.states:
            if k.edges.get(s):
                lines.append("Edge: %s -> %s" % (s, " ".join(k.edges[s])))
    else:
        raise TypeError("cannot serialize payload of type %s" % type(payload).__name__)
    return "\n".join(lines) + "\n"

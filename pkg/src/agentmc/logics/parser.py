"""Recursive-descent formula parser and the canonical printer.

Concrete syntax, loosest binding first:

    iff    :  impl { "<->" impl }          left associative
    impl   :  or [ "->" impl ]             right associative
    or     :  and { "||" and }
    and    :  unary { "&&" unary }
    unary  :  "!" unary | modal | "true" | "false" | ident | "(" formula ")"
    modal  :  ("E" | "A" | coalition) pathop
    coal   :  "<" idlist ">" | "[" idlist "]"
    pathop :  "X" unary | "F" unary | "G" unary | "(" formula "U" formula ")"

Identifiers match [A-Za-z_][A-Za-z0-9_]*.  E, A, X, F, G, U, true and false
are reserved words, not atoms.  Commas between coalition members are
optional.  format_formula() prints with the minimal parentheses that reparse
to the same tree.
"""

from __future__ import annotations

from ..errors import ParseError
from .ast import (
    FALSE,
    TRUE,
    And,
    Atom,
    CoalitionMod,
    Finally,
    Formula,
    FullCoalition,
    Globally,
    Iff,
    Implies,
    Next,
    Not,
    Or,
    Quant,
    Until,
)

_KEYWORDS = {
    "true": "TRUE",
    "false": "FALSE",
    "E": "E",
    "A": "A",
    "X": "X",
    "F": "F",
    "G": "G",
    "U": "U",
}

_PUNCT = {
    "&&": "ANDAND",
    "||": "OROR",
    "->": "ARROW",
    "<->": "IFFARROW",
    "!": "BANG",
    "<": "LANGLE",
    ">": "RANGLE",
    "[": "LBRACK",
    "]": "RBRACK",
    "(": "LPAREN",
    ")": "RPAREN",
    ",": "COMMA",
}


class _Token:
    __slots__ = ("kind", "text", "line", "column")

    def __init__(self, kind, text, line, column):
        self.kind = kind
        self.text = text
        self.line = line
        self.column = column


def _is_ident_start(ch):
    return ch.isalpha() or ch == "_"


def _is_ident_char(ch):
    return ch.isalnum() or ch == "_"


def _lex(text):
    tokens = []
    i, line, col = 0, 1, 1
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            i += 1
            line += 1
            col = 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if _is_ident_start(ch):
            j = i + 1
            while j < n and _is_ident_char(text[j]):
                j += 1
            word = text[i:j]
            kind = _KEYWORDS.get(word, "IDENT")
            tokens.append(_Token(kind, word, line, col))
            col += j - i
            i = j
            continue
        # longest punctuation first, so "<->" wins over "<"
        for punct in ("<->", "&&", "||", "->"):
            if text.startswith(punct, i):
                tokens.append(_Token(_PUNCT[punct], punct, line, col))
                i += len(punct)
                col += len(punct)
                break
        else:
            if ch in _PUNCT:
                tokens.append(_Token(_PUNCT[ch], ch, line, col))
                i += 1
                col += 1
            else:
                raise ParseError("unexpected character %r" % ch, line, col)
    tokens.append(_Token("EOF", "", line, col))
    return tokens


_UNARY_START = frozenset(
    ["'!'", "'('", "'<'", "'['", "'E'", "'A'", "'true'", "'false'", "identifier"]
)


class _Parser:
    def __init__(self, tokens):
        self.tokens = tokens
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def advance(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def error(self, message, expected=()):
        tok = self.peek()
        raise ParseError(message, tok.line, tok.column, expected)

    def expect(self, kind, what):
        tok = self.peek()
        if tok.kind != kind:
            shown = tok.text if tok.kind != "EOF" else "end of input"
            self.error("unexpected %s" % (repr(shown),), expected=(what,))
        return self.advance()

    def formula(self):
        return self.iff()

    def iff(self):
        node = self.impl()
        while self.peek().kind == "IFFARROW":
            self.advance()
            node = Iff(node, self.impl())
        return node

    def impl(self):
        node = self.or_()
        if self.peek().kind == "ARROW":
            self.advance()
            return Implies(node, self.impl())
        return node

    def or_(self):
        node = self.and_()
        while self.peek().kind == "OROR":
            self.advance()
            node = Or(node, self.and_())
        return node

    def and_(self):
        node = self.unary()
        while self.peek().kind == "ANDAND":
            self.advance()
            node = And(node, self.unary())
        return node

    def unary(self):
        tok = self.peek()
        if tok.kind == "BANG":
            self.advance()
            return Not(self.unary())
        if tok.kind == "TRUE":
            self.advance()
            return TRUE
        if tok.kind == "FALSE":
            self.advance()
            return FALSE
        if tok.kind == "IDENT":
            self.advance()
            return Atom(tok.text)
        if tok.kind in ("E", "A"):
            self.advance()
            return Quant(tok.kind, self.pathop())
        if tok.kind == "LANGLE":
            self.advance()
            members = self.idlist("RANGLE", "'>'")
            return CoalitionMod("diamond", members, self.pathop())
        if tok.kind == "LBRACK":
            self.advance()
            members = self.idlist("RBRACK", "']'")
            return CoalitionMod("box", members, self.pathop())
        if tok.kind == "LPAREN":
            self.advance()
            node = self.formula()
            self.expect("RPAREN", "')'")
            return node
        shown = tok.text if tok.kind != "EOF" else "end of input"
        self.error("unexpected %s" % (repr(shown),), expected=_UNARY_START)

    def idlist(self, closer, closer_name):
        members = []
        seen = set()
        while True:
            tok = self.peek()
            if tok.kind == closer:
                self.advance()
                return tuple(members)
            if tok.kind == "COMMA":
                self.advance()
                continue
            if tok.kind == "IDENT":
                if tok.text in seen:
                    self.error("duplicate coalition member %r" % tok.text)
                seen.add(tok.text)
                members.append(tok.text)
                self.advance()
                continue
            if tok.kind in _KEYWORDS.values():
                self.error(
                    "reserved word %r cannot name an agent" % tok.text,
                    expected=("identifier", closer_name),
                )
            shown = tok.text if tok.kind != "EOF" else "end of input"
            self.error(
                "unexpected %s" % (repr(shown),),
                expected=("identifier", closer_name),
            )

    def pathop(self):
        tok = self.peek()
        if tok.kind == "X":
            self.advance()
            return Next(self.unary())
        if tok.kind == "F":
            self.advance()
            return Finally(self.unary())
        if tok.kind == "G":
            self.advance()
            return Globally(self.unary())
        if tok.kind == "LPAREN":
            self.advance()
            left = self.formula()
            self.expect("U", "'U'")
            right = self.formula()
            self.expect("RPAREN", "')'")
            return Until(left, right)
        shown = tok.text if tok.kind != "EOF" else "end of input"
        self.error(
            "unexpected %s" % (repr(shown),),
            expected=("'X'", "'F'", "'G'", "'('"),
        )


def parse_formula(text: str) -> Formula:
    """Parse formula text; raises ParseError with 1-based line and column."""
    parser = _Parser(_lex(text))
    node = parser.formula()
    if parser.peek().kind != "EOF":
        parser.error(
            "unexpected %r after complete formula" % parser.peek().text,
            expected=("end of input",),
        )
    return node


_PREC_IFF = 1
_PREC_IMPL = 2
_PREC_OR = 3
_PREC_AND = 4
_PREC_UNARY = 5
_PREC_ATOM = 6


def _coalition_text(node):
    open_, close = ("<", ">") if node.kind == "diamond" else ("[", "]")
    if isinstance(node.members, FullCoalition):
        inner = "*"  # diagnostic only; produced by desugaring, not parseable
    else:
        inner = ", ".join(node.members)
    return open_ + inner + close


def _fmt_path(path):
    if isinstance(path, Next):
        return "X " + _fmt(path.operand, _PREC_UNARY)
    if isinstance(path, Finally):
        return "F " + _fmt(path.operand, _PREC_UNARY)
    if isinstance(path, Globally):
        return "G " + _fmt(path.operand, _PREC_UNARY)
    if isinstance(path, Until):
        return "(%s U %s)" % (_fmt(path.left, 0), _fmt(path.right, 0))
    raise TypeError("not a path formula: %r" % (path,))


def _fmt(f, min_prec):
    if isinstance(f, Atom):
        return f.name
    if f == TRUE:
        return "true"
    if f == FALSE:
        return "false"
    if isinstance(f, Not):
        text, prec = "!" + _fmt(f.operand, _PREC_UNARY), _PREC_UNARY
    elif isinstance(f, Quant):
        text, prec = f.quantifier + " " + _fmt_path(f.path), _PREC_UNARY
    elif isinstance(f, CoalitionMod):
        text, prec = _coalition_text(f) + " " + _fmt_path(f.path), _PREC_UNARY
    elif isinstance(f, And):
        text = _fmt(f.left, _PREC_AND) + " && " + _fmt(f.right, _PREC_AND + 1)
        prec = _PREC_AND
    elif isinstance(f, Or):
        text = _fmt(f.left, _PREC_OR) + " || " + _fmt(f.right, _PREC_OR + 1)
        prec = _PREC_OR
    elif isinstance(f, Implies):
        text = _fmt(f.left, _PREC_IMPL + 1) + " -> " + _fmt(f.right, _PREC_IMPL)
        prec = _PREC_IMPL
    elif isinstance(f, Iff):
        text = _fmt(f.left, _PREC_IFF) + " <-> " + _fmt(f.right, _PREC_IFF + 1)
        prec = _PREC_IFF
    else:
        raise TypeError("not a formula: %r" % (f,))
    if prec < min_prec:
        return "(" + text + ")"
    return text


def format_formula(f: Formula) -> str:
    """Print a formula so that parse_formula(format_formula(f)) == f."""
    return _fmt(f, 0)

"""Surface syntax for System T programs.

Grammar::

    type ::= prod ("->" type)?            -- "->" associates to the right
    prod ::= atype ("*" atype)*           -- "*" binds tighter, left-assoc
    atype ::= "N" | "(" type ")"
    term ::= "fun" binder+ "=>" term | app
    binder ::= "(" var+ ":" type ")"
    app  ::= ("pair" atom atom | atom) atom*
    atom ::= var | numeral | "succ" | "rec" "[" type "]" | "fst" | "snd" | "(" term ")"
    prog ::= ("let" var "=" term ";")* term

``#`` starts a comment running to the end of the line.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .syntax import (
    FST,
    SND,
    SUCC,
    App,
    Arrow,
    FiniteType,
    Lam,
    N,
    Pair,
    Prod,
    Rec,
    Term,
    Var,
    numeral,
)

KEYWORDS = {"fun", "rec", "succ", "pair", "fst", "snd", "let", "N"}

_TOKEN = re.compile(
    r"""
    (?P<ws>[ \t\r\n]+|\#[^\n]*)
  | (?P<num>[0-9]+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_']*)
  | (?P<sym>=>|->|[()\[\]:*=;])
    """,
    re.VERBOSE,
)


class ParseError(Exception):
    """Base class for errors raised while reading a program."""


class SourceSyntaxError(ParseError):
    def __init__(self, line: int, column: int, expected: set[str], found: str):
        self.line = line
        self.column = column
        self.expected = frozenset(expected)
        self.found = found
        want = ", ".join(sorted(self.expected))
        super().__init__(f"{line}:{column}: expected one of {{{want}}}, found {found}")


class UnboundName(ParseError):
    def __init__(self, name: str, line: int, column: int):
        self.name = name
        self.line = line
        self.column = column
        super().__init__(f"{line}:{column}: unbound name {name!r}")


@dataclass(frozen=True)
class Token:
    kind: str  # "num", "ident", "kw", "sym" or "eof"
    text: str
    line: int
    column: int

    def describe(self) -> str:
        return "end of input" if self.kind == "eof" else repr(self.text)


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise SourceSyntaxError(line, pos - line_start + 1, {"a token"}, repr(text[pos]))
        kind = m.lastgroup
        lexeme = m.group()
        if kind != "ws":
            if kind == "ident" and lexeme in KEYWORDS:
                kind = "kw"
            tokens.append(Token(kind, lexeme, line, pos - line_start + 1))
        newlines = lexeme.count("\n")
        if newlines:
            line += newlines
            line_start = pos + lexeme.rindex("\n") + 1
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.pos = 0
        self.lets: dict[str, Term] = {}

    @property
    def tok(self) -> Token:
        return self.tokens[self.pos]

    def at(self, text: str) -> bool:
        return self.tok.kind in ("kw", "sym") and self.tok.text == text

    def fail(self, *expected: str):
        raise SourceSyntaxError(self.tok.line, self.tok.column, set(expected), self.tok.describe())

    def expect(self, text: str) -> Token:
        if not self.at(text):
            self.fail(repr(text))
        tok = self.tok
        self.pos += 1
        return tok

    def ident(self) -> Token:
        if self.tok.kind != "ident":
            self.fail("identifier")
        tok = self.tok
        self.pos += 1
        return tok

    # types

    def type_(self) -> FiniteType:
        left = self.prod_type()
        if self.at("->"):
            self.pos += 1
            return Arrow(left, self.type_())
        return left

    def prod_type(self) -> FiniteType:
        ty = self.atom_type()
        while self.at("*"):
            self.pos += 1
            ty = Prod(ty, self.atom_type())
        return ty

    def atom_type(self) -> FiniteType:
        if self.at("N"):
            self.pos += 1
            return N
        if self.at("("):
            self.pos += 1
            ty = self.type_()
            self.expect(")")
            return ty
        self.fail("'N'", "'('")

    # terms; scope lists binder names innermost-last

    def program(self) -> Term:
        while self.at("let"):
            self.pos += 1
            name = self.ident()
            self.expect("=")
            body = self.term([])
            self.expect(";")
            # let bodies are closed, so inlining them needs no index shifting
            self.lets[name.text] = body
        main = self.term([])
        if self.tok.kind != "eof":
            self.fail("end of input", "an argument")
        return main

    def term(self, scope: list[str]) -> Term:
        if self.at("fun"):
            self.pos += 1
            binders: list[tuple[str, FiniteType]] = []
            while self.at("("):
                self.pos += 1
                names = [self.ident().text]
                while self.tok.kind == "ident":
                    names.append(self.ident().text)
                self.expect(":")
                ty = self.type_()
                self.expect(")")
                binders.extend((n, ty) for n in names)
            if not binders:
                self.fail("'('")
            self.expect("=>")
            body = self.term(scope + [n for n, _ in binders])
            for _, ty in reversed(binders):
                body = Lam(ty, body)
            return body
        return self.application(scope)

    def starts_atom(self) -> bool:
        tok = self.tok
        if tok.kind in ("ident", "num"):
            return True
        return tok.kind in ("kw", "sym") and tok.text in ("succ", "rec", "fst", "snd", "(")

    def application(self, scope: list[str]) -> Term:
        if self.at("pair"):
            self.pos += 1
            head: Term = Pair(self.atom(scope), self.atom(scope))
        else:
            head = self.atom(scope)
        while self.starts_atom():
            head = App(head, self.atom(scope))
        return head

    def atom(self, scope: list[str]) -> Term:
        tok = self.tok
        if tok.kind == "num":
            self.pos += 1
            return numeral(int(tok.text))
        if tok.kind == "ident":
            self.pos += 1
            for depth, name in enumerate(reversed(scope)):
                if name == tok.text:
                    return Var(depth)
            if tok.text in self.lets:
                return self.lets[tok.text]
            raise UnboundName(tok.text, tok.line, tok.column)
        if self.at("succ"):
            self.pos += 1
            return SUCC
        if self.at("fst"):
            self.pos += 1
            return FST
        if self.at("snd"):
            self.pos += 1
            return SND
        if self.at("rec"):
            self.pos += 1
            self.expect("[")
            ty = self.type_()
            self.expect("]")
            return Rec(ty)
        if self.at("("):
            self.pos += 1
            t = self.term(scope)
            self.expect(")")
            return t
        self.fail("identifier", "numeral", "'succ'", "'rec'", "'fst'", "'snd'", "'('")


def parse(text: str) -> Term:
    """Parse a program and return its main term with every ``let`` inlined."""
    return _Parser(text).program()


def parse_type(text: str) -> FiniteType:
    p = _Parser(text)
    ty = p.type_()
    if p.tok.kind != "eof":
        p.fail("end of input")
    return ty

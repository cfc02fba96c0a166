"""Recursive-descent parser for space expressions.

Grammar::

    expr := term (('/' | '*' | '-') term)*        left associative
    term := NAME '(' args ')' | 'Gm' | 'Proj' '(' expr ')' | '(' expr ')'
    args := INT (',' INT)* [',' ('+' | '-')]       GLmodO sign
          | INT ';' INT (',' INT)*                 SLrep weights
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from .catalog import ATOMS, BINARY, InvalidParameter, SpaceExpr

_OPS = {v: k for k, v in BINARY.items()}
_TOKEN = re.compile(r"\s*(?:(?P<name>[A-Za-z][A-Za-z]*)|(?P<int>\d+)|(?P<sym>[()/*,;+-]))")


class ParseError(ValueError):
    """Syntax error; ``offset`` is 0-based, ``column`` 1-based."""

    def __init__(self, message: str, offset: int, expected: set[str] | None = None):
        self.offset = offset
        self.column = offset + 1
        self.expected = sorted(expected or ())
        exp = f" (expected {', '.join(self.expected)})" if self.expected else ""
        super().__init__(f"{message} at column {self.column}{exp}")


@dataclass
class _Tok:
    kind: str
    text: str
    pos: int


def _tokenize(text: str) -> list[_Tok]:
    toks = []
    pos = 0
    while pos < len(text):
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos == len(text):
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        toks.append(_Tok(kind, m.group(kind), m.start(kind)))
        pos = m.end()
    toks.append(_Tok("end", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def fail(self, expected: set[str]):
        t = self.tok
        found = "end of input" if t.kind == "end" else repr(t.text)
        raise ParseError(f"unexpected {found}", t.pos, expected)

    def eat(self, text: str) -> _Tok:
        if self.tok.text != text or self.tok.kind == "end":
            self.fail({repr(text)})
        t = self.tok
        self.i += 1
        return t

    def integer(self) -> int:
        if self.tok.kind != "int":
            self.fail({"integer"})
        v = int(self.tok.text)
        self.i += 1
        return v

    def expr(self) -> SpaceExpr:
        left = self.term()
        while self.tok.kind == "sym" and self.tok.text in _OPS:
            op = self.tok.text
            self.i += 1
            left = SpaceExpr(_OPS[op], children=(left, self.term()))
        return left

    def term(self) -> SpaceExpr:
        t = self.tok
        if t.kind == "sym" and t.text == "(":
            self.i += 1
            inner = self.expr()
            self.eat(")")
            return inner
        if t.kind != "name":
            self.fail({"space name", "'('"})
        name = t.text
        self.i += 1
        if name == "Gm":
            return self._build(t, "Gm", ())
        if name == "Proj":
            self.eat("(")
            inner = self.expr()
            self.eat(")")
            return SpaceExpr("projectivize", children=(inner,))
        if name not in ATOMS:
            raise ParseError(f"unknown space {name!r}", t.pos, {"space name"})
        self.eat("(")
        if name == "SLrep":
            n = self.integer()
            self.eat(";")
            weights = [self.integer()]
            while self.tok.text == ",":
                self.i += 1
                weights.append(self.integer())
            self.eat(")")
            return self._build(t, name, (n, tuple(weights)))
        args: list = [self.integer()]
        while self.tok.text == ",":
            self.i += 1
            if name == "GLmodO" and self.tok.text in ("+", "-"):
                args.append(self.tok.text)
                self.i += 1
                break
            args.append(self.integer())
        if self.tok.text != ")":
            self.fail({"','", "')'"})
        self.i += 1
        return self._build(t, name, tuple(args))

    def _build(self, tok: _Tok, name: str, params: tuple) -> SpaceExpr:
        try:
            return SpaceExpr.atom(name, *params)
        except (InvalidParameter, TypeError) as exc:
            raise ParseError(f"invalid parameters for {name}: {exc}", tok.pos) from None


def parse_space(text: str) -> SpaceExpr:
    p = _Parser(text)
    out = p.expr()
    if p.tok.kind != "end":
        p.fail({"'/'", "'*'", "'-'", "end of input"})
    return out


def render(expr: SpaceExpr) -> str:
    return str(expr)

"""Reader and writer for ring presentations.

    file        := ring_block ideal_block
    ring_block  := "ring" "{" ["even" ":" varlist (";" | before "}")] ["odd" ":" varlist [";"]] "}"
    varlist     := var ("," var)*          var := NAME ":" INT
    ideal_block := "ideal" "{" [monomial (";" monomial)* [";"]] "}"
    monomial    := factor ("*" factor)*    factor := NAME ["^" INT]

Whitespace is insignificant and ``#`` starts a comment running to end of line.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .monomial import Monomial, MonomialRing, VariableTable


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.message = message
        self.line = line
        self.column = column


@dataclass(frozen=True)
class Token:
    kind: str  # NAME, INT, a punctuation character, or EOF
    text: str
    line: int
    column: int


_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r]+)
  | (?P<nl>\n)
  | (?P<comment>\#[^\n]*)
  | (?P<INT>-?\d+)
  | (?P<NAME>[A-Za-z_][A-Za-z0-9_']*)
  | (?P<punct>[{}:;,*^])
""", re.VERBOSE)


def tokenize(text: str) -> list[Token]:
    tokens = []
    line, line_start, pos = 1, 0, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        col = pos - line_start + 1
        if kind == "nl":
            line += 1
            line_start = m.end()
        elif kind == "INT" or kind == "NAME":
            tokens.append(Token(kind, m.group(), line, col))
        elif kind == "punct":
            tokens.append(Token(m.group(), m.group(), line, col))
        pos = m.end()
    tokens.append(Token("EOF", "", line, pos - line_start + 1))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def error(self, message: str, tok: Token | None = None) -> ParseError:
        tok = tok or self.tok
        return ParseError(message, tok.line, tok.column)

    def accept(self, kind: str, text: str | None = None) -> Token | None:
        t = self.tok
        if t.kind == kind and (text is None or t.text == text):
            self.i += 1
            return t
        return None

    def expect(self, kind: str, text: str | None = None) -> Token:
        t = self.accept(kind, text)
        if t is None:
            want = text or kind
            got = self.tok.text or "end of input"
            raise self.error(f"expected {want!r}, found {got!r}")
        return t

    def keyword(self, word: str) -> bool:
        return self.accept("NAME", word) is not None

    def parse(self) -> MonomialRing:
        if not self.keyword("ring"):
            raise self.error("a presentation starts with a 'ring { ... }' block")
        table, where = self.ring_block()
        if not self.keyword("ideal"):
            raise self.error("expected 'ideal { ... }' after the ring block")
        gens = self.ideal_block(table, where)
        self.expect("EOF")
        return MonomialRing.build(table, gens)

    def ring_block(self):
        self.expect("{")
        even, odd, where = [], [], {}
        if self.keyword("even"):
            self.expect(":")
            even = self.varlist(parity=0, where=where)
            if self.tok.kind != "}":
                self.expect(";")
        if self.keyword("odd"):
            self.expect(":")
            odd = self.varlist(parity=1, where=where)
            self.accept(";")
        if self.tok.kind == "NAME" and self.tok.text in ("even", "odd"):
            raise self.error(f"'{self.tok.text}' section repeated or out of order (even before odd)")
        self.expect("}")
        return VariableTable(tuple(even), tuple(odd)), where

    def varlist(self, parity: int, where: dict):
        out = []
        while True:
            name = self.expect("NAME")
            if name.text in where:
                raise self.error(f"duplicate variable name {name.text!r}", name)
            self.expect(":")
            deg_tok = self.expect("INT")
            deg = int(deg_tok.text)
            if deg <= 0:
                raise self.error(f"degree of {name.text!r} must be positive, got {deg}", deg_tok)
            if deg % 2 != parity:
                kind = "odd" if parity else "even"
                raise self.error(
                    f"parity violation: {kind} variable {name.text!r} has degree {deg}", deg_tok)
            where[name.text] = ("odd" if parity else "even", len(out))
            out.append((name.text, deg))
            if not self.accept(","):
                return out

    def ideal_block(self, table: VariableTable, where: dict) -> list[Monomial]:
        self.expect("{")
        gens = []
        if self.accept("}"):
            return gens
        while True:
            gens.append(self.monomial(table, where))
            if self.accept(";"):
                if self.accept("}"):
                    return gens
                continue
            self.expect("}")
            return gens

    def monomial(self, table: VariableTable, where: dict) -> Monomial:
        exps = [0] * table.m
        odd: dict[int, Token] = {}
        start = self.tok
        while True:
            name = self.expect("NAME")
            power = 1
            if self.accept("^"):
                ptok = self.expect("INT")
                power = int(ptok.text)
                if power <= 0:
                    raise self.error(f"exponent must be positive, got {power}", ptok)
            if name.text not in where:
                raise self.error(f"unknown variable {name.text!r}", name)
            kind, idx = where[name.text]
            if kind == "even":
                exps[idx] += power
            else:
                if power > 1 or idx in odd:
                    raise self.error(
                        f"odd variable {name.text!r} has exponent > 1 (odd variables square to zero)",
                        name)
                odd[idx] = name
            if not self.accept("*"):
                break
        mon = Monomial(tuple(exps), tuple(odd))
        if mon.is_unit():
            raise self.error("generator of degree 0", start)
        return mon


def parse_presentation(text: str) -> MonomialRing:
    """Parse ``text`` into a MonomialRing with minimalized ideal."""
    return _Parser(text).parse()


def format_presentation(ring: MonomialRing) -> str:
    table = ring.table
    sections = []
    if table.even_vars:
        sections.append("even: " + ", ".join(f"{n}:{d}" for n, d in table.even_vars) + ";")
    if table.odd_vars:
        sections.append("odd: " + ", ".join(f"{n}:{d}" for n, d in table.odd_vars))
    ring_part = "ring { " + " ".join(sections) + " }" if sections else "ring { }"
    gens = "; ".join(ring.format_ideal())
    return f"{ring_part} ideal {{ {gens} }}" if gens else f"{ring_part} ideal {{ }}"

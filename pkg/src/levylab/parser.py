"""Concrete syntax: recursive-descent parser and minimal-parenthesis printer.

Grammar (``#`` comments run to end of line)::

    formula     := implication
    implication := disjunction [ "->" implication ]
    disjunction := conjunction { "or" conjunction }
    conjunction := unary { "and" unary }
    unary       := "not" unary | quantifier | primary
    quantifier  := ("forall" | "exists") IDENT [ "in" IDENT ] "." formula
                 | ("forallOrd" | "existsOrd") IDENT "." formula
    primary     := "(" formula ")" | IDENT "(" [ IDENT { "," IDENT } ] ")"
                 | IDENT "in" IDENT | IDENT "=" IDENT

A quantifier body extends as far right as possible.
"""

from __future__ import annotations

import re
from typing import NamedTuple

from .errors import FormulaSyntaxError
from .registry import Registry
from .syntax import (
    KEYWORDS, And, BoundedExists, BoundedForall, DefinedAtom, EqualAtom, Exists, Forall,
    Formula, Implies, MemberAtom, Not, Or, OrdExists, OrdForall, check_scoping,
)

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+|\#[^\n]*)
  | (?P<arrow>->)
  | (?P<punct>[().,=])
  | (?P<ident>[^\W\d]\w*)
    """,
    re.VERBOSE,
)


class Token(NamedTuple):
    kind: str  # "ident", "kw", "punct", "eof"
    text: str
    pos: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise FormulaSyntaxError(pos, ["a token"], text[pos])
        kind = m.lastgroup
        if kind == "ident":
            word = m.group()
            tokens.append(Token("kw" if word in KEYWORDS else "ident", word, pos))
        elif kind in ("arrow", "punct"):
            tokens.append(Token("punct", m.group(), pos))
        pos = m.end()
    tokens.append(Token("eof", "", len(text)))
    return tokens


_QUANTIFIERS = {"forall": Forall, "exists": Exists, "forallOrd": OrdForall, "existsOrd": OrdExists}
_BOUNDED = {"forall": BoundedForall, "exists": BoundedExists}


class _Parser:
    def __init__(self, text: str, registry: Registry):
        self.tokens = tokenize(text)
        self.i = 0
        self.registry = registry

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def at(self, text: str) -> bool:
        return self.tok.kind in ("kw", "punct") and self.tok.text == text

    def fail(self, *expected: str):
        t = self.tok
        raise FormulaSyntaxError(t.pos, list(expected), t.text if t.kind != "eof" else "end of input")

    def expect(self, text: str) -> Token:
        if not self.at(text):
            self.fail(repr(text))
        t = self.tok
        self.i += 1
        return t

    def ident(self) -> str:
        if self.tok.kind != "ident":
            self.fail("an identifier")
        t = self.tok
        self.i += 1
        return t.text

    def formula(self) -> Formula:
        left = self.disjunction()
        if self.at("->"):
            self.i += 1
            return Implies(left, self.formula())
        return left

    def disjunction(self) -> Formula:
        f = self.conjunction()
        while self.at("or"):
            self.i += 1
            f = Or(f, self.conjunction())
        return f

    def conjunction(self) -> Formula:
        f = self.unary()
        while self.at("and"):
            self.i += 1
            f = And(f, self.unary())
        return f

    def unary(self) -> Formula:
        if self.at("not"):
            self.i += 1
            return Not(self.unary())
        if self.tok.kind == "kw" and self.tok.text in _QUANTIFIERS:
            return self.quantifier()
        return self.primary()

    def quantifier(self) -> Formula:
        word = self.tok.text
        self.i += 1
        var = self.ident()
        if word in _BOUNDED and self.at("in"):
            self.i += 1
            bound = self.ident()
            self.expect(".")
            return _BOUNDED[word](var, bound, self.formula())
        if word in _BOUNDED:
            if not self.at("."):
                self.fail("'in'", "'.'")
        self.expect(".")
        return _QUANTIFIERS[word](var, self.formula())

    def primary(self) -> Formula:
        if self.at("("):
            self.i += 1
            f = self.formula()
            self.expect(")")
            return f
        if self.tok.kind != "ident":
            self.fail("'('", "'not'", "a quantifier", "an identifier")
        name = self.ident()
        if self.at("("):
            self.i += 1
            args = []
            if not self.at(")"):
                args.append(self.ident())
                while self.at(","):
                    self.i += 1
                    args.append(self.ident())
            self.expect(")")
            self.registry.lookup(name, len(args))
            return DefinedAtom(name, tuple(args))
        if self.at("in"):
            self.i += 1
            return MemberAtom(name, self.ident())
        if self.at("="):
            self.i += 1
            return EqualAtom(name, self.ident())
        self.fail("'in'", "'='", "'('")


def parse(text: str, registry: Registry | None = None) -> Formula:
    """Parse formula source; free variables are allowed and act as parameters."""
    p = _Parser(text, registry or Registry.standard())
    f = p.formula()
    if p.tok.kind != "eof":
        p.fail("end of input", "'and'", "'or'", "'->'")
    check_scoping(f)
    return f


# --- printing -----------------------------------------------------------------

_PREC = {Implies: 1, Or: 2, And: 3, Not: 4}


def _fmt(f: Formula, need: int, tail: bool) -> str:
    if isinstance(f, MemberAtom):
        return f"{f.left} in {f.right}"
    if isinstance(f, EqualAtom):
        return f"{f.left} = {f.right}"
    if isinstance(f, DefinedAtom):
        return f"{f.name}({', '.join(f.args)})"
    if isinstance(f, (Exists, Forall, OrdExists, OrdForall, BoundedExists, BoundedForall)):
        word = {
            Exists: "exists", Forall: "forall", OrdExists: "existsOrd", OrdForall: "forallOrd",
            BoundedExists: "exists", BoundedForall: "forall",
        }[type(f)]
        head = f"{word} {f.var} in {f.bound}" if isinstance(f, (BoundedExists, BoundedForall)) else f"{word} {f.var}"
        text = f"{head} . {_fmt(f.body, 0, True)}"
        return text if tail else f"({text})"
    prec = _PREC[type(f)]
    wrap = prec < need
    inner_tail = True if wrap else tail
    if isinstance(f, Not):
        text = "not " + _fmt(f.body, 4, inner_tail)
    elif isinstance(f, Implies):
        text = f"{_fmt(f.left, 2, False)} -> {_fmt(f.right, 1, inner_tail)}"
    elif isinstance(f, Or):
        text = f"{_fmt(f.left, 2, False)} or {_fmt(f.right, 3, inner_tail)}"
    else:
        text = f"{_fmt(f.left, 3, False)} and {_fmt(f.right, 4, inner_tail)}"
    return f"({text})" if wrap else text


def print_formula(f: Formula) -> str:
    """Canonical source text; ``parse(print_formula(f)) == f``."""
    return _fmt(f, 0, True)

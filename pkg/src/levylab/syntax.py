"""Formula AST for the language of set theory and variable hygiene helpers.

Variables are plain strings.  Every node is a frozen dataclass, so formulas
compare structurally and can be hashed, cached and shared freely.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator, Union

IDENT_RE = re.compile(r"[^\W\d]\w*")
KEYWORDS = frozenset(
    {"forall", "exists", "forallOrd", "existsOrd", "in", "not", "and", "or"}
)


def is_identifier(name: str) -> bool:
    return bool(IDENT_RE.fullmatch(name)) and name not in KEYWORDS


@dataclass(frozen=True, slots=True)
class MemberAtom:
    left: str
    right: str


@dataclass(frozen=True, slots=True)
class EqualAtom:
    left: str
    right: str


@dataclass(frozen=True, slots=True)
class DefinedAtom:
    name: str
    args: tuple[str, ...]


@dataclass(frozen=True, slots=True)
class Not:
    body: Formula


@dataclass(frozen=True, slots=True)
class And:
    left: Formula
    right: Formula


@dataclass(frozen=True, slots=True)
class Or:
    left: Formula
    right: Formula


@dataclass(frozen=True, slots=True)
class Implies:
    left: Formula
    right: Formula


@dataclass(frozen=True, slots=True)
class Exists:
    var: str
    body: Formula


@dataclass(frozen=True, slots=True)
class Forall:
    var: str
    body: Formula


@dataclass(frozen=True, slots=True)
class BoundedExists:
    var: str
    bound: str
    body: Formula


@dataclass(frozen=True, slots=True)
class BoundedForall:
    var: str
    bound: str
    body: Formula


@dataclass(frozen=True, slots=True)
class OrdExists:
    var: str
    body: Formula


@dataclass(frozen=True, slots=True)
class OrdForall:
    var: str
    body: Formula


Atom = Union[MemberAtom, EqualAtom, DefinedAtom]
Binary = Union[And, Or, Implies]
Quantifier = Union[Exists, Forall, BoundedExists, BoundedForall, OrdExists, OrdForall]
Formula = Union[Atom, Not, Binary, Quantifier]

ATOMS = (MemberAtom, EqualAtom, DefinedAtom)
BINARIES = (And, Or, Implies)
QUANTIFIERS = (Exists, Forall, BoundedExists, BoundedForall, OrdExists, OrdForall)
BOUNDED = (BoundedExists, BoundedForall)
UNBOUNDED = (Exists, Forall, OrdExists, OrdForall)


def atom_vars(f: Atom) -> tuple[str, ...]:
    if isinstance(f, DefinedAtom):
        return f.args
    return (f.left, f.right)


def children(f: Formula) -> tuple[Formula, ...]:
    if isinstance(f, ATOMS):
        return ()
    if isinstance(f, Not):
        return (f.body,)
    if isinstance(f, BINARIES):
        return (f.left, f.right)
    return (f.body,)


def subformulas(f: Formula) -> Iterator[Formula]:
    """Preorder walk over every node of ``f``."""
    stack = [f]
    while stack:
        node = stack.pop()
        yield node
        stack.extend(reversed(children(node)))


def free_vars(f: Formula) -> frozenset[str]:
    if isinstance(f, ATOMS):
        return frozenset(atom_vars(f))
    if isinstance(f, Not):
        return free_vars(f.body)
    if isinstance(f, BINARIES):
        return free_vars(f.left) | free_vars(f.right)
    inner = free_vars(f.body) - {f.var}
    if isinstance(f, BOUNDED):
        inner |= {f.bound}
    return inner


def bound_vars(f: Formula) -> list[str]:
    return [n.var for n in subformulas(f) if isinstance(n, QUANTIFIERS)]


def depth(f: Formula) -> int:
    return 1 + max((depth(c) for c in children(f)), default=0)


def check_scoping(f: Formula) -> None:
    """Raise ScopeError unless every bounded quantifier has a distinct bound."""
    from .errors import ScopeError

    for node in subformulas(f):
        if isinstance(node, QUANTIFIERS) and not is_identifier(node.var):
            raise ScopeError(node.var, "not an identifier")
        if isinstance(node, BOUNDED) and node.bound == node.var:
            raise ScopeError(node.var, "bounded quantifier ranges over its own variable")


def fresh_name(base: str, used: set[str] | frozenset[str]) -> str:
    k = 1
    while f"{base}{k}" in used:
        k += 1
    return f"{base}{k}"


def rename_vars(f: Formula, mapping: dict[str, str]) -> Formula:
    """Rename free occurrences according to ``mapping`` (no capture checks)."""
    if isinstance(f, MemberAtom):
        return MemberAtom(mapping.get(f.left, f.left), mapping.get(f.right, f.right))
    if isinstance(f, EqualAtom):
        return EqualAtom(mapping.get(f.left, f.left), mapping.get(f.right, f.right))
    if isinstance(f, DefinedAtom):
        return DefinedAtom(f.name, tuple(mapping.get(a, a) for a in f.args))
    if isinstance(f, Not):
        return Not(rename_vars(f.body, mapping))
    if isinstance(f, BINARIES):
        return type(f)(rename_vars(f.left, mapping), rename_vars(f.right, mapping))
    inner = {k: v for k, v in mapping.items() if k != f.var}
    body = rename_vars(f.body, inner)
    if isinstance(f, BOUNDED):
        return type(f)(f.var, mapping.get(f.bound, f.bound), body)
    return type(f)(f.var, body)


def rename_fresh(f: Formula, reserved: set[str] | frozenset[str] = frozenset()) -> Formula:
    """Alpha-rename so bound variables are pairwise distinct and avoid
    ``reserved`` and the free variables of ``f``.

    A binder keeps its name when that name is still unused; otherwise it gets
    the least numeric suffix not yet taken.  Binders are visited in preorder.
    """
    used = set(reserved) | set(free_vars(f))
    # names that occur anywhere must not be minted as fresh ones
    occurring = set(used)
    for node in subformulas(f):
        if isinstance(node, QUANTIFIERS):
            occurring.add(node.var)
        elif isinstance(node, ATOMS):
            occurring.update(atom_vars(node))

    def go(g: Formula, env: dict[str, str]) -> Formula:
        if isinstance(g, ATOMS):
            return rename_vars(g, env)
        if isinstance(g, Not):
            return Not(go(g.body, env))
        if isinstance(g, BINARIES):
            return type(g)(go(g.left, env), go(g.right, env))
        if g.var in used:
            new = fresh_name(g.var, used | occurring)
        else:
            new = g.var
        used.add(new)
        occurring.add(new)
        body = go(g.body, {**env, g.var: new})
        if isinstance(g, BOUNDED):
            return type(g)(new, env.get(g.bound, g.bound), body)
        return type(g)(new, body)

    return go(f, {})

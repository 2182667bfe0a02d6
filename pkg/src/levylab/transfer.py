"""Choice-elimination gate.

A sentence ``forallOrd x1 ... forallOrd xk . psi`` whose matrix ``psi`` is
upwards absolute between transitive models with the same ordinals is provable
in ZF as soon as it is provable in ZFC: any counterexample ``a`` is a set of
ordinal tuples, so it lives in ``L[a]``, a model of ZFC, and ``psi(a)`` would
transfer back up.  This module decides the syntactic form and certifies the
absoluteness of ``psi`` with a small rule system.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .classify import classify
from .errors import LevyError, UndeclaredParameter
from .levy import LevyClass, pi, sigma
from .registry import Registry
from .syntax import (
    And, BoundedExists, BoundedForall, DefinedAtom, Exists, Forall, Formula, Implies, Not,
    Or, OrdExists, OrdForall, free_vars,
)

ELIMINABLE = "Eliminable"
NOT_APPLICABLE = "NotApplicable"

REASON_EXISTENTIAL = "leading quantifier is existential"
REASON_UNBOUNDED_FORALL = "leading universal quantifier is not ordinal bounded"
REASON_NOT_CERTIFIED = "matrix is not certified upwards absolute"


class Sort(str, enum.Enum):
    ORDINAL = "ordinal"
    ORDINAL_TUPLE_SET = "ordinal-tuple-set"


@dataclass(frozen=True)
class ParameterDeclaration:
    variable: str
    sort: Sort

    @classmethod
    def parse_list(cls, text: str) -> list[ParameterDeclaration]:
        """``kappa:ordinal,A:ordinal-tuple-set``; a bare name defaults to ordinal."""
        decls = []
        for item in filter(None, (s.strip() for s in text.split(","))):
            name, _, sort = item.partition(":")
            try:
                decls.append(cls(name.strip(), Sort(sort.strip() or "ordinal")))
            except ValueError:
                raise LevyError(f"unknown parameter sort {sort!r} for {name!r}") from None
        return decls

    def __str__(self) -> str:
        return f"{self.variable}:{self.sort.value}"


@dataclass(frozen=True)
class TransferVerdict:
    outcome: str
    stripped_prefix: tuple[str, ...]
    matrix_class: LevyClass
    absoluteness_trace: tuple[str, ...]
    reason: str = ""
    parameters: tuple[ParameterDeclaration, ...] = field(default=())

    @property
    def eliminable(self) -> bool:
        return self.outcome == ELIMINABLE

    def to_json(self) -> dict:
        return {
            "outcome": self.outcome,
            "stripped_prefix": list(self.stripped_prefix),
            "matrix_class": str(self.matrix_class),
            "reason": self.reason,
            "parameters": [str(p) for p in self.parameters],
            "trace": list(self.absoluteness_trace),
        }


_UP, _DOWN = True, False


def _certify(f: Formula, registry: Registry, up: bool, path: str, trace: list[str]) -> bool:
    cls = classify(f, "zf", registry)[0]
    if up and cls <= sigma(1):
        trace.append(f"rule:sigma1 at {path}")
        return True
    if not up and cls <= pi(1):
        trace.append(f"rule:pi1 at {path}")
        return True

    def sub(g: Formula, direction: bool, step: str) -> bool:
        return _certify(g, registry, direction, f"{path}/{step}", trace)

    ok = False
    rule = None
    if isinstance(f, DefinedAtom):
        info = registry.lookup(f.name, len(f.args))
        flag = info.upwards_absolute if up else info.downwards_absolute
        if flag:
            rule, ok = ("flag-up" if up else "flag-down"), True
    elif isinstance(f, Not):
        rule = "not-flip"
        ok = sub(f.body, not up, "body")
    elif isinstance(f, (And, Or)):
        rule = "and" if isinstance(f, And) else "or"
        ok = sub(f.left, up, "left") and sub(f.right, up, "right")
    elif isinstance(f, Implies):
        rule = "implies-split"
        ok = sub(f.left, not up, "left") and sub(f.right, up, "right")
    elif up and isinstance(f, (Exists, OrdExists, BoundedExists)):
        rule = {Exists: "exists", OrdExists: "ord-exists", BoundedExists: "bounded-exists"}[type(f)]
        ok = sub(f.body, up, "body")
    elif up and isinstance(f, BoundedForall):
        rule = "bounded-forall"
        ok = sub(f.body, up, "body")
    elif not up and isinstance(f, (Forall, OrdForall, BoundedForall)):
        rule = {Forall: "forall", OrdForall: "ord-forall", BoundedForall: "bounded-forall"}[type(f)]
        ok = sub(f.body, up, "body")
    elif not up and isinstance(f, BoundedExists):
        rule = "bounded-exists"
        ok = sub(f.body, up, "body")
    if ok:
        trace.append(f"rule:{rule} at {path}")
    else:
        direction = "up" if up else "down"
        trace.append(f"rule:none ({direction}) at {path}")
    return ok


def certify_upwards(f: Formula, registry: Registry | None = None) -> tuple[bool, tuple[str, ...]]:
    """Derive upward absoluteness of ``f`` (true in M implies true in N for
    transitive M contained in N with the same ordinals).  Trace lines are
    ``rule:<name> at <path>`` in bottom-up order."""
    trace: list[str] = []
    ok = _certify(f, registry or Registry.standard(), _UP, "root", trace)
    return ok, tuple(trace)


def certify_downwards(f: Formula, registry: Registry | None = None) -> tuple[bool, tuple[str, ...]]:
    trace: list[str] = []
    ok = _certify(f, registry or Registry.standard(), _DOWN, "root", trace)
    return ok, tuple(trace)


def check_transfer(
    f: Formula,
    params: list[ParameterDeclaration] | tuple[ParameterDeclaration, ...] = (),
    registry: Registry | None = None,
) -> TransferVerdict:
    registry = registry or Registry.standard()
    declared = {p.variable for p in params}
    for v in sorted(free_vars(f)):
        if v not in declared:
            raise UndeclaredParameter(v)

    stripped = []
    body = f
    while isinstance(body, OrdForall):
        stripped.append(body.var)
        body = body.body
    matrix_class = classify(body, "zf", registry)[0]
    ok, trace = certify_upwards(body, registry)
    if ok:
        return TransferVerdict(ELIMINABLE, tuple(stripped), matrix_class, trace, "", tuple(params))
    if isinstance(body, (Exists, OrdExists)):
        reason = REASON_EXISTENTIAL
    elif isinstance(body, Forall):
        reason = REASON_UNBOUNDED_FORALL
    else:
        reason = REASON_NOT_CERTIFIED
    return TransferVerdict(NOT_APPLICABLE, tuple(stripped), matrix_class, trace, reason, tuple(params))


def describe(v: TransferVerdict) -> str:
    head = v.outcome if v.eliminable else f"{v.outcome}: {v.reason}"
    prefix = " ".join(f"forallOrd {x} ." for x in v.stripped_prefix) or "(none)"
    return f"{head}\nstripped prefix: {prefix}\nmatrix class: {v.matrix_class}"


__all__ = [
    "ELIMINABLE", "NOT_APPLICABLE", "ParameterDeclaration", "Sort", "TransferVerdict",
    "certify_downwards", "certify_upwards", "check_transfer", "describe",
]

"""Syntactic Levy-hierarchy upper bounds.

Every result is the class derivable by a fixed rule system, never a claim
about the least class of any logically equivalent formula.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterator

from .errors import LevelOverflow
from .levy import DELTA0, LevyClass, join, least_pi_over, least_sigma_over, meet
from .normalize import to_nnf
from .parser import print_formula
from .registry import Registry
from .syntax import (
    And, BoundedExists, BoundedForall, DefinedAtom, EqualAtom, Exists, Forall, Formula,
    Implies, MemberAtom, Not, Or, OrdExists, OrdForall, subformulas,
)

MAX_LEVEL = 32


class RuleSet(str, enum.Enum):
    """``zf`` absorbs bounded quantifiers into Sigma n / Pi n (n >= 1);
    ``minimal`` treats a bounded quantifier over a non-Delta0 body as unbounded."""

    ZF = "zf"
    MINIMAL = "minimal"


@dataclass(frozen=True)
class TraceNode:
    formula: Formula
    rule: str
    children: tuple[TraceNode, ...]
    result: LevyClass

    def walk(self) -> Iterator[TraceNode]:
        yield self
        for c in self.children:
            yield from c.walk()

    def lines(self, indent: int = 0) -> list[str]:
        out = [f"{'  ' * indent}{self.result}  [{self.rule}]  {print_formula(self.formula)}"]
        for c in self.children:
            out.extend(c.lines(indent + 1))
        return out

    def to_json(self) -> dict:
        return {
            "formula": print_formula(self.formula),
            "rule": self.rule,
            "class": str(self.result),
            "children": [c.to_json() for c in self.children],
        }


ATOM_RULES = frozenset({"atom-member", "atom-equal", "atom-defined"})


def _bounded(rule_prefix: str, body: LevyClass, rules: RuleSet, existential: bool) -> tuple[str, LevyClass]:
    if body == DELTA0:
        return f"{rule_prefix}-delta0", DELTA0
    if rules is RuleSet.ZF:
        # Sigma n, Pi n and Delta n are each closed under bounded quantification in ZF
        return f"{rule_prefix}-absorb", body
    return f"{rule_prefix}-unbounded", least_sigma_over(body) if existential else least_pi_over(body)


def apply_rule(rule: str, kids: list[LevyClass], formula: Formula, rules: RuleSet, registry: Registry) -> LevyClass:
    """Class produced by ``rule`` from the children's classes."""
    if rule in ("atom-member", "atom-equal"):
        return DELTA0
    if rule == "atom-defined":
        return registry.lookup(formula.name, len(formula.args)).assigned_class
    if rule == "not-dual":
        return kids[0].dual()
    if rule in ("and-join", "or-join"):
        return join(kids[0], kids[1])
    if rule == "implies-join":
        return join(kids[0].dual(), kids[1])
    if rule in ("exists", "ord-exists"):
        return least_sigma_over(kids[0])
    if rule in ("forall", "ord-forall"):
        return least_pi_over(kids[0])
    if rule.startswith(("bexists-", "bforall-")):
        return _bounded(rule.split("-", 1)[0], kids[0], rules, rule.startswith("bexists"))[1]
    raise ValueError(f"unknown rule {rule!r}")


def derive(f: Formula, rules: RuleSet = RuleSet.ZF, registry: Registry | None = None) -> TraceNode:
    registry = registry or Registry.standard()
    rules = RuleSet(rules)

    def go(g: Formula) -> TraceNode:
        if isinstance(g, MemberAtom):
            node = TraceNode(g, "atom-member", (), DELTA0)
        elif isinstance(g, EqualAtom):
            node = TraceNode(g, "atom-equal", (), DELTA0)
        elif isinstance(g, DefinedAtom):
            node = TraceNode(g, "atom-defined", (), registry.lookup(g.name, len(g.args)).assigned_class)
        elif isinstance(g, Not):
            k = go(g.body)
            node = TraceNode(g, "not-dual", (k,), k.result.dual())
        elif isinstance(g, (And, Or, Implies)):
            a, b = go(g.left), go(g.right)
            rule = {And: "and-join", Or: "or-join", Implies: "implies-join"}[type(g)]
            node = TraceNode(g, rule, (a, b), apply_rule(rule, [a.result, b.result], g, rules, registry))
        elif isinstance(g, (BoundedExists, BoundedForall)):
            k = go(g.body)
            prefix = "bexists" if isinstance(g, BoundedExists) else "bforall"
            rule, cls = _bounded(prefix, k.result, rules, isinstance(g, BoundedExists))
            node = TraceNode(g, rule, (k,), cls)
        else:
            # ordinal-bounded quantifiers: the OrdTupleSet guard is Delta0, so
            # join(Delta0, body) == body and the plain quantifier rule applies
            k = go(g.body)
            rule = {Exists: "exists", Forall: "forall", OrdExists: "ord-exists", OrdForall: "ord-forall"}[type(g)]
            node = TraceNode(g, rule, (k,), apply_rule(rule, [k.result], g, rules, registry))
        if node.result.level > MAX_LEVEL:
            raise LevelOverflow(f"derived level {node.result.level} exceeds the cap {MAX_LEVEL}")
        return node

    return go(f)


def classify(
    f: Formula, rules: RuleSet | str = RuleSet.ZF, registry: Registry | None = None
) -> tuple[LevyClass, TraceNode]:
    trace = derive(f, RuleSet(rules), registry)
    return trace.result, trace


def replay(trace: TraceNode, rules: RuleSet | str = RuleSet.ZF, registry: Registry | None = None) -> LevyClass:
    """Recompute the root class bottom-up from the rule names in ``trace``."""
    registry = registry or Registry.standard()
    kids = [replay(c, rules, registry) for c in trace.children]
    if not trace.children and trace.rule not in ATOM_RULES:
        raise ValueError(f"leaf with non-atom rule {trace.rule!r}")
    return apply_rule(trace.rule, kids, trace.formula, RuleSet(rules), registry)


def delta_refine(f: Formula, rules: RuleSet | str = RuleSet.ZF, registry: Registry | None = None) -> LevyClass:
    """Meet of the available derivations for ``f``.

    Besides the direct derivation, the negation normal forms of ``f`` and of
    ``not f`` give derivations (the latter dualized).  If one lands in Sigma n
    and another in Pi n, ``f`` is Delta n; otherwise the direct class stands.
    """
    direct = classify(f, rules, registry)[0]
    candidates = [
        direct,
        classify(to_nnf(f), rules, registry)[0],
        classify(to_nnf(Not(f)), rules, registry)[0].dual(),
    ]
    best = direct
    for c in candidates[1:]:
        best = meet(best, c)
    return best


def is_ordinal_bounded_only(f: Formula) -> bool:
    """True iff no plain (unbounded) Exists/Forall occurs in ``f``."""
    return not any(isinstance(n, (Exists, Forall)) for n in subformulas(f))

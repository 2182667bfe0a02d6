"""Brute-force satisfaction over finite transitive models.

Formulas are compiled once per model into nested closures over a mutable
environment of Ackermann codes; quantifiers short-circuit.
"""

from __future__ import annotations

import math
import os
from typing import TYPE_CHECKING, Callable, Mapping

from . import hf
from .errors import LevyError, UnboundVariable, UnevaluatablePredicate, WorkBudgetExceeded
from .syntax import (
    And, BoundedExists, BoundedForall, DefinedAtom, EqualAtom, Exists, Forall, Formula,
    Implies, MemberAtom, Not, Or, OrdExists, OrdForall, free_vars,
)

if TYPE_CHECKING:
    from .registry import Registry

DEFAULT_BUDGET = 10**8


def work_budget() -> int:
    raw = os.environ.get("LEVYLAB_BUDGET")
    if raw is None:
        return DEFAULT_BUDGET
    try:
        return int(raw)
    except ValueError:
        raise LevyError(f"LEVYLAB_BUDGET must be an integer, got {raw!r}") from None


# --- built-in evaluators ----------------------------------------------------
# Each takes Ackermann codes and decides a Delta0 property; Delta0 properties
# depend only on the transitive closure of their arguments, so no model is needed.

def ev_ord(x: int) -> bool:
    return hf.is_ordinal(x)


def ev_ord_tuple_set(x: int) -> bool:
    return all(hf.ordinal_sequence(t) is not None for t in hf.members(x))


def ev_func_into(f: int, a: int, b: int) -> bool:
    graph = hf.function_graph(f)
    if graph is None:
        return False
    return hf.encode(graph) == a and all(hf.is_member(v, b) for v in graph.values())


def ev_omega(x: int) -> bool:
    return False


def _ordinal_entries(t: int) -> tuple[int, ...] | None:
    seq = hf.sequence(t)
    if seq is None or not all(hf.is_ordinal(e) for e in seq):
        return None
    return seq


def ev_color_tuple(t: int, kappa: int, lam: int) -> bool:
    """t = <e_0 < ... < e_{k-1}, c> with every e_i in kappa and c in lam."""
    seq = _ordinal_entries(t)
    if not seq or not hf.is_ordinal(kappa) or not hf.is_ordinal(lam):
        return False
    *prefix, color = seq
    if not hf.is_member(color, lam):
        return False
    if not all(hf.is_member(e, kappa) for e in prefix):
        return False
    return all(hf.is_member(a, b) for a, b in zip(prefix, prefix[1:]))


def ev_color_tuple_exp(t: int, kappa: int, lam: int, n: int) -> bool:
    width = hf.ordinal_value(n)
    if width is None or not ev_color_tuple(t, kappa, lam):
        return False
    return len(hf.sequence(t)) == width + 1


def ev_same_prefix(t: int, u: int) -> bool:
    s, r = hf.sequence(t), hf.sequence(u)
    return bool(s) and bool(r) and len(s) == len(r) and s[:-1] == r[:-1]


def ev_same_color(t: int, u: int) -> bool:
    s, r = hf.sequence(t), hf.sequence(u)
    return bool(s) and bool(r) and s[-1] == r[-1]


def ev_same_length(t: int, u: int) -> bool:
    s, r = hf.sequence(t), hf.sequence(u)
    return s is not None and r is not None and len(s) == len(r)


def ev_prefix_in(t: int, a: int) -> bool:
    seq = hf.sequence(t)
    if not seq:
        return False
    singles = {s[0] for s in map(hf.sequence, hf.members(a)) if s is not None and len(s) == 1}
    return all(e in singles for e in seq[:-1])


def ev_unary(s: int, a: int) -> bool:
    return hf.sequence(s) == (a,)


def ev_binary(p: int, a: int, b: int) -> bool:
    return hf.sequence(p) == (a, b)


EVALUATORS: dict[str, tuple[int, Callable[..., bool]]] = {
    "ord": (1, ev_ord),
    "ord_tuple_set": (1, ev_ord_tuple_set),
    "func_into": (3, ev_func_into),
    "omega": (1, ev_omega),
    "color_tuple": (3, ev_color_tuple),
    "color_tuple_exp": (4, ev_color_tuple_exp),
    "same_prefix": (2, ev_same_prefix),
    "same_color": (2, ev_same_color),
    "same_length": (2, ev_same_length),
    "prefix_in": (2, ev_prefix_in),
    "unary": (2, ev_unary),
    "binary": (3, ev_binary),
}


# --- compilation -------------------------------------------------------------

_MISSING = object()
Env = dict


def estimated_work(f: Formula, model: hf.TransitiveModel) -> int:
    """Upper bound on leaf visits: product of quantifier ranges along the deepest path."""
    size = max(len(model), 1)
    widest = max((bin(c).count("1") for c in model.codes), default=0)
    widest = max(widest, 1)

    def go(g: Formula) -> int:
        if isinstance(g, (MemberAtom, EqualAtom, DefinedAtom)):
            return 1
        if isinstance(g, Not):
            return go(g.body)
        if isinstance(g, (And, Or, Implies)):
            return go(g.left) + go(g.right)
        if isinstance(g, (BoundedExists, BoundedForall)):
            return widest * go(g.body)
        return size * go(g.body)

    return go(f)


def compile_formula(
    f: Formula, model: hf.TransitiveModel, registry: Registry
) -> Callable[[Env], bool]:
    domain = model.order
    ord_domain: tuple[int, ...] | None = None

    def ord_range() -> tuple[int, ...]:
        nonlocal ord_domain
        if ord_domain is None:
            ord_domain = tuple(c for c in domain if ev_ord_tuple_set(c))
        return ord_domain

    def quant(var: str, body: Callable[[Env], bool], want: bool, rng: Callable[[], tuple[int, ...]]):
        # want=True: exists (stop at first success); want=False: forall
        def run(env: Env) -> bool:
            old = env.get(var, _MISSING)
            try:
                for c in rng():
                    env[var] = c
                    if body(env) is want:
                        return want
                return not want
            finally:
                if old is _MISSING:
                    env.pop(var, None)
                else:
                    env[var] = old
        return run

    def bounded(var: str, bound: str, body: Callable[[Env], bool], want: bool):
        def run(env: Env) -> bool:
            old = env.get(var, _MISSING)
            try:
                for c in hf.members(env[bound]):
                    env[var] = c
                    if body(env) is want:
                        return want
                return not want
            finally:
                if old is _MISSING:
                    env.pop(var, None)
                else:
                    env[var] = old
        return run

    def go(g: Formula) -> Callable[[Env], bool]:
        if isinstance(g, MemberAtom):
            left, right = g.left, g.right
            return lambda env: (env[right] >> env[left]) & 1 == 1
        if isinstance(g, EqualAtom):
            left, right = g.left, g.right
            return lambda env: env[left] == env[right]
        if isinstance(g, DefinedAtom):
            info = registry.lookup(g.name, len(g.args))
            if info.evaluator is None:
                raise UnevaluatablePredicate(g.name)
            fn = EVALUATORS[info.evaluator][1]
            args = g.args
            return lambda env: fn(*(env[a] for a in args))
        if isinstance(g, Not):
            b = go(g.body)
            return lambda env: not b(env)
        if isinstance(g, And):
            lf, rf = go(g.left), go(g.right)
            return lambda env: lf(env) and rf(env)
        if isinstance(g, Or):
            lf, rf = go(g.left), go(g.right)
            return lambda env: lf(env) or rf(env)
        if isinstance(g, Implies):
            lf, rf = go(g.left), go(g.right)
            return lambda env: (not lf(env)) or rf(env)
        if isinstance(g, Exists):
            return quant(g.var, go(g.body), True, lambda: domain)
        if isinstance(g, Forall):
            return quant(g.var, go(g.body), False, lambda: domain)
        if isinstance(g, OrdExists):
            return quant(g.var, go(g.body), True, ord_range)
        if isinstance(g, OrdForall):
            return quant(g.var, go(g.body), False, ord_range)
        if isinstance(g, BoundedExists):
            return bounded(g.var, g.bound, go(g.body), True)
        if isinstance(g, BoundedForall):
            return bounded(g.var, g.bound, go(g.body), False)
        raise TypeError(f"not a formula: {g!r}")

    return go(f)


def evaluate(
    model: hf.TransitiveModel,
    f: Formula,
    assignment: Mapping[str, hf.HfSet | int] | None = None,
    registry: Registry | None = None,
    budget: int | None = None,
) -> bool:
    """Truth of ``f`` in ``model`` under ``assignment`` (Tarskian semantics).

    Unbounded quantifiers range over the model, ordinal-bounded ones over its
    elements satisfying ``OrdTupleSet``, bounded ones over the members of the
    bound's value.
    """
    from .registry import Registry

    registry = registry or Registry.standard()
    env: dict[str, int] = {}
    for k, v in (assignment or {}).items():
        code = v.code if isinstance(v, hf.HfSet) else int(v)
        if code not in model.codes:
            raise LevyError(f"value {hf.render(code)} assigned to {k!r} is not in the model")
        env[k] = code
    for v in sorted(free_vars(f)):
        if v not in env:
            raise UnboundVariable(v)
    limit = work_budget() if budget is None else budget
    cost = estimated_work(f, model)
    if cost > limit:
        raise WorkBudgetExceeded(
            f"estimated {cost} evaluation steps (about 10^{math.log10(cost):.1f}) exceed the budget {limit}"
        )
    return compile_formula(f, model, registry)(env)

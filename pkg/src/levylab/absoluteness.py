"""Empirical absoluteness checks between nested finite transitive models.

For transitive ``M`` contained in ``N`` (same membership relation), Delta0
formulas have the same truth value in both, Sigma1 truth goes up from ``M``
to ``N`` and Pi1 truth goes down.  The suite checks exactly these directions
for whatever class the classifier assigns and merely records the rest.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import asdict, dataclass
from typing import Sequence

from . import hf
from .classify import classify
from .levy import DELTA0, pi, sigma
from .registry import Registry
from .semantics import compile_formula
from .syntax import Formula, free_vars

SEED = 20131211
EXHAUSTIVE_LIMIT = 16  # universes up to this size have their transitive subsets enumerated
EXHAUSTIVE_SUBSETS = 200  # all nested pairs are listed when there are at most this many subsets

EQUAL, UPWARD, DOWNWARD, NO_CONTRACT = "equal", "upward", "downward", "none"


def transitive_subsets(universe: hf.TransitiveModel) -> list[hf.TransitiveModel]:
    """Every transitive subset of a small universe, by size then codes."""
    order = universe.order
    index = {c: i for i, c in enumerate(order)}
    # bitmask of members (inside the universe) for each element
    need = [sum(1 << index[m] for m in hf.members(c)) for c in order]
    found = []
    for mask in range(1 << len(order)):
        ok = True
        m = mask
        i = 0
        while m:
            if m & 1 and need[i] & ~mask:
                ok = False
                break
            m >>= 1
            i += 1
        if ok:
            found.append(frozenset(order[i] for i in range(len(order)) if mask >> i & 1))
    found.sort(key=lambda s: (len(s), sorted(s)))
    return [hf.TransitiveModel(s) for s in found]


def _random_transitive(universe: hf.TransitiveModel, rng: random.Random, base: frozenset[int]) -> frozenset[int]:
    # close a few random elements; closing half of a large universe is slow and
    # yields nearly the whole universe anyway
    pick = rng.sample(universe.order, rng.randint(0, min(len(universe), 12)))
    return hf.transitive_close([*base, *pick]).codes


def _pick_by_size(models: list[hf.TransitiveModel], rng: random.Random) -> hf.TransitiveModel:
    # size first, then a model of that size: small models are rare but matter
    sizes = sorted({len(m) for m in models})
    size = rng.choice(sizes)
    return rng.choice([m for m in models if len(m) == size])


def enumerate_transitive_pairs(
    universe: hf.TransitiveModel, budget: int, seed: int = SEED
) -> list[tuple[hf.TransitiveModel, hf.TransitiveModel]]:
    """Nested transitive pairs ``(M, N)`` with ``M <= N <= universe``.

    ``(empty, universe)`` and ``(universe, universe)`` come first.  Small
    universes are enumerated exhaustively when all pairs fit in the budget;
    otherwise a seeded sample of distinct pairs fills the remaining budget.
    """
    if budget < 1:
        raise ValueError("budget must be at least 1")
    empty = hf.TransitiveModel(frozenset())
    pairs: list[tuple[hf.TransitiveModel, hf.TransitiveModel]] = []
    seen: set[tuple[frozenset[int], frozenset[int]]] = set()

    def add(m: hf.TransitiveModel, n: hf.TransitiveModel) -> None:
        key = (m.codes, n.codes)
        if key not in seen and len(pairs) < budget:
            seen.add(key)
            pairs.append((m, n))

    add(empty, universe)
    add(universe, universe)
    if len(universe) <= EXHAUSTIVE_LIMIT:
        subsets = transitive_subsets(universe)
        rng = random.Random(seed)
        if len(subsets) <= EXHAUSTIVE_SUBSETS:
            nested = [(m, n) for m, n in itertools.product(subsets, subsets) if m <= n]
            if len(nested) > budget - len(pairs):
                nested = rng.sample(nested, len(nested))
            for m, n in nested:
                add(m, n)
            return pairs
        attempts = 0
        while len(pairs) < budget and attempts < 50 * budget:
            attempts += 1
            m = _pick_by_size(subsets, rng)
            n = _pick_by_size([s for s in subsets if m <= s], rng)
            add(m, n)
        return pairs
    rng = random.Random(seed)
    attempts = 0
    while len(pairs) < budget and attempts < 50 * budget:
        attempts += 1
        m = _random_transitive(universe, rng, frozenset())
        n = _random_transitive(universe, rng, m)
        add(hf.TransitiveModel(m), hf.TransitiveModel(n))
    return pairs


@dataclass(frozen=True)
class SuiteRecord:
    formula_id: str
    pair_id: int
    assignment: str
    level_class: str
    direction: str
    m_truth: bool
    n_truth: bool
    verdict: str  # "ok", "violation" or "observed"


@dataclass
class SuiteReport:
    universe_size: int
    pair_count: int
    records: list[SuiteRecord]

    @property
    def violations(self) -> list[SuiteRecord]:
        return [r for r in self.records if r.verdict == "violation"]

    @property
    def ok(self) -> bool:
        return not self.violations

    def summary(self) -> dict[str, dict[str, int]]:
        out: dict[str, dict[str, int]] = {}
        for r in self.records:
            row = out.setdefault(r.formula_id, {"ok": 0, "violation": 0, "observed": 0})
            row[r.verdict] += 1
        return out

    def to_json(self) -> dict:
        return {
            "universe_size": self.universe_size,
            "pair_count": self.pair_count,
            "checked": len(self.records),
            "violations": [asdict(r) for r in self.violations],
            "summary": self.summary(),
        }


def direction_for(cls) -> str:
    if cls == DELTA0:
        return EQUAL
    if cls <= sigma(1):
        return UPWARD
    if cls <= pi(1):
        return DOWNWARD
    return NO_CONTRACT


def _verdict(direction: str, m: bool, n: bool) -> str:
    if direction == EQUAL:
        return "ok" if m == n else "violation"
    if direction == UPWARD:
        return "violation" if m and not n else "ok"
    if direction == DOWNWARD:
        return "violation" if n and not m else "ok"
    return "observed"


def absoluteness_suite(
    universe: hf.TransitiveModel,
    formulas: Sequence[tuple[str, Formula]] | Sequence[Formula],
    budget: int,
    registry: Registry | None = None,
    max_assignments: int = 4096,
) -> SuiteReport:
    """Check the absoluteness direction dictated by each formula's class on
    every sampled pair.  Free variables act as parameters and range over the
    smaller model ``M``; at most ``max_assignments`` tuples are tried per pair.
    """
    registry = registry or Registry.standard()
    named = [(item if isinstance(item, tuple) else (f"f{i}", item)) for i, item in enumerate(formulas)]
    pairs = enumerate_transitive_pairs(universe, budget)
    records: list[SuiteRecord] = []
    for fid, f in named:
        cls = classify(f, "zf", registry)[0]
        direction = direction_for(cls)
        params = sorted(free_vars(f))
        for pid, (m, n) in enumerate(pairs):
            run_m = compile_formula(f, m, registry)
            run_n = compile_formula(f, n, registry)
            tuples = itertools.islice(itertools.product(m.order, repeat=len(params)), max_assignments)
            for values in tuples:
                env = dict(zip(params, values))
                tm, tn = run_m(dict(env)), run_n(dict(env))
                records.append(SuiteRecord(
                    fid, pid, ",".join(f"{k}={v}" for k, v in env.items()), str(cls),
                    direction, tm, tn, _verdict(direction, tm, tn),
                ))
    return SuiteReport(len(universe), len(pairs), records)

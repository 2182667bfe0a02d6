"""Hereditarily finite sets under the Ackermann coding, and finite transitive
models built from them.

Internally a set *is* its Ackermann code ``sum(2**code(y) for y in x)``:
``y in x`` is a bit test and equality is integer equality.  :class:`HfSet`
wraps a code for the public API.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable

from .errors import RankTooLarge

MAX_RANK = 5


def members(code: int) -> tuple[int, ...]:
    """Codes of the elements of the set coded by ``code``, ascending."""
    out = []
    while code:
        low = code & -code
        out.append(low.bit_length() - 1)
        code ^= low
    return tuple(out)


def is_member(x: int, y: int) -> bool:
    return (y >> x) & 1 == 1


def encode(elems: Iterable[int]) -> int:
    code = 0
    for e in set(elems):
        code |= 1 << e
    return code


@dataclass(frozen=True, slots=True)
class HfSet:
    """A hereditarily finite set, identified by its Ackermann code."""

    code: int

    def __post_init__(self):
        if self.code < 0:
            raise ValueError("Ackermann codes are nonnegative")

    @classmethod
    def of(cls, *elements: HfSet) -> HfSet:
        return cls(encode(e.code for e in elements))

    @property
    def children(self) -> tuple[HfSet, ...]:
        return tuple(HfSet(c) for c in members(self.code))

    def __contains__(self, item: HfSet) -> bool:
        return is_member(item.code, self.code)

    def __len__(self) -> int:
        return bin(self.code).count("1")

    def __repr__(self) -> str:
        return f"HfSet({self.code})"

    def __str__(self) -> str:
        return render(self.code)


def render(code: int) -> str:
    if code == 0:
        return "{}"
    return "{" + ", ".join(render(c) for c in members(code)) + "}"


EMPTY = HfSet(0)


# --- ordinals, pairs and finite sequences ---------------------------------

@lru_cache(maxsize=None)
def ordinal_code(n: int) -> int:
    """Code of the von Neumann natural ``n``: 0, 1, 3, 11, 2059, ..."""
    if n == 0:
        return 0
    prev = ordinal_code(n - 1)
    return prev | (1 << prev)


# ordinal_code(6) has about 2**2059 bits, so no representable code can equal it
_ORDINALS = {ordinal_code(n): n for n in range(6)}


def ordinal_value(code: int) -> int | None:
    """The natural ``n`` whose code is ``code``, or None if not an ordinal."""
    return _ORDINALS.get(code)


def is_ordinal(code: int) -> bool:
    return ordinal_value(code) is not None


def pair_code(a: int, b: int) -> int:
    """Kuratowski pair ``{{a}, {a, b}}``."""
    return encode([encode([a]), encode([a, b])])


@lru_cache(maxsize=65536)
def unpair(code: int) -> tuple[int, int] | None:
    ms = members(code)
    if len(ms) == 1:
        inner = members(ms[0])
        if len(inner) == 1:
            return inner[0], inner[0]
        return None
    if len(ms) != 2:
        return None
    first, second = (members(m) for m in ms)
    if len(first) == 2 and len(second) == 1:
        first, second = second, first
    if len(first) != 1 or len(second) != 2 or first[0] not in second:
        return None
    a = first[0]
    b = second[1] if second[0] == a else second[0]
    return a, b


@lru_cache(maxsize=65536)
def function_graph(code: int) -> dict[int, int] | None:
    """Decode a set of Kuratowski pairs with distinct first components."""
    graph: dict[int, int] = {}
    for m in members(code):
        p = unpair(m)
        if p is None or p[0] in graph:
            return None
        graph[p[0]] = p[1]
    return graph


@lru_cache(maxsize=65536)
def sequence(code: int) -> tuple[int, ...] | None:
    """Decode a finite sequence: a function whose domain is a natural."""
    graph = function_graph(code)
    if graph is None:
        return None
    n = len(graph)
    if n > 5:  # the key ordinal 5 cannot occur inside a representable pair
        return None
    try:
        return tuple(graph[ordinal_code(i)] for i in range(n))
    except KeyError:
        return None


def sequence_code(entries: Iterable[int]) -> int:
    return encode(pair_code(ordinal_code(i), e) for i, e in enumerate(entries))


def ordinal_sequence(code: int) -> tuple[int, ...] | None:
    """A finite sequence of ordinals, as naturals; None otherwise."""
    seq = sequence(code)
    if seq is None:
        return None
    vals = tuple(ordinal_value(e) for e in seq)
    if any(v is None for v in vals):
        return None
    return vals  # type: ignore[return-value]


# --- transitive models ----------------------------------------------------

@dataclass(frozen=True)
class TransitiveModel:
    """A finite transitive set of hereditarily finite sets, under true membership."""

    codes: frozenset[int]

    def __post_init__(self):
        for c in self.codes:
            for m in members(c):
                if m not in self.codes:
                    raise ValueError(
                        f"not transitive: {render(m)} is in {render(c)} but not in the model"
                    )

    @classmethod
    def of(cls, elements: Iterable[HfSet]) -> TransitiveModel:
        return cls(frozenset(e.code for e in elements))

    @cached_property
    def order(self) -> tuple[int, ...]:
        return tuple(sorted(self.codes))

    @property
    def elements(self) -> frozenset[HfSet]:
        return frozenset(HfSet(c) for c in self.codes)

    def __len__(self) -> int:
        return len(self.codes)

    def __contains__(self, item: HfSet | int) -> bool:
        code = item.code if isinstance(item, HfSet) else item
        return code in self.codes

    def __le__(self, other: TransitiveModel) -> bool:
        return self.codes <= other.codes

    def dump(self) -> str:
        """One Ackermann code per line, ascending."""
        return "".join(f"{c}\n" for c in self.order)

    @classmethod
    def load(cls, text: str) -> TransitiveModel:
        codes = [int(line) for line in text.splitlines() if line.strip()]
        return cls(frozenset(codes))


def build_v(rank: int) -> TransitiveModel:
    """The cumulative stage V_rank; its elements are exactly the codes below |V_rank|."""
    if rank < 0:
        raise ValueError("rank must be nonnegative")
    if rank > MAX_RANK:
        raise RankTooLarge(f"V_{rank} is above the size cap V_{MAX_RANK}")
    size = 0
    for _ in range(rank):
        size = 2 ** size
    return TransitiveModel(frozenset(range(size)))


def transitive_close(seed: Iterable[HfSet | int]) -> TransitiveModel:
    todo = [s.code if isinstance(s, HfSet) else s for s in seed]
    seen: set[int] = set()
    while todo:
        c = todo.pop()
        if c in seen:
            continue
        seen.add(c)
        todo.extend(members(c))
    return TransitiveModel(frozenset(seen))


def parse_model_name(name: str) -> TransitiveModel:
    """``v3`` / ``V3`` names the cumulative stage V_3."""
    if len(name) >= 2 and name[0] in "vV" and name[1:].isdigit():
        return build_v(int(name[1:]))
    raise ValueError(f"model names look like v0..v{MAX_RANK}, got {name!r}")

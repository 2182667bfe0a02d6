"""Defined predicates: assigned Levy classes, absoluteness flags, evaluators.

Registry file format, one entry per line::

    name/arity class=<Delta0|Sigma<n>|Pi<n>|Delta<n>> [up] [down] [eval=<builtin>]

``#`` starts a comment.  A ``Delta0`` entry is absolute in both directions, so
``up``/``down`` are implied for it.
"""

from __future__ import annotations

from dataclasses import dataclass
from types import MappingProxyType
from typing import Iterable, Mapping

from .errors import ArityMismatch, RegistryError, UnknownPredicate
from .levy import DELTA0, LevyClass
from .semantics import EVALUATORS
from .syntax import is_identifier


@dataclass(frozen=True)
class PredicateInfo:
    name: str
    arity: int
    assigned_class: LevyClass
    upwards_absolute: bool = False
    downwards_absolute: bool = False
    evaluator: str | None = None

    def __post_init__(self):
        if not is_identifier(self.name):
            raise RegistryError(f"bad predicate name {self.name!r}")
        if self.arity < 0:
            raise RegistryError(f"{self.name}: negative arity")
        if self.assigned_class == DELTA0 and not (self.upwards_absolute and self.downwards_absolute):
            raise RegistryError(f"{self.name}: a Delta0 predicate is absolute in both directions")
        if self.evaluator is not None:
            if self.evaluator not in EVALUATORS:
                raise RegistryError(f"{self.name}: unknown evaluator {self.evaluator!r}")
            if EVALUATORS[self.evaluator][0] != self.arity:
                raise RegistryError(
                    f"{self.name}/{self.arity}: evaluator {self.evaluator!r} "
                    f"takes {EVALUATORS[self.evaluator][0]} argument(s)"
                )

    def render(self) -> str:
        parts = [f"{self.name}/{self.arity}", f"class={self.assigned_class}"]
        if self.upwards_absolute:
            parts.append("up")
        if self.downwards_absolute:
            parts.append("down")
        if self.evaluator:
            parts.append(f"eval={self.evaluator}")
        return " ".join(parts)


def _delta0(name: str, arity: int, evaluator: str) -> PredicateInfo:
    return PredicateInfo(name, arity, DELTA0, True, True, evaluator)


BUILTINS: Mapping[str, PredicateInfo] = MappingProxyType({
    p.name: p
    for p in (
        _delta0("OrdTupleSet", 1, "ord_tuple_set"),
        _delta0("Ord", 1, "ord"),
        _delta0("FuncInto", 3, "func_into"),
        _delta0("Omega", 1, "omega"),
    )
})

# Delta0 vocabulary for tuple-coded colorings and homogeneous sets
SEQUENCE_PREDICATES: tuple[PredicateInfo, ...] = (
    _delta0("ColorTuple", 3, "color_tuple"),
    _delta0("ColorTupleExp", 4, "color_tuple_exp"),
    _delta0("SamePrefix", 2, "same_prefix"),
    _delta0("SameColor", 2, "same_color"),
    _delta0("SameLength", 2, "same_length"),
    _delta0("PrefixIn", 2, "prefix_in"),
    _delta0("Unary", 2, "unary"),
    _delta0("Binary", 3, "binary"),
)


class Registry:
    """Immutable name -> PredicateInfo map; built-ins are always present."""

    def __init__(self, entries: Iterable[PredicateInfo] = ()):
        table = dict(BUILTINS)
        for info in entries:
            if info.name in BUILTINS:
                if info == BUILTINS[info.name]:
                    continue
                raise RegistryError(f"{info.name!r} is a built-in and cannot be redefined")
            if info.name in table and table[info.name] != info:
                raise RegistryError(f"conflicting entries for {info.name!r}")
            table[info.name] = info
        self._entries = MappingProxyType(table)

    @classmethod
    def standard(cls) -> Registry:
        return _STANDARD

    @property
    def entries(self) -> Mapping[str, PredicateInfo]:
        return self._entries

    def __contains__(self, name: str) -> bool:
        return name in self._entries

    def __iter__(self):
        return iter(self._entries.values())

    def __eq__(self, other) -> bool:
        return isinstance(other, Registry) and dict(self._entries) == dict(other._entries)

    def __hash__(self) -> int:
        return hash(frozenset(self._entries.items()))

    def get(self, name: str) -> PredicateInfo:
        try:
            return self._entries[name]
        except KeyError:
            raise UnknownPredicate(name) from None

    def lookup(self, name: str, arity: int) -> PredicateInfo:
        info = self.get(name)
        if info.arity != arity:
            raise ArityMismatch(name, arity, info.arity)
        return info

    def extend(self, entries: Iterable[PredicateInfo]) -> Registry:
        return Registry([*self._entries.values(), *entries])

    def dumps(self) -> str:
        return "".join(
            info.render() + "\n" for name, info in sorted(self._entries.items()) if name not in BUILTINS
        )


_STANDARD = Registry(SEQUENCE_PREDICATES)


def parse_registry_line(line: str, lineno: int = 0) -> PredicateInfo | None:
    text = line.split("#", 1)[0].strip()
    if not text:
        return None
    where = f"line {lineno}: " if lineno else ""
    head, *flags = text.split()
    name, sep, arity_text = head.partition("/")
    if not sep or not arity_text.isdigit():
        raise RegistryError(f"{where}expected name/arity, got {head!r}")
    cls = None
    up = down = False
    evaluator = None
    for flag in flags:
        key, eq, value = flag.partition("=")
        if key == "class" and eq:
            try:
                cls = LevyClass.parse(value)
            except ValueError as exc:
                raise RegistryError(f"{where}{exc}") from None
        elif key == "eval" and eq:
            evaluator = value
        elif flag == "up":
            up = True
        elif flag == "down":
            down = True
        else:
            raise RegistryError(f"{where}unknown flag {flag!r}")
    if cls is None:
        raise RegistryError(f"{where}missing class=...")
    if cls == DELTA0:
        up = down = True
    try:
        return PredicateInfo(name, int(arity_text), cls, up, down, evaluator)
    except RegistryError as exc:
        raise RegistryError(f"{where}{exc}") from None


def loads_registry(text: str, base: Registry | None = None) -> Registry:
    entries = []
    for n, line in enumerate(text.splitlines(), 1):
        info = parse_registry_line(line, n)
        if info is not None:
            entries.append(info)
    return (base or Registry.standard()).extend(entries)

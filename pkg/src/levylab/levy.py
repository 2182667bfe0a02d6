"""Points of the Levy hierarchy and the inclusion order between them."""

from __future__ import annotations

import re
from dataclasses import dataclass

SIGMA, PI, DELTA = "Sigma", "Pi", "Delta"
_CLASS_RE = re.compile(r"(Sigma|Pi|Delta)(\d+)")


@dataclass(frozen=True, slots=True)
class LevyClass:
    """``Sigma n``, ``Pi n`` or ``Delta n``; level 0 is always ``Delta0``."""

    kind: str
    level: int

    def __post_init__(self):
        if self.kind not in (SIGMA, PI, DELTA):
            raise ValueError(f"bad class kind {self.kind!r}")
        if self.level < 0:
            raise ValueError("level must be nonnegative")
        if self.level == 0 and self.kind != DELTA:
            object.__setattr__(self, "kind", DELTA)

    @classmethod
    def parse(cls, text: str) -> LevyClass:
        m = _CLASS_RE.fullmatch(text.strip())
        if not m:
            raise ValueError(f"not a class name: {text!r}")
        return cls(m.group(1), int(m.group(2)))

    def __str__(self) -> str:
        return f"{self.kind}{self.level}"

    def dual(self) -> LevyClass:
        if self.kind == SIGMA:
            return LevyClass(PI, self.level)
        if self.kind == PI:
            return LevyClass(SIGMA, self.level)
        return self

    def __le__(self, other: LevyClass) -> bool:
        return is_subclass(self, other)

    def __lt__(self, other: LevyClass) -> bool:
        return self != other and is_subclass(self, other)


DELTA0 = LevyClass(DELTA, 0)


def sigma(n: int) -> LevyClass:
    return LevyClass(SIGMA, n)


def pi(n: int) -> LevyClass:
    return LevyClass(PI, n)


def delta(n: int) -> LevyClass:
    return LevyClass(DELTA, n)


def is_subclass(a: LevyClass, b: LevyClass) -> bool:
    """Inclusion ``a <= b`` of hierarchy classes."""
    if a.level == 0:
        return True
    if b.level == 0:
        return False
    if a.kind == DELTA:
        return b.level >= a.level
    if a.kind == b.kind:
        return b.level >= a.level
    return b.level > a.level


def join(a: LevyClass, b: LevyClass) -> LevyClass:
    """Least class containing both; only Sigma n / Pi n are incomparable."""
    if is_subclass(a, b):
        return b
    if is_subclass(b, a):
        return a
    return LevyClass(DELTA, max(a.level, b.level) + 1)


def meet(a: LevyClass, b: LevyClass) -> LevyClass:
    """Greatest class inside both (Sigma n meet Pi n is Delta n)."""
    if is_subclass(a, b):
        return a
    if is_subclass(b, a):
        return b
    return LevyClass(DELTA, min(a.level, b.level))


def least_sigma_over(c: LevyClass) -> LevyClass:
    """Least Sigma m, m >= 1, containing ``c``: the class of an existential over ``c``."""
    if c.level == 0:
        return sigma(1)
    if c.kind == PI:
        return sigma(c.level + 1)
    return sigma(c.level)


def least_pi_over(c: LevyClass) -> LevyClass:
    return least_sigma_over(c.dual()).dual()

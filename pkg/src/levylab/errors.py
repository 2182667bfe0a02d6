"""Exception hierarchy shared by every levylab module."""

from __future__ import annotations


class LevyError(Exception):
    """Base class for all errors raised by levylab."""


class FormulaSyntaxError(LevyError):
    def __init__(self, position: int, expected: list[str], found: str = ""):
        self.position = position
        self.expected = list(expected)
        self.found = found
        exp = ", ".join(self.expected) if self.expected else "nothing"
        got = f" but found {found!r}" if found else ""
        super().__init__(f"at offset {position}: expected {exp}{got}")


class UnknownPredicate(LevyError):
    def __init__(self, name: str):
        self.name = name
        super().__init__(f"unknown predicate {name!r}")


class ArityMismatch(LevyError):
    def __init__(self, name: str, got: int, want: int):
        self.name, self.got, self.want = name, got, want
        super().__init__(f"predicate {name!r} takes {want} argument(s), got {got}")


class ScopeError(LevyError):
    def __init__(self, variable: str, detail: str = ""):
        self.variable = variable
        msg = f"ill-scoped variable {variable!r}"
        super().__init__(f"{msg}: {detail}" if detail else msg)


class RegistryError(LevyError):
    pass


class LevelOverflow(LevyError):
    pass


class UndeclaredParameter(LevyError):
    def __init__(self, variable: str):
        self.variable = variable
        super().__init__(f"free variable {variable!r} has no parameter declaration")


class RankTooLarge(LevyError):
    pass


class UnevaluatablePredicate(LevyError):
    def __init__(self, name: str):
        self.name = name
        super().__init__(f"predicate {name!r} has no finite-model evaluator")


class UnboundVariable(LevyError):
    def __init__(self, variable: str):
        self.variable = variable
        super().__init__(f"variable {variable!r} is not assigned")


class WorkBudgetExceeded(LevyError):
    pass


class InvalidSpec(LevyError):
    pass


class CorpusError(LevyError):
    pass

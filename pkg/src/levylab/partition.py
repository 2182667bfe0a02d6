"""Partition-calculus statements as ordinal-bounded sentences.

Everything quantified over is coded as a set of finite tuples of ordinals:

* the coloring ``f`` holds tuples ``<e_0, ..., e_{k-1}, c>``: the strictly
  increasing tuple ``e`` below ``kappa`` gets color ``c < lambda``;
* the candidate set ``A`` holds 1-tuples ``<a>`` with ``a < kappa``;
* the witness ``g`` holds 2-tuples ``<a, b>`` and is a bijection (optionally
  order preserving) from the members of ``A`` onto ``alpha``.

The generated sentence is ``forallOrd f . existsOrd A . existsOrd g . phi``
where ``phi`` only uses bounded quantifiers and Delta0 atoms.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .errors import InvalidSpec
from .parser import parse
from .registry import Registry
from .syntax import Formula, free_vars, is_identifier
from .transfer import ParameterDeclaration, Sort

HOMOGENEOUS = "homogeneous"
ANTI_HOMOGENEOUS = "anti-homogeneous"

# names used inside the generated sentence
INTERNAL = frozenset("f A g t u s p q a b c d".split())


class Mode(str, enum.Enum):
    HOMOGENEOUS = HOMOGENEOUS
    ANTI_HOMOGENEOUS = ANTI_HOMOGENEOUS


@dataclass(frozen=True)
class PartitionStatementSpec:
    """``kappa -> (alpha)^n_lambda`` and its relatives.

    ``exponent`` is a fixed n >= 1 (bound through the parameter
    ``exponent_var``) or None for all finite exponents.
    """

    kappa: str = "kappa"
    lam: str = "lam"
    target: str = "alpha"
    exponent: int | None = 2
    mode: Mode = Mode.HOMOGENEOUS
    order_preserving: bool = False
    exponent_var: str = "n"

    def validate(self) -> None:
        names = [self.kappa, self.lam, self.target]
        if self.exponent is not None:
            names.append(self.exponent_var)
            if not isinstance(self.exponent, int) or self.exponent < 1:
                raise InvalidSpec(f"fixed exponent must be an integer >= 1, got {self.exponent!r}")
        for name in names:
            if not is_identifier(name):
                raise InvalidSpec(f"{name!r} is not an identifier")
            if name in INTERNAL:
                raise InvalidSpec(f"parameter name {name!r} clashes with a bound variable of the statement")
        if self.exponent is not None and self.exponent_var in (self.kappa, self.lam, self.target):
            raise InvalidSpec("the exponent parameter must differ from kappa, lambda and alpha")
        Mode(self.mode)

    def parameters(self) -> list[ParameterDeclaration]:
        names = dict.fromkeys([self.kappa, self.lam, self.target])
        if self.exponent is not None:
            names[self.exponent_var] = None
        return [ParameterDeclaration(n, Sort.ORDINAL) for n in names]

    def arrow(self) -> str:
        exp = "<omega" if self.exponent is None else str(self.exponent)
        arrow = "->" if self.mode == Mode.HOMOGENEOUS else "->*"
        kind = "order type" if self.order_preserving else "cardinality"
        return f"{self.kappa} {arrow} ({self.target})^{exp}_{self.lam} [{kind}]"


def _coloring(spec: PartitionStatementSpec) -> str:
    k, lam = spec.kappa, spec.lam
    if spec.exponent is None:
        shape = f"forall t in f . ColorTuple(t, {k}, {lam})"
    else:
        shape = f"forall t in f . ColorTupleExp(t, {k}, {lam}, {spec.exponent_var})"
    functional = "forall t in f . forall u in f . SamePrefix(t, u) -> t = u"
    return f"({shape}) and ({functional})"


def _subset(spec: PartitionStatementSpec) -> str:
    return f"forall s in A . exists a in {spec.kappa} . Unary(s, a)"


def _bijection(spec: PartitionStatementSpec) -> list[str]:
    k, alpha = spec.kappa, spec.target
    into = f"forall p in g . exists a in {k} . exists b in {alpha} . Binary(p, a, b) and (exists s in A . Unary(s, a))"
    total = f"forall s in A . exists a in {k} . Unary(s, a) and (exists p in g . exists b in {alpha} . Binary(p, a, b))"
    onto = f"forall b in {alpha} . exists p in g . exists a in {k} . Binary(p, a, b)"
    both = (
        f"forall p in g . forall q in g . forall a in {k} . forall b in {alpha} . "
        f"forall c in {k} . forall d in {alpha} . Binary(p, a, b) and Binary(q, c, d) -> "
    )
    injective = both + "(a = c or b = d) -> p = q"
    parts = [into, total, onto, injective]
    if spec.order_preserving:
        parts.append(both + "a in c -> b in d")
    return parts


def _homogeneity(spec: PartitionStatementSpec) -> str:
    on_a = "PrefixIn(t, A) and PrefixIn(u, A)"
    if spec.mode == Mode.HOMOGENEOUS:
        # with all finite exponents homogeneity is required length by length
        same = " and SameLength(t, u)" if spec.exponent is None else ""
        return f"forall t in f . forall u in f . {on_a}{same} -> SameColor(t, u)"
    return f"forall t in f . forall u in f . {on_a} and SameColor(t, u) -> t = u"


def partition_source(spec: PartitionStatementSpec) -> str:
    spec.validate()
    conjuncts = [_subset(spec), *_bijection(spec), _homogeneity(spec)]
    matrix = " and\n    ".join(f"({x})" for x in conjuncts)
    return (
        f"forallOrd f . existsOrd A . existsOrd g .\n"
        f"  ({_coloring(spec)}) ->\n"
        f"    {matrix}"
    )


def make_partition_statement(spec: PartitionStatementSpec, registry: Registry | None = None) -> Formula:
    f = parse(partition_source(spec), registry or Registry.standard())
    assert free_vars(f) <= {p.variable for p in spec.parameters()}
    return f


EDM = PartitionStatementSpec(kappa="kappa", lam="two", target="omega", exponent=2)

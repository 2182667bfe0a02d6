"""Ordinal-bounded desugaring, negation normal form, prenex form and
quantifier-block contraction."""

from __future__ import annotations

from dataclasses import dataclass, field

from .syntax import (
    ATOMS, BINARIES, BOUNDED, UNBOUNDED, And, BoundedExists, BoundedForall, DefinedAtom,
    Exists, Forall, Formula, Implies, MemberAtom, Not, Or, OrdExists, OrdForall, free_vars,
    rename_fresh, subformulas,
)

EXISTS, FORALL = "exists", "forall"
UNBOUNDED_FLAVOR, ORD_FLAVOR = "unbounded", "ord"


def desugar_ord(f: Formula) -> Formula:
    """Replace ``existsOrd x . p`` by ``exists x . OrdTupleSet(x) and p`` and
    ``forallOrd x . p`` by ``forall x . OrdTupleSet(x) -> p``."""
    if isinstance(f, ATOMS):
        return f
    if isinstance(f, Not):
        return Not(desugar_ord(f.body))
    if isinstance(f, BINARIES):
        return type(f)(desugar_ord(f.left), desugar_ord(f.right))
    body = desugar_ord(f.body)
    if isinstance(f, OrdExists):
        return Exists(f.var, And(DefinedAtom("OrdTupleSet", (f.var,)), body))
    if isinstance(f, OrdForall):
        return Forall(f.var, Implies(DefinedAtom("OrdTupleSet", (f.var,)), body))
    if isinstance(f, BOUNDED):
        return type(f)(f.var, f.bound, body)
    return type(f)(f.var, body)


_DUAL_QUANT = {
    Exists: Forall, Forall: Exists,
    OrdExists: OrdForall, OrdForall: OrdExists,
    BoundedExists: BoundedForall, BoundedForall: BoundedExists,
}


def to_nnf(f: Formula, negate: bool = False) -> Formula:
    """Push negations down to atoms; implications become ``not L or R``."""
    if isinstance(f, ATOMS):
        return Not(f) if negate else f
    if isinstance(f, Not):
        return to_nnf(f.body, not negate)
    if isinstance(f, Implies):
        return to_nnf(Or(Not(f.left), f.right), negate)
    if isinstance(f, (And, Or)):
        op = type(f)
        if negate:
            op = Or if op is And else And
        return op(to_nnf(f.left, negate), to_nnf(f.right, negate))
    op = _DUAL_QUANT[type(f)] if negate else type(f)
    body = to_nnf(f.body, negate)
    if isinstance(f, BOUNDED):
        return op(f.var, f.bound, body)
    return op(f.var, body)


@dataclass(frozen=True)
class PrefixEntry:
    kind: str  # EXISTS or FORALL
    flavor: str  # UNBOUNDED_FLAVOR or ORD_FLAVOR
    var: str

    def __str__(self) -> str:
        word = self.kind + ("Ord" if self.flavor == ORD_FLAVOR else "")
        return f"{word} {self.var}"


@dataclass(frozen=True)
class Block:
    kind: str
    entries: tuple[PrefixEntry, ...]

    @property
    def variables(self) -> tuple[str, ...]:
        return tuple(e.var for e in self.entries)


@dataclass(frozen=True)
class PrenexForm:
    prefix: tuple[PrefixEntry, ...]
    matrix: Formula
    blocks: tuple[Block, ...] | None = field(default=None, compare=False)

    def rebuild(self) -> Formula:
        f = self.matrix
        for e in reversed(self.prefix):
            if e.flavor == ORD_FLAVOR:
                f = (OrdExists if e.kind == EXISTS else OrdForall)(e.var, f)
            else:
                f = (Exists if e.kind == EXISTS else Forall)(e.var, f)
        return f

    def check(self) -> None:
        """Assert the prenex invariants (used by tests)."""
        names = [e.var for e in self.prefix]
        assert len(set(names)) == len(names), "prefix variables repeat"
        for node in subformulas(self.matrix):
            assert not isinstance(node, UNBOUNDED), "unbounded quantifier left in matrix"
            if isinstance(node, BOUNDED):
                assert node.var not in names, "matrix binder reuses a prefix variable"


def _has_unbounded(f: Formula) -> bool:
    return any(isinstance(n, UNBOUNDED) for n in subformulas(f))


def _pull(f: Formula) -> tuple[list[PrefixEntry], Formula]:
    # f is in NNF with pairwise distinct binders that avoid its free variables
    if isinstance(f, ATOMS) or isinstance(f, Not):
        return [], f
    if isinstance(f, (And, Or)):
        pl, ml = _pull(f.left)
        pr, mr = _pull(f.right)
        return pl + pr, type(f)(ml, mr)
    if isinstance(f, BOUNDED):
        if not _has_unbounded(f.body):
            return [], f
        # exists x in y . p  ==  exists x . x in y and p (dually for forall)
        guard = MemberAtom(f.var, f.bound)
        if isinstance(f, BoundedExists):
            return _pull(Exists(f.var, And(guard, f.body)))
        return _pull(Forall(f.var, Or(Not(guard), f.body)))
    kind = EXISTS if isinstance(f, (Exists, OrdExists)) else FORALL
    flavor = ORD_FLAVOR if isinstance(f, (OrdExists, OrdForall)) else UNBOUNDED_FLAVOR
    prefix, matrix = _pull(f.body)
    return [PrefixEntry(kind, flavor, f.var), *prefix], matrix


def to_prenex(f: Formula) -> PrenexForm:
    """Classical prenex form: unbounded and ordinal-bounded quantifiers move to
    the prefix in left-to-right order; bounded quantifiers stay in the matrix
    unless they scope over an unbounded one, in which case they are unfolded
    into a guarded unbounded quantifier first.

    Pulling a quantifier across a connective is sound over nonempty domains;
    every nonempty transitive model contains the empty set, which also makes
    the ordinal-bounded range nonempty.
    """
    g = rename_fresh(to_nnf(f), free_vars(f))
    prefix, matrix = _pull(g)
    return PrenexForm(tuple(prefix), matrix)


def contract_blocks(p: PrenexForm) -> PrenexForm:
    """Group adjacent prefix entries of the same kind into blocks."""
    blocks: list[Block] = []
    for e in p.prefix:
        if blocks and blocks[-1].kind == e.kind:
            blocks[-1] = Block(e.kind, blocks[-1].entries + (e,))
        else:
            blocks.append(Block(e.kind, (e,)))
    return PrenexForm(p.prefix, p.matrix, tuple(blocks))


def prefix_text(p: PrenexForm) -> str:
    return " ".join(f"{e} ." for e in p.prefix)

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from levylab.errors import (
    ArityMismatch, FormulaSyntaxError, LevyError, RegistryError, ScopeError, UnknownPredicate,
)
from levylab.levy import LevyClass
from levylab.parser import parse, print_formula
from levylab.registry import BUILTINS, PredicateInfo, Registry, loads_registry
from levylab.syntax import (
    BoundedForall, DefinedAtom, EqualAtom, Exists, MemberAtom, Not, OrdExists, OrdForall,
    free_vars, rename_fresh,
)

from formula_gen import CLASSED, classed_formulas


def test_parse_atom():
    assert parse("x in y") == MemberAtom("x", "y")


def test_parse_ord_exists_with_bounded_body():
    f = parse("existsOrd A . forall n in A . Ord(n)")
    assert f == OrdExists("A", BoundedForall("n", "A", DefinedAtom("Ord", ("n",))))


def test_incomplete_body_is_positioned_error():
    with pytest.raises(FormulaSyntaxError) as err:
        parse("exists x .")
    assert err.value.position == len("exists x .")
    assert err.value.found == "end of input"


@pytest.mark.parametrize("f, text", [
    (MemberAtom("x", "y"), "x in y"),
    (Not(EqualAtom("x", "x")), "not x = x"),
    (OrdForall("f", Exists("A", MemberAtom("A", "f"))), "forallOrd f . exists A . A in f"),
])
def test_print(f, text):
    assert print_formula(f) == text


@pytest.mark.parametrize("text, expected", [
    ("x in y", {"x", "y"}),
    ("exists x . x in y", {"y"}),
    ("forall x in y . x = z", {"y", "z"}),
])
def test_free_vars(text, expected):
    assert free_vars(parse(text)) == expected


@pytest.mark.parametrize("text, reserved, expected", [
    ("exists x . x in y", {"x"}, "exists x1 . x1 in y"),
    ("exists x . exists x . x = x", set(), "exists x . exists x1 . x1 = x1"),
    ("x = y", {"x", "y"}, "x = y"),
])
def test_rename_fresh(text, reserved, expected):
    assert print_formula(rename_fresh(parse(text), reserved)) == expected


def test_rename_fresh_avoids_free_variables():
    f = parse("x in y and exists x . x = x")
    assert print_formula(rename_fresh(f)) == "x in y and exists x1 . x1 = x1"


def test_precedence_and_associativity():
    assert parse("a in b or c in d and e = f") == parse("a in b or (c in d and e = f)")
    assert parse("a = a -> b = b -> c = c") == parse("a = a -> (b = b -> c = c)")
    assert parse("not a in b and c = c") == parse("(not a in b) and c = c")
    # a quantifier body runs to the right as far as possible
    assert parse("exists x . x in a or x = a") == Exists("x", parse("x in a or x = a"))
    assert parse("a = a and exists x . x in a -> x = a") == parse("a = a and (exists x . (x in a -> x = a))")


def test_comments_and_unicode_identifiers():
    f = parse("# leading comment\nexists α . α in κ  # trailing\n")
    assert f == Exists("α", MemberAtom("α", "κ"))


def test_unknown_predicate_and_arity():
    with pytest.raises(UnknownPredicate):
        parse("Foo(x)")
    with pytest.raises(ArityMismatch) as err:
        parse("Ord(x, y)")
    assert (err.value.got, err.value.want) == (2, 1)


def test_bound_equal_to_variable_is_scope_error():
    with pytest.raises(ScopeError):
        parse("exists x in x . x = x")


def test_ord_quantifier_takes_no_bound():
    with pytest.raises(FormulaSyntaxError):
        parse("forallOrd x in y . x = x")


def test_trailing_garbage():
    with pytest.raises(FormulaSyntaxError) as err:
        parse("x in y y")
    assert err.value.position == 7


def test_zero_ary_atom(creg):
    assert parse("ZeroSharpExists()", creg) == DefinedAtom("ZeroSharpExists", ())


@settings(max_examples=300, deadline=None)
@given(classed_formulas(depth=5))
def test_round_trip(f):
    assert parse(print_formula(f), CLASSED) == f


@settings(max_examples=300, deadline=None)
@given(classed_formulas(), st.sets(st.sampled_from(["a", "b", "x", "y", "x1"])))
def test_rename_fresh_preserves_free_vars_and_separates_binders(f, reserved):
    g = rename_fresh(f, reserved)
    assert free_vars(g) == free_vars(f)
    from levylab.syntax import bound_vars
    binders = bound_vars(g)
    assert len(binders) == len(set(binders))
    assert not set(binders) & (set(reserved) | free_vars(f))


@settings(max_examples=500, deadline=None)
@given(st.lists(st.sampled_from(list("xyz().,=#\n") + ["->", "in", "not", "and", "or", "exists",
                                                          "forall", "existsOrd", "Ord", "é", "1"]),
                max_size=20))
def test_parser_total_on_token_soup(tokens):
    try:
        parse(" ".join(tokens))
    except LevyError:
        pass


@settings(max_examples=300, deadline=None)
@given(st.binary(max_size=40))
def test_parser_total_on_bytes(raw):
    try:
        parse(raw.decode("utf-8", errors="replace"))
    except LevyError:
        pass


# --- registry -----------------------------------------------------------------

def test_builtins_present():
    reg = Registry()
    for name in ("OrdTupleSet", "Ord", "FuncInto", "Omega"):
        info = reg.get(name)
        assert info.assigned_class == LevyClass("Delta", 0)
        assert info.upwards_absolute and info.downwards_absolute
    assert reg.get("FuncInto").arity == 3


def test_builtins_cannot_be_shadowed():
    with pytest.raises(RegistryError):
        Registry([PredicateInfo("Ord", 1, LevyClass.parse("Sigma1"), True)])
    with pytest.raises(RegistryError):
        loads_registry("Ord/2 class=Delta0")
    with pytest.raises(TypeError):
        BUILTINS["Ord"] = None


def test_registry_file_format():
    reg = loads_registry(
        "# comment\n"
        "Zs/0 class=Sigma2 up\n"
        "Dd/2 class=Delta0   # flags implied\n"
        "Pp/1 class=Pi1 down eval=ord\n"
    )
    assert reg.get("Zs") == PredicateInfo("Zs", 0, LevyClass.parse("Sigma2"), True, False)
    assert reg.get("Dd").downwards_absolute
    assert reg.get("Pp").evaluator == "ord"
    assert loads_registry(reg.dumps()) == reg


@pytest.mark.parametrize("line", [
    "Foo/1 class=Sigma1 sideways",
    "Foo class=Sigma1",
    "Foo/1",
    "Foo/1 class=Gamma1",
    "Foo/2 class=Sigma1 eval=ord",
    "Foo/1 class=Sigma1 eval=nope",
])
def test_registry_file_errors(line):
    with pytest.raises(RegistryError):
        loads_registry(line)


def test_delta0_entries_must_be_bi_absolute():
    with pytest.raises(RegistryError):
        PredicateInfo("Foo", 1, LevyClass.parse("Delta0"), True, False)

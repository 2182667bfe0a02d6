import random

import pytest
from hypothesis import given, settings

from levylab.classify import (
    ATOM_RULES, MAX_LEVEL, RuleSet, classify, delta_refine, is_ordinal_bounded_only, replay,
)
from levylab.corpus import get_entry
from levylab.errors import LevelOverflow, UnknownPredicate
from levylab.levy import DELTA0, LevyClass, delta, pi, sigma
from levylab.normalize import desugar_ord, to_nnf
from levylab.parser import parse
from levylab.syntax import Exists, Forall, MemberAtom, Not

from formula_gen import CLASSED, classed_formulas, random_formula, CLASSED_ATOMS


def cls(text, rules="zf", registry=CLASSED):
    return classify(parse(text, registry), rules, registry)[0]


def test_atom_is_delta0():
    assert cls("x in y") == DELTA0


def test_wo_reals_is_sigma2(creg):
    e = get_entry("wo-reals")
    assert classify(e.formula, "zf", creg)[0] == sigma(2)
    assert is_ordinal_bounded_only(e.formula)


def test_forall_exists_is_pi2():
    assert cls("forall x . exists y . x in y") == pi(2)


def test_magidor_is_pi3(creg):
    e = get_entry("magidor-skeleton")
    assert classify(e.formula, "zf", creg)[0] == pi(3)
    assert is_ordinal_bounded_only(e.formula)


@pytest.mark.parametrize("text, expected", [
    ("not (exists x . x in a)", pi(1)),
    ("exists x . forall y . x in y", sigma(2)),
    ("S1(a) and P1(a)", delta(2)),
    ("S1(a) -> P1(a)", pi(1)),
    ("P1(a) -> S1(a)", sigma(1)),
    ("D1(a, b) and S1(a)", sigma(1)),
    ("exists x . D2(x)", sigma(2)),
    ("forall x . D2(x)", pi(2)),
    ("exists x in a . S1(x)", sigma(1)),
    ("forall x in a . S1(x)", sigma(1)),
    ("forallOrd x . exists y . x in y", pi(2)),
    ("existsOrd x . Ord(x)", sigma(1)),
])
def test_class_examples(text, expected):
    assert cls(text) == expected


def test_minimal_rules_do_not_absorb():
    assert cls("forall x in a . S1(x)", "minimal") == pi(2)
    assert cls("exists x in a . P1(x)", "minimal") == sigma(2)
    assert cls("forall x in a . x = x", "minimal") == DELTA0


def test_unknown_predicate_is_reported():
    f = parse("S1(a)", CLASSED)
    with pytest.raises(UnknownPredicate):
        classify(f)


@pytest.mark.parametrize("text, expected", [
    ("(exists a . a in b) and (forall c . c in b)", delta(2)),
    ("x = y", DELTA0),
    ("exists a . a in b", sigma(1)),
])
def test_delta_refine_examples(text, expected):
    assert delta_refine(parse(text)) == expected


def test_delta_refine_finds_joint_derivation():
    # the implication hides a Sigma2 and a Pi2 reading of the same formula
    f = parse("not (S2(a) -> S2(a))", CLASSED)
    assert classify(f, "zf", CLASSED)[0] == delta(3)
    assert delta_refine(f, "zf", CLASSED) <= delta(3)


@pytest.mark.parametrize("text, expected", [
    ("exists x . x = x", False),
    ("forall n in w . n = n", True),
    ("forallOrd x . existsOrd y . x in y", True),
    ("forallOrd x . exists y in x . forall z . z in y", False),
])
def test_ordinal_bounded_only(text, expected):
    assert is_ordinal_bounded_only(parse(text)) == expected


def test_level_cap():
    f = MemberAtom("a", "b")
    for i in range(MAX_LEVEL):
        f = (Exists if i % 2 else Forall)("x", f)
    assert classify(f)[0].level == MAX_LEVEL
    with pytest.raises(LevelOverflow):
        classify(Exists("x", Forall("y", f)))


def test_trace_shape():
    value, trace = classify(parse("forall x . exists y . x in y"))
    assert trace.result == value
    assert [n.rule for n in trace.walk()] == ["forall", "exists", "atom-member"]
    assert all(n.rule in ATOM_RULES for n in trace.walk() if not n.children)
    assert trace.to_json()["class"] == "Pi2"
    assert trace.lines()[0].startswith("Pi2  [forall]")


@settings(max_examples=400, deadline=None)
@given(classed_formulas(depth=5))
def test_duality(f):
    c = classify(f, "zf", CLASSED)[0]
    assert classify(Not(f), "zf", CLASSED)[0] == c.dual()
    assert classify(to_nnf(Not(f)), "zf", CLASSED)[0] == c.dual()


@settings(max_examples=400, deadline=None)
@given(classed_formulas(depth=5))
def test_desugar_invariance(f):
    assert classify(desugar_ord(f), "zf", CLASSED)[0] == classify(f, "zf", CLASSED)[0]


@settings(max_examples=400, deadline=None)
@given(classed_formulas(depth=5))
def test_rule_set_monotonicity(f):
    assert classify(f, RuleSet.ZF, CLASSED)[0] <= classify(f, RuleSet.MINIMAL, CLASSED)[0]


@settings(max_examples=300, deadline=None)
@given(classed_formulas(depth=5))
def test_trace_replay(f):
    for rules in RuleSet:
        value, trace = classify(f, rules, CLASSED)
        assert replay(trace, rules, CLASSED) == value


@settings(max_examples=300, deadline=None)
@given(classed_formulas(depth=4))
def test_delta_refine_is_sound_refinement(f):
    c = classify(f, "zf", CLASSED)[0]
    r = delta_refine(f, "zf", CLASSED)
    assert r <= c


def test_rule_sets_agree_on_delta0():
    rng = random.Random(3)
    for _ in range(300):
        f = random_formula(rng, 4, [a for a in CLASSED_ATOMS if a[0] in ("Ord", "FuncInto")])
        a = classify(f, "zf", CLASSED)[0]
        if a == DELTA0:
            assert classify(f, "minimal", CLASSED)[0] == DELTA0


def test_class_render_stable():
    assert [str(LevyClass.parse(s)) for s in ("Delta0", "Sigma1", "Pi2", "Delta2")] == [
        "Delta0", "Sigma1", "Pi2", "Delta2"]

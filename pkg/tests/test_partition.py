import random

import pytest

from levylab.classify import classify, is_ordinal_bounded_only
from levylab.errors import InvalidSpec
from levylab.hf import encode, ordinal_code, sequence_code, transitive_close
from levylab.levy import DELTA0, pi
from levylab.partition import EDM, Mode, PartitionStatementSpec, make_partition_statement
from levylab.semantics import evaluate
from levylab.syntax import OrdExists, OrdForall, free_vars
from levylab.transfer import check_transfer

NAMES = ["kappa", "lam", "alpha", "mu", "nu", "theta", "k", "l", "n", "m", "two", "omega"]


def random_spec(rng):
    kappa, lam, target, exp_var = rng.sample(NAMES, 4)
    return PartitionStatementSpec(
        kappa=kappa, lam=lam, target=target,
        exponent=rng.choice([None, 1, 2, 3, 7]),
        mode=rng.choice(list(Mode)),
        order_preserving=rng.random() < 0.5,
        exponent_var=exp_var,
    )


def test_edm_instance(creg):
    f = make_partition_statement(EDM, creg)
    assert classify(f, "zf", creg)[0] == pi(2)
    assert is_ordinal_bounded_only(f)
    assert check_transfer(f, EDM.parameters(), creg).eliminable
    assert EDM.arrow() == "kappa -> (omega)^2_two [cardinality]"


def test_random_specs(creg):
    rng = random.Random(99)
    for _ in range(30):
        spec = random_spec(rng)
        f = make_partition_statement(spec, creg)
        assert classify(f, "zf", creg)[0] == pi(2), spec
        assert is_ordinal_bounded_only(f)
        assert free_vars(f) <= {p.variable for p in spec.parameters()}
        assert check_transfer(f, spec.parameters(), creg).eliminable


def _shape(f):
    # forallOrd f . existsOrd A . existsOrd g . phi
    assert isinstance(f, OrdForall) and f.var == "f"
    assert isinstance(f.body, OrdExists) and f.body.var == "A"
    assert isinstance(f.body.body, OrdExists) and f.body.body.var == "g"
    return f.body.body.body


def test_matrix_is_delta0(creg):
    for spec in [EDM, PartitionStatementSpec(mode=Mode.ANTI_HOMOGENEOUS, exponent=None)]:
        phi = _shape(make_partition_statement(spec, creg))
        assert classify(phi, "zf", creg)[0] == DELTA0


def test_anti_homogeneous_asserts_injectivity():
    from levylab.partition import partition_source
    src = partition_source(PartitionStatementSpec(mode=Mode.ANTI_HOMOGENEOUS))
    assert "SameColor(t, u) -> t = u" in src


@pytest.mark.parametrize("kwargs", [
    {"exponent": 0},
    {"exponent": -2},
    {"kappa": "f"},
    {"lam": "not an id"},
    {"target": "exists"},
    {"exponent_var": "kappa"},
    {"mode": "sideways"},
])
def test_invalid_specs(kwargs):
    with pytest.raises((InvalidSpec, ValueError)):
        make_partition_statement(PartitionStatementSpec(**kwargs))


def test_exponent_var_ignored_for_all_finite():
    spec = PartitionStatementSpec(exponent=None, exponent_var="kappa")
    assert "kappa" in free_vars(make_partition_statement(spec))


# --- semantics of the matrix on hand-built codes ----------------------------
# exponent 1 keeps every code small: colored tuples are <e, c> with e, c < 2

O0, O1, O2 = (ordinal_code(i) for i in range(3))


def tuples(*rows):
    return encode(sequence_code([ordinal_code(x) for x in row]) for row in rows)


def matrix_holds(creg, spec, f, a, g, alpha, kappa=O2):
    phi = _shape(make_partition_statement(spec, creg))
    env = {"f": f, "A": a, "g": g, spec.kappa: kappa, spec.lam: O2, spec.target: ordinal_code(alpha),
           spec.exponent_var: O1}
    model = transitive_close(env.values())
    return evaluate(model, phi, env, creg)


HOM = PartitionStatementSpec(exponent=1)
ANTI = PartitionStatementSpec(exponent=1, mode=Mode.ANTI_HOMOGENEOUS)
OP = PartitionStatementSpec(exponent=1, order_preserving=True)

SAME = tuples((0, 0), (1, 0))
SPLIT = tuples((0, 0), (1, 1))
BOTH = tuples((0,), (1,))
ID2 = tuples((0, 0), (1, 1))
SWAP2 = tuples((0, 1), (1, 0))


@pytest.mark.parametrize("spec, f, a, g, alpha, expected", [
    (HOM, SAME, BOTH, ID2, 2, True),            # one color: all of kappa is homogeneous
    (HOM, SPLIT, BOTH, ID2, 2, False),          # two colors on A
    (HOM, SPLIT, tuples((1,)), tuples((1, 0)), 1, True),
    (ANTI, SPLIT, BOTH, ID2, 2, True),          # distinct colors: injective
    (ANTI, SAME, BOTH, ID2, 2, False),
    (HOM, SAME, BOTH, tuples((0, 0), (1, 0)), 2, False),  # g not onto 2
    (HOM, SAME, BOTH, ID2, 1, False),           # g leaves alpha = 1
    (HOM, SAME, BOTH, SWAP2, 2, True),          # any bijection will do
    (OP, SAME, BOTH, SWAP2, 2, False),          # ... unless order must be preserved
    (OP, SAME, BOTH, ID2, 2, True),
    (HOM, tuples((0, 0), (0, 1)), BOTH, SWAP2, 2, True),  # not a coloring: vacuous
])
def test_matrix_semantics(creg, spec, f, a, g, alpha, expected):
    assert matrix_holds(creg, spec, f, a, g, alpha) is expected


def test_matrix_rejects_a_outside_kappa(creg):
    f = tuples((0, 0))
    assert matrix_holds(creg, HOM, f, tuples((0,)), tuples((0, 0)), 1, kappa=O1)
    assert not matrix_holds(creg, HOM, f, BOTH, ID2, 2, kappa=O1)

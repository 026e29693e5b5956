"""Grounder tests: universe construction, safety, instantiation, simplification."""

import random

import pytest

from htsolve import (
    AspVar,
    Atom,
    GroundingOptions,
    GroundProgram,
    IntConst,
    Literal,
    Program,
    Rule,
    SymConst,
    enumerate_equilibrium,
    ground,
    parse_program,
    pretty_print,
)
from htsolve.grounder import check_safety, herbrand_universe, instances


def prog(src: str) -> Program:
    out = parse_program(src)
    assert isinstance(out, Program), out
    return out


# universe ------------------------------------------------------------------


def test_universe_of_plain_program():
    assert herbrand_universe(prog("p(a). q(X) :- p(X).")) == (SymConst("a"),)


def test_universe_with_int_range():
    u = herbrand_universe(prog("p(1)."), GroundingOptions(int_range=(1, 3)))
    assert u == (IntConst(1), IntConst(2), IntConst(3))


def test_universe_empty_program():
    assert herbrand_universe(prog("")) == ()


def test_universe_is_deduplicated_and_string_sorted():
    u = herbrand_universe(prog("p(b,a). q(10). q(2). r(a)."))
    assert u == (IntConst(10), IntConst(2), SymConst("a"), SymConst("b"))


def test_universe_includes_function_terms_and_their_arguments():
    u = herbrand_universe(prog("p(f(a))."))
    assert [str(t) for t in u] == ["a", "f(a)"]


def test_universe_collects_constraint_atom_terms():
    u = herbrand_universe(prog("&in{0..4} =: w. &diff{x-y} <= 2."))
    assert [str(t) for t in u] == ["0", "4", "w", "x", "y"]


def test_int_range_must_be_nonempty():
    with pytest.raises(ValueError, match="empty int_range"):
        GroundingOptions(int_range=(3, 1))


# safety --------------------------------------------------------------------


def test_safe_rule_has_no_diagnostics():
    assert check_safety(prog("q(X) :- p(X).")) == []


def test_negated_body_does_not_bind():
    (d,) = check_safety(prog("q(X) :- not p(X)."))
    assert d.rule_index == 0
    assert d.message == "unsafe variables: X"


def test_theory_atoms_do_not_bind():
    (d,) = check_safety(prog("a :- &sum{1*v(X)} <= 3."))
    assert d.message == "unsafe variables: X"
    # ...but a positive plain atom alongside binds the variable
    assert check_safety(prog("&sum{1*v(X)} <= 3 :- p(X).")) == []


def test_head_only_variable_is_unsafe_and_names_sorted():
    (d,) = check_safety(prog("q(Y,X)."))
    assert d.message == "unsafe variables: X, Y"


def test_safety_indexes_each_offending_rule():
    out = check_safety(prog("p(a). q(X) :- not p(X). r(Z)."))
    assert [(d.rule_index, d.message) for d in out] == [
        (1, "unsafe variables: X"),
        (2, "unsafe variables: Z"),
    ]


# instantiation -------------------------------------------------------------


def test_instances_cross_product():
    r = prog("q(X) :- p(X).").rules[0]
    out = instances(r, (SymConst("a"), SymConst("b")))
    assert [str(i) for i in out] == ["q(a) :- p(a).", "q(b) :- p(b)."]


def test_instance_count_is_universe_size_to_the_variable_count():
    r = prog("s(X,Y,Z) :- p(X), p(Y), p(Z).").rules[0]
    for size in (1, 2, 3):
        universe = tuple(SymConst(f"c{i}") for i in range(size))
        assert len(instances(r, universe)) == size**3


def test_ground_rule_passes_through():
    r = prog("p(a).").rules[0]
    assert instances(r, ()) == [r]


# ground --------------------------------------------------------------------


def test_ground_plain_example():
    gp = ground(prog("p(a). p(b). q(X) :- p(X)."))
    assert [str(r) for r in gp.rules] == [
        "p(a).",
        "p(b).",
        "q(a) :- p(a).",
        "q(b) :- p(b).",
    ]
    assert gp.universe == (SymConst("a"), SymConst("b"))


def test_ground_rejects_unsafe_program():
    with pytest.raises(ValueError, match="unsafe program: rule 0: unsafe variables: X"):
        ground(prog("q(X) :- not p(X)."))


def test_ground_empty_universe_yields_no_instances():
    gp = ground(prog("q(X) :- p(X)."), simplify=False)
    assert gp.rules == () and gp.universe == ()


def test_ground_assignment_rule_over_facts():
    gp = ground(prog("part(a). cap(4). &in{0..C} =: w(X) :- part(X), cap(C)."))
    assert set(str(r) for r in gp.rules) == {
        "part(a).",
        "cap(4).",
        "&in{0..4} =: w(a) :- part(a), cap(4).",
    }


def test_simplification_drops_underivable_rules_to_fixpoint():
    src = "a. p :- q. q :- r."
    kept = ground(prog(src))
    assert [str(r) for r in kept.rules] == ["a."]
    raw = ground(prog(src), simplify=False)
    assert len(raw.rules) == 3


def test_simplification_keeps_negated_and_theory_bodies():
    gp = ground(prog("a :- not q. b :- &diff{x-y} <= 0."))
    assert len(gp.rules) == 2


def test_ground_output_is_deduplicated():
    gp = ground(prog("p(a). p(a). q(X) :- p(X)."), simplify=False)
    assert [str(r) for r in gp.rules] == ["p(a).", "q(a) :- p(a)."]


def test_ground_program_contains_no_variables():
    gp = ground(prog("p(a). p(b). s(X,Y) :- p(X), p(Y), not q(X)."), simplify=False)
    from htsolve.core import rule_variables

    assert all(not rule_variables(r) for r in gp.rules)


def test_ground_program_str_is_pretty_print():
    gp = ground(prog("p(a). q(X) :- p(X)."))
    assert str(gp) == pretty_print(gp)


# simplification preserves equilibrium models ---------------------------------

_RULE_MAKERS = [
    lambda: "p(a).",
    lambda: "p(b).",
    lambda: "q(b).",
    lambda: "r.",
    lambda: "q(X) :- p(X).",
    lambda: "s(X) :- p(X), not q(X).",
    lambda: "p(X) :- q(X), not s(X).",
    lambda: "r :- q(X).",
    lambda: ":- s(X), q(X).",
    lambda: "t :- r, not t2.",
    lambda: "t2 :- not t.",
]


def test_simplification_preserves_equilibrium_models():
    rng = random.Random(20240817)
    for _ in range(120):
        k = rng.randint(1, 5)
        src = "\n".join(rng.choice(_RULE_MAKERS)() for _ in range(k))
        p = prog(src)
        if check_safety(p):
            continue
        simplified = ground(p, simplify=True)
        raw = ground(p, simplify=False)
        for mode in ("casp", "founded"):
            assert enumerate_equilibrium(simplified, mode, (0, 0)) == enumerate_equilibrium(
                raw, mode, (0, 0)
            ), f"mode={mode} program:\n{src}"


def test_ground_program_defaults():
    gp = GroundProgram()
    assert gp.rules == () and gp.universe == ()
    assert GroundProgram(rules=[Rule(Atom("a"))]).rules == (Rule(Atom("a")),)

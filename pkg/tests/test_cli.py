"""Command-line frontend tests: output goldens and exit codes."""

import pytest

from htsolve import pretty_print, run
from htsolve.cli import (
    EXIT_INPUT,
    EXIT_OK,
    EXIT_SAT,
    EXIT_UNSAT,
    EXIT_USAGE,
    EXIT_VIOLATIONS,
)
from htsolve.configkit import EMPTY_INSTANCE, load_model, translate
from htsolve.parser import parse_program

BIKE_MODEL = """\
ptype(bike). root(bike).
ptype(wheel).
subpart(bike,wheel,2,2).
attrdom(wheel,diam,16,29).
"""

GOOD_INSTANCE = """\
inst(b1,bike). inst(w1,wheel). inst(w2,wheel).
parentOf(w1,b1). parentOf(w2,b1).
val(w1,diam,26). val(w2,diam,26).
"""


@pytest.fixture
def lp(tmp_path):
    """Write source text to a file and return its path as a string."""

    def write(text, name="input.lp"):
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return str(path)

    return write


# solve ---------------------------------------------------------------------------


def test_solve_golden(lp, capsys):
    code = run(["solve", lp("a :- not b.")])
    assert code == EXIT_SAT
    assert capsys.readouterr().out == "Answer: 1\na\nSATISFIABLE\n"


def test_solve_multiple_answers_sorted(lp, capsys):
    code = run(["solve", lp("a :- not b. b :- not a.")])
    assert code == EXIT_SAT
    assert capsys.readouterr().out == (
        "Answer: 1\na\nAnswer: 2\nb\nSATISFIABLE\n"
    )


def test_solve_models_cap(lp, capsys):
    code = run(["solve", lp("a :- not b. b :- not a."), "--models", "1"])
    assert code == EXIT_SAT
    assert capsys.readouterr().out == "Answer: 1\na\nSATISFIABLE\n"


def test_solve_unsatisfiable(lp, capsys):
    code = run(["solve", lp("a. :- a.")])
    assert code == EXIT_UNSAT
    assert capsys.readouterr().out == "UNSATISFIABLE\n"


def test_solve_prints_valuation_line(lp, capsys):
    code = run(["solve", lp("&sum{1*x} = 1."), "--domain", "0..2"])
    assert code == EXIT_SAT
    assert capsys.readouterr().out == "Answer: 1\n\nval x=1\nSATISFIABLE\n"


def test_solve_founded_semantics(lp, capsys):
    code = run(
        ["solve", lp("&in{2..2} =: x."), "--semantics", "founded", "--domain", "0..3"]
    )
    assert code == EXIT_SAT
    assert capsys.readouterr().out == "Answer: 1\n\nval x=2\nSATISFIABLE\n"


def test_solve_search_engine_agrees(lp, capsys):
    path = lp("a :- &diff{x-y} <= 0. b :- not a.")
    run(["solve", path, "--domain", "0..1"])
    oracle_out = capsys.readouterr().out
    code = run(["solve", path, "--domain", "0..1", "--engine", "search"])
    assert code == EXIT_SAT
    assert capsys.readouterr().out == oracle_out


def test_solve_requires_domain_for_variables(lp, capsys):
    code = run(["solve", lp("&sum{1*x;1*y} <= 2.")])
    assert code == EXIT_USAGE
    err = capsys.readouterr().err
    assert err == (
        "htsolve: usage error: --domain is required for programs with "
        "integer variables: x, y\n"
    )


def test_solve_founded_with_search_engine_is_rejected(lp, capsys):
    code = run(
        ["solve", lp("a."), "--semantics", "founded", "--engine", "search"]
    )
    assert code == EXIT_USAGE
    assert (
        "usage error: --engine search supports --semantics casp only"
        in capsys.readouterr().err
    )


def test_solve_missing_file(tmp_path, capsys):
    missing = str(tmp_path / "nope.lp")
    code = run(["solve", missing])
    assert code == EXIT_INPUT
    assert capsys.readouterr().err.startswith(f"htsolve: cannot read {missing}:")


def test_solve_parse_error_reports_position(lp, capsys):
    path = lp("a :- not not b.")
    code = run(["solve", path])
    assert code == EXIT_INPUT
    assert capsys.readouterr().err == (
        f"{path}:1:10: double negation is not supported\n"
    )


def test_solve_unsafe_program(lp, capsys):
    path = lp("p(X).")
    code = run(["solve", path])
    assert code == EXIT_INPUT
    assert capsys.readouterr().err == (
        f"htsolve: {path}: unsafe program: rule 0: unsafe variables: X\n"
    )


def test_solve_domain_argument_validation(lp, capsys):
    path = lp("a.")
    assert run(["solve", path, "--domain", "5..1"]) == EXIT_USAGE
    assert "empty domain '5..1'" in capsys.readouterr().err
    assert run(["solve", path, "--domain", "abc"]) == EXIT_USAGE
    assert "expected LO..HI with integer bounds, got 'abc'" in capsys.readouterr().err


def test_solve_negative_models_cap(lp, capsys):
    assert run(["solve", lp("a."), "--models", "-1"]) == EXIT_USAGE
    assert "usage error: --models must be nonnegative" in capsys.readouterr().err


# ground --------------------------------------------------------------------------


def test_ground_summary(lp, capsys):
    code = run(["ground", lp("p(a). q(X) :- p(X).")])
    assert code == EXIT_OK
    assert capsys.readouterr().out == "rules: 2\nuniverse: 1\n"


def test_ground_text(lp, capsys):
    code = run(["ground", lp("p(a). q(X) :- p(X)."), "--text"])
    assert code == EXIT_OK
    assert capsys.readouterr().out == "p(a).\nq(a) :- p(a).\n"


def test_ground_empty_program(lp, capsys):
    assert run(["ground", lp("")]) == EXIT_OK
    assert capsys.readouterr().out == "rules: 0\nuniverse: 0\n"
    assert run(["ground", lp(""), "--text"]) == EXIT_OK
    assert capsys.readouterr().out == ""


# check-config --------------------------------------------------------------------


def test_check_config_ok(lp, capsys):
    code = run(
        [
            "check-config",
            "--model", lp(BIKE_MODEL, "model.lp"),
            "--instance", lp(GOOD_INSTANCE, "inst.lp"),
        ]
    )
    assert code == EXIT_OK
    assert capsys.readouterr().out == "OK\n"


def test_check_config_reports_violations(lp, capsys):
    partial = "inst(b1,bike). inst(w1,wheel). parentOf(w1,b1). val(w1,diam,26)."
    code = run(
        [
            "check-config",
            "--model", lp(BIKE_MODEL, "model.lp"),
            "--instance", lp(partial, "inst.lp"),
        ]
    )
    assert code == EXIT_VIOLATIONS
    assert capsys.readouterr().out == (
        "multiplicity [b1, wheel]: b1 has 1 parts of type wheel, expected 2..2\n"
    )


def test_check_config_bad_model_file(lp, capsys):
    path = lp("ptype(bike).", "model.lp")
    code = run(["check-config", "--model", path, "--instance", path])
    assert code == EXIT_INPUT
    assert capsys.readouterr().err == f"{path}: missing root declaration\n"


def test_check_config_model_diag_with_rule_index(lp, capsys):
    path = lp("ptype(a). ptype(b). root(a). subpart(a,b,3,1).", "model.lp")
    inst = lp("inst(x,a).", "inst.lp")
    code = run(["check-config", "--model", path, "--instance", inst])
    assert code == EXIT_INPUT
    assert capsys.readouterr().err == (
        f"{path}: rule 3: subpart(a,b): min 3 exceeds max 1\n"
    )


def test_check_config_bad_instance_file(lp, capsys):
    model = lp(BIKE_MODEL, "model.lp")
    inst = lp("foo(a).", "inst.lp")
    code = run(["check-config", "--model", model, "--instance", inst])
    assert code == EXIT_INPUT
    assert capsys.readouterr().err == f"{inst}: rule 0: unknown instance fact 'foo/1'\n"


# translate-config ----------------------------------------------------------------


def test_translate_config_writes_program(lp, tmp_path, capsys):
    model_path = lp(BIKE_MODEL, "model.lp")
    out = tmp_path / "compiled.lp"
    code = run(
        [
            "translate-config",
            "--model", model_path,
            "--semantics", "founded",
            "-o", str(out),
        ]
    )
    assert code == EXIT_OK
    assert capsys.readouterr().out == ""
    expected = pretty_print(
        translate(load_model(parse_program(BIKE_MODEL)), EMPTY_INSTANCE, "founded")
    )
    first = out.read_text(encoding="utf-8")
    assert first == expected + "\n"
    # a second run produces byte-identical output
    assert run(
        ["translate-config", "--model", model_path, "--semantics", "founded",
         "-o", str(out)]
    ) == EXIT_OK
    assert out.read_text(encoding="utf-8") == first


def test_translate_config_output_parses_and_solves(lp, tmp_path, capsys):
    model_path = lp(BIKE_MODEL.replace("16,29", "16,17"), "model.lp")
    out = tmp_path / "compiled.lp"
    assert run(
        ["translate-config", "--model", model_path, "--semantics", "casp",
         "-o", str(out)]
    ) == EXIT_OK
    capsys.readouterr()
    code = run(["solve", str(out), "--domain", "16..17"])
    assert code == EXIT_SAT
    assert capsys.readouterr().out.count("Answer: ") == 4


def test_translate_config_with_partial_instance(lp, tmp_path, capsys):
    model_path = lp(BIKE_MODEL, "model.lp")
    inst_path = lp("inst(b1,bike).", "partial.lp")
    out = tmp_path / "compiled.lp"
    code = run(
        ["translate-config", "--model", model_path, "--instance", inst_path,
         "--semantics", "founded", "-o", str(out)]
    )
    assert code == EXIT_OK
    assert ":- out(bike1)." not in out.read_text(encoding="utf-8")


def test_translate_config_rejects_bad_partial(lp, tmp_path, capsys):
    model_path = lp(BIKE_MODEL, "model.lp")
    inst_path = lp("inst(x1,saddle).", "partial.lp")
    code = run(
        ["translate-config", "--model", model_path, "--instance", inst_path,
         "--semantics", "founded", "-o", str(tmp_path / "c.lp")]
    )
    assert code == EXIT_INPUT
    assert capsys.readouterr().err.startswith("htsolve: partial instance rejected:")


def test_translate_config_unwritable_output(lp, tmp_path, capsys):
    code = run(
        ["translate-config", "--model", lp(BIKE_MODEL, "model.lp"),
         "--semantics", "casp", "-o", str(tmp_path)]
    )
    assert code == EXIT_INPUT
    assert capsys.readouterr().err.startswith(f"htsolve: cannot write {tmp_path}:")


# argument plumbing ---------------------------------------------------------------


def test_usage_errors(capsys):
    assert run([]) == EXIT_USAGE
    assert run(["frobnicate"]) == EXIT_USAGE
    assert run(["translate-config", "--model", "m.lp", "-o", "x.lp"]) == EXIT_USAGE
    err = capsys.readouterr().err
    assert "usage error:" in err


def test_help_exits_zero(capsys):
    assert run(["--help"]) == 0
    assert capsys.readouterr().out.startswith("usage:")

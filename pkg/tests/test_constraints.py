from __future__ import annotations

import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cipscan.constraints import (
    CONSTRAINT_TYPES,
    AssignmentForm,
    BooleanForm,
    Comparison,
    ConstraintFileError,
    ConstraintParseError,
    Membership,
    Operand,
    attribute_key,
    classify,
    load_constraints,
    parse_constraint_expr,
    render_expr,
)


def test_comparison_with_constant():
    expr = parse_constraint_expr("Content-Length >= 0")
    assert expr == Comparison("Content-Length", ">=", Operand("0", "number"))
    assert parse_constraint_expr("Content-Length ≥ 0") == expr


def test_membership():
    expr = parse_constraint_expr("onMissingExtensionPoint in {fail, warn, ignore}")
    assert expr == Membership("onMissingExtensionPoint", ("fail", "warn", "ignore"))
    assert parse_constraint_expr("onMissingExtensionPoint ∈ {fail, warn, ignore}") == expr


def test_assignment_form():
    expr = parse_constraint_expr("switch date is 1582-10-15")
    assert expr == AssignmentForm("switch date", Operand("1582-10-15", "date"))


def test_boolean_forms():
    assert parse_constraint_expr("file available == false") == BooleanForm("file available", False)
    assert parse_constraint_expr("not enabled") == BooleanForm("enabled", False)
    assert parse_constraint_expr("!enabled") == BooleanForm("enabled", False)
    assert parse_constraint_expr("enabled") == BooleanForm("enabled", True)
    assert parse_constraint_expr("enabled is false") == BooleanForm("enabled", False)


def test_null_forms():
    assert parse_constraint_expr("entity is not null") == Comparison("entity", "!=", Operand("null", "null"))
    assert parse_constraint_expr("entity == null").op == "=="
    assert parse_constraint_expr("entity == not-null").operand.text == "not-null"


def test_attribute_whitespace_collapsed_and_case_insensitive_key():
    expr = parse_constraint_expr("  max    frequency  >  min frequency ")
    assert expr.attribute == "max frequency"
    assert attribute_key("Max  Frequency") == attribute_key("max frequency")


@pytest.mark.parametrize("text", ["", "   ", "> 5", "x >", "a in {only}", "12 + + 3"])
def test_unparseable(text):
    with pytest.raises(ConstraintParseError, match="unrecognized constraint form"):
        parse_constraint_expr(text)


@pytest.mark.parametrize(
    "expr, expected",
    [
        (Comparison("max frequency", ">", Operand("min frequency")), "value-comparison"),
        (BooleanForm("file available", False), "dual-value-comparison"),
        (Membership("x", ("fail", "warn", "ignore")), "categorical-value"),
        (AssignmentForm("switch date", Operand("1582-10-15", "date")), "concrete-value"),
        (Comparison("x", "==", Operand("null", "null")), "dual-value-comparison"),
        (Comparison("x", "==", Operand("5", "number")), "value-comparison"),
    ],
)
def test_classify(expr, expected):
    assert classify(expr) == expected


# ---------------------------------------------------------------------------
# property tests

_attr = st.from_regex(r"[a-z][a-zA-Z0-9_]{0,8}( [a-z][a-z0-9]{0,6}){0,2}", fullmatch=True).filter(
    lambda s: s.split()[0] not in ("not", "in", "is") and all(w not in ("in", "is", "true", "false", "null", "not") for w in s.split())
)
_number = st.integers(-1000, 1000).map(str)
_two_valued = st.sampled_from(["true", "false", "null", "not-null"])
_ops = st.sampled_from([">", ">=", "<", "<=", "==", "!=", "=", "≥", "≤", "≠"])


def _expressions():
    comparison = st.builds(lambda a, o, v: f"{a} {o} {v}", _attr, _ops, st.one_of(_number, _attr, _two_valued))
    membership = st.builds(
        lambda a, labels: f"{a} in {{{', '.join(labels)}}}",
        _attr,
        st.lists(st.from_regex(r"[a-z]{1,6}", fullmatch=True), min_size=2, max_size=5, unique=True),
    )
    is_form = st.builds(lambda a, v: f"{a} is {v}", _attr, st.one_of(_number, _two_valued))
    boolean = st.builds(lambda neg, a: ("not " if neg else "") + a, st.booleans(), _attr)
    return st.one_of(comparison, membership, is_form, boolean)


@settings(max_examples=1000, deadline=None)
@given(_expressions())
def test_classification_is_total_and_deterministic(text):
    expr = parse_constraint_expr(text)
    kind = classify(expr)
    assert kind in CONSTRAINT_TYPES
    assert classify(parse_constraint_expr(text)) == kind
    assert classify(parse_constraint_expr(render_expr(expr))) == kind


@settings(max_examples=1000, deadline=None)
@given(_attr, st.sampled_from(["==", "!=", "="]), st.one_of(_number, _attr, _two_valued))
def test_dual_value_iff_equality_over_two_values(attr, op, value):
    expr = parse_constraint_expr(f"{attr} {op} {value}")
    two_valued = value in ("true", "false", "null", "not-null")
    assert (classify(expr) == "dual-value-comparison") == two_valued
    if two_valued:
        # replacing equality by an ordering operator never stays dual-valued
        try:
            reparsed = parse_constraint_expr(f"{attr} > {value}")
        except ConstraintParseError:
            return
        assert classify(reparsed) == "value-comparison"


# ---------------------------------------------------------------------------
# loading

SWARM = ("While SWARM will allow the maximum frequency to be set to any positive value greater than the "
         "minimum frequency, this value will adjust automatically if it is greater than the Nyquist frequency")


def test_load_json_and_csv(tmp_path):
    rows = [
        {"id": "s1", "system": "swarm", "description": SWARM, "simplified": "max frequency > 0", "scenario": "set",
         "seeds": [{"file": "S.java", "line": 2, "kind": "field"}], "manual_pattern": "binary comparison"},
        {"id": "s2", "system": "swarm", "description": "", "simplified": "", "scenario": "", "seeds": []},
    ]
    (tmp_path / "c.json").write_text(json.dumps(rows))
    diags: list[str] = []
    recs = load_constraints(tmp_path / "c.json", diagnostics=diags)
    assert [r.id for r in recs] == ["s1"]
    assert recs[0].expr == Comparison("max frequency", ">", Operand("0", "number"))
    assert recs[0].seeds[0].line == 2
    assert len(diags) == 1 and "s2" in diags[0]

    (tmp_path / "c.csv").write_text(
        "id,system,description,simplified,scenario,seeds,manual_pattern\n"
        "a,ant,,\"onMissingExtensionPoint in {fail, warn, ignore}\",,Target.java:3:field;Target.java:9:literal:fail,\n"
        "b,ant,,???,,,\n"
    )
    recs = load_constraints(tmp_path / "c.csv")
    assert [r.id for r in recs] == ["a"]
    assert [s.kind for s in recs[0].seeds] == ["field", "literal"]
    assert recs[0].seeds[1].symbol == "fail"
    assert recs[0].constraint_type == "categorical-value"


def test_empty_file(tmp_path):
    (tmp_path / "e.json").write_text("")
    assert load_constraints(tmp_path / "e.json") == []


def test_duplicate_id_is_fatal(tmp_path):
    row = {"id": "d", "simplified": "x > 1"}
    (tmp_path / "d.json").write_text(json.dumps({"constraints": [row, row]}))
    with pytest.raises(ConstraintFileError, match="duplicate"):
        load_constraints(tmp_path / "d.json")


def test_missing_file_is_fatal(tmp_path):
    with pytest.raises(ConstraintFileError):
        load_constraints(tmp_path / "none.json")

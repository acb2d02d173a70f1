from __future__ import annotations

import pytest

from cipscan.catalog import (
    COMPARISON_OPS,
    builtin_catalog,
    get_pattern,
    pattern_names,
    patterns_with_arity,
)

ALL_NAMES = [
    "boolean property", "binary comparison", "constant argument", "null check", "assign constant",
    "binary flag check", "if chain", "equals or chain", "properties file", "polymorphic method",
    "null-empty check", "null-zero check", "return constant", "switch-len char", "self comparison",
    "str starts", "null-boolean check", "setter", "constructor assign", "delta check", "enum valueOf",
    "iterate-and-check literal", "mod op", "str ends", "switch case", "override value set",
    "cast self-comparison", "index loop find", "assign class call", "if-return chain",
]


def test_thirty_patterns_in_catalog_order():
    assert pattern_names() == ALL_NAMES
    assert len(builtin_catalog()) == 30


def test_thirteen_detectors_with_arity_equal_to_parts():
    detectors = [p for p in builtin_catalog() if p.has_detector]
    assert len(detectors) == 13
    for p in detectors:
        assert p.detector_arity == len(p.parts)
    assert get_pattern("properties file").detector_arity == 0
    assert get_pattern("polymorphic method").detector_arity == 0


def test_binary_comparison_and_null_check_parts():
    bc = get_pattern("binary comparison")
    assert [p.role for p in bc.parts] == ["variable", "operator", "variable"]
    assert set(bc.parts[1].ops) == set(COMPARISON_OPS) == {">", ">=", "<", "<=", "==", "!="}
    assert [p.role for p in get_pattern("null check").parts] == ["variable"]


@pytest.mark.parametrize(
    "k, expected",
    [
        (3, {"binary comparison"}),
        (2, {"constant argument", "assign constant", "binary flag check"}),
        (1, {"boolean property", "null check", "if chain", "equals or chain", "switch-len char",
             "self comparison", "return constant", "null-zero check", "null-empty check"}),
    ],
)
def test_patterns_with_arity(k, expected):
    assert {p.name for p in patterns_with_arity(k)} == expected


def test_arity_out_of_range():
    with pytest.raises(ValueError):
        patterns_with_arity(0)
    with pytest.raises(ValueError):
        patterns_with_arity(4)


def test_compound_statement_types_and_part_lengths():
    compound = {p.name for p in builtin_catalog() if p.statement_type.compound}
    assert compound == {"delta check", "cast self-comparison", "index loop find"}
    for p in builtin_catalog():
        assert 1 <= len(p.parts) <= 3


def test_json_shape_and_unknown_pattern():
    js = get_pattern("delta check").to_json()
    assert js["statement_type"] == {"compound": ["arithmetic-expression", "boolean-expression"]}
    assert get_pattern("binary comparison").to_json()["parts"][1] == {"operator-in-set": list(COMPARISON_OPS)}
    with pytest.raises(KeyError):
        get_pattern("nope")

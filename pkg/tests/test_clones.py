from __future__ import annotations

from itertools import permutations

import pytest

from cipscan.clones import classify_clone, clone_summary, clone_type, group, normalized, tokenize
from cipscan.trace import TraceLink, assemble_trace, resolve_data_definitions


def _link(cid, file, line, pattern, text):
    return TraceLink(cid, file, line, pattern, (), text, (), "manual")


def _fixture_links(a, cid, patterns):
    return [assemble_trace(cid, i, resolve_data_definitions(i, a), "manual", a)
            for i in a.instances if i.pattern in patterns]


def test_tokenizer_drops_comments_and_whitespace():
    assert [t for _, t in tokenize("a  >/* c */ b // x\n")] == ["a", ">", "b"]
    assert normalized("a > a") == ["$id0", ">", "$id0"]


@pytest.mark.parametrize(
    "a, b, pa, pb, expected",
    [
        ("factors.add(new AgeFactor(patient, 45));", "factors.add(new AgeFactor(patient,  45)); // dup",
         "constant argument", "constant argument", "type-1"),
        ("if(a > b)", "if(x > y)", "binary comparison", "binary comparison", "type-2"),
        ("d == Double.POSITIVE_INFINITY", "Double.isInfinite(d)", "binary comparison", "boolean property", "type-4"),
        ("a > a", "x > y", "binary comparison", "binary comparison", "not-clone"),
        ("limit > 45", "limit > 30", "binary comparison", "binary comparison", "type-2"),
    ],
)
def test_clone_types(a, b, pa, pb, expected):
    assert clone_type(a, b, pa, pb) == expected
    assert clone_type(b, a, pb, pa) == expected


def test_classify_clone_is_symmetric():
    x = _link("c", "A.java", 3, "binary comparison", "a > b")
    y = _link("c", "B.java", 9, "binary comparison", "x > y")
    assert classify_clone(x, y) == classify_clone(y, x)


def test_group_consistency():
    single = _link("s", "A.java", 1, "null check", "a != null")
    groups = group([single])
    assert [(g.constraint_id, g.consistency) for g in groups] == [("s", "singleton")]
    assert clone_summary(groups)["anchor"] == {"type-1": 0, "type-2": 0, "type-4": 0, "not-clone": 0}


def test_three_identical_statements_give_two_anchor_pairs():
    links = [_link("c", f"F{i}.java", 4, "null check", "x != null") for i in range(3)]
    summary = clone_summary(group(links))
    assert summary["anchor"]["type-1"] == 2
    assert summary["all_pairs"]["type-1"] == 3


def test_listing1_duplicate_is_consistent_type1(analysis_of):
    a = analysis_of("listing1", "heart")
    links = [l for l in _fixture_links(a, "age45", {"binary comparison"}) if l.text == "patient.getAge() > age"]
    (g,) = group(links)
    assert g.consistency == "consistent"
    assert [c.type for c in g.all_pairs()] == ["type-1"]


def test_httpc_mixed_group_is_inconsistent(analysis_of):
    a = analysis_of("httpc")
    links = _fixture_links(a, "repeatable", {"boolean property", "null-boolean check"})
    assert len(links) == 7
    (g,) = group(links)
    assert g.consistency == "inconsistent"
    summary = clone_summary([g])
    assert summary["anchor"]["type-4"] >= 1
    assert summary["consistency"]["inconsistent"] == 1


def test_group_sorts_and_is_order_independent():
    links = [_link("b", "Z.java", 2, "null check", "z != null"), _link("a", "A.java", 1, "null check", "a != null"),
             _link("b", "A.java", 7, "null check", "q != null")]
    expected = [g.to_json() for g in group(links)]
    assert [g["constraint_id"] for g in expected] == ["a", "b"]
    for perm in permutations(links):
        assert [g.to_json() for g in group(perm)] == expected


@pytest.mark.parametrize("names", [("listing1", "heart"), ("httpc",), ("jedit_buffer",), ("listing2",), ("swarm",)])
def test_consistent_groups_have_no_type4_pairs(analysis_of, names):
    # one group per (pattern, statement text): every multi-link group in the fixture tree
    a = analysis_of(*names)
    links = [assemble_trace(f"{i.pattern}|{i.statement_text}", i, resolve_data_definitions(i, a), "manual", a)
             for i in a.instances]
    for g in group(links):
        if g.consistency == "consistent":
            assert all(c.type in ("type-1", "type-2") for c in g.all_pairs())

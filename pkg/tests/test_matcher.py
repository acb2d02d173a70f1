from __future__ import annotations

import pytest

from cipscan.catalog import builtin_catalog, get_pattern
from cipscan.frontend import build_symbols, parse_corpus
from cipscan.matcher import (
    PRECEDENCE,
    brute_force_match,
    match_all,
    match_properties_file,
    match_statement,
    property_value,
)
from oracles import CATALOG_EXPECTED, FIXTURES, PROPERTIES_EXPECTED


def _corpus(tmp_path, body: str, name: str = "T.java"):
    (tmp_path / name).write_text(body)
    corpus = parse_corpus([tmp_path])
    return corpus, build_symbols(corpus)


def _node(corpus, text: str, kind: str | None = None):
    for n in corpus.nodes():
        if n.text == text and (kind is None or n.kind == kind):
            return n
    raise AssertionError(f"no node {text!r}")


@pytest.mark.parametrize("stem", sorted(CATALOG_EXPECTED))
def test_catalog_instance_matches_only_its_pattern(stem):
    corpus = parse_corpus([FIXTURES / "catalog" / f"{stem}.java"])
    assert corpus.parse_failures == []
    found = match_all(corpus, None, build_symbols(corpus))
    pattern, line, parts = CATALOG_EXPECTED[stem]
    assert [(i.pattern, i.location.line, i.parts) for i in found] == [(pattern, line, parts)]


def test_properties_fixture():
    path = FIXTURES / "catalog" / "backups.properties"
    found = match_properties_file(path, path.read_bytes())
    assert [(i.pattern, i.location.line, i.parts) for i in found] == [PROPERTIES_EXPECTED]


def test_properties_lines():
    found = match_properties_file("x.properties", "# comment\n! also\n\nbackups=1\na=b=c\n")
    assert [i.parts for i in found] == [["backups"], ["a"]]
    assert property_value(found[1]) == "b=c"
    assert match_properties_file("bad.properties", b"k=\xff\xfe") == []


def test_precedence_covers_catalog():
    assert sorted(PRECEDENCE) == sorted(p.name for p in builtin_catalog())


def test_match_statement_examples(tmp_path):
    corpus, symbols = _corpus(
        tmp_path,
        "class T {\n"
        "  boolean isModified; Settings settings;\n"
        "  void f(String name, double d) {\n"
        "    if (isModified) { }\n"
        "    settings.setShowVisibilities(false);\n"
        "    if (name == null) { }\n"
        "    boolean nan = d != d;\n"
        "  }\n"
        "}\n",
    )
    assert [b.text for b in match_statement(_node(corpus, "isModified", "name-ref"), "boolean property", symbols)] == ["isModified"]
    call = _node(corpus, "settings.setShowVisibilities(false)")
    assert [b.text for b in match_statement(call, get_pattern("constant argument"), symbols)] == ["setShowVisibilities", "false"]
    null_cmp = _node(corpus, "name == null")
    assert match_statement(null_cmp, "binary comparison", symbols) is None
    assert [b.text for b in match_statement(null_cmp, "null check", symbols)] == ["name"]
    assert [b.text for b in match_statement(_node(corpus, "d != d"), "self comparison", symbols)] == ["d"]


def test_binding_length_and_span_invariants(analysis_of):
    for names in (("listing1",), ("listing2",), ("httpc",), ("catalog",)):
        a = analysis_of(*names)
        for inst in a.instances:
            assert len(inst.binding) == len(get_pattern(inst.pattern).parts)
            for part in inst.binding:
                if part.node is not None and inst.pattern != "delta check":
                    assert inst.node.contains(part.node) or part.node is inst.node


def test_listing1_instances(analysis_of):
    got = {(i.pattern, i.location.line, tuple(i.parts)) for i in analysis_of("listing1").instances}
    assert ("binary comparison", 53, ("patient.getAge()", ">", "age")) in got
    assert ("constant argument", 27, ("AgeFactor", "45")) in got


def test_empty_corpus():
    corpus = parse_corpus([])
    assert match_all(corpus, None, build_symbols(corpus)) == []


def test_null_empty_check_suppresses_inner_null_check(tmp_path):
    corpus, symbols = _corpus(
        tmp_path, 'class T { boolean f(String string) { return string == null || string.equals(""); } }'
    )
    found = match_all(corpus, None, symbols)
    assert [i.pattern for i in found] == ["null-empty check"]


def test_output_sorted_and_filterable(analysis_of):
    a = analysis_of("listing1")
    keys = [(i.location.file_id, i.location.line, i.pattern) for i in a.instances]
    assert keys == sorted(keys)
    only = match_all(a.corpus, ["binary comparison"], a.symbols)
    assert only == [i for i in a.instances if i.pattern == "binary comparison"]


@pytest.mark.parametrize("names", [("listing1", "heart"), ("listing2",), ("jedit_buffer",), ("httpc",), ("swarm",),
                                   ("catalog",), ("recursion",), ("guava_iter",), ("hierarchy",)])
def test_match_all_equals_brute_force(analysis_of, names):
    a = analysis_of(*names)
    assert match_all(a.corpus, None, a.symbols) == brute_force_match(a.corpus, a.symbols)


@pytest.mark.parametrize("names", [("listing1", "heart"), ("listing2",), ("httpc",), ("catalog",)])
def test_every_raw_match_is_reported_or_dominated(analysis_of, names):
    # independent check through the public per-statement API
    a = analysis_of(*names)
    reported = {(i.location, i.pattern) for i in a.instances}
    anchors = {(i.location, i.node.type): i for i in a.instances}
    for node in a.corpus.nodes():
        for p in builtin_catalog():
            binding = match_statement(node, p, a.symbols)
            if binding is None:
                continue
            if (node.location, p.name) in reported:
                continue
            winner = anchors.get((node.location, node.type))
            dominated = winner is not None and PRECEDENCE.index(winner.pattern) < PRECEDENCE.index(p.name)
            covered = any(s.covers(node) for i in a.instances for s in i.covered if i.node is not node)
            assert dominated or covered, (p.name, node.text)
    for inst in a.instances:
        assert match_statement(inst.node, inst.pattern, a.symbols) == inst.binding

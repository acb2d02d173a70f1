from __future__ import annotations

import pytest

from cipscan.frontend import KINDS, CorpusError, build_symbols, parse_corpus, parse_source, statements_of
from oracles import FIXTURES


def test_empty_input_gives_empty_corpus():
    corpus = parse_corpus([])
    assert corpus.files == [] and corpus.parse_failures == []


def test_listing1_parses_and_exposes_age_field():
    corpus = parse_corpus([FIXTURES / "listing1"])
    assert len(corpus.files) == 1 and corpus.parse_failures == []
    symbols = build_symbols(corpus)
    assert "AgeFactor.age" in symbols.fields
    assert "AgeFactor.hasFactor" in symbols.methods


def test_syntax_error_is_isolated(tmp_path):
    (tmp_path / "A.java").write_text("class A { int x = ; }")
    (tmp_path / "B.java").write_text("class B { int y = 1; }")
    corpus = parse_corpus([tmp_path])
    assert len(corpus.asts) == 1
    assert len(corpus.parse_failures) == 1
    path, message = corpus.parse_failures[0]
    assert path.endswith("A.java") and "syntax error" in message
    # every file id is in exactly one of asts / failures
    failed = {p for p, _ in corpus.parse_failures}
    for f in corpus.files:
        assert (f.file_id in corpus.asts) != (f.path in failed)


def test_undecodable_file_is_recorded(tmp_path):
    (tmp_path / "Bad.java").write_bytes(b"class Bad { String s = \"\xff\"; }")
    corpus = parse_corpus([tmp_path])
    assert corpus.asts == {} and len(corpus.parse_failures) == 1


def test_missing_root_is_fatal(tmp_path):
    with pytest.raises(CorpusError):
        parse_corpus([tmp_path / "nope"])


def test_file_ids_follow_lexicographic_order(tmp_path):
    for name in ("b/Z.java", "a/Y.java", "a/X.java"):
        p = tmp_path / name
        p.parent.mkdir(parents=True, exist_ok=True)
        p.write_text("class %s {}" % p.stem)
    corpus = parse_corpus([tmp_path])
    assert [f.rel for f in corpus.files] == ["a/X.java", "a/Y.java", "b/Z.java"]


def test_node_text_is_exact_source_slice_and_locations_are_one_based():
    src = "class A {\n  int f(int x) {\n    return x > 1 ? x : 0;\n  }\n}\n"
    root = parse_source(src)
    for node in root.walk():
        assert node.text == src[node.start:node.end]
        assert node.location.line >= 1 and node.location.column >= 1
        assert node.kind is None or node.kind in KINDS


def test_unicode_offsets_are_character_based():
    src = 'class A { String s = "é€"; int y = 2; }'
    root = parse_source(src)
    lit = [n for n in root.walk() if n.text == "2"][0]
    assert src[lit.start:lit.end] == "2"
    assert lit.location.column == src.index("2") + 1


def test_parse_source_raises_on_malformed_input():
    with pytest.raises(SyntaxError):
        parse_source("class A { void f( }")


def test_getter_heuristic(tmp_path):
    (tmp_path / "P.java").write_text(
        "class P {\n"
        "  int age;\n"
        "  int getAge() { return age; }\n"
        "  int getOlder() { return age + 1; }\n"
        "  int getThisAge() { return this.age; }\n"
        "}\n"
    )
    symbols = build_symbols(parse_corpus([tmp_path]))
    assert {"P.getAge", "P.getThisAge"} <= symbols.getters
    assert "P.getOlder" not in symbols.getters
    assert symbols.getter_fields.get("P.getAge") == "P.age"
    assert symbols.getter_fields.get("P.getThisAge") == "P.age"
    assert "P.getOlder" not in symbols.getter_fields


def test_duplicate_class_keeps_first_and_warns(tmp_path):
    (tmp_path / "A.java").write_text("class Dup { int a; }")
    (tmp_path / "B.java").write_text("class Dup { int b; }")
    symbols = build_symbols(parse_corpus([tmp_path]))
    assert "Dup.a" in symbols.fields and "Dup.b" not in symbols.fields
    assert any("Dup" in d for d in symbols.diagnostics)


def test_statements_of_filters_by_kind_in_source_order():
    corpus = parse_corpus([FIXTURES / "listing2"])
    ifs = statements_of(corpus, {"if-stmt"})
    assert [n.location.line for n in ifs] == [7, 9, 11, 13]
    assert statements_of(parse_corpus([]), {"if-stmt"}) == []
    listing1 = parse_corpus([FIXTURES / "listing1"])
    texts = [n.text for n in statements_of(listing1, {"binary-expr"})]
    assert "patient.getAge() > age" in texts
    with pytest.raises(ValueError):
        statements_of(corpus, {"no-such-kind"})


def test_name_resolution_prefers_locals_then_fields():
    corpus = parse_corpus([FIXTURES / "listing1"])
    symbols = build_symbols(corpus)
    node = [n for n in corpus.nodes() if n.kind == "binary-expr" and n.text == "patient.getAge() > age"][0]
    age = node.children[-1]
    res = symbols.resolve_name(age)
    assert res.kind == "field" and res.field_info.qualified == "AgeFactor.age"
    ctor_use = [n for n in corpus.nodes() if n.type == "assignment_expression" and n.text == "this.age = age"][0]
    res = symbols.resolve_name(ctor_use.child("right"))
    assert res.kind == "parameter"

"""Java source parsing, AST model and name-based symbol resolution.

Parsing is delegated to tree-sitter's Java grammar; the resulting concrete
tree is converted into a small immutable :class:`AstNode` tree whose nodes
carry exact source slices and 1-based locations.  Comments and annotations
are dropped from the structure (they remain visible through spans only).
"""

from __future__ import annotations

import logging
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator

import tree_sitter_java
from tree_sitter import Language, Parser

log = logging.getLogger(__name__)

KINDS = frozenset(
    {
        "class-decl",
        "field-decl",
        "method-decl",
        "parameter",
        "local-var-decl",
        "assignment",
        "method-call",
        "return-stmt",
        "if-stmt",
        "switch-stmt",
        "loop-stmt",
        "binary-expr",
        "unary-expr",
        "cast-expr",
        "literal",
        "name-ref",
        "field-access",
        "class-literal-access",
    }
)

_KIND_BY_TYPE = {
    "class_declaration": "class-decl",
    "interface_declaration": "class-decl",
    "enum_declaration": "class-decl",
    "record_declaration": "class-decl",
    "field_declaration": "field-decl",
    "constant_declaration": "field-decl",
    "method_declaration": "method-decl",
    "constructor_declaration": "method-decl",
    "compact_constructor_declaration": "method-decl",
    "formal_parameter": "parameter",
    "spread_parameter": "parameter",
    "catch_formal_parameter": "parameter",
    "local_variable_declaration": "local-var-decl",
    "assignment_expression": "assignment",
    "method_invocation": "method-call",
    "object_creation_expression": "method-call",
    "return_statement": "return-stmt",
    "if_statement": "if-stmt",
    "switch_expression": "switch-stmt",
    "switch_statement": "switch-stmt",
    "for_statement": "loop-stmt",
    "enhanced_for_statement": "loop-stmt",
    "while_statement": "loop-stmt",
    "do_statement": "loop-stmt",
    "binary_expression": "binary-expr",
    "unary_expression": "unary-expr",
    "update_expression": "unary-expr",
    "cast_expression": "cast-expr",
    "decimal_integer_literal": "literal",
    "hex_integer_literal": "literal",
    "octal_integer_literal": "literal",
    "binary_integer_literal": "literal",
    "decimal_floating_point_literal": "literal",
    "hex_floating_point_literal": "literal",
    "string_literal": "literal",
    "text_block": "literal",
    "character_literal": "literal",
    "true": "literal",
    "false": "literal",
    "null_literal": "literal",
    "field_access": "field-access",
    "class_literal": "class-literal-access",
}

# Grammar types that end the upward walk from an expression to "its statement".
STATEMENT_TYPES = frozenset(
    {
        "expression_statement",
        "local_variable_declaration",
        "return_statement",
        "if_statement",
        "switch_expression",
        "switch_statement",
        "for_statement",
        "enhanced_for_statement",
        "while_statement",
        "do_statement",
        "throw_statement",
        "assert_statement",
        "yield_statement",
        "synchronized_statement",
        "field_declaration",
        "constant_declaration",
        "explicit_constructor_invocation",
        "method_declaration",
        "constructor_declaration",
    }
)

_DROPPED_TYPES = frozenset({"line_comment", "block_comment", "marker_annotation", "annotation"})

# Identifiers under these parents are never expression-position references.
_NON_REF_PARENTS = frozenset(
    {
        "scoped_identifier",
        "import_declaration",
        "package_declaration",
        "labeled_statement",
        "break_statement",
        "continue_statement",
        "inferred_parameters",
        "module_declaration",
    }
)

_LANGUAGE = Language(tree_sitter_java.language())


class CorpusError(Exception):
    """Fatal problem with a corpus root (missing or unreadable)."""


@dataclass(frozen=True, order=True)
class Location:
    """1-based source position; ``end_column`` is exclusive."""

    file_id: int
    line: int
    column: int
    end_line: int
    end_column: int

    def short(self) -> str:
        return f"{self.file_id}:{self.line}:{self.column}"


class AstNode:
    __slots__ = (
        "kind",
        "type",
        "field",
        "operator",
        "location",
        "start",
        "end",
        "text",
        "children",
        "parent",
        "named_children",
    )

    def __init__(self, type_, field_, location, start, end, text, operator=None):
        self.type: str = type_
        self.field: str | None = field_
        self.kind: str | None = _KIND_BY_TYPE.get(type_)
        self.operator: str | None = operator
        self.location: Location = location
        self.start: int = start
        self.end: int = end
        self.text: str = text
        self.children: list[AstNode] = []
        self.parent: AstNode | None = None

    def __repr__(self) -> str:
        return f"AstNode({self.kind or self.type}, {self.location.line}:{self.location.column}, {self.text[:40]!r})"

    @property
    def file_id(self) -> int:
        return self.location.file_id

    def child(self, field_name: str) -> AstNode | None:
        for c in self.children:
            if c.field == field_name:
                return c
        return None

    def children_by_field(self, field_name: str) -> list[AstNode]:
        return [c for c in self.children if c.field == field_name]

    def walk(self) -> Iterator[AstNode]:
        """Pre-order traversal (source order, parents first)."""
        stack = [self]
        while stack:
            node = stack.pop()
            yield node
            stack.extend(reversed(node.children))

    def ancestors(self) -> Iterator[AstNode]:
        node = self.parent
        while node is not None:
            yield node
            node = node.parent

    def contains(self, other: AstNode) -> bool:
        return (
            self.file_id == other.file_id
            and self.start <= other.start
            and other.end <= self.end
        )

    def statement(self) -> AstNode:
        """Nearest enclosing node (inclusive) whose grammar type is a statement."""
        node: AstNode | None = self
        while node is not None:
            if node.type in STATEMENT_TYPES:
                return node
            node = node.parent
        return self


@dataclass(frozen=True)
class SourceFile:
    file_id: int
    path: str
    rel: str
    text: str


@dataclass
class SourceCorpus:
    files: list[SourceFile] = field(default_factory=list)
    asts: dict[int, AstNode] = field(default_factory=dict)
    parse_failures: list[tuple[str, str]] = field(default_factory=list)

    def path_of(self, file_id: int) -> str:
        return self.files[file_id].path

    def find_file(self, ref: str) -> SourceFile | None:
        """Locate a file by exact path, root-relative path or path suffix."""
        ref = ref.replace(os.sep, "/")
        for f in self.files:
            if ref in (f.path, f.rel):
                return f
        for f in self.files:
            if f.path.endswith("/" + ref):
                return f
        return None

    def nodes(self) -> Iterator[AstNode]:
        for fid in sorted(self.asts):
            yield from self.asts[fid].walk()

    def nodes_on_line(self, file_id: int, line: int) -> list[AstNode]:
        root = self.asts.get(file_id)
        if root is None:
            return []
        return [n for n in root.walk() if n.location.line == line]

    def node_at(self, loc: Location) -> AstNode | None:
        root = self.asts.get(loc.file_id)
        if root is None:
            return None
        for n in root.walk():
            if n.location == loc:
                return n
        return None


def _build_tree(ts_root, file_id: int, data: bytes, text: str) -> AstNode:
    ascii_only = len(data) == len(text)
    if ascii_only:
        to_char = None
    else:
        to_char = [0] * (len(data) + 1)
        pos = 0
        for idx, ch in enumerate(text):
            width = len(ch.encode("utf-8"))
            for k in range(width):
                to_char[pos + k] = idx
            pos += width
        to_char[len(data)] = len(text)

    line_starts = [0]
    for i, ch in enumerate(text):
        if ch == "\n":
            line_starts.append(i + 1)

    def char_off(b: int) -> int:
        return b if to_char is None else to_char[b]

    def make(ts_node, field_name):
        s, e = char_off(ts_node.start_byte), char_off(ts_node.end_byte)
        sl, el = ts_node.start_point[0], ts_node.end_point[0]
        loc = Location(file_id, sl + 1, s - line_starts[sl] + 1, el + 1, e - line_starts[el] + 1)
        op = None
        if ts_node.type in ("binary_expression", "assignment_expression", "unary_expression"):
            op_node = ts_node.child_by_field_name("operator")
            if op_node is not None:
                op = op_node.type
        elif ts_node.type == "update_expression":
            for c in ts_node.children:
                if not c.is_named:
                    op = c.type
        node = AstNode(ts_node.type, field_name, loc, s, e, text[s:e], op)
        return node

    root = make(ts_root, None)
    stack = [(ts_root, root)]
    while stack:
        ts_node, node = stack.pop()
        for i, ts_child in enumerate(ts_node.children):
            if not ts_child.is_named or ts_child.type in _DROPPED_TYPES:
                continue
            child = make(ts_child, ts_node.field_name_for_child(i))
            child.parent = node
            node.children.append(child)
            stack.append((ts_child, child))
    for n in root.walk():
        if n.type == "identifier" and _is_reference(n):
            n.kind = "name-ref"
        elif n.type == "this":
            n.kind = None
    return root


def _is_reference(node: AstNode) -> bool:
    parent = node.parent
    if parent is None or parent.type in _NON_REF_PARENTS:
        return False
    if node.field in ("name", "field"):
        return False
    if parent.type == "lambda_expression" and node.field == "parameters":
        return False
    return True


def _first_error(ts_node):
    stack = [ts_node]
    while stack:
        n = stack.pop()
        if n.type == "ERROR" or n.is_missing:
            return n
        if n.has_error:
            stack.extend(reversed(n.children))
    return ts_node


def _collect(paths: Iterable[str | os.PathLike], suffix: str) -> list[tuple[str, str]]:
    found: dict[str, str] = {}
    for raw in paths:
        root = Path(raw)
        if not root.exists():
            raise CorpusError(f"{root}: no such file or directory")
        if not os.access(root, os.R_OK):
            raise CorpusError(f"{root}: not readable")
        if root.is_file():
            if root.suffix == suffix:
                found.setdefault(root.as_posix(), root.name)
            continue
        for p in root.rglob(f"*{suffix}"):
            if p.is_file():
                found.setdefault(p.as_posix(), p.relative_to(root).as_posix())
    return sorted(found.items())


def collect_files(paths: Iterable[str | os.PathLike], suffix: str) -> list[str]:
    """Every file with ``suffix`` under the given roots, in lexicographic order."""
    return [p for p, _ in _collect(paths, suffix)]


def parse_source(text: str, file_id: int = 0) -> AstNode:
    """Parse a single compilation unit; raises ``SyntaxError`` on malformed input."""
    data = text.encode("utf-8")
    tree = Parser(_LANGUAGE).parse(data)
    if tree.root_node.has_error:
        bad = _first_error(tree.root_node)
        raise SyntaxError(f"{bad.start_point[0] + 1}:{bad.start_point[1] + 1}: syntax error")
    return _build_tree(tree.root_node, file_id, data, text)


def parse_corpus(paths: Iterable[str | os.PathLike]) -> SourceCorpus:
    corpus = SourceCorpus()
    parser = Parser(_LANGUAGE)
    for file_id, (path, rel) in enumerate(_collect(paths, ".java")):
        try:
            data = Path(path).read_bytes()
        except OSError as exc:
            raise CorpusError(f"{path}: {exc.strerror}") from exc
        try:
            text = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            text = ""
            corpus.files.append(SourceFile(file_id, path, rel, text))
            _fail(corpus, path, f"1:1: not valid UTF-8 ({exc.reason})")
            continue
        corpus.files.append(SourceFile(file_id, path, rel, text))
        tree = parser.parse(data)
        if tree.root_node.has_error:
            bad = _first_error(tree.root_node)
            _fail(corpus, path, f"{bad.start_point[0] + 1}:{bad.start_point[1] + 1}: syntax error")
            continue
        corpus.asts[file_id] = _build_tree(tree.root_node, file_id, data, text)
    return corpus


def _fail(corpus: SourceCorpus, path: str, diagnostic: str) -> None:
    corpus.parse_failures.append((path, diagnostic))
    log.warning("%s:%s", path, diagnostic)


def statements_of(corpus: SourceCorpus, kinds: Iterable[str] | None = None) -> list[AstNode]:
    wanted = None if kinds is None else frozenset(kinds)
    if wanted is not None and not wanted <= KINDS:
        raise ValueError(f"unknown node kinds: {sorted(wanted - KINDS)}")
    return [n for n in corpus.nodes() if n.kind is not None and (wanted is None or n.kind in wanted)]


# ---------------------------------------------------------------------------
# Symbols


def strip_parens(node: AstNode) -> AstNode:
    while node.type == "parenthesized_expression" and node.children:
        node = node.children[0]
    return node


def type_name(node: AstNode | None) -> str | None:
    """Raw type name with generics, arrays and package qualifiers erased."""
    if node is None:
        return None
    if node.type == "generic_type":
        return type_name(node.children[0]) if node.children else None
    if node.type == "array_type":
        inner = type_name(node.child("element"))
        return f"{inner}[]" if inner else None
    if node.type == "scoped_type_identifier":
        return node.children[-1].text if node.children else node.text
    return node.text


def _modifiers(node: AstNode) -> set[str]:
    for c in node.children:
        if c.type == "modifiers":
            return set(c.text.split())
    return set()


@dataclass(eq=False)
class FieldInfo:
    qualified: str
    name: str
    owner: str
    type_name: str | None
    node: AstNode
    declarator: AstNode
    modifiers: frozenset[str] = frozenset()

    @property
    def location(self) -> Location:
        return self.node.location

    @property
    def initializer(self) -> AstNode | None:
        return self.declarator.child("value")


@dataclass(eq=False)
class MethodInfo:
    qualified: str
    name: str
    owner: str
    params: list[tuple[str, str | None, AstNode]]
    return_type: str | None
    node: AstNode
    is_constructor: bool = False
    is_abstract: bool = False
    varargs: bool = False

    @property
    def location(self) -> Location:
        return self.node.location

    @property
    def body(self) -> AstNode | None:
        return self.node.child("body")

    def accepts(self, arity: int) -> bool:
        n = len(self.params)
        if self.varargs:
            return arity >= n - 1
        return arity == n


@dataclass(eq=False)
class ClassInfo:
    name: str
    qualified: str
    kind: str
    node: AstNode
    superclass: str | None
    interfaces: list[str]
    outer: str | None = None
    fields: dict[str, FieldInfo] = field(default_factory=dict)
    methods: dict[str, list[MethodInfo]] = field(default_factory=dict)
    is_abstract: bool = False

    @property
    def file_id(self) -> int:
        return self.node.file_id

    @property
    def supertypes(self) -> list[str]:
        return ([self.superclass] if self.superclass else []) + list(self.interfaces)


@dataclass(frozen=True)
class Resolution:
    kind: str  # local | parameter | field | class
    name: str
    decl: AstNode | None = None
    type_name: str | None = None
    field_info: FieldInfo | None = None
    class_info: ClassInfo | None = None


_LIBRARY_LITERAL_TYPES = {
    "string_literal": "String",
    "text_block": "String",
    "character_literal": "char",
    "true": "boolean",
    "false": "boolean",
    "decimal_integer_literal": "int",
    "hex_integer_literal": "int",
    "octal_integer_literal": "int",
    "binary_integer_literal": "int",
    "decimal_floating_point_literal": "double",
}


@dataclass(eq=False)
class SymbolTable:
    corpus: SourceCorpus
    classes: dict[str, ClassInfo] = field(default_factory=dict)
    fields: dict[str, FieldInfo] = field(default_factory=dict)
    methods: dict[str, MethodInfo] = field(default_factory=dict)
    all_methods: list[MethodInfo] = field(default_factory=list)
    getters: set[str] = field(default_factory=set)
    getter_fields: dict[str, str] = field(default_factory=dict)
    enums: dict[str, list[str]] = field(default_factory=dict)
    diagnostics: list[str] = field(default_factory=list)
    _class_by_node: dict[int, ClassInfo] = field(default_factory=dict, repr=False)
    _method_by_node: dict[int, MethodInfo] = field(default_factory=dict, repr=False)
    _scopes: dict[int, dict[str, list[tuple[int, AstNode, str | None, str]]]] = field(
        default_factory=dict, repr=False
    )
    _subclasses: dict[str, set[str]] = field(default_factory=dict, repr=False)

    # -- structure ---------------------------------------------------------

    def class_of(self, node: AstNode) -> ClassInfo | None:
        """Innermost class enclosing ``node`` (inclusive)."""
        for n in (node, *node.ancestors()):
            info = self._class_by_node.get(id(n))
            if info is not None:
                return info
        return None

    def method_of(self, node: AstNode) -> MethodInfo | None:
        for n in (node, *node.ancestors()):
            if n.kind == "class-decl":
                return None
            info = self._method_by_node.get(id(n))
            if info is not None:
                return info
        return None

    def method_for_decl(self, node: AstNode) -> MethodInfo | None:
        return self._method_by_node.get(id(node))

    def supertypes(self, name: str) -> list[str]:
        """Transitive supertypes known to the corpus, nearest first."""
        out: list[str] = []
        queue = [name]
        seen = {name}
        while queue:
            cur = self.classes.get(queue.pop(0))
            if cur is None:
                continue
            for sup in cur.supertypes:
                if sup not in seen:
                    seen.add(sup)
                    out.append(sup)
                    queue.append(sup)
        return out

    def subclasses(self, name: str) -> list[str]:
        """Transitive subtypes, sorted for determinism."""
        out: set[str] = set()
        queue = [name]
        while queue:
            for sub in self._subclasses.get(queue.pop(), ()):
                if sub not in out:
                    out.add(sub)
                    queue.append(sub)
        return sorted(out)

    def lookup_field(self, class_name: str, name: str) -> FieldInfo | None:
        for cname in (class_name, *self.supertypes(class_name)):
            cls = self.classes.get(cname)
            if cls is not None and name in cls.fields:
                return cls.fields[name]
        return None

    def lookup_methods(self, class_name: str, name: str, arity: int) -> list[MethodInfo]:
        for cname in (class_name, *self.supertypes(class_name)):
            cls = self.classes.get(cname)
            if cls is None:
                continue
            found = [m for m in cls.methods.get(name, []) if m.accepts(arity)]
            if found:
                return found
        return []

    def overrides_of(self, method: MethodInfo) -> list[MethodInfo]:
        out = []
        for sub in self.subclasses(method.owner):
            cls = self.classes[sub]
            for m in cls.methods.get(method.name, []):
                if len(m.params) == len(method.params) and not m.is_constructor:
                    out.append(m)
        return out

    def unique_field(self, name: str) -> FieldInfo | None:
        hits = [f for f in self.fields.values() if f.name == name]
        return hits[0] if len(hits) == 1 else None

    # -- scopes ------------------------------------------------------------

    def _scope(self, method_node: AstNode) -> dict[str, list[tuple[int, AstNode, str | None, str]]]:
        key = id(method_node)
        scope = self._scopes.get(key)
        if scope is not None:
            return scope
        scope = {}
        for n in method_node.walk():
            if n is not method_node and n.kind == "class-decl":
                continue
            if n.type in ("formal_parameter", "spread_parameter", "catch_formal_parameter"):
                name = n.child("name")
                if name is None:
                    decl = next((c for c in n.children if c.type == "variable_declarator"), None)
                    name = decl.child("name") if decl else None
                tname = type_name(n.child("type") or next((c for c in n.children if c.type not in ("identifier", "variable_declarator", "modifiers")), None))
                if name is not None:
                    scope.setdefault(name.text, []).append((n.start, n, tname, "parameter"))
            elif n.type == "local_variable_declaration":
                tname = type_name(n.child("type"))
                for d in n.children_by_field("declarator"):
                    name = d.child("name")
                    if name is not None:
                        scope.setdefault(name.text, []).append((d.start, d, tname, "local"))
            elif n.type == "enhanced_for_statement":
                name = n.child("name")
                if name is not None:
                    scope.setdefault(name.text, []).append((n.start, n, type_name(n.child("type")), "local"))
            elif n.type == "lambda_expression":
                params = n.child("parameters")
                if params is not None:
                    idents = [params] if params.type == "identifier" else [
                        c for c in params.walk() if c.type == "identifier"
                    ]
                    for ident in idents:
                        scope.setdefault(ident.text, []).append((n.start, ident, None, "parameter"))
        for entries in scope.values():
            entries.sort(key=lambda e: e[0])
        self._scopes[key] = scope
        return scope

    def _scope_owner(self, node: AstNode) -> AstNode | None:
        for n in node.ancestors():
            if n.kind == "method-decl":
                return n
            if n.kind == "class-decl":
                return None
        return None

    # -- resolution --------------------------------------------------------

    def resolve_name(self, node: AstNode) -> Resolution | None:
        """Resolve a bare identifier to a local, parameter, field or class."""
        name = node.text
        owner = self._scope_owner(node)
        if owner is not None:
            entries = self._scope(owner).get(name, [])
            best = None
            for start, decl, tname, kind in entries:
                if start <= node.start:
                    best = (decl, tname, kind)
            if best is not None:
                decl, tname, kind = best
                return Resolution(kind, name, decl, tname)
        cls = self.class_of(node)
        while cls is not None:
            f = self.lookup_field(cls.name, name)
            if f is not None:
                return Resolution("field", name, f.declarator, f.type_name, field_info=f)
            cls = self.classes.get(cls.outer) if cls.outer else None
        if name in self.classes:
            return Resolution("class", name, self.classes[name].node, name, class_info=self.classes[name])
        return None

    def type_of(self, node: AstNode) -> str | None:
        node = strip_parens(node)
        if node.type == "identifier":
            res = self.resolve_name(node)
            return res.type_name if res else None
        if node.type == "this":
            cls = self.class_of(node)
            return cls.name if cls else None
        if node.type == "field_access":
            f = self.resolve_field_access(node)
            return f.type_name if f else None
        if node.type == "method_invocation":
            targets = self.resolve_call(node)
            return targets[0].return_type if targets else None
        if node.type == "object_creation_expression":
            return type_name(node.child("type"))
        if node.type == "cast_expression":
            return type_name(node.child("type"))
        if node.type in _LIBRARY_LITERAL_TYPES:
            return _LIBRARY_LITERAL_TYPES[node.type]
        return None

    def resolve_field_access(self, node: AstNode) -> FieldInfo | None:
        obj = node.child("object")
        fname = node.child("field")
        if obj is None or fname is None:
            return None
        obj = strip_parens(obj)
        owner: str | None = None
        if obj.type == "this":
            cls = self.class_of(node)
            owner = cls.name if cls else None
        elif obj.type == "super":
            cls = self.class_of(node)
            owner = cls.superclass if cls else None
        elif obj.type == "identifier":
            res = self.resolve_name(obj)
            if res is not None:
                owner = res.class_info.name if res.kind == "class" else res.type_name
            elif obj.text in self.classes:
                owner = obj.text
        else:
            owner = self.type_of(obj)
        if owner is not None and owner in self.classes:
            found = self.lookup_field(owner, fname.text)
            if found is not None:
                return found
            return None
        if owner is not None and owner not in self.classes:
            # Known library type: never guess a corpus field.
            if obj.type == "identifier" and self.resolve_name(obj) is not None:
                return None
        return self.unique_field(fname.text)

    def receiver_type(self, call: AstNode) -> tuple[str | None, bool]:
        """Static receiver type of a call and whether the receiver is known."""
        obj = call.child("object")
        if obj is None:
            cls = self.class_of(call)
            return (cls.name if cls else None), True
        obj = strip_parens(obj)
        if obj.type == "this":
            cls = self.class_of(call)
            return (cls.name if cls else None), True
        if obj.type == "super":
            cls = self.class_of(call)
            return (cls.superclass if cls else None), True
        if obj.type == "identifier":
            res = self.resolve_name(obj)
            if res is None:
                return None, False
            if res.kind == "class":
                return res.class_info.name, True
            return res.type_name, res.type_name is not None
        if obj.type == "field_access" and obj.text.split(".")[-1] in self.classes:
            return obj.text.split(".")[-1], True
        t = self.type_of(obj)
        return t, t is not None

    def static_targets(self, call: AstNode) -> list[MethodInfo]:
        """Methods named statically at a call site (no override expansion)."""
        if call.type == "object_creation_expression":
            cname = type_name(call.child("type"))
            cls = self.classes.get(cname) if cname else None
            if cls is None:
                return []
            args = call.child("arguments")
            arity = len(args.children) if args else 0
            return [m for m in cls.methods.get(cls.name, []) if m.is_constructor and m.accepts(arity)]
        if call.type != "method_invocation":
            return []
        name = call.child("name")
        args = call.child("arguments")
        if name is None:
            return []
        arity = len(args.children) if args else 0
        rtype, known = self.receiver_type(call)
        if rtype is not None and rtype in self.classes:
            found = self.lookup_methods(rtype, name.text, arity)
            if not found and call.child("object") is None:
                cls = self.class_of(call)
                outer = self.classes.get(cls.outer) if cls and cls.outer else None
                while outer is not None and not found:
                    found = self.lookup_methods(outer.name, name.text, arity)
                    outer = self.classes.get(outer.outer) if outer.outer else None
            return found
        if known:
            return []
        hits = [m for m in self.all_methods if m.name == name.text and m.accepts(arity) and not m.is_constructor]
        owners = {m.owner for m in hits}
        return hits if len(owners) == 1 else []

    def resolve_call(self, call: AstNode) -> list[MethodInfo]:
        """Static targets plus every override below them (class-hierarchy analysis)."""
        statics = self.static_targets(call)
        out = list(statics)
        if call.type == "method_invocation":
            for m in statics:
                for o in self.overrides_of(m):
                    if o not in out:
                        out.append(o)
        return out


def _collect_class(symbols: SymbolTable, node: AstNode, outer: ClassInfo | None) -> None:
    name_node = node.child("name")
    if name_node is None:
        return
    name = name_node.text
    kind = {"interface_declaration": "interface", "enum_declaration": "enum"}.get(node.type, "class")
    sup = node.child("superclass")
    superclass = type_name(sup.children[0]) if sup is not None and sup.children else None
    interfaces: list[str] = []
    for c in node.children:
        if c.type in ("super_interfaces", "extends_interfaces"):
            for t in c.walk():
                if t.parent is not None and t.parent.type == "type_list":
                    tn = type_name(t)
                    if tn:
                        interfaces.append(tn)
    info = ClassInfo(
        name=name,
        qualified=f"{outer.qualified}.{name}" if outer else name,
        kind=kind,
        node=node,
        superclass=superclass,
        interfaces=interfaces,
        outer=outer.name if outer else None,
        is_abstract="abstract" in _modifiers(node) or kind == "interface",
    )
    if name in symbols.classes:
        msg = f"duplicate class {name}: keeping {symbols.corpus.path_of(symbols.classes[name].file_id)}"
        symbols.diagnostics.append(msg)
        log.warning(msg)
        return
    symbols.classes[name] = info
    symbols._class_by_node[id(node)] = info

    body = node.child("body")
    if body is None:
        return
    members = list(body.children)
    if node.type == "enum_declaration":
        symbols.enums[name] = [c.child("name").text for c in members if c.type == "enum_constant" and c.child("name")]
        for c in members:
            if c.type == "enum_body_declarations":
                members.extend(c.children)
    for m in members:
        if m.type in ("field_declaration", "constant_declaration"):
            tname = type_name(m.child("type"))
            mods = frozenset(_modifiers(m))
            if kind == "interface":
                mods = mods | {"static", "final"}
            for d in m.children_by_field("declarator"):
                fname = d.child("name")
                if fname is None:
                    continue
                q = f"{name}.{fname.text}"
                fi = FieldInfo(q, fname.text, name, tname, m, d, mods)
                info.fields.setdefault(fname.text, fi)
                if q in symbols.fields:
                    msg = f"duplicate field {q}"
                    symbols.diagnostics.append(msg)
                    log.warning(msg)
                else:
                    symbols.fields[q] = fi
        elif m.type in ("method_declaration", "constructor_declaration", "compact_constructor_declaration"):
            mname = m.child("name")
            if mname is None:
                continue
            params: list[tuple[str, str | None, AstNode]] = []
            varargs = False
            plist = m.child("parameters")
            for p in plist.children if plist is not None else []:
                if p.type == "formal_parameter":
                    pn = p.child("name")
                    params.append((pn.text if pn else "", type_name(p.child("type")), p))
                elif p.type == "spread_parameter":
                    varargs = True
                    decl = next((c for c in p.children if c.type == "variable_declarator"), None)
                    pn = decl.child("name") if decl else None
                    ptype = next((c for c in p.children if c.type not in ("variable_declarator", "modifiers")), None)
                    tn = type_name(ptype)
                    params.append((pn.text if pn else "", f"{tn}[]" if tn else None, p))
            is_ctor = m.type != "method_declaration"
            mods = _modifiers(m)
            is_abstract = not is_ctor and m.child("body") is None and "native" not in mods
            mi = MethodInfo(
                qualified=f"{name}.{mname.text}",
                name=mname.text,
                owner=name,
                params=params,
                return_type=None if is_ctor else type_name(m.child("type")),
                node=m,
                is_constructor=is_ctor,
                is_abstract=is_abstract and (kind == "interface" or "abstract" in mods),
                varargs=varargs,
            )
            info.methods.setdefault(mname.text, []).append(mi)
            symbols.all_methods.append(mi)
            symbols.methods.setdefault(mi.qualified, mi)
            symbols._method_by_node[id(m)] = mi
    for m in members:
        if m.kind == "class-decl":
            _collect_class(symbols, m, info)
    # local and anonymous classes inside method bodies
    for m in members:
        if m.kind == "method-decl" or m.type in ("static_initializer", "block", "field_declaration"):
            for inner in m.walk():
                if inner is not m and inner.kind == "class-decl" and symbols.class_of(inner.parent) is info:
                    _collect_class(symbols, inner, info)


def getter_field(symbols: SymbolTable, method: MethodInfo) -> FieldInfo | None:
    """Field returned unchanged by ``method`` (single ``return f;`` body), if any."""
    if method.params or method.is_constructor:
        return None
    body = method.body
    if body is None or len(body.children) != 1 or body.children[0].type != "return_statement":
        return None
    ret = body.children[0]
    if len(ret.children) != 1:
        return None
    expr = ret.children[0]
    cls = symbols.classes.get(method.owner)
    if cls is None:
        return None
    if expr.type == "identifier":
        return cls.fields.get(expr.text)
    if expr.type == "field_access" and expr.child("object") is not None and expr.child("object").type == "this":
        return cls.fields.get(expr.child("field").text)
    return None


def build_symbols(corpus: SourceCorpus) -> SymbolTable:
    symbols = SymbolTable(corpus)
    for fid in sorted(corpus.asts):
        root = corpus.asts[fid]
        for node in root.children:
            if node.kind == "class-decl":
                _collect_class(symbols, node, None)
    for cls in symbols.classes.values():
        for sup in cls.supertypes:
            symbols._subclasses.setdefault(sup, set()).add(cls.name)
    for m in symbols.all_methods:
        f = getter_field(symbols, m)
        if f is not None:
            symbols.getters.add(m.qualified)
            symbols.getter_fields.setdefault(m.qualified, f.qualified)
    return symbols

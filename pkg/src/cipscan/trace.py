"""Enforcing-statement descent, data-definition resolution and trace links."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .catalog import get_pattern
from .constraints import SeedRef
from .dataflow import DefSite, _is_literal_node, literal_key
from .detectors import Analysis, CandidateEnforcement, Seed
from .frontend import AstNode, Location, MethodInfo, strip_parens
from .matcher import PatternInstance

log = logging.getLogger(__name__)

DEFINITION_KINDS = (
    "field-declaration",
    "method-declaration",
    "library-call-site",
    "local-assignment",
    "literal-occurrence",
    "parameter-definition",
)
UNRESOLVED = "unresolved"
PROVENANCES = ("manual", "detector")

_DEF_KIND_OF_SITE = {
    "field": "field-declaration",
    "method": "method-declaration",
    "library-call": "library-call-site",
    "local": "local-assignment",
    "literal": "literal-occurrence",
    "parameter": "parameter-definition",
}
_CALL_TYPES = ("method_invocation", "object_creation_expression")
_MAX_CHASE = 8

Predicate = Callable[[AstNode], bool]


class TraceError(Exception):
    pass


# ---------------------------------------------------------------------------
# descent


def _calls_in(node: AstNode) -> list[AstNode]:
    return [n for n in node.walk() if n.type in _CALL_TYPES]


def descend_enforcing(candidate: AstNode, analysis: Analysis, predicate: Predicate) -> AstNode:
    """Follow corpus-local calls from ``candidate`` to the statement that enforces the constraint.

    Callees are inspected in source order of their call sites; within a callee
    body the first node (depth-first, pre-order) satisfying ``predicate`` wins.
    Methods already inspected, and methods mutually recursive with the current
    one, are skipped so the walk always terminates.
    """
    symbols = analysis.symbols
    visited: set[int] = set()
    current = candidate
    while True:
        enclosing = symbols.method_of(current)
        if enclosing is not None:
            visited.add(id(enclosing))
        recursive = analysis.recursive_peers(enclosing.qualified) if enclosing is not None else frozenset()
        found: AstNode | None = None
        for call in _calls_in(current):
            targets = sorted(symbols.resolve_call(call), key=lambda m: (m.location, m.qualified))
            for target in targets:
                if id(target) in visited or target.qualified in recursive or target.body is None:
                    continue
                visited.add(id(target))
                found = next((n for n in target.body.walk() if predicate(n)), None)
                if found is not None:
                    break
            if found is not None:
                break
        if found is None:
            return current
        current = found


def instance_predicate(
    analysis: Analysis, patterns: Iterable[str] | None = None, seeds: Sequence[DefSite] = ()
) -> Predicate:
    """True on anchors of matched instances (optionally restricted to the seeds' slices)."""
    wanted = None if patterns is None else set(patterns)
    slices = [analysis.slice(s) for s in seeds]
    anchors = {
        (i.location, i.node.type)
        for i in analysis.instances
        if (wanted is None or i.pattern in wanted) and i.node is not None
        and all(i.location in s.reached for s in slices)
    }

    def predicate(node: AstNode) -> bool:
        return (node.location, node.type) in anchors

    return predicate


# ---------------------------------------------------------------------------
# data definitions


@dataclass(frozen=True)
class DataDefinition:
    kind: str
    location: Location | None
    symbol: str
    unresolved: bool = False

    def to_json(self, analysis: Analysis | None = None, file: str | None = None) -> dict:
        out: dict = {"kind": self.kind}
        if file is not None:
            out["file"] = file
        elif self.location is not None and analysis is not None:
            out["file"] = analysis.corpus.path_of(self.location.file_id)
        else:
            out["file"] = None
        out["line"] = self.location.line if self.location is not None else None
        out["symbol"] = self.symbol
        if self.unresolved:
            out["unresolved"] = True
        return out


def _call_sites(analysis: Analysis, method: MethodInfo) -> list[AstNode]:
    site = analysis.defuse.method_def(method)
    if site is None:
        return []
    return [r.node for r in analysis.defuse.refs.get(site, []) if r.node.type in _CALL_TYPES]


def _field_writes(analysis: Analysis, qualified: str) -> list[AstNode]:
    site = analysis.defuse.field_def(qualified)
    out = []
    for r in analysis.defuse.refs.get(site, []) if site is not None else []:
        node = r.node
        while node.parent is not None and node.parent.type == "parenthesized_expression":
            node = node.parent
        if node.parent is not None and node.parent.type == "assignment_expression" and node.field == "left":
            out.append(node.parent)
    return out


class _Resolver:
    def __init__(self, analysis: Analysis, diagnostics: list[str]):
        self.analysis = analysis
        self.symbols = analysis.symbols
        self.diagnostics = diagnostics

    def unresolved(self, node: AstNode, why: str) -> DataDefinition:
        path = self.analysis.corpus.path_of(node.file_id)
        self.diagnostics.append(f"{path}:{node.location.line}:{node.location.column}: unresolved operand {node.text!r} ({why})")
        return DataDefinition(UNRESOLVED, node.location, node.text, unresolved=True)

    def literal(self, node: AstNode) -> DataDefinition:
        return DataDefinition("literal-occurrence", node.location, node.text)

    def field(self, f) -> DataDefinition:
        return DataDefinition("field-declaration", f.location, f.qualified)

    def resolve(self, node: AstNode, depth: int = 0) -> DataDefinition:
        node = strip_parens(node)
        if depth > _MAX_CHASE:
            return self.unresolved(node, "definition chain too long")
        if _is_literal_node(node) or node.type in ("true", "false", "null_literal"):
            return self.literal(node)
        if node.type == "identifier":
            res = self.symbols.resolve_name(node)
            if res is None:
                return self.unresolved(node, "unknown name")
            if res.kind == "field" and res.field_info is not None:
                return self.field_or_constant(res.field_info, depth)
            if res.kind == "local":
                return self.local(res.decl, node, depth)
            if res.kind == "parameter":
                return self.parameter(res.decl, depth)
            return self.unresolved(node, f"{res.kind} name")
        if node.type == "field_access":
            f = self.symbols.resolve_field_access(node)
            if f is not None:
                return self.field_or_constant(f, depth)
            return self.unresolved(node, "field outside the corpus")
        if node.type in _CALL_TYPES:
            return self.call(node)
        if node.type == "method_declaration" or node.kind == "method-decl":
            m = self.symbols.method_for_decl(node)
            if m is not None:
                return DataDefinition("method-declaration", m.location, m.qualified)
        return self.unresolved(node, "computed expression")

    def call(self, call: AstNode) -> DataDefinition:
        targets = self.symbols.resolve_call(call)
        if not targets:
            name = call.child("name") if call.type == "method_invocation" else call.child("type")
            return DataDefinition("library-call-site", call.statement().location, name.text if name else call.text)
        statics = [m for m in self.symbols.static_targets(call)] or targets
        m = statics[0]
        fq = self.symbols.getter_fields.get(m.qualified)
        if fq is not None:
            return self.field(self.symbols.fields[fq])
        return DataDefinition("method-declaration", m.location, m.qualified)

    def field_or_constant(self, f, depth: int) -> DataDefinition:
        # A field set only from constructor parameters that always receive
        # the same single literal is defined by that literal.
        if f.initializer is None:
            writes = _field_writes(self.analysis, f.qualified)
            if len(writes) == 1:
                rhs = strip_parens(writes[0].child("right"))
                method = self.symbols.method_of(writes[0])
                if method is not None and method.is_constructor and rhs.type == "identifier":
                    res = self.symbols.resolve_name(rhs)
                    if res is not None and res.kind == "parameter":
                        inner = self.from_callers(res.decl, depth)
                        if inner is not None and inner.kind == "literal-occurrence":
                            return inner
        return self.field(f)

    def local(self, decl: AstNode, use: AstNode, depth: int) -> DataDefinition:
        if decl.type != "variable_declarator":
            return DataDefinition("local-assignment", decl.location, use.text)
        value = decl.child("value")
        if value is None or _is_literal_node(strip_parens(value)):
            return DataDefinition("local-assignment", decl.statement().location, use.text)
        value = strip_parens(value)
        if value.type in _CALL_TYPES and not self.symbols.resolve_call(value):
            return self.call(value)
        return self.resolve(value, depth + 1)

    def from_callers(self, param: AstNode, depth: int) -> DataDefinition | None:
        method = self.symbols.method_of(param)
        if method is None:
            return None
        idx = next((i for i, p in enumerate(method.params) if p[2] is param), None)
        sites = _call_sites(self.analysis, method)
        if idx is None or len(sites) != 1:
            return None
        args = sites[0].child("arguments")
        arg_nodes = list(args.children) if args is not None else []
        if idx >= len(arg_nodes):
            return None
        return self.resolve(arg_nodes[idx], depth + 1)

    def parameter(self, decl: AstNode, depth: int) -> DataDefinition:
        inner = self.from_callers(decl, depth)
        if inner is not None and not inner.unresolved:
            return inner
        if inner is not None:
            self.diagnostics.pop()
        method = self.symbols.method_of(decl)
        name = decl.child("name")
        label = f"{method.qualified}#{name.text}" if method is not None and name is not None else decl.text
        return DataDefinition("parameter-definition", decl.location, label)


def _operand_node(part) -> AstNode | None:
    node = part.node
    if node is None:
        return None
    if part.role == "method" and node.type == "identifier" and node.parent is not None:
        if node.parent.type in _CALL_TYPES or node.parent.kind == "method-decl":
            return node.parent
    return node


def resolve_data_definitions(
    instance: PatternInstance, analysis: Analysis, diagnostics: list[str] | None = None
) -> list[DataDefinition]:
    """One data definition per bound operand of ``instance``."""
    if diagnostics is None:
        diagnostics = []
    resolver = _Resolver(analysis, diagnostics)
    out = []
    for part in instance.binding:
        if part.role == "operator":
            continue
        node = _operand_node(part)
        if node is None:
            out.append(DataDefinition(UNRESOLVED, part.location, part.text, unresolved=True))
            diagnostics.append(f"unresolved operand {part.text!r}")
            continue
        out.append(resolver.resolve(node))
    return out


def definitions_from_seeds(
    seeds: Sequence[Seed], analysis: Analysis, refs: Sequence[SeedRef] = ()
) -> list[DataDefinition]:
    """Detector links reuse the constraint's seed definitions.

    Literal seeds carry no location of their own; the seed reference's
    line supplies the occurrence.
    """
    refs = list(refs)
    if len(refs) != len(seeds):
        # an operator derived from the expression has no seed reference
        defs = [s for s in seeds if not isinstance(s, str)]
        refs = [r for r in refs if r.kind.strip().lower() != "operator"]
        pairs = list(zip(defs, refs + [None] * (len(defs) - len(refs))))
    else:
        pairs = [(s, r) for s, r in zip(seeds, refs) if not isinstance(s, str)]
    out = []
    for seed, ref in pairs:
        loc = seed.location
        if loc is None and ref is not None:
            loc = _literal_location(analysis, ref, seed)
        out.append(DataDefinition(_DEF_KIND_OF_SITE[seed.kind], loc, seed.symbol))
    return out


def _literal_location(analysis: Analysis, ref: SeedRef, seed: DefSite) -> Location | None:
    src = analysis.corpus.find_file(ref.file)
    if src is None:
        return None
    for node in analysis.corpus.nodes_on_line(src.file_id, ref.line):
        if seed.kind == "literal" and _is_literal_node(node) and literal_key(node.text) == seed.symbol:
            return node.location
        if seed.kind == "library-call" and node.type == "method_invocation":
            return node.statement().location
    return None


# ---------------------------------------------------------------------------
# links


@dataclass(frozen=True)
class TraceLink:
    constraint_id: str
    file: str
    line: int
    pattern: str
    parts: tuple[str, ...]
    text: str
    definitions: tuple[dict, ...]
    provenance: str
    system: str = ""

    @property
    def location(self) -> tuple[str, int]:
        return (self.file, self.line)

    def to_json(self) -> dict:
        out = {
            "constraint_id": self.constraint_id,
            "enforcing": {
                "file": self.file,
                "line": self.line,
                "pattern": self.pattern,
                "parts": list(self.parts),
                "text": self.text,
            },
            "definitions": [dict(d) for d in self.definitions],
            "provenance": self.provenance,
        }
        if self.system:
            out["system"] = self.system
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "TraceLink":
        enf = obj["enforcing"]
        return cls(
            constraint_id=str(obj["constraint_id"]),
            file=str(enf["file"]),
            line=int(enf["line"]),
            pattern=str(enf["pattern"]),
            parts=tuple(enf.get("parts", ())),
            text=str(enf.get("text", "")),
            definitions=tuple(obj.get("definitions", ())),
            provenance=str(obj.get("provenance", "manual")),
            system=str(obj.get("system", "")),
        )


def assemble_trace(
    constraint_id: str,
    instance: PatternInstance,
    definitions: Sequence[DataDefinition | dict],
    provenance: str,
    analysis: Analysis | None = None,
    system: str = "",
) -> TraceLink:
    if provenance not in PROVENANCES:
        raise TraceError(f"unknown provenance {provenance!r}")
    pattern = get_pattern(instance.pattern)
    if len(definitions) != pattern.operand_parts:
        raise TraceError(
            f"definition count mismatch: {instance.pattern!r} needs {pattern.operand_parts}, got {len(definitions)}"
        )
    defs = tuple(d if isinstance(d, dict) else d.to_json(analysis) for d in definitions)
    return TraceLink(
        constraint_id=constraint_id,
        file=instance.path,
        line=instance.location.line,
        pattern=instance.pattern,
        parts=tuple(instance.parts),
        text=instance.statement_text,
        definitions=defs,
        provenance=provenance,
        system=system,
    )


def link_from_candidate(
    candidate: CandidateEnforcement,
    seeds: Sequence[Seed],
    analysis: Analysis,
    refs: Sequence[SeedRef] = (),
    system: str = "",
) -> TraceLink:
    defs = definitions_from_seeds(seeds, analysis, refs)
    return assemble_trace(candidate.constraint_id, candidate.instance, defs, "detector", analysis, system)


def sort_links(links: Iterable[TraceLink]) -> list[TraceLink]:
    return sorted(links, key=lambda l: (l.constraint_id, l.file, l.line, l.pattern))

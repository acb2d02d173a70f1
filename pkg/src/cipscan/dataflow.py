"""Call graph, statement-level def-use graph and forward slicing.

Data-definition sites (``DefSite``) are fields, methods, parameters, locals,
literal values and library calls.  Every def has *reference* edges to the AST
nodes that read (or write) it; each reference may in turn *flow* into another
def, e.g. an argument into the callee's parameter.  A forward slice is a
shortest-hop walk over these edges.
"""

from __future__ import annotations

import heapq
import itertools
import logging
from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .frontend import (
    STATEMENT_TYPES,
    AstNode,
    Location,
    MethodInfo,
    SourceCorpus,
    SymbolTable,
    strip_parens,
)

log = logging.getLogger(__name__)

DEF_KINDS = ("field", "method", "parameter", "local", "literal", "library-call")

# label -> interprocedural hop cost
EDGE_HOPS = {
    "direct-read": 0,
    "getter-read": 1,
    "local-propagation": 0,
    "parameter-passing": 1,
    "return-propagation": 1,
}

# Expression types that carry the value of a sub-expression to their parent.
_CARRIERS = frozenset(
    {
        "parenthesized_expression",
        "cast_expression",
        "unary_expression",
        "binary_expression",
        "ternary_expression",
        "array_access",
        "update_expression",
        "instanceof_expression",
    }
)


class SliceError(Exception):
    pass


@dataclass(frozen=True, order=True)
class DefSite:
    """A data definition.  Literal and library-call defs have no location."""

    kind: str
    symbol: str
    location: Location | None = None

    def to_json(self, corpus: SourceCorpus | None = None) -> dict:
        out: dict = {"kind": self.kind, "symbol": self.symbol}
        if self.location is not None:
            if corpus is not None:
                out["file"] = corpus.files[self.location.file_id].path
            out["line"] = self.location.line
        return out


@dataclass(frozen=True)
class CallEdge:
    caller: str
    callee: str
    site: Location
    resolution: str


@dataclass
class CallGraph:
    nodes: list[str] = field(default_factory=list)
    edges: list[CallEdge] = field(default_factory=list)
    unresolved: int = 0

    def callees(self, caller: str) -> list[str]:
        return sorted({e.callee for e in self.edges if e.caller == caller})

    def to_networkx(self):
        import networkx as nx

        g = nx.DiGraph()
        g.add_nodes_from(self.nodes)
        g.add_edges_from((e.caller, e.callee) for e in self.edges)
        return g


@dataclass(frozen=True)
class Reference:
    node: AstNode
    label: str

    @property
    def hops(self) -> int:
        return EDGE_HOPS[self.label]


@dataclass
class DefUseGraph:
    corpus: SourceCorpus
    symbols: SymbolTable
    defs: set[DefSite] = field(default_factory=set)
    refs: dict[DefSite, list[Reference]] = field(default_factory=dict)
    flows: dict[int, list[tuple[DefSite, str]]] = field(default_factory=dict)
    _field_defs: dict[str, DefSite] = field(default_factory=dict, repr=False)
    _method_defs: dict[int, DefSite] = field(default_factory=dict, repr=False)
    _decl_defs: dict[int, DefSite] = field(default_factory=dict, repr=False)

    def uses(self, site: DefSite) -> list[AstNode]:
        return [r.node for r in self.refs.get(site, [])]

    def flows_from(self, node: AstNode) -> list[tuple[DefSite, str]]:
        return self.flows.get(id(node), [])

    def edges(self) -> Iterator[tuple[DefSite, AstNode, str]]:
        for site in sorted(self.refs):
            for r in self.refs[site]:
                yield site, r.node, r.label

    def field_def(self, qualified: str) -> DefSite | None:
        return self._field_defs.get(qualified)

    def method_def(self, method: MethodInfo) -> DefSite | None:
        return self._method_defs.get(id(method))

    def decl_def(self, decl: AstNode) -> DefSite | None:
        """Def for a parameter or local declaration node."""
        return self._decl_defs.get(id(decl))

    def literal_def(self, text: str) -> DefSite:
        return DefSite("literal", literal_key(text))

    def library_def(self, name: str) -> DefSite:
        return DefSite("library-call", name)


@dataclass(frozen=True)
class Slice:
    seed: DefSite
    reached: frozenset[Location]
    depth_used: int
    statements: frozenset[Location] = frozenset()
    # location -> edge labels along the shortest path from the seed
    paths: dict = field(default_factory=dict, compare=False, hash=False, repr=False)

    def path_to(self, location: Location) -> tuple[str, ...]:
        return self.paths.get(location, ())

    def to_json(self, corpus: SourceCorpus) -> dict:
        lines = sorted({(corpus.files[l.file_id].path, l.line) for l in self.statements})
        return {
            "seed": self.seed.to_json(corpus),
            "depth_used": self.depth_used,
            "reached": [{"file": f, "line": n} for f, n in lines],
        }


def literal_key(text: str) -> str:
    return "".join(text.split())


def _is_literal_node(node: AstNode) -> bool:
    if node.kind == "literal":
        parent = node.parent
        # `-1` is one occurrence, keyed by the unary node
        return not (parent is not None and parent.type == "unary_expression" and parent.operator in ("-", "+"))
    return (
        node.type == "unary_expression"
        and node.operator in ("-", "+")
        and len(node.children) == 1
        and node.children[0].kind == "literal"
    )


def _method_key(m: MethodInfo) -> str:
    return m.qualified


def _enclosing_key(symbols: SymbolTable, node: AstNode) -> str | None:
    m = symbols.method_of(node)
    if m is not None:
        return _method_key(m)
    cls = symbols.class_of(node)
    return f"{cls.name}.<init>" if cls is not None else None


def build_call_graph(corpus: SourceCorpus, symbols: SymbolTable) -> CallGraph:
    graph = CallGraph()
    nodes = {_method_key(m) for m in symbols.all_methods}
    seen = set()
    for node in corpus.nodes():
        if node.type not in ("method_invocation", "object_creation_expression", "explicit_constructor_invocation"):
            continue
        if node.type == "explicit_constructor_invocation":
            continue
        caller = _enclosing_key(symbols, node)
        if caller is None:
            continue
        nodes.add(caller)
        statics = symbols.static_targets(node)
        if not statics:
            graph.unresolved += 1
            continue
        targets: list[tuple[MethodInfo, str]] = [(m, "static") for m in statics if not m.is_abstract]
        if node.type == "method_invocation":
            for m in statics:
                for o in symbols.overrides_of(m):
                    if not o.is_abstract:
                        targets.append((o, "hierarchy-approximate"))
        for m, how in targets:
            key = (caller, _method_key(m), node.location)
            if key in seen:
                continue
            seen.add(key)
            graph.edges.append(CallEdge(caller, _method_key(m), node.location, how))
    graph.nodes = sorted(nodes)
    graph.edges.sort(key=lambda e: (e.site, e.callee))
    if graph.unresolved:
        log.debug("call graph: %d call sites with no corpus target", graph.unresolved)
    return graph


def _sink(node: AstNode, symbols: SymbolTable, graph: DefUseGraph) -> list[tuple[DefSite, str]]:
    """Defs that receive the value read at ``node``."""
    cur = node
    while True:
        parent = cur.parent
        if parent is None:
            return []
        if parent.type in _CARRIERS:
            if parent.type == "ternary_expression" and cur.field == "condition":
                return []
            if parent.type == "array_access" and cur.field == "index":
                return []
            cur = parent
            continue
        if parent.type == "argument_list":
            call = parent.parent
            if call is None:
                return []
            targets = symbols.resolve_call(call)
            if not targets:
                cur = call  # library call: the result carries the argument
                continue
            pos = parent.children.index(cur)
            out = []
            for m in targets:
                if not m.params:
                    continue
                idx = min(pos, len(m.params) - 1)
                if idx < pos and not m.varargs:
                    continue
                site = graph.decl_def(m.params[idx][2])
                if site is not None:
                    out.append((site, "parameter-passing"))
            return out
        if parent.type == "method_invocation" and cur.field == "object":
            if symbols.static_targets(parent):
                return []
            cur = parent
            continue
        if parent.type == "assignment_expression":
            if cur.field != "right":
                return []
            target = _write_target(parent.child("left"), symbols, graph)
            return [(target, "local-propagation")] if target is not None else []
        if parent.type == "variable_declarator" and cur.field == "value":
            site = graph.decl_def(parent)
            return [(site, "local-propagation")] if site is not None else []
        if parent.type == "enhanced_for_statement" and cur.field == "value":
            site = graph.decl_def(parent)
            return [(site, "local-propagation")] if site is not None else []
        if parent.type == "return_statement":
            m = symbols.method_of(parent)
            site = graph.method_def(m) if m is not None else None
            return [(site, "return-propagation")] if site is not None else []
        if parent.type == "lambda_expression":
            return []
        return []


def _write_target(left: AstNode, symbols: SymbolTable, graph: DefUseGraph) -> DefSite | None:
    left = strip_parens(left)
    while left.type == "array_access":
        left = strip_parens(left.child("array"))
    if left.type == "identifier":
        res = symbols.resolve_name(left)
        if res is None:
            return None
        if res.kind == "field" and res.field_info is not None:
            return graph.field_def(res.field_info.qualified)
        if res.decl is not None:
            return graph.decl_def(res.decl)
        return None
    if left.type == "field_access":
        f = symbols.resolve_field_access(left)
        return graph.field_def(f.qualified) if f is not None else None
    return None


def build_defuse_graph(corpus: SourceCorpus, symbols: SymbolTable) -> DefUseGraph:
    graph = DefUseGraph(corpus, symbols)

    def add_def(site: DefSite) -> DefSite:
        graph.defs.add(site)
        graph.refs.setdefault(site, [])
        return site

    for qname, f in symbols.fields.items():
        graph._field_defs[qname] = add_def(DefSite("field", qname, f.location))
        graph._decl_defs[id(f.declarator)] = graph._field_defs[qname]
    for m in symbols.all_methods:
        graph._method_defs[id(m)] = add_def(DefSite("method", m.qualified, m.location))
        for pname, _, pnode in m.params:
            graph._decl_defs[id(pnode)] = add_def(DefSite("parameter", f"{m.qualified}#{pname}", pnode.location))

    all_nodes = list(corpus.nodes())
    for node in all_nodes:
        if node.type in ("formal_parameter", "spread_parameter", "catch_formal_parameter") and id(node) not in graph._decl_defs:
            owner = _enclosing_key(symbols, node) or "?"
            name = node.child("name")
            label = name.text if name is not None else node.text
            graph._decl_defs[id(node)] = add_def(DefSite("parameter", f"{owner}#{label}", node.location))
        elif node.type == "variable_declarator" and node.parent is not None and node.parent.type == "local_variable_declaration":
            owner = _enclosing_key(symbols, node) or "?"
            name = node.child("name")
            graph._decl_defs[id(node)] = add_def(
                DefSite("local", f"{owner}#{name.text}@{node.location.line}", node.location)
            )
        elif node.type == "enhanced_for_statement":
            owner = _enclosing_key(symbols, node) or "?"
            name = node.child("name")
            if name is not None:
                graph._decl_defs[id(node)] = add_def(
                    DefSite("local", f"{owner}#{name.text}@{node.location.line}", name.location)
                )
        elif node.type == "lambda_expression":
            params = node.child("parameters")
            if params is not None:
                idents = [params] if params.type == "identifier" else [c for c in params.walk() if c.type == "identifier"]
                owner = _enclosing_key(symbols, node) or "?"
                for ident in idents:
                    graph._decl_defs[id(ident)] = add_def(
                        DefSite("parameter", f"{owner}#lambda.{ident.text}@{ident.location.line}", ident.location)
                    )

    getter_of_field: dict[str, list[MethodInfo]] = {}
    for m in symbols.all_methods:
        fq = symbols.getter_fields.get(m.qualified)
        if fq is not None and getter_field_matches(symbols, m, fq):
            getter_of_field.setdefault(fq, []).append(m)

    def ref(site: DefSite | None, node: AstNode, label: str) -> None:
        if site is not None:
            graph.refs.setdefault(site, []).append(Reference(node, label))

    for node in all_nodes:
        if node.type == "identifier" and node.kind == "name-ref":
            res = symbols.resolve_name(node)
            if res is None:
                continue
            if res.kind == "field" and res.field_info is not None:
                ref(graph.field_def(res.field_info.qualified), node, "direct-read")
            elif res.kind in ("local", "parameter") and res.decl is not None:
                ref(graph.decl_def(res.decl), node, "direct-read")
        elif node.type == "field_access":
            f = symbols.resolve_field_access(node)
            if f is not None:
                ref(graph.field_def(f.qualified), node, "direct-read")
        elif node.type in ("method_invocation", "object_creation_expression"):
            targets = symbols.resolve_call(node)
            if targets:
                for m in targets:
                    ref(graph.method_def(m), node, "direct-read")
                    fq = symbols.getter_fields.get(m.qualified)
                    if fq is not None and m in getter_of_field.get(fq, []):
                        ref(graph.field_def(fq), node, "getter-read")
            elif node.type == "method_invocation":
                site = add_def(graph.library_def(node.child("name").text))
                ref(site, node, "direct-read")
        if _is_literal_node(node):
            site = add_def(graph.literal_def(node.text))
            ref(site, node, "direct-read")

    for site, references in graph.refs.items():
        seen_refs = set()
        unique = []
        for r in references:
            k = (id(r.node), r.label)
            if k not in seen_refs:
                seen_refs.add(k)
                unique.append(r)
        unique.sort(key=lambda r: (r.node.location, r.label))
        graph.refs[site] = unique
        for r in unique:
            if id(r.node) not in graph.flows:
                graph.flows[id(r.node)] = _sink(r.node, symbols, graph)
    return graph


def getter_field_matches(symbols: SymbolTable, method: MethodInfo, qualified_field: str) -> bool:
    return symbols.getter_fields.get(method.qualified) == qualified_field


def _statement_closure(node: AstNode) -> Iterator[AstNode]:
    """``node`` and its ancestors up to (and including) the enclosing statement."""
    cur: AstNode | None = node
    while cur is not None:
        yield cur
        if cur.type in STATEMENT_TYPES:
            return
        cur = cur.parent


def forward_slice(graph: DefUseGraph, callgraph: CallGraph | None, seed: DefSite, depth: int = 3) -> Slice:
    """Statements data-dependent on ``seed`` within ``depth`` interprocedural hops."""
    if depth < 0:
        raise SliceError("depth must be >= 0")
    if seed not in graph.defs:
        raise SliceError(f"unknown seed {seed.kind}:{seed.symbol}")
    dist: dict[DefSite, int] = {seed: 0}
    via: dict[DefSite, tuple[str, ...]] = {seed: ()}
    tie = itertools.count()
    heap: list[tuple[int, int, DefSite]] = [(0, next(tie), seed)]
    reached_nodes: dict[int, tuple[AstNode, int, tuple[str, ...]]] = {}
    while heap:
        d, _, site = heapq.heappop(heap)
        if d > dist[site]:
            continue
        for r in graph.refs.get(site, []):
            du = d + r.hops
            if du > depth:
                continue
            chain = via[site] + (r.label,)
            prev = reached_nodes.get(id(r.node))
            if prev is None or du < prev[1]:
                reached_nodes[id(r.node)] = (r.node, du, chain)
            for target, label in graph.flows_from(r.node):
                dt = du + EDGE_HOPS[label]
                if dt > depth or dt >= dist.get(target, depth + 1):
                    continue
                dist[target] = dt
                via[target] = chain + (label,)
                heapq.heappush(heap, (dt, next(tie), target))
    reached: set[Location] = set()
    statements: set[Location] = set()
    paths: dict[Location, tuple[str, ...]] = {}
    used = 0
    for node, d, chain in sorted(reached_nodes.values(), key=lambda t: (t[1], t[0].location, t[2])):
        used = max(used, d)
        for n in _statement_closure(node):
            reached.add(n.location)
            paths.setdefault(n.location, chain)
        statements.add(node.statement().location)
    return Slice(seed, frozenset(reached), used, frozenset(statements), paths)


def intersect(slices: Iterable[Slice]) -> set[Location]:
    slices = list(slices)
    if not slices:
        raise SliceError("intersect needs at least one slice")
    out = set(slices[0].reached)
    for s in slices[1:]:
        out &= s.reached
    return out


# ---------------------------------------------------------------------------
# seed lookup


_KIND_ALIASES = {
    "field-declaration": "field",
    "method-declaration": "method",
    "parameter-definition": "parameter",
    "local-assignment": "local",
    "literal-occurrence": "literal",
    "library-call-site": "library-call",
    "constant": "literal",
}


def normalize_kind(kind: str) -> str:
    kind = kind.strip().lower()
    return _KIND_ALIASES.get(kind, kind)


def seed_at(
    graph: DefUseGraph, file_ref: str, line: int, kind: str | None = None, symbol: str | None = None
) -> DefSite:
    """Find the def declared (or occurring) on ``file:line``."""
    corpus = graph.corpus
    src = corpus.find_file(file_ref)
    if src is None:
        raise SliceError(f"unknown seed: no file {file_ref}")
    kinds = [normalize_kind(kind)] if kind else ["field", "method", "parameter", "local", "literal", "library-call"]
    for k in kinds:
        if k not in DEF_KINDS:
            raise SliceError(f"unknown seed kind {kind!r}")
    nodes = corpus.nodes_on_line(src.file_id, line)
    for k in kinds:
        for node in nodes:
            site = _site_for(graph, node, k, symbol)
            if site is not None:
                return site
    raise SliceError(f"unknown seed {file_ref}:{line}" + (f":{kind}" if kind else "") + (f":{symbol}" if symbol else ""))


def _short(symbol: str) -> str:
    tail = symbol.split("#")[-1].split("@")[0]
    return tail.split(".")[-1]


def _site_for(graph: DefUseGraph, node: AstNode, kind: str, symbol: str | None) -> DefSite | None:
    symbols = graph.symbols

    def ok(name: str, full: str) -> bool:
        return symbol is None or symbol in (name, full) or full.endswith("." + symbol)

    if kind == "field" and node.type in ("field_declaration", "constant_declaration"):
        cls = symbols.class_of(node)
        for d in node.children_by_field("declarator"):
            name = d.child("name").text
            q = f"{cls.name}.{name}" if cls else name
            if ok(name, q) and q in graph._field_defs:
                return graph._field_defs[q]
    if kind == "method" and node.kind == "method-decl":
        m = symbols.method_for_decl(node)
        if m is not None and ok(m.name, m.qualified):
            return graph.method_def(m)
    if kind in ("parameter", "local"):
        site = graph.decl_def(node)
        if site is not None and site.kind == kind and ok(_short(site.symbol), site.symbol):
            return site
    if kind == "literal" and _is_literal_node(node):
        if symbol is None or literal_key(symbol) == literal_key(node.text):
            return graph.literal_def(node.text)
    if kind == "library-call" and node.type == "method_invocation" and not symbols.resolve_call(node):
        name = node.child("name").text
        if symbol is None or symbol == name:
            site = graph.library_def(name)
            return site if site in graph.defs else None
    return None

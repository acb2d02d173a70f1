"""Syntactic recognition of constraint implementation patterns.

Each pattern has a matcher that inspects one *anchor* node and either returns
the bound parts or ``None``.  :func:`match_all` runs the matchers over a
corpus and then applies a single precedence/subsumption pass so that every
anchor carries at most one label and compound patterns absorb the simpler
patterns found inside them.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Iterable

from .catalog import COMPARISON_OPS, CipPattern, builtin_catalog, get_pattern
from .frontend import AstNode, Location, SourceCorpus, SymbolTable, strip_parens, type_name

log = logging.getLogger(__name__)

_CONST_NAME = re.compile(r"^[A-Z][A-Z0-9_]*$")
_SETTER_NAME = re.compile(r"^set[A-Z0-9_]")
_EQUALS = frozenset({"equals", "equalsIgnoreCase"})
_NOT_A_PROPERTY = frozenset({"equals", "equalsIgnoreCase", "startsWith", "endsWith"})
_LITERAL_COLLECTION_CALLS = frozenset({("Arrays", "asList"), ("List", "of"), ("Set", "of"), ("EnumSet", "of"), ("EnumSet", "allOf")})
_ZERO = re.compile(r"^0+(\.0*)?[lLfFdD]?$|^0?\.0+[fFdD]?$")

# Most specific first; one label per anchor node.
PRECEDENCE: tuple[str, ...] = (
    "null-empty check",
    "null-zero check",
    "null-boolean check",
    "equals or chain",
    "binary flag check",
    "cast self-comparison",
    "self comparison",
    "delta check",
    "null check",
    "binary comparison",
    "str starts",
    "str ends",
    "enum valueOf",
    "assign class call",
    "constructor assign",
    "assign constant",
    "setter",
    "constant argument",
    "boolean property",
    "polymorphic method",
    "mod op",
    "return constant",
    "if chain",
    "if-return chain",
    "switch-len char",
    "switch case",
    "iterate-and-check literal",
    "index loop find",
    "override value set",
    "properties file",
)
_RANK = {name: i for i, name in enumerate(PRECEDENCE)}


@dataclass(frozen=True)
class BoundPart:
    role: str
    text: str
    location: Location | None = None
    node: AstNode | None = field(default=None, compare=False, repr=False, hash=False)


PartsBinding = tuple[BoundPart, ...]


@dataclass(frozen=True)
class Span:
    file_id: int
    start: int
    end: int

    @classmethod
    def of(cls, node: AstNode) -> "Span":
        return cls(node.file_id, node.start, node.end)

    def covers(self, node: AstNode) -> bool:
        return self.file_id == node.file_id and self.start <= node.start and node.end <= self.end


@dataclass(frozen=True)
class PatternInstance:
    pattern: str
    location: Location
    binding: PartsBinding
    statement_text: str
    path: str = ""
    covered: tuple[Span, ...] = field(default=(), compare=False, repr=False)
    node: AstNode | None = field(default=None, compare=False, repr=False, hash=False)

    @property
    def parts(self) -> list[str]:
        return [b.text for b in self.binding]

    def key(self) -> tuple:
        return (self.location.file_id, self.location.line, self.location.column, self.pattern)

    def to_json(self) -> dict:
        return {
            "pattern": self.pattern,
            "file": self.path,
            "line": self.location.line,
            "column": self.location.column,
            "parts": self.parts,
            "text": self.statement_text,
        }


# ---------------------------------------------------------------------------
# helpers


def _is_literal(node: AstNode | None) -> bool:
    if node is None:
        return False
    node = strip_parens(node)
    if node.kind == "literal":
        return True
    return (
        node.type == "unary_expression"
        and node.operator in ("-", "+")
        and len(node.children) == 1
        and strip_parens(node.children[0]).kind == "literal"
    )


def _is_null(node: AstNode | None) -> bool:
    return node is not None and strip_parens(node).type == "null_literal"


def _value_literal(node: AstNode | None) -> bool:
    """A literal other than ``null``."""
    return _is_literal(node) and not _is_null(node)


def is_constant(node: AstNode | None) -> bool:
    if node is None:
        return False
    node = strip_parens(node)
    if _is_literal(node):
        return True
    if node.type == "identifier":
        return bool(_CONST_NAME.match(node.text))
    if node.type == "field_access":
        f = node.child("field")
        return f is not None and bool(_CONST_NAME.match(f.text))
    return False


def _is_zero(node: AstNode) -> bool:
    node = strip_parens(node)
    return node.kind == "literal" and bool(_ZERO.match(node.text))


def member_name(node: AstNode) -> str:
    node = strip_parens(node)
    if node.type == "method_invocation":
        return node.child("name").text
    if node.type == "field_access":
        return node.child("field").text
    return node.text


def root_receiver(node: AstNode) -> AstNode:
    """Strip call chains: ``name.toLowerCase().trim()`` -> ``name``."""
    node = strip_parens(node)
    while node.type == "method_invocation" and node.child("object") is not None:
        node = strip_parens(node.child("object"))
    return node


def _args(call: AstNode) -> list[AstNode]:
    a = call.child("arguments")
    return list(a.children) if a is not None else []


def _call_name(node: AstNode) -> str | None:
    if node.type != "method_invocation":
        return None
    n = node.child("name")
    return n.text if n is not None else None


def _operands(node: AstNode) -> tuple[AstNode, AstNode]:
    return node.child("left"), node.child("right")


def _enclosing_expr_parent(node: AstNode) -> AstNode | None:
    """Parent after climbing through parentheses."""
    p = node.parent
    while p is not None and p.type == "parenthesized_expression":
        p = p.parent
    return p


def _negated(node: AstNode) -> bool:
    p = node.parent
    neg = False
    while p is not None and (p.type == "parenthesized_expression" or (p.type == "unary_expression" and p.operator == "!")):
        if p.type == "unary_expression":
            neg = not neg
        p = p.parent
    return neg


def in_boolean_context(node: AstNode) -> bool:
    cur = node
    while cur.parent is not None and (
        cur.parent.type == "parenthesized_expression"
        or (cur.parent.type == "unary_expression" and cur.parent.operator == "!")
    ):
        cur = cur.parent
    p = cur.parent
    if p is None:
        return False
    if p.type == "binary_expression" and p.operator in ("&&", "||"):
        return True
    if cur.field == "condition" and p.type in (
        "if_statement",
        "while_statement",
        "do_statement",
        "for_statement",
        "ternary_expression",
    ):
        return True
    return False


def _comparison(node: AstNode) -> tuple[AstNode, str, AstNode] | None:
    """``(left, op, right)`` for a relational operator or an equals call."""
    node = strip_parens(node)
    if node.type == "binary_expression" and node.operator in COMPARISON_OPS:
        left, right = _operands(node)
        if left is not None and right is not None:
            return left, node.operator, right
        return None
    if _call_name(node) in _EQUALS:
        obj = node.child("object")
        args = _args(node)
        if obj is not None and len(args) == 1:
            return obj, ("!=" if _negated(node) else "=="), args[0]
    return None


def _equality_subjects(expr: AstNode) -> list[str] | None:
    """Candidate subject texts for an equality test against a constant."""
    expr = strip_parens(expr)
    if expr.type == "binary_expression" and expr.operator == "||":
        out: list[str] | None = None
        for side in _operands(expr):
            subj = _equality_subjects(side)
            if subj is None:
                return None
            out = subj if out is None else [s for s in out if s in subj]
        return out
    cmp = _comparison(expr)
    if cmp is None:
        return None
    left, op, right = cmp
    if op not in ("==",) or (expr.type == "method_invocation" and _negated(expr)):
        return None
    lc, rc = is_constant(left), is_constant(right)
    if lc and rc:
        return None
    if rc:
        return [strip_parens(left).text]
    if lc:
        return [strip_parens(right).text]
    return [strip_parens(left).text, strip_parens(right).text]


def _statement_siblings(node: AstNode) -> list[AstNode]:
    if node.parent is None:
        return [node]
    return list(node.parent.children)


def _part(role: str, text: str, node: AstNode | None) -> BoundPart:
    return BoundPart(role, text, node.location if node is not None else None, node)


Match = tuple[PartsBinding, tuple[Span, ...]]


# ---------------------------------------------------------------------------
# per-pattern matchers: (node, symbols) -> Match | None


def _m_boolean_property(node: AstNode, symbols: SymbolTable) -> Match | None:
    if node.type not in ("identifier", "field_access", "method_invocation", "array_access"):
        return None
    if node.type == "identifier" and node.kind != "name-ref":
        return None
    if node.type == "method_invocation" and _call_name(node) in _NOT_A_PROPERTY:
        return None
    if not in_boolean_context(node):
        return None
    return (_part("variable", member_name(node), node),), ()


def _m_binary_comparison(node: AstNode, symbols: SymbolTable) -> Match | None:
    if node.type not in ("binary_expression", "method_invocation"):
        return None
    cmp = _comparison(node)
    if cmp is None:
        return None
    left, op, right = cmp
    if _is_null(left) or _is_null(right):
        return None
    if is_constant(left) and is_constant(right):
        return None
    left, right = strip_parens(left), strip_parens(right)
    return (
        _part("variable", left.text, left),
        BoundPart("operator", op),
        _part("variable", right.text, right),
    ), ()


def _m_constant_argument(node: AstNode, symbols: SymbolTable) -> Match | None:
    if node.type == "method_invocation":
        name = _call_name(node)
        if name in _NOT_A_PROPERTY:
            return None
        method_text = name
        method_node = node.child("name")
    elif node.type == "object_creation_expression":
        method_text = type_name(node.child("type"))
        method_node = node.child("type")
    else:
        return None
    for arg in _args(node):
        if _value_literal(arg):
            arg = strip_parens(arg)
            return (_part("method", method_text, method_node), _part("constant", arg.text, arg)), ()
    return None


def _m_null_check(node: AstNode, symbols: SymbolTable) -> Match | None:
    if node.type != "binary_expression" or node.operator not in ("==", "!="):
        return None
    left, right = _operands(node)
    if _is_null(left) == _is_null(right):
        return None
    var = strip_parens(right if _is_null(left) else left)
    return (_part("variable", var.text, var),), ()


def _null_compound(node: AstNode) -> tuple[AstNode, AstNode] | None:
    if node.type != "binary_expression" or node.operator not in ("&&", "||"):
        return None
    left, right = _operands(node)
    left = strip_parens(left)
    if left.type != "binary_expression" or left.operator not in ("==", "!="):
        return None
    a, b = _operands(left)
    if _is_null(a) == _is_null(b):
        return None
    var = strip_parens(b if _is_null(a) else a)
    return var, strip_parens(right)


def _strip_not(node: AstNode) -> AstNode:
    node = strip_parens(node)
    while node.type == "unary_expression" and node.operator == "!":
        node = strip_parens(node.children[0])
    return node


def _m_null_empty(node: AstNode, symbols: SymbolTable) -> Match | None:
    pair = _null_compound(node)
    if pair is None:
        return None
    var, rest = pair
    rest = _strip_not(rest)
    name = _call_name(rest)
    if name in _EQUALS:
        obj = rest.child("object")
        args = _args(rest)
        if obj is None or len(args) != 1:
            return None
        sides = [strip_parens(obj), strip_parens(args[0])]
        empty = [s for s in sides if s.type == "string_literal" and s.text == '""']
        other = [s for s in sides if not (s.type == "string_literal" and s.text == '""')]
        if len(empty) == 1 and len(other) == 1 and root_receiver(other[0]).text == var.text:
            return (_part("variable", var.text, var),), (Span.of(node),)
        return None
    if name == "isEmpty" and not _args(rest) and rest.child("object") is not None:
        if root_receiver(rest.child("object")).text == var.text:
            return (_part("variable", var.text, var),), (Span.of(node),)
    return None


def _m_null_zero(node: AstNode, symbols: SymbolTable) -> Match | None:
    pair = _null_compound(node)
    if pair is None:
        return None
    var, rest = pair
    if rest.type != "binary_expression" or rest.operator not in COMPARISON_OPS:
        return None
    a, b = (strip_parens(x) for x in _operands(rest))
    if _is_zero(b):
        prop = a
    elif _is_zero(a):
        prop = b
    else:
        return None
    if prop.type == "method_invocation" and prop.child("object") is not None:
        owner = prop.child("object")
    elif prop.type == "field_access":
        owner = prop.child("object")
    else:
        return None
    if root_receiver(owner).text != var.text:
        return None
    return (_part("variable", var.text, var),), (Span.of(node),)


def _m_null_boolean(node: AstNode, symbols: SymbolTable) -> Match | None:
    pair = _null_compound(node)
    if pair is None:
        return None
    var, rest = pair
    rest = _strip_not(rest)
    if rest.type == "method_invocation":
        if _call_name(rest) in _NOT_A_PROPERTY or rest.child("object") is None:
            return None
        owner = rest.child("object")
    elif rest.type == "field_access":
        owner = rest.child("object")
    else:
        return None
    if root_receiver(owner).text != var.text:
        return None
    return (_part("variable", var.text, var),), (Span.of(node),)


def _m_self_comparison(node: AstNode, symbols: SymbolTable) -> Match | None:
    if node.type != "binary_expression" or node.operator not in COMPARISON_OPS:
        return None
    left, right = (strip_parens(x) for x in _operands(node))
    if left.text != right.text or is_constant(left):
        return None
    return (_part("variable", left.text, left),), ()


def _local_initializer(ident: AstNode, symbols: SymbolTable) -> tuple[AstNode, AstNode] | None:
    """``(declaration, initializer)`` of the local an identifier refers to."""
    if ident.type != "identifier":
        return None
    res = symbols.resolve_name(ident)
    if res is None or res.kind != "local" or res.decl is None or res.decl.type != "variable_declarator":
        return None
    value = res.decl.child("value")
    if value is None:
        return None
    return res.decl.parent, strip_parens(value)


def _m_delta_check(node: AstNode, symbols: SymbolTable) -> Match | None:
    if node.type != "binary_expression" or node.operator not in COMPARISON_OPS:
        return None
    left, right = (strip_parens(x) for x in _operands(node))
    if _is_zero(right):
        other = left
    elif _is_zero(left):
        other = right
    else:
        return None
    covered: tuple[Span, ...] = ()
    if other.type == "identifier":
        found = _local_initializer(other, symbols)
        if found is None:
            return None
        decl, other = found
        covered = (Span.of(decl),)
    if other.type != "binary_expression" or other.operator != "-":
        return None
    a, b = (strip_parens(x) for x in _operands(other))
    return (_part("variable", member_name(a), a), _part("variable", member_name(b), b)), covered


def _m_cast_self_comparison(node: AstNode, symbols: SymbolTable) -> Match | None:
    if node.type != "binary_expression" or node.operator not in ("==", "!="):
        return None
    left, right = (strip_parens(x) for x in _operands(node))
    for casted, original in ((left, right), (right, left)):
        found = _local_initializer(casted, symbols)
        if found is None:
            continue
        decl, init = found
        if init.type != "cast_expression":
            continue
        inner = init.child("value")
        if inner is not None and strip_parens(inner).text == original.text:
            return (_part("variable", original.text, original),), (Span.of(decl),)
    return None


def _m_binary_flag_check(node: AstNode, symbols: SymbolTable) -> Match | None:
    if node.type != "binary_expression":
        return None
    if node.operator in ("==", "!=", ">"):
        left, right = (strip_parens(x) for x in _operands(node))
        for masked, other in ((left, right), (right, left)):
            if masked.type == "binary_expression" and masked.operator == "&" and is_constant(other):
                a, b = (strip_parens(x) for x in _operands(masked))
                if is_constant(b) and not is_constant(a):
                    var, const = a, b
                elif is_constant(a) and not is_constant(b):
                    var, const = b, a
                else:
                    continue
                return (_part("variable", var.text, var), _part("constant", const.text, const)), (Span.of(node),)
        return None
    if node.operator == "&":
        # `flag & MASK == MASK` parses as `flag & (MASK == MASK)`
        left, right = (strip_parens(x) for x in _operands(node))
        if right.type == "binary_expression" and right.operator in ("==", "!=") and not is_constant(left):
            a, b = (strip_parens(x) for x in _operands(right))
            if is_constant(a) and a.text == b.text:
                return (_part("variable", left.text, left), _part("constant", a.text, a)), (Span.of(node),)
    return None


def _or_operands(node: AstNode) -> list[AstNode]:
    node = strip_parens(node)
    if node.type == "binary_expression" and node.operator == "||":
        left, right = _operands(node)
        return _or_operands(left) + _or_operands(right)
    return [node]


def _m_equals_or_chain(node: AstNode, symbols: SymbolTable) -> Match | None:
    if node.type != "binary_expression" or node.operator != "||":
        return None
    parent = _enclosing_expr_parent(node)
    if parent is not None and parent.type == "binary_expression" and parent.operator == "||":
        return None
    subject: AstNode | None = None
    for op in _or_operands(node):
        cmp = _comparison(op)
        if cmp is None or cmp[1] != "==":
            return None
        left, _, right = cmp
        left, right = strip_parens(left), strip_parens(right)
        if _is_null(left) or _is_null(right):
            return None
        if is_constant(right) and not is_constant(left):
            subj = left
        elif is_constant(left) and not is_constant(right):
            subj = right
        else:
            return None
        if subject is None:
            subject = subj
        elif subj.text != subject.text:
            return None
    return (_part("variable", subject.text, subject),), (Span.of(node),)


def _m_mod_op(node: AstNode, symbols: SymbolTable) -> Match | None:
    if node.type != "binary_expression" or node.operator != "%":
        return None
    left = strip_parens(node.child("left"))
    return (_part("variable", left.text, left),), ()


def _m_assign_class_call(node: AstNode, symbols: SymbolTable) -> Match | None:
    if node.type != "assignment_expression" or node.operator != "=":
        return None
    right = strip_parens(node.child("right"))
    if right.type != "method_invocation":
        return None
    obj = right.child("object")
    if obj is None or strip_parens(obj).type != "class_literal":
        return None
    left = node.child("left")
    return (_part("variable", left.text, left),), ()


def _m_assign_constant(node: AstNode, symbols: SymbolTable) -> Match | None:
    if node.type == "assignment_expression":
        if node.operator != "=" or not _value_literal(node.child("right")):
            return None
        left, right = node.child("left"), strip_parens(node.child("right"))
        return (_part("variable", left.text, left), _part("constant", right.text, right)), ()
    if node.type in ("field_declaration", "constant_declaration"):
        for d in node.children_by_field("declarator"):
            value = d.child("value")
            if _value_literal(value):
                name = d.child("name")
                value = strip_parens(value)
                return (_part("variable", name.text, name), _part("constant", value.text, value)), ()
    return None


def _field_target(left: AstNode, symbols: SymbolTable):
    left = strip_parens(left)
    if left.type == "field_access":
        obj = left.child("object")
        if obj is not None and obj.type == "this":
            return symbols.resolve_field_access(left)
        return None
    if left.type == "identifier":
        res = symbols.resolve_name(left)
        if res is not None and res.kind == "field":
            return res.field_info
    return None


def _m_constructor_assign(node: AstNode, symbols: SymbolTable) -> Match | None:
    if node.type != "assignment_expression" or node.operator != "=":
        return None
    method = symbols.method_of(node)
    if method is None or not method.is_constructor:
        return None
    right = node.child("right")
    if right is None or _is_literal(right):
        return None
    finfo = _field_target(node.child("left"), symbols)
    if finfo is None:
        return None
    params = {p[0] for p in method.params}
    for ref in right.walk():
        if ref.kind == "name-ref" and ref.text in params:
            res = symbols.resolve_name(ref)
            if res is not None and res.kind == "parameter":
                return None
    left = strip_parens(node.child("left"))
    name_node = left.child("field") if left.type == "field_access" else left
    return (_part("field", finfo.name, name_node),), ()


def _assigns_field(method, symbols: SymbolTable) -> bool:
    body = method.body
    if body is None:
        return False
    for n in body.walk():
        if n.type == "assignment_expression" and _field_target(n.child("left"), symbols) is not None:
            return True
    return False


def _m_setter(node: AstNode, symbols: SymbolTable) -> Match | None:
    name = _call_name(node)
    if name is None or not _SETTER_NAME.match(name):
        return None
    args = _args(node)
    if len(args) != 1 or _is_literal(args[0]):
        return None
    targets = symbols.static_targets(node)
    if targets and not any(_assigns_field(m, symbols) for m in targets):
        return None
    obj = node.child("object")
    method_text = f"{obj.text}.{name}" if obj is not None else name
    arg = strip_parens(args[0])
    return (_part("method", method_text, node.child("name")), _part("variable", arg.text, arg)), ()


def _m_polymorphic_method(node: AstNode, symbols: SymbolTable) -> Match | None:
    if node.type != "method_invocation":
        return None
    targets = symbols.static_targets(node)
    abstract = [m for m in targets if m.is_abstract]
    if not abstract:
        return None
    m = abstract[0]
    return (_part("method", f"{m.owner}.{m.name}()", node.child("name")),), ()


def _m_str_call(method: str) -> Callable[[AstNode, SymbolTable], Match | None]:
    def matcher(node: AstNode, symbols: SymbolTable) -> Match | None:
        if _call_name(node) != method or node.child("object") is None or len(_args(node)) != 1:
            return None
        root = root_receiver(node.child("object"))
        return (_part("variable", root.text, root),), ()

    return matcher


def _m_enum_value_of(node: AstNode, symbols: SymbolTable) -> Match | None:
    if _call_name(node) != "valueOf":
        return None
    obj = node.child("object")
    args = _args(node)
    if obj is None or len(args) != 1:
        return None
    if obj.text.split(".")[-1] not in symbols.enums:
        return None
    arg = strip_parens(args[0])
    return (_part("variable", arg.text, arg),), (Span.of(node),)


def _m_return_constant(node: AstNode, symbols: SymbolTable) -> Match | None:
    if node.type != "return_statement" or len(node.children) != 1:
        return None
    value = node.children[0]
    if not _value_literal(value):
        return None
    value = strip_parens(value)
    return (_part("constant", value.text, value),), ()


def _switch_parts(node: AstNode) -> tuple[AstNode, AstNode] | None:
    if node.type not in ("switch_expression", "switch_statement"):
        return None
    cond = node.child("condition")
    body = node.child("body")
    if cond is None or body is None:
        return None
    return strip_parens(cond), body


def _m_switch_len_char(node: AstNode, symbols: SymbolTable) -> Match | None:
    parts = _switch_parts(node)
    if parts is None:
        return None
    cond, body = parts
    if _call_name(cond) != "length" or _args(cond) or cond.child("object") is None:
        return None
    if not any(_call_name(n) == "charAt" for n in body.walk()):
        return None
    root = root_receiver(cond.child("object"))
    return (_part("variable", root.text, root),), (Span.of(node),)


def _m_switch_case(node: AstNode, symbols: SymbolTable) -> Match | None:
    parts = _switch_parts(node)
    if parts is None:
        return None
    cond, body = parts
    if cond.type not in ("identifier", "field_access"):
        return None
    labels = [n for n in body.walk() if n.type == "switch_label"]
    symbolic = [
        c for lab in labels for c in lab.children if not _is_literal(c)
    ]
    if not symbolic:
        return None
    covered = (Span.of(node.child("condition")),) + tuple(Span.of(lab) for lab in labels)
    return (_part("variable", cond.text, cond),), covered


def _m_override_value_set(node: AstNode, symbols: SymbolTable) -> Match | None:
    if node.type != "method_declaration":
        return None
    method = symbols.method_for_decl(node)
    if method is None or not method.is_abstract:
        return None
    overrides = symbols.overrides_of(method)
    if not overrides:
        return None
    covered = []
    for o in overrides:
        body = o.body
        if body is None or len(body.children) != 1:
            return None
        ret = body.children[0]
        if ret.type != "return_statement" or len(ret.children) != 1 or not _value_literal(ret.children[0]):
            return None
        covered.append(Span.of(ret))
    return (_part("method", method.name, node.child("name")),), tuple(covered)


def _literal_collection(expr: AstNode, symbols: SymbolTable, depth: int = 0) -> bool:
    expr = strip_parens(expr)
    if expr.type == "array_initializer":
        return True
    if expr.type == "array_creation_expression":
        return any(c.type == "array_initializer" for c in expr.children)
    if expr.type == "method_invocation":
        name = _call_name(expr)
        obj = expr.child("object")
        if name == "values" and not _args(expr) and obj is not None:
            return True
        if obj is not None and (obj.text.split(".")[-1], name) in _LITERAL_COLLECTION_CALLS:
            return True
        return False
    if expr.type == "identifier" and depth == 0:
        res = symbols.resolve_name(expr)
        if res is None:
            return False
        if res.kind == "local" and res.decl is not None and res.decl.type == "variable_declarator":
            value = res.decl.child("value")
            return value is not None and _literal_collection(value, symbols, 1)
        if res.kind == "field" and res.field_info is not None:
            value = res.field_info.initializer
            return value is not None and _literal_collection(value, symbols, 1)
    return False


def _mentions(node: AstNode, name: str) -> bool:
    return any(n.kind == "name-ref" and n.text == name for n in node.walk())


def _m_iterate_and_check(node: AstNode, symbols: SymbolTable) -> Match | None:
    if node.type != "enhanced_for_statement":
        return None
    var = node.child("name")
    coll = node.child("value")
    body = node.child("body")
    if var is None or coll is None or body is None or not _literal_collection(coll, symbols):
        return None
    for n in body.walk():
        cmp = _comparison(n) if n.type in ("binary_expression", "method_invocation") else None
        if cmp is None or cmp[1] != "==":
            continue
        left, _, right = (strip_parens(x) if isinstance(x, AstNode) else x for x in cmp)
        lm, rm = _mentions(left, var.text), _mentions(right, var.text)
        if lm == rm:
            continue
        subject = right if lm else left
        coll = strip_parens(coll)
        return (_part("variable", subject.text, subject), _part("collection", coll.text, coll)), (Span.of(node),)
    return None


def _returns(stmt: AstNode | None, text: str | None = None) -> bool:
    if stmt is None:
        return False
    if stmt.type == "block" and len(stmt.children) == 1:
        stmt = stmt.children[0]
    if stmt.type != "return_statement":
        return False
    if text is None:
        return True
    return len(stmt.children) == 1 and strip_parens(stmt.children[0]).text == text


def _m_index_loop_find(node: AstNode, symbols: SymbolTable) -> Match | None:
    if node.type != "for_statement":
        return None
    init = node.child("init")
    body = node.child("body")
    if init is None or init.type != "local_variable_declaration" or body is None:
        return None
    decls = init.children_by_field("declarator")
    if len(decls) != 1 or decls[0].child("name") is None:
        return None
    index = decls[0].child("name").text
    siblings = _statement_siblings(node)
    pos = next(i for i, s in enumerate(siblings) if s is node)
    if pos + 1 >= len(siblings):
        return None
    trailer = siblings[pos + 1]
    if trailer.type != "return_statement" or len(trailer.children) != 1 or strip_parens(trailer.children[0]).text.replace(" ", "") != "-1":
        return None
    for n in body.walk():
        if n.type != "if_statement" or not _returns(n.child("consequence"), index):
            continue
        cmp = _comparison(n.child("condition"))
        if cmp is None or cmp[1] != "==":
            continue
        left, right = strip_parens(cmp[0]), strip_parens(cmp[2])
        for elem, other in ((left, right), (right, left)):
            coll = None
            if elem.type == "array_access" and elem.child("index") is not None and elem.child("index").text == index:
                coll = strip_parens(elem.child("array"))
            elif _call_name(elem) == "get" and len(_args(elem)) == 1 and _args(elem)[0].text == index:
                coll = strip_parens(elem.child("object"))
            if coll is not None and not _mentions(other, index):
                return (
                    _part("collection", coll.text, coll),
                    _part("variable", other.text, other),
                ), (Span.of(node), Span.of(trailer))
    return None


def _if_chain_root(node: AstNode) -> bool:
    return not (node.field == "alternative" and node.parent is not None and node.parent.type == "if_statement")


def _pick_subject(candidates: list[str], expr: AstNode) -> AstNode | None:
    for n in strip_parens(expr).walk():
        if n.text == candidates[0]:
            return n
    return None


def _m_if_chain(node: AstNode, symbols: SymbolTable) -> Match | None:
    if node.type != "if_statement" or not _if_chain_root(node):
        return None
    conds = []
    cur = node
    while True:
        conds.append(cur.child("condition"))
        alt = cur.child("alternative")
        if alt is None or alt.type != "if_statement":
            break
        cur = alt
    if len(conds) < 2:
        return None
    subjects: list[str] | None = None
    for c in conds:
        s = _equality_subjects(c)
        if not s:
            return None
        subjects = s if subjects is None else [x for x in subjects if x in s]
        if not subjects:
            return None
    subj = _pick_subject(subjects, conds[0])
    return (_part("variable", subjects[0], subj),), tuple(Span.of(c) for c in conds)


def _if_return(stmt: AstNode) -> list[str] | None:
    if stmt.type != "if_statement" or stmt.child("alternative") is not None:
        return None
    if not _returns(stmt.child("consequence")):
        return None
    return _equality_subjects(stmt.child("condition"))


def _m_if_return_chain(node: AstNode, symbols: SymbolTable) -> Match | None:
    first = _if_return(node)
    if not first:
        return None
    siblings = _statement_siblings(node)
    pos = next(i for i, s in enumerate(siblings) if s is node)
    if pos > 0:
        prev = _if_return(siblings[pos - 1])
        if prev and any(x in prev for x in first):
            return None
    subjects = first
    chain = [node]
    for sib in siblings[pos + 1:]:
        s = _if_return(sib)
        if not s:
            break
        common = [x for x in subjects if x in s]
        if not common:
            break
        subjects = common
        chain.append(sib)
    if len(chain) < 2:
        return None
    subj = _pick_subject(subjects, node.child("condition"))
    return (_part("variable", subjects[0], subj),), tuple(Span.of(c) for c in chain)


MATCHERS: dict[str, Callable[[AstNode, SymbolTable], Match | None]] = {
    "boolean property": _m_boolean_property,
    "binary comparison": _m_binary_comparison,
    "constant argument": _m_constant_argument,
    "null check": _m_null_check,
    "assign constant": _m_assign_constant,
    "binary flag check": _m_binary_flag_check,
    "if chain": _m_if_chain,
    "equals or chain": _m_equals_or_chain,
    "polymorphic method": _m_polymorphic_method,
    "null-empty check": _m_null_empty,
    "null-zero check": _m_null_zero,
    "return constant": _m_return_constant,
    "switch-len char": _m_switch_len_char,
    "self comparison": _m_self_comparison,
    "str starts": _m_str_call("startsWith"),
    "null-boolean check": _m_null_boolean,
    "setter": _m_setter,
    "constructor assign": _m_constructor_assign,
    "delta check": _m_delta_check,
    "enum valueOf": _m_enum_value_of,
    "iterate-and-check literal": _m_iterate_and_check,
    "mod op": _m_mod_op,
    "str ends": _m_str_call("endsWith"),
    "switch case": _m_switch_case,
    "override value set": _m_override_value_set,
    "cast self-comparison": _m_cast_self_comparison,
    "index loop find": _m_index_loop_find,
    "assign class call": _m_assign_class_call,
    "if-return chain": _m_if_return_chain,
}

# Grammar types each matcher can anchor on; used only to skip hopeless calls.
_ANCHORS: dict[str, frozenset[str]] = {
    "boolean property": frozenset({"identifier", "field_access", "method_invocation", "array_access"}),
    "binary comparison": frozenset({"binary_expression", "method_invocation"}),
    "constant argument": frozenset({"method_invocation", "object_creation_expression"}),
    "null check": frozenset({"binary_expression"}),
    "assign constant": frozenset({"assignment_expression", "field_declaration", "constant_declaration"}),
    "binary flag check": frozenset({"binary_expression"}),
    "if chain": frozenset({"if_statement"}),
    "equals or chain": frozenset({"binary_expression"}),
    "polymorphic method": frozenset({"method_invocation"}),
    "null-empty check": frozenset({"binary_expression"}),
    "null-zero check": frozenset({"binary_expression"}),
    "return constant": frozenset({"return_statement"}),
    "switch-len char": frozenset({"switch_expression", "switch_statement"}),
    "self comparison": frozenset({"binary_expression"}),
    "str starts": frozenset({"method_invocation"}),
    "null-boolean check": frozenset({"binary_expression"}),
    "setter": frozenset({"method_invocation"}),
    "constructor assign": frozenset({"assignment_expression"}),
    "delta check": frozenset({"binary_expression"}),
    "enum valueOf": frozenset({"method_invocation"}),
    "iterate-and-check literal": frozenset({"enhanced_for_statement"}),
    "mod op": frozenset({"binary_expression"}),
    "str ends": frozenset({"method_invocation"}),
    "switch case": frozenset({"switch_expression", "switch_statement"}),
    "override value set": frozenset({"method_declaration"}),
    "cast self-comparison": frozenset({"binary_expression"}),
    "index loop find": frozenset({"for_statement"}),
    "assign class call": frozenset({"assignment_expression"}),
    "if-return chain": frozenset({"if_statement"}),
}

_PATTERNS_BY_ANCHOR: dict[str, list[str]] = {}
for _name, _types in _ANCHORS.items():
    for _t in _types:
        _PATTERNS_BY_ANCHOR.setdefault(_t, []).append(_name)


def _raw_match(node: AstNode, name: str, symbols: SymbolTable) -> Match | None:
    matcher = MATCHERS.get(name)
    if matcher is None:
        return None
    return matcher(node, symbols)


def match_statement(node: AstNode, pattern: CipPattern | str, symbols: SymbolTable) -> PartsBinding | None:
    """Bound parts if ``node`` is an instance of ``pattern`` (before precedence)."""
    name = pattern if isinstance(pattern, str) else pattern.name
    found = _raw_match(node, name, symbols)
    return found[0] if found is not None else None


def _instance(name: str, node: AstNode, found: Match, corpus: SourceCorpus) -> PatternInstance:
    binding, covered = found
    return PatternInstance(
        pattern=name,
        location=node.location,
        binding=binding,
        statement_text=node.text,
        path=corpus.files[node.file_id].path if node.file_id < len(corpus.files) else "",
        covered=covered,
        node=node,
    )


def resolve_conflicts(candidates: Iterable[PatternInstance]) -> list[PatternInstance]:
    """Keep the highest-precedence label per anchor, then drop subsumed anchors."""
    best: dict[tuple, PatternInstance] = {}
    for inst in candidates:
        key = (inst.location, inst.node.type if inst.node is not None else None)
        cur = best.get(key)
        if cur is None or _RANK[inst.pattern] < _RANK[cur.pattern]:
            best[key] = inst
    winners = list(best.values())
    spans = [(inst, span) for inst in winners for span in inst.covered]
    kept = []
    for inst in winners:
        subsumed = False
        for owner, span in spans:
            if owner is inst or inst.node is None:
                continue
            if span.covers(inst.node) and not (
                owner.node is not None and owner.node.start == inst.node.start and owner.node.end == inst.node.end
                and _RANK[owner.pattern] > _RANK[inst.pattern]
            ):
                subsumed = True
                break
        if not subsumed:
            kept.append(inst)
    kept.sort(key=lambda i: (i.location.file_id, i.location.line, i.pattern, i.location.column))
    return kept


def _all_candidates(corpus: SourceCorpus, symbols: SymbolTable) -> list[PatternInstance]:
    out = []
    for node in corpus.nodes():
        for name in _PATTERNS_BY_ANCHOR.get(node.type, ()):
            found = _raw_match(node, name, symbols)
            if found is not None:
                out.append(_instance(name, node, found, corpus))
    return out


def match_all(
    corpus: SourceCorpus, patterns: Iterable[CipPattern | str] | None, symbols: SymbolTable
) -> list[PatternInstance]:
    """Every instance of ``patterns`` (all when ``None``) after precedence filtering."""
    wanted = None if patterns is None else {p if isinstance(p, str) else p.name for p in patterns}
    result = resolve_conflicts(_all_candidates(corpus, symbols))
    if wanted is None:
        return result
    return [i for i in result if i.pattern in wanted]


def brute_force_match(corpus: SourceCorpus, symbols: SymbolTable) -> list[PatternInstance]:
    """Reference implementation: every node against every pattern."""
    out = []
    for node in corpus.nodes():
        for p in builtin_catalog():
            found = _raw_match(node, p.name, symbols)
            if found is not None:
                out.append(_instance(p.name, node, found, corpus))
    return resolve_conflicts(out)


def match_properties_file(path: str | Path, content: str | bytes) -> list[PatternInstance]:
    """One ``properties file`` instance per ``key=value`` line."""
    if isinstance(content, bytes):
        try:
            content = content.decode("utf-8")
        except UnicodeDecodeError:
            log.warning("%s: not valid UTF-8, skipped", path)
            return []
    out = []
    for lineno, raw in enumerate(content.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#") or line.startswith("!") or "=" not in line:
            continue
        key, value = line.split("=", 1)
        key = key.strip()
        if not key:
            continue
        col = raw.index(key[0]) + 1 if key else 1
        loc = Location(-1, lineno, col, lineno, len(raw) + 1)
        out.append(
            PatternInstance(
                pattern="properties file",
                location=loc,
                binding=(BoundPart("constant", key, loc),),
                statement_text=line,
                path=str(path),
            )
        )
    return out


def property_value(instance: PatternInstance) -> str:
    return instance.statement_text.split("=", 1)[1].strip()


def pattern_of(name: str) -> CipPattern:
    return get_pattern(name)

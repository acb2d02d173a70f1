"""Constraint records, simplified-expression parsing and type classification."""

from __future__ import annotations

import csv
import json
import logging
import re
from dataclasses import dataclass, field
from pathlib import Path

log = logging.getLogger(__name__)

CONSTRAINT_TYPES = ("categorical-value", "concrete-value", "dual-value-comparison", "value-comparison")

_OP_ALIASES = {
    ">": ">",
    ">=": ">=",
    "≥": ">=",
    "<": "<",
    "<=": "<=",
    "≤": "<=",
    "=": "==",
    "==": "==",
    "!=": "!=",
    "≠": "!=",
    "<>": "!=",
}
_OP_PATTERN = re.compile(r"(>=|<=|!=|==|<>|≥|≤|≠|>|<|=)")
_MEMBERSHIP = re.compile(r"^(?P<attr>.+?)\s*(?:\bin\b|∈)\s*\{(?P<labels>[^{}]*)\}$", re.IGNORECASE)
_IS_FORM = re.compile(r"^(?P<attr>.+?)\s+is\s+(?P<neg>not\s+)?(?P<value>.+)$", re.IGNORECASE)
_NOT_FORM = re.compile(r"^(?:not\s+|!\s*)(?P<attr>.+)$", re.IGNORECASE)
_ATTRIBUTE = re.compile(r"^[A-Za-z_$][\w$.\- ]*$")
_NUMBER = re.compile(r"^[+-]?(\d+(\.\d*)?|\.\d+)([eE][+-]?\d+)?%?$")
_DATE = re.compile(r"^\d{4}-\d{2}-\d{2}$")
_SPECIAL_NUMBERS = {"nan", "infinity", "+infinity", "-infinity", "∞", "+∞", "-∞", "inf", "+inf", "-inf"}


class ConstraintParseError(ValueError):
    """Raised for simplified expressions outside the supported grammar."""


class ConstraintFileError(Exception):
    """Fatal problem with a constraint file (missing file, duplicate id)."""


@dataclass(frozen=True)
class Operand:
    text: str
    const_kind: str | None = None  # number | string | boolean | null | date | special

    @property
    def is_constant(self) -> bool:
        return self.const_kind is not None


@dataclass(frozen=True)
class Comparison:
    attribute: str
    op: str
    operand: Operand


@dataclass(frozen=True)
class Membership:
    attribute: str
    labels: tuple[str, ...]


@dataclass(frozen=True)
class AssignmentForm:
    attribute: str
    value: Operand


@dataclass(frozen=True)
class BooleanForm:
    attribute: str
    polarity: bool


ConstraintExpr = Comparison | Membership | AssignmentForm | BooleanForm


def normalize_attribute(text: str) -> str:
    return " ".join(text.split())


def attribute_key(text: str) -> str:
    """Case-insensitive matching key for attribute names."""
    return normalize_attribute(text).casefold()


def parse_operand(text: str) -> Operand:
    text = text.strip()
    low = text.casefold()
    if low in ("true", "false"):
        return Operand(low, "boolean")
    if low in ("null", "not-null", "not null", "nil"):
        return Operand("not-null" if low.startswith("not") else "null", "null")
    if _NUMBER.match(text):
        return Operand(text, "number")
    if low in _SPECIAL_NUMBERS:
        return Operand(text, "special")
    if _DATE.match(text):
        return Operand(text, "date")
    if len(text) >= 2 and text[0] == text[-1] and text[0] in "\"'":
        return Operand(text, "string")
    return Operand(normalize_attribute(text))


def _boolean_or_none(operand: Operand) -> bool | None:
    if operand.const_kind == "boolean":
        return operand.text == "true"
    return None


def parse_constraint_expr(text: str) -> ConstraintExpr:
    if text is None or not text.strip():
        raise ConstraintParseError("unrecognized constraint form: empty expression")
    raw = " ".join(text.split())

    m = _MEMBERSHIP.match(raw)
    if m:
        labels = tuple(l.strip() for l in m.group("labels").split(",") if l.strip())
        if len(labels) < 2:
            raise ConstraintParseError(f"unrecognized constraint form: {text!r} (membership needs >= 2 labels)")
        return Membership(normalize_attribute(m.group("attr")), labels)

    m = _OP_PATTERN.search(raw)
    if m:
        attr = raw[: m.start()].strip()
        rhs = raw[m.end():].strip()
        if not attr or not rhs:
            raise ConstraintParseError(f"unrecognized constraint form: {text!r}")
        op = _OP_ALIASES[m.group(1)]
        operand = parse_operand(rhs)
        polarity = _boolean_or_none(operand)
        if polarity is not None and op in ("==", "!="):
            return BooleanForm(normalize_attribute(attr), polarity if op == "==" else not polarity)
        return Comparison(normalize_attribute(attr), op, operand)

    m = _IS_FORM.match(raw)
    if m:
        attr = normalize_attribute(m.group("attr"))
        operand = parse_operand(m.group("value"))
        negated = m.group("neg") is not None
        if operand.const_kind == "null":
            op = "!=" if negated else "=="
            return Comparison(attr, op, operand)
        polarity = _boolean_or_none(operand)
        if polarity is not None:
            return BooleanForm(attr, polarity != negated)
        if negated:
            return Comparison(attr, "!=", operand)
        return AssignmentForm(attr, operand)

    m = _NOT_FORM.match(raw)
    if m and _ATTRIBUTE.match(m.group("attr")):
        return BooleanForm(normalize_attribute(m.group("attr")), False)
    if _ATTRIBUTE.match(raw):
        return BooleanForm(normalize_attribute(raw), True)
    raise ConstraintParseError(f"unrecognized constraint form: {text!r}")


def classify(expr: ConstraintExpr) -> str:
    if isinstance(expr, Membership):
        return "categorical-value"
    if isinstance(expr, AssignmentForm):
        return "concrete-value"
    if isinstance(expr, BooleanForm):
        return "dual-value-comparison"
    if expr.op in ("==", "!=") and expr.operand.const_kind in ("boolean", "null"):
        return "dual-value-comparison"
    return "value-comparison"


def expr_operator(expr: ConstraintExpr) -> str | None:
    """Comparison operator implied by an expression, if any."""
    if isinstance(expr, Comparison):
        return expr.op
    return None


def render_expr(expr: ConstraintExpr) -> str:
    if isinstance(expr, Membership):
        return f"{expr.attribute} in {{{', '.join(expr.labels)}}}"
    if isinstance(expr, AssignmentForm):
        return f"{expr.attribute} is {expr.value.text}"
    if isinstance(expr, BooleanForm):
        return f"{expr.attribute} == {'true' if expr.polarity else 'false'}"
    return f"{expr.attribute} {expr.op} {expr.operand.text}"


# ---------------------------------------------------------------------------
# records


@dataclass(frozen=True)
class SeedRef:
    file: str
    line: int
    kind: str
    symbol: str | None = None

    @classmethod
    def parse(cls, text: str) -> "SeedRef":
        parts = text.strip().split(":")
        if len(parts) < 3:
            raise ValueError(f"seed {text!r} is not file:line:kind[:symbol]")
        file, line, kind = parts[0], parts[1], parts[2]
        symbol = ":".join(parts[3:]) or None
        return cls(file, int(line), kind, symbol)

    @classmethod
    def from_json(cls, obj: dict) -> "SeedRef":
        return cls(str(obj["file"]), int(obj["line"]), str(obj["kind"]), obj.get("symbol"))

    def to_json(self) -> dict:
        out = {"file": self.file, "line": self.line, "kind": self.kind}
        if self.symbol is not None:
            out["symbol"] = self.symbol
        return out


@dataclass(frozen=True)
class EnforcingRef:
    file: str
    line: int
    pattern: str | None = None

    @classmethod
    def parse(cls, text: str) -> "EnforcingRef":
        parts = text.strip().split(":")
        if len(parts) < 2:
            raise ValueError(f"enforcing location {text!r} is not file:line[:pattern]")
        return cls(parts[0], int(parts[1]), ":".join(parts[2:]) or None)

    @classmethod
    def from_json(cls, obj: dict) -> "EnforcingRef":
        return cls(str(obj["file"]), int(obj["line"]), obj.get("pattern"))


@dataclass(frozen=True)
class ConstraintRecord:
    id: str
    system: str
    description: str
    simplified: str
    scenario: str
    seeds: tuple[SeedRef, ...]
    manual_pattern: str | None = None
    enforcing: EnforcingRef | None = None
    expr: ConstraintExpr | None = field(default=None, compare=False)

    @property
    def constraint_type(self) -> str:
        return classify(self.expr)


def _record(obj: dict, where: str, diagnostics: list[str]) -> ConstraintRecord | None:
    def skip(msg: str) -> None:
        diagnostics.append(f"{where}: {msg}")
        log.warning("%s: %s", where, msg)

    cid = str(obj.get("id") or "").strip()
    if not cid:
        skip("missing id")
        return None
    simplified = str(obj.get("simplified") or "").strip()
    if not simplified:
        skip(f"constraint {cid}: missing simplified expression")
        return None
    try:
        expr = parse_constraint_expr(simplified)
    except ConstraintParseError as exc:
        skip(f"constraint {cid}: {exc}")
        return None
    try:
        raw_seeds = obj.get("seeds") or []
        if isinstance(raw_seeds, str):
            seeds = tuple(SeedRef.parse(s) for s in raw_seeds.split(";") if s.strip())
        else:
            seeds = tuple(SeedRef.from_json(s) if isinstance(s, dict) else SeedRef.parse(s) for s in raw_seeds)
        enforcing = obj.get("enforcing") or None
        if isinstance(enforcing, str):
            enforcing = EnforcingRef.parse(enforcing)
        elif isinstance(enforcing, dict):
            enforcing = EnforcingRef.from_json(enforcing)
    except (ValueError, KeyError, TypeError) as exc:
        skip(f"constraint {cid}: {exc}")
        return None
    return ConstraintRecord(
        id=cid,
        system=str(obj.get("system") or ""),
        description=str(obj.get("description") or ""),
        simplified=simplified,
        scenario=str(obj.get("scenario") or ""),
        seeds=seeds,
        manual_pattern=(str(obj["manual_pattern"]).strip() or None) if obj.get("manual_pattern") else None,
        enforcing=enforcing,
        expr=expr,
    )


def load_constraints(
    path: str | Path, fmt: str | None = None, diagnostics: list[str] | None = None
) -> list[ConstraintRecord]:
    """Read constraint records from JSON or CSV; malformed rows are skipped."""
    path = Path(path)
    if diagnostics is None:
        diagnostics = []
    try:
        text = path.read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise ConstraintFileError(f"{path}: {exc}") from exc
    fmt = (fmt or ("csv" if path.suffix.lower() == ".csv" else "json")).lower()
    rows: list[tuple[str, dict]] = []
    if not text.strip():
        return []
    if fmt == "json":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConstraintFileError(f"{path}: invalid JSON ({exc})") from exc
        if isinstance(data, dict):
            data = data.get("constraints", [])
        if not isinstance(data, list):
            raise ConstraintFileError(f"{path}: expected a list of constraints")
        for i, obj in enumerate(data):
            if not isinstance(obj, dict):
                diagnostics.append(f"{path}:{i + 1}: not an object")
                continue
            rows.append((f"{path}:{i + 1}", obj))
    elif fmt == "csv":
        reader = csv.DictReader(text.splitlines())
        for i, obj in enumerate(reader, start=2):
            rows.append((f"{path}:{i}", {k.strip(): v for k, v in obj.items() if k is not None}))
    else:
        raise ConstraintFileError(f"unsupported constraint format {fmt!r}")

    records: list[ConstraintRecord] = []
    seen: set[str] = set()
    for where, obj in rows:
        rec = _record(obj, where, diagnostics)
        if rec is None:
            continue
        if rec.id in seen:
            raise ConstraintFileError(f"{where}: duplicate constraint id {rec.id!r}")
        seen.add(rec.id)
        records.append(rec)
    return records

"""Built-in catalog of constraint implementation patterns."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

STATEMENT_TYPES = (
    "boolean-expression",
    "relational-expression",
    "arithmetic-expression",
    "method-call",
    "assignment",
    "return-statement",
    "if-statement",
    "switch-statement",
    "loop-statement",
    "method-definition",
    "file-line",
)

PART_ROLES = ("variable", "constant", "method", "field", "collection", "operator")

COMPARISON_OPS = (">", ">=", "<", "<=", "==", "!=")


@dataclass(frozen=True)
class StatementType:
    """A simple statement type, or a compound of several."""

    kinds: tuple[str, ...]

    def __post_init__(self) -> None:
        if not self.kinds or any(k not in STATEMENT_TYPES for k in self.kinds):
            raise ValueError(f"bad statement type {self.kinds}")

    @property
    def compound(self) -> bool:
        return len(self.kinds) > 1

    def to_json(self) -> str | dict:
        if self.compound:
            return {"compound": list(self.kinds)}
        return self.kinds[0]

    def __str__(self) -> str:
        if self.compound:
            return f"compound({', '.join(self.kinds)})"
        return self.kinds[0]


@dataclass(frozen=True)
class Part:
    role: str
    ops: tuple[str, ...] = ()

    def to_json(self) -> str | dict:
        if self.role == "operator":
            return {"operator-in-set": list(self.ops)}
        return self.role


@dataclass(frozen=True)
class CipPattern:
    name: str
    description: str
    statement_type: StatementType
    parts: tuple[Part, ...]
    detector_arity: int
    frequency_class: str

    @property
    def has_detector(self) -> bool:
        return self.detector_arity > 0

    @property
    def operand_parts(self) -> int:
        """Number of non-operator parts (data-bearing operands)."""
        return sum(1 for p in self.parts if p.role != "operator")

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "description": self.description,
            "statement_type": self.statement_type.to_json(),
            "parts": [p.to_json() for p in self.parts],
            "detector_arity": self.detector_arity,
            "frequency_class": self.frequency_class,
        }


def _p(*roles: str) -> tuple[Part, ...]:
    return tuple(Part(r) for r in roles)


def _st(*kinds: str) -> StatementType:
    return StatementType(tuple(kinds))


_VF, _F, _R = "very-frequent", "frequent", "rare"

_ENTRIES: tuple[tuple[str, str, StatementType, tuple[Part, ...], bool, str], ...] = (
    ("boolean property", "A boolean-valued name, field or accessor is tested as a condition.",
     _st("boolean-expression"), _p("variable"), True, _VF),
    ("binary comparison", "Two operands are related by a comparison operator or an equals call.",
     _st("relational-expression"),
     (Part("variable"), Part("operator", COMPARISON_OPS), Part("variable")), True, _VF),
    ("constant argument", "A literal is passed to a method or constructor.",
     _st("method-call"), _p("method", "constant"), True, _F),
    ("null check", "A reference is compared against null with == or !=.",
     _st("relational-expression"), _p("variable"), True, _F),
    ("assign constant", "A literal is assigned to a variable or used as a field initializer.",
     _st("assignment"), _p("variable", "constant"), True, _F),
    ("binary flag check", "A bit mask is applied to an integer and the result tested against a constant.",
     _st("relational-expression"), _p("variable", "constant"), True, _F),
    ("if chain", "An if/else-if ladder tests one subject for equality against successive values.",
     _st("if-statement"), _p("variable"), True, _F),
    ("equals or chain", "Equality tests of one subject against several constants joined with ||.",
     _st("boolean-expression"), _p("variable"), True, _F),
    ("properties file", "A key=value entry in a configuration file.",
     _st("file-line"), _p("constant"), False, _F),
    ("polymorphic method", "A call to an abstract method whose overrides select the behaviour.",
     _st("method-call"), _p("method"), False, _F),
    ("null-empty check", "A null test followed by an empty-string test on the same subject.",
     _st("boolean-expression"), _p("variable"), True, _F),
    ("null-zero check", "A null test followed by a length or size comparison with zero.",
     _st("boolean-expression"), _p("variable"), True, _F),
    ("return constant", "A method returns a literal.",
     _st("return-statement"), _p("constant"), True, _F),
    ("switch-len char", "A switch on a string length whose branches inspect individual characters.",
     _st("switch-statement"), _p("variable"), True, _F),
    ("self comparison", "A variable is compared with itself.",
     _st("relational-expression"), _p("variable"), True, _F),
    ("str starts", "startsWith is called on a string.",
     _st("method-call"), _p("variable"), False, _R),
    ("null-boolean check", "A null test followed by a boolean accessor on the same subject.",
     _st("boolean-expression"), _p("variable"), False, _R),
    ("setter", "A setter call stores a computed value.",
     _st("method-call"), _p("method", "variable"), False, _R),
    ("constructor assign", "A constructor initializes a field from something other than its parameters.",
     _st("assignment"), _p("field"), False, _R),
    ("delta check", "The difference of two values is compared with zero.",
     _st("arithmetic-expression", "boolean-expression"), _p("variable", "variable"), False, _R),
    ("enum valueOf", "valueOf on a corpus enum validates a string.",
     _st("method-call"), _p("variable"), False, _R),
    ("iterate-and-check literal", "A loop over a literal collection looks for an equal element.",
     _st("loop-statement"), _p("variable", "collection"), False, _R),
    ("mod op", "A remainder operation bounds a value.",
     _st("arithmetic-expression"), _p("variable"), False, _R),
    ("str ends", "endsWith is called on a string.",
     _st("method-call"), _p("variable"), False, _R),
    ("switch case", "A switch on a variable with symbolic case labels.",
     _st("switch-statement"), _p("variable"), False, _R),
    ("override value set", "An abstract method whose overrides each return one literal.",
     _st("method-definition"), _p("method"), False, _R),
    ("cast self-comparison", "A value cast to another numeric type is compared with the original.",
     _st("assignment", "boolean-expression"), _p("variable"), False, _R),
    ("index loop find", "An indexed loop returns the position of a match, or -1 after the loop.",
     _st("loop-statement", "return-statement"), _p("collection", "variable"), False, _R),
    ("assign class call", "A value obtained from a call on a class literal is assigned.",
     _st("assignment"), _p("variable"), False, _R),
    ("if-return chain", "Consecutive else-less ifs on one subject, each returning.",
     _st("if-statement"), _p("variable"), False, _R),
)


@lru_cache(maxsize=1)
def builtin_catalog() -> tuple[CipPattern, ...]:
    return tuple(
        CipPattern(name, desc, st, parts, len(parts) if detector else 0, freq)
        for name, desc, st, parts, detector, freq in _ENTRIES
    )


@lru_cache(maxsize=1)
def _by_name() -> dict[str, CipPattern]:
    return {p.name: p for p in builtin_catalog()}


def get_pattern(name: str) -> CipPattern:
    try:
        return _by_name()[name]
    except KeyError:
        raise KeyError(f"unknown pattern {name!r}") from None


def pattern_names() -> list[str]:
    return [p.name for p in builtin_catalog()]


def patterns_with_arity(k: int) -> list[CipPattern]:
    if k not in (1, 2, 3):
        raise ValueError(f"arity must be 1, 2 or 3, got {k}")
    return [p for p in builtin_catalog() if p.detector_arity == k]


def pattern_index(name: str) -> int:
    return pattern_names().index(name)

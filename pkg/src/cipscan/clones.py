"""Consistency of multi-statement constraints and clone typing of their enforcing statements."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

from .trace import TraceLink

CLONE_TYPES = ("type-1", "type-2", "type-4", "not-clone")
CONSISTENCY = ("consistent", "inconsistent", "singleton")

_TOKEN = re.compile(
    r"""
    (?P<comment>//[^\n]*|/\*.*?\*/)
  | (?P<ws>\s+)
  | (?P<string>"(?:\\.|[^"\\])*"|'(?:\\.|[^'\\])*')
  | (?P<number>(?:0[xX][0-9a-fA-F_]+|0[bB][01_]+|\d[\d_]*(?:\.\d*)?(?:[eE][+-]?\d+)?|\.\d+(?:[eE][+-]?\d+)?)[lLfFdD]?)
  | (?P<ident>[A-Za-z_$][\w$]*)
  | (?P<op>>>>=|<<=|>>=|>>>|\+\+|--|&&|\|\||==|!=|<=|>=|->|::|<<|>>|[+\-*/%&|^!~?:=<>.,;(){}\[\]@])
  | (?P<other>.)
    """,
    re.VERBOSE | re.DOTALL,
)
_KEYWORDS = frozenset(
    """abstract assert boolean break byte case catch char class const continue default do double else enum
    extends final finally float for goto if implements import instanceof int interface long native new
    package private protected public return short static strictfp super switch synchronized this throw
    throws transient try void volatile while var yield record""".split()
)
_LITERAL_WORDS = frozenset({"true", "false", "null"})


def tokenize(text: str) -> list[tuple[str, str]]:
    """(category, text) tokens with comments and whitespace removed."""
    out = []
    for m in _TOKEN.finditer(text):
        kind = m.lastgroup
        if kind in ("comment", "ws"):
            continue
        tok = m.group()
        if kind == "ident":
            if tok in _LITERAL_WORDS:
                kind = "literal"
            elif tok in _KEYWORDS:
                kind = "keyword"
        elif kind in ("string", "number"):
            kind = "literal"
        out.append((kind, tok))
    return out


def normalized(text: str) -> list[str]:
    """Token stream with identifiers and literals renamed consistently by first occurrence."""
    names: dict[tuple[str, str], str] = {}
    out = []
    for kind, tok in tokenize(text):
        if kind in ("ident", "literal"):
            key = (kind, tok)
            if key not in names:
                names[key] = f"{'$id' if kind == 'ident' else '$lit'}{len([k for k in names if k[0] == kind])}"
            out.append(names[key])
        else:
            out.append(tok)
    return out


@dataclass(frozen=True)
class CloneClassification:
    pair: tuple[tuple[str, int], tuple[str, int]]
    type: str

    def to_json(self) -> dict:
        (fa, la), (fb, lb) = self.pair
        return {"a": {"file": fa, "line": la}, "b": {"file": fb, "line": lb}, "type": self.type}


def clone_type(a_text: str, b_text: str, a_pattern: str, b_pattern: str) -> str:
    ta = [t for _, t in tokenize(a_text)]
    tb = [t for _, t in tokenize(b_text)]
    if ta == tb:
        return "type-1"
    if normalized(a_text) == normalized(b_text):
        return "type-2"
    if a_pattern != b_pattern:
        return "type-4"
    return "not-clone"


def classify_clone(a: TraceLink, b: TraceLink) -> CloneClassification:
    pair = tuple(sorted((a.location, b.location)))
    return CloneClassification(pair, clone_type(a.text, b.text, a.pattern, b.pattern))


@dataclass
class EnforcementGroup:
    constraint_id: str
    links: list[TraceLink] = field(default_factory=list)

    @property
    def patterns(self) -> list[str]:
        return sorted({l.pattern for l in self.links})

    @property
    def consistency(self) -> str:
        if len(self.links) <= 1:
            return "singleton"
        return "consistent" if len(self.patterns) == 1 else "inconsistent"

    def anchor_pairs(self) -> list[CloneClassification]:
        """Each later link against the earliest link (location order)."""
        if len(self.links) < 2:
            return []
        first = self.links[0]
        return [classify_clone(first, other) for other in self.links[1:]]

    def all_pairs(self) -> list[CloneClassification]:
        return [classify_clone(a, b) for a, b in combinations(self.links, 2)]

    def to_json(self) -> dict:
        return {
            "constraint_id": self.constraint_id,
            "consistency": self.consistency,
            "patterns": self.patterns,
            "links": [{"file": l.file, "line": l.line, "pattern": l.pattern, "text": l.text} for l in self.links],
            "anchor_pairs": [c.to_json() for c in self.anchor_pairs()],
        }


def group(links: Iterable[TraceLink]) -> list[EnforcementGroup]:
    """One group per constraint, links deduplicated by location and sorted."""
    by_id: dict[str, dict[tuple, TraceLink]] = {}
    for link in links:
        by_id.setdefault(link.constraint_id, {}).setdefault((link.file, link.line, link.pattern), link)
    return [
        EnforcementGroup(cid, sorted(by_id[cid].values(), key=lambda l: (l.file, l.line, l.pattern)))
        for cid in sorted(by_id)
    ]


def _tally(pairs: Iterable[CloneClassification]) -> dict[str, int]:
    counts = {t: 0 for t in CLONE_TYPES}
    for p in pairs:
        counts[p.type] += 1
    return counts


def clone_summary(groups: Sequence[EnforcementGroup]) -> dict:
    """Clone-type tallies over multi-link groups (anchor pairs are the headline)."""
    multi = [g for g in groups if len(g.links) >= 2]
    consistency = {c: 0 for c in CONSISTENCY}
    for g in groups:
        consistency[g.consistency] += 1
    return {
        "groups": len(groups),
        "multi_link_groups": len(multi),
        "consistency": consistency,
        "anchor": _tally(p for g in multi for p in g.anchor_pairs()),
        "all_pairs": _tally(p for g in multi for p in g.all_pairs()),
    }

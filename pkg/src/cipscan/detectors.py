"""Slicing-backed pattern detectors and arity fan-out orchestration."""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence, Union

from .catalog import CipPattern, get_pattern, patterns_with_arity
from .constraints import ConstraintRecord, SeedRef, expr_operator
from .dataflow import (
    CallGraph,
    DefSite,
    DefUseGraph,
    Slice,
    SliceError,
    build_call_graph,
    build_defuse_graph,
    forward_slice,
    seed_at,
)
from .frontend import SourceCorpus, SymbolTable, build_symbols, parse_corpus
from .matcher import PatternInstance, match_all, match_statement

log = logging.getLogger(__name__)

PRNG = "python-random-mt19937"
DEFAULT_CAP = 25

_OP_NORMAL = {"≥": ">=", "≤": "<=", "=": "==", "≠": "!=", "<>": "!="}
_MIRROR = {">": "<", "<": ">", ">=": "<=", "<=": ">=", "==": "==", "!=": "!="}

# A detector input: a data definition, or an operator filter for comparison parts.
Seed = Union[DefSite, str]


class DetectorError(Exception):
    pass


def normalize_operator(op: str) -> str:
    op = op.strip()
    op = _OP_NORMAL.get(op, op)
    if op not in _MIRROR:
        raise DetectorError(f"unknown operator {op!r}")
    return op


@dataclass
class Analysis:
    """Parsed corpus plus the graphs every detector and trace step needs."""

    corpus: SourceCorpus
    symbols: SymbolTable
    callgraph: CallGraph
    defuse: DefUseGraph
    depth: int = 3
    _instances: list[PatternInstance] | None = field(default=None, repr=False)
    _slices: dict = field(default_factory=dict, repr=False)
    _scc: dict | None = field(default=None, repr=False)

    @classmethod
    def build(cls, roots: Iterable[str | Path], depth: int = 3) -> "Analysis":
        corpus = parse_corpus(roots)
        return cls.from_corpus(corpus, depth)

    @classmethod
    def from_corpus(cls, corpus: SourceCorpus, depth: int = 3) -> "Analysis":
        symbols = build_symbols(corpus)
        return cls(corpus, symbols, build_call_graph(corpus, symbols), build_defuse_graph(corpus, symbols), depth)

    @property
    def instances(self) -> list[PatternInstance]:
        if self._instances is None:
            self._instances = match_all(self.corpus, None, self.symbols)
        return self._instances

    def instances_of(self, pattern: str) -> list[PatternInstance]:
        return [i for i in self.instances if i.pattern == pattern]

    def slice(self, seed: DefSite) -> Slice:
        cached = self._slices.get(seed)
        if cached is None:
            cached = self._slices[seed] = forward_slice(self.defuse, self.callgraph, seed, self.depth)
        return cached

    def recursive_peers(self, qualified: str) -> frozenset[str]:
        """Other methods in the same call-graph cycle as ``qualified``."""
        if self._scc is None:
            import networkx as nx

            self._scc = {}
            for comp in nx.strongly_connected_components(self.callgraph.to_networkx()):
                if len(comp) > 1:
                    for member in comp:
                        self._scc[member] = frozenset(comp)
        return self._scc.get(qualified, frozenset())

    def resolve_seed(self, ref: SeedRef) -> Seed:
        if ref.kind.strip().lower() == "operator":
            return normalize_operator(ref.symbol or "")
        return seed_at(self.defuse, ref.file, ref.line, ref.kind, ref.symbol)

    def seed_json(self, seed: Seed) -> dict:
        if isinstance(seed, str):
            return {"kind": "operator", "symbol": seed}
        return seed.to_json(self.corpus)


@dataclass(frozen=True)
class CandidateEnforcement:
    constraint_id: str
    pattern: str
    instance: PatternInstance
    evidence: tuple[tuple[str, str], ...]
    confirmed: bool = True

    @property
    def key(self) -> tuple:
        return (self.instance.path, self.instance.location.line, self.pattern)

    def to_json(self) -> dict:
        return {
            "constraint_id": self.constraint_id,
            "pattern": self.pattern,
            "instance": self.instance.to_json(),
            "evidence": [{"seed": s, "path": p} for s, p in self.evidence],
            "confirmed": self.confirmed,
        }


@dataclass(frozen=True)
class DetectionReport:
    constraint_id: str
    candidates: tuple[CandidateEnforcement, ...]
    truncated: bool
    sample_seed: int
    total: int
    prng: str = PRNG

    def to_json(self) -> dict:
        return {
            "constraint_id": self.constraint_id,
            "candidates": [c.to_json() for c in self.candidates],
            "truncated": self.truncated,
            "sample_seed": self.sample_seed,
            "prng": self.prng,
            "total": self.total,
        }


def _sort_key(inst: PatternInstance) -> tuple:
    return (inst.path, inst.location, inst.pattern)


def _operator_ok(inst: PatternInstance, pattern: CipPattern, op: str | None) -> bool:
    if op is None:
        return True
    for part, bound in zip(pattern.parts, inst.binding):
        if part.role == "operator":
            return bound.text in (op, _MIRROR[op])
    return True


def detect(
    pattern: CipPattern | str,
    seeds: Sequence[Seed],
    analysis: Analysis,
    constraint_id: str = "",
) -> list[CandidateEnforcement]:
    """Instances of ``pattern`` lying in every seed's forward slice."""
    if isinstance(pattern, str):
        pattern = get_pattern(pattern)
    if not pattern.has_detector:
        raise DetectorError(f"no detector for pattern {pattern.name!r}")
    if len(seeds) != pattern.detector_arity:
        raise DetectorError(
            f"arity mismatch: {pattern.name!r} takes {pattern.detector_arity} seeds, got {len(seeds)}"
        )
    op: str | None = None
    defs: list[DefSite] = []
    for part, seed in zip(pattern.parts, seeds):
        if isinstance(seed, DefSite):
            defs.append(seed)
        elif part.role == "operator":
            op = normalize_operator(seed) if seed not in ("", "*") else None
        else:
            raise DetectorError(f"arity mismatch: operator seed given for {part.role} part")
    if not defs:
        raise DetectorError("arity mismatch: no data-definition seeds")
    slices = [analysis.slice(d) for d in defs]
    out = []
    for inst in analysis.instances_of(pattern.name):
        if not all(inst.location in s.reached for s in slices):
            continue
        if not _operator_ok(inst, pattern, op):
            continue
        confirmed = inst.node is not None and match_statement(inst.node, pattern, analysis.symbols) == inst.binding
        if not confirmed:
            continue
        evidence = tuple(
            (analysis.seed_json(d)["symbol"], " > ".join(s.path_to(inst.location)))
            for d, s in zip(defs, slices)
        )
        out.append(CandidateEnforcement(constraint_id, pattern.name, inst, evidence, True))
    out.sort(key=lambda c: _sort_key(c.instance))
    return out


def constraint_seeds(constraint: ConstraintRecord, manual: CipPattern, analysis: Analysis) -> list[Seed]:
    """Resolve a constraint's seed references into detector inputs for ``manual``'s arity."""
    if not constraint.seeds:
        raise DetectorError(f"constraint has no seeds: {constraint.id}")
    seeds = [analysis.resolve_seed(ref) for ref in constraint.seeds]
    arity = len(manual.parts)
    if arity == 3 and len(seeds) == 2 and all(isinstance(s, DefSite) for s in seeds):
        op = expr_operator(constraint.expr) if constraint.expr is not None else None
        seeds.insert(1, op or "*")
    if len(seeds) != arity:
        raise DetectorError(
            f"arity mismatch: constraint {constraint.id} has {len(seeds)} seeds, {manual.name!r} has {arity} parts"
        )
    return seeds


def orchestrate(
    constraint: ConstraintRecord,
    manual_pattern: CipPattern | str | None,
    analysis: Analysis,
    cap: int = DEFAULT_CAP,
    sample_seed: int = 0,
) -> DetectionReport:
    """Run every detector whose arity equals the manual pattern's part count."""
    if cap < 1:
        raise DetectorError("cap must be >= 1")
    if manual_pattern is None:
        manual_pattern = constraint.manual_pattern
    if manual_pattern is None:
        raise DetectorError(f"constraint {constraint.id} has no manual pattern")
    manual = get_pattern(manual_pattern) if isinstance(manual_pattern, str) else manual_pattern
    seeds = constraint_seeds(constraint, manual, analysis)
    found: dict[tuple, CandidateEnforcement] = {}
    for pattern in patterns_with_arity(len(manual.parts)):
        for cand in detect(pattern, seeds, analysis, constraint.id):
            found.setdefault(cand.key, cand)
    candidates = sorted(found.values(), key=lambda c: _sort_key(c.instance))
    total = len(candidates)
    truncated = total > cap
    if truncated:
        picked = random.Random(sample_seed).sample(candidates, cap)
        candidates = sorted(picked, key=lambda c: _sort_key(c.instance))
    return DetectionReport(constraint.id, tuple(candidates), truncated, sample_seed, total)


__all__ = [
    "Analysis",
    "CandidateEnforcement",
    "DetectionReport",
    "DetectorError",
    "SliceError",
    "constraint_seeds",
    "detect",
    "normalize_operator",
    "orchestrate",
]

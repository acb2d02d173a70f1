"""Find data-constraint implementation patterns in Java code and recover trace links."""

from __future__ import annotations

from .catalog import CipPattern, builtin_catalog, get_pattern, patterns_with_arity
from .clones import EnforcementGroup, classify_clone, clone_summary, group
from .constraints import ConstraintRecord, classify, load_constraints, parse_constraint_expr
from .dataflow import build_call_graph, build_defuse_graph, forward_slice, intersect
from .detectors import Analysis, detect, orchestrate
from .frontend import build_symbols, parse_corpus
from .matcher import PatternInstance, match_all, match_statement
from .trace import TraceLink, assemble_trace, descend_enforcing, resolve_data_definitions

__version__ = "0.1.0"

__all__ = [
    "Analysis",
    "CipPattern",
    "ConstraintRecord",
    "EnforcementGroup",
    "PatternInstance",
    "TraceLink",
    "assemble_trace",
    "build_call_graph",
    "build_defuse_graph",
    "build_symbols",
    "builtin_catalog",
    "classify",
    "classify_clone",
    "clone_summary",
    "descend_enforcing",
    "detect",
    "forward_slice",
    "get_pattern",
    "group",
    "intersect",
    "load_constraints",
    "match_all",
    "match_statement",
    "orchestrate",
    "parse_constraint_expr",
    "parse_corpus",
    "patterns_with_arity",
    "resolve_data_definitions",
]

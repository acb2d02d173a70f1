"""Command-line entry point."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from . import clones as clones_mod
from .catalog import builtin_catalog, get_pattern
from .constraints import ConstraintFileError, ConstraintRecord, classify, load_constraints
from .dataflow import SliceError, forward_slice, seed_at
from .detectors import Analysis, DetectorError, constraint_seeds, orchestrate
from .frontend import CorpusError, collect_files
from .matcher import match_properties_file
from .report import AXES, FORMATS, dump_csv, dump_json, render_table, report_distribution
from .trace import (
    TraceError,
    TraceLink,
    assemble_trace,
    descend_enforcing,
    instance_predicate,
    link_from_candidate,
    resolve_data_definitions,
    sort_links,
)

log = logging.getLogger("cipscan")

EXIT_OK, EXIT_USAGE, EXIT_FATAL, EXIT_PARTIAL = 0, 1, 2, 3
DEFAULTS = {"depth": 3, "cap": 25, "seed": 0, "format": "json", "system": None}
CONFIG_NAME = "cipscan.toml"


class UsageError(Exception):
    pass


class FatalError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass
class RunConfig:
    command: str
    roots: list[str]
    constraints: str | None
    depth: int
    cap: int
    seed: int
    format: str
    system: str | None
    out: str | None

    def __post_init__(self) -> None:
        if self.depth < 0:
            raise UsageError("depth must be >= 0")
        if self.cap < 1:
            raise UsageError("cap must be >= 1")
        if self.format not in FORMATS:
            raise UsageError(f"format must be one of {', '.join(FORMATS)}")


def load_config(path: str | None) -> dict:
    """Read key = value settings; an explicit path must exist, ./cipscan.toml is optional."""
    target = Path(path) if path else Path(CONFIG_NAME)
    if not target.is_file():
        if path:
            raise FatalError(f"{path}: config file not found")
        return {}
    try:
        data = tomllib.loads(target.read_text(encoding="utf-8"))
    except (tomllib.TOMLDecodeError, OSError, UnicodeDecodeError) as exc:
        raise FatalError(f"{target}: {exc}") from exc
    data = data.get("cipscan", data)
    unknown = sorted(set(data) - set(DEFAULTS))
    if unknown:
        log.warning("%s: ignoring unknown keys %s", target, ", ".join(unknown))
    return {k: v for k, v in data.items() if k in DEFAULTS}


def _build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--config", help="settings file (default ./cipscan.toml)")
    common.add_argument("--format", choices=FORMATS, help="output format")
    common.add_argument("--out", help="write output to PATH instead of stdout")
    common.add_argument("--system", help="system label for reports (default: root directory name)")
    common.add_argument("-v", "--verbose", action="store_true", help="log diagnostics to stderr")

    corpus = _Parser(add_help=False)
    corpus.add_argument("roots", nargs="+", help="source roots (directories or files)")
    corpus.add_argument("--depth", type=int, help="interprocedural hop budget for slicing")

    parser = _Parser(prog="cipscan", description="Find constraint implementation patterns in Java code.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sub.add_parser("catalog", parents=[common], help="list the pattern catalog")

    p = sub.add_parser("match", parents=[common, corpus], help="find pattern instances")
    p.add_argument("--pattern", action="append", help="restrict to a pattern (repeatable)")

    p = sub.add_parser("slice", parents=[common, corpus], help="forward slice from a seed definition")
    p.add_argument("--seed", dest="seed_ref", required=True, help="file:line[:kind[:symbol]]")

    for name, help_text in (("detect", "run detectors for constraints"), ("trace", "assemble trace links")):
        p = sub.add_parser(name, parents=[common, corpus], help=help_text)
        p.add_argument("--constraints", required=True, help="constraint file (json or csv)")
        p.add_argument("--cap", type=int, help="maximum candidates per constraint")
        p.add_argument("--seed", type=int, help="sampling seed")

    p = sub.add_parser("classify", parents=[common], help="classify constraint expressions")
    p.add_argument("--constraints", required=True)

    p = sub.add_parser("clones", parents=[common], help="consistency and clone types of trace links")
    p.add_argument("--links", required=True, help="trace-link JSON file")

    p = sub.add_parser("report", parents=[common], help="distribution table by system")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--links", help="trace-link JSON file")
    src.add_argument("--constraints", help="constraint file")
    p.add_argument("--by", choices=AXES, default="pattern", help="row axis")
    return parser


def _config(args: argparse.Namespace) -> RunConfig:
    file_cfg = load_config(args.config)

    def pick(key: str, flag):
        if flag is not None:
            return flag
        return file_cfg.get(key, DEFAULTS[key])

    fmt_default = "csv" if args.command == "classify" and "format" not in file_cfg else None
    try:
        return RunConfig(
            command=args.command,
            roots=list(getattr(args, "roots", []) or []),
            constraints=getattr(args, "constraints", None),
            depth=int(pick("depth", getattr(args, "depth", None))),
            cap=int(pick("cap", getattr(args, "cap", None))),
            seed=int(pick("seed", getattr(args, "seed", None))),
            format=str(args.format or fmt_default or pick("format", None)),
            system=pick("system", args.system),
            out=args.out,
        )
    except (TypeError, ValueError) as exc:
        raise UsageError(f"bad setting: {exc}") from exc


def _system_name(cfg: RunConfig) -> str:
    if cfg.system:
        return cfg.system
    if cfg.roots:
        return Path(cfg.roots[0]).resolve().name
    return "unknown"


def _analysis(cfg: RunConfig) -> Analysis:
    try:
        return Analysis.build(cfg.roots, depth=cfg.depth)
    except CorpusError as exc:
        raise FatalError(str(exc)) from exc


def _constraints(path: str, diagnostics: list[str]) -> list[ConstraintRecord]:
    try:
        return load_constraints(path, diagnostics=diagnostics)
    except ConstraintFileError as exc:
        raise FatalError(str(exc)) from exc


# ---------------------------------------------------------------------------
# commands


def cmd_catalog(cfg: RunConfig) -> tuple[str, int]:
    patterns = builtin_catalog()
    if cfg.format == "json":
        return dump_json({"patterns": [p.to_json() for p in patterns]}), EXIT_OK
    header = ["name", "statement_type", "parts", "detector_arity", "frequency_class"]
    rows = [
        [p.name, str(p.statement_type), " ".join(x.role for x in p.parts), p.detector_arity, p.frequency_class]
        for p in patterns
    ]
    if cfg.format == "csv":
        return dump_csv(header, rows), EXIT_OK
    return render_table(header, [[str(c) for c in r] for r in rows]), EXIT_OK


def cmd_match(cfg: RunConfig, patterns: list[str] | None) -> tuple[str, int]:
    for name in patterns or []:
        try:
            get_pattern(name)
        except KeyError as exc:
            raise UsageError(str(exc.args[0])) from exc
    analysis = _analysis(cfg)
    wanted = set(patterns) if patterns else None
    instances = [i for i in analysis.instances if wanted is None or i.pattern in wanted]
    if wanted is None or "properties file" in wanted:
        for path in collect_files(cfg.roots, ".properties"):
            instances.extend(match_properties_file(path, Path(path).read_bytes()))
    failures = [{"file": p, "message": m} for p, m in analysis.corpus.parse_failures]
    code = EXIT_PARTIAL if failures else EXIT_OK
    if cfg.format == "json":
        return dump_json({"instances": [i.to_json() for i in instances], "parse_failures": failures}), code
    header = ["pattern", "file", "line", "column", "parts", "text"]
    rows = [[i.pattern, i.path, i.location.line, i.location.column, " | ".join(i.parts), i.statement_text] for i in instances]
    if cfg.format == "csv":
        return dump_csv(header, rows), code
    return render_table(header, [[str(c).replace("\n", " ") for c in r] for r in rows]), code


def cmd_slice(cfg: RunConfig, seed_ref: str) -> tuple[str, int]:
    parts = seed_ref.split(":")
    if len(parts) < 2:
        raise UsageError("--seed must be file:line[:kind[:symbol]]")
    try:
        line = int(parts[1])
    except ValueError as exc:
        raise UsageError(f"bad seed line {parts[1]!r}") from exc
    analysis = _analysis(cfg)
    try:
        site = seed_at(analysis.defuse, parts[0], line, parts[2] if len(parts) > 2 else None, ":".join(parts[3:]) or None)
        result = forward_slice(analysis.defuse, analysis.callgraph, site, cfg.depth)
    except SliceError as exc:
        raise FatalError(str(exc)) from exc
    code = EXIT_PARTIAL if analysis.corpus.parse_failures else EXIT_OK
    payload = result.to_json(analysis.corpus)
    if cfg.format == "json":
        return dump_json(payload), code
    rows = [[r["file"], r["line"]] for r in payload["reached"]]
    if cfg.format == "csv":
        return dump_csv(["file", "line"], rows), code
    return render_table(["file", "line"], [[str(c) for c in r] for r in rows]), code


def cmd_detect(cfg: RunConfig) -> tuple[str, int]:
    diagnostics: list[str] = []
    records = _constraints(cfg.constraints, diagnostics)
    analysis = _analysis(cfg)
    reports = []
    for rec in records:
        try:
            reports.append(orchestrate(rec, None, analysis, cap=cfg.cap, sample_seed=cfg.seed).to_json())
        except (DetectorError, SliceError, KeyError) as exc:
            diagnostics.append(f"constraint {rec.id}: {exc.args[0] if exc.args else exc}")
    code = EXIT_PARTIAL if analysis.corpus.parse_failures else EXIT_OK
    if cfg.format == "json":
        return dump_json({"reports": reports, "diagnostics": diagnostics}), code
    header = ["constraint_id", "pattern", "file", "line", "text", "truncated"]
    rows = [
        [r["constraint_id"], c["pattern"], c["instance"]["file"], c["instance"]["line"], c["instance"]["text"], r["truncated"]]
        for r in reports
        for c in r["candidates"]
    ]
    if cfg.format == "csv":
        return dump_csv(header, rows), code
    return render_table(header, [[str(c) for c in r] for r in rows]), code


def _manual_link(rec: ConstraintRecord, analysis: Analysis, system: str, diagnostics: list[str]) -> TraceLink | None:
    ref = rec.enforcing
    src = analysis.corpus.find_file(ref.file)
    if src is None:
        diagnostics.append(f"constraint {rec.id}: no file {ref.file}")
        return None
    on_line = [i for i in analysis.instances if i.location.file_id == src.file_id and i.location.line == ref.line]
    if ref.pattern:
        on_line = [i for i in on_line if i.pattern == ref.pattern]
    if not on_line:
        # the traced line may be a call whose callee enforces the constraint
        stmts = [n for n in analysis.corpus.nodes_on_line(src.file_id, ref.line) if n.statement() is n]
        preds = instance_predicate(analysis, [ref.pattern] if ref.pattern else None)
        for stmt in stmts[:1]:
            target = descend_enforcing(stmt, analysis, preds)
            on_line = [i for i in analysis.instances if i.location == target.location and i.node is not None]
    if not on_line:
        diagnostics.append(f"constraint {rec.id}: no pattern instance at {ref.file}:{ref.line}")
        return None
    inst = on_line[0]
    definitions = resolve_data_definitions(inst, analysis, diagnostics)
    return assemble_trace(rec.id, inst, definitions, "manual", analysis, rec.system or system)


def cmd_trace(cfg: RunConfig) -> tuple[str, int]:
    diagnostics: list[str] = []
    records = _constraints(cfg.constraints, diagnostics)
    analysis = _analysis(cfg)
    system = _system_name(cfg)
    links: list[TraceLink] = []
    for rec in records:
        manual = None
        if rec.enforcing is not None:
            manual = _manual_link(rec, analysis, system, diagnostics)
            if manual is not None:
                links.append(manual)
        if rec.manual_pattern is None and manual is not None:
            rec_pattern = manual.pattern
        else:
            rec_pattern = rec.manual_pattern
        if rec_pattern is None or not rec.seeds:
            continue
        try:
            pattern = get_pattern(rec_pattern)
            seeds = constraint_seeds(rec, pattern, analysis)
            report = orchestrate(rec, pattern, analysis, cap=cfg.cap, sample_seed=cfg.seed)
        except (DetectorError, SliceError, KeyError) as exc:
            diagnostics.append(f"constraint {rec.id}: {exc.args[0] if exc.args else exc}")
            continue
        for cand in report.candidates:
            if manual is not None and (cand.instance.path, cand.instance.location.line) == manual.location:
                continue
            try:
                links.append(link_from_candidate(cand, seeds, analysis, rec.seeds, rec.system or system))
            except TraceError as exc:
                diagnostics.append(f"constraint {rec.id}: {exc}")
    links = sort_links(links)
    code = EXIT_PARTIAL if analysis.corpus.parse_failures else EXIT_OK
    if cfg.format == "json":
        return dump_json({"links": [l.to_json() for l in links], "diagnostics": diagnostics}), code
    header = ["constraint_id", "file", "line", "pattern", "provenance", "definitions"]
    rows = [
        [l.constraint_id, l.file, l.line, l.pattern, l.provenance,
         "; ".join(f"{d['kind']}:{d['symbol']}" for d in l.definitions)]
        for l in links
    ]
    if cfg.format == "csv":
        return dump_csv(header, rows), code
    return render_table(header, [[str(c) for c in r] for r in rows]), code


def cmd_classify(cfg: RunConfig) -> tuple[str, int]:
    diagnostics: list[str] = []
    records = _constraints(cfg.constraints, diagnostics)
    rows = [[r.id, classify(r.expr)] for r in records]
    if cfg.format == "json":
        payload = {"constraints": [{"id": i, "type": t} for i, t in rows], "diagnostics": diagnostics}
        return dump_json(payload), EXIT_OK
    if cfg.format == "csv":
        return dump_csv(["id", "type"], rows), EXIT_OK
    return render_table(["id", "type"], rows), EXIT_OK


def load_links(path: str) -> list[TraceLink]:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise FatalError(f"{path}: {exc}") from exc
    if isinstance(data, dict):
        data = data.get("links", [])
    try:
        return [TraceLink.from_json(obj) for obj in data]
    except (KeyError, TypeError, ValueError) as exc:
        raise FatalError(f"{path}: malformed trace link ({exc})") from exc


def cmd_clones(cfg: RunConfig, links_path: str) -> tuple[str, int]:
    groups = clones_mod.group(load_links(links_path))
    summary = clones_mod.clone_summary(groups)
    if cfg.format == "json":
        return dump_json({"groups": [g.to_json() for g in groups], "summary": summary}), EXIT_OK
    header = ["constraint_id", "consistency", "a_file", "a_line", "b_file", "b_line", "type"]
    rows = []
    for g in groups:
        pairs = g.anchor_pairs()
        if not pairs:
            rows.append([g.constraint_id, g.consistency, "", "", "", "", ""])
        for c in pairs:
            (fa, la), (fb, lb) = c.pair
            rows.append([g.constraint_id, g.consistency, fa, la, fb, lb, c.type])
    if cfg.format == "csv":
        return dump_csv(header, rows), EXIT_OK
    return render_table(header, [[str(c) for c in r] for r in rows]), EXIT_OK


def cmd_report(cfg: RunConfig, links_path: str | None, by: str) -> tuple[str, int]:
    fallback = cfg.system or "unknown"
    if links_path:
        if by != "pattern":
            raise UsageError("--links reports are by pattern; use --constraints for constraint types")
        items = [(l.pattern, l.system or fallback) for l in load_links(links_path)]
    else:
        records = _constraints(cfg.constraints, [])
        if by != "constraint-type":
            raise UsageError("--constraints reports are by constraint-type")
        items = [(classify(r.expr), r.system or fallback) for r in records]
    table = report_distribution(items, by)
    if cfg.format == "json":
        return dump_json(table.to_json()), EXIT_OK
    if cfg.format == "csv":
        return table.to_csv(), EXIT_OK
    return table.to_table(), EXIT_OK


def run(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.ERROR, format="%(levelname)s %(message)s")
    try:
        cfg = _config(args)
        if args.command == "catalog":
            text, code = cmd_catalog(cfg)
        elif args.command == "match":
            text, code = cmd_match(cfg, args.pattern)
        elif args.command == "slice":
            text, code = cmd_slice(cfg, args.seed_ref)
        elif args.command == "detect":
            text, code = cmd_detect(cfg)
        elif args.command == "trace":
            text, code = cmd_trace(cfg)
        elif args.command == "classify":
            text, code = cmd_classify(cfg)
        elif args.command == "clones":
            text, code = cmd_clones(cfg, args.links)
        else:
            text, code = cmd_report(cfg, args.links, args.by)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"cipscan: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except FatalError as exc:
        print(f"cipscan: fatal: {exc}", file=sys.stderr)
        return EXIT_FATAL
    if cfg.out:
        Path(cfg.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return code


def main() -> None:
    sys.exit(run())

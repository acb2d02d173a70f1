"""Independent oracles and corpus generators shared by the test modules."""

from __future__ import annotations

from pathlib import Path

import cipscan
from cipscan.dataflow import EDGE_HOPS, DefSite, DefUseGraph
from cipscan.frontend import STATEMENT_TYPES, Location

FIXTURES = Path(cipscan.__file__).parent / "fixtures"

# file stem -> (pattern, line, parts), transcribed by hand from the catalog instances
CATALOG_EXPECTED = {
    "assign_class_call": ("assign class call", 5, ["classname"]),
    "assign_constant": ("assign constant", 5, ["refreshInterval", "15"]),
    "binary_comparison": ("binary comparison", 5, ["maxFreq", ">", "wave.getNyquist()"]),
    "binary_flag_check": ("binary flag check", 5, ["flag", "NEW_FILE"]),
    "boolean_property": ("boolean property", 3, ["isModified"]),
    "cast_self_comparison": ("cast self-comparison", 3, ["d"]),
    "constant_argument": ("constant argument", 3, ["setShowVisibilities", "false"]),
    "constructor_assign": ("constructor assign", 5, ["authorname"]),
    "delta_check": ("delta check", 9, ["getMajor", "getMajor"]),
    "enum_valueof": ("enum valueOf", 7, ['jEdit.getProperty("bufferset.scope", "global")']),
    "equals_or_chain": ("equals or chain", 3, ["option"]),
    "if_chain": ("if chain", 5, ["onset"]),
    "if_return_chain": ("if-return chain", 3, ["compilerType"]),
    "index_loop_find": ("index loop find", 3, ["values", "value"]),
    "iterate_and_check_literal": ("iterate-and-check literal", 6, ["name", "values"]),
    "mod_op": ("mod op", 3, ["daysSince19700101"]),
    "null_boolean_check": ("null-boolean check", 3, ["saveAction"]),
    "null_check": ("null check", 3, ["name"]),
    "null_empty_check": ("null-empty check", 3, ["string"]),
    "null_zero_check": ("null-zero check", 3, ["string"]),
    "override_value_set": ("override value set", 2, ["getExtension"]),
    "polymorphic_method": ("polymorphic method", 7, ["Scriptable.getDefaultValue()"]),
    "return_constant": ("return constant", 3, ["80"]),
    "self_comparison": ("self comparison", 3, ["d"]),
    "setter": ("setter", 3, ["project.setBasedir", "helperImpl.buildFileParent.getAbsolutePath()"]),
    "str_ends": ("str ends", 3, ["name"]),
    "str_starts": ("str starts", 3, ["arg"]),
    "switch_case": ("switch case", 3, ["state"]),
    "switch_len_char": ("switch-len char", 6, ["token"]),
}
PROPERTIES_EXPECTED = ("properties file", 2, ["backups"])


def _closure(node):
    cur = node
    while cur is not None:
        yield cur
        if cur.type in STATEMENT_TYPES:
            return
        cur = cur.parent


def naive_slice(graph: DefUseGraph, seed: DefSite, depth: int) -> set[Location]:
    """Exhaustive walk over (definition, hops-spent) states; no priority queue."""
    frontier = [(seed, 0)]
    seen_states = {(seed, 0)}
    reached_nodes = {}
    while frontier:
        site, spent = frontier.pop()
        for ref in graph.refs.get(site, []):
            cost = spent + EDGE_HOPS[ref.label]
            if cost > depth:
                continue
            reached_nodes[id(ref.node)] = ref.node
            for target, label in graph.flows.get(id(ref.node), []):
                nxt = cost + EDGE_HOPS[label]
                if nxt <= depth and (target, nxt) not in seen_states:
                    seen_states.add((target, nxt))
                    frontier.append((target, nxt))
    out = set()
    for node in reached_nodes.values():
        out.update(n.location for n in _closure(node))
    return out


SETTINGS = """class Settings {
    String mode;

    String getMode() {
        return mode;
    }
}
"""

CLIENT = """class Client{i} {{
    private Settings settings;

    void direct{i}() {{
        if (settings.mode == null) {{
        }}
    }}

    void viaGetter{i}() {{
        if (settings.getMode() != null) {{
        }}
    }}

    void viaParam{i}() {{
        check{i}(settings.mode);
    }}

    void check{i}(String m) {{
        if (m == null) {{
        }}
    }}

    void viaGetterParam{i}() {{
        checkAgain{i}(settings.getMode());
    }}

    void checkAgain{i}(String m) {{
        if (m != null) {{
        }}
    }}

    void viaRelay{i}() {{
        relay{i}(settings.getMode());
    }}

    void relay{i}(String m) {{
        sink{i}(m);
    }}

    void sink{i}(String m) {{
        if (null == m) {{
        }}
    }}
}}
"""
# line of each planted null check and its hop count from Settings.mode
PLANTED_LINES = {5: 0, 10: 1, 19: 1, 28: 2, 41: 3}


def write_recall_corpus(root: Path, files: int = 10) -> Path:
    root.mkdir(parents=True, exist_ok=True)
    (root / "Settings.java").write_text(SETTINGS)
    for i in range(files):
        (root / f"Client{i}.java").write_text(CLIENT.format(i=i))
    return root


# the running example: heart-disease age threshold, traced by hand to Listing1.java:53
LISTING1_CONSTRAINT = {
    "id": "age45",
    "system": "heart",
    "description": "patients older than 45 carry an age risk factor",
    "simplified": "age > 45",
    "seeds": ["Listing1.java:96:field:age", "Listing1.java:27:literal:45"],
    "manual_pattern": "binary comparison",
    "enforcing": "Listing1.java:53",
}

# constraints over the whole fixture tree, used by the full-pipeline runs
PIPELINE_CONSTRAINTS = [
    LISTING1_CONSTRAINT,
    {"id": "dirty", "system": "jedit", "simplified": "buffer dirty == true",
     "seeds": ["Buffer.java:2:field:dirty"], "manual_pattern": "boolean property"},
    {"id": "repeatable", "system": "httpc", "simplified": "entity repeatable == true",
     "seeds": ["Entities.java:2:field:repeatable"], "manual_pattern": "boolean property",
     "enforcing": "Enclosing.java:3"},
    {"id": "maxfreq", "system": "swarm", "simplified": "max frequency > wave Nyquist frequency",
     "enforcing": "SpectrogramFrame.java:18"},
    {"id": "extpoint", "system": "maven", "simplified": "onMissingExtensionPoint in {fail, warn, ignore}"},
]

# example constraints and their expected types, one per row of the worked-examples table
CLASSIFIER_EXAMPLES = [
    ("max frequency > 0", "value-comparison"),
    ("max frequency > min frequency", "value-comparison"),
    ("max frequency > wave Nyquist frequency", "value-comparison"),
    ("file available == false", "dual-value-comparison"),
    ("file readable == false", "dual-value-comparison"),
    ("onMissingExtensionPoint in {fail, warn, ignore}", "categorical-value"),
    ("switch date is 1582-10-15", "concrete-value"),
    ("Content-Length >= 0", "value-comparison"),
]

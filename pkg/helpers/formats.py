# helpers/formats.py
#
# JSON documents in, JSON or TSV reports out.
#
#   complex    {"labels": [...], "maximal_faces": [[int, ...], ...]}
#   poset      {"labels": [...], "covers": [[int, int], ...]}
#   action     {"complex": <complex>, "p": int, "generator": [int, ...]}
#   graph      {"n": int, "edges": [[int, int], ...]}
#   hypergraph {"n": int, "edges": [[int, ...], ...]}
#   coloring   [int, ...]
#
# Malformed documents raise ParseError; well-formed but invalid ones raise the
# validation error of the module that builds the object.

import json

from helpers.actions import validate_action
from helpers.complexes import GPoset, from_maximal_faces
from helpers.errors import ParseError
from helpers.graphs import Graph
from helpers.hypergraphs import Hypergraph


def _require(doc, key, kind):
    if not isinstance(doc, dict):
        raise ParseError(f"expected an object with key '{key}', got {type(doc).__name__}")
    if key not in doc:
        raise ParseError(f"missing key '{key}'")
    value = doc[key]
    if kind is int and (isinstance(value, bool) or not isinstance(value, int)):
        raise ParseError(f"'{key}' must be an integer")
    if kind is list and not isinstance(value, list):
        raise ParseError(f"'{key}' must be an array")
    if kind is dict and not isinstance(value, dict):
        raise ParseError(f"'{key}' must be an object")
    return value


def _int_list(value, what):
    if not isinstance(value, list) or any(isinstance(x, bool) or not isinstance(x, int) for x in value):
        raise ParseError(f"{what} must be an array of integers")
    return list(value)


def _int_lists(value, what):
    return [_int_list(item, what) for item in value]


def parse_json(text):
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"invalid JSON: {e}") from e


def parse_complex(doc):
    labels = _require(doc, "labels", list)
    maximal = _int_lists(_require(doc, "maximal_faces", list), "a face")
    return from_maximal_faces(labels, maximal)


def parse_poset(doc):
    labels = _require(doc, "labels", list)
    covers = _int_lists(_require(doc, "covers", list), "a cover pair")
    if any(len(pair) != 2 for pair in covers):
        raise ParseError("every cover must be a pair")
    return GPoset.from_covers(labels, covers)


def parse_action(doc):
    K = parse_complex(_require(doc, "complex", dict))
    p = _require(doc, "p", int)
    generator = _int_list(_require(doc, "generator", list), "generator")
    return validate_action(K, generator, p)


def parse_graph(doc):
    n = _require(doc, "n", int)
    edges = _int_lists(_require(doc, "edges", list), "an edge")
    if any(len(e) != 2 for e in edges):
        raise ParseError("every graph edge must be a pair")
    return Graph.from_edges(n, edges)


def parse_hypergraph(doc):
    n = _require(doc, "n", int)
    edges = _int_lists(_require(doc, "edges", list), "an edge")
    return Hypergraph.from_edges(n, edges)


def parse_coloring(doc):
    return _int_list(doc, "a coloring")


PARSERS = {
    "complex": parse_complex,
    "poset": parse_poset,
    "action": parse_action,
    "graph": parse_graph,
    "hypergraph": parse_hypergraph,
    "coloring": parse_coloring,
}


def read_document(path, kind):
    """Load a JSON file and build the object of the given schema."""
    try:
        with open(path, "r", encoding="utf-8") as f:
            text = f.read()
    except OSError as e:
        raise ParseError(f"cannot read {path}: {e}") from e
    return PARSERS[kind](parse_json(text))


# ─────────────────────────────────────────────
# Encoding
# ─────────────────────────────────────────────

def complex_document(K):
    return {"labels": list(K.labels), "maximal_faces": [list(face) for face in K.maximal_faces()]}


def action_document(a):
    return {"complex": complex_document(a.complex), "p": a.p, "generator": list(a.generator)}


def graph_document(H):
    return {"n": H.n, "edges": [list(e) for e in sorted(H.edges)]}


def hypergraph_document(H):
    return {"n": H.n, "edges": sorted(sorted(e) for e in H.edges)}


def encode_json(obj):
    return json.dumps(obj, sort_keys=True, indent=2, separators=(",", ": "), ensure_ascii=False)


def _cell(value):
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (list, tuple)):
        return ",".join(_cell(v) for v in value)
    return str(value)


def encode_tsv(rows, columns=None):
    """Header row then one line per dict; columns default to the sorted keys of the first row."""
    rows = list(rows)
    if columns is None:
        columns = sorted(rows[0]) if rows else []
    lines = ["\t".join(columns)]
    for row in rows:
        lines.append("\t".join(_cell(row.get(c, "")) for c in columns))
    return "\n".join(lines)


def encode(obj, fmt):
    """A report dict (or list of row dicts) in the requested output format."""
    if fmt == "tsv":
        return encode_tsv(obj if isinstance(obj, list) else [obj])
    return encode_json(obj)

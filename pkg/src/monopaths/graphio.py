"""JSON reading and writing for coloured graphs and results.

Graph files look like::

    {"v": 1, "classes": [[0, 1], [2], [3]], "edges": [[0, 2, "R"], [0, 3, "B"], ...]}

``"code"`` (bit ``i`` set means the ``i``-th lexicographic cross pair is blue)
may replace ``"edges"``.
"""

from __future__ import annotations

import json
from typing import Any

from .graph import ColouredGraph, Colour, MonoCycle, MonoPath, PathPair, validate


class InputError(ValueError):
    """Malformed input file; the message carries line and column when known."""


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), default=str)


def graph_to_json(g: ColouredGraph) -> dict:
    return {
        "v": 1,
        "classes": [list(c) for c in g.classes],
        "edges": [[u, v, c.symbol] for u, v, c in g.edges()],
    }


def graph_from_json(data: Any, require_complete: bool = True) -> ColouredGraph:
    if not isinstance(data, dict):
        raise InputError("graph file must hold a JSON object")
    if data.get("v") != 1:
        raise InputError(f"unsupported schema version {data.get('v')!r}")
    classes = data.get("classes")
    if not isinstance(classes, list) or not all(isinstance(c, list) and all(isinstance(v, int) for v in c) for c in classes):
        raise InputError("'classes' must be a list of integer lists")
    try:
        if "code" in data:
            g = ColouredGraph.from_code(classes, int(data["code"]))
        else:
            edges = data.get("edges")
            if not isinstance(edges, list):
                raise InputError("'edges' must be a list of [u, v, colour] triples")
            triples = []
            for e in edges:
                if not (isinstance(e, list) and len(e) == 3):
                    raise InputError(f"bad edge entry {e!r}")
                triples.append((int(e[0]), int(e[1]), Colour.parse(e[2])))
            g = ColouredGraph.from_edges(classes, triples)
    except InputError:
        raise
    except (ValueError, TypeError, KeyError, IndexError) as exc:
        raise InputError(f"bad graph: {exc}") from exc
    if require_complete:
        rep = validate(g)
        if not rep:
            raise InputError(f"bad graph: {rep.violation} {rep.detail}")
    return g


def parse_graph_text(text: str, require_complete: bool = True) -> ColouredGraph:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"JSON error at line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    return graph_from_json(data, require_complete)


def load_graph(path: str, require_complete: bool = True) -> ColouredGraph:
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    return parse_graph_text(text, require_complete)


def path_json(p: MonoPath) -> dict:
    return {"colour": p.colour.symbol, "vertices": list(p.vertices)}


def cycle_json(c: MonoCycle) -> dict:
    return {"colour": c.colour.symbol, "vertices": list(c.vertices)}


def pair_json(pair: PathPair) -> dict:
    return {"red": list(pair.red.vertices), "blue": list(pair.blue.vertices), "shared": pair.shared}

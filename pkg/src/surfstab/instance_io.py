"""JSON instance files for embedded graphs.

Layout::

    {"vertices": [{"id": 0, "w": "1/1"}, ...],
     "edges":    [{"id": 0, "u": 0, "v": 1, "sig": false}, ...],
     "rot":      {"0": [0, 2, ...], ...}}

Weights are always written as ``"p/q"`` so a dump/load/dump cycle is
byte-identical.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from .embedding import Edge, EmbeddedGraph
from .errors import InstanceError


def format_fraction(q: Fraction) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def parse_fraction(raw) -> Fraction:
    if isinstance(raw, bool):
        raise InstanceError(f"weight {raw!r} is not a rational")
    if isinstance(raw, int):
        return Fraction(raw)
    if isinstance(raw, str):
        try:
            return Fraction(raw.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InstanceError(f"cannot parse rational {raw!r}") from exc
    raise InstanceError(f"weight {raw!r} must be an integer or a 'p/q' string")


def graph_to_dict(G: EmbeddedGraph) -> dict:
    return {
        "vertices": [{"id": v, "w": format_fraction(G.weight(v))} for v in G.vertices],
        "edges": [{"id": e.id, "u": e.u, "v": e.v, "sig": e.sig} for e in G.edges()],
        "rot": {str(v): list(G.rotation(v)) for v in G.vertices},
    }


def graph_from_dict(data: dict) -> EmbeddedGraph:
    if not isinstance(data, dict):
        raise InstanceError("instance must be a JSON object")
    for key in ("vertices", "edges", "rot"):
        if key not in data:
            if key == "rot" and "edges" in data:
                raise InstanceError(
                    "instance has no rotation system; an embedding is required "
                    "(abstract graphs are not accepted)")
            raise InstanceError(f"instance is missing the {key!r} section")
    try:
        weights = {}
        for item in data["vertices"]:
            vid = int(item["id"])
            if vid in weights:
                raise InstanceError(f"duplicate vertex id {vid}")
            weights[vid] = parse_fraction(item.get("w", 1))
        edges = [Edge(int(e["id"]), int(e["u"]), int(e["v"]), bool(e.get("sig", False)))
                 for e in data["edges"]]
        rot = {int(k): [int(x) for x in r] for k, r in data["rot"].items()}
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, InstanceError):
            raise
        raise InstanceError(f"malformed instance: {exc}") from exc
    return EmbeddedGraph(weights, edges, rot)


def dumps_graph(G: EmbeddedGraph) -> str:
    return json.dumps(graph_to_dict(G), indent=1, sort_keys=False) + "\n"


def loads_graph(text: str) -> EmbeddedGraph:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstanceError(f"invalid JSON: {exc}") from exc
    return graph_from_dict(data)


def read_instance(path) -> EmbeddedGraph:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InstanceError(f"cannot read {path}: {exc}") from exc
    return loads_graph(text)


def write_instance(G: EmbeddedGraph, path) -> None:
    Path(path).write_text(dumps_graph(G), encoding="utf-8")

"""JSON wire formats for webs, rotation webs, foams and matrices.

All formats are canonical: ``dumps`` produces sorted-key, 2-space-indented
JSON with a trailing newline, and ``loads(dumps(x))`` is the identity, so
corpus files can be compared byte for byte.

Web:
    {"vertices": ["a","b"], "edges": [{"id":"e1","ends":["a","b"]},
                                      {"id":"c1","ends":null}]}
    ``ends: null`` is a free circle; a loop repeats the vertex.

RotationWeb adds:
    "rotation": {"a": ["e1.0","e2.0","e3.0"], ...}
    tokens are "<edge id>.<end index>"; edge ids must not contain ".".

Foam:
    {"tetra_points": [...],
     "seam_edges":   [{"id":"s","ends":["n","s2"]}],
     "seam_circles": [{"id":"c","monodromy":"id"}],
     "corners":      {"n": [[["sa",0,0],["sb",0,0]], ...]},
     "facets":       [{"id","orientable","genus","dots","boundary"}],
     "boundary":     {"web": {...},
                      "vertex_attach": {"u": {"seam_end": ["s",0],
                                              "slots": {"e1.0": 0, ...}}}}}
    Walk steps: ["edge", start_end, slot] on a seam edge,
    ["circle", slot, winding] on a seam circle (recognized by the id),
    ["webedge", start_end] on a boundary web edge.

Matrix (text, not JSON): first line "rows cols", then one "r c" line per
1-entry, sorted.
"""

from __future__ import annotations

import json
from typing import Any

from .foams import (CircleStep, EdgeStep, Facet, Foam, SeamCircle, SeamEdge,
                    Step, VertexAttach, Walk, WebMatching, WebStep, foam)
from .homalg import F2Matrix
from .planar import RotationWeb
from .webs import Edge, Web


def dumps(doc: Any) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


# ---------------------------------------------------------------------------
# Webs
# ---------------------------------------------------------------------------

def web_to_doc(w: Web) -> dict:
    return {
        "vertices": list(w.vertices),
        "edges": [{"id": e.id, "ends": None if e.ends is None else list(e.ends)}
                  for e in w.edges],
    }


def web_from_doc(doc: dict) -> Web:
    edges = []
    for e in doc["edges"]:
        ends = e["ends"]
        edges.append(Edge(e["id"], None if ends is None else (ends[0], ends[1])))
    return Web(tuple(doc["vertices"]), tuple(edges))


def _dart_token(d: tuple[str, int]) -> str:
    if "." in d[0]:
        raise ValueError(f"edge id {d[0]!r} must not contain '.' in rotation tokens")
    return f"{d[0]}.{d[1]}"


def _dart_from_token(tok: str) -> tuple[str, int]:
    eid, _, idx = tok.rpartition(".")
    return eid, int(idx)


def rotation_web_to_doc(rw: RotationWeb) -> dict:
    doc = web_to_doc(rw.web)
    doc["rotation"] = {v: [_dart_token(t) for t in rot]
                       for v, rot in sorted(rw.rotation.items())}
    return doc


def rotation_web_from_doc(doc: dict) -> RotationWeb:
    w = web_from_doc(doc)
    rotation = {v: tuple(_dart_from_token(t) for t in rot)
                for v, rot in doc["rotation"].items()}
    return RotationWeb(w, rotation)


# ---------------------------------------------------------------------------
# Foams
# ---------------------------------------------------------------------------

def _step_to_doc(f: Foam, s: Step) -> list:
    if isinstance(s, EdgeStep):
        return [s.edge, s.start_end, s.slot]
    if isinstance(s, CircleStep):
        return [s.circle, s.slot, s.winding]
    return [s.edge, s.start_end]


def _step_from_doc(seam_edge_ids: set[str], circle_ids: set[str], doc: list) -> Step:
    if len(doc) == 2:
        return WebStep(doc[0], doc[1])
    name = doc[0]
    if name in circle_ids:
        return CircleStep(name, doc[1], doc[2])
    return EdgeStep(name, doc[1], doc[2])


def foam_to_doc(f: Foam) -> dict:
    doc: dict[str, Any] = {
        "tetra_points": list(f.tetra_points),
        "seam_edges": [{"id": e.id, "ends": list(e.ends)} for e in f.seam_edges],
        "seam_circles": [{"id": c.id, "monodromy": c.monodromy} for c in f.seam_circles],
        "corners": {
            t: [sorted([list(cs) for cs in corner]) for corner in corners]
            for t, corners in f.corners
        },
        "facets": [
            {
                "id": fc.id,
                "orientable": fc.orientable,
                "genus": fc.genus,
                "dots": fc.dots,
                "boundary": [[_step_to_doc(f, s) for s in walk] for walk in fc.boundary],
            }
            for fc in f.facets
        ],
    }
    if f.web is not None:
        doc["boundary"] = {
            "web": web_to_doc(f.web),
            "vertex_attach": {
                v: {
                    "seam_end": list(att.seam_end),
                    "slots": {_dart_token(tok): s for tok, s in att.slot_of},
                }
                for v, att in f.attach
            },
        }
    return doc


def foam_from_doc(doc: dict) -> Foam:
    seam_edges = [SeamEdge(e["id"], (e["ends"][0], e["ends"][1]))
                  for e in doc["seam_edges"]]
    circles = [SeamCircle(c["id"], c["monodromy"]) for c in doc["seam_circles"]]
    seam_ids = {e.id for e in seam_edges}
    circle_ids = {c.id for c in circles}
    corners = {
        t: tuple(frozenset((cs[0], cs[1], cs[2]) for cs in corner) for corner in lst)
        for t, lst in doc["corners"].items()
    }
    facets = []
    for fd in doc["facets"]:
        boundary = tuple(
            tuple(_step_from_doc(seam_ids, circle_ids, s) for s in walk)
            for walk in fd["boundary"]
        )
        facets.append(Facet(fd["id"], fd["orientable"], fd["genus"], fd["dots"], boundary))
    web = None
    attach = None
    if "boundary" in doc:
        web = web_from_doc(doc["boundary"]["web"])
        attach = {}
        for v, ad in doc["boundary"]["vertex_attach"].items():
            slot_of = tuple(sorted(
                (_dart_from_token(tok), s) for tok, s in ad["slots"].items()))
            attach[v] = VertexAttach((ad["seam_end"][0], ad["seam_end"][1]), slot_of)
    return foam(tetra_points=doc["tetra_points"], seam_edges=seam_edges,
                seam_circles=circles, corners=corners, facets=facets,
                web=web, attach=attach)


# ---------------------------------------------------------------------------
# Matchings and matrices
# ---------------------------------------------------------------------------

def matching_to_doc(m: WebMatching) -> dict:
    return {"vertices": dict(m.vertices), "edges": dict(m.edges)}


def matching_from_doc(doc: dict) -> WebMatching:
    return WebMatching(tuple(sorted(doc["vertices"].items())),
                       tuple(sorted(doc["edges"].items())))


def matrix_to_text(m: F2Matrix) -> str:
    lines = [f"{m.rows} {m.cols}"]
    for r, c in sorted(m.entries):
        lines.append(f"{r} {c}")
    return "\n".join(lines) + "\n"


def matrix_from_text(text: str) -> F2Matrix:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    rows, cols = map(int, lines[0].split())
    entries = set()
    for ln in lines[1:]:
        r, c = map(int, ln.split())
        entries.add((r, c))
    return F2Matrix(rows, cols, frozenset(entries))

"""Standard webs (and their planar rotations) used throughout the corpus.

Rotations for the polyhedral webs are derived from coordinates: sorting
the neighbors of each vertex by angle in a planar straight-line drawing
(or in the tangent plane of a convex embedding) gives a genus-0 rotation
system with a consistent global orientation.
"""

from __future__ import annotations

import math

from .planar import RotationWeb, rotation_web
from .webs import Web, web


def circle_web() -> Web:
    return web([], [("c1", None)])


def theta_web() -> Web:
    return web(["u", "v"], [("e1", ("u", "v")), ("e2", ("u", "v")), ("e3", ("u", "v"))])


def theta_rotation() -> RotationWeb:
    return rotation_web(theta_web(), {
        "u": (("e1", 0), ("e2", 0), ("e3", 0)),
        "v": (("e3", 1), ("e2", 1), ("e1", 1)),
    })


def dumbbell_web() -> Web:
    return web(["u", "v"], [("l1", ("u", "u")), ("l2", ("v", "v")), ("br", ("u", "v"))])


def dumbbell_rotation() -> RotationWeb:
    return rotation_web(dumbbell_web(), {
        "u": (("l1", 0), ("l1", 1), ("br", 0)),
        "v": (("br", 1), ("l2", 0), ("l2", 1)),
    })


def k4_web() -> Web:
    return web(
        ["a", "b", "c", "d"],
        [("ab", ("a", "b")), ("ac", ("a", "c")), ("ad", ("a", "d")),
         ("bc", ("b", "c")), ("bd", ("b", "d")), ("cd", ("c", "d"))],
    )


def _rotation_from_plane(w: Web, coords: dict[str, tuple[float, float]]) -> RotationWeb:
    rotation = {}
    for v in w.vertices:
        x0, y0 = coords[v]
        tokens = []
        for eid, k in w.incident_ends(v):
            other = w.edge(eid).ends[1 - k]
            x1, y1 = coords[other]
            tokens.append((math.atan2(y1 - y0, x1 - x0), (eid, k)))
        tokens.sort()
        rotation[v] = tuple(t for _, t in tokens)
    return rotation_web(w, rotation)


def k4_rotation() -> RotationWeb:
    # a in the middle of the triangle bcd
    coords = {"a": (0.0, 0.0), "b": (0.0, 2.0), "c": (-2.0, -1.5), "d": (2.0, -1.5)}
    return _rotation_from_plane(k4_web(), coords)


def prism_web(n: int) -> Web:
    """The n-sided prism: two concentric n-gons joined vertex to vertex.
    For n=2 the two n-gons are digons."""
    assert n >= 2
    vs = [f"o{i}" for i in range(n)] + [f"i{i}" for i in range(n)]
    edges: list[tuple[str, tuple[str, str] | None]] = []
    for i in range(n):
        edges.append((f"p{i}", (f"o{i}", f"o{(i + 1) % n}")))
        edges.append((f"q{i}", (f"i{i}", f"i{(i + 1) % n}")))
        edges.append((f"r{i}", (f"o{i}", f"i{i}")))
    return web(vs, edges)


def prism_rotation(n: int) -> RotationWeb:
    w = prism_web(n)
    if n == 2:
        # parallel digon edges defeat coordinate sorting; fixed by hand
        return rotation_web(w, {
            "o0": (("p0", 0), ("r0", 0), ("p1", 1)),
            "o1": (("p1", 0), ("r1", 0), ("p0", 1)),
            "i0": (("q0", 0), ("q1", 1), ("r0", 1)),
            "i1": (("q1", 0), ("q0", 1), ("r1", 1)),
        })
    coords = {}
    for i in range(n):
        a = 2 * math.pi * i / n
        coords[f"o{i}"] = (2 * math.cos(a), 2 * math.sin(a))
        coords[f"i{i}"] = (math.cos(a), math.sin(a))
    return _rotation_from_plane(w, coords)


def cube_web() -> Web:
    return prism_web(4)


def cube_rotation() -> RotationWeb:
    return prism_rotation(4)


def petersen_web() -> Web:
    vs = [f"u{i}" for i in range(5)] + [f"v{i}" for i in range(5)]
    edges: list[tuple[str, tuple[str, str] | None]] = []
    for i in range(5):
        edges.append((f"o{i}", (f"u{i}", f"u{(i + 1) % 5}")))
        edges.append((f"s{i}", (f"u{i}", f"v{i}")))
        edges.append((f"x{i}", (f"v{i}", f"v{(i + 2) % 5}")))
    return web(vs, edges)


_PHI = (1 + math.sqrt(5)) / 2


def dodecahedron_web() -> Web:
    w, _ = _dodecahedron()
    return w


def dodecahedron_rotation() -> RotationWeb:
    w, coords = _dodecahedron()
    rotation = {}
    for v in w.vertices:
        p = coords[v]
        norm = math.sqrt(sum(c * c for c in p))
        n_hat = tuple(c / norm for c in p)
        # orthonormal basis of the tangent plane at v
        seed = (1.0, 0.0, 0.0) if abs(n_hat[0]) < 0.9 else (0.0, 1.0, 0.0)
        t1 = _cross(n_hat, seed)
        t1 = _normalize(t1)
        t2 = _cross(n_hat, t1)
        tokens = []
        for eid, k in w.incident_ends(v):
            other = coords[w.edge(eid).ends[1 - k]]
            d = tuple(other[i] - p[i] for i in range(3))
            tokens.append((math.atan2(_dot(d, t2), _dot(d, t1)), (eid, k)))
        tokens.sort()
        rotation[v] = tuple(t for _, t in tokens)
    return rotation_web(w, rotation)


def _cross(a, b):
    return (a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0])


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def _normalize(a):
    n = math.sqrt(_dot(a, a))
    return tuple(x / n for x in a)


def _dodecahedron() -> tuple[Web, dict[str, tuple[float, float, float]]]:
    pts: list[tuple[float, float, float]] = []
    for sx in (1, -1):
        for sy in (1, -1):
            for sz in (1, -1):
                pts.append((sx, sy, sz))
    for s1 in (1, -1):
        for s2 in (1, -1):
            pts.append((0.0, s1 / _PHI, s2 * _PHI))
            pts.append((s1 / _PHI, s2 * _PHI, 0.0))
            pts.append((s1 * _PHI, 0.0, s2 / _PHI))
    names = [f"v{i:02d}" for i in range(len(pts))]
    coords = dict(zip(names, pts))
    # edges join vertices at the minimal inter-point distance (2/phi)
    target = 2 / _PHI
    edges = []
    eid = 0
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            d = math.dist(pts[i], pts[j])
            if abs(d - target) < 1e-9:
                edges.append((f"e{eid:02d}", (names[i], names[j])))
                eid += 1
    w = web(names, edges)
    return w, coords

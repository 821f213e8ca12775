"""Closed pre-foams and foams with boundary, as combinatorial 2-complexes.

A foam's cells are: tetrahedral points (cones on the tetrahedron
1-skeleton), seam edges between them (three sheets meet along a seam;
each edge carries three global branch *slots*), vertexless seam circles
with a sheet monodromy, and facets.  A facet records its surface type
(orientability and genus / crosscap count), a dot count, and its boundary
walks; a walk is a cyclic sequence of traversal steps, and the corner
transition taken at a tetra point between consecutive steps is determined
by the corner structure, so only the steps are stored.

At a tetra point the twelve incident (edge-end, slot) pairs are grouped
into six *corners*, one for each unordered pair of incident edge-ends;
a corner is the cone over one arc of the tetrahedral link and is crossed
by exactly one facet walk.

Foams with boundary additionally carry a web, an attachment of one seam
edge end to each web vertex together with a bijection between the three
incident web edge-ends and the seam slots, and web-edge steps in their
facet walks.

The surgery engine at the bottom re-stitches facet walks after cells are
deleted and seam edges are spliced end to end; gluing two foams along
their boundary webs and canceling a pair of tetrahedral points are both
thin wrappers around it.  Orientability convention: the recorded walks of
an orientable facet are coherently directed (induced by one orientation);
the engine maintains this and uses it to transport orientations across
merges.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, replace
from typing import Iterable, Mapping, Optional, Sequence, Union

from .webs import Edge, Web, validate_web

# ---------------------------------------------------------------------------
# Cells and steps
# ---------------------------------------------------------------------------

MONODROMIES: dict[str, tuple[int, int, int]] = {
    "id": (0, 1, 2),
    "t01": (1, 0, 2),
    "t02": (2, 1, 0),
    "t12": (0, 2, 1),
    "c012": (1, 2, 0),
    "c021": (2, 0, 1),
}
_PERM_LABEL = {v: k for k, v in MONODROMIES.items()}


@dataclass(frozen=True)
class SeamEdge:
    id: str
    ends: tuple[str, str]  # tetra point ids or boundary web vertex ids


@dataclass(frozen=True)
class SeamCircle:
    id: str
    monodromy: str

    def __post_init__(self):
        if self.monodromy not in MONODROMIES:
            raise ValueError(f"unknown monodromy {self.monodromy!r}")

    @property
    def perm(self) -> tuple[int, int, int]:
        return MONODROMIES[self.monodromy]


@dataclass(frozen=True)
class EdgeStep:
    """Traverse a seam edge from ``ends[start_end]`` on the given slot."""
    edge: str
    start_end: int
    slot: int


@dataclass(frozen=True)
class CircleStep:
    """Run around a seam circle starting on ``slot``; the walk closes after
    ``winding`` loops (an orbit of the monodromy).  No direction is
    stored: orbits of the monodromy and of its inverse coincide."""
    circle: str
    slot: int
    winding: int


@dataclass(frozen=True)
class WebStep:
    """Traverse a boundary web edge; on a free circle edge the start_end
    bit is a direction marker."""
    edge: str
    start_end: int


Step = Union[EdgeStep, CircleStep, WebStep]
Walk = tuple[Step, ...]

CornerSlot = tuple[str, int, int]  # (seam edge id, end index, slot)
Corner = frozenset  # of exactly two CornerSlots on distinct edge-ends


@dataclass(frozen=True)
class Facet:
    id: str
    orientable: bool
    genus: int  # crosscap count when non-orientable
    dots: int
    boundary: tuple[Walk, ...]

    @property
    def chi(self) -> int:
        b = len(self.boundary)
        return 2 - 2 * self.genus - b if self.orientable else 2 - self.genus - b


@dataclass(frozen=True)
class VertexAttach:
    """Boundary data at one web vertex: the seam edge end entering it and
    the bijection from the three incident web edge-ends to the slots."""
    seam_end: tuple[str, int]
    slot_of: tuple[tuple[tuple[str, int], int], ...]  # ((web edge id, end), slot)

    def slot_map(self) -> dict[tuple[str, int], int]:
        return dict(self.slot_of)


@dataclass(frozen=True)
class Foam:
    """A closed pre-foam (``web is None``) or a foam with boundary."""

    tetra_points: tuple[str, ...]
    seam_edges: tuple[SeamEdge, ...]
    seam_circles: tuple[SeamCircle, ...]
    corners: tuple[tuple[str, tuple[Corner, ...]], ...]  # (tetra point, its 6 corners)
    facets: tuple[Facet, ...]
    web: Optional[Web] = None
    attach: tuple[tuple[str, VertexAttach], ...] = ()

    @property
    def is_closed(self) -> bool:
        return self.web is None

    def corner_map(self) -> dict[str, tuple[Corner, ...]]:
        return dict(self.corners)

    def attach_map(self) -> dict[str, VertexAttach]:
        return dict(self.attach)

    def seam_edge(self, eid: str) -> SeamEdge:
        for e in self.seam_edges:
            if e.id == eid:
                return e
        raise KeyError(f"no seam edge {eid!r}")

    def seam_circle(self, cid: str) -> SeamCircle:
        for c in self.seam_circles:
            if c.id == cid:
                return c
        raise KeyError(f"no seam circle {cid!r}")

    def facet(self, fid: str) -> Facet:
        for fc in self.facets:
            if fc.id == fid:
                return fc
        raise KeyError(f"no facet {fid!r}")


def foam(tetra_points: Iterable[str] = (), seam_edges: Iterable[SeamEdge] = (),
         seam_circles: Iterable[SeamCircle] = (),
         corners: Mapping[str, Sequence[Corner]] | None = None,
         facets: Iterable[Facet] = (), web: Optional[Web] = None,
         attach: Mapping[str, VertexAttach] | None = None) -> Foam:
    return Foam(
        tuple(tetra_points),
        tuple(seam_edges),
        tuple(seam_circles),
        tuple(sorted((t, tuple(cs)) for t, cs in (corners or {}).items())),
        tuple(facets),
        web,
        tuple(sorted((attach or {}).items())),
    )


# ---------------------------------------------------------------------------
# Walk geometry helpers
# ---------------------------------------------------------------------------

def _step_arrival(f: Foam, s: Step) -> Optional[str]:
    if isinstance(s, EdgeStep):
        return f.seam_edge(s.edge).ends[1 - s.start_end]
    if isinstance(s, WebStep):
        ends = f.web.edge(s.edge).ends
        return None if ends is None else ends[1 - s.start_end]
    return None


def _transition_check(f: Foam, cur: Step, nxt: Step, corner_map, attach_map
                      ) -> tuple[Optional[Corner], Optional[str]]:
    """Validate the transition between consecutive walk steps; returns the
    corner crossed (web-vertex transitions cross none) or an error."""
    v = _step_arrival(f, cur)
    if v is None:
        return None, "a free-circle web step admits no transition"
    if isinstance(cur, EdgeStep):
        arrive: CornerSlot = (cur.edge, 1 - cur.start_end, cur.slot)
        if v in corner_map:
            if not isinstance(nxt, EdgeStep):
                return None, f"walk must continue on a seam edge at tetra point {v!r}"
            depart: CornerSlot = (nxt.edge, nxt.start_end, nxt.slot)
            corner = frozenset({arrive, depart})
            if corner not in corner_map[v]:
                return None, (f"walk transition at {v!r} does not cross a corner: "
                              f"{arrive} -> {depart}")
            return corner, None
        if v in attach_map:
            att = attach_map[v]
            if not isinstance(nxt, WebStep):
                return None, f"walk must continue on a web edge at boundary vertex {v!r}"
            token = (nxt.edge, nxt.start_end)
            if att.slot_map().get(token) != cur.slot:
                return None, (f"walk at boundary vertex {v!r} leaves on {token} "
                              f"which is not attached to slot {cur.slot}")
            return None, None
        return None, f"seam edge {cur.edge!r} ends at unknown point {v!r}"
    # cur is a WebStep on a non-circle edge
    if v not in attach_map:
        return None, f"web edge {cur.edge!r} ends at unattached vertex {v!r}"
    att = attach_map[v]
    if not isinstance(nxt, EdgeStep):
        return None, f"walk must continue on the seam at boundary vertex {v!r}"
    want_slot = att.slot_map().get((cur.edge, 1 - cur.start_end))
    e2, k2 = att.seam_end
    if nxt.edge != e2 or nxt.start_end != k2 or nxt.slot != want_slot:
        return None, (f"walk at boundary vertex {v!r} must continue on "
                      f"({e2!r}, end {k2}, slot {want_slot})")
    return None, None


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------

def validate_foam(f: Foam) -> list[str]:
    """All foam invariants; returns human-readable violations (empty = valid)."""
    out: list[str] = []
    tetra = set(f.tetra_points)
    if len(tetra) != len(f.tetra_points):
        out.append("duplicate tetra point ids")
    ids = list(f.tetra_points) + [e.id for e in f.seam_edges] + \
        [c.id for c in f.seam_circles] + [fc.id for fc in f.facets]
    if len(set(ids)) != len(ids):
        out.append("cell ids are not unique")

    web_vertices: set[str] = set()
    attach_map = f.attach_map()
    if f.web is not None:
        out += [f"boundary web: {v}" for v in validate_web(f.web)]
        web_vertices = set(f.web.vertices)
        if web_vertices & tetra:
            out.append("web vertex ids collide with tetra point ids")
    elif f.attach:
        out.append("closed foam must not carry boundary attachments")

    valid_ends = tetra | web_vertices
    for e in f.seam_edges:
        for v in e.ends:
            if v not in valid_ends:
                out.append(f"seam edge {e.id!r} ends at unknown point {v!r}")
    if out:
        return out

    # corner structure at each tetra point
    corner_map = f.corner_map()
    if set(corner_map) != tetra:
        out.append("corner table must list exactly the tetra points")
        return out
    incident: dict[str, list[tuple[str, int]]] = {t: [] for t in tetra}
    for e in f.seam_edges:
        for k in (0, 1):
            if e.ends[k] in incident:
                incident[e.ends[k]].append((e.id, k))
    for t in f.tetra_points:
        ends = incident[t]
        if len(ends) != 4:
            out.append(f"tetra point {t!r} has {len(ends)} incident seam edge-ends, expected 4")
            continue
        corners = corner_map[t]
        if len(corners) != 6:
            out.append(f"tetra point {t!r} has {len(corners)} corners, expected 6")
            continue
        slots_seen: set[CornerSlot] = set()
        pair_count: dict[frozenset, int] = {}
        bad = False
        for corner in corners:
            if len(corner) != 2:
                out.append(f"tetra point {t!r}: corner {sorted(corner)} must pair two slots")
                bad = True
                continue
            members = sorted(corner)
            for (e, k, s) in members:
                if (e, k) not in ends:
                    out.append(f"tetra point {t!r}: corner references non-incident "
                               f"end ({e!r},{k})")
                    bad = True
                if s not in (0, 1, 2):
                    out.append(f"tetra point {t!r}: slot {s} out of range")
                    bad = True
            (e1, k1, _), (e2, k2, _) = members
            if (e1, k1) == (e2, k2):
                out.append(f"tetra point {t!r}: corner pairs two slots of one edge-end")
                bad = True
            key = frozenset({(e1, k1), (e2, k2)})
            pair_count[key] = pair_count.get(key, 0) + 1
            slots_seen |= set(corner)
        if bad:
            continue
        want = {(e, k, s) for (e, k) in ends for s in (0, 1, 2)}
        if slots_seen != want:
            out.append(f"tetra point {t!r}: corners do not partition the 12 end-slots")
        for pair in itertools.combinations(sorted(set(ends)), 2):
            if pair_count.get(frozenset(pair), 0) != 1:
                out.append(f"tetra point {t!r}: edge-ends {pair} must share exactly one corner")

    # boundary attachments
    if f.web is not None:
        seam_ends_at: dict[str, list[tuple[str, int]]] = {v: [] for v in web_vertices}
        for e in f.seam_edges:
            for k in (0, 1):
                if e.ends[k] in seam_ends_at:
                    seam_ends_at[e.ends[k]].append((e.id, k))
        if set(attach_map) != web_vertices:
            out.append("boundary attachments must cover exactly the web vertices")
            return out
        for v in sorted(web_vertices):
            att = attach_map[v]
            if seam_ends_at[v] != [att.seam_end]:
                out.append(f"web vertex {v!r} must carry exactly its attached seam edge end")
                continue
            if sorted(att.slot_map()) != sorted(f.web.incident_ends(v)):
                out.append(f"web vertex {v!r}: slot bijection does not cover its edge-ends")
            elif sorted(att.slot_map().values()) != [0, 1, 2]:
                out.append(f"web vertex {v!r}: slots are not a bijection onto 0,1,2")
    if out:
        return out

    # walk coverage and transitions
    edge_slot_seen: dict[tuple[str, int], int] = {}
    circle_slot_seen: dict[tuple[str, int], int] = {}
    web_edge_seen: dict[str, int] = {}
    corner_used: dict[tuple[str, Corner], int] = {}
    for fc in f.facets:
        if fc.dots < 0:
            out.append(f"facet {fc.id!r} has negative dots")
        if fc.orientable and fc.genus < 0:
            out.append(f"facet {fc.id!r} has negative genus")
        if not fc.orientable and fc.genus < 1:
            out.append(f"facet {fc.id!r}: a non-orientable surface needs a crosscap")
        for walk in fc.boundary:
            if not walk:
                out.append(f"facet {fc.id!r} has an empty walk")
                continue
            if any(isinstance(s, CircleStep) for s in walk):
                if len(walk) != 1:
                    out.append(f"facet {fc.id!r}: a circle walk must be a single step")
                    continue
                (st,) = walk
                try:
                    circ = f.seam_circle(st.circle)
                except KeyError:
                    out.append(f"facet {fc.id!r}: walk on unknown circle {st.circle!r}")
                    continue
                perm = circ.perm
                orbit = [st.slot]
                while perm[orbit[-1]] != st.slot:
                    orbit.append(perm[orbit[-1]])
                if len(orbit) != st.winding:
                    out.append(f"facet {fc.id!r}: walk on circle {st.circle!r} winds "
                               f"{st.winding} but the monodromy orbit of slot {st.slot} "
                               f"has size {len(orbit)}")
                    continue
                for s in orbit:
                    circle_slot_seen[(st.circle, s)] = \
                        circle_slot_seen.get((st.circle, s), 0) + 1
                continue
            if len(walk) == 1 and isinstance(walk[0], WebStep):
                e = f.web.edge(walk[0].edge) if f.web is not None else None
                if e is None or not e.is_circle:
                    out.append(f"facet {fc.id!r}: a single-step web walk must lie on a "
                               f"free circle edge")
                else:
                    web_edge_seen[e.id] = web_edge_seen.get(e.id, 0) + 1
                continue
            ok = True
            for st in walk:
                if isinstance(st, EdgeStep):
                    try:
                        f.seam_edge(st.edge)
                    except KeyError:
                        out.append(f"facet {fc.id!r}: walk on unknown seam edge {st.edge!r}")
                        ok = False
                        break
                    if st.slot not in (0, 1, 2) or st.start_end not in (0, 1):
                        out.append(f"facet {fc.id!r}: malformed step {st}")
                        ok = False
                        break
                    edge_slot_seen[(st.edge, st.slot)] = \
                        edge_slot_seen.get((st.edge, st.slot), 0) + 1
                else:
                    if f.web is None:
                        out.append(f"facet {fc.id!r}: web step in a closed foam")
                        ok = False
                        break
                    try:
                        f.web.edge(st.edge)
                    except KeyError:
                        out.append(f"facet {fc.id!r}: walk on unknown web edge {st.edge!r}")
                        ok = False
                        break
                    web_edge_seen[st.edge] = web_edge_seen.get(st.edge, 0) + 1
            if not ok:
                continue
            for i, st in enumerate(walk):
                nxt = walk[(i + 1) % len(walk)]
                corner, err = _transition_check(f, st, nxt, corner_map, attach_map)
                if err:
                    out.append(f"facet {fc.id!r}: {err}")
                elif corner is not None:
                    v = _step_arrival(f, st)
                    corner_used[(v, corner)] = corner_used.get((v, corner), 0) + 1

    for e in f.seam_edges:
        for s in (0, 1, 2):
            n = edge_slot_seen.get((e.id, s), 0)
            if n != 1:
                out.append(f"seam edge {e.id!r} slot {s} traversed {n} times, expected 1")
    for c in f.seam_circles:
        for s in (0, 1, 2):
            n = circle_slot_seen.get((c.id, s), 0)
            if n != 1:
                out.append(f"seam circle {c.id!r} slot {s} covered {n} times, expected 1")
    if f.web is not None:
        for e in f.web.edges:
            n = web_edge_seen.get(e.id, 0)
            if n != 1:
                out.append(f"web edge {e.id!r} bounded by {n} walk traversals, expected 1")
    for t, corners in corner_map.items():
        for corner in corners:
            n = corner_used.get((t, corner), 0)
            if n != 1:
                out.append(f"corner {sorted(corner)} at {t!r} crossed {n} times, expected 1")
    return out


def _check_valid(f: Foam) -> None:
    bad = validate_foam(f)
    if bad:
        raise ValueError("invalid foam: " + "; ".join(bad))


validate_prefoam = validate_foam


# ---------------------------------------------------------------------------
# Basic invariants
# ---------------------------------------------------------------------------

def euler_characteristic(f: Foam) -> int:
    """chi of the underlying 2-complex: (tetra points - seam edges) plus the
    facet chi values; seam circles are chi-neutral.  A boundary web adds
    (vertices - non-circle edges)."""
    _check_valid(f)
    chi = len(f.tetra_points) - len(f.seam_edges) + sum(fc.chi for fc in f.facets)
    if f.web is not None:
        chi += len(f.web.vertices) - sum(1 for e in f.web.edges if not e.is_circle)
    return chi


@dataclass(frozen=True)
class SeamGraph:
    vertices: tuple[str, ...]
    edges: tuple[tuple[str, tuple[str, str]], ...]  # (seam edge id, ends)
    is_bipartite: bool


def seam_graph(f: Foam) -> SeamGraph:
    """The 4-valent graph of tetra points and seam edges (circles have no
    vertices and are ignored)."""
    _check_valid(f)
    tset = set(f.tetra_points)
    edges = tuple((e.id, e.ends) for e in f.seam_edges
                  if e.ends[0] in tset and e.ends[1] in tset)
    color: dict[str, int] = {}
    bip = True
    adj: dict[str, list[str]] = {t: [] for t in f.tetra_points}
    for _, (a, b) in edges:
        if a == b:
            bip = False
        adj[a].append(b)
        adj[b].append(a)
    for root in f.tetra_points:
        if root in color:
            continue
        color[root] = 0
        stack = [root]
        while stack:
            v = stack.pop()
            for u in adj[v]:
                if u not in color:
                    color[u] = 1 - color[v]
                    stack.append(u)
                elif color[u] == color[v]:
                    bip = False
    return SeamGraph(tuple(f.tetra_points), edges, bip)


def add_dot(f: Foam, facet_id: str) -> Foam:
    f.facet(facet_id)  # raises on unknown facet
    return replace(f, facets=tuple(
        replace(x, dots=x.dots + 1) if x.id == facet_id else x for x in f.facets))


# ---------------------------------------------------------------------------
# Constructors
# ---------------------------------------------------------------------------

def closed_surface(orientable: bool, genus: int, dots: int, facet_id: str = "f") -> Foam:
    return foam(facets=[Facet(facet_id, orientable, genus, dots, ())])


def dotted_sphere(dots: int) -> Foam:
    return closed_surface(True, 0, dots)


def theta_foam(k1: int, k2: int, k3: int) -> Foam:
    """Three disks sharing one seam circle with trivial monodromy."""
    facets = [Facet(f"f{i + 1}", True, 0, k, ((CircleStep("c", i, 1),),))
              for i, k in enumerate((k1, k2, k3))]
    return foam(seam_circles=[SeamCircle("c", "id")], facets=facets)


def disk_cap(dots: int) -> Foam:
    """A disk bounding the single-circle web (the unknot)."""
    w = Web((), (Edge("c1", None),))
    return foam(facets=[Facet("f", True, 0, dots, ((WebStep("c1", 0),),))], web=w)


def theta_half(k1: int, k2: int, k3: int) -> Foam:
    """Half of a theta foam: three half-disks along one seam arc, bounded
    by the theta web."""
    w = Web(("u", "v"), (Edge("e1", ("u", "v")), Edge("e2", ("u", "v")), Edge("e3", ("u", "v"))))
    facets = []
    for i, k in enumerate((k1, k2, k3)):
        walk = (EdgeStep("s", 0, i), WebStep(f"e{i + 1}", 1))
        facets.append(Facet(f"f{i + 1}", True, 0, k, (walk,)))
    attach = {
        "u": VertexAttach(("s", 0), ((("e1", 0), 0), (("e2", 0), 1), (("e3", 0), 2))),
        "v": VertexAttach(("s", 1), ((("e1", 1), 0), (("e2", 1), 1), (("e3", 1), 2))),
    }
    return foam(seam_edges=[SeamEdge("s", ("u", "v"))], facets=facets, web=w, attach=attach)


def _require_k4(w: Web) -> None:
    bad = validate_web(w)
    if bad:
        raise ValueError("invalid web: " + "; ".join(bad))
    if len(w.vertices) != 4 or len(w.edges) != 6 or w.circle_edges or \
            any(e.is_loop for e in w.edges) or \
            len({frozenset(e.ends) for e in w.vertex_edges}) != 6:
        raise ValueError(
            "cone/suspension requires the complete web on 4 vertices: the cone "
            "apex is a tetrahedral point only when its link is the tetrahedron graph")


def _k4_slots(w: Web) -> dict[str, dict[str, int]]:
    """Slots along the seam edge through each web vertex: its three web
    edges, sorted by id, take slots 0,1,2."""
    slots: dict[str, dict[str, int]] = {}
    for v in w.vertices:
        for i, eid in enumerate(sorted(eid for eid, _ in w.incident_ends(v))):
            slots.setdefault(v, {})[eid] = i
    return slots


def cone(w: Web, dots: Mapping[str, int] | None = None) -> Foam:
    """The cone on a tetrahedral web: one tetra point, a seam edge per web
    vertex, a disk facet per web edge, bounded by the web itself."""
    _require_k4(w)
    dots = dict(dots or {})
    slots = _k4_slots(w)
    seam_edges = [SeamEdge(f"s_{v}", ("apex", v)) for v in w.vertices]
    corners = {"apex": tuple(
        frozenset({(f"s_{e.ends[0]}", 0, slots[e.ends[0]][e.id]),
                   (f"s_{e.ends[1]}", 0, slots[e.ends[1]][e.id])})
        for e in w.edges)}
    facets = []
    for e in w.edges:
        u, v = e.ends
        walk = (
            EdgeStep(f"s_{u}", 0, slots[u][e.id]),  # apex -> u
            WebStep(e.id, 0),                        # u -> v
            EdgeStep(f"s_{v}", 1, slots[v][e.id]),  # v -> apex
        )
        facets.append(Facet(f"F_{e.id}", True, 0, dots.get(e.id, 0), (walk,)))
    attach = {
        v: VertexAttach((f"s_{v}", 1),
                        tuple((tok, slots[v][tok[0]]) for tok in sorted(w.incident_ends(v))))
        for v in w.vertices
    }
    return foam(tetra_points=["apex"], seam_edges=seam_edges, corners=corners,
                facets=facets, web=w, attach=attach)


def suspension(w: Web, dots: Mapping[str, int] | None = None) -> Foam:
    """The closed double of the cone: two tetra points joined by one seam
    edge per web vertex, with a disk facet per web edge."""
    _require_k4(w)
    dots = dict(dots or {})
    slots = _k4_slots(w)
    seam_edges = [SeamEdge(f"s_{v}", ("n", "s")) for v in w.vertices]
    corners = {
        pole: tuple(
            frozenset({(f"s_{e.ends[0]}", k, slots[e.ends[0]][e.id]),
                       (f"s_{e.ends[1]}", k, slots[e.ends[1]][e.id])})
            for e in w.edges)
        for pole, k in (("n", 0), ("s", 1))
    }
    facets = []
    for e in w.edges:
        u, v = e.ends
        walk = (
            EdgeStep(f"s_{u}", 0, slots[u][e.id]),  # north -> south along u's seam
            EdgeStep(f"s_{v}", 1, slots[v][e.id]),  # south -> north along v's seam
        )
        facets.append(Facet(f"F_{e.id}", True, 0, dots.get(e.id, 0), (walk,)))
    return foam(tetra_points=["n", "s"], seam_edges=seam_edges,
                corners=corners, facets=facets)


# ---------------------------------------------------------------------------
# Surgery engine
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Splice:
    """Join two freed seam edge ends; ``pairing`` maps slots of the end_a
    edge to slots of the end_b edge."""
    end_a: tuple[str, int]
    end_b: tuple[str, int]
    pairing: tuple[tuple[int, int], ...]

    def pairing_map(self) -> dict[int, int]:
        return dict(self.pairing)


@dataclass(frozen=True)
class _Fragment:
    facet: str
    steps: tuple[EdgeStep, ...]
    head: CornerSlot  # departure locator (edge, end, slot)
    tail: CornerSlot  # arrival locator


@dataclass
class _ChainAssign:
    new_id: str
    kind: str  # "edge" | "circle"
    slot_map: dict[int, int]  # old slot on this edge -> new slot
    entered: int  # end through which the chain walk entered this edge


def _reverse_steps(steps: Sequence[EdgeStep]) -> tuple[EdgeStep, ...]:
    return tuple(EdgeStep(s.edge, 1 - s.start_end, s.slot) for s in reversed(steps))


def _surgery(f: Foam, dead_vertices: set[str], dead_seam_edges: set[str],
             splices: Sequence[Splice],
             chi_bonds: Sequence[tuple[str, str, int]],
             drop_web: bool,
             circle_stitch_parities: Sequence[tuple[str, str, int]] = ()) -> Foam:
    """Rebuild a foam after deleting cells and splicing seam edge ends.

    Every seam edge end attached to a dead vertex must either belong to a
    dead edge or be covered by exactly one splice.  With ``drop_web`` the
    whole boundary web is consumed (gluing): web edge steps disappear from
    the walks.  ``chi_bonds`` lists the Euler corrections of the surface
    gluings between merged facets; ``circle_stitch_parities`` the
    orientation constraints of free-circle gluings.
    """
    corner_map = f.corner_map()

    # --- resolve the seam 1-complex --------------------------------------
    splice_at: dict[tuple[str, int], Splice] = {}
    for sp in splices:
        for end in (sp.end_a, sp.end_b):
            if end in splice_at:
                raise ValueError(f"edge end {end} spliced twice")
            splice_at[end] = sp
    involved = sorted({end[0] for end in splice_at})
    assert not set(involved) & dead_seam_edges

    edge_by_id = {e.id: e for e in f.seam_edges}
    existing_ids = set(edge_by_id) | {c.id for c in f.seam_circles} | \
        set(f.tetra_points) | {fc.id for fc in f.facets}
    counter = itertools.count()

    def fresh(prefix: str) -> str:
        while True:
            cand = f"{prefix}{next(counter)}"
            if cand not in existing_ids:
                existing_ids.add(cand)
                return cand

    def hop(out_end: tuple[str, int]) -> tuple[str, int, dict[int, int]]:
        """Cross the splice at ``out_end``: the next edge, the end entered,
        and the slot map (this edge's slots -> next edge's slots)."""
        sp = splice_at[out_end]
        if out_end == sp.end_a:
            return sp.end_b[0], sp.end_b[1], sp.pairing_map()
        assert out_end == sp.end_b
        return sp.end_a[0], sp.end_a[1], {v: k for k, v in sp.pairing_map().items()}

    chain_assign: dict[str, _ChainAssign] = {}
    chain_terminals: dict[str, tuple[tuple[str, int], tuple[str, int]]] = {}
    circle_length: dict[str, int] = {}
    circle_monodromy: dict[str, str] = {}
    done: set[str] = set()

    free_ends = sorted((eid, k) for eid in involved for k in (0, 1)
                       if (eid, k) not in splice_at)
    for start in free_ends:
        if start[0] in done:
            continue
        nid = fresh("m")
        slot_map = {0: 0, 1: 1, 2: 2}
        cur_edge, entered = start
        chain_assign[cur_edge] = _ChainAssign(nid, "edge", dict(slot_map), entered)
        done.add(cur_edge)
        while True:
            out_end = (cur_edge, 1 - entered)
            if out_end not in splice_at:
                chain_terminals[nid] = (start, out_end)
                break
            nxt_edge, nxt_entered, pm = hop(out_end)
            slot_map = {pm[old]: slot_map[old] for old in (0, 1, 2)}
            cur_edge, entered = nxt_edge, nxt_entered
            chain_assign[cur_edge] = _ChainAssign(nid, "edge", dict(slot_map), entered)
            done.add(cur_edge)

    for eid in involved:
        if eid in done:
            continue
        nid = fresh("mc")
        slot_map = {0: 0, 1: 1, 2: 2}
        cur_edge, entered = eid, 0
        length = 1
        chain_assign[cur_edge] = _ChainAssign(nid, "circle", dict(slot_map), entered)
        done.add(cur_edge)
        while True:
            out_end = (cur_edge, 1 - entered)
            nxt_edge, nxt_entered, pm = hop(out_end)
            if nxt_edge == eid:
                assert nxt_entered == 0, "a circle chain must close at its starting end"
                # new slot n flows, after one positive loop, into the base
                # edge's slot pm[inv_slot_map(n)]
                inv = {v: k for k, v in slot_map.items()}
                perm = tuple(pm[inv[n]] for n in (0, 1, 2))
                circle_monodromy[nid] = _PERM_LABEL[perm]
                circle_length[nid] = length
                break
            slot_map = {pm[old]: slot_map[old] for old in (0, 1, 2)}
            cur_edge, entered = nxt_edge, nxt_entered
            length += 1
            chain_assign[cur_edge] = _ChainAssign(nid, "circle", dict(slot_map), entered)
            done.add(cur_edge)

    # --- cut walks into fragments -----------------------------------------
    def step_dead(s: Step) -> bool:
        if isinstance(s, EdgeStep):
            return s.edge in dead_seam_edges
        if isinstance(s, WebStep):
            return drop_web
        return False

    intact_walks: dict[str, list[Walk]] = {}
    fragments: list[_Fragment] = []
    for fc in f.facets:
        for walk in fc.boundary:
            if len(walk) == 1 and isinstance(walk[0], (WebStep, CircleStep)):
                if not step_dead(walk[0]):
                    intact_walks.setdefault(fc.id, []).append(walk)
                continue
            cut_positions = [i for i, st in enumerate(walk)
                             if _step_arrival(f, st) in dead_vertices]
            if not cut_positions:
                assert not any(step_dead(s) for s in walk)
                intact_walks.setdefault(fc.id, []).append(walk)
                continue
            n = len(walk)
            for idx, cut in enumerate(cut_positions):
                start = (cut + 1) % n
                end = cut_positions[(idx + 1) % len(cut_positions)]
                run = []
                j = start
                while True:
                    run.append(walk[j])
                    if j == end:
                        break
                    j = (j + 1) % n
                if all(step_dead(s) for s in run):
                    continue
                assert not any(step_dead(s) for s in run), \
                    "a cut run must be entirely dead or entirely alive"
                head, tail = run[0], run[-1]
                assert isinstance(head, EdgeStep) and isinstance(tail, EdgeStep)
                fragments.append(_Fragment(
                    fc.id, tuple(run),
                    (head.edge, head.start_end, head.slot),
                    (tail.edge, 1 - tail.start_end, tail.slot)))

    # --- link fragment ends through the splice slot pairs ------------------
    loc_owner: dict[CornerSlot, tuple[int, str]] = {}
    for i, fr in enumerate(fragments):
        assert fr.head not in loc_owner and fr.tail not in loc_owner
        loc_owner[fr.head] = (i, "head")
        loc_owner[fr.tail] = (i, "tail")
    links: list[tuple[tuple[int, str], tuple[int, str]]] = []
    for sp in splices:
        for pa, pb in sp.pairing:
            la = (sp.end_a[0], sp.end_a[1], pa)
            lb = (sp.end_b[0], sp.end_b[1], pb)
            assert la in loc_owner and lb in loc_owner, \
                f"splice slot pair {la} ~ {lb} has no walk strand"
            links.append((loc_owner[la], loc_owner[lb]))

    # --- facet components and orientation transport ------------------------
    parent: dict[str, str] = {fc.id: fc.id for fc in f.facets}

    def find(x: str) -> str:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a: str, b: str) -> None:
        parent[find(a)] = find(b)

    constraint_edges: list[tuple[str, str, int]] = []
    for (ia, sa), (ib, sb) in links:
        fa, fb = fragments[ia].facet, fragments[ib].facet
        union(fa, fb)
        constraint_edges.append((fa, fb, 1 if sa == sb else 0))
    for fa, fb, parity in circle_stitch_parities:
        union(fa, fb)
        constraint_edges.append((fa, fb, parity))

    facet_by_id = {fc.id: fc for fc in f.facets}
    components: dict[str, list[str]] = {}
    for fc in f.facets:
        components.setdefault(find(fc.id), []).append(fc.id)

    flip: dict[str, int] = {}
    orientable_comp: dict[str, bool] = {}
    for root, members in components.items():
        ok = all(facet_by_id[m].orientable for m in members)
        assign: dict[str, Optional[int]] = {m: None for m in members}
        if ok:
            adj: dict[str, list[tuple[str, int]]] = {m: [] for m in members}
            for fa, fb, parity in constraint_edges:
                if find(fa) != root:
                    continue
                adj[fa].append((fb, parity))
                adj[fb].append((fa, parity))
            for m in members:
                if assign[m] is not None:
                    continue
                assign[m] = 0
                stack = [m]
                while stack and ok:
                    x = stack.pop()
                    for y, parity in adj[x]:
                        want = assign[x] ^ parity
                        if assign[y] is None:
                            assign[y] = want
                            stack.append(y)
                        elif assign[y] != want:
                            ok = False
                            break
        orientable_comp[root] = ok
        for m in members:
            flip[m] = (assign[m] or 0) if ok else 0

    # --- assemble the re-stitched closed walks -----------------------------
    oriented: list[_Fragment] = []
    for fr in fragments:
        if flip[fr.facet]:
            oriented.append(_Fragment(fr.facet, _reverse_steps(fr.steps), fr.tail, fr.head))
        else:
            oriented.append(fr)
    link_of: dict[tuple[int, str], tuple[int, str]] = {}
    for (ia, sa), (ib, sb) in links:
        if flip[fragments[ia].facet]:
            sa = "head" if sa == "tail" else "tail"
        if flip[fragments[ib].facet]:
            sb = "head" if sb == "tail" else "tail"
        link_of[(ia, sa)] = (ib, sb)
        link_of[(ib, sb)] = (ia, sa)

    new_curves: dict[str, list[list[EdgeStep]]] = {}
    used: set[int] = set()
    for i0 in range(len(oriented)):
        if i0 in used:
            continue
        steps: list[EdgeStep] = []
        i, forward = i0, True
        while True:
            used.add(i)
            fr = oriented[i]
            steps.extend(fr.steps if forward else _reverse_steps(fr.steps))
            nxt, side = link_of[(i, "tail" if forward else "head")]
            forward = side == "head"
            i = nxt
            if i == i0:
                assert forward, "a closed curve must re-enter its first strand forward"
                break
        new_curves.setdefault(find(oriented[i0].facet), []).append(steps)

    # --- remap assembled steps onto the merged seam complex ----------------
    def remap_curve(steps: list[EdgeStep]) -> Walk:
        out: list[EdgeStep] = []
        circle_id: Optional[str] = None
        for s in steps:
            ca = chain_assign.get(s.edge)
            if ca is None:
                out.append(s)
                continue
            new_slot = ca.slot_map[s.slot]
            fwd = s.start_end == ca.entered
            if ca.kind == "circle":
                circle_id = ca.new_id
            out.append(EdgeStep(ca.new_id, 0 if fwd else 1, new_slot))
        if circle_id is not None:
            assert all(s.edge == circle_id for s in out), \
                "a spliced circle chain must carry whole closed walks"
            m = circle_length[circle_id]
            assert len(out) % m == 0
            return (CircleStep(circle_id, out[0].slot, len(out) // m),)
        merged: list[EdgeStep] = []
        for s in out:
            if merged and merged[-1] == s:
                continue  # continuation across a splice point
            merged.append(s)
        if len(merged) > 1 and merged[0] == merged[-1]:
            merged.pop()
        return tuple(merged)

    # --- rebuild cells ------------------------------------------------------
    new_edge_records: dict[str, SeamEdge] = {}
    token_end_map: dict[tuple[str, int], tuple[str, int]] = {}
    for nid, (start_tok, finish_tok) in chain_terminals.items():
        v0 = edge_by_id[start_tok[0]].ends[start_tok[1]]
        v1 = edge_by_id[finish_tok[0]].ends[finish_tok[1]]
        assert v0 not in dead_vertices and v1 not in dead_vertices
        new_edge_records[nid] = SeamEdge(nid, (v0, v1))
        token_end_map[start_tok] = (nid, 0)
        token_end_map[finish_tok] = (nid, 1)

    def remap_corner_slot(cs: CornerSlot) -> CornerSlot:
        e, k, s = cs
        if (e, k) in token_end_map:
            nid, nk = token_end_map[(e, k)]
            return (nid, nk, chain_assign[e].slot_map[s])
        return cs

    survivors_e = [e for e in f.seam_edges
                   if e.id not in dead_seam_edges and e.id not in set(involved)]
    new_tetras = [t for t in f.tetra_points if t not in dead_vertices]
    new_corners = {
        t: tuple(frozenset(remap_corner_slot(cs) for cs in corner)
                 for corner in corner_map[t])
        for t in new_tetras
    }

    new_web: Optional[Web] = None
    new_attach: dict[str, VertexAttach] = {}
    if f.web is not None and not drop_web:
        new_web = f.web
        for v, att in f.attach_map().items():
            if v in dead_vertices:
                continue
            se = att.seam_end
            if se in token_end_map:
                new_attach[v] = VertexAttach(
                    token_end_map[se],
                    tuple((tok, chain_assign[se[0]].slot_map[s]) for tok, s in att.slot_of))
            else:
                new_attach[v] = att

    new_facets = []
    for root in sorted(components, key=lambda r: min(components[r])):
        members = sorted(components[root])
        walks: list[Walk] = []
        for m in members:
            walks.extend(intact_walks.get(m, []))
        for steps in new_curves.get(root, []):
            walks.append(remap_curve(steps))
        chi = sum(facet_by_id[m].chi for m in members)
        for fa, fb, delta in chi_bonds:
            if find(fa) == root:
                assert find(fb) == root, "a chi bond must join facets of one component"
                chi += delta
        dots = sum(facet_by_id[m].dots for m in members)
        b = len(walks)
        if orientable_comp[root]:
            g2 = 2 - chi - b
            assert g2 >= 0 and g2 % 2 == 0, "orientable component needs chi = 2 - 2g - b"
            new_facets.append(Facet(min(members), True, g2 // 2, dots, tuple(walks)))
        else:
            k = 2 - chi - b
            assert k >= 1, "non-orientable component needs chi = 2 - k - b with k >= 1"
            new_facets.append(Facet(min(members), False, k, dots, tuple(walks)))

    return foam(
        tetra_points=new_tetras,
        seam_edges=list(survivors_e) + sorted(new_edge_records.values(), key=lambda e: e.id),
        seam_circles=list(f.seam_circles) +
        [SeamCircle(cid, label) for cid, label in sorted(circle_monodromy.items())],
        corners=new_corners,
        facets=new_facets,
        web=None if drop_web else f.web,
        attach=new_attach if (f.web is not None and not drop_web) else None,
    )


# ---------------------------------------------------------------------------
# Canceling a pair of tetra points
# ---------------------------------------------------------------------------

def cancel_tetra_pair(f: Foam, edge_id: str) -> Foam:
    """Cancel the two tetra points joined by ``edge_id``.

    The edge and both endpoints are deleted; the three neighbor edge-ends
    at one endpoint are spliced to the three at the other, matched through
    the facets crossing the deleted edge.  The slot crossing e pairs
    through those facet walks; the two remaining slots pair so that the
    corner {x_i, x_j} slot continues into the corner {y_si, y_sj} slot.
    """
    _check_valid(f)
    e = f.seam_edge(edge_id)
    t1, t2 = e.ends
    if t1 == t2:
        raise ValueError(f"cannot cancel along the loop {edge_id!r}: "
                         "its seam graph is not bipartite")
    tset = set(f.tetra_points)
    if t1 not in tset or t2 not in tset:
        raise ValueError(f"edge {edge_id!r} does not join two tetra points")
    corner_map = f.corner_map()

    def corner_partner(t: str, end_idx: int, slot: int) -> CornerSlot:
        me = (edge_id, end_idx, slot)
        for corner in corner_map[t]:
            if me in corner:
                (other,) = [cs for cs in corner if cs != me]
                return other
        raise AssertionError("corner structure incomplete")

    def corner_between(t: str, a: tuple[str, int], b: tuple[str, int]) -> Corner:
        for corner in corner_map[t]:
            if {(cs[0], cs[1]) for cs in corner} == {a, b}:
                return corner
        raise AssertionError(f"no corner between {a} and {b} at {t}")

    x_of = {s: corner_partner(t1, 0 if e.ends[0] == t1 else 1, s) for s in (0, 1, 2)}
    y_of = {s: corner_partner(t2, 1 if e.ends[0] == t1 else 0, s) for s in (0, 1, 2)}

    splices = []
    for s in (0, 1, 2):
        xe, xk, xslot = x_of[s]
        ye, yk, yslot = y_of[s]
        pairing = {xslot: yslot}
        for r in (0, 1, 2):
            if r == s:
                continue
            corner_x = corner_between(t1, (xe, xk), (x_of[r][0], x_of[r][1]))
            corner_y = corner_between(t2, (ye, yk), (y_of[r][0], y_of[r][1]))
            (slot_x,) = [cs[2] for cs in corner_x if (cs[0], cs[1]) == (xe, xk)]
            (slot_y,) = [cs[2] for cs in corner_y if (cs[0], cs[1]) == (ye, yk)]
            pairing[slot_x] = slot_y
        splices.append(Splice((xe, xk), (ye, yk), tuple(sorted(pairing.items()))))

    # the corner sheets {x_i,x_j} at t1 and {y_si,y_sj} at t2 are joined by
    # a band alongside the merged seams: chi drops by one per pair
    crossing = _corner_crossing_facets(f)
    chi_bonds = []
    for r, s in itertools.combinations((0, 1, 2), 2):
        cx = corner_between(t1, (x_of[r][0], x_of[r][1]), (x_of[s][0], x_of[s][1]))
        cy = corner_between(t2, (y_of[r][0], y_of[r][1]), (y_of[s][0], y_of[s][1]))
        chi_bonds.append((crossing[(t1, cx)], crossing[(t2, cy)], -1))

    return _surgery(f, {t1, t2}, {edge_id}, splices, chi_bonds, drop_web=False)


def _corner_crossing_facets(f: Foam) -> dict[tuple[str, Corner], str]:
    """For each corner, the facet whose boundary walk crosses it."""
    corner_map = f.corner_map()
    attach_map = f.attach_map()
    out: dict[tuple[str, Corner], str] = {}
    for fc in f.facets:
        for walk in fc.boundary:
            for i, st in enumerate(walk):
                if not isinstance(st, EdgeStep):
                    continue
                v = _step_arrival(f, st)
                if v in corner_map:
                    corner, err = _transition_check(
                        f, st, walk[(i + 1) % len(walk)], corner_map, attach_map)
                    assert err is None and corner is not None
                    out[(v, corner)] = fc.id
    return out


# ---------------------------------------------------------------------------
# Gluing along boundary webs
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class WebMatching:
    vertices: tuple[tuple[str, str], ...]
    edges: tuple[tuple[str, str], ...]

    def vmap(self) -> dict[str, str]:
        return dict(self.vertices)

    def emap(self) -> dict[str, str]:
        return dict(self.edges)


def identity_matching(w: Web) -> WebMatching:
    return WebMatching(tuple((v, v) for v in w.vertices),
                       tuple((e.id, e.id) for e in w.edges))


def _check_matching(wa: Web, wb: Web, m: WebMatching) -> Optional[str]:
    vmap, emap = m.vmap(), m.emap()
    if sorted(vmap) != sorted(wa.vertices) or sorted(vmap.values()) != sorted(wb.vertices):
        return "vertex map is not a bijection between the boundary webs"
    if sorted(emap) != sorted(e.id for e in wa.edges) or \
            sorted(emap.values()) != sorted(e.id for e in wb.edges):
        return "edge map is not a bijection between the boundary webs"
    for e in wa.edges:
        img = wb.edge(emap[e.id])
        if e.ends is None:
            if img.ends is not None:
                return f"edge {e.id!r} is a free circle but its image {img.id!r} is not"
            continue
        if img.ends is None:
            return f"edge {e.id!r} maps onto the free circle {img.id!r}"
        if sorted(vmap[v] for v in e.ends) != sorted(img.ends):
            return f"edge {e.id!r} does not map onto the ends of {img.id!r}"
    return None


def _prefix_foam(f: Foam, prefix: str) -> Foam:
    """Namespace every cell id (tetra, seam, facet, web) of a foam."""

    def p(x: str) -> str:
        return prefix + x

    def pstep(s: Step) -> Step:
        if isinstance(s, EdgeStep):
            return EdgeStep(p(s.edge), s.start_end, s.slot)
        if isinstance(s, CircleStep):
            return CircleStep(p(s.circle), s.slot, s.winding)
        return WebStep(p(s.edge), s.start_end)

    web = None
    if f.web is not None:
        web = Web(tuple(p(v) for v in f.web.vertices),
                  tuple(Edge(p(e.id), None if e.ends is None else
                             (p(e.ends[0]), p(e.ends[1]))) for e in f.web.edges))
    return foam(
        tetra_points=[p(t) for t in f.tetra_points],
        seam_edges=[SeamEdge(p(e.id), (p(e.ends[0]), p(e.ends[1]))) for e in f.seam_edges],
        seam_circles=[SeamCircle(p(c.id), c.monodromy) for c in f.seam_circles],
        corners={p(t): tuple(frozenset((p(e), k, s) for e, k, s in corner)
                             for corner in corners)
                 for t, corners in f.corners},
        facets=[Facet(p(fc.id), fc.orientable, fc.genus, fc.dots,
                      tuple(tuple(pstep(s) for s in walk) for walk in fc.boundary))
                for fc in f.facets],
        web=web,
        attach={p(v): VertexAttach((p(att.seam_end[0]), att.seam_end[1]),
                                   tuple(((p(tok[0]), tok[1]), s) for tok, s in att.slot_of))
                for v, att in f.attach},
    )


def _web_edge_owner(f: Foam) -> dict[str, tuple[str, int]]:
    """facet id and traversal direction for each boundary web edge."""
    out = {}
    for fc in f.facets:
        for walk in fc.boundary:
            for st in walk:
                if isinstance(st, WebStep):
                    out[st.edge] = (fc.id, st.start_end)
    return out


def glue(a: Foam, b: Foam, matching: WebMatching) -> Foam:
    """Glue two foams along their boundary webs.

    The matching must be a web isomorphism from a's boundary onto b's.
    Matched web edges become interior arcs of merged facets; at each
    matched vertex the attached seam edge ends are spliced, with slots
    paired through the two vertex attachments.  Cell ids of the result are
    prefixed "a:" / "b:" (the two input id spaces may collide).
    """
    _check_valid(a)
    _check_valid(b)
    if a.web is None or b.web is None:
        raise ValueError("glue requires foams with boundary")
    err = _check_matching(a.web, b.web, matching)
    if err:
        raise ValueError("boundary webs do not match: " + err)

    pa, pb = _prefix_foam(a, "a:"), _prefix_foam(b, "b:")
    vmap = {("a:" + k): ("b:" + v) for k, v in matching.vmap().items()}
    emap = {("a:" + k): ("b:" + v) for k, v in matching.emap().items()}

    combined = foam(
        tetra_points=list(pa.tetra_points) + list(pb.tetra_points),
        seam_edges=list(pa.seam_edges) + list(pb.seam_edges),
        seam_circles=list(pa.seam_circles) + list(pb.seam_circles),
        corners={**pa.corner_map(), **pb.corner_map()},
        facets=list(pa.facets) + list(pb.facets),
        web=Web(pa.web.vertices + pb.web.vertices, pa.web.edges + pb.web.edges),
        attach={**pa.attach_map(), **pb.attach_map()},
    )

    attach_a, attach_b = pa.attach_map(), pb.attach_map()
    splices = []
    for va, vb in vmap.items():
        att_a, att_b = attach_a[va], attach_b[vb]
        slot_b = att_b.slot_map()
        pairing = {}
        for (ea, ka), s in att_a.slot_map().items():
            eb = emap[ea]
            ends_b = pb.web.edge(eb).ends
            if ends_b[0] == ends_b[1]:
                kb = ka  # loop at the glued vertex: ends correspond by index
            else:
                kb = 0 if ends_b[0] == vb else 1
            pairing[s] = slot_b[(eb, kb)]
        splices.append(Splice(att_a.seam_end, att_b.seam_end,
                              tuple(sorted(pairing.items()))))

    owner_a, owner_b = _web_edge_owner(pa), _web_edge_owner(pb)
    chi_bonds = []
    circle_parities = []
    for ea, eb in emap.items():
        fa, da = owner_a[ea]
        fb, db = owner_b[eb]
        if pa.web.edge(ea).is_circle:
            circle_parities.append((fa, fb, 1 if da == db else 0))
        else:
            chi_bonds.append((fa, fb, -1))

    dead_vertices = set(vmap) | set(vmap.values())
    return _surgery(combined, dead_vertices, set(), splices, chi_bonds,
                    drop_web=True, circle_stitch_parities=circle_parities)

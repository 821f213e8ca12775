"""Planar webs via rotation systems, and the dimension-reduction engine.

A :class:`RotationWeb` is a web together with a cyclic order of the three
edge-ends at every vertex (a combinatorial map).  Faces are traced as
orbits of the map, which determines the genus of each connected
component; the web is planar when every component has genus 0.

``reduce_dimension`` rewrites a planar web by the local moves that the
dimension of the associated vector space is known to satisfy:

    empty web          -> 1
    free circle        -> delete it, multiply by 3
    bridge or 1-gon    -> 0
    bigon face         -> collapse to a single edge, multiply by 2
    triangle face      -> collapse to a vertex
    square face        -> sum of the two planar smoothings

The Tait-coloring count satisfies the same recursions, so whenever the
rewriting terminates the total equals ``tait_count``; webs with no face
of length at most 4 (the dodecahedron, for instance) come back STUCK.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable, Optional

from .webs import Edge, Web, find_bridges, tait_count, validate_web

# A dart is a directed edge-side: (edge id, end index it leaves from).
Dart = tuple[str, int]


@dataclass(frozen=True)
class RotationWeb:
    web: Web
    rotation: dict[str, tuple[Dart, ...]]  # vertex -> cyclic order of its 3 end tokens


def rotation_web(w: Web, rotation: dict[str, tuple[Dart, ...]]) -> RotationWeb:
    rw = RotationWeb(w, {v: tuple(tuple(t) for t in r) for v, r in rotation.items()})
    bad = validate_rotation_web(rw)
    if bad:
        raise ValueError("invalid rotation web: " + "; ".join(bad))
    return rw


def validate_rotation_web(rw: RotationWeb) -> list[str]:
    out = validate_web(rw.web)
    if out:
        return out
    for v in rw.web.vertices:
        rot = rw.rotation.get(v)
        if rot is None:
            out.append(f"vertex {v!r} missing from rotation")
            continue
        if sorted(rot) != sorted(rw.web.incident_ends(v)):
            out.append(f"rotation at vertex {v!r} does not list its incident edge-ends")
    for v in sorted(set(rw.rotation) - set(rw.web.vertices)):
        out.append(f"rotation lists unknown vertex {v!r}")
    return out


# ---------------------------------------------------------------------------
# Face tracing
# ---------------------------------------------------------------------------

def faces(rw: RotationWeb) -> list[tuple[Dart, ...]]:
    """Face walks of the combinatorial map.

    Each dart ``(edge, end)``, the traversal of ``edge`` starting at end
    index ``end``, appears in exactly one walk; a free circle contributes
    its two sides as two one-dart walks.
    """
    bad = validate_rotation_web(rw)
    if bad:
        raise ValueError("invalid rotation web: " + "; ".join(bad))
    w = rw.web
    depart_after: dict[Dart, Dart] = {}
    for v in w.vertices:
        rot = rw.rotation[v]
        for i, token in enumerate(rot):
            depart_after[token] = rot[(i + 1) % len(rot)]

    def next_dart(d: Dart) -> Dart:
        e, k = d
        return depart_after[(e, 1 - k)]

    walks: list[tuple[Dart, ...]] = []
    seen: set[Dart] = set()
    for d0 in sorted((e.id, k) for e in w.vertex_edges for k in (0, 1)):
        if d0 in seen:
            continue
        walk = []
        d = d0
        while d not in seen:
            seen.add(d)
            walk.append(d)
            d = next_dart(d)
        walks.append(tuple(walk))
    for c in sorted(w.circle_edges, key=lambda e: e.id):
        walks.append(((c.id, 0),))
        walks.append(((c.id, 1),))
    return walks


def _components(w: Web) -> list[tuple[set[str], set[str]]]:
    """Connected components as (vertex set, edge set); each free circle is
    its own component."""
    adj: dict[str, list[tuple[str, str]]] = {v: [] for v in w.vertices}
    for e in w.vertex_edges:
        a, b = e.ends
        adj[a].append((b, e.id))
        adj[b].append((a, e.id))
    comps = []
    seen: set[str] = set()
    for root in w.vertices:
        if root in seen:
            continue
        vs, es = set(), set()
        stack = [root]
        seen.add(root)
        while stack:
            v = stack.pop()
            vs.add(v)
            for u, eid in adj[v]:
                es.add(eid)
                if u not in seen:
                    seen.add(u)
                    stack.append(u)
        comps.append((vs, es))
    for c in w.circle_edges:
        comps.append((set(), {c.id}))
    return comps


def component_genera(rw: RotationWeb) -> list[int]:
    """Genus of each connected component, from V - E + F = 2 - 2g.

    A free circle counts as one implicit vertex on one edge with two
    faces (a sphere), hence genus 0.
    """
    walks = faces(rw)
    genera = []
    for vs, es in _components(rw.web):
        if not vs:
            genera.append(0)
            continue
        f = sum(1 for walk in walks if walk[0][0] in es)
        chi = len(vs) - len(es) + f
        g2 = 2 - chi
        assert g2 >= 0 and g2 % 2 == 0, "Euler characteristic of a map component must be 2-2g"
        genera.append(g2 // 2)
    return genera


def is_planar(rw: RotationWeb) -> bool:
    return all(g == 0 for g in component_genera(rw))


# ---------------------------------------------------------------------------
# Local rewrites
# ---------------------------------------------------------------------------

def _fresh_ids(existing: set[str], n: int) -> list[str]:
    out: list[str] = []
    k = 0
    while len(out) < n:
        cand = f"m{k}"
        if cand not in existing:
            out.append(cand)
            existing.add(cand)
        k += 1
    return out


def _splice(rw: RotationWeb, dead_vertices: set[str], dead_edges: set[str],
            joins: list[tuple[Dart, Dart]]) -> RotationWeb:
    """Remove cells and concatenate edges pairwise at the joined ends.

    Each join identifies two edge-end tokens whose attachments are being
    removed.  Chains of joined edges become single new edges; closed
    chains become free circles.  Rotations at surviving vertices are
    retokened in place.
    """
    w = rw.web
    join_of: dict[Dart, Dart] = {}
    for a, b in joins:
        assert a != b
        join_of[a] = b
        join_of[b] = a
    involved = sorted({t[0] for t in join_of})
    assert not set(involved) & dead_edges

    end_at = {(e.id, k): e.ends[k] for e in w.vertex_edges for k in (0, 1)}
    existing = {e.id for e in w.edges} | set(w.vertices)
    token_map: dict[Dart, Dart] = {}
    new_edges: list[Edge] = []
    done: set[str] = set()
    free_tokens = sorted(
        (eid, k) for eid in involved for k in (0, 1) if (eid, k) not in join_of
    )

    # open chains, walked from each free endpoint once
    for start in free_tokens:
        if start[0] in done:
            continue
        cur = start
        while True:
            done.add(cur[0])
            other = (cur[0], 1 - cur[1])
            if other not in join_of:
                finish = other
                break
            cur = join_of[other]
        (nid,) = _fresh_ids(existing, 1)
        v0, v1 = end_at[start], end_at[finish]
        assert v0 not in dead_vertices and v1 not in dead_vertices
        new_edges.append(Edge(nid, (v0, v1)))
        token_map[start] = (nid, 0)
        token_map[finish] = (nid, 1)

    # what remains of the involved edges forms closed chains -> circles
    for eid in involved:
        if eid in done:
            continue
        cur: Dart = (eid, 0)
        while True:
            done.add(cur[0])
            nxt = join_of[(cur[0], 1 - cur[1])]
            if nxt[0] == eid:
                break
            cur = nxt
        (nid,) = _fresh_ids(existing, 1)
        new_edges.append(Edge(nid, None))

    survivors = tuple(e for e in w.edges if e.id not in dead_edges and e.id not in involved)
    new_vertices = tuple(v for v in w.vertices if v not in dead_vertices)
    new_rotation = {
        v: tuple(token_map.get(t, t) for t in rw.rotation[v]) for v in new_vertices
    }
    return RotationWeb(Web(new_vertices, survivors + tuple(new_edges)), new_rotation)


def _drop_circle(rw: RotationWeb, circle_id: str) -> RotationWeb:
    w = rw.web
    return RotationWeb(
        Web(w.vertices, tuple(e for e in w.edges if e.id != circle_id)),
        dict(rw.rotation),
    )


def _collapse_bigon(rw: RotationWeb, walk: tuple[Dart, ...]) -> RotationWeb:
    (p, kp), (q, _) = walk
    w = rw.web
    u, v = w.edge(p).ends[kp], w.edge(p).ends[1 - kp]
    legs = [t for vert in (u, v) for t in rw.rotation[vert] if t[0] not in (p, q)]
    assert len(legs) == 2
    return _splice(rw, {u, v}, {p, q}, [(legs[0], legs[1])])


def _collapse_triangle(rw: RotationWeb, walk: tuple[Dart, ...]) -> RotationWeb:
    w = rw.web
    sides = {d[0] for d in walk}
    verts = [w.edge(e).ends[k] for e, k in walk]
    legs = []
    for vert in verts:
        (leg,) = [t for t in rw.rotation[vert] if t[0] not in sides]
        legs.append(leg)
    legs_at = dict(zip(legs, verts))
    existing = {e.id for e in w.edges} | set(w.vertices)
    (z,) = _fresh_ids(existing, 1)

    def build(leg_order: tuple[Dart, ...]) -> RotationWeb:
        new_edges = []
        for e in w.edges:
            if e.id in sides:
                continue
            ends = e.ends
            if ends is not None:
                ends = tuple(
                    z if (e.id, k) in legs_at and ends[k] == legs_at[(e.id, k)] else ends[k]
                    for k in (0, 1)
                )
            new_edges.append(Edge(e.id, ends))
        new_vertices = tuple(vv for vv in w.vertices if vv not in verts) + (z,)
        rot = {vv: rw.rotation[vv] for vv in w.vertices if vv not in verts}
        rot[z] = leg_order
        return RotationWeb(Web(new_vertices, tuple(new_edges)), rot)

    out = build(tuple(legs))
    if all(g == 0 for g in component_genera(out)):
        return out
    out = build(tuple(reversed(legs)))
    assert all(g == 0 for g in component_genera(out)), "triangle collapse broke planarity"
    return out


def _smooth_square(rw: RotationWeb, walk: tuple[Dart, ...]) -> tuple[RotationWeb, RotationWeb]:
    w = rw.web
    sides = {d[0] for d in walk}
    verts = [w.edge(e).ends[k] for e, k in walk]
    legs = []
    for vert in verts:
        (leg,) = [t for t in rw.rotation[vert] if t[0] not in sides]
        legs.append(leg)
    x1, x2, x3, x4 = legs
    dead_v, dead_e = set(verts), sides
    k_prime = _splice(rw, dead_v, dead_e, [(x1, x4), (x2, x3)])
    k_dprime = _splice(rw, dead_v, dead_e, [(x1, x2), (x3, x4)])
    return k_prime, k_dprime


# ---------------------------------------------------------------------------
# Reduction engine
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ReductionResult:
    value: Optional[int]  # set when every branch terminated
    resolved: int         # sum of multipliers over terminated branches
    residuals: tuple[tuple[int, RotationWeb], ...]  # (multiplier, stuck web)
    trace: tuple[str, ...] = field(default=(), repr=False)

    @property
    def stuck(self) -> bool:
        return bool(self.residuals)


def _dart_token(d: Dart) -> str:
    return f"{d[0]}.{d[1]}"


def _face_id(walk: tuple[Dart, ...]) -> str:
    return min(_dart_token(d) for d in walk)


@dataclass(frozen=True)
class _Candidate:
    priority: int
    key: str
    rule: str
    apply: Callable[[], list[tuple[int, Optional[RotationWeb]]]]


def _candidates(rw: RotationWeb) -> list[_Candidate]:
    w = rw.web
    cands: list[_Candidate] = []
    for c in w.circle_edges:
        cands.append(_Candidate(0, c.id, "circle",
                                lambda cid=c.id: [(3, _drop_circle(rw, cid))]))
    bridges = find_bridges(w)
    if bridges:
        cands.append(_Candidate(1, min(bridges), "bridge", lambda: [(1, None)]))
    walks = [wk for wk in faces(rw) if not w.edge(wk[0][0]).is_circle]
    for walk in sorted(walks, key=_face_id):
        n = len(walk)
        fid = _face_id(walk)
        if n == 1:
            cands.append(_Candidate(2, fid, "one-gon", lambda: [(1, None)]))
        elif n == 2:
            (p, kp), (q, _) = walk
            u, v = w.edge(p).ends[kp], w.edge(p).ends[1 - kp]
            if p != q and u != v:
                cands.append(_Candidate(3, fid, "bigon",
                                        lambda wk=walk: [(2, _collapse_bigon(rw, wk))]))
        elif n == 3:
            es = {d[0] for d in walk}
            vs = {w.edge(e).ends[k] for e, k in walk}
            if len(es) == 3 and len(vs) == 3:
                cands.append(_Candidate(4, fid, "triangle",
                                        lambda wk=walk: [(1, _collapse_triangle(rw, wk))]))
        elif n == 4:
            es = {d[0] for d in walk}
            vs = {w.edge(e).ends[k] for e, k in walk}
            if len(es) == 4 and len(vs) == 4:
                def apply(wk=walk):
                    kp, kpp = _smooth_square(rw, wk)
                    return [(1, kp), (1, kpp)]
                cands.append(_Candidate(5, fid, "square", apply))
    return cands


def reduce_dimension(rw: RotationWeb, rng: Optional[random.Random] = None,
                     max_steps: int = 100_000) -> ReductionResult:
    """Run the rewriting to completion (or STUCK) and return the total.

    With ``rng`` the applicable rewrite is picked at random instead of by
    the deterministic priority + lexicographically-smallest-face policy;
    on reducible webs the result is the same (confluence is tested, not
    assumed).
    """
    bad = validate_rotation_web(rw)
    if bad:
        raise ValueError("invalid rotation web: " + "; ".join(bad))
    if not is_planar(rw):
        raise ValueError("reduce_dimension requires a planar rotation web")

    branches: list[tuple[int, RotationWeb]] = [(1, rw)]
    resolved = 0
    residuals: list[tuple[int, RotationWeb]] = []
    trace: list[str] = []
    steps = 0
    while branches:
        steps += 1
        if steps > max_steps:
            raise RuntimeError("reduction did not terminate within the step budget")
        mult, cur = branches.pop()
        if not cur.web.vertices and not cur.web.edges:
            resolved += mult
            trace.append(f"empty x{mult}")
            continue
        cands = _candidates(cur)
        if not cands:
            residuals.append((mult, cur))
            trace.append(f"stuck x{mult}")
            continue
        if rng is None:
            chosen = min(cands, key=lambda c: (c.priority, c.key))
        else:
            chosen = cands[rng.randrange(len(cands))]
        trace.append(f"{chosen.rule}@{chosen.key}")
        for factor, nxt in chosen.apply():
            if nxt is None:
                continue  # a zero branch contributes nothing
            branches.append((mult * factor, nxt))
    value = resolved if not residuals else None
    return ReductionResult(value, resolved, tuple(residuals), tuple(trace))


@dataclass(frozen=True)
class ConjectureCheck:
    reduced: ReductionResult
    tait: int
    agree: Optional[bool]  # None when the reduction got stuck


def check_conjecture(rw: RotationWeb) -> ConjectureCheck:
    """Compare the reduction total against the Tait-coloring count."""
    red = reduce_dimension(rw)
    t = tait_count(rw.web)
    agree = (red.value == t) if red.value is not None else None
    return ConjectureCheck(red, t, agree)


# ---------------------------------------------------------------------------
# Random reducible planar webs (for the conjecture/confluence suites)
# ---------------------------------------------------------------------------

def theta_rotation_web() -> RotationWeb:
    w = Web(("u", "v"), (Edge("e1", ("u", "v")), Edge("e2", ("u", "v")), Edge("e3", ("u", "v"))))
    return rotation_web(w, {
        "u": (("e1", 0), ("e2", 0), ("e3", 0)),
        "v": (("e3", 1), ("e2", 1), ("e1", 1)),
    })


def _insert_bigon(rw: RotationWeb, edge_id: str) -> RotationWeb:
    w = rw.web
    e = w.edge(edge_id)
    u, wv = e.ends
    existing = {x.id for x in w.edges} | set(w.vertices)
    e1, p, q, e2, a, b = _fresh_ids(existing, 6)
    new_edges = [x for x in w.edges if x.id != edge_id]
    new_edges += [Edge(e1, (u, a)), Edge(p, (a, b)), Edge(q, (a, b)), Edge(e2, (b, wv))]
    base = dict(rw.rotation)

    def retoken(rot, vert, old, new):
        rot[vert] = tuple(new if t == old else t for t in rot[vert])

    retoken(base, u, (edge_id, 0), (e1, 0))
    retoken(base, wv, (edge_id, 1), (e2, 1))
    for rot_b in ((( e2, 0), (q, 1), (p, 1)), ((e2, 0), (p, 1), (q, 1))):
        rot2 = dict(base)
        rot2[a] = ((e1, 1), (p, 0), (q, 0))
        rot2[b] = rot_b
        out = RotationWeb(Web(w.vertices + (a, b), tuple(new_edges)), rot2)
        if all(g == 0 for g in component_genera(out)):
            return out
    raise AssertionError("bigon insertion broke planarity")


def _blow_up_triangle(rw: RotationWeb, vertex: str) -> RotationWeb:
    w = rw.web
    t1, t2, t3 = rw.rotation[vertex]
    existing = {x.id for x in w.edges} | set(w.vertices)
    z1, z2, z3, s12, s23, s31 = _fresh_ids(existing, 6)
    zs = (z1, z2, z3)
    legs = (t1, t2, t3)
    new_edges = []
    for e in w.edges:
        if e.ends is None:
            new_edges.append(e)
            continue
        ends = list(e.ends)
        for k in (0, 1):
            if (e.id, k) in legs and ends[k] == vertex:
                ends[k] = zs[legs.index((e.id, k))]
        new_edges.append(Edge(e.id, (ends[0], ends[1])))
    new_edges += [Edge(s12, (z1, z2)), Edge(s23, (z2, z3)), Edge(s31, (z3, z1))]
    rot = {v: r for v, r in rw.rotation.items() if v != vertex}
    for orient in (False, True):
        rot2 = dict(rot)
        orders = [
            (t1, (s12, 0), (s31, 1)),
            (t2, (s23, 0), (s12, 1)),
            (t3, (s31, 0), (s23, 1)),
        ]
        if orient:
            orders = [tuple(reversed(o)) for o in orders]
        rot2[z1], rot2[z2], rot2[z3] = orders
        out = RotationWeb(
            Web(tuple(v for v in w.vertices if v != vertex) + zs, tuple(new_edges)), rot2)
        if all(g == 0 for g in component_genera(out)):
            return out
    raise AssertionError("triangle blow-up broke planarity")


def _insert_square(rw: RotationWeb, rng: random.Random) -> RotationWeb:
    """Split two distinct edges on a common face and join the split points
    with a ladder of two rungs, creating a square face (the inverse of one
    branch of the square smoothing)."""
    candidates = [wk for wk in faces(rw)
                  if not rw.web.edge(wk[0][0]).is_circle
                  and len({d[0] for d in wk}) >= 2]
    if not candidates:
        return rw
    walk = candidates[rng.randrange(len(candidates))]
    ids = [d[0] for d in walk]
    i = rng.randrange(len(walk))
    choices = [j for j in range(len(walk)) if ids[j] != ids[i]]
    j = choices[rng.randrange(len(choices))]
    (e1, k1), (e2, k2) = walk[i], walk[j]

    w = rw.web
    existing = {x.id for x in w.edges} | set(w.vertices)
    xa, xb, xc, xd, mid1, mid2, r1, r2, v1, v2, v3, v4 = _fresh_ids(existing, 12)
    ea, eb = w.edge(e1), w.edge(e2)
    # e1 splits into xa -(v1)- mid1 -(v2)- xb along its dart direction,
    # e2 into xc -(v3)- mid2 -(v4)- xd
    new_edges = [x for x in w.edges if x.id not in (e1, e2)]
    new_edges += [
        Edge(xa, (ea.ends[k1], v1)), Edge(mid1, (v1, v2)), Edge(xb, (v2, ea.ends[1 - k1])),
        Edge(xc, (eb.ends[k2], v3)), Edge(mid2, (v3, v4)), Edge(xd, (v4, eb.ends[1 - k2])),
    ]
    base = {v: r for v, r in rw.rotation.items()}

    def retoken(rot, vert, old, new):
        rot[vert] = tuple(new if t == old else t for t in rot[vert])

    retoken(base, ea.ends[k1], (e1, k1), (xa, 0))
    retoken(base, ea.ends[1 - k1], (e1, 1 - k1), (xb, 1))
    retoken(base, eb.ends[k2], (e2, k2), (xc, 0))
    retoken(base, eb.ends[1 - k2], (e2, 1 - k2), (xd, 1))
    # rungs join the two split edges across the face; of the two adjacent
    # pairings one is the planar ladder
    for rung_pairs in (((v1, v4), (v2, v3)), ((v1, v3), (v2, v4))):
        (p1, q1), (p2, q2) = rung_pairs
        edges2 = new_edges + [Edge(r1, (p1, q1)), Edge(r2, (p2, q2))]
        rot2 = dict(base)
        rung_at = {p1: (r1, 0), q1: (r1, 1), p2: (r2, 0), q2: (r2, 1)}
        for vert, inner, outer in ((v1, (xa, 1), (mid1, 0)), (v2, (mid1, 1), (xb, 0)),
                                   (v3, (xc, 1), (mid2, 0)), (v4, (mid2, 1), (xd, 0))):
            rot2[vert] = (inner, rung_at[vert], outer)
        out = RotationWeb(Web(w.vertices + (v1, v2, v3, v4), tuple(edges2)), rot2)
        if validate_rotation_web(out) == [] and all(g == 0 for g in component_genera(out)):
            return out
    raise AssertionError("square insertion broke planarity")


def random_reducible_web(rng: random.Random, moves: int = 6) -> RotationWeb:
    """A random planar web grown from the theta web by bigon insertions,
    triangle blow-ups and square ladders (all undone by the reduction
    rules), plus the occasional disjoint circle."""
    rw = theta_rotation_web()
    for _ in range(moves):
        kind = rng.random()
        if kind < 0.12:
            w = rw.web
            existing = {x.id for x in w.edges} | set(w.vertices)
            (cid,) = _fresh_ids(existing, 1)
            rw = RotationWeb(Web(w.vertices, w.edges + (Edge(cid, None),)), dict(rw.rotation))
        elif kind < 0.5:
            rw = _insert_bigon(rw, rng.choice([e.id for e in rw.web.vertex_edges]))
        elif kind < 0.82:
            rw = _blow_up_triangle(rw, rng.choice(list(rw.web.vertices)))
        else:
            rw = _insert_square(rw, rng)
    return rw

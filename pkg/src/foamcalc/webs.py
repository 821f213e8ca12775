"""Webs as abstract trivalent multigraphs.

A web is a cubic (trivalent) multigraph: loops and parallel edges are
allowed, and an edge may be a *free circle* (a vertexless closed edge,
``ends=None``).  This module carries the coloring/flow/factor
combinatorics that only depend on the abstract graph:

* Tait colorings (edge 3-colorings with all three colors at each vertex)
  counted by backtracking, and their orbit count under color permutations
  via Burnside's lemma;
* bridges (cut-edges) -- abstract ones; for planar webs these coincide
  with embedded bridges;
* 2-factors and the even-cycle criterion that detects O(2)-style
  colorings;
* mod-2 edge flows with zero vertex sums and the count of "Type II"
  vertices (exactly two incident ends carrying 1).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import permutations
from typing import Iterable, Mapping, Optional, Sequence


@dataclass(frozen=True)
class Edge:
    """A web edge: a pair of vertex attachments, or a free circle.

    ``ends`` is a pair of vertex ids (a loop repeats the vertex) or
    ``None`` for a vertexless circle.
    """

    id: str
    ends: Optional[tuple[str, str]]

    @property
    def is_circle(self) -> bool:
        return self.ends is None

    @property
    def is_loop(self) -> bool:
        return self.ends is not None and self.ends[0] == self.ends[1]


@dataclass(frozen=True)
class Web:
    vertices: tuple[str, ...]
    edges: tuple[Edge, ...]

    def edge(self, edge_id: str) -> Edge:
        for e in self.edges:
            if e.id == edge_id:
                return e
        raise KeyError(f"no edge {edge_id!r}")

    @property
    def circle_edges(self) -> tuple[Edge, ...]:
        return tuple(e for e in self.edges if e.is_circle)

    @property
    def vertex_edges(self) -> tuple[Edge, ...]:
        return tuple(e for e in self.edges if not e.is_circle)

    def incident_ends(self, vertex: str) -> list[tuple[str, int]]:
        """All (edge id, end index) pairs attached to ``vertex``."""
        out = []
        for e in self.edges:
            if e.ends is None:
                continue
            for k in (0, 1):
                if e.ends[k] == vertex:
                    out.append((e.id, k))
        return out


def web(vertices: Iterable[str], edges: Iterable[tuple[str, Optional[Sequence[str]]]]) -> Web:
    """Convenience constructor from plain tuples."""
    return Web(
        tuple(vertices),
        tuple(Edge(i, None if ends is None else (ends[0], ends[1])) for i, ends in edges),
    )


def validate_web(w: Web) -> list[str]:
    """Check the web invariants; returns a list of human-readable violations.

    Validation never raises: an empty list means the web is a valid
    trivalent multigraph (every vertex has exactly 3 incident edge-ends,
    loops counting twice).
    """
    violations = []
    seen_v = set()
    for v in w.vertices:
        if v in seen_v:
            violations.append(f"duplicate vertex id {v!r}")
        seen_v.add(v)
    seen_e = set()
    for e in w.edges:
        if e.id in seen_e:
            violations.append(f"duplicate edge id {e.id!r}")
        seen_e.add(e.id)
        if e.ends is not None:
            for v in e.ends:
                if v not in seen_v:
                    violations.append(f"edge {e.id!r} references missing vertex {v!r}")
    for v in w.vertices:
        deg = len(w.incident_ends(v))
        if deg != 3:
            violations.append(f"vertex {v!r} has degree {deg}, expected 3")
    return violations


def _check_valid(w: Web) -> None:
    bad = validate_web(w)
    if bad:
        raise ValueError("invalid web: " + "; ".join(bad))


# ---------------------------------------------------------------------------
# Tait colorings
# ---------------------------------------------------------------------------

def _count_colorings(w: Web, domain: Sequence[int]) -> int:
    """Count edge colorings with colors from ``domain`` such that the three
    edge-ends at every vertex carry three distinct colors.

    Backtracking over non-circle edges with a smallest-remaining-domain
    heuristic and forward checking; free circles contribute a factor
    ``len(domain)`` each.
    """
    edges = w.vertex_edges
    n_circles = len(w.circle_edges)
    if not edges:
        return len(domain) ** n_circles if (domain or n_circles == 0) else 0
    if not domain:
        return 0
    # Loops can never satisfy the all-distinct constraint at their vertex.
    if any(e.is_loop for e in edges):
        return 0

    ends_of = {e.id: e.ends for e in edges}
    used: dict[str, set[int]] = {v: set() for v in w.vertices}
    domain_set = set(domain)

    def options(eid: str) -> set[int]:
        a, b = ends_of[eid]
        return domain_set - used[a] - used[b]

    total = 0
    remaining = set(ends_of)

    def backtrack() -> None:
        nonlocal total
        if not remaining:
            total += 1
            return
        best, best_opts = None, None
        for eid in remaining:
            opts = options(eid)
            if not opts:
                return
            if best_opts is None or len(opts) < len(best_opts):
                best, best_opts = eid, opts
                if len(opts) == 1:
                    break
        remaining.discard(best)
        a, b = ends_of[best]
        for c in sorted(best_opts):
            used[a].add(c)
            used[b].add(c)
            backtrack()
            used[a].discard(c)
            used[b].discard(c)
        remaining.add(best)

    backtrack()
    return total * (len(domain) ** n_circles)


def tait_count(w: Web) -> int:
    """Number of Tait colorings (colorings differing by a permutation of
    the three colors count as distinct)."""
    _check_valid(w)
    return _count_colorings(w, (1, 2, 3))


def is_tait_coloring(w: Web, assignment: Mapping[str, int]) -> bool:
    """Whether the edge assignment is a Tait coloring: colors in {1,2,3}
    with three distinct colors at every vertex (a loop repeats its color,
    so a web with a loop admits none)."""
    _check_valid(w)
    for e in w.edges:
        if assignment.get(e.id) not in (1, 2, 3):
            return False
    for v in w.vertices:
        colors = sorted(assignment[eid] for eid, _ in w.incident_ends(v))
        if colors != [1, 2, 3]:
            return False
    return True


_S3_FIXED_COLORS = {
    # permutation of (1,2,3) -> fixed colors
    (1, 2, 3): (1, 2, 3),
    (2, 1, 3): (3,),
    (3, 2, 1): (2,),
    (1, 3, 2): (1,),
    (2, 3, 1): (),
    (3, 1, 2): (),
}


def tait_orbit_count(w: Web) -> int:
    """Number of orbits of Tait colorings under the 6 color permutations
    (Burnside: average the fixed-coloring counts over the group).

    A coloring is fixed by a permutation exactly when every edge color is
    a fixed point of that permutation, so each term is the same
    backtracking with a restricted color domain.
    """
    _check_valid(w)
    total = 0
    for perm in permutations((1, 2, 3)):
        total += _count_colorings(w, _S3_FIXED_COLORS[perm])
    assert total % 6 == 0, "Burnside sum must be divisible by the group order"
    return total // 6


def enumerate_tait_colorings(w: Web) -> list[dict[str, int]]:
    """Explicit Tait colorings (circle colors included), mainly for tests
    and small webs."""
    _check_valid(w)
    edges = w.vertex_edges
    if any(e.is_loop for e in edges):
        return []
    out: list[dict[str, int]] = []
    used: dict[str, set[int]] = {v: set() for v in w.vertices}
    color: dict[str, int] = {}
    circle_ids = [c.id for c in w.circle_edges]

    def fill_circles(j: int) -> None:
        if j == len(circle_ids):
            out.append(dict(color))
            return
        for c in (1, 2, 3):
            color[circle_ids[j]] = c
            fill_circles(j + 1)
            del color[circle_ids[j]]

    def backtrack(i: int) -> None:
        if i == len(edges):
            fill_circles(0)
            return
        e = edges[i]
        a, b = e.ends
        for c in (1, 2, 3):
            if c in used[a] or c in used[b]:
                continue
            used[a].add(c)
            used[b].add(c)
            color[e.id] = c
            backtrack(i + 1)
            del color[e.id]
            used[a].discard(c)
            used[b].discard(c)

    backtrack(0)
    return out


# ---------------------------------------------------------------------------
# Bridges
# ---------------------------------------------------------------------------

def find_bridges(w: Web) -> set[str]:
    """Cut-edges of the underlying multigraph (free circles never count).

    Iterative depth-first search with low-links; the tree edge is skipped
    once by id, so parallel edges are handled correctly.
    """
    _check_valid(w)
    adj: dict[str, list[tuple[str, str]]] = {v: [] for v in w.vertices}
    for e in w.vertex_edges:
        if e.is_loop:
            continue  # a loop is never a bridge
        a, b = e.ends
        adj[a].append((b, e.id))
        adj[b].append((a, e.id))

    index: dict[str, int] = {}
    low: dict[str, int] = {}
    bridges: set[str] = set()
    counter = 0

    for root in w.vertices:
        if root in index:
            continue
        index[root] = low[root] = counter
        counter += 1
        # frames: [vertex, tree edge id into it, next child index, parent-skip spent]
        stack = [[root, None, 0, False]]
        while stack:
            frame = stack[-1]
            v, in_edge, ci, skipped = frame
            if ci < len(adj[v]):
                frame[2] = ci + 1
                u, eid = adj[v][ci]
                if eid == in_edge and not skipped:
                    frame[3] = True
                    continue
                if u in index:
                    low[v] = min(low[v], index[u])
                else:
                    index[u] = low[u] = counter
                    counter += 1
                    stack.append([u, eid, 0, False])
            else:
                stack.pop()
                if stack:
                    p = stack[-1][0]
                    low[p] = min(low[p], low[v])
                    if low[v] > index[p]:
                        bridges.add(in_edge)
    return bridges


# ---------------------------------------------------------------------------
# 2-factors and the even-cycle criterion
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TwoFactor:
    edges: frozenset[str]
    cycle_lengths: tuple[int, ...]  # vertices per cycle, sorted; free circles count 0

    @property
    def all_even(self) -> bool:
        return all(n % 2 == 0 for n in self.cycle_lengths)


def two_factors(w: Web) -> list[TwoFactor]:
    """All spanning subgraphs with exactly two edge-ends at every vertex.

    Free circles belong to every 2-factor and contribute a cycle of
    length 0 (counted as even).  Backtracking over edges with degree
    pruning; cycle lengths are reported as vertex counts.
    """
    _check_valid(w)
    order = sorted(w.vertex_edges, key=lambda e: e.id)
    verts = list(w.vertices)
    circle_ids = frozenset(c.id for c in w.circle_edges)
    if not verts:
        return [TwoFactor(circle_ids, tuple(0 for _ in circle_ids))]

    # ends still available at each vertex among edges order[i:]
    suffix_ends: list[dict[str, int]] = [dict.fromkeys(verts, 0)]
    for e in reversed(order):
        nxt = dict(suffix_ends[0])
        for v in e.ends:
            nxt[v] += 1
        suffix_ends.insert(0, nxt)

    deg = dict.fromkeys(verts, 0)
    chosen: list[str] = []
    factors: list[frozenset[str]] = []

    def feasible(i: int) -> bool:
        avail = suffix_ends[i]
        return all(deg[v] <= 2 and deg[v] + avail[v] >= 2 for v in verts)

    def backtrack(i: int) -> None:
        if i == len(order):
            if all(deg[v] == 2 for v in verts):
                factors.append(frozenset(chosen))
            return
        e = order[i]
        inc = 2 if e.is_loop else 1
        a, b = e.ends
        if deg[a] + inc <= 2 and (a == b or deg[b] + 1 <= 2):
            deg[a] += inc
            if a != b:
                deg[b] += 1
            chosen.append(e.id)
            if feasible(i + 1):
                backtrack(i + 1)
            chosen.pop()
            deg[a] -= inc
            if a != b:
                deg[b] -= 1
        if feasible(i + 1):
            backtrack(i + 1)

    backtrack(0)

    out = []
    for f in factors:
        lengths = _cycle_lengths(w, f) + tuple(0 for _ in circle_ids)
        out.append(TwoFactor(f | circle_ids, tuple(sorted(lengths))))
    return out


def _cycle_lengths(w: Web, edge_ids: frozenset[str]) -> tuple[int, ...]:
    """Vertex counts of the cycles formed by ``edge_ids`` (every vertex has
    degree 2 in the subgraph; a loop forms a 1-vertex cycle)."""
    half_edges: dict[str, list[tuple[str, int]]] = {v: [] for v in w.vertices}
    for eid in edge_ids:
        e = w.edge(eid)
        if e.is_circle:
            continue
        for k in (0, 1):
            half_edges[e.ends[k]].append((eid, k))
    seen: set[tuple[str, int]] = set()
    lengths = []
    for v in w.vertices:
        for start in half_edges[v]:
            if start in seen:
                continue
            count = 0
            cur = start
            while cur not in seen:
                seen.add(cur)
                eid, k = cur
                other = (eid, 1 - k)
                seen.add(other)
                count += 1
                arrive = w.edge(eid).ends[1 - k]
                nxt = [h for h in half_edges[arrive] if h not in seen]
                if not nxt:
                    break
                cur = nxt[0]
            lengths.append(count)
    return tuple(lengths)


def o2_coloring_exists(w: Web) -> bool:
    """True when some 2-factor has all cycle lengths even.

    For webs with at least one vertex this implies ``tait_count(w) > 0``:
    color the even cycles alternately with two colors and the remaining
    edges with the third.
    """
    return any(f.all_even for f in two_factors(w))


def is_bipartite(w: Web) -> bool:
    """Bipartiteness of the underlying multigraph (circles ignored)."""
    color: dict[str, int] = {}
    adj: dict[str, list[str]] = {v: [] for v in w.vertices}
    for e in w.vertex_edges:
        if e.is_loop:
            return False
        a, b = e.ends
        adj[a].append(b)
        adj[b].append(a)
    for root in w.vertices:
        if root in color:
            continue
        color[root] = 0
        queue = [root]
        while queue:
            v = queue.pop()
            for u in adj[v]:
                if u not in color:
                    color[u] = 1 - color[v]
                    queue.append(u)
                elif color[u] == color[v]:
                    return False
    return True


# ---------------------------------------------------------------------------
# Mod-2 flows
# ---------------------------------------------------------------------------

def validate_eta_flow(w: Web, flow: Mapping[str, int]) -> None:
    """Reject flows whose three incident values do not sum to 0 at some
    vertex (a loop contributes its value twice, hence nothing mod 2)."""
    _check_valid(w)
    for e in w.edges:
        if e.id not in flow:
            raise ValueError(f"flow missing edge {e.id!r}")
        if flow[e.id] not in (0, 1):
            raise ValueError(f"flow value for {e.id!r} must be 0 or 1")
    for v in w.vertices:
        s = sum(flow[eid] for eid, _ in w.incident_ends(v)) % 2
        if s != 0:
            raise ValueError(f"flow violates the zero-sum condition at vertex {v!r}")


def eta_type2_count(w: Web, flow: Mapping[str, int]) -> int:
    """Number of vertices with exactly two incident ends carrying 1."""
    validate_eta_flow(w, flow)
    n = 0
    for v in w.vertices:
        ones = sum(flow[eid] for eid, _ in w.incident_ends(v))
        assert ones in (0, 2), "valid flows have 0 or 2 unit ends per vertex"
        if ones == 2:
            n += 1
    return n


def eta_flow_basis(w: Web) -> list[dict[str, int]]:
    """A basis of the space of valid flows (the cycle space, with loops and
    free circles as independent generators)."""
    _check_valid(w)
    basis: list[dict[str, int]] = []
    zero = {e.id: 0 for e in w.edges}
    for e in w.edges:
        if e.is_circle or e.is_loop:
            f = dict(zero)
            f[e.id] = 1
            basis.append(f)

    # spanning forest over the plain (non-loop, non-circle) edges
    parent: dict[str, tuple[str, str]] = {}
    visited: set[str] = set()
    tree: set[str] = set()
    adj: dict[str, list[tuple[str, str]]] = {v: [] for v in w.vertices}
    plain = [e for e in w.vertex_edges if not e.is_loop]
    for e in plain:
        a, b = e.ends
        adj[a].append((b, e.id))
        adj[b].append((a, e.id))
    for root in w.vertices:
        if root in visited:
            continue
        visited.add(root)
        stack = [root]
        while stack:
            v = stack.pop()
            for u, eid in adj[v]:
                if u not in visited:
                    visited.add(u)
                    parent[u] = (v, eid)
                    tree.add(eid)
                    stack.append(u)
    for e in plain:
        if e.id in tree:
            continue
        # fundamental cycle: the chord plus the two tree paths to the root
        f = dict(zero)
        f[e.id] = 1
        for start in e.ends:
            v = start
            while v in parent:
                pv, eid = parent[v]
                f[eid] ^= 1
                v = pv
        basis.append(f)
    return basis


def random_eta_flow(w: Web, rng: random.Random) -> dict[str, int]:
    """A random valid flow (random subset of a cycle-space basis)."""
    basis = eta_flow_basis(w)
    f = {e.id: 0 for e in w.edges}
    for b in basis:
        if rng.random() < 0.5:
            for k, v in b.items():
                f[k] ^= v
    return f

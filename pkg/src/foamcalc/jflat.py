"""The mod-2 evaluation of closed dotted pre-foams, and pairing ranks.

The evaluation pipeline:

1. if the seam graph is not bipartite the value is 0;
2. otherwise tetra points are canceled in pairs along seam edges (every
   edge of a 4-regular bipartite multigraph lies in a perfect matching,
   so the deterministic pipeline just cancels along the smallest edge
   until none remain);
3. a seam circle with non-trivial sheet monodromy forces 0;
4. each remaining circle is removed by the six-term expansion: the three
   incident boundary circles are capped with disks carrying a permutation
   of (0,1,2) extra dots (the split-off three-disk factor is already
   folded in: only permutation assignments survive);
5. what remains is a disjoint union of closed surfaces, each evaluated by
   the table: sphere with exactly two dots -> 1, undotted torus -> 1,
   everything else (higher genus, dotted positive genus, non-orientable)
   -> 0.  The value of a term is the product, and the result is the sum
   of all terms in the field of two elements.

``well_definedness_report`` sweeps every admissible choice (all perfect
matchings, all cancellation orders, all circle orders) and reports the
set of final values; a singleton supports well-definedness on that foam.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, replace
from typing import Optional, Sequence

from .foams import (CircleStep, Foam, Facet, WebMatching, cancel_tetra_pair,
                    glue, seam_graph, validate_foam)
from .homalg import F2Matrix, rank


@dataclass(frozen=True)
class TraceStep:
    rule: str
    cells: tuple[str, ...]
    terms: int  # number of open expansion terms after the step


@dataclass(frozen=True)
class EvaluationTrace:
    steps: tuple[TraceStep, ...]
    value: int


@dataclass(frozen=True)
class EvaluationResult:
    value: int
    trace: EvaluationTrace


def evaluate_closed_surface(orientable: bool, genus_or_crosscaps: int, dots: int) -> int:
    """The closed-surface table: sphere with two dots and undotted torus
    evaluate to 1; everything else (including every non-orientable
    surface) to 0."""
    if not orientable:
        return 0
    if genus_or_crosscaps == 0:
        return 1 if dots == 2 else 0
    if genus_or_crosscaps == 1:
        return 1 if dots == 0 else 0
    return 0


def _facet_can_contribute(fc: Facet) -> bool:
    """False when no amount of further capping can make the facet's closed
    surface evaluate to 1 (dots only ever increase)."""
    if not fc.orientable:
        return False
    if fc.genus == 0:
        return fc.dots <= 2
    if fc.genus == 1:
        return fc.dots == 0
    return False


def cut_seam_circle(f: Foam, circle_id: str) -> list[Foam]:
    """Remove a trivial-monodromy seam circle by the six-term expansion.

    For each permutation (a0,a1,a2) of (0,1,2): cap the boundary circle on
    slot i with a disk carrying a_i extra dots.  Returns the six capped
    foams in a fixed order.
    """
    circ = f.seam_circle(circle_id)
    if circ.monodromy != "id":
        raise ValueError(f"seam circle {circle_id!r} has monodromy {circ.monodromy}; "
                         "the evaluation of such a foam is 0, not an expansion")
    # locate the walk on each slot
    owner: dict[int, str] = {}
    for fc in f.facets:
        for walk in fc.boundary:
            if len(walk) == 1 and isinstance(walk[0], CircleStep) \
                    and walk[0].circle == circle_id:
                assert walk[0].winding == 1
                owner[walk[0].slot] = fc.id
    assert sorted(owner) == [0, 1, 2], "trivial monodromy must carry three winding-1 walks"

    out = []
    for perm in sorted(itertools.permutations((0, 1, 2))):
        new_facets = []
        for fc in f.facets:
            extra = 0
            new_walks = []
            for walk in fc.boundary:
                if len(walk) == 1 and isinstance(walk[0], CircleStep) \
                        and walk[0].circle == circle_id:
                    extra += perm[walk[0].slot]
                else:
                    new_walks.append(walk)
            if extra or len(new_walks) != len(fc.boundary):
                new_facets.append(replace(fc, dots=fc.dots + extra,
                                          boundary=tuple(new_walks)))
            else:
                new_facets.append(fc)
        out.append(replace(
            f,
            seam_circles=tuple(c for c in f.seam_circles if c.id != circle_id),
            facets=tuple(new_facets),
        ))
    return out


# ---------------------------------------------------------------------------
# Perfect matchings of the seam graph
# ---------------------------------------------------------------------------

def find_perfect_matching(f: Foam) -> Optional[tuple[str, ...]]:
    """One perfect matching of the seam graph by augmenting paths, or None.
    Regular bipartite multigraphs always have one."""
    sg = seam_graph(f)
    if not sg.is_bipartite:
        return None
    verts = sorted(sg.vertices)
    if len(verts) % 2:
        return None
    adj: dict[str, list[tuple[str, str]]] = {v: [] for v in verts}
    for eid, (a, b) in sorted(sg.edges):
        if a == b:
            return None
        adj[a].append((b, eid))
        adj[b].append((a, eid))
    mate: dict[str, tuple[str, str]] = {}  # vertex -> (partner, edge)

    def augment(v: str, visited: set[str]) -> bool:
        for u, eid in adj[v]:
            if u in visited:
                continue
            visited.add(u)
            if u not in mate or augment(mate[u][0], visited):
                mate[u] = (v, eid)
                mate[v] = (u, eid)
                return True
        return False

    for v in verts:
        if v not in mate and not augment(v, {v}):
            return None
    return tuple(sorted({eid for _, eid in mate.values()}))


def perfect_matchings(f: Foam) -> list[tuple[str, ...]]:
    """All perfect matchings of the seam graph, as sorted edge-id tuples."""
    sg = seam_graph(f)
    verts = sorted(sg.vertices)
    out: list[tuple[str, ...]] = []

    def backtrack(unmatched: list[str], chosen: list[str]) -> None:
        if not unmatched:
            out.append(tuple(sorted(chosen)))
            return
        v = unmatched[0]
        for eid, (a, b) in sorted(sg.edges):
            if a == b:
                continue
            if v not in (a, b):
                continue
            other = b if a == v else a
            if other not in unmatched:
                continue
            rest = [u for u in unmatched if u not in (a, b)]
            backtrack(rest, chosen + [eid])

    backtrack(verts, [])
    return sorted(set(out))


# ---------------------------------------------------------------------------
# Evaluation
# ---------------------------------------------------------------------------

def _expand_circles(f: Foam, trace: list[TraceStep],
                    circle_order: Optional[Sequence[str]] = None) -> int:
    """Sum the six-term expansions over all remaining circles; prunes any
    term containing a facet that can no longer contribute (dots only ever
    increase along the pipeline)."""
    if any(not _facet_can_contribute(fc) for fc in f.facets):
        return 0
    circles = [c.id for c in f.seam_circles]
    if not circles:
        total = 1
        for fc in f.facets:
            assert not fc.boundary, "a foam with no seams must have closed facets"
            total &= evaluate_closed_surface(fc.orientable, fc.genus, fc.dots)
        return total
    if circle_order:
        cid = [c for c in circle_order if c in circles][0]
    else:
        cid = min(circles)
    total = 0
    terms = cut_seam_circle(f, cid)
    trace.append(TraceStep("cut-circle", (cid,), len(terms)))
    for term in terms:
        total ^= _expand_circles(term, trace, circle_order)
    return total


def evaluate(f: Foam, circle_order: Optional[Sequence[str]] = None,
             matching_edges: Optional[Sequence[str]] = None) -> EvaluationResult:
    """Evaluate a closed pre-foam.

    ``matching_edges`` / ``circle_order`` override the deterministic
    choices (used by the well-definedness sweep); by default cancellation
    proceeds along the lexicographically smallest seam edge and circles
    are cut in id order.
    """
    bad = validate_foam(f)
    if bad:
        raise ValueError("invalid foam: " + "; ".join(bad))
    if not f.is_closed:
        raise ValueError("evaluation requires a closed foam")
    steps: list[TraceStep] = []

    sg = seam_graph(f)
    if not sg.is_bipartite:
        steps.append(TraceStep("nonbipartite-seam-graph", (), 0))
        return EvaluationResult(0, EvaluationTrace(tuple(steps), 0))

    queue = list(matching_edges or ())
    while f.tetra_points:
        if queue:
            eid = queue.pop(0)
        else:
            # every edge of a 4-regular bipartite multigraph lies in a
            # perfect matching, so the lexicographically minimal matching
            # contains the smallest edge; cancel along it
            assert find_perfect_matching(f) is not None
            eid = min(e for e, _ in seam_graph(f).edges)
        steps.append(TraceStep("cancel", (eid,), 1))
        f = cancel_tetra_pair(f, eid)

    bad_circles = tuple(c.id for c in f.seam_circles if c.monodromy != "id")
    if bad_circles:
        steps.append(TraceStep("nontrivial-monodromy", bad_circles, 0))
        return EvaluationResult(0, EvaluationTrace(tuple(steps), 0))

    value = _expand_circles(f, steps, circle_order)
    steps.append(TraceStep("closed-surfaces", (), 1))
    return EvaluationResult(value, EvaluationTrace(tuple(steps), value))


def well_definedness_report(f: Foam, max_circle_orders: Optional[int] = None) -> set[int]:
    """The set of final values over all admissible pipeline choices: every
    perfect matching of the seam graph, every cancellation order within
    it, and every circle elimination order (optionally capped for foams
    with many circles)."""
    bad = validate_foam(f)
    if bad:
        raise ValueError("invalid foam: " + "; ".join(bad))
    if not f.is_closed:
        raise ValueError("evaluation requires a closed foam")
    if not seam_graph(f).is_bipartite:
        return {0}

    values: set[int] = set()

    def after_cancels(g: Foam) -> None:
        if any(c.monodromy != "id" for c in g.seam_circles):
            values.add(0)
            return
        circles = sorted(c.id for c in g.seam_circles)
        orders = itertools.permutations(circles)
        if max_circle_orders is not None:
            orders = itertools.islice(orders, max_circle_orders)
        for order in orders:
            values.add(evaluate(g, circle_order=order).value)

    def sweep(g: Foam, remaining: tuple[str, ...]) -> None:
        if not remaining:
            if g.tetra_points:
                for m in perfect_matchings(g):
                    sweep(g, m)
                return
            after_cancels(g)
            return
        for i, eid in enumerate(remaining):
            rest = remaining[:i] + remaining[i + 1:]
            sweep(cancel_tetra_pair(g, eid), rest)

    sweep(f, ())
    return values


# ---------------------------------------------------------------------------
# Pairing ranks
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PairingRank:
    matrix: F2Matrix
    rank: int


def pairing_rank(gens: Sequence[Foam], cogens: Sequence[Foam],
                 matching: WebMatching) -> PairingRank:
    """Gram matrix of closed evaluations M[i][j] = evaluate(glue(g_i, c_j))
    and its rank over the two-element field (the dimension of the span of
    the generators in the pairing-quotient space)."""
    for g in gens:
        if g.web is None:
            raise ValueError("generators must be foams with boundary")
        if g.web != gens[0].web:
            raise ValueError("all generators must share one boundary web")
    for c in cogens:
        if c.web is None:
            raise ValueError("cogenerators must be foams with boundary")
        if c.web != cogens[0].web:
            raise ValueError("all cogenerators must share one boundary web")
    entries = set()
    for i, g in enumerate(gens):
        for j, c in enumerate(cogens):
            if evaluate(glue(g, c, matching)).value:
                entries.add((i, j))
    m = F2Matrix(len(gens), len(cogens), frozenset(entries))
    return PairingRank(m, rank(m))

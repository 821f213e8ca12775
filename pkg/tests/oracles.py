"""Independent brute-force oracles for the test suite.

These deliberately share no code with the production paths they check:
colorings are enumerated over the full product of color assignments, and
2-factors over the full power set of edges.
"""

from __future__ import annotations

from itertools import product

from foamcalc.webs import Web


def brute_force_tait_count(w: Web) -> int:
    """Count Tait colorings by enumerating every assignment of {1,2,3} to
    every edge and checking the three-distinct-colors condition."""
    edges = [e.id for e in w.edges]
    ends: dict[str, list[str]] = {v: [] for v in w.vertices}
    for e in w.edges:
        if e.ends is None:
            continue
        for k in (0, 1):
            ends[e.ends[k]].append(e.id)
    count = 0
    for colors in product((1, 2, 3), repeat=len(edges)):
        assignment = dict(zip(edges, colors))
        if all(sorted(assignment[eid] for eid in ends[v]) == [1, 2, 3]
               for v in w.vertices):
            count += 1
    return count


def brute_force_two_factors(w: Web) -> list[frozenset[str]]:
    """Every subset of edges with exactly two incident ends per vertex,
    by exhausting the power set (free circles forced into each factor)."""
    plain = [e for e in w.edges if e.ends is not None]
    circles = frozenset(e.id for e in w.edges if e.ends is None)
    out = []
    for mask in range(1 << len(plain)):
        chosen = [plain[i] for i in range(len(plain)) if mask >> i & 1]
        deg: dict[str, int] = {v: 0 for v in w.vertices}
        for e in chosen:
            for v in e.ends:
                deg[v] += 1
        if all(d == 2 for d in deg.values()):
            out.append(frozenset(e.id for e in chosen) | circles)
    return out

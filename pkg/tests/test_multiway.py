"""Cross-cutting checks: disjoint unions (multiplicativity and longer
cancellation schedules), twisted gluings, and suite plumbing."""

import itertools
import os
import random

import pytest

from foamcalc.foams import (Foam, WebMatching, cancel_tetra_pair, cone, foam,
                            glue, suspension, theta_foam, validate_foam,
                            _prefix_foam)
from foamcalc.jflat import evaluate, perfect_matchings, well_definedness_report
from foamcalc.standard import k4_web
from foamcalc.suites import default_workers, random_foam, run_suite


def disjoint_union(a: Foam, b: Foam) -> Foam:
    pa, pb = _prefix_foam(a, "a:"), _prefix_foam(b, "b:")
    assert pa.web is None and pb.web is None
    return foam(
        tetra_points=list(pa.tetra_points) + list(pb.tetra_points),
        seam_edges=list(pa.seam_edges) + list(pb.seam_edges),
        seam_circles=list(pa.seam_circles) + list(pb.seam_circles),
        corners={**pa.corner_map(), **pb.corner_map()},
        facets=list(pa.facets) + list(pb.facets),
    )


def test_disjoint_union_multiplicativity():
    k4 = k4_web()
    cases = [
        (suspension(k4, {"ab": 0, "ac": 1, "ad": 2}), theta_foam(0, 1, 2), 1),
        (suspension(k4, {"ab": 0, "ac": 1, "ad": 2}), theta_foam(1, 1, 1), 0),
        (theta_foam(0, 1, 2), theta_foam(2, 1, 0), 1),
        (suspension(k4), theta_foam(0, 1, 2), 0),
    ]
    for a, b, want in cases:
        u = disjoint_union(a, b)
        assert validate_foam(u) == []
        assert evaluate(u).value == evaluate(a).value & evaluate(b).value == want


def test_two_suspensions_cancel_schedules():
    k4 = k4_web()
    a = suspension(k4, {"ab": 0, "ac": 1, "ad": 2})
    u = disjoint_union(a, a)
    # four tetra points across two components: matchings pick one edge in
    # each; every schedule must agree (circle orders capped: six circles
    # remain after the cancellations)
    ms = perfect_matchings(u)
    assert len(ms) == 16
    assert all(len(m) == 2 for m in ms)
    assert well_definedness_report(u, max_circle_orders=3) == {1}


def test_random_disjoint_unions_stay_multiplicative():
    rng = random.Random(77)
    k4 = k4_web()
    for _ in range(15):
        dots = {e: rng.randint(0, 2) for e in ("ab", "ac", "ad")}
        a = suspension(k4, dots)
        b = random_foam(rng, max_circles=2)
        u = disjoint_union(a, b)
        assert evaluate(u).value == (evaluate(a).value & evaluate(b).value)


def _k4_matching_from_vertex_map(vmap: dict[str, str]) -> WebMatching:
    w = k4_web()
    emap = {}
    for e in w.edges:
        u, v = e.ends
        image = frozenset({vmap[u], vmap[v]})
        (target,) = [x.id for x in w.edges if frozenset(x.ends) == image]
        emap[e.id] = target
    return WebMatching(tuple(sorted(vmap.items())), tuple(sorted(emap.items())))


def test_glue_cones_under_twisted_matchings():
    # any web automorphism used as the gluing matching produces a foam
    # isomorphic to the suspension, so the evaluation is unchanged
    k4 = k4_web()
    dots = {"ab": 0, "ac": 1, "ad": 2}
    want = evaluate(theta_foam(0, 1, 2)).value
    for i, perm in enumerate(itertools.permutations("abcd")):
        vmap = dict(zip("abcd", perm))
        m = _k4_matching_from_vertex_map(vmap)
        g = glue(cone(k4, dots), cone(k4), m)
        assert validate_foam(g) == []
        assert evaluate(g).value == want, vmap
        if i % 5 == 0:  # the full sweep is exercised on a sample
            assert well_definedness_report(g) == {want}, vmap


def test_cancel_after_twisted_glue_stays_valid():
    k4 = k4_web()
    m = _k4_matching_from_vertex_map({"a": "b", "b": "a", "c": "d", "d": "c"})
    g = glue(cone(k4), cone(k4), m)
    for e in g.seam_edges:
        out = cancel_tetra_pair(g, e.id)
        assert validate_foam(out) == [], e.id


def test_evaluate_trace_is_deterministic_and_replayable():
    k4 = k4_web()
    f = suspension(k4, {"ab": 0, "ac": 1, "ad": 2})
    r1, r2 = evaluate(f), evaluate(f)
    assert r1 == r2
    assert r1.trace.value == r1.value
    rules = [st.rule for st in r1.trace.steps]
    assert rules[0] == "cancel"
    assert "cut-circle" in rules


def test_suite_workers_env(monkeypatch):
    monkeypatch.setenv("FOAMCALC_THREADS", "3")
    assert default_workers() == 3
    report = run_suite("welldef", workers=2)
    assert report.passed
    monkeypatch.setenv("FOAMCALC_THREADS", "0")
    with pytest.raises(ValueError):
        default_workers()

"""Surgery paths beyond the standard constructors: loop web edges,
non-orientable gluings, cancellation on foams with boundary, and the
action bound on random foams."""

import random

import pytest
from dataclasses import replace

from foamcalc.foams import (CircleStep, EdgeStep, Facet, Foam, SeamEdge,
                            VertexAttach, WebStep, cancel_tetra_pair,
                            euler_characteristic, foam, glue,
                            identity_matching, suspension, validate_foam)
from foamcalc.index_formula import min_dots_for_nonzero
from foamcalc.jflat import evaluate, pairing_rank, well_definedness_report
from foamcalc.standard import dumbbell_web, k4_web
from foamcalc.suites import random_foam
from foamcalc.webs import Edge, Web, web


def dumbbell_half(dots_loops: int = 0, dots_bridge: int = 0) -> Foam:
    """A foam bounded by the dumbbell web: one seam arc joining the two
    vertices, a disk over the bridge, and a single S-shaped disk running
    through both loops."""
    w = dumbbell_web()
    s = SeamEdge("s", ("u", "v"))
    f_loops = Facet("Floops", True, 0, dots_loops, ((
        EdgeStep("s", 0, 0), WebStep("l2", 0), EdgeStep("s", 1, 1),
        WebStep("l1", 1),),))
    f_bridge = Facet("Fbr", True, 0, dots_bridge,
                     ((EdgeStep("s", 0, 2), WebStep("br", 1)),))
    attach = {
        "u": VertexAttach(("s", 0), ((("l1", 0), 0), (("l1", 1), 1), (("br", 0), 2))),
        "v": VertexAttach(("s", 1), ((("l2", 0), 0), (("l2", 1), 1), (("br", 1), 2))),
    }
    return foam(seam_edges=[s], facets=[f_loops, f_bridge], web=w, attach=attach)


def test_dumbbell_half_is_valid():
    f = dumbbell_half()
    assert validate_foam(f) == []
    # web complex -1 (a wedge of two circles), seam arc -1, two disks +2
    assert euler_characteristic(f) == 0


def test_dumbbell_double_evaluates_zero():
    f = dumbbell_half()
    g = glue(f, f, identity_matching(f.web))
    assert validate_foam(g) == []
    assert len(g.seam_circles) == 1
    shapes = sorted((fc.orientable, fc.genus, len(fc.boundary)) for fc in g.facets)
    assert shapes == [(True, 0, 1), (True, 0, 2)]  # a disk and an annulus
    assert evaluate(g).value == 0


def test_dumbbell_pairing_rank_is_zero():
    # the dumbbell web has a bridge, no Tait colorings, and rank 0
    gens = [dumbbell_half(a, b) for a in range(3) for b in range(2)]
    res = pairing_rank(gens, gens, identity_matching(gens[0].web))
    assert res.rank == 0
    assert res.matrix.entries == frozenset()


def test_klein_bottle_from_twisted_annulus_gluing():
    # two annuli glued along both circles, one gluing direction reversed:
    # the orientation constraints contradict and the result is a Klein
    # bottle, which evaluates to 0
    w = web([], [("c1", None), ("c2", None)])
    a = foam(facets=[Facet("A", True, 0, 0,
                           ((WebStep("c1", 0),), (WebStep("c2", 0),)))], web=w)
    b = foam(facets=[Facet("A", True, 0, 0,
                           ((WebStep("c1", 0),), (WebStep("c2", 1),)))], web=w)
    g = glue(a, b, identity_matching(w))
    assert validate_foam(g) == []
    (fc,) = g.facets
    assert not fc.orientable
    assert fc.genus == 2 and len(fc.boundary) == 0  # chi 0 Klein bottle
    assert evaluate(g).value == 0


def punctured_suspension(dots=None) -> Foam:
    """The suspension of the tetrahedral web with an open disk removed from
    one facet, leaving a free-circle boundary."""
    base = suspension(k4_web(), dots)
    w = Web((), (Edge("hole", None),))
    facets = []
    for fc in base.facets:
        if fc.id == "F_cd":
            facets.append(replace(fc, boundary=fc.boundary + ((WebStep("hole", 0),),)))
        else:
            facets.append(fc)
    return replace(base, facets=tuple(facets), web=w, attach=())


def test_punctured_suspension_valid():
    f = punctured_suspension()
    assert validate_foam(f) == []
    assert euler_characteristic(f) == 3


def test_cancel_on_foam_with_boundary():
    f = punctured_suspension({"ab": 1})
    out = cancel_tetra_pair(f, "s_a")
    assert validate_foam(out) == []
    assert out.web is not None
    assert euler_characteristic(out) == euler_characteristic(f) - 1
    # the puncture is still there and the dots survived
    assert sum(fc.dots for fc in out.facets) == 1
    assert any(any(isinstance(st, WebStep) for walk in fc.boundary for st in walk)
               for fc in out.facets)


def test_tube_connected_suspensions():
    # glue two punctured suspensions along the hole: a closed foam with
    # four tetra points connected by a tube
    a = punctured_suspension({"ab": 0, "ac": 1, "ad": 2})
    b = punctured_suspension()
    g = glue(a, b, identity_matching(a.web))
    assert validate_foam(g) == []
    assert len(g.tetra_points) == 4
    assert euler_characteristic(g) == \
        euler_characteristic(a) + euler_characteristic(b)
    assert len(well_definedness_report(g, max_circle_orders=2)) == 1


def _friendly_random_foam(rng: random.Random) -> Foam:
    """Identity monodromies and flat facets only, so a non-zero evaluation
    is reasonably likely."""
    from foamcalc.foams import SeamCircle

    n_circ = rng.randint(1, 2)
    circles = [SeamCircle(f"c{i}", "id") for i in range(n_circ)]
    units = [(c.id, s) for c in circles for s in (0, 1, 2)]
    rng.shuffle(units)
    facets = []
    i = 0
    while i < len(units):
        take = min(rng.randint(1, 2), len(units) - i)
        walks = tuple((CircleStep(c, s, 1),) for c, s in units[i:i + take])
        facets.append(Facet(f"f{i}", True, 0, rng.randint(0, 2), walks))
        i += take
    return foam(seam_circles=circles, facets=facets)


def test_action_bound_on_random_nonzero_foams():
    rng = random.Random(424242)
    seen_nonzero = 0
    for _ in range(300):
        f = _friendly_random_foam(rng)
        assert validate_foam(f) == []
        if evaluate(f).value != 1:
            continue
        seen_nonzero += 1
        dots = sum(fc.dots for fc in f.facets)
        bound = min_dots_for_nonzero(euler_characteristic(f), 0,
                                     len(f.tetra_points))
        assert dots >= bound
    assert seen_nonzero > 5

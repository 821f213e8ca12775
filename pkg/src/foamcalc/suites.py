"""Property suites run over the corpus (and seeded random inputs).

Four suites back the CLI / service endpoints: ``relations`` (dot
migration, bubble-bursting, triple-dot vanishing, neck-cutting order
independence), ``welldef`` (the evaluation is choice-independent on the
corpus), ``conjecture`` (reduction total equals the Tait count whenever
the rewriting terminates), and ``algebra`` (group-ring, cube-complex,
Gysin and dot-algebra facts).
"""

from __future__ import annotations

import itertools
import os
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from typing import Callable, Optional

from . import corpus
from .foams import (CircleStep, EdgeStep, Facet, Foam, SeamCircle, add_dot,
                    cancel_tetra_pair, foam, validate_foam)
from .homalg import (BasedComplex, DotAlgebra, F2Matrix, GroupRingElement,
                     double_cover_complex, e1_page, filtration_level, nullspace,
                     rank, xi, xi_multiply)
from .jflat import evaluate, find_perfect_matching, well_definedness_report
from .planar import check_conjecture, random_reducible_web


@dataclass(frozen=True)
class SuiteCase:
    name: str
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class SuiteReport:
    suite: str
    cases: tuple[SuiteCase, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.cases)

    @property
    def counts(self) -> tuple[int, int]:
        good = sum(1 for c in self.cases if c.passed)
        return good, len(self.cases)

    def summary(self) -> str:
        good, total = self.counts
        status = "PASS" if self.passed else "FAIL"
        return f"suite {self.suite}: {status} ({good}/{total})"


def default_workers() -> int:
    env = os.environ.get("FOAMCALC_THREADS")
    if env:
        n = int(env)
        if n < 1:
            raise ValueError("FOAMCALC_THREADS must be at least 1")
        return n
    return 1


def _run_cases(fns: list[tuple[str, Callable[[], Optional[str]]]],
               workers: int) -> list[SuiteCase]:
    """Run checks (returning None on success, a message on failure); output
    order follows the case list regardless of scheduling."""

    def run_one(item):
        name, fn = item
        try:
            msg = fn()
        except Exception as exc:  # a crash is a failure, not an abort
            return SuiteCase(name, False, f"{type(exc).__name__}: {exc}")
        return SuiteCase(name, msg is None, msg or "")

    if workers <= 1:
        return [run_one(item) for item in fns]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(run_one, fns))


# ---------------------------------------------------------------------------
# Random foams (no tetra points, a few seam circles)
# ---------------------------------------------------------------------------

def random_foam(rng: random.Random, max_circles: int = 3) -> Foam:
    """A random valid closed pre-foam without tetra points: seam circles
    with random monodromies, their sheet walks grouped into random facets,
    plus the occasional closed facet."""
    n_circ = rng.randint(1, max_circles)
    circles = []
    units: list[tuple[str, int, int]] = []  # (circle, start slot, winding)
    for i in range(n_circ):
        label = rng.choice(["id", "id", "id", "t01", "t12", "c012"])
        cid = f"c{i}"
        circles.append(SeamCircle(cid, label))
        perm = circles[-1].perm
        seen: set[int] = set()
        for s in (0, 1, 2):
            if s in seen:
                continue
            orbit = [s]
            while perm[orbit[-1]] != s:
                orbit.append(perm[orbit[-1]])
            seen |= set(orbit)
            units.append((cid, s, len(orbit)))
    rng.shuffle(units)
    facets = []
    i = 0
    fid = 0
    while i < len(units):
        take = min(rng.randint(1, 3), len(units) - i)
        walks = tuple((CircleStep(c, s, w),) for c, s, w in units[i:i + take])
        i += take
        if rng.random() < 0.15:
            orientable, genus = False, rng.randint(1, 2)
        else:
            orientable, genus = True, rng.choice([0, 0, 0, 1])
        facets.append(Facet(f"f{fid}", orientable, genus, rng.randint(0, 2), walks))
        fid += 1
    for _ in range(rng.randint(0, 1)):
        facets.append(Facet(f"f{fid}", True, rng.choice([0, 1]), rng.randint(0, 2), ()))
        fid += 1
    out = foam(seam_circles=circles, facets=facets)
    assert validate_foam(out) == []
    return out


def attach_bubble(f: Foam, facet_id: str, bubble_dots: int) -> Foam:
    """Attach a sphere bubble along a circle drawn inside a facet: a new
    trivial-monodromy seam circle whose three sheets are the facet itself,
    the disk it cut off, and a new dotted disk."""
    cid = "bub"
    assert cid not in {c.id for c in f.seam_circles}
    facets = []
    for fc in f.facets:
        if fc.id == facet_id:
            facets.append(replace(fc, boundary=fc.boundary + ((CircleStep(cid, 0, 1),),)))
        else:
            facets.append(fc)
    facets.append(Facet("bub_in", True, 0, 0, ((CircleStep(cid, 1, 1),),)))
    facets.append(Facet("bub_cap", True, 0, bubble_dots, ((CircleStep(cid, 2, 1),),)))
    return replace(f, seam_circles=f.seam_circles + (SeamCircle(cid, "id"),),
                   facets=tuple(facets))


# ---------------------------------------------------------------------------
# Relation checks
# ---------------------------------------------------------------------------

def _seam_slot_facets(f: Foam) -> list[tuple[str, tuple[str, str, str]]]:
    """For every seam circle and seam edge: the facets on its three slots."""
    out = []
    for c in f.seam_circles:
        owner: dict[int, str] = {}
        for fc in f.facets:
            for walk in fc.boundary:
                if len(walk) == 1 and isinstance(walk[0], CircleStep) \
                        and walk[0].circle == c.id:
                    st = walk[0]
                    perm = c.perm
                    slot = st.slot
                    for _ in range(st.winding):
                        owner[slot] = fc.id
                        slot = perm[slot]
        out.append((c.id, (owner[0], owner[1], owner[2])))
    for e in f.seam_edges:
        owner = {}
        for fc in f.facets:
            for walk in fc.boundary:
                for st in walk:
                    if isinstance(st, EdgeStep) and st.edge == e.id:
                        owner[st.slot] = fc.id
        if sorted(owner) == [0, 1, 2]:
            out.append((e.id, (owner[0], owner[1], owner[2])))
    return out


def check_dot_migration(f: Foam) -> Optional[str]:
    """Sum of the three one-dot placements around any seam is zero."""
    for seam_id, (f1, f2, f3) in _seam_slot_facets(f):
        total = 0
        for fid in (f1, f2, f3):
            total ^= evaluate(add_dot(f, fid)).value
        if total != 0:
            return f"dot migration fails at seam {seam_id!r}"
    return None


def check_bubble_bursting(f: Foam) -> Optional[str]:
    """A bubble with k dots equals the plain foam with k-1 dots (k = 1, 2)
    and evaluates to 0 otherwise."""
    for fc in f.facets:
        for k in range(4):
            lhs = evaluate(attach_bubble(f, fc.id, k)).value
            if k in (1, 2):
                rhs = evaluate(add_dot(f, fc.id) if k == 2 else f).value
                want = rhs
            else:
                want = 0
            if lhs != want:
                return f"bubble-bursting fails on facet {fc.id!r} with k={k}"
    return None


def check_triple_dot(f: Foam) -> Optional[str]:
    for fc in f.facets:
        g = f
        for _ in range(3):
            g = add_dot(g, fc.id)
        if evaluate(g).value != 0:
            return f"triple dot on facet {fc.id!r} does not vanish"
    return None


def check_cut_order_independence(f: Foam) -> Optional[str]:
    g = f
    while g.tetra_points:
        m = find_perfect_matching(g)
        if m is None:
            return None  # non-bipartite: evaluation is 0 under every order
        g = cancel_tetra_pair(g, m[0])
    if any(c.monodromy != "id" for c in g.seam_circles):
        return None
    circles = sorted(c.id for c in g.seam_circles)
    base = None
    for order in itertools.permutations(circles):
        v = evaluate(g, circle_order=order).value
        if base is None:
            base = v
        elif v != base:
            return f"cut order {order} changes the value"
    return None


def relations_suite(seed: int = 0, n_random: int = 200, max_circles: int = 3,
                    workers: Optional[int] = None) -> SuiteReport:
    rng = random.Random(seed)
    foams = list(corpus.corpus_foams().items())
    for i in range(n_random):
        foams.append((f"random{i}", random_foam(rng, max_circles)))
    cases: list[tuple[str, Callable[[], Optional[str]]]] = []
    for name, fm in foams:
        cases.append((f"migration[{name}]", lambda fm=fm: check_dot_migration(fm)))
        cases.append((f"bubble[{name}]", lambda fm=fm: check_bubble_bursting(fm)))
        cases.append((f"triple-dot[{name}]", lambda fm=fm: check_triple_dot(fm)))
        cases.append((f"cut-order[{name}]", lambda fm=fm: check_cut_order_independence(fm)))
    return SuiteReport("relations", tuple(_run_cases(cases, workers or default_workers())))


def welldef_suite(workers: Optional[int] = None) -> SuiteReport:
    cases = []
    for name, fm in corpus.corpus_foams().items():
        def check(fm=fm):
            rep = well_definedness_report(fm)
            return None if len(rep) == 1 else f"values {sorted(rep)}"
        cases.append((f"welldef[{name}]", check))
    return SuiteReport("welldef", tuple(_run_cases(cases, workers or default_workers())))


def conjecture_suite(seed: int = 0, n_random: int = 100,
                     workers: Optional[int] = None) -> SuiteReport:
    cases = []
    for name, rw in corpus.corpus_rotation_webs().items():
        def check(rw=rw, name=name):
            res = check_conjecture(rw)
            if res.agree is None:
                return None  # stuck: reported as N/A, not a failure
            return None if res.agree else \
                f"reduced {res.reduced.value} != tait {res.tait}"
        cases.append((f"conjecture[{name}]", check))
    rng = random.Random(seed)
    for i in range(n_random):
        rw = random_reducible_web(rng)

        def check_rand(rw=rw):
            res = check_conjecture(rw)
            if res.agree is None:
                return "reduction got stuck on a generated reducible web"
            return None if res.agree else \
                f"reduced {res.reduced.value} != tait {res.tait}"
        cases.append((f"conjecture[random{i}]", check_rand))
    return SuiteReport("conjecture", tuple(_run_cases(cases, workers or default_workers())))


# ---------------------------------------------------------------------------
# Algebra suite
# ---------------------------------------------------------------------------

def random_based_complex(rng: random.Random, max_cells: int = 20) -> BasedComplex:
    """A random small based complex; three-term complexes draw their top
    boundaries from the kernel of the lower differential, and some cells
    carry doubled incidences (which vanish mod 2 but lift separately)."""
    if rng.random() < 0.5:
        n0, n1 = rng.randint(1, 6), rng.randint(1, 6)
        inc1 = []
        for _ in range(n1):
            a = rng.randrange(n0)
            b = rng.randrange(n0) if rng.random() < 0.7 else a
            inc1.append((a, b))
        return BasedComplex((n0, n1), (tuple(inc1),))
    n0, n1, n2 = rng.randint(1, 5), rng.randint(1, 5), rng.randint(1, 4)
    inc1 = []
    for _ in range(n1):
        a = rng.randrange(n0)
        b = rng.randrange(n0) if rng.random() < 0.7 else a
        inc1.append((a, b))
    d1_entries = set()
    for j, inc in enumerate(inc1):
        for b in set(inc):
            if inc.count(b) % 2:
                d1_entries.add((b, j))
    d1 = F2Matrix(n0, n1, frozenset(d1_entries))
    kernel = nullspace(d1)
    inc2 = []
    for _ in range(n2):
        if kernel and rng.random() < 0.9:
            vec = 0
            for k in kernel:
                if rng.random() < 0.5:
                    vec ^= k
            cells = [j for j in range(n1) if vec >> j & 1]
        else:
            cells = []
        if rng.random() < 0.3 and n1:
            j = rng.randrange(n1)
            cells = cells + [j, j]  # doubled incidence, invisible mod 2
        inc2.append(tuple(cells))
    return BasedComplex((n0, n1, n2), (tuple(inc1), tuple(inc2)))


def random_cover_bits(rng: random.Random, base: BasedComplex):
    """Random cover bits satisfying the lifted square-zero condition (a
    linear system over the incidence bits; two-term complexes are
    unconstrained)."""
    flat: list[tuple[int, int, int]] = []  # (degree index, cell, position)
    index: dict[tuple[int, int, int], int] = {}
    for q, table in enumerate(base.incidences):
        for j, inc in enumerate(table):
            for p in range(len(inc)):
                index[(q, j, p)] = len(flat)
                flat.append((q, j, p))
    n_vars = len(flat)
    rows = []
    for q in range(len(base.incidences) - 1):
        upper = base.incidences[q + 1]
        lower = base.incidences[q]
        targets: dict[tuple[int, int], int] = {}
        for j, inc in enumerate(upper):
            for p, mid in enumerate(inc):
                for p2, bottom in enumerate(lower[mid]):
                    key = (j, bottom)
                    row = targets.setdefault(key, 0)
                    row ^= 1 << index[(q + 1, j, p)]
                    row ^= 1 << index[(q, mid, p2)]
                    targets[key] = row
        rows.extend(targets.values())
    # random element of the solution space of the linear system
    entries = {(ri, v) for ri, r in enumerate(rows) for v in range(n_vars) if r >> v & 1}
    kernel = nullspace(F2Matrix(len(rows), n_vars, frozenset(entries)))
    solution = 0
    for k in kernel:
        if rng.random() < 0.5:
            solution ^= k
    bits = []
    for q, table in enumerate(base.incidences):
        bits.append(tuple(
            tuple(solution >> index[(q, j, p)] & 1 for p in range(len(table[j])))
            for j in range(len(table))))
    return tuple(bits)


def _group_convolution_oracle(n: int, index_set: frozenset[int],
                              e: GroupRingElement) -> GroupRingElement:
    """Multiply by x_I in the group-element basis and convert back: an
    independent check of the closed subset-sum formula."""
    # group elements are subsets (symmetric difference product);
    # xi_A = sum over subsets of A
    def to_group(supp):
        acc: set[frozenset[int]] = set()
        for a in supp:
            members = sorted(a)
            for mask in range(1 << len(members)):
                g = frozenset(m for i, m in enumerate(members) if mask >> i & 1)
                acc ^= {g}
        return acc

    def to_xi(group_supp):
        # mu_B = sum over A containing B of lambda_A, and the superset-sum
        # transform is an involution mod 2, so lambda_A = sum over B
        # containing A of mu_B; each g contributes to every A inside it
        acc: set[frozenset[int]] = set()
        for g in group_supp:
            members = sorted(g)
            for mask in range(1 << len(members)):
                a = frozenset(m for i, m in enumerate(members) if mask >> i & 1)
                acc ^= {a}
        return acc

    shifted = {g ^ index_set for g in to_group(e.support)}
    return GroupRingElement(n, frozenset(to_xi(shifted)))


def algebra_suite(seed: int = 0, n_covers: int = 50,
                  workers: Optional[int] = None) -> SuiteReport:
    rng = random.Random(seed)
    cases: list[tuple[str, Callable[[], Optional[str]]]] = []

    def xi_formula() -> Optional[str]:
        for n in range(0, 5):
            subsets = [frozenset(s) for r in range(n + 1)
                       for s in itertools.combinations(range(1, n + 1), r)]
            for i_set in subsets:
                for a in subsets:
                    got = xi_multiply(i_set, xi(n, a))
                    want = _group_convolution_oracle(n, i_set, xi(n, a))
                    if got.support != want.support:
                        return f"x_I xi_A mismatch at n={n} I={sorted(i_set)} A={sorted(a)}"
        return None
    cases.append(("xi-formula", xi_formula))

    def xi_group_law() -> Optional[str]:
        for _ in range(200):
            n = rng.randint(1, 4)
            pick = lambda: frozenset(i for i in range(1, n + 1) if rng.random() < 0.5)
            i_set, j_set = pick(), pick()
            e = GroupRingElement(n, frozenset({pick() for _ in range(rng.randint(0, 3))}))
            lhs = xi_multiply(i_set, xi_multiply(j_set, e))
            rhs = xi_multiply(i_set ^ j_set, e)
            if lhs.support != rhs.support:
                return f"x_I x_J != x_(I xor J) at n={n}"
        return None
    cases.append(("xi-group-law", xi_group_law))

    def filtration_props() -> Optional[str]:
        for _ in range(200):
            n = rng.randint(1, 4)
            a = frozenset(i for i in range(1, n + 1) if rng.random() < 0.5)
            i_set = frozenset(i for i in range(1, n + 1) if rng.random() < 0.5)
            e = xi(n, a)
            prod = xi_multiply(i_set, e)
            diff = prod + e
            if not diff.is_zero() and filtration_level(diff) <= len(a):
                return f"x_I xi_A != xi_A mod next level at n={n}"
        return None
    cases.append(("filtration", filtration_props))

    def e1_dims() -> Optional[str]:
        if e1_page([1, 1], 2) != {0: 2, 1: 4, 2: 2}:
            return "E1 dims for n=2, base (1,1)"
        if e1_page([1], 1) != {0: 1, 1: 1}:
            return "E1 dims for n=1"
        if e1_page([5], 0) != {0: 5}:
            return "E1 dims for n=0"
        return None
    cases.append(("e1-page", e1_dims))

    for i in range(n_covers):
        base = random_based_complex(rng)
        bits = random_cover_bits(rng, base)

        def gysin(base=base, bits=bits, i=i) -> Optional[str]:
            rep = double_cover_complex(base, bits)
            if not rep.chain_maps_ok:
                return "chain maps fail"
            if not rep.exact_ok:
                return "short exact sequence fails"
            if not rep.rank_identity_ok:
                return "rank identity fails"
            if not rep.nonvanishing_ok:
                return "cover homology nonzero but base homology zero"
            return None
        cases.append((f"gysin[{i}]", gysin))

    def dot_algebras() -> Optional[str]:
        unknot = DotAlgebra("unknot")
        if unknot.multiply(unknot.element([(1,)]), unknot.element([(2,)])):
            return "u . u^2 != 0 in the one-variable algebra"
        if rank(unknot.pairing_matrix()) != 3:
            return "one-variable pairing rank != 3"
        flag = DotAlgebra("flag")
        if flag.element([(1, 0, 0), (0, 1, 0), (0, 0, 1)]):
            return "u1+u2+u3 does not reduce to 0"
        if rank(flag.pairing_matrix()) != 6:
            return "flag pairing rank != 6"
        for a1 in range(3):
            for a2 in range(3):
                for a3 in range(3):
                    if a1 + a2 + a3 >= 4 and flag.reduce_monomial((a1, a2, a3)):
                        return f"degree-4 monomial u^{(a1, a2, a3)} does not vanish"
        return None
    cases.append(("dot-algebras", dot_algebras))

    return SuiteReport("algebra", tuple(_run_cases(cases, workers or default_workers())))


SUITES: dict[str, Callable[..., SuiteReport]] = {
    "relations": relations_suite,
    "welldef": welldef_suite,
    "conjecture": conjecture_suite,
    "algebra": algebra_suite,
}


def run_suite(name: str, seed: int = 0, workers: Optional[int] = None) -> SuiteReport:
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from {sorted(SUITES)}")
    if name == "welldef":
        return welldef_suite(workers=workers)
    return SUITES[name](seed=seed, workers=workers)

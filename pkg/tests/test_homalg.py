import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from foamcalc.homalg import (BasedComplex, DotAlgebra, F2ChainComplex, F2Matrix,
                             GroupRingElement, build_cube_complex,
                             cube_homology_dim, double_cover_complex, e1_page,
                             filtration_level, homology_dims, nullspace, rank,
                             xi, xi_multiply)
from foamcalc.suites import (_group_convolution_oracle, random_based_complex,
                             random_cover_bits)


# --- matrices -----------------------------------------------------------------

def test_rank_identity():
    assert rank(F2Matrix.identity(3)) == 3


def test_rank_antidiagonal():
    m = F2Matrix(3, 3, frozenset({(0, 2), (1, 1), (2, 0)}))
    assert rank(m) == 3


def test_rank_random_against_row_reduction():
    rng = random.Random(5)
    for _ in range(30):
        rows, cols = rng.randint(1, 8), rng.randint(1, 8)
        entries = frozenset((r, c) for r in range(rows) for c in range(cols)
                            if rng.random() < 0.4)
        m = F2Matrix(rows, cols, entries)
        # dimension theorem: rank + nullity = cols
        assert rank(m) + len(nullspace(m)) == cols


def test_nullspace_vectors_are_in_kernel():
    rng = random.Random(6)
    for _ in range(20):
        rows, cols = rng.randint(1, 7), rng.randint(1, 7)
        entries = frozenset((r, c) for r in range(rows) for c in range(cols)
                            if rng.random() < 0.4)
        m = F2Matrix(rows, cols, entries)
        rbits = m.row_bits()
        for v in nullspace(m):
            assert all(bin(rb & v).count("1") % 2 == 0 for rb in rbits)


def test_matrix_multiply():
    a = F2Matrix.from_rows([[1, 1], [0, 1]])
    b = F2Matrix.from_rows([[1, 0], [1, 1]])
    assert a.mul(b) == F2Matrix.from_rows([[0, 1], [1, 1]])


def test_zero_complex_homology():
    c = F2ChainComplex((2, 3), (F2Matrix.zero(2, 3),))
    assert homology_dims(c) == [2, 3]


def test_complex_rejects_nonzero_square():
    d1 = F2Matrix.from_rows([[1, 0], [0, 1]])
    d2 = F2Matrix.from_rows([[1, 0], [0, 1]])
    with pytest.raises(ValueError, match="!= 0"):
        F2ChainComplex((2, 2, 2), (d1, d2))


def test_interval_complex_homology():
    # 2 points, 1 edge joining them: H0 = 1, H1 = 0
    c = F2ChainComplex((2, 1), (F2Matrix.from_rows([[1], [1]]),))
    assert homology_dims(c) == [1, 0]


# --- group ring ------------------------------------------------------------------

def test_xi_formula_basic():
    e = xi(2, [])
    assert xi_multiply([1], e).support == frozenset({frozenset(), frozenset({1})})
    assert xi_multiply([], e).support == e.support
    assert xi_multiply([1, 2], e).support == frozenset({
        frozenset(), frozenset({1}), frozenset({2}), frozenset({1, 2})})


def test_xi_fixes_when_contained():
    # i in A: x_i xi_A = xi_A
    e = xi(3, [1, 2])
    assert xi_multiply([1], e).support == e.support


def test_xi_formula_exhaustive_against_group_convolution():
    for n in range(0, 5):
        subsets = [frozenset(s) for r in range(n + 1)
                   for s in itertools.combinations(range(1, n + 1), r)]
        for i_set in subsets:
            for a in subsets:
                got = xi_multiply(i_set, xi(n, a))
                want = _group_convolution_oracle(n, i_set, xi(n, a))
                assert got.support == want.support, (n, i_set, a)


@st.composite
def ring_elements(draw):
    n = draw(st.integers(min_value=1, max_value=4))
    subsets = st.frozensets(st.integers(min_value=1, max_value=n))
    support = draw(st.frozensets(subsets, max_size=4))
    return n, GroupRingElement(n, frozenset(support))


@settings(max_examples=150, deadline=None)
@given(ring_elements(), st.data())
def test_xi_group_law_hypothesis(elem, data):
    n, e = elem
    i_set = data.draw(st.frozensets(st.integers(min_value=1, max_value=n)))
    j_set = data.draw(st.frozensets(st.integers(min_value=1, max_value=n)))
    lhs = xi_multiply(i_set, xi_multiply(j_set, e))
    rhs = xi_multiply(i_set ^ j_set, e)
    assert lhs.support == rhs.support


def test_filtration_level():
    assert filtration_level(xi(2, [1, 2])) == 2
    assert filtration_level(xi(2, []) + xi(2, [1])) == 0
    assert filtration_level(xi_multiply([1], xi(2, [1]))) == 1
    with pytest.raises(ValueError):
        filtration_level(GroupRingElement(2, frozenset()))


def test_multiplication_fixes_modulo_next_level():
    rng = random.Random(9)
    for _ in range(100):
        n = rng.randint(1, 4)
        a = frozenset(i for i in range(1, n + 1) if rng.random() < 0.5)
        i_set = frozenset(i for i in range(1, n + 1) if rng.random() < 0.5)
        e = xi(n, a)
        diff = xi_multiply(i_set, e) + e
        if not diff.is_zero():
            assert filtration_level(diff) > len(a)


# --- cube complexes ----------------------------------------------------------------

def test_cube_n1_diagonal():
    d = F2Matrix.from_rows([[0, 1], [0, 0]])
    op = build_cube_complex(2, 1, {frozenset(): d, frozenset({1}): F2Matrix.zero(2, 2)})
    assert op.square_is_zero
    assert cube_homology_dim(op) == 0  # d ⊕ d with rank 1 each: 4 - 4


def test_cube_n1_off_diagonal():
    for rows in ([[1, 0], [0, 0]], [[1, 1], [0, 1]], [[0, 0], [0, 0]]):
        u1 = F2Matrix.from_rows(rows)
        op = build_cube_complex(2, 1, {frozenset(): F2Matrix.zero(2, 2),
                                       frozenset({1}): u1})
        assert op.square_is_zero
        assert cube_homology_dim(op) == 2 * 2 - 2 * rank(u1)


def test_cube_detects_square_violation():
    d = F2Matrix.from_rows([[1, 0], [0, 1]])
    op = build_cube_complex(2, 1, {frozenset(): d, frozenset({1}): F2Matrix.zero(2, 2)})
    assert not op.square_is_zero
    assert op.first_violation == (frozenset(), frozenset())
    with pytest.raises(ValueError):
        cube_homology_dim(op)


def test_cube_n2_from_double_cover():
    # a verified small n=2 family: base d = 0 on one generator, U_{1}, U_{2}
    # commuting nilpotents, U_{12} = 0
    u1 = F2Matrix.from_rows([[0, 1], [0, 0]])
    u2 = F2Matrix.from_rows([[0, 1], [0, 0]])
    op = build_cube_complex(2, 2, {
        frozenset(): F2Matrix.zero(2, 2),
        frozenset({1}): u1,
        frozenset({2}): u2,
        frozenset({1, 2}): F2Matrix.zero(2, 2),
    })
    assert op.square_is_zero
    assert cube_homology_dim(op) >= 0


def test_cube_missing_subset():
    with pytest.raises(ValueError, match="missing"):
        build_cube_complex(1, 1, {frozenset(): F2Matrix.zero(1, 1)})


def test_e1_page_values():
    assert e1_page([1, 1], 2) == {0: 2, 1: 4, 2: 2}
    assert e1_page([1], 1) == {0: 1, 1: 1}
    assert e1_page([5], 0) == {0: 5}
    assert e1_page([1, 2], 3) == {0: 3, 1: 9, 2: 9, 3: 3}


# --- double covers ----------------------------------------------------------------

def circle_complex() -> BasedComplex:
    return BasedComplex((1, 1), (((0, 0),),))


def test_circle_complex_has_zero_differential():
    assert circle_complex().matrices()[0].is_zero()
    assert homology_dims(circle_complex().complex()) == [1, 1]


def test_trivial_double_cover_doubles_homology():
    rep = double_cover_complex(circle_complex(), (((0, 0),),))
    assert rep.h_cover == (2, 2)
    assert rep.connecting_ranks == (0, 0)
    assert rep.chain_maps_ok and rep.exact_ok and rep.rank_identity_ok


def test_connected_circle_cover():
    rep = double_cover_complex(circle_complex(), (((0, 1),),))
    assert rep.h_base == (1, 1)
    assert rep.h_cover == (1, 1)  # the double cover of a circle is a circle
    assert rep.connecting_ranks == (0, 1)
    assert not rep.connecting_vanishes
    assert rep.chain_maps_ok and rep.exact_ok and rep.rank_identity_ok


def test_random_covers_gysin():
    rng = random.Random(31337)
    nonvanishing_seen = 0
    for _ in range(60):
        base = random_based_complex(rng)
        bits = random_cover_bits(rng, base)
        rep = double_cover_complex(base, bits)
        assert rep.chain_maps_ok and rep.exact_ok
        assert rep.rank_identity_ok
        assert rep.nonvanishing_ok
        if sum(rep.h_cover) > 0:
            nonvanishing_seen += 1
            assert sum(rep.h_base) > 0
    assert nonvanishing_seen > 10  # the implication was actually exercised


def test_mismatched_cover_bits_rejected():
    with pytest.raises(ValueError, match="mirror"):
        double_cover_complex(circle_complex(), (((0,),),))


# --- dot algebras ------------------------------------------------------------------

def test_unknot_algebra():
    alg = DotAlgebra("unknot")
    u = alg.element([(1,)])
    u2 = alg.element([(2,)])
    assert alg.multiply(u, u2) == frozenset()  # u^3 = 0
    assert alg.multiply(u, u) == u2
    m = alg.pairing_matrix()
    assert m.entries == frozenset({(0, 2), (1, 1), (2, 0)})
    assert rank(m) == 3


def test_flag_relations():
    alg = DotAlgebra("flag")
    assert alg.element([(1, 0, 0), (0, 1, 0), (0, 0, 1)]) == frozenset()
    # e2 = u1u2 + u2u3 + u3u1 = 0
    assert alg.element([(1, 1, 0), (0, 1, 1), (1, 0, 1)]) == frozenset()
    # e3 = u1u2u3 = 0
    assert alg.element([(1, 1, 1)]) == frozenset()


def test_flag_dimension_and_rank():
    alg = DotAlgebra("flag")
    assert len(alg.basis()) == 6
    assert rank(alg.pairing_matrix()) == 6


def test_flag_degree_four_vanishes():
    alg = DotAlgebra("flag")
    for a in itertools.product(range(4), repeat=3):
        if sum(a) >= 4:
            assert alg.reduce_monomial(a) == frozenset(), a


def test_pairing_symmetric_bilinear():
    for kind in ("unknot", "flag"):
        alg = DotAlgebra(kind)
        m = alg.pairing_matrix()
        assert m.entries == frozenset((c, r) for r, c in m.entries), kind
    alg = DotAlgebra("flag")
    x = alg.element([(0, 1, 0)])
    y = alg.element([(0, 0, 1), (0, 1, 1)])
    z = alg.element([(0, 0, 2)])
    lhs = alg.pairing(x, frozenset(y ^ z))
    assert lhs == alg.pairing(x, y) ^ alg.pairing(x, z)


def test_flag_cyclic_module_multiplication():
    alg = DotAlgebra("flag")
    one = alg.element([(0, 0, 0)])
    u2 = alg.element([(0, 1, 0)])
    acc = one
    for _ in range(2):
        acc = alg.multiply(acc, u2)
    # u2^2 = u2 u3 + u3^2
    assert acc == alg.element([(0, 1, 1), (0, 0, 2)])

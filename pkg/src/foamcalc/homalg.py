"""Exact linear algebra over the field of two elements.

Matrices are stored sparsely (a set of 1-entries) and eliminated on dense
bitset rows (Python ints), which is comfortably fast at desk scale.  On
top of that sit:

* chain complexes and their homology dimensions;
* the group ring of (Z/2)^n in the idempotent-sum basis xi_A, with the
  augmentation filtration;
* the "cube" total complex whose (A,B) component is U_{B\\A};
* double covers of based complexes and the mod-2 Gysin sequence;
* the two small dot algebras (the 3-dimensional one-variable algebra
  with u^3 = 0 and the 6-dimensional flag algebra), paired through the
  closed-foam evaluations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Sequence


# ---------------------------------------------------------------------------
# Matrices
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class F2Matrix:
    rows: int
    cols: int
    entries: frozenset[tuple[int, int]]

    def __post_init__(self):
        for r, c in self.entries:
            if not (0 <= r < self.rows and 0 <= c < self.cols):
                raise ValueError(f"entry ({r},{c}) out of range for {self.rows}x{self.cols}")

    @staticmethod
    def zero(rows: int, cols: int) -> "F2Matrix":
        return F2Matrix(rows, cols, frozenset())

    @staticmethod
    def identity(n: int) -> "F2Matrix":
        return F2Matrix(n, n, frozenset((i, i) for i in range(n)))

    @staticmethod
    def from_rows(rows: Sequence[Sequence[int]]) -> "F2Matrix":
        r = len(rows)
        c = len(rows[0]) if rows else 0
        ent = {(i, j) for i, row in enumerate(rows) for j, x in enumerate(row) if x % 2}
        return F2Matrix(r, c, frozenset(ent))

    def row_bits(self) -> list[int]:
        bits = [0] * self.rows
        for r, c in self.entries:
            bits[r] |= 1 << c
        return bits

    def is_zero(self) -> bool:
        return not self.entries

    def add(self, other: "F2Matrix") -> "F2Matrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return F2Matrix(self.rows, self.cols, self.entries ^ other.entries)

    def mul(self, other: "F2Matrix") -> "F2Matrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        rbits = other.row_bits()
        out = set()
        by_row: dict[int, list[int]] = {}
        for r, c in self.entries:
            by_row.setdefault(r, []).append(c)
        for r, cs in by_row.items():
            acc = 0
            for c in cs:
                acc ^= rbits[c]
            for j in range(other.cols):
                if acc >> j & 1:
                    out.add((r, j))
        return F2Matrix(self.rows, other.cols, frozenset(out))


def rank(m: F2Matrix) -> int:
    """GF(2) rank by Gaussian elimination on bitset rows."""
    bits = [b for b in m.row_bits() if b]
    r = 0
    while bits:
        pivot = bits.pop()
        low = pivot & -pivot
        r += 1
        bits = [b ^ pivot if b & low else b for b in bits]
        bits = [b for b in bits if b]
    return r


def nullspace(m: F2Matrix) -> list[int]:
    """Basis of the right kernel, each vector packed as a bitset int."""
    # eliminate the transpose: kernel vectors index columns
    cols = m.cols
    rows = m.row_bits()
    # augment each column-combination tracker
    basis: list[tuple[int, int]] = []  # (reduced column bitset over rows, combination)
    out = []
    for j in range(cols):
        vec = 0
        for i, rb in enumerate(rows):
            if rb >> j & 1:
                vec |= 1 << i
        comb = 1 << j
        for bvec, bcomb in basis:
            low = bvec & -bvec
            if vec & low:
                vec ^= bvec
                comb ^= bcomb
        if vec:
            basis.append((vec, comb))
        else:
            out.append(comb)
    return out


# ---------------------------------------------------------------------------
# Chain complexes
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class F2ChainComplex:
    """Chain groups C_0..C_k with differentials d[i]: C_{i+1} -> C_i."""

    dims: tuple[int, ...]
    diffs: tuple[F2Matrix, ...]

    def __post_init__(self):
        if len(self.diffs) != max(len(self.dims) - 1, 0):
            raise ValueError("need one differential per adjacent pair of chain groups")
        for i, d in enumerate(self.diffs):
            if (d.rows, d.cols) != (self.dims[i], self.dims[i + 1]):
                raise ValueError(f"differential {i} has shape {d.rows}x{d.cols}, "
                                 f"expected {self.dims[i]}x{self.dims[i + 1]}")
        for i in range(len(self.diffs) - 1):
            if not self.diffs[i].mul(self.diffs[i + 1]).is_zero():
                raise ValueError(f"d_{i} . d_{i + 1} != 0")


def homology_dims(c: F2ChainComplex) -> list[int]:
    out = []
    for q, dim in enumerate(c.dims):
        r_out = rank(c.diffs[q - 1]) if q >= 1 else 0
        r_in = rank(c.diffs[q]) if q < len(c.diffs) else 0
        out.append(dim - r_out - r_in)
    return out


# ---------------------------------------------------------------------------
# Group ring of (Z/2)^n in the xi basis
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GroupRingElement:
    """An element of F[(Z/2)^n] written in the basis xi_A = sum of the
    subgroup generated by {x_i : i in A}; ``support`` is the set of A with
    coefficient 1."""

    n: int
    support: frozenset[frozenset[int]]

    def __post_init__(self):
        for a in self.support:
            if not all(1 <= i <= self.n for i in a):
                raise ValueError(f"subset {sorted(a)} out of range for n={self.n}")

    def __add__(self, other: "GroupRingElement") -> "GroupRingElement":
        if self.n != other.n:
            raise ValueError("mismatched generator counts")
        return GroupRingElement(self.n, self.support ^ other.support)

    def is_zero(self) -> bool:
        return not self.support


def xi(n: int, a: Iterable[int]) -> GroupRingElement:
    return GroupRingElement(n, frozenset({frozenset(a)}))


def xi_multiply(index_set: Iterable[int], e: GroupRingElement) -> GroupRingElement:
    """Multiply by the group element x_I:  x_I xi_A = sum of xi_{A'} over
    A ⊆ A' ⊆ A ∪ I, extended linearly."""
    i_set = frozenset(index_set)
    if not all(1 <= i <= e.n for i in i_set):
        raise ValueError(f"index set {sorted(i_set)} out of range for n={e.n}")
    acc: set[frozenset[int]] = set()
    for a in e.support:
        extra = sorted(i_set - a)
        for mask in range(1 << len(extra)):
            a_prime = set(a)
            for bit, elem in enumerate(extra):
                if mask >> bit & 1:
                    a_prime.add(elem)
            fa = frozenset(a_prime)
            if fa in acc:
                acc.remove(fa)
            else:
                acc.add(fa)
    return GroupRingElement(e.n, frozenset(acc))


def filtration_level(e: GroupRingElement) -> int:
    """min |A| over the support (the augmentation-power filtration level)."""
    if e.is_zero():
        raise ValueError("the zero element has no filtration level")
    return min(len(a) for a in e.support)


# ---------------------------------------------------------------------------
# The cube complex
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CubeOperator:
    n: int
    base_dim: int
    matrix: F2Matrix                      # (2^n * base_dim) square
    square_is_zero: bool
    first_violation: Optional[tuple[frozenset[int], frozenset[int]]]


def build_cube_complex(base_dim: int, n: int,
                       u_maps: Mapping[frozenset[int], F2Matrix]) -> CubeOperator:
    """Assemble the total operator D on 2^n copies of the base group, with
    component D^{A,B} = U_{B\\A} for A ⊆ B.

    ``u_maps`` must contain every subset of {1..n} including the empty set
    (U_empty is the base differential d).  D**2 = 0 is checked, not
    assumed: not every family of U maps satisfies the chain conditions.
    """
    subsets = [frozenset(i + 1 for i in range(n) if mask >> i & 1) for mask in range(1 << n)]
    for s in subsets:
        if s not in u_maps:
            raise ValueError(f"missing U map for subset {sorted(s)}")
        m = u_maps[s]
        if (m.rows, m.cols) != (base_dim, base_dim):
            raise ValueError(f"U map for {sorted(s)} is {m.rows}x{m.cols}, "
                             f"expected {base_dim}x{base_dim}")
    size = (1 << n) * base_dim
    entries = set()
    for bmask in range(1 << n):
        for amask in range(1 << n):
            if amask & bmask != amask:
                continue
            diff = subsets[bmask & ~amask]
            for r, c in u_maps[diff].entries:
                entries.add((amask * base_dim + r, bmask * base_dim + c))
    d_total = F2Matrix(size, size, frozenset(entries))
    sq = d_total.mul(d_total)
    violation = None
    if not sq.is_zero():
        r, c = min(sq.entries)
        violation = (subsets[r // base_dim], subsets[c // base_dim])
    return CubeOperator(n, base_dim, d_total, sq.is_zero(), violation)


def cube_homology_dim(op: CubeOperator) -> int:
    """dim ker D - rank D for a verified square-zero total operator."""
    if not op.square_is_zero:
        raise ValueError("total operator does not square to zero")
    r = rank(op.matrix)
    return op.matrix.cols - 2 * r


def e1_page(h_dims_of_base: Sequence[int], n: int) -> dict[int, int]:
    """E1 dimensions by filtration level: (sum of base homology dims) times
    the binomial coefficient C(n, m)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    total = sum(h_dims_of_base)
    return {m: total * math.comb(n, m) for m in range(n + 1)}


# ---------------------------------------------------------------------------
# Double covers and the Gysin sequence
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BasedComplex:
    """A based chain complex with explicit boundary incidences.

    ``incidences[q][j]`` lists the degree-q cells (with multiplicity) in
    the boundary of the j-th degree-(q+1) cell; the differential is its
    mod-2 reduction.  Incidence multiplicity matters for covers: the two
    endpoint incidences of a circle's 1-cell lift separately even though
    the mod-2 differential is zero.
    """

    dims: tuple[int, ...]
    incidences: tuple[tuple[tuple[int, ...], ...], ...]

    def __post_init__(self):
        if len(self.incidences) != max(len(self.dims) - 1, 0):
            raise ValueError("need one incidence table per differential")
        for q, table in enumerate(self.incidences):
            if len(table) != self.dims[q + 1]:
                raise ValueError(f"incidence table {q} has {len(table)} cells, "
                                 f"expected {self.dims[q + 1]}")
            for j, inc in enumerate(table):
                for b in inc:
                    if not (0 <= b < self.dims[q]):
                        raise ValueError(f"cell ({q + 1},{j}) has boundary {b} out of range")

    def matrices(self) -> list[F2Matrix]:
        out = []
        for q, table in enumerate(self.incidences):
            ent = set()
            for j, inc in enumerate(table):
                for b in set(inc):
                    if inc.count(b) % 2:
                        ent.add((b, j))
            out.append(F2Matrix(self.dims[q], self.dims[q + 1], frozenset(ent)))
        return out

    def complex(self) -> F2ChainComplex:
        return F2ChainComplex(self.dims, tuple(self.matrices()))


# a cover assigns one bit per incidence, mirroring the incidence tables
CoverBits = tuple[tuple[tuple[int, ...], ...], ...]


@dataclass(frozen=True)
class GysinReport:
    cover_complex: F2ChainComplex
    chain_maps_ok: bool
    exact_ok: bool
    h_base: tuple[int, ...]
    h_cover: tuple[int, ...]
    connecting_ranks: tuple[int, ...]

    @property
    def connecting_vanishes(self) -> bool:
        return all(r == 0 for r in self.connecting_ranks)

    @property
    def rank_identity_ok(self) -> bool:
        return sum(self.h_cover) == 2 * sum(self.h_base) - 2 * sum(self.connecting_ranks)

    @property
    def nonvanishing_ok(self) -> bool:
        return sum(self.h_base) > 0 or sum(self.h_cover) == 0


def double_cover_complex(base: BasedComplex, bits: CoverBits) -> GysinReport:
    """Lift ``base`` along a degree-2 cover of its incidence graph and run
    the mod-2 Gysin checks for 0 -> C -> C~ -> C -> 0.

    Cell (q, c) lifts to (q, c, 0) and (q, c, 1); an incidence with bit 0
    lifts parallel, with bit 1 crossed.  The lifted boundary must square
    to zero (raises otherwise: the bits do not describe a cover of a
    complex).
    """
    if len(bits) != len(base.incidences):
        raise ValueError("cover bits must mirror the incidence tables")
    for q, table in enumerate(base.incidences):
        if len(bits[q]) != len(table) or any(len(bits[q][j]) != len(table[j])
                                             for j in range(len(table))):
            raise ValueError(f"cover bits at degree {q + 1} do not mirror the incidences")

    lifted_dims = tuple(2 * d for d in base.dims)
    lifted_tables = []
    for q, table in enumerate(base.incidences):
        new_table = []
        for j, inc in enumerate(table):
            for sheet in (0, 1):
                new_table.append(tuple(2 * b + (sheet ^ bit)
                                       for b, bit in zip(inc, bits[q][j])))
        # cells (q+1, j, sheet) are interleaved: index 2j+sheet
        new_table = tuple(new_table)
        lifted_tables.append(new_table)
    cover = BasedComplex(lifted_dims, tuple(lifted_tables))
    cover_cx = cover.complex()  # raises if the lifted boundary is not square-zero
    base_cx = base.complex()

    # injection a -> a0 + a1 and projection a_s -> a, as matrices
    chain_ok = True
    exact_ok = True
    for q in range(len(base.dims)):
        n = base.dims[q]
        inj = F2Matrix(2 * n, n, frozenset((2 * c + s, c) for c in range(n) for s in (0, 1)))
        proj = F2Matrix(n, 2 * n, frozenset((c, 2 * c + s) for c in range(n) for s in (0, 1)))
        if q + 1 < len(base.dims):
            d_b = base_cx.diffs[q]
            d_c = cover_cx.diffs[q]
            n1 = base.dims[q + 1]
            inj1 = F2Matrix(2 * n1, n1, frozenset((2 * c + s, c) for c in range(n1) for s in (0, 1)))
            proj1 = F2Matrix(n1, 2 * n1, frozenset((c, 2 * c + s) for c in range(n1) for s in (0, 1)))
            if d_c.mul(inj1).add(inj.mul(d_b)).entries:
                chain_ok = False
            if proj.mul(d_c).add(d_b.mul(proj1)).entries:
                chain_ok = False
        # exactness of 0 -> C -> C~ -> C -> 0 at the middle: im(inj) = ker(proj)
        if rank(inj) != n or rank(proj) != n:
            exact_ok = False
        if proj.mul(inj).entries:
            exact_ok = False
        # dim ker proj = 2n - n = n = rank inj and im(inj) is inside ker(proj)

    h_base = tuple(homology_dims(base_cx))
    h_cover = tuple(homology_dims(cover_cx))
    # rank of the connecting map from the long exact sequence:
    # h_cover[q] = 2 h_base[q] - delta[q] - delta[q+1], delta above top = 0
    deltas = [0] * (len(h_base) + 1)
    for q in range(len(h_base) - 1, -1, -1):
        deltas[q] = 2 * h_base[q] - h_cover[q] - deltas[q + 1]
        assert deltas[q] >= 0, "long exact sequence rank bookkeeping failed"
    return GysinReport(cover_cx, chain_ok, exact_ok, h_base, h_cover,
                       tuple(deltas[: len(h_base)]))


# ---------------------------------------------------------------------------
# Dot algebras
# ---------------------------------------------------------------------------

class DotAlgebra:
    """The two finite dot-operator algebras, with canonical-form reduction
    and the pairing computed from closed-foam evaluations.

    UNKNOT: F[u]/u^3, basis 1, u, u^2; pairing <u^i, u^j> evaluates the
    dotted sphere with i+j dots.

    FLAG: three generators u1, u2, u3 with the elementary symmetric
    functions zero; reduction substitutes u1 = u2 + u3 and rewrites
    u2^2 -> u2 u3 + u3^2 and u3^3 -> 0, leaving the 6 monomials
    u2^a u3^b with a <= 1 and b <= 2; pairing <m, m'> evaluates the
    theta foam with summed sheet exponents.
    """

    def __init__(self, kind: str):
        if kind not in ("unknot", "flag"):
            raise ValueError("kind must be 'unknot' or 'flag'")
        self.kind = kind

    def basis(self) -> list[tuple[int, ...]]:
        if self.kind == "unknot":
            return [(i,) for i in range(3)]
        return [(a, b) for b in range(3) for a in range(2)]

    # elements are frozensets of basis exponent tuples (coefficients in F2)

    def reduce_monomial(self, exponents: Sequence[int]) -> frozenset[tuple[int, ...]]:
        if self.kind == "unknot":
            (i,) = exponents
            return frozenset() if i >= 3 else frozenset({(i,)})
        a1, a2, a3 = exponents
        # substitute u1 = u2 + u3
        terms: dict[tuple[int, int], int] = {}
        for i in range(a1 + 1):
            if math.comb(a1, i) % 2:
                key = (a2 + i, a3 + (a1 - i))
                terms[key] = terms.get(key, 0) ^ 1
        # rewrite u2^p -> u2^{p-1} u3 + u2^{p-2} u3^2 until p <= 1, kill u3^3
        work = [k for k, v in terms.items() if v]
        acc: set[tuple[int, int]] = set()
        while work:
            p, q = work.pop()
            if q >= 3:
                continue
            if p <= 1:
                if (p, q) in acc:
                    acc.remove((p, q))
                else:
                    acc.add((p, q))
                continue
            work.append((p - 1, q + 1))
            work.append((p - 2, q + 2))
        return frozenset(acc)

    def element(self, monomials: Iterable[Sequence[int]]) -> frozenset[tuple[int, ...]]:
        acc: frozenset[tuple[int, ...]] = frozenset()
        for m in monomials:
            acc = acc ^ self.reduce_monomial(m)
        return acc

    def multiply(self, x: frozenset[tuple[int, ...]], y: frozenset[tuple[int, ...]]
                 ) -> frozenset[tuple[int, ...]]:
        acc: frozenset[tuple[int, ...]] = frozenset()
        for mx in x:
            for my in y:
                if self.kind == "unknot":
                    acc = acc ^ self.reduce_monomial((mx[0] + my[0],))
                else:
                    acc = acc ^ self.reduce_monomial((0, mx[0] + my[0], mx[1] + my[1]))
        return acc

    def pair_basis(self, m: tuple[int, ...], m2: tuple[int, ...]) -> int:
        from .foams import dotted_sphere, theta_foam
        from .jflat import evaluate

        if self.kind == "unknot":
            return evaluate(dotted_sphere(m[0] + m2[0])).value
        return evaluate(theta_foam(0, m[0] + m2[0], m[1] + m2[1])).value

    def pairing(self, x: frozenset[tuple[int, ...]], y: frozenset[tuple[int, ...]]) -> int:
        total = 0
        for mx in x:
            for my in y:
                total ^= self.pair_basis(mx, my)
        return total

    def pairing_matrix(self) -> F2Matrix:
        basis = self.basis()
        ent = set()
        for i, m in enumerate(basis):
            for j, m2 in enumerate(basis):
                if self.pair_basis(m, m2):
                    ent.add((i, j))
        return F2Matrix(len(basis), len(basis), frozenset(ent))

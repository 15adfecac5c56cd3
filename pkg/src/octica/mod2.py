"""The F2 quadratic space V = L/(1+i)L of a rank-6 Gaussian lattice, induced
involutions, the two classification invariants, and the combinatorial
symmetric-group model on even-cardinality subsets of an 8-point set.

Vectors of V are 6-bit integers (bit j = coordinate j); the reduction map
sends a Gaussian coordinate a+bi to (a+b) mod 2.
"""

from __future__ import annotations

import itertools
from math import comb

DIM = 6
SPACE = range(1 << DIM)

TYPE_TABLE = {(6, 28): 0, (5, 16): 1, (4, 8): 2, (3, 4): 3}
AMBIGUOUS = "type4-or-antipodal"

CYCLE_TYPES = {0: (0, 8), 1: (1, 6), 2: (2, 4), 3: (3, 2), 4: (4, 0)}
# octic type -> (number of transpositions, number of fixed points)


class F2QuadraticSpace:
    """dim-6 quadratic space with q(x) = h(x,x)/2 mod 2 on 0/1 lifts and
    polar form B(x,y) = q(x+y) + q(x) + q(y)."""

    def __init__(self, lattice):
        self.lattice = lattice
        if lattice.rank != DIM:
            raise ValueError("mod-2 space expects a rank-6 lattice")
        self._q = [self._q_of_lift(v) for v in SPACE]
        self.norm_one = [v for v in SPACE if self._q[v] == 1]

    def _q_of_lift(self, v):
        from .scalars import GaussInt
        lift = tuple(GaussInt((v >> j) & 1, 0) for j in range(DIM))
        n = self.lattice.q_norm(lift)
        if n % 2:
            raise ValueError("Gram diagonal is not even; q is undefined")
        return (n // 2) % 2

    def q(self, v):
        return self._q[v]

    def b(self, v, w):
        return self._q[v ^ w] ^ self._q[v] ^ self._q[w]

    def reduce_vector(self, vec):
        """Coordinatewise a+bi -> (a+b) mod 2, packed into a bitmask."""
        out = 0
        for j, x in enumerate(vec):
            if (x.re + x.im) % 2:
                out |= 1 << j
        return out

    def well_defined(self, samples=None):
        """q is independent of the lift: differences by (1+i)*e_j generators
        leave it unchanged."""
        from .scalars import GaussInt, ONE_PLUS_I
        gens = [tuple(ONE_PLUS_I if i == j else GaussInt(0) for i in range(DIM))
                for j in range(DIM)]
        for v in SPACE:
            lift = tuple(GaussInt((v >> j) & 1, 0) for j in range(DIM))
            for g in gens:
                shifted = tuple(lift[i] + g[i] for i in range(DIM))
                n = self.lattice.q_norm(shifted)
                if (n // 2) % 2 != self._q[v]:
                    return False
        return True


class F2Involution:
    """A 6x6 matrix over F2 with square one, preserving q; stored as row
    bitmasks acting by xor."""

    def __init__(self, rows):
        self.rows = tuple(int(r) & ((1 << DIM) - 1) for r in rows)
        if len(self.rows) != DIM:
            raise ValueError("expected 6 rows")

    def apply(self, v):
        out = 0
        for i in range(DIM):
            if bin(self.rows[i] & v).count("1") % 2:
                out |= 1 << i
        return out

    def is_involution(self):
        return all(self.apply(self.apply(v)) == v for v in SPACE)

    def preserves(self, space):
        return all(space.q(self.apply(v)) == space.q(v) for v in SPACE)

    def fixed_vectors(self):
        return [v for v in SPACE if self.apply(v) == v]

    def compose(self, other):
        return matrix_from_map(lambda v: self.apply(other.apply(v)))

    def __eq__(self, other):
        return isinstance(other, F2Involution) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)


def matrix_from_map(fn):
    """F2Involution whose action on basis vectors is fn(1<<j)."""
    cols = [fn(1 << j) for j in range(DIM)]
    rows = []
    for i in range(DIM):
        r = 0
        for j in range(DIM):
            if (cols[j] >> i) & 1:
                r |= 1 << j
        rows.append(r)
    return F2Involution(rows)


def induced_involution(space, chi):
    """Reduction of an involutive anti-isometry mod (1+i); conjugation is
    invisible there, so the result is linear."""
    C = chi.matrix
    rows = []
    for i in range(DIM):
        r = 0
        for j in range(DIM):
            if (C[i][j].re + C[i][j].im) % 2:
                r |= 1 << j
        rows.append(r)
    phi = F2Involution(rows)
    if not phi.is_involution():
        raise ValueError("reduction is not an involution")
    return phi


def involution_invariants(space, phi):
    """(dim Fix, number of q = 1 vectors in Fix)."""
    fixed = phi.fixed_vectors()
    dim = len(fixed).bit_length() - 1
    if 1 << dim != len(fixed):
        raise AssertionError("fixed set is not a subspace")
    ones = sum(1 for v in fixed if space.q(v) == 1)
    return dim, ones


def classify_octic_type(invariants):
    """Deformation type from the mod-2 invariants; (4,4) stays ambiguous and
    is resolved elsewhere by the discriminant-wall test."""
    if invariants in TYPE_TABLE:
        return TYPE_TABLE[invariants]
    if invariants == (4, 4):
        return AMBIGUOUS
    raise ValueError(f"invariants {invariants} match no table row")


def s8_invariants(cycle_type):
    """Invariants computed combinatorially on the subsets-of-8 model.

    ``cycle_type`` is (transpositions, fixed_points) with 2t + f = 8.
    Returns (dim_fix, norm_one_fixed, fixed_even_subsets); the last entry is
    the intermediate count of even-cardinality subsets fixed setwise.
    """
    t, f = cycle_type
    if 2 * t + f != 8 or t < 0 or f < 0:
        raise ValueError("cycle type must consist of 2-cycles and fixed points")
    if f > 0:
        fixed_even = 2 ** t * 2 ** (f - 1)
        fixed_classes = fixed_even // 2
    else:
        # setwise-fixed even subsets, plus subsets swapped with their
        # complement (one element from each 2-cycle)
        fixed_even = 2 ** t
        fixed_classes = (fixed_even + 2 ** t) // 2
    dim = fixed_classes.bit_length() - 1
    if 1 << dim != fixed_classes:
        raise AssertionError("fixed class count is not a power of two")
    norm_one = comb(f, 2) + t
    return dim, norm_one, fixed_even


def s8_table():
    """Rows (octic_type, transpositions, fixed_points, dim_fix, norm_one)."""
    rows = []
    for typ, (t, f) in CYCLE_TYPES.items():
        dim, ones, _ = s8_invariants((t, f))
        rows.append((typ, t, f, dim, ones))
    return rows


# ---------------------------------------------------------------------------
# transvections and the orthogonal group

def transvection(space, v):
    """x -> x + B(x, v) v for a norm-one vector v."""
    if space.q(v) != 1:
        raise ValueError("transvections require q(v) = 1")
    return matrix_from_map(lambda x: x ^ (v if space.b(x, v) else 0))


def o_vq_order(space, with_elements=False):
    """Order of the group generated by all transvections, by breadth-first
    closure over its permutation action on V."""
    gens = []
    for v in space.norm_one:
        t = transvection(space, v)
        perm = bytes(t.apply(x) for x in SPACE)
        gens.append(perm)
    ident = bytes(range(len(SPACE)))
    seen = {ident}
    frontier = [ident]
    while frontier:
        new = []
        for p in frontier:
            for g in gens:
                q = bytes(g[p[x]] for x in SPACE)
                if q not in seen:
                    seen.add(q)
                    new.append(q)
        frontier = new
    if with_elements:
        return len(seen), seen
    return len(seen)


# ---------------------------------------------------------------------------
# the model on even-cardinality subsets of an 8-point set

class WModel:
    """A labeling of V by complementary pairs of even subsets of {1..8}.

    Found by backtracking: choose u_2..u_8 (images of the 2-subsets {1, j})
    with q = 1, pairwise polar pairing 1, and total sum 0; then the class of
    an even subset S maps to xor of u_j over j in S (with u_1 = 0).  The
    search succeeding verifies the bijection claim; failure raises.
    """

    def __init__(self, space):
        self.space = space
        self.u = self._search()
        if self.u is None:
            raise RuntimeError("no subsets-model labeling exists; "
                               "the quadratic space is not of plus type")
        self._class_of = {}
        for size in (0, 2, 4, 6, 8):
            for subset in itertools.combinations(range(1, 9), size):
                v = self.vector_of_subset(subset)
                if v not in self._class_of or 1 in subset or size == 0:
                    if size == 0 or 1 in subset:
                        self._class_of[v] = frozenset(subset)

    def _search(self):
        space = self.space
        ones = space.norm_one

        def rec(chosen):
            if len(chosen) == 7:
                if _xor_all(chosen) == 0:
                    return chosen
                return None
            for v in ones:
                if v in chosen:
                    continue
                if any(space.b(v, u) != 1 for u in chosen):
                    continue
                res = rec(chosen + [v])
                if res:
                    return res
            return None

        return rec([])

    def vector_of_subset(self, subset):
        """V-vector of an even-cardinality subset of {1..8}."""
        subset = set(subset)
        if len(subset) % 2:
            raise ValueError("subset must have even cardinality")
        out = 0
        for j in subset:
            if j == 1:
                continue
            if not 1 <= j <= 8:
                raise ValueError("subset must lie in {1..8}")
            out ^= self.u[j - 2]
        return out

    def class_of_vector(self, v):
        """Canonical member (containing 1, or empty) of the subset pair
        mapping to v."""
        try:
            return self._class_of[v]
        except KeyError:
            raise AssertionError("labeling is not surjective") from None

    def check(self):
        """The defining properties: bijectivity on classes, q = half
        cardinality mod 2, addition = symmetric difference mod complement."""
        space = self.space
        seen = {}
        for size in (0, 2, 4, 6, 8):
            for subset in itertools.combinations(range(1, 9), size):
                v = self.vector_of_subset(subset)
                comp = frozenset(set(range(1, 9)) - set(subset))
                key = min(frozenset(subset), comp, key=sorted)
                if key in seen and seen[key] != v:
                    return False
                seen[key] = v
                if space.q(v) != (size // 2) % 2:
                    return False
        return len(set(seen.values())) == 64

    def permutation_action(self, perm):
        """Transported linear action of a permutation of {1..8} on V.

        ``perm`` maps 1..8 to 1..8.
        """
        def act(v):
            # express v in the u-basis via subset representative
            subset = self.class_of_vector(v)
            image = frozenset(perm[j] for j in subset)
            return self.vector_of_subset(image)

        return matrix_from_map(act)

    def transported_group_order(self):
        """Order of the group generated by transported adjacent
        transpositions, with a q-preservation check on every generator."""
        gens = []
        for k in range(1, 8):
            perm = {j: j for j in range(1, 9)}
            perm[k], perm[k + 1] = k + 1, k
            g = self.permutation_action(perm)
            if not g.preserves(self.space):
                raise AssertionError("transported transposition breaks q")
            gens.append(bytes(g.apply(x) for x in SPACE))
        ident = bytes(range(len(SPACE)))
        seen = {ident}
        frontier = [ident]
        while frontier:
            new = []
            for p in frontier:
                for g in gens:
                    q = bytes(g[p[x]] for x in SPACE)
                    if q not in seen:
                        seen.add(q)
                        new.append(q)
            frontier = new
        return len(seen), seen


def _xor_all(vals):
    out = 0
    for v in vals:
        out ^= v
    return out

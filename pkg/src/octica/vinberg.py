"""Vinberg's algorithm on Lorentzian integer lattices of signature (1, n),
Coxeter diagram construction, diagram symmetries, and the finite-volume
termination criterion.

Sign conventions: the controlling vector v0 has positive norm, roots have
negative norm and are normalized with (r, v0) <= 0; accepted walls pairwise
satisfy (r_i, r_j) >= 0 (non-acute dihedral angles).  The height of a root
is (r, v0)^2 / (-q(r)).
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass
from fractions import Fraction

from . import intlinalg
from .intlinalg import bilinear, vec_gcd


class IllegalAngle(ValueError):
    """Two roots meet at an angle outside the Coxeter dictionary."""

    def __init__(self, c):
        super().__init__(f"illegal angle invariant c = {c}")
        self.c = c


class NonTermination(RuntimeError):
    """The acceptance loop hit its hard ceiling without meeting the stop
    criterion; carries the roots found so far."""

    def __init__(self, roots, shells):
        super().__init__(
            f"no stop criterion met after {shells} height shells "
            f"({len(roots)} roots accepted)")
        self.roots = roots
        self.shells = shells


@dataclass(frozen=True)
class Root:
    coords: tuple
    norm: int
    height: Fraction


BOND_NONE = "none"
BOND_SINGLE = "single"
BOND_DOUBLE = "double"
BOND_TRIPLE = "triple"
BOND_PARALLEL = "parallel"
BOND_ULTRA = "ultraparallel"

_C_TO_BOND = {
    Fraction(0): BOND_NONE,
    Fraction(1, 4): BOND_SINGLE,
    Fraction(1, 2): BOND_DOUBLE,
    Fraction(3, 4): BOND_TRIPLE,
    Fraction(1): BOND_PARALLEL,
}


def c_invariant(gram, r1, r2):
    a = bilinear(gram, list(r1), list(r2))
    return Fraction(a * a,
                    bilinear(gram, list(r1), list(r1)) * bilinear(gram, list(r2), list(r2)))


def bond_type(gram, r1, r2):
    c = c_invariant(gram, r1, r2)
    if c in _C_TO_BOND:
        return _C_TO_BOND[c]
    if c > 1:
        return BOND_ULTRA
    raise IllegalAngle(c)


def is_crystallographic(gram, r):
    q = bilinear(gram, r, r)
    n = len(gram)
    for j in range(n):
        if (2 * sum(gram[j][t] * r[t] for t in range(n))) % q != 0:
            return False
    return True


def allowed_norms_for(gram):
    """Root norms that can carry crystallographic roots: -2k for every k
    dividing the exponent of the discriminant group (a provably complete
    superset; absent norms simply enumerate empty)."""
    gram = gram.gram if hasattr(gram, "gram") else gram
    e = intlinalg.disc_group_exponent(gram)
    return tuple(-2 * k for k in range(1, e + 1) if e % k == 0)


def find_v0(gram):
    """A short time-like vector: the first basis vector if time-like, else a
    bounded deterministic search by increasing norm then lexicographic order."""
    gram = gram.gram if hasattr(gram, "gram") else gram
    n = len(gram)
    e1 = [1] + [0] * (n - 1)
    if bilinear(gram, e1, e1) > 0:
        return e1
    for radius in range(1, 5):
        best = None
        rng = range(-radius, radius + 1)
        for x in itertools.product(rng, repeat=n):
            q = bilinear(gram, list(x), list(x))
            if q > 0:
                key = (q, x)
                if best is None or key < best:
                    best = key
        if best is not None:
            return list(best[1])
    raise ValueError("no time-like vector found in search box")


def roots_in_shell(gram, v0, norm, m):
    """All primitive crystallographic roots with q(r) = norm and (r, v0) = m."""
    a = [sum(gram[i][j] * v0[j] for j in range(len(gram))) for i in range(len(gram))]
    out = []
    for x in intlinalg.vectors_with_norm_and_product(gram, norm, a, m):
        if vec_gcd(x) != 1:
            continue
        if not is_crystallographic(gram, x):
            continue
        out.append(tuple(x))
    return out


def enumerate_roots(lattice, allowed_norms, height_bound, v0=None):
    """All crystallographic primitive roots with q(r) in allowed_norms and
    height <= height_bound, normalized so (r, v0) <= 0.

    Completeness per shell follows from the negative definiteness of the
    orthogonal complement of v0.
    """
    gram = lattice.gram if hasattr(lattice, "gram") else lattice
    if not allowed_norms:
        raise ValueError("allowed_norms must be nonempty")
    if v0 is None:
        v0 = find_v0(gram)
    if bilinear(gram, v0, v0) <= 0:
        raise ValueError("controlling vector is not time-like")
    height_bound = Fraction(height_bound)
    roots = []
    for norm in allowed_norms:
        # height-0 shell: keep one representative of each +-pair
        for r in roots_in_shell(gram, v0, norm, 0):
            if _lex_positive(r):
                roots.append(Root(r, norm, Fraction(0)))
        m = -1
        while Fraction(m * m, -norm) <= height_bound:
            for r in roots_in_shell(gram, v0, norm, m):
                roots.append(Root(r, norm, Fraction(m * m, -norm)))
            m -= 1
    roots.sort(key=lambda r: (r.height, -r.norm, r.coords))
    return roots


def _lex_positive(r):
    for x in r:
        if x:
            return x > 0
    return False


def _height_zero_walls(gram, v0, norms):
    """Stage 1: a fundamental system for the root subsystem orthogonal to v0,
    selected greedily along a deterministic generic linear functional."""
    h0 = []
    for norm in norms:
        h0 += roots_in_shell(gram, v0, norm, 0)
    if not h0:
        return []
    n = len(gram)
    tvec = None
    for trial in range(64):
        cand = [(3 ** i + trial * 7 ** i) % (97 + trial) + 1 for i in range(n)]
        if all(sum(cand[i] * r[i] for i in range(n)) != 0 for r in h0):
            tvec = cand
            break
    if tvec is None:
        raise RuntimeError("no generic tie-break functional found")

    def fval(r):
        return sum(tvec[i] * r[i] for i in range(n))

    positive = []
    for r in h0:
        positive.append(r if fval(r) > 0 else tuple(-x for x in r))
    positive = sorted(set(positive),
                      key=lambda r: (Fraction(fval(r) ** 2,
                                              -bilinear(gram, list(r), list(r))), r))
    accepted = []
    for r in positive:
        if all(bilinear(gram, list(r), list(a)) >= 0 for a in accepted):
            accepted.append(r)
    return accepted


def fundamental_roots(lattice, allowed_norms=None, v0=None, stop=("volume",),
                      shell_ceiling=600):
    """Fundamental walls of the reflection subgroup, in acceptance order.

    ``stop`` is ("expected", k), ("volume",) or ("height", h).  A hard shell
    ceiling guards against non-reflective input; exceeding it raises
    NonTermination with diagnostics.
    """
    gram = lattice.gram if hasattr(lattice, "gram") else lattice
    n = len(gram)
    if allowed_norms is None:
        allowed_norms = allowed_norms_for(gram)
    if v0 is None:
        v0 = find_v0(gram)
    if bilinear(gram, v0, v0) <= 0:
        raise ValueError("controlling vector is not time-like")

    kind = stop[0]
    if kind not in ("expected", "volume", "height"):
        raise ValueError(f"unknown stop criterion {stop!r}")

    accepted = [Root(r, bilinear(gram, list(r), list(r)), Fraction(0))
                for r in _height_zero_walls(gram, v0, allowed_norms)]

    def volume_ok():
        if len(accepted) < n:
            return False
        diag = coxeter_diagram(gram, [a.coords for a in accepted])
        return finite_volume_check(diag, n - 1)

    def done():
        if kind == "expected":
            return len(accepted) >= stop[1]
        if kind == "volume":
            return volume_ok()
        return False

    if done():
        return accepted

    heap = []
    for norm in allowed_norms:
        heapq.heappush(heap, (Fraction(1, -norm), -1, norm))
    shells = 0
    while heap and shells < shell_ceiling:
        height, m, norm = heapq.heappop(heap)
        heapq.heappush(heap, (Fraction((m - 1) ** 2, -norm), m - 1, norm))
        shells += 1
        if kind == "height" and height > Fraction(stop[1]):
            return accepted
        grew = False
        for r in sorted(roots_in_shell(gram, v0, norm, m)):
            if all(bilinear(gram, list(r), list(a.coords)) >= 0 for a in accepted):
                accepted.append(Root(r, norm, height))
                grew = True
        if grew and done():
            return accepted
    if kind == "height":
        return accepted
    raise NonTermination(accepted, shells)


# ---------------------------------------------------------------------------
# diagrams

class CoxeterDiagram:
    """Labeled graph of fundamental roots: node norms plus typed bonds.

    When built by coxeter_diagram the instance also carries the root
    coordinates and the ambient Gram matrix, which the finite-volume
    criterion needs.
    """

    def __init__(self, norms, edges, roots=None, gram=None):
        self.norms = list(norms)
        self.edges = sorted((min(i, j), max(i, j), b) for i, j, b in edges)
        self.roots = [tuple(r) for r in roots] if roots is not None else None
        self.gram = gram
        self._adj = None

    def __len__(self):
        return len(self.norms)

    def bond(self, i, j):
        if self._adj is None:
            self._adj = {}
            for a, b, t in self.edges:
                self._adj[(a, b)] = t
                self._adj[(b, a)] = t
        return self._adj.get((i, j), BOND_NONE)

    def node_label(self, i):
        """Subdivision count of the node: -q(r)/2."""
        return -self.norms[i] // 2

    def to_json(self):
        obj = {"nodes": [{"norm": q} for q in self.norms],
               "edges": [{"i": i, "j": j, "bond": b} for i, j, b in self.edges]}
        if self.roots is not None:
            obj["roots"] = [list(r) for r in self.roots]
        return obj

    @classmethod
    def from_json(cls, obj):
        return cls([nd["norm"] for nd in obj["nodes"]],
                   [(e["i"], e["j"], e["bond"]) for e in obj["edges"]],
                   roots=obj.get("roots"))

    def __eq__(self, other):
        return (isinstance(other, CoxeterDiagram)
                and self.norms == other.norms and self.edges == other.edges)


def coxeter_diagram(gram, roots):
    """Diagram of a set of roots; raises IllegalAngle on non-Coxeter pairs."""
    gram = gram.gram if hasattr(gram, "gram") else gram
    coords = [r.coords if isinstance(r, Root) else tuple(r) for r in roots]
    norms = [bilinear(gram, list(r), list(r)) for r in coords]
    edges = []
    for i, j in itertools.combinations(range(len(coords)), 2):
        b = bond_type(gram, coords[i], coords[j])
        if b != BOND_NONE:
            edges.append((i, j, b))
    return CoxeterDiagram(norms, edges, roots=coords, gram=gram)


@dataclass(frozen=True)
class DiagramSymmetry:
    permutation: tuple
    respects_norms: bool

    def is_identity(self):
        return all(p == i for i, p in enumerate(self.permutation))


def diagram_symmetries(diagram, respect_norms=True):
    """All automorphisms preserving bond labels (and norms when flagged),
    by backtracking over label-compatible candidate classes."""
    n = len(diagram)
    cand = []
    for i in range(n):
        sig_i = sorted(diagram.bond(i, k) for k in range(n) if k != i)
        cs = []
        for j in range(n):
            if respect_norms and diagram.norms[i] != diagram.norms[j]:
                continue
            sig_j = sorted(diagram.bond(j, k) for k in range(n) if k != j)
            if sig_i == sig_j:
                cs.append(j)
        cand.append(cs)
    out = []
    perm = [None] * n
    used = [False] * n

    def rec(i):
        if i == n:
            out.append(DiagramSymmetry(tuple(perm), respect_norms))
            return
        for j in cand[i]:
            if used[j]:
                continue
            if all(diagram.bond(i, k) == diagram.bond(j, perm[k]) for k in range(i)):
                perm[i] = j
                used[j] = True
                rec(i + 1)
                used[j] = False
                perm[i] = None

    rec(0)
    return out


def diagrams_isomorphic(d1, d2, respect_norms=True):
    """Existence of a bond-label-preserving bijection between two diagrams."""
    if len(d1) != len(d2):
        return False
    if respect_norms and sorted(d1.norms) != sorted(d2.norms):
        return False
    n = len(d1)
    perm = [None] * n
    used = [False] * n

    def rec(i):
        if i == n:
            return True
        for j in range(n):
            if used[j]:
                continue
            if respect_norms and d1.norms[i] != d2.norms[j]:
                continue
            if all(d1.bond(i, k) == d2.bond(j, perm[k]) for k in range(i)):
                perm[i] = j
                used[j] = True
                if rec(i + 1):
                    return True
                used[j] = False
                perm[i] = None
        return False

    return rec(0)


# ---------------------------------------------------------------------------
# elliptic / parabolic classification and the finite-volume criterion

def _components(diagram, subset):
    adj = {i: set() for i in subset}
    for i, j in itertools.combinations(subset, 2):
        if diagram.bond(i, j) != BOND_NONE:
            adj[i].add(j)
            adj[j].add(i)
    comps = []
    seen = set()
    for s in subset:
        if s in seen:
            continue
        comp = []
        stack = [s]
        seen.add(s)
        while stack:
            u = stack.pop()
            comp.append(u)
            for v in adj[u]:
                if v not in seen:
                    seen.add(v)
                    stack.append(v)
        comps.append(sorted(comp))
    return comps


def classify_subdiagram(diagram, subset):
    """('elliptic'|'parabolic'|None, rank).

    Elliptic iff the Gram is negative definite; parabolic iff every connected
    component is negative semidefinite of corank one (affine).  Classified by
    exact inertia; the named-type recognizer serves as an independent
    cross-check and raises on disagreement.
    """
    subset = list(subset)
    if not subset:
        return "elliptic", 0
    gram, roots = diagram.gram, diagram.roots
    kind = None
    total_rank = 0
    for comp in _components(diagram, subset):
        M = [[bilinear(gram, list(roots[i]), list(roots[j])) for j in comp] for i in comp]
        pos, _neg = intlinalg.signature(M)
        rk = intlinalg.rank(M)
        if pos > 0:
            return None, 0
        if rk == len(comp):
            ckind = "elliptic"
        elif rk == len(comp) - 1:
            ckind = "parabolic"
        else:
            return None, 0
        name = component_type_name(diagram, comp)
        if name is not None and (name.startswith("~") != (ckind == "parabolic")):
            raise AssertionError(
                f"catalog type {name} disagrees with inertia class {ckind}")
        total_rank += rk
        if kind is None:
            kind = ckind
        elif kind != ckind:
            return None, 0
    return kind, total_rank


def component_type_name(diagram, comp):
    """Catalog name of a connected subdiagram among the spherical types
    A, B, D, E, F, G and the affine types ~A, ~B, ~C, ~D, ~F, ~G (by Coxeter
    graph shape), or None when it matches nothing.  Sound but deliberately
    not exhaustive; inertia is the authority."""
    k = len(comp)
    if k == 1:
        return "A1"
    ms = {}
    deg = {i: 0 for i in comp}
    for a, b in itertools.combinations(comp, 2):
        bond = diagram.bond(a, b)
        if bond == BOND_NONE:
            continue
        if bond == BOND_SINGLE:
            m = 3
        elif bond == BOND_DOUBLE:
            m = 4
        elif bond == BOND_TRIPLE:
            m = 6
        elif bond == BOND_PARALLEL:
            m = 0
        else:
            return None
        ms[(a, b)] = ms[(b, a)] = m
        deg[a] += 1
        deg[b] += 1
    labels = sorted(m for (a, b), m in ms.items() if a < b)
    nedges = len(labels)
    degs = sorted(deg.values())
    if 0 in labels:
        return "~A1" if k == 2 and labels == [0] else None
    n_double = labels.count(4)
    n_triple = labels.count(6)
    ends = [i for i in comp if deg[i] == 1]

    def end_edge_orders():
        return [ms[(e, _neighbor(diagram, comp, e))] for e in ends]

    if degs[-1] <= 2 and nedges == k - 1:
        # path shapes
        if n_double == 0 and n_triple == 0:
            return f"A{k}"
        if n_triple == 1 and n_double == 0:
            if k == 2:
                return "G2"
            if k == 3:
                return "~G2"
            return None
        if n_double == 1 and n_triple == 0:
            if 4 in end_edge_orders():
                return f"B{k}"
            if k == 4:
                return "F4"
            if k == 5:
                return "~F4"
            return None
        if n_double == 2 and n_triple == 0:
            if end_edge_orders() == [4, 4]:
                return f"~C{k - 1}"
            return None
        return None
    if degs[-1] <= 2 and nedges == k and k >= 3:
        if n_double == 0 and n_triple == 0:
            return f"~A{k - 1}"
        return None
    if n_triple:
        return None
    branch3 = [i for i in comp if deg[i] == 3]
    if len(branch3) == 1 and degs[-1] == 3 and nedges == k - 1:
        arms = sorted(_arm_lengths(diagram, comp, branch3[0]))
        if n_double == 0:
            if arms == [1, 1, k - 3]:
                return f"D{k}"
            if k == 6 and arms == [1, 2, 2]:
                return "E6"
            if k == 7 and arms == [1, 2, 3]:
                return "E7"
            if k == 8 and arms == [1, 2, 4]:
                return "E8"
            if k == 7 and arms == [2, 2, 2]:
                return "~E6"
            if k == 8 and arms == [1, 3, 3]:
                return "~E7"
            if k == 9 and arms == [1, 2, 5]:
                return "~E8"
            return None
        if n_double == 1 and arms == [1, 1, k - 3]:
            # affine B: the double bond must close the long arm
            for (a, b), m in ms.items():
                if m == 4 and deg[a] == 1:
                    if _arm_of(diagram, comp, branch3[0], a) == k - 3:
                        return f"~B{k - 1}"
            return None
        return None
    if len(branch3) == 2 and degs[-1] == 3 and nedges == k - 1 and n_double == 0:
        if all(sorted(_arm_lengths(diagram, comp, b))[:2] == [1, 1] for b in branch3):
            return f"~D{k - 1}"
        return None
    if k == 5 and degs[-1] == 4 and degs.count(4) == 1 and nedges == 4 and n_double == 0:
        return "~D4"
    return None


def _neighbor(diagram, comp, e):
    for j in comp:
        if j != e and diagram.bond(e, j) != BOND_NONE:
            return j
    raise ValueError("isolated node")


def _arm_lengths(diagram, comp, branch):
    return [_arm_of(diagram, comp, branch, start)
            for start in comp
            if start != branch and diagram.bond(branch, start) != BOND_NONE]


def _arm_of(diagram, comp, branch, tip_or_start):
    """Length of the arm from a branch node through/ending at a given node."""
    # walk from branch towards the component containing tip_or_start
    for start in comp:
        if start == branch or diagram.bond(branch, start) == BOND_NONE:
            continue
        ln = 1
        prev, cur = branch, start
        nodes = [start]
        while True:
            nxts = [j for j in comp
                    if j not in (prev, cur) and diagram.bond(cur, j) != BOND_NONE]
            if not nxts:
                break
            prev, cur = cur, nxts[0]
            nodes.append(cur)
            ln += 1
        if tip_or_start in nodes:
            return ln
    raise ValueError("node not on any arm")


def finite_volume_check(diagram, hyperbolic_dim):
    """Vinberg's criterion for a finite-volume polyhedron in H^n, where
    n = hyperbolic_dim: every elliptic subdiagram of rank n-1 extends in
    exactly two ways to an elliptic subdiagram of rank n or a parabolic
    subdiagram (of rank n-1)."""
    if diagram.roots is None or diagram.gram is None:
        raise ValueError("diagram must carry its roots and Gram matrix")
    n = hyperbolic_dim
    N = len(diagram)
    if N < n + 1:
        return False
    if n == 1:
        return N >= 2
    idx = list(range(N))
    for E in itertools.combinations(idx, n - 1):
        kind, rk = classify_subdiagram(diagram, E)
        if kind != "elliptic" or rk != n - 1:
            continue
        count = 0
        rest = [i for i in idx if i not in E]
        for v in rest:
            kind2, rk2 = classify_subdiagram(diagram, E + (v,))
            if kind2 == "elliptic" and rk2 == n:
                count += 1
        for size in range(1, len(rest) + 1):
            for extra in itertools.combinations(rest, size):
                kind2, rk2 = classify_subdiagram(diagram, E + extra)
                if kind2 == "parabolic" and rk2 == n - 1:
                    count += 1
        if count != 2:
            return False
    return True

"""The rank-2 cuspidal lattice: exhaustive isometry and anti-involution
enumeration, conjugacy classification, wedge quotients of fixed planes, and
the glued cone with its 3/4 * pi apex angle.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import intlinalg
from .fixed_points import fix_lattice, in_fix_coords
from .lattices import (AntiIsometry, Isometry, check_anti_involution,
                       check_isometry, gmat, gmat_conj, gmat_mul, gmat_vec,
                       gmat_identity, is_anti_isometry_matrix)
from .scalars import GaussInt


def vectors_of_norm(L, norm):
    """All lattice vectors of the given norm in a definite Gaussian lattice,
    via exact enumeration of the realified positive form."""
    pos, neg = L.signature()
    if pos and neg:
        raise ValueError("definite lattice required")
    R = L.realified_gram()
    if pos == 0:
        R = [[-x for x in row] for row in R]
        target = -norm
    else:
        target = norm
    if target < 0:
        return []
    n = L.rank
    out = []
    for z in intlinalg.enumerate_quadric(R, [0] * (2 * n), target):
        out.append(tuple(GaussInt(z[j], z[n + j]) for j in range(n)))
    return sorted(out, key=lambda v: tuple((x.re, x.im) for x in v))


class FiniteIsometryGroup:
    """Complete element list of the isometry group of a definite lattice."""

    def __init__(self, lattice, elements):
        self.lattice = lattice
        self.elements = list(elements)
        self._keys = {m for m in self.elements}

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, m):
        if isinstance(m, Isometry):
            m = m.matrix
        return gmat(m) in self._keys

    def is_closed(self):
        import random
        rnd = random.Random(20260810)
        for _ in range(64):
            a = rnd.choice(self.elements)
            b = rnd.choice(self.elements)
            if gmat_mul(a, b) not in self._keys:
                return False
        return True


def enumerate_isometries(L):
    """All isometries of a definite Gaussian lattice, by backtracking over
    basis-vector images constrained by partial Gram agreement."""
    pos, neg = L.signature()
    if pos and neg:
        raise ValueError("indefinite lattice rejected")
    n = L.rank
    cols_by_norm = {}
    for j in range(n):
        nm = L.gram[j][j].re
        if nm not in cols_by_norm:
            cols_by_norm[nm] = vectors_of_norm(L, nm)
    out = []
    chosen = []

    def rec(j):
        if j == n:
            out.append(tuple(zip(*chosen)))
            return
        for v in cols_by_norm[L.gram[j][j].re]:
            ok = True
            for k in range(j):
                if L.inner(chosen[k], v) != L.gram[k][j]:
                    ok = False
                    break
            if ok:
                chosen.append(v)
                rec(j + 1)
                chosen.pop()

    rec(0)
    mats = [gmat(m) for m in out]
    for m in mats:
        ok, why = check_isometry(L, m)
        if not ok:
            raise AssertionError(f"enumeration produced a non-isometry: {why}")
    return FiniteIsometryGroup(L, mats)


def enumerate_anti_involutions(L, seed):
    """All involutive anti-isometries, as {A o seed : seed = A o seed o A}.

    ``seed`` must itself be involutive; the result is the complete list."""
    if not isinstance(seed, AntiIsometry):
        seed = AntiIsometry(seed)
    ok, why = check_anti_involution(L, seed)
    if not ok:
        raise ValueError(f"seed is not an involutive anti-isometry: {why}")
    group = enumerate_isometries(L)
    found = []
    for A in group:
        C = gmat_mul(A, seed.matrix)
        cand = AntiIsometry(C)
        if cand.is_involutive():
            ok, _ = check_anti_involution(L, cand)
            if not ok:
                raise AssertionError("involutive composition failed the "
                                     "anti-isometry check")
            found.append(cand)
    return group, found


def conjugate_anti(A, kappa):
    """A o kappa o A^{-1} as an anti-isometry matrix: A C conj(A)^{-1}."""
    n = len(A)
    Ainv = _gmat_inv_unimodular(A)
    return AntiIsometry(gmat_mul(gmat_mul(A, kappa.matrix), gmat_conj(Ainv)))


def _gmat_inv_unimodular(A):
    n = len(A)
    if n == 2:
        det = A[0][0] * A[1][1] - A[0][1] * A[1][0]
        if not det.is_unit():
            raise ValueError("matrix is not unimodular")
        dinv = det.conj() if det.norm() == 1 else None
        return gmat([[dinv * A[1][1], -(dinv * A[0][1])],
                     [-(dinv * A[1][0]), dinv * A[0][0]]])
    raise NotImplementedError("only rank 2 needed here")


def _mat_key(M):
    return tuple((x.re, x.im) for row in M for x in row)


def conjugacy_classes(group, anti_involutions):
    """Orbits of kappa -> A kappa A^{-1} over the full group."""
    remaining = {k.matrix: k for k in anti_involutions}
    classes = []
    while remaining:
        seed = min(remaining, key=_mat_key)
        orbit = {seed}
        stack = [remaining[seed]]
        while stack:
            kappa = stack.pop()
            for A in group:
                img = conjugate_anti(A, kappa)
                if img.matrix not in orbit:
                    if img.matrix not in remaining:
                        raise AssertionError("conjugation left the involution list")
                    orbit.add(img.matrix)
                    stack.append(img)
        classes.append(sorted(orbit, key=_mat_key))
        for m in orbit:
            del remaining[m]
    return classes


@dataclass
class WedgeQuotient:
    kappa: AntiIsometry
    fix: object                 # ZQuadraticLattice, rank 2
    stabilizer_order: int
    rotation_order: int         # m, with the image dihedral of order 2m
    angle: Fraction             # angle / pi, an exact rational
    edges: tuple = None         # the two distinguished edge vectors (ambient)


class NonDihedralImage(RuntimeError):
    pass


def wedge_quotient(L, group, kappa, edges=None):
    """Quotient of the fixed plane of kappa by its setwise stabilizer.

    The stabilizer image on the rank-2 fixed plane must be dihedral of order
    2m; the wedge angle is then pi/m, stored as the exact rational 1/m.
    When distinguished edge vectors are supplied they are verified to span
    the correct wedge angle and to lie on mirrors of the image.
    """
    if not isinstance(kappa, AntiIsometry):
        kappa = AntiIsometry(kappa)
    fix = fix_lattice(L, kappa)
    if fix.rank != 2:
        raise ValueError("expected a rank-2 fixed plane")
    image = set()
    for A in group:
        cols = []
        for b in fix.embedding:
            img = gmat_vec(A, b)
            c = in_fix_coords(fix, img)
            if c is None:
                cols = None
                break
            cols.append(c)
        if cols is None:
            continue
        M = ((cols[0][0], cols[1][0]), (cols[0][1], cols[1][1]))
        if abs(M[0][0] * M[1][1] - M[0][1] * M[1][0]) != 1:
            continue
        image.add(M)
    order = len(image)
    rotations = {M for M in image if M[0][0] * M[1][1] - M[0][1] * M[1][0] == 1}
    reflections = order - len(rotations)
    if reflections != len(rotations) or not _is_cyclic_rotation_group(rotations, fix):
        raise NonDihedralImage(f"stabilizer image of order {order} is not dihedral")
    m = len(rotations)
    wedge = WedgeQuotient(kappa, fix, order, m, Fraction(1, m))
    if edges is not None:
        e1, e2 = edges
        c = _cos2_between(fix, e1, e2)
        expected = _cos2_of_angle(m)
        if c != expected:
            raise ValueError(f"designated edges span cos^2 = {c}, "
                             f"expected {expected} for angle pi/{m}")
        wedge.edges = (tuple(e1), tuple(e2))
    return wedge


def _is_cyclic_rotation_group(rotations, fix):
    # a finite rotation group of the definite plane is cyclic; verify closure
    rot = sorted(rotations)
    idx = {M: i for i, M in enumerate(rot)}
    for A in rot:
        for B in rot:
            prod = ((A[0][0] * B[0][0] + A[0][1] * B[1][0],
                     A[0][0] * B[0][1] + A[0][1] * B[1][1]),
                    (A[1][0] * B[0][0] + A[1][1] * B[1][0],
                     A[1][0] * B[0][1] + A[1][1] * B[1][1]))
            if prod not in idx:
                return False
    return True


def _cos2_between(fix, v, w):
    """cos^2 of the angle between two vectors of the (negative) definite
    plane, as an exact rational."""
    a = fix.bilinear(list(v), list(w))
    return Fraction(a * a, fix.q(list(v)) * fix.q(list(w)))


def _cos2_of_angle(m):
    # cos^2(pi/m) for the angles arising here
    table = {1: Fraction(1), 2: Fraction(0), 3: Fraction(1, 4),
             4: Fraction(1, 2), 6: Fraction(3, 4)}
    if m not in table:
        raise ValueError(f"angle pi/{m} is not representable exactly")
    return table[m]


@dataclass
class GluedCone:
    wedges: list
    identifications: list       # (edge_from, edge_to, witness matrix)
    total_angle: Fraction       # multiple of pi

    def is_orbifold_point(self):
        """A cone point of a Riemannian orbifold must have angle pi/k."""
        return self.total_angle.numerator == 1


def glue_cone(L, group, wedge_a, wedge_b, required_witnesses=None):
    """Glue two wedges along their designated edges via group elements.

    Edge pairing: first edge of wedge_a with first edge of wedge_b, second
    with second.  For each pair a witness A in the group with A * (edge of b)
    = (edge of a) must exist; the total angle is the sum of the wedge angles.
    """
    if wedge_a.edges is None or wedge_b.edges is None:
        raise ValueError("both wedges need designated edges")
    identifications = []
    for ea, eb in zip(wedge_a.edges, wedge_b.edges):
        va = wedge_a.fix.embed(ea)
        vb = wedge_b.fix.embed(eb)
        witnesses = [A for A in group if gmat_vec(A, vb) == va]
        if not witnesses:
            raise RuntimeError(f"no group element maps edge {eb} to {ea}")
        identifications.append((eb, ea, witnesses))
    if required_witnesses is not None:
        for (eb, ea, ws), req in zip(identifications, required_witnesses):
            req = gmat(req)
            if req not in ws:
                raise RuntimeError("required witness is not among the valid ones")
    total = wedge_a.angle + wedge_b.angle
    return GluedCone([wedge_a, wedge_b],
                     [(eb, ea, ws) for eb, ea, ws in identifications], total)

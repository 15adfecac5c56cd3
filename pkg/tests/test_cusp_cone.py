import itertools
from fractions import Fraction

import pytest

from octica import data
from octica.cusp_cone import (FiniteIsometryGroup, NonDihedralImage,
                              conjugacy_classes, conjugate_anti,
                              enumerate_anti_involutions, enumerate_isometries,
                              glue_cone, vectors_of_norm, wedge_quotient)
from octica.fixed_points import fix_lattice, in_fix_coords
from octica.lattices import (AntiIsometry, check_anti_involution, gmat,
                             gmat_mul, gmat_vec)
from octica.scalars import GaussInt

ds = data.load()
LZ = ds.lattice("lz")
KAPPA1 = ds.cusp("kappa1")
KAPPA3 = ds.cusp("kappa3")

GROUP, AAI = enumerate_anti_involutions(LZ, KAPPA1)


def test_isometry_group_order():
    assert len(GROUP) == 96


def test_identity_and_minus_identity_present():
    eye = gmat([[[1, 0], [0, 0]], [[0, 0], [1, 0]]])
    neg = gmat([[[-1, 0], [0, 0]], [[0, 0], [-1, 0]]])
    assert eye in GROUP and neg in GROUP


def test_group_closed_under_composition():
    assert GROUP.is_closed()
    # full closure on a deterministic slice
    els = list(GROUP)[:12]
    for a in els:
        for b in els:
            assert gmat_mul(a, b) in GROUP


def test_indefinite_lattice_rejected():
    lam = ds.lattice("lambda")
    with pytest.raises(ValueError):
        enumerate_isometries(lam)


def test_anti_involution_count():
    assert len(AAI) == 36
    for kappa in AAI:
        ok, why = check_anti_involution(LZ, kappa)
        assert ok, why
    assert KAPPA1.matrix in {k.matrix for k in AAI}
    assert KAPPA3.matrix in {k.matrix for k in AAI}


def test_anti_involution_brute_force_oracle():
    """Re-obtain the 36 by scanning all 2x2 Gaussian matrices with entry
    norms bounded by the largest norm appearing in the isometry group."""
    max_norm = max(x.norm() for A in GROUP for row in A for x in row)
    vals = [GaussInt(a, b) for a in range(-2, 3) for b in range(-2, 3)
            if GaussInt(a, b).norm() <= max_norm]
    found = 0
    for entries in itertools.product(vals, repeat=4):
        C = ((entries[0], entries[1]), (entries[2], entries[3]))
        cand = AntiIsometry(C)
        ok, _ = check_anti_involution(LZ, cand)
        if ok:
            found += 1
    assert found == 36


def test_two_conjugacy_classes():
    classes = conjugacy_classes(GROUP, AAI)
    assert len(classes) == 2
    assert sum(len(c) for c in classes) == 36
    sizes = {}
    for cls in classes:
        if KAPPA1.matrix in cls:
            sizes["kappa1"] = len(cls)
        if KAPPA3.matrix in cls:
            sizes["kappa3"] = len(cls)
    # regression values; the source only states that there are two classes
    assert sizes == ds.cusp("class_sizes") == {"kappa1": 24, "kappa3": 12}


def test_wedge_quotients():
    fix1 = fix_lattice(LZ, KAPPA1)
    u1, u2 = ds.cusp("u1"), ds.cusp("u2")
    w1 = wedge_quotient(LZ, GROUP, KAPPA1,
                        edges=(tuple(in_fix_coords(fix1, u1)),
                               tuple(in_fix_coords(fix1, u2))))
    assert w1.stabilizer_order == 4 and w1.angle == Fraction(1, 2)
    fix3 = fix_lattice(LZ, KAPPA3)
    v2, v3 = ds.cusp("v2"), ds.cusp("v3")
    w3 = wedge_quotient(LZ, GROUP, KAPPA3,
                        edges=(tuple(in_fix_coords(fix3, v3)),
                               tuple(in_fix_coords(fix3, v2))))
    assert w3.stabilizer_order == 8 and w3.angle == Fraction(1, 4)


def test_wedge_angle_is_conjugation_invariant():
    sample = list(GROUP)[7]
    conj = conjugate_anti(sample, KAPPA1)
    w = wedge_quotient(LZ, GROUP, conj)
    assert w.angle == Fraction(1, 2)
    conj3 = conjugate_anti(sample, KAPPA3)
    assert wedge_quotient(LZ, GROUP, conj3).angle == Fraction(1, 4)


def test_wedge_rejects_bad_edges():
    fix1 = fix_lattice(LZ, KAPPA1)
    u1, u2 = ds.cusp("u1"), ds.cusp("u2")
    c1 = tuple(in_fix_coords(fix1, u1))
    with pytest.raises(ValueError):
        wedge_quotient(LZ, GROUP, KAPPA1, edges=(c1, c1))


def test_fixed_plane_grams_certify_inequivalence():
    fix1 = fix_lattice(LZ, KAPPA1)
    fix3 = fix_lattice(LZ, KAPPA3)
    assert abs(fix1.det()) == 8
    assert abs(fix3.det()) == 4


def test_glue_cone():
    fix1 = fix_lattice(LZ, KAPPA1)
    fix3 = fix_lattice(LZ, KAPPA3)
    u1, u2, v2, v3 = (ds.cusp(k) for k in ("u1", "u2", "v2", "v3"))
    w1 = wedge_quotient(LZ, GROUP, KAPPA1,
                        edges=(tuple(in_fix_coords(fix1, u1)),
                               tuple(in_fix_coords(fix1, u2))))
    w3 = wedge_quotient(LZ, GROUP, KAPPA3,
                        edges=(tuple(in_fix_coords(fix3, v3)),
                               tuple(in_fix_coords(fix3, v2))))
    a1, a2 = ds.cusp("glue_A1"), ds.cusp("glue_A2")
    cone = glue_cone(LZ, GROUP, w1, w3, required_witnesses=[a1, a2])
    assert cone.total_angle == Fraction(3, 4)
    assert not cone.is_orbifold_point()
    assert cone.total_angle == w1.angle + w3.angle


def test_published_witnesses():
    a1, a2 = ds.cusp("glue_A1"), ds.cusp("glue_A2")
    u1, u2, v2, v3 = (ds.cusp(k) for k in ("u1", "u2", "v2", "v3"))
    assert a1 in GROUP and a2 in GROUP
    assert gmat_vec(a1, v3) == tuple(u1)
    assert gmat_vec(a2, v2) == tuple(u2)
    assert tuple(x + y for x, y in zip(ds.cusp("v1"), v2)) == tuple(v3)


def test_v3_copies_u1_norm():
    assert LZ.q_norm(ds.cusp("v3")) == LZ.q_norm(ds.cusp("u1")) == -4


def test_orbifold_angles():
    from octica.cusp_cone import GluedCone
    assert GluedCone([], [], Fraction(1, 3)).is_orbifold_point()
    assert not GluedCone([], [], Fraction(3, 4)).is_orbifold_point()


def test_vectors_of_norm():
    assert len(vectors_of_norm(LZ, -2)) == 24
    assert vectors_of_norm(LZ, -1) == []
    assert len(vectors_of_norm(LZ, 0)) == 1  # only the zero vector

import pytest

from octica import data
from octica.fixed_points import (fix_lattice, in_fix_coords, realify_antimap,
                                 sublattice_index, verify_paper_basis)
from octica.lattices import AntiIsometry, gmat_identity
from octica.scalars import GaussInt, I

ds = data.load()
LAM = ds.lattice("lambda")
LZ = ds.lattice("lz")


def test_fix_rank_and_signature_for_all_chis():
    for i in range(5):
        fix = fix_lattice(LAM, ds.anti_involution(f"chi{i}"))
        assert fix.rank == 6
        assert fix.signature() == (1, 5)


def test_fix_lattice_rejects_non_involutive_input():
    # entrywise conjugation is not an anti-isometry of this Gram matrix
    bad = AntiIsometry(gmat_identity(6))
    with pytest.raises(ValueError):
        fix_lattice(LAM, bad)
    # reflection composed with chi2 is a genuine anti-isometry but has
    # infinite order
    from octica.lattices import compose_anti, reflection
    s = reflection(LAM, LAM.basis_vector(0))
    cand = compose_anti(s, ds.anti_involution("chi2"))
    assert not cand.is_involutive()
    with pytest.raises(ValueError):
        fix_lattice(LAM, cand)


def test_realified_antimap_squares_to_identity():
    chi = ds.anti_involution("chi2")
    R = realify_antimap(chi.matrix)
    n = len(R)
    sq = [[sum(R[i][k] * R[k][j] for k in range(n)) for j in range(n)]
          for i in range(n)]
    assert sq == [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def test_kappa1_fixed_plane_matches_published_basis():
    u1, u2 = ds.cusp("u1"), ds.cusp("u2")
    fix = fix_lattice(LZ, ds.cusp("kappa1"))
    assert fix.rank == 2
    assert LZ.q_norm(u1) == -4 and LZ.q_norm(u2) == -2
    assert LZ.inner(u1, u2).is_zero()
    assert sublattice_index(fix, [u1, u2]) == 1


def test_kappa3_fixed_plane_matches_published_basis():
    v1, v2 = ds.cusp("v1"), ds.cusp("v2")
    fix = fix_lattice(LZ, ds.cusp("kappa3"))
    assert LZ.q_norm(v1) == -2 and LZ.q_norm(v2) == -2
    assert LZ.inner(v1, v2).is_zero()
    assert sublattice_index(fix, [v1, v2]) == 1


def test_fix_lattice_negative_definite_on_lz():
    for name in ("kappa1", "kappa3"):
        fix = fix_lattice(LZ, ds.cusp(name))
        assert fix.rank == 2
        assert fix.signature() == (0, 2)


def test_fix_lattice_brute_force_oracle_on_lz():
    """Every small lattice vector fixed by kappa1 lies in the computed
    lattice, and vice versa."""
    kappa = ds.cusp("kappa1")
    fix = fix_lattice(LZ, kappa)
    B = 3
    for a in range(-B, B + 1):
        for b in range(-B, B + 1):
            for c in range(-B, B + 1):
                for d in range(-B, B + 1):
                    v = (GaussInt(a, b), GaussInt(c, d))
                    fixed = kappa(v) == v
                    inside = in_fix_coords(fix, v) is not None
                    assert fixed == inside


def test_verify_paper_basis_all():
    for i in range(5):
        rep = verify_paper_basis(LAM, ds.anti_involution(f"chi{i}"),
                                 ds.fixed_basis(f"B{i}"),
                                 ds.fixed_gram(f"L{i}"))
        assert rep["ok"], rep["failures"]


def test_verify_paper_basis_detects_corruption():
    basis = [list(b) for b in ds.fixed_basis("B2")]
    basis[0] = [x + GaussInt(1, 1) for x in basis[0]]
    rep = verify_paper_basis(LAM, ds.anti_involution("chi2"),
                             [tuple(b) for b in basis], ds.fixed_gram("L2"))
    assert not rep["ok"]
    assert not rep["fixed_columns"] or not rep["gram_matches"]


def test_sublattice_index_examples():
    fix = fix_lattice(LZ, ds.cusp("kappa1"))
    basis = fix.embedding
    assert sublattice_index(fix, basis) == 1
    doubled = [tuple(GaussInt(2, 0) * x for x in b) for b in basis]
    assert sublattice_index(fix, doubled) == 4
    with pytest.raises(ValueError):
        # (1+i) * basis vectors leave the fixed lattice
        sublattice_index(fix, [tuple(GaussInt(1, 1) * x for x in basis[0])]
                         + [basis[1]])


def test_scaling_by_one_plus_i_has_realified_determinant_two():
    # the 2x2 real matrix of multiplication by (1+i) has determinant 2
    from octica.intlinalg import det
    m = [[1, -1], [1, 1]]
    assert det(m) == 2
    # so the rescaled rank-1 module sits with index 2 in its ambient
    outer = [[1, 0], [0, 1]]
    inner = [[1, 1], [-1, 1]]
    from octica.intlinalg import sublattice_index_of
    assert sublattice_index_of(outer, inner, 2) == 2


def test_hermitian_form_real_on_fixed_pairs():
    fix = fix_lattice(LAM, ds.anti_involution("chi3"))
    for a in fix.embedding:
        for b in fix.embedding:
            assert LAM.inner(a, b).im == 0

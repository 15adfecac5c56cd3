"""Fixed Z-lattices of involutive anti-isometries.

Restricting scalars turns a rank-n Gaussian lattice into a rank-2n integer
lattice on the basis (e_1..e_n, i e_1..i e_n); an antilinear involution
becomes an integer matrix squaring to the identity, and its fixed lattice is
the integer kernel of (that matrix - 1).  The Hermitian form is real-valued
on fixed vectors, so it induces an integral symmetric form there directly
(no factor of 1/2 or 2; the induced Gram reproduces the reference tables
only under this normalization).
"""

from __future__ import annotations

from . import intlinalg
from .lattices import AntiIsometry, HermitianGaussLattice
from .scalars import GaussInt


class ZQuadraticLattice:
    """A finite-rank integral symmetric bilinear lattice, optionally with an
    embedding into an ambient Hermitian Gaussian lattice."""

    def __init__(self, gram, embedding=None, ambient=None):
        self.gram = [list(map(int, row)) for row in gram]
        self.rank = len(self.gram)
        for i in range(self.rank):
            for j in range(self.rank):
                if self.gram[i][j] != self.gram[j][i]:
                    raise ValueError("Gram matrix is not symmetric")
        self.embedding = embedding            # list of Gaussian coordinate vectors
        self.ambient = ambient
        if embedding is not None:
            if len(embedding) != self.rank:
                raise ValueError("embedding size mismatch")
            for a in range(self.rank):
                for b in range(self.rank):
                    h = ambient.inner(embedding[a], embedding[b])
                    if h.im != 0 or h.re != self.gram[a][b]:
                        raise ValueError("embedding does not reproduce the Gram matrix")

    def bilinear(self, x, y):
        return intlinalg.bilinear(self.gram, x, y)

    def q(self, x):
        return self.bilinear(x, x)

    def signature(self):
        return intlinalg.signature(self.gram)

    def det(self):
        return intlinalg.det(self.gram)

    def embed(self, x):
        """Ambient Gaussian coordinates of an integer vector in this basis."""
        if self.embedding is None:
            raise ValueError("lattice has no ambient embedding")
        n = self.ambient.rank
        out = [GaussInt(0, 0)] * n
        for t, c in enumerate(x):
            if c:
                out = [out[i] + GaussInt(c, 0) * self.embedding[t][i] for i in range(n)]
        return tuple(out)

    def to_json(self):
        obj = {"rank": self.rank, "gram": self.gram}
        if self.embedding is not None:
            obj["embedding"] = [[[x.re, x.im] for x in v] for v in self.embedding]
        return obj


def realify_antimap(C):
    """Integer matrix of v -> C conj(v) on the realified basis."""
    n = len(C)
    M = [[0] * (2 * n) for _ in range(2 * n)]
    for j in range(n):
        for k in range(n):
            p, q = C[j][k].re, C[j][k].im
            M[j][k] = p
            M[j][n + k] = q
            M[n + j][k] = q
            M[n + j][n + k] = -p
    return M


def fix_lattice(L, chi):
    """The fixed Z-lattice of an involutive anti-isometry, with its induced
    integral Gram matrix.

    The kernel basis is canonicalized by Hermite reduction so the output is
    deterministic.  Raises ValueError if chi is not involutive.
    """
    from .lattices import check_anti_involution
    if not isinstance(chi, AntiIsometry):
        chi = AntiIsometry(chi)
    ok, why = check_anti_involution(L, chi)
    if not ok:
        raise ValueError(f"fix_lattice requires an involutive anti-isometry: {why}")
    n = L.rank
    R = realify_antimap(chi.matrix)
    M = [[R[i][j] - (1 if i == j else 0) for j in range(2 * n)] for i in range(2 * n)]
    ker = intlinalg.int_kernel(M, 2 * n)
    ker = intlinalg.hnf_basis(ker, 2 * n)
    basis = [tuple(GaussInt(v[j], v[n + j]) for j in range(n)) for v in ker]
    k = len(basis)
    gram = [[0] * k for _ in range(k)]
    for a in range(k):
        for b in range(k):
            h = L.inner(basis[a], basis[b])
            if h.im != 0:
                raise AssertionError("Hermitian form not real on fixed vectors")
            gram[a][b] = h.re
    return ZQuadraticLattice(gram, embedding=basis, ambient=L)


def realified_coords(v):
    """Flatten a Gaussian vector to its length-2n integer realification."""
    return [x.re for x in v] + [x.im for x in v]


def in_fix_coords(fix, v):
    """Integer coordinates of an ambient Gaussian vector in the fixed-lattice
    basis, or None if it does not lie in the fixed lattice."""
    target = realified_coords(v)
    basis = [realified_coords(b) for b in fix.embedding]
    coords = intlinalg.in_span_coords(basis, target)
    if coords is None or any(c.denominator != 1 for c in coords):
        return None
    return [int(c) for c in coords]


def sublattice_index(outer, inner_vectors):
    """[outer : span(inner_vectors)] for full-rank integer sublattices.

    ``outer`` may be a ZQuadraticLattice with an embedding (then the inner
    vectors are ambient Gaussian vectors) or a plain list of integer basis
    vectors (then the inner vectors are integer vectors in the same
    coordinates).
    """
    if isinstance(outer, ZQuadraticLattice):
        basis = [realified_coords(b) for b in outer.embedding]
        vecs = [realified_coords(v) for v in inner_vectors]
        n = len(basis[0])
    else:
        basis = [list(v) for v in outer]
        vecs = [list(v) for v in inner_vectors]
        n = len(basis[0])
    return intlinalg.sublattice_index_of(basis, vecs, n)


def verify_paper_basis(L, chi, basis_columns, expected_gram):
    """Check a published fixed-lattice basis against the computed one.

    Returns a report dict with three named checks:
      (a) every column is fixed by chi,
      (b) the Gram of the columns equals the expected matrix entry-for-entry,
      (c) the columns span the full computed fixed lattice (index 1).
    """
    report = {"fixed_columns": True, "gram_matches": True, "index_one": True,
              "failures": []}
    for j, col in enumerate(basis_columns):
        if chi(col) != tuple(col):
            report["fixed_columns"] = False
            report["failures"].append(f"column {j} is not fixed")
    k = len(basis_columns)
    for a in range(k):
        for b in range(k):
            h = L.inner(basis_columns[a], basis_columns[b])
            if h.im != 0 or h.re != expected_gram[a][b]:
                report["gram_matches"] = False
                report["failures"].append(
                    f"Gram entry ({a},{b}) is {h}, expected {expected_gram[a][b]}")
    fix = fix_lattice(L, chi)
    try:
        idx = sublattice_index(fix, basis_columns)
    except ValueError as exc:
        idx = None
        report["failures"].append(str(exc))
    if idx != 1:
        report["index_one"] = False
        report["failures"].append(f"sublattice index is {idx}, expected 1")
    report["ok"] = not report["failures"]
    return report

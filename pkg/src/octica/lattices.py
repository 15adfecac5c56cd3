"""Hermitian lattices over the Gaussian integers, their isometries and
involutive anti-isometries.

Conventions, fixed once for the whole package:

* the Hermitian form is conjugate-linear in the FIRST argument:
  ``inner(x, y) = conj(x)^T G y``;
* an isometry acts by ``v -> A v``;
* an anti-isometry acts by ``v -> C conj(v)``; it is involutive iff
  ``C conj(C) = 1``.
"""

from __future__ import annotations

from . import intlinalg
from .scalars import GaussInt, UNITS, ZERO, ONE, I


# ---------------------------------------------------------------------------
# small Gaussian matrix helpers (tuples of tuples of GaussInt)

def gmat(entries):
    """Build an immutable Gaussian matrix from [re, im] pairs / ints / GaussInt."""
    out = []
    for row in entries:
        r = []
        for x in row:
            if isinstance(x, GaussInt):
                r.append(x)
            elif isinstance(x, int):
                r.append(GaussInt(x, 0))
            else:
                re, im = x
                r.append(GaussInt(re, im))
        out.append(tuple(r))
    return tuple(out)


def gmat_mul(A, B):
    n, k, m = len(A), len(B), len(B[0])
    return tuple(
        tuple(sum((A[i][t] * B[t][j] for t in range(k)), ZERO) for j in range(m))
        for i in range(n))


def gmat_vec(A, v):
    return tuple(sum((A[i][j] * v[j] for j in range(len(v))), ZERO) for i in range(len(A)))


def gmat_conj(A):
    return tuple(tuple(x.conj() for x in row) for row in A)


def gmat_transpose(A):
    return tuple(tuple(row) for row in zip(*A))


def gmat_dagger(A):
    return gmat_transpose(gmat_conj(A))


def gmat_identity(n):
    return tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n))


def gmat_scale(u, A):
    return tuple(tuple(u * x for x in row) for row in A)


def gmat_det(A):
    n = len(A)
    if n == 1:
        return A[0][0]
    d = ZERO
    for j in range(n):
        minor = tuple(tuple(A[i][k] for k in range(n) if k != j) for i in range(1, n))
        term = A[0][j] * gmat_det(minor)
        d = d + (term if j % 2 == 0 else -term)
    return d


def gmat_to_json(A):
    return [[[x.re, x.im] for x in row] for row in A]


def gvec_to_json(v):
    return [[x.re, x.im] for x in v]


def gvec(entries):
    return gmat([entries])[0]


# ---------------------------------------------------------------------------

class NonHermitianError(ValueError):
    """Raised by make_lattice when the Gram matrix fails Hermitian symmetry;
    carries the offending entry pair."""

    def __init__(self, i, j):
        super().__init__(f"Gram entry ({i},{j}) is not the conjugate of ({j},{i})")
        self.entry = (i, j)


class HermitianGaussLattice:
    """A free Z[i]-module of finite rank with a Hermitian Gram matrix."""

    def __init__(self, gram):
        self.gram = gmat(gram)
        self.rank = len(self.gram)
        for i in range(self.rank):
            for j in range(self.rank):
                if self.gram[i][j] != self.gram[j][i].conj():
                    raise NonHermitianError(i, j)
        self._signature = None

    def inner(self, v, w):
        """Hermitian inner product, conjugate-linear in the first slot."""
        if len(v) != self.rank or len(w) != self.rank:
            raise ValueError("vector length does not match lattice rank")
        acc = ZERO
        for i in range(self.rank):
            vi = v[i].conj()
            if vi.is_zero():
                continue
            for j in range(self.rank):
                acc = acc + vi * self.gram[i][j] * w[j]
        return acc

    def q_norm(self, v):
        """h(v, v); always a rational integer."""
        h = self.inner(v, v)
        assert h.im == 0
        return h.re

    def realified_gram(self):
        """Gram of the rank-2n Z-lattice on basis (e_1..e_n, i e_1..i e_n)
        under Re h."""
        n = self.rank
        R = [[0] * (2 * n) for _ in range(2 * n)]
        for j in range(n):
            for k in range(n):
                g = self.gram[j][k]
                R[j][k] = g.re
                R[j][n + k] = -g.im
                R[n + j][k] = g.im
                R[n + j][n + k] = g.re
        return R

    def signature(self):
        """(positive, negative) inertia of the Hermitian form."""
        if self._signature is None:
            p, m = intlinalg.signature(self.realified_gram())
            assert p % 2 == 0 and m % 2 == 0
            self._signature = (p // 2, m // 2)
        return self._signature

    def basis_vector(self, j):
        return tuple(ONE if i == j else ZERO for i in range(self.rank))

    def to_json(self):
        return {"rank": self.rank, "gram": gmat_to_json(self.gram)}

    @classmethod
    def from_json(cls, obj):
        if len(obj["gram"]) != obj["rank"]:
            raise ValueError("rank/gram mismatch")
        return cls(obj["gram"])


def make_lattice(gram):
    """Validate and wrap a Hermitian Gram matrix; rejects non-Hermitian input."""
    return HermitianGaussLattice(gram)


class Isometry:
    """A Z[i]-linear map v -> A v with A^dagger G A = G and unit determinant."""

    def __init__(self, matrix):
        self.matrix = gmat(matrix)

    def __call__(self, v):
        return gmat_vec(self.matrix, v)

    def compose(self, other):
        return Isometry(gmat_mul(self.matrix, other.matrix))

    def __eq__(self, other):
        return isinstance(other, Isometry) and self.matrix == other.matrix

    def __hash__(self):
        return hash(self.matrix)


class AntiIsometry:
    """An antilinear map v -> C conj(v) with h(Cx~, Cy~) = conj(h(x, y))."""

    def __init__(self, matrix):
        self.matrix = gmat(matrix)

    def __call__(self, v):
        return gmat_vec(self.matrix, tuple(x.conj() for x in v))

    def is_involutive(self):
        n = len(self.matrix)
        return gmat_mul(self.matrix, gmat_conj(self.matrix)) == gmat_identity(n)

    def __eq__(self, other):
        return isinstance(other, AntiIsometry) and self.matrix == other.matrix

    def __hash__(self):
        return hash(self.matrix)


def check_isometry(L, A):
    """Exact verification that A preserves the form and is unimodular.

    Returns (ok, reason); reason is None when ok.
    """
    M = A.matrix if isinstance(A, Isometry) else gmat(A)
    if len(M) != L.rank:
        raise ValueError("matrix size does not match lattice rank")
    if gmat_mul(gmat_mul(gmat_dagger(M), L.gram), M) != L.gram:
        return False, "A^dagger G A differs from G"
    if not gmat_det(M).is_unit():
        return False, "determinant is not a Gaussian unit"
    return True, None


def check_anti_involution(L, C):
    """Exact verification of the involutive anti-isometry conditions."""
    M = C.matrix if isinstance(C, AntiIsometry) else gmat(C)
    if len(M) != L.rank:
        raise ValueError("matrix size does not match lattice rank")
    n = L.rank
    if gmat_mul(M, gmat_conj(M)) != gmat_identity(n):
        return False, "C conj(C) is not the identity"
    # anti-isometry: conj(C)^T G C = conj(G), checked entrywise
    lhs = gmat_mul(gmat_mul(gmat_transpose(gmat_conj(M)), L.gram), M)
    if lhs != gmat_conj(L.gram):
        return False, "h(Cx~, Cy~) differs from conj(h(x, y))"
    return True, None


def is_anti_isometry_matrix(L, M):
    """Anti-isometry condition alone (no involutivity)."""
    M = gmat(M)
    lhs = gmat_mul(gmat_mul(gmat_transpose(gmat_conj(M)), L.gram), M)
    return lhs == gmat_conj(L.gram)


def compose_anti(A, chi):
    """The antilinear map v -> A(chi(v)).  Anti-isometry is automatic when the
    inputs are; involutivity is not, and is left for the caller to check."""
    return AntiIsometry(gmat_mul(A.matrix, chi.matrix))


def anti_then_anti(chi1, chi2):
    """The linear map v -> chi1(chi2(v)); an isometry when both are
    anti-isometries.  Matrix: C1 conj(C2)."""
    return Isometry(gmat_mul(chi1.matrix, gmat_conj(chi2.matrix)))


def scale_anti(chi, u):
    """The antilinear map u * chi for a unit Gaussian integer u.

    Every unit multiple of an involutive anti-isometry is again involutive
    (for u = +-i this follows from antilinearity: (u chi)^2 = |u|^2 chi^2),
    but its fixed lattice sits in a rotated real position.
    """
    if not isinstance(u, GaussInt):
        u = GaussInt._coerce(u)
    if not u.is_unit():
        raise ValueError("scale_anti requires a unit Gaussian integer")
    return AntiIsometry(gmat_scale(u, chi.matrix))


def reflection(L, r):
    """The order-2 reflection x -> x - 2 h(r,x)/q(r) r, when it is integral.

    Raises ValueError if the crystallographic condition fails.
    """
    n = L.rank
    q = L.q_norm(r)
    cols = []
    for j in range(n):
        ej = L.basis_vector(j)
        h = L.inner(r, ej)
        num = GaussInt(2, 0) * h
        if not (num.re % q == 0 and num.im % q == 0):
            raise ValueError("reflection is not integral on the lattice")
        c = GaussInt(num.re // q, num.im // q)
        cols.append(tuple(ej[i] - c * r[i] for i in range(n)))
    return Isometry(tuple(zip(*cols)))


def unit_reflection(L, r, mu):
    """The mu-reflection x -> x - (1 - mu) h(r,x)/q(r) r for a unit mu.

    For mu = +-i this has order 4 and, unlike the order-2 reflection, can act
    nontrivially on the mod-(1+i) quotient.  Raises if not integral.
    """
    n = L.rank
    q = L.q_norm(r)
    one_minus_mu = ONE - mu
    cols = []
    for j in range(n):
        ej = L.basis_vector(j)
        num = one_minus_mu * L.inner(r, ej)
        if not (num.re % q == 0 and num.im % q == 0):
            raise ValueError("unit reflection is not integral on the lattice")
        c = GaussInt(num.re // q, num.im // q)
        cols.append(tuple(ej[i] - c * r[i] for i in range(n)))
    return Isometry(tuple(zip(*cols)))

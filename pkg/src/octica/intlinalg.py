"""Exact integer and rational linear algebra used by the lattice modules.

All routines take plain Python ints (or Fractions where stated) and never
touch floating point.  Kernels are computed by a column Hermite reduction
with a unimodular transform, so results are deterministic.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import gcd, isqrt, lcm


def mat_vec(M, v):
    return [sum(M[i][j] * v[j] for j in range(len(v))) for i in range(len(M))]


def bilinear(G, x, y):
    return sum(x[i] * G[i][j] * y[j] for i in range(len(x)) for j in range(len(y)))


def vec_gcd(v):
    g = 0
    for x in v:
        g = gcd(g, x)
    return g


def det(M):
    """Integer determinant by fraction-free Bareiss elimination."""
    n = len(M)
    A = [list(map(int, row)) for row in M]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for r in range(k + 1, n):
                if A[r][k] != 0:
                    A[k], A[r] = A[r], A[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def rank(M):
    rows = [list(map(Fraction, row)) for row in M]
    cols = len(rows[0]) if rows else 0
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c] / rows[r][c]
                rows[i] = [rows[i][j] - f * rows[r][j] for j in range(cols)]
        r += 1
    return r


def hnf_transform(rows, n):
    """Column-reduce the integer matrix (given as rows of length n).

    Returns (reduced_rows, U) with U unimodular and reduced = rows * U in
    column echelon shape.  Columns of U over the zero columns of the result
    form a basis of the integer kernel.
    """
    m = len(rows)
    A = [list(map(int, r)) for r in rows]
    U = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    row = col = 0
    while row < m and col < n:
        piv = None
        for c in range(col, n):
            if A[row][c] != 0 and (piv is None or abs(A[row][c]) < abs(A[row][piv])):
                piv = c
        if piv is None:
            row += 1
            continue
        if piv != col:
            for r in range(m):
                A[r][col], A[r][piv] = A[r][piv], A[r][col]
            for r in range(n):
                U[r][col], U[r][piv] = U[r][piv], U[r][col]
        again = True
        while again:
            again = False
            for c in range(col + 1, n):
                if A[row][c] != 0:
                    q = A[row][c] // A[row][col]
                    for r in range(m):
                        A[r][c] -= q * A[r][col]
                    for r in range(n):
                        U[r][c] -= q * U[r][col]
                    if A[row][c] != 0:
                        for r in range(m):
                            A[r][col], A[r][c] = A[r][c], A[r][col]
                        for r in range(n):
                            U[r][col], U[r][c] = U[r][c], U[r][col]
                        again = True
        row += 1
        col += 1
    return A, U


def int_kernel(rows, n):
    """Basis of {x in Z^n : rows . x = 0}, deterministic and saturated."""
    A, U = hnf_transform(rows, n)
    ker = []
    m = len(rows)
    for c in range(n):
        if all(A[r][c] == 0 for r in range(m)):
            ker.append([U[r][c] for r in range(n)])
    return ker


def hnf_basis(vectors, n):
    """Canonical (column-style Hermite) basis of the lattice spanned by the
    given integer vectors inside Z^n."""
    if not vectors:
        return []
    # row HNF of the matrix whose rows are the vectors
    A = [list(map(int, v)) for v in vectors]
    m = len(A)
    r = 0
    for c in range(n):
        piv = None
        for i in range(r, m):
            if A[i][c] != 0 and (piv is None or abs(A[i][c]) < abs(A[piv][c])):
                piv = i
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        again = True
        while again:
            again = False
            for i in range(r + 1, m):
                if A[i][c] != 0:
                    q = A[i][c] // A[r][c]
                    A[i] = [A[i][j] - q * A[r][j] for j in range(n)]
                    if A[i][c] != 0:
                        A[r], A[i] = A[i], A[r]
                        again = True
        if A[r][c] < 0:
            A[r] = [-x for x in A[r]]
        for i in range(r):
            q = A[i][c] // A[r][c]
            if q:
                A[i] = [A[i][j] - q * A[r][j] for j in range(n)]
        r += 1
    return [row for row in A[:r]]


def smith_invariants(M):
    """Nonzero diagonal entries of the Smith normal form of an integer matrix."""
    A = [list(map(int, row)) for row in M]
    m = len(A)
    n = len(A[0]) if m else 0
    res = []
    top = 0
    while top < min(m, n):
        piv = None
        for i in range(top, m):
            for j in range(top, n):
                if A[i][j] != 0 and (piv is None or abs(A[i][j]) < abs(A[piv[0]][piv[1]])):
                    piv = (i, j)
        if piv is None:
            break
        i0, j0 = piv
        A[top], A[i0] = A[i0], A[top]
        for r in range(m):
            A[r][top], A[r][j0] = A[r][j0], A[r][top]
        while True:
            dirty = False
            for i in range(top + 1, m):
                if A[i][top] != 0:
                    q = A[i][top] // A[top][top]
                    for c in range(n):
                        A[i][c] -= q * A[top][c]
                    if A[i][top] != 0:
                        A[top], A[i] = A[i], A[top]
                        dirty = True
            for j in range(top + 1, n):
                if A[top][j] != 0:
                    q = A[top][j] // A[top][top]
                    for r in range(m):
                        A[r][j] -= q * A[r][top]
                    if A[top][j] != 0:
                        for r in range(m):
                            A[r][top], A[r][j] = A[r][j], A[r][top]
                        dirty = True
            if not dirty:
                break
        top += 1
    for k in range(top):
        if A[k][k] != 0:
            res.append(abs(A[k][k]))
    # enforce divisibility chain
    changed = True
    while changed:
        changed = False
        for i in range(len(res) - 1):
            if res[i + 1] % res[i] != 0:
                g = gcd(res[i], res[i + 1])
                res[i], res[i + 1] = g, res[i] * res[i + 1] // g
                changed = True
    return res


def disc_group_exponent(gram):
    """Exponent of the discriminant group L*/L of a nondegenerate integer
    Gram matrix."""
    inv = smith_invariants(gram)
    if len(inv) != len(gram):
        raise ValueError("degenerate Gram matrix")
    e = 1
    for d in inv:
        e = lcm(e, d)
    return e


def signature(M):
    """(positive, negative) inertia of a rational symmetric matrix, computed
    by exact symmetric Gaussian elimination."""
    n = len(M)
    A = [[Fraction(M[i][j]) for j in range(n)] for i in range(n)]
    pos = neg = 0
    i = 0
    while i < n:
        if A[i][i] == 0:
            swap = next((j for j in range(i + 1, n) if A[j][j] != 0), None)
            if swap is not None:
                A[i], A[swap] = A[swap], A[i]
                for r in range(n):
                    A[r][i], A[r][swap] = A[r][swap], A[r][i]
            else:
                off = next((j for j in range(i + 1, n) if A[i][j] != 0), None)
                if off is None:
                    i += 1
                    continue
                for c in range(n):
                    A[i][c] += A[off][c]
                for r in range(n):
                    A[r][i] += A[r][off]
        d = A[i][i]
        if d > 0:
            pos += 1
        else:
            neg += 1
        for j in range(i + 1, n):
            if A[j][i] != 0:
                f = A[j][i] / d
                for c in range(n):
                    A[j][c] -= f * A[i][c]
                for r in range(n):
                    A[r][j] -= f * A[r][i]
        i += 1
    return pos, neg


def is_negative_definite(M):
    p, n = signature(M)
    return p == 0 and n == len(M)


def solve_diophantine(a, m):
    """One integer solution x of sum(a[i] x[i]) = m, or None."""
    n = len(a)
    g = vec_gcd(a)
    if g == 0:
        return [0] * n if m == 0 else None
    if m % g != 0:
        return None
    coeffs = [0] * n
    cur = 0
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        if cur == 0:
            cur = abs(ai)
            coeffs = [0] * n
            coeffs[i] = 1 if ai > 0 else -1
            continue
        old_r, r = cur, ai
        old_s, s = 1, 0
        old_t, t = 0, 1
        while r != 0:
            q = old_r // r
            old_r, r = r, old_r - q * r
            old_s, s = s, old_s - q * s
            old_t, t = t, old_t - q * t
        coeffs = [c * old_s for c in coeffs]
        coeffs[i] += old_t
        cur = old_r
        if cur < 0:
            cur = -cur
            coeffs = [-c for c in coeffs]
    return [c * (m // g) for c in coeffs]


def solve_rational(A, b):
    """Unique rational solution of a square nonsingular system, as Fractions."""
    n = len(A)
    M = [[Fraction(A[i][j]) for j in range(n)] + [Fraction(b[i])] for i in range(n)]
    for i in range(n):
        p = next((r for r in range(i, n) if M[r][i] != 0), None)
        if p is None:
            raise ValueError("singular system")
        M[i], M[p] = M[p], M[i]
        for r in range(n):
            if r != i and M[r][i] != 0:
                f = M[r][i] / M[i][i]
                for c in range(i, n + 1):
                    M[r][c] -= f * M[i][c]
    return [M[i][n] / M[i][i] for i in range(n)]


def in_span_coords(basis, v):
    """Rational coordinates of v in the given basis (vectors in Z^n), or
    None if v is outside the rational span."""
    n = len(v)
    k = len(basis)
    M = [[Fraction(basis[t][i]) for t in range(k)] for i in range(n)]
    aug = [row[:] + [Fraction(v[i])] for i, row in enumerate(M)]
    pivots = []
    r = 0
    for c in range(k):
        p = next((rr for rr in range(r, n) if aug[rr][c] != 0), None)
        if p is None:
            continue
        aug[r], aug[p] = aug[p], aug[r]
        for rr in range(n):
            if rr != r and aug[rr][c] != 0:
                f = aug[rr][c] / aug[r][c]
                for cc in range(k + 1):
                    aug[rr][cc] -= f * aug[r][cc]
        pivots.append(c)
        r += 1
    for rr in range(r, n):
        if aug[rr][k] != 0:
            return None
    coords = [Fraction(0)] * k
    for i, c in enumerate(pivots):
        coords[c] = aug[i][k] / aug[i][c]
    return coords


def floor_sqrt_fraction(fr):
    """floor(sqrt(a/b)) for a nonnegative Fraction a/b."""
    if fr < 0:
        raise ValueError("negative radicand")
    a, b = fr.numerator, fr.denominator
    return isqrt(a * b) // b


def enumerate_quadric(P, shift, target):
    """All integer z with (z + shift)^T P (z + shift) == target, for P a
    positive-definite rational matrix and a rational shift vector.

    Classic coordinate recursion on the exact LDL decomposition.
    """
    k = len(P)
    if k == 0:
        return [()] if target == 0 else []
    A = [[Fraction(P[i][j]) for j in range(k)] for i in range(k)]
    D = [None] * k
    L = [[Fraction(0)] * k for _ in range(k)]
    for i in range(k):
        D[i] = A[i][i]
        if D[i] <= 0:
            raise ValueError("matrix not positive definite")
        for j in range(k):
            L[i][j] = A[i][j] / D[i] if j > i else (Fraction(int(i == j)))
        for r in range(i + 1, k):
            for c in range(i + 1, k):
                A[r][c] -= A[i][c] * A[r][i] / A[i][i]
    shift = [Fraction(s) for s in shift]
    target = Fraction(target)
    out = []
    z = [0] * k

    def rec(i, rem):
        if i < 0:
            if rem == 0:
                out.append(tuple(z))
            return
        center = shift[i]
        for j in range(i + 1, k):
            center += L[i][j] * (z[j] + shift[j])
        bound = rem / D[i]
        s = floor_sqrt_fraction(bound)
        lo = -center - s
        hi = -center + s
        lo_i = lo.numerator // lo.denominator
        hi_i = -((-hi.numerator) // hi.denominator)
        for zi in range(lo_i, hi_i + 1):
            val = D[i] * (zi + center) ** 2
            if val <= rem:
                z[i] = zi
                rec(i - 1, rem - val)
        z[i] = 0

    rec(k - 1, target)
    return out


def vectors_with_norm_and_product(gram, norm, a, m):
    """All integer x with x^T gram x == norm and a . x == m, where the form
    restricted to {a . x = 0} is negative definite and norm <= 0.

    ``a`` is an integer linear functional (typically gram * v0).
    """
    n = len(gram)
    xp = solve_diophantine(a, m)
    if xp is None:
        return []
    ker = int_kernel([a], n)
    k = len(ker)
    P = [[-bilinear(gram, ker[i], ker[j]) for j in range(k)] for i in range(k)]
    Lv = [-bilinear(gram, xp, ker[i]) for i in range(k)]
    c0 = -bilinear(gram, xp, xp)
    if k == 0:
        return [list(xp)] if c0 == -norm else []
    shift = solve_rational(P, Lv)
    target = Fraction(-norm - c0) + sum(shift[i] * Lv[i] for i in range(k))
    if target < 0:
        return []
    out = []
    for z in enumerate_quadric(P, shift, target):
        x = [xp[i] + sum(z[j] * ker[j][i] for j in range(k)) for i in range(n)]
        if bilinear(gram, x, x) == norm:
            out.append(x)
    return sorted(out)


def sublattice_index_of(outer_basis, inner_vectors, n):
    """Index [outer : inner] where both span full-rank sublattices of Z^n
    and inner is contained in outer.  Raises if containment or rank fails."""
    k = len(outer_basis)
    coords = []
    for v in inner_vectors:
        c = in_span_coords(outer_basis, v)
        if c is None or any(x.denominator != 1 for x in c):
            raise ValueError("vector not in the outer lattice")
        coords.append([int(x) for x in c])
    if len(coords) != k:
        raise ValueError("inner system has wrong size")
    d = det(coords)
    if d == 0:
        raise ValueError("inner vectors not of full rank")
    return abs(d)

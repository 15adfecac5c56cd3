"""Exact scalar arithmetic: Gaussian integers, Gaussian rationals, and the
quadratic extension by sqrt(2).

Everything here is immutable and arbitrary precision.  No floating point
appears anywhere; all downstream lattice computations rely on these scalars
being exact.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd


class GaussInt:
    """A Gaussian integer a + b*i with arbitrary-precision components."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", int(re))
        object.__setattr__(self, "im", int(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussInt is immutable")

    def __add__(self, other):
        other = GaussInt._coerce(other)
        return GaussInt(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = GaussInt._coerce(other)
        return GaussInt(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return GaussInt._coerce(other) - self

    def __mul__(self, other):
        other = GaussInt._coerce(other)
        return GaussInt(self.re * other.re - self.im * other.im,
                        self.re * other.im + self.im * other.re)

    __rmul__ = __mul__

    def __neg__(self):
        return GaussInt(-self.re, -self.im)

    def conj(self):
        return GaussInt(self.re, -self.im)

    def norm(self):
        """Field norm re^2 + im^2 (a nonnegative rational integer)."""
        return self.re * self.re + self.im * self.im

    def is_unit(self):
        return self.norm() == 1

    def is_zero(self):
        return self.re == 0 and self.im == 0

    def __floordiv__(self, other):
        """Nearest-integer quotient; the remainder has smaller norm."""
        other = GaussInt._coerce(other)
        n = other.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero Gaussian integer")
        num = self * other.conj()
        return GaussInt(_round_half(num.re, n), _round_half(num.im, n))

    def __mod__(self, other):
        other = GaussInt._coerce(other)
        return self - (self // other) * other

    def divides(self, other):
        other = GaussInt._coerce(other)
        return (other % self).is_zero()

    def exact_div(self, other):
        """self / other when the quotient is a Gaussian integer."""
        other = GaussInt._coerce(other)
        q = self // other
        if not (self - q * other).is_zero():
            raise ValueError(f"{other} does not divide {self}")
        return q

    def __eq__(self, other):
        if isinstance(other, int):
            return self.re == other and self.im == 0
        if isinstance(other, GaussInt):
            return self.re == other.re and self.im == other.im
        return NotImplemented

    def __hash__(self):
        return hash((self.re, self.im))

    def __repr__(self):
        if self.im == 0:
            return str(self.re)
        unit = "i" if abs(self.im) == 1 else f"{abs(self.im)}i"
        if self.re == 0:
            return ("-" if self.im < 0 else "") + unit
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{unit}"

    def to_json(self):
        """The wire form: the two-element array [re, im]."""
        return [self.re, self.im]

    @classmethod
    def from_json(cls, obj):
        re, im = obj
        return cls(re, im)

    @staticmethod
    def _coerce(x):
        if isinstance(x, GaussInt):
            return x
        if isinstance(x, int):
            return GaussInt(x, 0)
        raise TypeError(f"cannot coerce {type(x).__name__} to GaussInt")


ZERO = GaussInt(0, 0)
ONE = GaussInt(1, 0)
I = GaussInt(0, 1)
UNITS = (ONE, I, -ONE, -I)
ONE_PLUS_I = GaussInt(1, 1)
ONE_MINUS_I = GaussInt(1, -1)


def _round_half(a, n):
    # round(a/n) with ties toward +infinity; any fixed tie rule works
    return (2 * a + n) // (2 * n)


def gauss_gcd(a, b):
    """A gcd of two Gaussian integers (unique up to a unit)."""
    a, b = GaussInt._coerce(a), GaussInt._coerce(b)
    while not b.is_zero():
        a, b = b, a % b
    return a


def content(values):
    """gcd of a collection of Gaussian integers."""
    g = ZERO
    for v in values:
        g = gauss_gcd(g, v)
    return g


def divisible_by_one_plus_i(z):
    """True iff z lies in the ideal (1+i), i.e. re+im is even."""
    z = GaussInt._coerce(z)
    return (z.re + z.im) % 2 == 0


class GaussRat:
    """A Gaussian rational num/den in canonical form: den a positive rational
    integer with gcd(content(num), den) = 1."""

    __slots__ = ("num", "den")

    def __init__(self, num=0, den=1):
        if isinstance(num, GaussRat):
            num, den2 = num.num, num.den
            den = den * den2
        num = GaussInt._coerce(num)
        den = int(den)
        if den == 0:
            raise ZeroDivisionError("GaussRat with zero denominator")
        if den < 0:
            num, den = -num, -den
        g = gcd(gcd(abs(num.re), abs(num.im)), den)
        if g > 1:
            num = GaussInt(num.re // g, num.im // g)
            den //= g
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("GaussRat is immutable")

    @staticmethod
    def _coerce(x):
        if isinstance(x, GaussRat):
            return x
        if isinstance(x, (int, GaussInt)):
            return GaussRat(x, 1)
        if isinstance(x, Fraction):
            return GaussRat(GaussInt(x.numerator, 0), x.denominator)
        raise TypeError(f"cannot coerce {type(x).__name__} to GaussRat")

    def __add__(self, other):
        other = GaussRat._coerce(other)
        return GaussRat(self.num * other.den + other.num * self.den,
                        self.den * other.den)

    __radd__ = __add__

    def __sub__(self, other):
        other = GaussRat._coerce(other)
        return GaussRat(self.num * other.den - other.num * self.den,
                        self.den * other.den)

    def __rsub__(self, other):
        return GaussRat._coerce(other) - self

    def __mul__(self, other):
        other = GaussRat._coerce(other)
        return GaussRat(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = GaussRat._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero GaussRat")
        n = other.num.norm()
        return GaussRat(self.num * other.num.conj() * other.den, self.den * n)

    def __rtruediv__(self, other):
        return GaussRat._coerce(other) / self

    def __neg__(self):
        return GaussRat(-self.num, self.den)

    def conj(self):
        return GaussRat(self.num.conj(), self.den)

    def is_zero(self):
        return self.num.is_zero()

    def is_gauss_integer(self):
        return self.den == 1

    def to_gauss_int(self):
        if self.den != 1:
            raise ValueError(f"{self} is not a Gaussian integer")
        return self.num

    @property
    def re(self):
        return Fraction(self.num.re, self.den)

    @property
    def im(self):
        return Fraction(self.num.im, self.den)

    def __eq__(self, other):
        try:
            other = GaussRat._coerce(other)
        except TypeError:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        if self.den == 1:
            return repr(self.num)
        return f"({self.num})/{self.den}"

    def to_json(self):
        return {"num": self.num.to_json(), "den": self.den}

    @classmethod
    def from_json(cls, obj):
        return cls(GaussInt.from_json(obj["num"]), obj["den"])


class ExtScalar:
    """An element a + b*sqrt(2) of the quadratic extension of the Gaussian
    rationals.  The representation is unique because sqrt(2) is irrational
    over Q(i)."""

    __slots__ = ("a", "b")

    def __init__(self, a=0, b=0):
        object.__setattr__(self, "a", GaussRat._coerce(a))
        object.__setattr__(self, "b", GaussRat._coerce(b))

    def __setattr__(self, name, value):
        raise AttributeError("ExtScalar is immutable")

    @staticmethod
    def _coerce(x):
        if isinstance(x, ExtScalar):
            return x
        if isinstance(x, (int, GaussInt, GaussRat, Fraction)):
            return ExtScalar(x, 0)
        raise TypeError(f"cannot coerce {type(x).__name__} to ExtScalar")

    @staticmethod
    def sqrt2():
        return ExtScalar(0, 1)

    def __add__(self, other):
        other = ExtScalar._coerce(other)
        return ExtScalar(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __sub__(self, other):
        other = ExtScalar._coerce(other)
        return ExtScalar(self.a - other.a, self.b - other.b)

    def __rsub__(self, other):
        return ExtScalar._coerce(other) - self

    def __mul__(self, other):
        other = ExtScalar._coerce(other)
        return ExtScalar(self.a * other.a + 2 * (self.b * other.b),
                         self.a * other.b + self.b * other.a)

    __rmul__ = __mul__

    def __neg__(self):
        return ExtScalar(-self.a, -self.b)

    def __truediv__(self, other):
        other = ExtScalar._coerce(other)
        # (a + b s)^-1 = (a - b s)/(a^2 - 2 b^2); the denominator vanishes
        # only for a = b = 0 since sqrt(2) is not in Q(i)
        d = other.a * other.a - 2 * (other.b * other.b)
        if d.is_zero():
            raise ZeroDivisionError("division by zero ExtScalar")
        return ExtScalar((self.a * other.a - 2 * (self.b * other.b)) / d,
                         (self.b * other.a - self.a * other.b) / d)

    def __rtruediv__(self, other):
        return ExtScalar._coerce(other) / self

    def conj(self):
        """Complex conjugation (fixes sqrt(2))."""
        return ExtScalar(self.a.conj(), self.b.conj())

    def is_zero(self):
        return self.a.is_zero() and self.b.is_zero()

    def is_rational_part_only(self):
        return self.b.is_zero()

    def is_gauss_integer(self):
        return self.b.is_zero() and self.a.is_gauss_integer()

    def to_gauss_int(self):
        if not self.is_gauss_integer():
            raise ValueError(f"{self} is not a Gaussian integer")
        return self.a.to_gauss_int()

    def __eq__(self, other):
        try:
            other = ExtScalar._coerce(other)
        except TypeError:
            return NotImplemented
        return self.a == other.a and self.b == other.b

    def __hash__(self):
        return hash((self.a, self.b))

    def __repr__(self):
        if self.b.is_zero():
            return repr(self.a)
        if self.a.is_zero():
            return f"({self.b})*sqrt2"
        return f"({self.a}) + ({self.b})*sqrt2"

    def to_json(self):
        return {"a": self.a.to_json(), "b": self.b.to_json()}

    @classmethod
    def from_json(cls, obj):
        return cls(GaussRat.from_json(obj["a"]), GaussRat.from_json(obj["b"]))


def ext_sqrt(q):
    """Exact square root of a positive rational as an ExtScalar, if it lies
    in Q + Q*sqrt(2).  Raises ValueError otherwise."""
    q = Fraction(q)
    if q <= 0:
        raise ValueError("ext_sqrt expects a positive rational")
    r = _rational_sqrt(q)
    if r is not None:
        return ExtScalar(r, 0)
    r = _rational_sqrt(q / 2)
    if r is not None:
        return ExtScalar(0, r)
    raise ValueError(f"sqrt({q}) does not lie in Q(sqrt 2)")


def _rational_sqrt(q):
    from math import isqrt
    num, den = q.numerator, q.denominator
    rn, rd = isqrt(num), isqrt(den)
    if rn * rn == num and rd * rd == den:
        return Fraction(rn, rd)
    return None


class LinearSolution:
    """Exact affine solution set of a linear system over ExtScalar.

    ``consistent`` is False for an inconsistent system (a normal result, not
    an error); otherwise ``particular`` is one solution and ``homogeneous``
    is a basis of the solution space of the associated homogeneous system.
    """

    def __init__(self, consistent, particular=None, homogeneous=()):
        self.consistent = consistent
        self.particular = particular
        self.homogeneous = list(homogeneous)

    def is_unique(self):
        return self.consistent and not self.homogeneous


def ext_solve_linear(matrix, rhs):
    """Solve A x = b exactly over the field Q(i, sqrt 2).

    ``matrix`` is a list of rows of ExtScalar-coercible entries and ``rhs``
    the right-hand side column.  Returns a LinearSolution.
    """
    rows = len(matrix)
    if rows != len(rhs):
        raise ValueError("matrix/rhs size mismatch")
    cols = len(matrix[0]) if rows else 0
    A = [[ExtScalar._coerce(x) for x in row] + [ExtScalar._coerce(rhs[i])]
         for i, row in enumerate(matrix)]
    for row in A:
        if len(row) != cols + 1:
            raise ValueError("ragged matrix")
    pivots = []
    r = 0
    for c in range(cols):
        p = None
        for rr in range(r, rows):
            if not A[rr][c].is_zero():
                p = rr
                break
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        inv = ExtScalar(1) / A[r][c]
        A[r] = [x * inv for x in A[r]]
        for rr in range(rows):
            if rr != r and not A[rr][c].is_zero():
                f = A[rr][c]
                A[rr] = [A[rr][j] - f * A[r][j] for j in range(cols + 1)]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    for rr in range(r, rows):
        if not A[rr][cols].is_zero():
            return LinearSolution(False)
    particular = [ExtScalar(0)] * cols
    for i, c in enumerate(pivots):
        particular[c] = A[i][cols]
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        v = [ExtScalar(0)] * cols
        v[f] = ExtScalar(1)
        for i, c in enumerate(pivots):
            v[c] = -A[i][f]
        basis.append(v)
    return LinearSolution(True, particular, basis)

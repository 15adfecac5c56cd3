from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from octica.scalars import (ExtScalar, GaussInt, GaussRat, I, ONE, UNITS,
                            divisible_by_one_plus_i, ext_solve_linear,
                            ext_sqrt, gauss_gcd)

gauss = st.builds(GaussInt, st.integers(-50, 50), st.integers(-50, 50))
small_rat = st.fractions(min_value=-10, max_value=10, max_denominator=12)
gauss_rat = st.builds(lambda a, b, d: GaussRat(GaussInt(a, b), d),
                      st.integers(-20, 20), st.integers(-20, 20),
                      st.integers(1, 12))
ext = st.builds(ExtScalar, gauss_rat, gauss_rat)


def test_basic_products():
    assert GaussInt(1, 1) * GaussInt(1, -1) == GaussInt(2, 0)
    assert GaussInt(3, -2).conj() == GaussInt(3, 2)
    assert (GaussInt(1, 1) * GaussInt(1, 1)) == GaussInt(0, 2)


def test_units_are_exactly_norm_one():
    units = [GaussInt(a, b) for a in range(-3, 4) for b in range(-3, 4)
             if GaussInt(a, b).norm() == 1]
    assert sorted(((u.re, u.im) for u in units)) == sorted(
        ((u.re, u.im) for u in UNITS))
    for u in UNITS:
        assert u.is_unit()


@given(gauss, gauss)
def test_norm_multiplicative(z, w):
    assert (z * w).norm() == z.norm() * w.norm()


@given(gauss, gauss)
def test_conjugation_is_ring_homomorphism(z, w):
    assert (z * w).conj() == z.conj() * w.conj()
    assert (z + w).conj() == z.conj() + w.conj()
    assert z.conj().conj() == z


@given(gauss)
def test_norm_positive_definite(z):
    assert z.norm() >= 0
    assert (z.norm() == 0) == z.is_zero()


def test_divisible_by_one_plus_i():
    assert divisible_by_one_plus_i(GaussInt(1, 1))
    assert not divisible_by_one_plus_i(GaussInt(1, 0))
    # 2 = -i (1+i)^2
    assert divisible_by_one_plus_i(GaussInt(2, 0))
    assert -I * GaussInt(1, 1) * GaussInt(1, 1) == GaussInt(2, 0)


@given(gauss)
def test_divisibility_agrees_with_search(z):
    opi = GaussInt(1, 1)
    witness = None
    bound = max(abs(z.re), abs(z.im)) + 1
    for a in range(-bound, bound + 1):
        for b in range(-bound, bound + 1):
            if opi * GaussInt(a, b) == z:
                witness = GaussInt(a, b)
    assert (witness is not None) == divisible_by_one_plus_i(z)


@given(gauss, gauss)
def test_euclidean_division(z, w):
    if w.is_zero():
        return
    q = z // w
    r = z % w
    assert q * w + r == z
    assert r.norm() < w.norm()


def test_gauss_gcd():
    g = gauss_gcd(GaussInt(2, 0), GaussInt(1, 1))
    assert g.norm() == 2  # (1+i) up to a unit


def test_gauss_rat_canonical_form():
    x = GaussRat(GaussInt(2, 4), 6)
    assert x.num == GaussInt(1, 2) and x.den == 3
    y = GaussRat(GaussInt(1, 0), -2)
    assert y.den == 2 and y.num == GaussInt(-1, 0)
    assert GaussRat(GaussInt(3, 3), 3) == GaussRat(GaussInt(1, 1), 1)


@given(gauss_rat, gauss_rat, gauss_rat)
def test_gauss_rat_field_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    if not b.is_zero():
        assert (a / b) * b == a


def test_ext_scalar_uniqueness():
    # a + b sqrt2 = 0 implies a = b = 0
    x = ExtScalar(GaussRat(GaussInt(1, 1), 2), GaussRat(GaussInt(-1, 0), 3))
    assert not x.is_zero()
    assert ExtScalar(0, 0).is_zero()


@given(ext, ext, ext)
@settings(max_examples=60)
def test_ext_scalar_ring_axioms(x, y, z):
    assert (x + y) * z == x * z + y * z
    assert (x * y) * z == x * (y * z)


@given(ext, ext)
@settings(max_examples=60)
def test_ext_scalar_division(x, y):
    if y.is_zero():
        return
    assert (x / y) * y == x


def test_ext_multiplication_rule():
    s = ExtScalar.sqrt2()
    assert s * s == ExtScalar(2, 0)
    x = ExtScalar(1, 1)   # 1 + sqrt2
    y = ExtScalar(3, -2)  # 3 - 2 sqrt2
    # (1+s)(3-2s) = 3 - 2s + 3s - 2*2 = -1 + s
    assert x * y == ExtScalar(-1, 1)


def test_ext_sqrt():
    assert ext_sqrt(Fraction(4)) == ExtScalar(2, 0)
    assert ext_sqrt(Fraction(2)) == ExtScalar.sqrt2()
    assert ext_sqrt(Fraction(8)) == ExtScalar(0, 2)
    assert ext_sqrt(Fraction(1, 2)) == ExtScalar(0, Fraction(1, 2))
    with pytest.raises(ValueError):
        ext_sqrt(Fraction(3))


def test_solve_single_equation():
    # x (1 + sqrt2) = 3 + sqrt2, solved and verified by back-substitution
    a = ExtScalar(1, 1)
    b = ExtScalar(3, 1)
    sol = ext_solve_linear([[a]], [b])
    assert sol.consistent and sol.is_unique()
    x = sol.particular[0]
    assert x * a == b
    # (3 + s)(s - 1) = 3s - 3 + 2 - s = 2s - 1 and (1+s)(s-1) = 1
    assert x == ExtScalar(-1, 2)


def test_solve_identity_system():
    rhs = [ExtScalar(5, 1), ExtScalar(GaussRat(GaussInt(0, 2), 3), 0)]
    eye = [[ExtScalar(int(i == j), 0) for j in range(2)] for i in range(2)]
    sol = ext_solve_linear(eye, rhs)
    assert sol.consistent and sol.particular == rhs


def test_solve_inconsistent_is_a_result():
    sol = ext_solve_linear([[ExtScalar(1, 0)], [ExtScalar(1, 0)]],
                           [ExtScalar(1, 0), ExtScalar(2, 0)])
    assert not sol.consistent


def test_solve_underdetermined():
    sol = ext_solve_linear([[ExtScalar(1, 0), ExtScalar(1, 0)]],
                           [ExtScalar(3, 0)])
    assert sol.consistent and len(sol.homogeneous) == 1
    h = sol.homogeneous[0]
    assert h[0] + h[1] == ExtScalar(0)


def test_immutability():
    z = GaussInt(1, 2)
    with pytest.raises(AttributeError):
        z.re = 5


def test_json_encodings():
    assert GaussInt(3, -2).to_json() == [3, -2]
    assert GaussInt.from_json([3, -2]) == GaussInt(3, -2)
    r = GaussRat(GaussInt(1, 2), 3)
    assert r.to_json() == {"num": [1, 2], "den": 3}
    assert GaussRat.from_json(r.to_json()) == r
    x = ExtScalar(r, GaussRat(GaussInt(-1, 0), 2))
    assert x.to_json() == {"a": {"num": [1, 2], "den": 3},
                           "b": {"num": [-1, 0], "den": 2}}
    assert ExtScalar.from_json(x.to_json()) == x

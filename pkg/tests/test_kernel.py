import cmath
import math
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from fourq.kernel import CycNum, Poly, RatFun, cyc_to_complex, cyclotomic, cyclotomic_polynomial, euler_phi, poly_gcd
from fourq.kernel import linalg as la

small = st.integers(min_value=-6, max_value=6)


def cyc(n):
    return st.lists(small, min_size=n, max_size=n).map(lambda c: CycNum(n, c))


@settings(max_examples=60, deadline=None)
@given(cyc(12), cyc(12), cyc(12))
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a and a * b == b * a
    assert a - a == 0
    if not a.is_zero():
        assert a * a.inverse() == 1
        assert (b / a) * a == b


@settings(max_examples=40, deadline=None)
@given(cyc(10), cyc(10))
def test_galois_is_a_field_automorphism(a, b):
    for k in (3, 7, 9):
        assert (a * b).galois(k) == a.galois(k) * b.galois(k)
        assert (a + b).galois(k) == a.galois(k) + b.galois(k)


@settings(max_examples=40, deadline=None)
@given(cyc(6))
def test_lift_preserves_value_and_hash(a):
    b = a.lift(30)
    assert a == b
    assert hash(a) == hash(b)


@settings(max_examples=40, deadline=None)
@given(cyc(8))
def test_numeric_value_matches_power_basis(a):
    z = cmath.exp(2j * math.pi / 8)
    want = sum(float(c) * z**k for k, c in enumerate(a.coeffs))
    assert abs(complex(a) - want) < 1e-9


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6, 10, 12, 20, 26, 62])
def test_roots_of_unity(n):
    z = cyclotomic(n, 1)
    assert z**n == 1
    assert all(z**k != 1 for k in range(1, n))
    if n > 1:
        assert sum((z**k for k in range(n)), CycNum.from_rational(0, n)) == 0


@pytest.mark.parametrize("n", range(1, 40))
def test_cyclotomic_polynomial_matches_sympy(n):
    x = sympy.Symbol("x")
    want = sympy.Poly(sympy.cyclotomic_poly(n, x), x).all_coeffs()[::-1]
    assert list(cyclotomic_polynomial(n)) == [int(c) for c in want]
    assert len(cyclotomic_polynomial(n)) - 1 == euler_phi(n)


def test_rational_detection():
    z = cyclotomic(10, 1)
    assert (z + z**-1 + z**3 + z**-3).is_rational()
    assert (z + z**-1 + z**3 + z**-3).to_fraction() == 1
    assert not (z + z**-1).is_rational()


def test_cyc_to_complex_precision():
    z = cyc_to_complex(cyclotomic(7, 2), 40)
    assert abs(complex(z) - cmath.exp(4j * math.pi / 7)) < 1e-15


rat = st.fractions(min_value=-5, max_value=5, max_denominator=7)


def polys(max_deg=5):
    return st.lists(rat, min_size=1, max_size=max_deg + 1).map(Poly)


@settings(max_examples=60, deadline=None)
@given(polys(), polys(3))
def test_poly_division(a, b):
    if b.is_zero():
        return
    quo, rem = divmod(a, b)
    assert quo * b + rem == a
    assert rem.is_zero() or rem.degree < b.degree


@settings(max_examples=40, deadline=None)
@given(polys(3), polys(3), polys(2))
def test_poly_gcd_divides(a, b, c):
    if c.is_zero() or (a.is_zero() and b.is_zero()):
        return
    g = poly_gcd(a * c, b * c)
    assert ((a * c) % g).is_zero() and ((b * c) % g).is_zero()
    assert (g % c.monic()).is_zero()


def test_poly_gcd_known():
    x = Poly.gen()
    assert poly_gcd((x - 1) * (x - 2), (x - 1) * (x + 3)) == x - 1


def test_ratfun_normal_form_and_compose():
    x = RatFun.gen()
    f = (x * x - 1) / (x - 1)
    assert f == x + 1
    assert f.is_polynomial()
    g = 1 / x
    assert f.compose(g) == (1 + x) / x
    assert f(Fraction(3)) == 4


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(st.integers(-4, 4), min_size=4, max_size=4), min_size=3, max_size=4))
def test_linalg_against_sympy(rows):
    m = sympy.Matrix(rows)
    assert la.rank(rows) == m.rank()
    null = la.nullspace(rows, 4)
    assert len(null) == len(m.nullspace())
    for v in null:
        assert all(x == 0 for row in la.matmul(rows, [[c] for c in v]) for x in row)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(st.integers(-5, 5), min_size=3, max_size=3), min_size=3, max_size=3))
def test_det_and_inverse(rows):
    d = la.det(rows)
    assert d == sympy.Matrix(rows).det()
    if d != 0:
        assert la.matmul(la.inverse(rows), rows) == la.identity(3)

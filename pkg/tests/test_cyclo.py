import cmath

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from fermat_twists.cyclo import (
    CyclotomicInt,
    CycPolynomial,
    NonIntegralCoefficient,
    cyc_abs_square,
    cyc_mul,
    cyclotomic_polynomial,
    cycpoly_product,
    euler_phi,
    to_integer_poly,
)

ORDERS = [3, 4, 5, 6, 7, 8, 9, 12, 15]


def numeric(a: CyclotomicInt) -> complex:
    z = cmath.exp(2j * cmath.pi / a.m)
    return sum(c * z**i for i, c in enumerate(a.coeffs))


def elements(m):
    deg = euler_phi(m)
    return st.lists(st.integers(-50, 50), min_size=deg, max_size=deg).map(lambda c: CyclotomicInt(m, c))


@pytest.mark.parametrize("m", range(1, 31))
def test_cyclotomic_polynomial_matches_sympy(m):
    x = sympy.Symbol("x")
    expected = sympy.Poly(sympy.cyclotomic_poly(m, x), x).all_coeffs()[::-1]
    assert list(cyclotomic_polynomial(m)) == [int(c) for c in expected]


def test_mul_examples():
    z = CyclotomicInt.zeta(3)
    assert cyc_mul(z, z**2) == 1
    assert CyclotomicInt(3, [0, 1]) * CyclotomicInt(3, [-1, -1]) == CyclotomicInt(3, [1, 0])
    a = CyclotomicInt(3, [-56, -21])
    b = CyclotomicInt(3, [-35, 21])
    assert a * b == 2401
    assert a * 1 == a


def test_abs_square_examples():
    assert cyc_abs_square(CyclotomicInt(3, [-56, -21])) == 2401
    assert cyc_abs_square(CyclotomicInt.from_int(3, 49)) == 2401
    assert cyc_abs_square(CyclotomicInt(3)) == 0


@settings(max_examples=200, deadline=None)
@given(st.integers(-100, 100), st.integers(-100, 100))
def test_abs_square_norm_form_for_cube_roots(a, b):
    x = CyclotomicInt(3, [a, b])
    assert cyc_abs_square(x) == a * a - a * b + b * b


@pytest.mark.parametrize("m", ORDERS)
def test_ring_axioms(m):
    @settings(max_examples=120, deadline=None)
    @given(elements(m), elements(m), elements(m))
    def check(a, b, c):
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a * b == b * a
        assert a - a == 0
        assert (a + b) - b == a

    check()


@pytest.mark.parametrize("m", ORDERS)
def test_conjugation_is_an_involutive_ring_map(m):
    @settings(max_examples=100, deadline=None)
    @given(elements(m), elements(m))
    def check(a, b):
        assert (a * b).conj() == a.conj() * b.conj()
        assert (a + b).conj() == a.conj() + b.conj()
        assert a.conj().conj() == a
        assert a.abs_square().conj() == a.abs_square()

    check()


@pytest.mark.parametrize("m", [5, 7, 12])
def test_products_agree_with_complex_evaluation(m):
    @settings(max_examples=60, deadline=None)
    @given(elements(m), elements(m))
    def check(a, b):
        assert abs(numeric(a * b) - numeric(a) * numeric(b)) < 1e-6 * (1 + abs(numeric(a) * numeric(b)))
        assert abs(numeric(a.abs_square()) - abs(numeric(a)) ** 2) < 1e-6 * (1 + abs(numeric(a)) ** 2)

    check()


def test_zeta_powers_wrap():
    for m in ORDERS:
        z = CyclotomicInt.zeta(m)
        assert z**m == 1
        assert CyclotomicInt.zeta(m, -1) * z == 1
        assert sum((CyclotomicInt.zeta(m, k) for k in range(m)), CyclotomicInt(m)) == (1 if m == 1 else 0)


def test_str_rendering():
    assert str(CyclotomicInt(3, [-56, -21])) == "-56-21z"
    assert str(CyclotomicInt(3, [-35, 21])) == "-35+21z"
    assert str(CyclotomicInt(3, [49, 0])) == "49"
    assert str(CyclotomicInt(5, [0, 0, -1, 3])) == "-z^2+3z^3"
    assert str(CyclotomicInt(4)) == "0"


def test_json_round_trip():
    a = CyclotomicInt(12, [1, -2, 3, 4])
    assert CyclotomicInt.from_json(a.to_json()) == a


def test_mixed_orders_rejected():
    with pytest.raises(ValueError):
        CyclotomicInt.zeta(3) + CyclotomicInt.zeta(4)


def test_cycpoly_product_examples():
    z = CyclotomicInt.zeta(3)
    p = cycpoly_product([CycPolynomial.one_minus(z), CycPolynomial.one_minus(z**2),
                         CycPolynomial.one_minus(CyclotomicInt.from_int(3, 1))])
    assert to_integer_poly(p) == [1, 0, 0, -1]
    p = cycpoly_product([CycPolynomial.one_minus(CyclotomicInt(3, [-56, -21])),
                         CycPolynomial.one_minus(CyclotomicInt(3, [-35, 21]))])
    assert to_integer_poly(p) == [1, 91, 2401]
    assert to_integer_poly(cycpoly_product([], 3)) == [1]
    with pytest.raises(ValueError):
        cycpoly_product([])


def test_to_integer_poly_rejects_irrational():
    with pytest.raises(NonIntegralCoefficient):
        to_integer_poly(CycPolynomial.one_minus(CyclotomicInt.zeta(3)))
    assert to_integer_poly(CycPolynomial.one(5)) == [1]


def test_one_minus_higher_degree():
    p = CycPolynomial.one_minus(CyclotomicInt.from_int(3, 49), 4)
    assert p.degree == 4
    assert to_integer_poly(p) == [1, 0, 0, 0, -49]

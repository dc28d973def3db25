from fractions import Fraction

import pytest
import sympy

from bdjddr.artin_hasse import (
    CycloElem,
    CycloSeries,
    ah_coeffs,
    ah_mod_p,
    ah_rational_coeffs,
    cyclo_mul,
    cyclotomic_poly,
    dlog_mod_p,
    frobenius_exponent_series,
    is_p_integral,
    log_derivative_identity,
    twisted,
    verify_norm_identity,
)


def _sympy_coeffs(p, N):
    x = sympy.symbols("x")
    g = sum(x ** (p**m) / sympy.Integer(p**m) for m in range(N) if p**m < N)
    s = sympy.series(sympy.exp(g), x, 0, N).removeO()
    poly = sympy.Poly(s, x)
    return [Fraction(int(c.p), int(c.q)) for c in (poly.coeff_monomial(x**k) for k in range(N))]


@pytest.mark.parametrize("p", [2, 3, 5])
def test_coefficients_match_sympy(p):
    assert ah_rational_coeffs(p, 16) == _sympy_coeffs(p, 16)


def test_first_coefficients_p2():
    assert ah_rational_coeffs(2, 8) == [
        Fraction(1), Fraction(1), Fraction(1), Fraction(2, 3),
        Fraction(2, 3), Fraction(7, 15), Fraction(16, 45), Fraction(67, 315),
    ]


def test_cyclotomic_polynomials():
    assert cyclotomic_poly(2, 0) == (-1, 1)
    assert cyclotomic_poly(2, 1) == (1, 1)
    assert cyclotomic_poly(2, 2) == (1, 0, 1)
    assert cyclotomic_poly(3, 1) == (1, 1, 1)
    assert cyclotomic_poly(3, 2) == (1, 0, 0, 1, 0, 0, 1)


@pytest.mark.parametrize("p,n", [(2, 1), (2, 2), (3, 1), (3, 2), (5, 1)])
def test_roots_of_unity_arithmetic(p, n):
    z = CycloElem.zeta_power(p, n, 1)
    acc = CycloElem.rational(p, n, 1)
    total = CycloElem.rational(p, n, 0)
    for _ in range(p**n):
        total = total + acc
        acc = acc * z
    assert acc == CycloElem.rational(p, n, 1)
    assert total.is_zero()


@pytest.mark.parametrize("p,n", [(2, 1), (2, 2), (3, 1), (3, 2)])
def test_norm_identity(p, n):
    assert verify_norm_identity(p, n, 30)


def test_norm_identity_negative_control():
    # dropping one factor must break the identity
    p, n, N = 3, 1, 12
    lhs = CycloSeries.one(p, n, N)
    for k in range(1, p**n):
        lhs = cyclo_mul(lhs, twisted(p, n, N, k))
    c = ah_rational_coeffs(p, N)
    rhs = CycloSeries(p, n, N, [c[i // 3] if i % 3 == 0 else 0 for i in range(N)])
    assert lhs != rhs


def test_trivial_truncation():
    assert verify_norm_identity(2, 1, 1)
    assert ah_coeffs(2, 1).coeffs == (CycloElem.rational(2, 0, 1),)
    with pytest.raises(ValueError):
        ah_coeffs(2, 0)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_integrality_and_log_derivative(p):
    assert is_p_integral(p, 50)
    assert log_derivative_identity(p, 50)
    assert dlog_mod_p(ah_mod_p(p, 50), p) == frobenius_exponent_series(p, 49)


def test_dlog_mod_p_needs_unit_constant():
    with pytest.raises(ValueError):
        dlog_mod_p([0, 1, 1], 3)

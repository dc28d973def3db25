import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_irreducible_p, gf_mul, gf_rem

from bdjddr.gf import (
    FieldError,
    FieldMismatchError,
    arith,
    divisors,
    element_of_order,
    field_make,
    frobenius,
    is_irreducible,
    is_prime,
    mult_order,
    prime_factors,
    roots_of_unity_field,
    trace_to_prime,
)

FIELDS = [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1), (5, 2), (7, 2)]


def _elem(draw, F):
    return F.from_coeffs(draw(st.lists(st.integers(0, F.p - 1), min_size=F.e, max_size=F.e)))


@st.composite
def field_and_pair(draw):
    F = field_make(*draw(st.sampled_from(FIELDS)))
    return F, _elem(draw, F), _elem(draw, F)


def _sympy_product(F, x, y):
    # galoistools wants high-degree-first coefficient lists
    hi = lambda c: [int(v) for v in reversed(c)]
    prod = gf_rem(gf_mul(hi(x.coeffs), hi(y.coeffs), F.p, ZZ), hi(F.modulus), F.p, ZZ)
    out = [int(v) for v in reversed(prod)]
    return tuple(out + [0] * (F.e - len(out)))


def test_number_helpers():
    assert [n for n in range(20) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19]
    assert prime_factors(360) == [2, 3, 5]
    assert divisors(12) == [1, 2, 3, 4, 6, 12]


@pytest.mark.parametrize("p,e", FIELDS + [(2, 4), (3, 3), (5, 3)])
def test_default_modulus_is_irreducible(p, e):
    F = field_make(p, e)
    assert gf_irreducible_p([int(c) for c in reversed(F.modulus)], p, ZZ)
    assert is_irreducible(list(F.modulus), p)
    assert len(F.modulus) == e + 1 and F.modulus[-1] == 1


def test_irreducibility_matches_sympy_on_all_small_monics():
    for p, e in [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3)]:
        for k in range(p**e):
            low = [(k // p**i) % p for i in range(e)]
            m = low + [1]
            assert is_irreducible(m, p) == gf_irreducible_p(list(reversed(m)), p, ZZ), m


@settings(max_examples=200, deadline=None)
@given(field_and_pair())
def test_multiplication_matches_sympy(data):
    F, x, y = data
    assert (x * y).coeffs == _sympy_product(F, x, y)


@settings(max_examples=200, deadline=None)
@given(field_and_pair())
def test_field_axioms(data):
    F, x, y = data
    assert x + y == y + x
    assert x * y == y * x
    assert (x - y) + y == x
    if not y.is_zero():
        assert (x / y) * y == x
        assert y * y.inverse() == 1
        assert y**-2 * y**2 == 1
    assert x ** (F.order - 1) == (0 if x.is_zero() else 1)


@settings(max_examples=100, deadline=None)
@given(field_and_pair())
def test_frobenius_is_a_field_automorphism_of_order_e(data):
    F, x, y = data
    assert frobenius(x + y) == frobenius(x) + frobenius(y)
    assert frobenius(x * y) == frobenius(x) * frobenius(y)
    assert frobenius(x, F.e) == x
    assert frobenius(x) == x**F.p
    t = trace_to_prime(x)
    assert frobenius(t) == t


def test_arith_dispatch():
    F = field_make(3, 2)
    x, y = F.gen, F.from_int(2)
    assert arith(x, y, "add") == x + y
    assert arith(x, y, "mul") == x * y
    assert arith(x, y, "sub") == x - y
    assert arith(x, y, "div") == x / y
    assert arith(x, 5, "pow") == x**5
    with pytest.raises(ValueError):
        arith(x, y, "xor")


def test_zero_has_no_inverse():
    with pytest.raises(ZeroDivisionError):
        field_make(5).zero.inverse()


def test_mixing_fields_is_rejected():
    with pytest.raises(FieldMismatchError):
        field_make(3, 2).one + field_make(3, 1).one
    with pytest.raises(FieldMismatchError):
        field_make(3).one + field_make(5).one


def test_bad_field_parameters():
    with pytest.raises(FieldError):
        field_make(4)
    with pytest.raises(FieldError):
        field_make(2, 2, [1, 0, 1])  # t^2 + 1 = (t + 1)^2
    with pytest.raises(FieldError):
        field_make(2, 0)


def test_explicit_modulus():
    F = field_make(2, 2, [1, 1, 1])
    assert F.gen**3 == 1 and F.gen != 1
    assert F.to_json() == {"p": 2, "e": 2, "modulus": [1, 1, 1]}
    assert F.gen.to_json() == [0, 1]


@pytest.mark.parametrize("p,d,e", [(2, 1, 1), (2, 3, 2), (3, 2, 1), (5, 3, 2), (3, 4, 2), (3, 6, 1), (7, 3, 1)])
def test_roots_of_unity_field(p, d, e):
    F = roots_of_unity_field(p, d)
    assert F.e == e
    roots = [x for x in F.elements() if not x.is_zero() and x**d == 1]
    # all d'-th roots of unity, d' the prime-to-p part of d
    dp = d
    while dp % p == 0:
        dp //= p
    assert len(roots) == dp


@pytest.mark.parametrize("p,e", [(2, 2), (3, 2), (5, 2), (2, 3)])
def test_element_of_order(p, e):
    F = field_make(p, e)
    for n in divisors(F.order - 1):
        x = element_of_order(F, n)
        assert mult_order(x) == n
    with pytest.raises(FieldError):
        element_of_order(F, F.order)

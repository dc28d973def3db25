"""Finite fields F_{p^e} realized as F_p[t]/(modulus).

Elements are immutable and carry a reference to their field. Mixing
elements of different fields raises ``FieldMismatchError``; plain Python
ints are accepted as elements of the prime subfield.
"""
from __future__ import annotations

import itertools
from functools import lru_cache


class FieldError(ValueError):
    pass


class FieldMismatchError(FieldError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    k = 3
    while k * k <= n:
        if n % k == 0:
            return False
        k += 2
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    k = 2
    while k * k <= n:
        if n % k == 0:
            out.append(k)
            while n % k == 0:
                n //= k
        k += 1
    if n > 1:
        out.append(n)
    return out


def divisors(n: int) -> list[int]:
    return [k for k in range(1, n + 1) if n % k == 0]


# --- dense polynomials over F_p, coefficient lists low degree first ---

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: list[int], m: list[int], p: int) -> list[int]:
    a = _trim([c % p for c in a])
    dm = len(m) - 1
    inv_lead = pow(m[-1], p - 2, p)
    while len(a) - 1 >= dm:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - dm
        for k, mk in enumerate(m):
            a[shift + k] = (a[shift + k] - c * mk) % p
        _trim(a)
    return a


def _poly_mul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return [c % p for c in out]


def _poly_sub(a: list[int], b: list[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    a = a + [0] * (n - len(a))
    b = b + [0] * (n - len(b))
    return _trim([(x - y) % p for x, y in zip(a, b)])


def _poly_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _poly_mod(a, b, p)
    if not a:
        return a
    inv = pow(a[-1], p - 2, p)
    return [c * inv % p for c in a]


def _x_pow_mod(k: int, m: list[int], p: int) -> list[int]:
    """x^k mod m by square-and-multiply."""
    result = [1]
    base = _poly_mod([0, 1], m, p)
    while k:
        if k & 1:
            result = _poly_mod(_poly_mul(result, base, p), m, p)
        base = _poly_mod(_poly_mul(base, base, p), m, p)
        k >>= 1
    return result


def is_irreducible(modulus: list[int], p: int) -> bool:
    """Monic ``modulus`` of degree e is irreducible over F_p iff
    x^{p^e} = x mod modulus and gcd(x^{p^d} - x, modulus) = 1 for every
    proper divisor d of e."""
    m = _trim([c % p for c in modulus])
    e = len(m) - 1
    if e < 1:
        return False
    x = [0, 1]
    if _poly_sub(_x_pow_mod(p**e, m, p), _poly_mod(x, m, p), p):
        return False
    for d in divisors(e)[:-1]:
        g = _poly_gcd(m, _poly_sub(_x_pow_mod(p**d, m, p), x, p), p)
        if len(g) > 1:
            return False
    return True


@lru_cache(maxsize=None)
def _default_modulus(p: int, e: int) -> tuple[int, ...]:
    # lexicographic in (c_0, ..., c_{e-1}); the monic lead is implicit
    for low in itertools.product(range(p), repeat=e):
        cand = list(low) + [1]
        if is_irreducible(cand, p):
            return tuple(cand)
    raise AssertionError(f"no irreducible of degree {e} over F_{p}")


class FieldDesc:
    """The field F_{p^e} = F_p[t]/(modulus)."""

    __slots__ = ("p", "e", "modulus", "order", "_zero", "_one")

    def __init__(self, p: int, e: int, modulus: tuple[int, ...]):
        self.p = p
        self.e = e
        self.modulus = modulus
        self.order = p**e
        self._zero = FFElem(self, (0,) * e)
        self._one = FFElem(self, (1,) + (0,) * (e - 1))

    def __eq__(self, other):
        return (
            isinstance(other, FieldDesc)
            and self.p == other.p
            and self.modulus == other.modulus
        )

    def __hash__(self):
        return hash((self.p, self.modulus))

    def __repr__(self):
        return f"FieldDesc(p={self.p}, e={self.e}, modulus={list(self.modulus)})"

    @property
    def zero(self) -> FFElem:
        return self._zero

    @property
    def one(self) -> FFElem:
        return self._one

    @property
    def gen(self) -> FFElem:
        """The class of t."""
        return self.from_coeffs([0, 1])

    def from_int(self, n: int) -> FFElem:
        return FFElem(self, (n % self.p,) + (0,) * (self.e - 1))

    def from_coeffs(self, coeffs) -> FFElem:
        red = _poly_mod(list(coeffs), list(self.modulus), self.p)
        return FFElem(self, tuple(red) + (0,) * (self.e - len(red)))

    def elements(self):
        for c in itertools.product(range(self.p), repeat=self.e):
            yield FFElem(self, c)

    def coerce(self, x) -> FFElem:
        if isinstance(x, FFElem):
            if x.field is not self and x.field != self:
                raise FieldMismatchError(f"{x.field!r} vs {self!r}")
            return x
        if isinstance(x, int):
            return self.from_int(x)
        raise TypeError(f"cannot coerce {type(x).__name__} into {self!r}")

    def to_json(self) -> dict:
        return {"p": self.p, "e": self.e, "modulus": list(self.modulus)}


def field_make(p: int, e: int = 1, modulus=None) -> FieldDesc:
    if not is_prime(p):
        raise FieldError(f"{p} is not prime")
    if e < 1:
        raise FieldError(f"extension degree must be >= 1, got {e}")
    if modulus is None:
        return _cached_field(p, e)
    m = _trim([c % p for c in modulus])
    if len(m) - 1 != e:
        raise FieldError(f"modulus has degree {len(m) - 1}, expected {e}")
    if m[-1] != 1:
        raise FieldError("modulus must be monic")
    if not is_irreducible(m, p):
        raise FieldError(f"modulus {m} is reducible over F_{p}")
    return FieldDesc(p, e, tuple(m))


@lru_cache(maxsize=None)
def _cached_field(p: int, e: int) -> FieldDesc:
    return FieldDesc(p, e, _default_modulus(p, e))


class FFElem:
    __slots__ = ("field", "coeffs")

    def __init__(self, field: FieldDesc, coeffs: tuple[int, ...]):
        self.field = field
        self.coeffs = coeffs

    def _other(self, y) -> FFElem:
        return self.field.coerce(y)

    def __add__(self, y):
        y = self._other(y)
        p = self.field.p
        return FFElem(self.field, tuple((a + b) % p for a, b in zip(self.coeffs, y.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        p = self.field.p
        return FFElem(self.field, tuple(-a % p for a in self.coeffs))

    def __sub__(self, y):
        return self + (-self._other(y))

    def __rsub__(self, y):
        return self._other(y) - self

    def __mul__(self, y):
        y = self._other(y)
        F = self.field
        if F.e == 1:
            return FFElem(F, ((self.coeffs[0] * y.coeffs[0]) % F.p,))
        return F.from_coeffs(_poly_mul(list(self.coeffs), list(y.coeffs), F.p))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.field.one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inverse(self) -> FFElem:
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in a finite field")
        return self ** (self.field.order - 2)

    def __truediv__(self, y):
        return self * self._other(y).inverse()

    def __rtruediv__(self, y):
        return self._other(y) * self.inverse()

    def __eq__(self, y):
        if isinstance(y, int):
            y = self.field.from_int(y)
        if not isinstance(y, FFElem):
            return NotImplemented
        return self.field == y.field and self.coeffs == y.coeffs

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def __bool__(self):
        return any(self.coeffs)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __repr__(self):
        if self.field.e == 1:
            return str(self.coeffs[0])
        terms = [
            (str(c) if k == 0 else (f"{c}*t" if k == 1 else f"{c}*t^{k}")).replace("1*t", "t")
            for k, c in enumerate(self.coeffs)
            if c
        ]
        return " + ".join(reversed(terms)) or "0"

    def to_json(self) -> list[int]:
        return list(self.coeffs)


def arith(x: FFElem, y, kind: str) -> FFElem:
    if kind == "add":
        return x + y
    if kind == "sub":
        return x - y
    if kind == "mul":
        return x * y
    if kind == "div":
        return x / y
    if kind == "pow":
        return x**y
    raise ValueError(f"unknown operation {kind!r}")


def frobenius(x: FFElem, m: int = 1) -> FFElem:
    """x^{p^m}, by m successive p-th powers."""
    if m < 0:
        raise ValueError("iteration count must be >= 0")
    p = x.field.p
    for _ in range(m):
        x = x**p
    return x


def trace_to_prime(x: FFElem) -> FFElem:
    total = x.field.zero
    y = x
    for _ in range(x.field.e):
        total = total + y
        y = frobenius(y)
    return total


def mult_order(x: FFElem) -> int:
    if x.is_zero():
        raise ZeroDivisionError("multiplicative order of zero")
    n = x.field.order - 1
    for q in prime_factors(n):
        while n % q == 0 and x ** (n // q) == 1:
            n //= q
    return n


def roots_of_unity_field(p: int, d: int) -> FieldDesc:
    """Smallest F_{p^e} holding all d-th roots of unity of F̄_p."""
    prime_to_p = d
    while prime_to_p % p == 0:
        prime_to_p //= p
    e = 1
    while (p**e - 1) % prime_to_p:
        e += 1
    return field_make(p, e)


def element_of_order(F: FieldDesc, n: int) -> FFElem:
    """Deterministic element of exact multiplicative order n (first hit
    in coefficient order)."""
    if (F.order - 1) % n:
        raise FieldError(f"F_{F.order} has no element of order {n}")
    for x in F.elements():
        if not x.is_zero() and mult_order(x) == n:
            return x
    raise AssertionError("unreachable")

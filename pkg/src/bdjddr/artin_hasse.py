"""Exact checks on the Artin–Hasse exponential E(x) = exp(Σ_m x^{p^m}/p^m).

Coefficients live in Q(ζ_{p^n}), stored as rational coefficient vectors
modulo the p^n-th cyclotomic polynomial. Level n = 0 is plain Q.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import factorial


@lru_cache(maxsize=None)
def cyclotomic_poly(p: int, n: int) -> tuple[int, ...]:
    """Coefficients (low first) of Φ_{p^n}; Φ_1 = x - 1."""
    if n == 0:
        return (-1, 1)
    step = p ** (n - 1)
    out = [0] * ((p - 1) * step + 1)
    for k in range(p):
        out[k * step] = 1
    return tuple(out)


def _degree(p: int, n: int) -> int:
    return len(cyclotomic_poly(p, n)) - 1


class CycloElem:
    """Element of Q(ζ_{p^n}) in the power basis 1, ζ, ..., ζ^{φ(p^n)-1}."""

    __slots__ = ("p", "n", "c")

    def __init__(self, p: int, n: int, coeffs):
        self.p = p
        self.n = n
        self.c = _reduce(p, n, [Fraction(x) for x in coeffs])

    @classmethod
    def rational(cls, p: int, n: int, q) -> CycloElem:
        return cls(p, n, [q])

    @classmethod
    def zeta_power(cls, p: int, n: int, k: int) -> CycloElem:
        k %= p**n
        return cls(p, n, [0] * k + [1])

    def __add__(self, y: CycloElem) -> CycloElem:
        a, b = self.c, y.c
        m = max(len(a), len(b))
        a = a + (Fraction(0),) * (m - len(a))
        b = b + (Fraction(0),) * (m - len(b))
        return CycloElem(self.p, self.n, [x + z for x, z in zip(a, b)])

    def __mul__(self, y) -> CycloElem:
        if not isinstance(y, CycloElem):
            return CycloElem(self.p, self.n, [x * y for x in self.c])
        if not self.c or not y.c:
            return CycloElem(self.p, self.n, [])
        out = [Fraction(0)] * (len(self.c) + len(y.c) - 1)
        for i, x in enumerate(self.c):
            if x:
                for j, z in enumerate(y.c):
                    out[i + j] += x * z
        return CycloElem(self.p, self.n, out)

    def is_zero(self) -> bool:
        return not self.c

    def __eq__(self, y):
        return isinstance(y, CycloElem) and (self.p, self.n, self.c) == (y.p, y.n, y.c)

    def __hash__(self):
        return hash((self.p, self.n, self.c))

    def __repr__(self):
        return f"CycloElem({[str(x) for x in self.c]})"


def _reduce(p: int, n: int, coeffs: list[Fraction]) -> tuple[Fraction, ...]:
    phi = cyclotomic_poly(p, n)
    deg = len(phi) - 1
    a = list(coeffs)
    # Φ is monic: subtract top * x^shift * Φ
    for top in range(len(a) - 1, deg - 1, -1):
        c = a[top]
        if c:
            shift = top - deg
            for k, pk in enumerate(phi):
                if pk:
                    a[shift + k] -= c * pk
    a = a[:deg]
    while a and a[-1] == 0:
        a.pop()
    return tuple(a)


class CycloSeries:
    """Power series truncated mod t^trunc with Q(ζ_{p^n}) coefficients."""

    __slots__ = ("p", "n", "trunc", "coeffs")

    def __init__(self, p: int, n: int, trunc: int, coeffs):
        coeffs = list(coeffs)[:trunc]
        zero = CycloElem(p, n, [])
        coeffs += [zero] * (trunc - len(coeffs))
        self.p = p
        self.n = n
        self.trunc = trunc
        self.coeffs = tuple(
            c if isinstance(c, CycloElem) else CycloElem.rational(p, n, c) for c in coeffs
        )

    @classmethod
    def one(cls, p: int, n: int, trunc: int) -> CycloSeries:
        return cls(p, n, trunc, [1])

    def __eq__(self, y):
        return isinstance(y, CycloSeries) and (self.p, self.n, self.trunc, self.coeffs) == (
            y.p,
            y.n,
            y.trunc,
            y.coeffs,
        )

    def __mul__(self, y: CycloSeries) -> CycloSeries:
        return cyclo_mul(self, y)

    def __repr__(self):
        return f"CycloSeries(p={self.p}, n={self.n}, trunc={self.trunc}, {list(self.coeffs)})"


def cyclo_mul(x: CycloSeries, y: CycloSeries) -> CycloSeries:
    if (x.p, x.n, x.trunc) != (y.p, y.n, y.trunc):
        raise ValueError("level/truncation mismatch")
    N = x.trunc
    out = [CycloElem(x.p, x.n, []) for _ in range(N)]
    for i, a in enumerate(x.coeffs):
        if a.is_zero():
            continue
        for j in range(N - i):
            b = y.coeffs[j]
            if not b.is_zero():
                out[i + j] = out[i + j] + a * b
    return CycloSeries(x.p, x.n, N, out)


@lru_cache(maxsize=None)
def _ah_rationals(p: int, N: int) -> tuple[Fraction, ...]:
    # exp(g) = Σ_k g^k / k!, g = Σ_m x^{p^m}/p^m has no constant term so
    # g^k vanishes mod x^N once k >= N
    g = [Fraction(0)] * N
    pm = 1
    while pm < N:
        g[pm] += Fraction(1, pm)
        pm *= p
    result = [Fraction(0)] * N
    power = [Fraction(0)] * N
    power[0] = Fraction(1)
    for k in range(N):
        for i in range(N):
            result[i] += power[i] / factorial(k)
        nxt = [Fraction(0)] * N
        for i, a in enumerate(power):
            if a:
                for j in range(1, N - i):
                    if g[j]:
                        nxt[i + j] += a * g[j]
        power = nxt
    return tuple(result)


def ah_coeffs(p: int, N: int) -> CycloSeries:
    """First N coefficients of E(x), as a level-0 (rational) CycloSeries."""
    if N < 1:
        raise ValueError("truncation must be >= 1")
    return CycloSeries(p, 0, N, _ah_rationals(p, N))


def ah_rational_coeffs(p: int, N: int) -> list[Fraction]:
    return list(_ah_rationals(p, N))


def twisted(p: int, n: int, N: int, k: int) -> CycloSeries:
    """E(t·ζ^k) in Q(ζ_{p^n})[[t]] mod t^N."""
    c = _ah_rationals(p, N)
    return CycloSeries(
        p, n, N, [CycloElem.zeta_power(p, n, k * i) * c[i] for i in range(N)]
    )


def verify_norm_identity(p: int, n: int, N: int) -> bool:
    """Whether Π_{k=0}^{p^n-1} E(tζ^k) = E(t^{p^n}) mod t^N, exactly."""
    lhs = CycloSeries.one(p, n, N)
    for k in range(p**n):
        lhs = cyclo_mul(lhs, twisted(p, n, N, k))
    c = _ah_rationals(p, N)
    q = p**n
    rhs = CycloSeries(p, n, N, [c[i // q] if i % q == 0 else 0 for i in range(N)])
    return lhs == rhs


def is_p_integral(p: int, N: int) -> bool:
    return all(c.denominator % p for c in _ah_rationals(p, N))


def log_derivative_identity(p: int, N: int) -> bool:
    """E'(x) = E(x)·Σ_m x^{p^m - 1} mod x^{N-1}, over Q."""
    c = _ah_rationals(p, N)
    deriv = [i * c[i] for i in range(1, N)]
    L = N - 1
    s = [Fraction(0)] * L
    pm = 1
    while pm - 1 < L:
        s[pm - 1] = Fraction(1)
        pm *= p
    prod = [sum((c[i] * s[k - i] for i in range(k + 1)), Fraction(0)) for k in range(L)]
    return prod == deriv


def ah_mod_p(p: int, N: int) -> list[int]:
    """E(x) mod p, coefficient list over F_p."""
    out = []
    for i, c in enumerate(_ah_rationals(p, N)):
        if c.denominator % p == 0:
            raise ArithmeticError(f"coefficient {i} of E has denominator divisible by {p}")
        out.append(c.numerator * pow(c.denominator, -1, p) % p)
    return out


def dlog_mod_p(coeffs: list[int], p: int) -> list[int]:
    """f'/f over F_p, mod x^{len-1}; needs f(0) = 1."""
    if coeffs[0] % p != 1:
        raise ValueError("series must have constant term 1")
    L = len(coeffs) - 1
    deriv = [(i * coeffs[i]) % p for i in range(1, L + 1)]
    q = [0] * L
    for k in range(L):
        acc = deriv[k] - sum(coeffs[i] * q[k - i] for i in range(1, k + 1))
        q[k] = acc % p
    return q


def frobenius_exponent_series(p: int, L: int) -> list[int]:
    """Σ_m x^{p^m - 1} mod x^L over F_p."""
    out = [0] * L
    pm = 1
    while pm - 1 < L:
        out[pm - 1] = 1
        pm *= p
    return out

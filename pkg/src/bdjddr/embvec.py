"""l ⊗ F̄_p in product coordinates.

An element is a vector of length f·d over one concrete field, entry i
belonging to the embedding σ̃_i of l = F_{p^{fd}}. The Frobenius φ⊗id acts
by the cyclic shift (y_i) -> (y_{i-1}) and does nothing to the entries.
"""
from __future__ import annotations

from .gf import FFElem, FieldDesc, FieldMismatchError, mult_order


class ShapeError(ValueError):
    pass


class EmbVector:
    __slots__ = ("f", "d", "field", "comps")

    def __init__(self, f: int, d: int, comps, field: FieldDesc | None = None):
        comps = tuple(comps)
        if len(comps) != f * d:
            raise ShapeError(f"expected {f * d} components, got {len(comps)}")
        if field is None:
            if not comps:
                raise ShapeError("empty vector needs an explicit field")
            field = comps[0].field
        comps = tuple(field.coerce(c) for c in comps)
        self.f = f
        self.d = d
        self.field = field
        self.comps = comps

    @classmethod
    def zero(cls, f: int, d: int, field: FieldDesc) -> EmbVector:
        return cls(f, d, [field.zero] * (f * d), field)

    @classmethod
    def ones(cls, f: int, d: int, field: FieldDesc) -> EmbVector:
        return cls(f, d, [field.one] * (f * d), field)

    @classmethod
    def indicator(cls, s: int, f: int, d: int, field: FieldDesc) -> EmbVector:
        """1 on the indices i ≡ s (mod f), 0 elsewhere."""
        return cls(f, d, [field.one if i % f == s % f else field.zero for i in range(f * d)], field)

    @property
    def n(self) -> int:
        return self.f * self.d

    @property
    def shape(self) -> tuple:
        return (self.f, self.d, self.field)

    def _check(self, w: EmbVector) -> None:
        if (self.f, self.d) != (w.f, w.d):
            raise ShapeError(f"shape ({self.f},{self.d}) vs ({w.f},{w.d})")
        if self.field != w.field:
            raise FieldMismatchError(f"{self.field!r} vs {w.field!r}")

    def __add__(self, w: EmbVector) -> EmbVector:
        self._check(w)
        return EmbVector(self.f, self.d, [x + y for x, y in zip(self.comps, w.comps)], self.field)

    def __sub__(self, w: EmbVector) -> EmbVector:
        self._check(w)
        return EmbVector(self.f, self.d, [x - y for x, y in zip(self.comps, w.comps)], self.field)

    def __neg__(self) -> EmbVector:
        return EmbVector(self.f, self.d, [-x for x in self.comps], self.field)

    def __mul__(self, w) -> EmbVector:
        if isinstance(w, EmbVector):
            self._check(w)
            return EmbVector(self.f, self.d, [x * y for x, y in zip(self.comps, w.comps)], self.field)
        c = self.field.coerce(w)
        return EmbVector(self.f, self.d, [c * x for x in self.comps], self.field)

    def __rmul__(self, c) -> EmbVector:
        return self * c

    def __eq__(self, w):
        if not isinstance(w, EmbVector):
            return NotImplemented
        return (self.f, self.d, self.field, self.comps) == (w.f, w.d, w.field, w.comps)

    def __hash__(self):
        return hash((self.f, self.d, self.comps))

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.comps)

    def support(self) -> list[int]:
        return [i for i, c in enumerate(self.comps) if not c.is_zero()]

    def __repr__(self):
        return f"EmbVector({list(self.comps)})"


def frobshift(v: EmbVector, m: int = 1) -> EmbVector:
    """(φ⊗id)^m: entry i of the result is entry (i - m) mod f·d of v."""
    if m < 0:
        raise ValueError("iteration count must be >= 0")
    n = v.n
    if n == 0:
        return v
    return EmbVector(v.f, v.d, [v.comps[(i - m) % n] for i in range(n)], v.field)


def _lambda(s: int, a: FFElem, f: int, d: int, sign: int) -> EmbVector:
    if a.is_zero():
        raise ValueError("a must be nonzero")
    if d % mult_order(a):
        raise ValueError(f"order of a ({mult_order(a)}) does not divide d={d}")
    F = a.field
    comps = [F.zero] * (f * d)
    step = a ** sign
    c = F.one
    for t in range(d):
        comps[s % f + t * f] = c
        c = c * step
    return EmbVector(f, d, comps, F)


def lambda_mu(s: int, a: FFElem, f: int, d: int) -> EmbVector:
    """Entry a^{-t} at index s + t·f, zero off the class of s. Shifting by f
    multiplies it by a."""
    return _lambda(s, a, f, d, -1)


def lambda_mu_inv(s: int, a: FFElem, f: int, d: int) -> EmbVector:
    """Entry a^{t} at index s + t·f; shifting by f multiplies it by a^{-1}."""
    return _lambda(s, a, f, d, 1)


def pointwise(v: EmbVector, w: EmbVector, kind: str) -> EmbVector:
    if kind == "add":
        return v + w
    if kind == "mul":
        return v * w
    raise ValueError(f"unknown operation {kind!r}")


def trace_sum(v: EmbVector) -> FFElem:
    total = v.field.zero
    for c in v.comps:
        total = total + c
    return total

"""Sparse Laurent polynomials in u with EmbVector coefficients."""
from __future__ import annotations

from .embvec import EmbVector, ShapeError, frobshift

# r·p^m beyond this is far outside any desk-scale instance
EXPONENT_LIMIT = 1 << 62


class SparseLaurent:
    """Finite sum Σ c_k u^k; zero coefficients are never stored."""

    __slots__ = ("f", "d", "field", "terms")

    def __init__(self, f: int, d: int, field, terms=None):
        self.f = f
        self.d = d
        self.field = field
        clean = {}
        for k, c in (terms or {}).items():
            if (c.f, c.d) != (f, d) or c.field != field:
                raise ShapeError("coefficient shape does not match series shape")
            if not c.is_zero():
                clean[int(k)] = c
        self.terms = dict(sorted(clean.items()))

    @classmethod
    def monomial(cls, c: EmbVector, k: int) -> SparseLaurent:
        return cls(c.f, c.d, c.field, {k: c})

    @property
    def shape(self) -> tuple:
        return (self.f, self.d, self.field)

    def _check(self, y: SparseLaurent) -> None:
        if (self.f, self.d) != (y.f, y.d) or self.field != y.field:
            raise ShapeError("series shapes differ")

    def __add__(self, y: SparseLaurent) -> SparseLaurent:
        self._check(y)
        terms = dict(self.terms)
        for k, c in y.terms.items():
            terms[k] = terms[k] + c if k in terms else c
        return SparseLaurent(self.f, self.d, self.field, terms)

    def __neg__(self) -> SparseLaurent:
        return SparseLaurent(self.f, self.d, self.field, {k: -c for k, c in self.terms.items()})

    def __sub__(self, y: SparseLaurent) -> SparseLaurent:
        return self + (-y)

    def __mul__(self, y) -> SparseLaurent:
        if not isinstance(y, SparseLaurent):
            return self.scale(y)
        self._check(y)
        terms: dict[int, EmbVector] = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in y.terms.items():
                c = c1 * c2
                k = k1 + k2
                terms[k] = terms[k] + c if k in terms else c
        return SparseLaurent(self.f, self.d, self.field, terms)

    def scale(self, c) -> SparseLaurent:
        """Multiply every coefficient by c (a scalar or an EmbVector)."""
        return SparseLaurent(self.f, self.d, self.field, {k: v * c for k, v in self.terms.items()})

    def shift(self, n: int) -> SparseLaurent:
        """Multiply by u^n."""
        return SparseLaurent(self.f, self.d, self.field, {k + n: c for k, c in self.terms.items()})

    def phi(self) -> SparseLaurent:
        """Frobenius: u -> u^p on the variable, index shift on coefficients."""
        p = self.field.p
        return SparseLaurent(
            self.f, self.d, self.field, {p * k: frobshift(c, 1) for k, c in self.terms.items()}
        )

    def substitute(self, n: int) -> SparseLaurent:
        """u -> u^n."""
        return SparseLaurent(self.f, self.d, self.field, {n * k: c for k, c in self.terms.items()})

    def coeff(self, k: int) -> EmbVector:
        return self.terms.get(k) or EmbVector.zero(self.f, self.d, self.field)

    def is_zero(self) -> bool:
        return not self.terms

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def __eq__(self, y):
        if not isinstance(y, SparseLaurent):
            return NotImplemented
        return self.shape == y.shape and self.terms == y.terms

    def __hash__(self):
        return hash((self.f, self.d, tuple(self.terms.items())))

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"{c!r}*u^{k}" for k, c in self.terms.items())


def l_arith(x: SparseLaurent, y, kind: str) -> SparseLaurent:
    if kind == "add":
        return x + y
    if kind == "mul":
        return x * y
    if kind == "scale":
        return x.scale(y)
    raise ValueError(f"unknown operation {kind!r}")


def residue(x: SparseLaurent) -> EmbVector:
    return x.coeff(-1)


def dlog_ah_unit(r: int, lam: EmbVector, m_max: int) -> SparseLaurent:
    """Truncated dlog of E(lam·u^r):

        Σ_{m=0}^{m_max} r · (φ⊗1)^m(lam) · u^{r p^m - 1}
    """
    if r < 1 or m_max < 0:
        raise ValueError("need r >= 1 and m_max >= 0")
    p = lam.field.p
    if r * p**m_max > EXPONENT_LIMIT:
        raise OverflowError(f"r·p^m_max = {r}·{p}^{m_max} exceeds the instance bound")
    scalar = lam.field.from_int(r)
    terms = {}
    shifted = lam
    for m in range(m_max + 1):
        terms[r * p**m - 1] = shifted * scalar
        shifted = frobshift(shifted, 1)
    return SparseLaurent(lam.f, lam.d, lam.field, terms)


def dlog_uniformizer(f: int, d: int, field) -> SparseLaurent:
    """dlog(u) = u^{-1}."""
    return SparseLaurent.monomial(EmbVector.ones(f, d, field), -1)


def lossless_m_max(r: int, p: int, target: int) -> int:
    """Least m with r·p^m > target, plus one. Only r·p^m = target can reach
    the residue when pairing against u^{-target}, so this cuts nothing."""
    m = 0
    while r * p**m <= target:
        m += 1
    return m + 1

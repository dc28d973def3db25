"""Rank-2 étale φ-modules given by one 2×2 matrix per embedding index.

``mats[i]`` is the matrix of φ: M_{i-1} -> M_i, columns holding the images
of e_{i-1}, f_{i-1} in the basis e_i, f_i. Entries are scalar Laurent
polynomials (SparseLaurent of shape f = d = 1).
"""
from __future__ import annotations

from dataclasses import dataclass

from .embvec import EmbVector
from .gf import FFElem, FieldDesc
from .series import SparseLaurent
from .weights import WeightInstance


class PhiModuleError(ValueError):
    pass


def scalar(field: FieldDesc, c, k: int = 0) -> SparseLaurent:
    """The scalar Laurent monomial c·u^k."""
    return SparseLaurent.monomial(EmbVector(1, 1, [field.coerce(c)], field), k)


def _zero(field: FieldDesc) -> SparseLaurent:
    return SparseLaurent(1, 1, field)


def _monomial_inverse(x: SparseLaurent) -> SparseLaurent:
    if not x.is_monomial():
        raise PhiModuleError(f"{x!r} is not a monomial")
    (k, c), = x.terms.items()
    return SparseLaurent.monomial(EmbVector(1, 1, [c.comps[0].inverse()], c.field), -k)


Matrix = tuple[tuple[SparseLaurent, SparseLaurent], tuple[SparseLaurent, SparseLaurent]]


def matmul(A: Matrix, B: Matrix) -> Matrix:
    return tuple(
        tuple(A[i][0] * B[0][j] + A[i][1] * B[1][j] for j in range(2)) for i in range(2)
    )


def det(A: Matrix) -> SparseLaurent:
    return A[0][0] * A[1][1] - A[0][1] * A[1][0]


@dataclass(frozen=True)
class PhiMatSeq:
    field: FieldDesc
    mats: tuple[Matrix, ...]

    @property
    def period(self) -> int:
        return len(self.mats)

    def is_etale(self) -> bool:
        return all(det(A).is_monomial() for A in self.mats)


def _h(inst: WeightInstance, i: int) -> int:
    return inst.r[i] if i in inst.J else 0


def build_bdj(inst: WeightInstance, x: dict[int, FFElem], x_extra: FFElem | None = None) -> PhiMatSeq:
    """Period-f matrices [[u^{r_i-h_i}, x_i], [0, (a)_i u^{h_i}]] with (a)_0 = a.

    ``x_extra`` is the coefficient of the additional u^p term allowed at i_0
    when χ is trivial.
    """
    F = inst.field
    for i, v in x.items():
        if i % inst.f not in inst.J and not F.coerce(v).is_zero():
            raise PhiModuleError(f"x_{i} must vanish for i outside J")
    if x_extra is not None and not F.coerce(x_extra).is_zero() and inst.i0 is None:
        raise PhiModuleError("the u^p term is only allowed when χ is trivial")
    mats = []
    for i in range(inst.f):
        h = _h(inst, i)
        upper = scalar(F, x.get(i, 0))
        if i == inst.i0 and x_extra is not None:
            upper = upper + scalar(F, x_extra, inst.p)
        lower = scalar(F, inst.a if i == 0 else 1, h)
        mats.append(((scalar(F, 1, inst.r[i] - h), upper), (_zero(F), lower)))
    return PhiMatSeq(F, tuple(mats))


def base_change_to_M(seq: PhiMatSeq, p: int, f: int, d: int) -> PhiMatSeq:
    """u -> u^{p^f-1} on every entry; the period becomes f·d, with the
    period-f data repeated (so (a)_i = a at every i ≡ 0 mod f)."""
    if seq.period != f:
        raise PhiModuleError(f"expected period f={f}, got {seq.period}")
    q = p**f - 1
    mats = []
    for i in range(f * d):
        A = seq.mats[i % f]
        mats.append(tuple(tuple(e.substitute(q) for e in row) for row in A))
    return PhiMatSeq(seq.field, tuple(mats))


def change_basis(seq: PhiMatSeq, D: list[tuple[SparseLaurent, SparseLaurent]]) -> PhiMatSeq:
    """New basis vectors D_i·(old basis) with D_i = diag of two monomials:
    the matrix at i becomes D_i^{-1} A_i φ(D_{i-1})."""
    n = seq.period
    if len(D) != n:
        raise PhiModuleError("one diagonal per index required")
    F = seq.field
    z = _zero(F)
    out = []
    for i in range(n):
        d0, d1 = D[i]
        p0, p1 = D[(i - 1) % n]
        inv = ((_monomial_inverse(d0), z), (z, _monomial_inverse(d1)))
        phi_prev = ((p0.phi(), z), (z, p1.phi()))
        out.append(matmul(matmul(inv, seq.mats[i]), phi_prev))
    return PhiMatSeq(F, tuple(out))


def normalizing_basis(inst: WeightInstance) -> list[tuple[SparseLaurent, SparseLaurent]]:
    """e'_i = u^{α_i} e_i, f'_i = a^{⌊i/f⌋} u^{β_i} f_i for 0 <= i < f·d."""
    F, f = inst.field, inst.f
    return [
        (scalar(F, 1, inst.alpha[i % f]), scalar(F, inst.a ** (i // f), inst.beta[i % f]))
        for i in range(f * inst.d)
    ]


def extract_as_class(seq: PhiMatSeq, f: int, d: int) -> list[tuple[EmbVector, int]]:
    """Upper-right entries of a unipotent sequence, gathered into
    Σ_k c_k u^k with c_k ∈ l⊗F̄_p (entry i of c_k read off the matrix at i);
    returned as (c_k, k) sorted by k."""
    F = seq.field
    if seq.period != f * d:
        raise PhiModuleError("period does not match f·d")
    one, zero = scalar(F, 1), _zero(F)
    by_exp: dict[int, list] = {}
    for i, A in enumerate(seq.mats):
        if A[0][0] != one or A[1][1] != one or A[1][0] != zero:
            raise PhiModuleError(f"matrix at index {i} is not unipotent upper-triangular")
        for k, c in A[0][1].terms.items():
            by_exp.setdefault(k, [F.zero] * (f * d))[i] = c.comps[0]
    return [(EmbVector(f, d, comps, F), k) for k, comps in sorted(by_exp.items())]


def replay(inst: WeightInstance) -> tuple[list[tuple[EmbVector, int]], list[str]]:
    """Run build -> base change -> normalizing change of basis with x_i = 1
    on J (and x'' = 1 when χ is trivial); return the extracted terms and
    any disagreement with the combinatorial ξ."""
    F, f, d, p = inst.field, inst.f, inst.d, inst.p
    x = {i: F.one for i in inst.J}
    extra = F.one if inst.i0 is not None else None
    seq = build_bdj(inst, x, extra)
    problems = []
    if not seq.is_etale():
        problems.append("built module is not étale")
    seq = base_change_to_M(seq, p, f, d)
    if not seq.is_etale():
        problems.append("base-changed module is not étale")
    seq = change_basis(seq, normalizing_basis(inst))
    if not seq.is_etale():
        problems.append("normalized module is not étale")
    try:
        terms = extract_as_class(seq, f, d)
    except PhiModuleError as exc:
        return [], problems + [str(exc)]

    expected: dict[int, set[int]] = {s: {-inst.xi[s]} for s in inst.J}
    if inst.i0 is not None:
        expected[inst.i0].add(p * inst.q - inst.xi[inst.i0])
    found: dict[int, set[int]] = {}
    for c, k in terms:
        for i in c.support():
            found.setdefault(i % f, set()).add(k)
        for s in {i % f for i in c.support()}:
            block = [c.comps[s + t * f] for t in range(d)]
            if any(b.is_zero() for b in block):
                problems.append(f"term u^{k} vanishes on part of the class of σ_{s}")
            elif any(block[t] != block[0] * inst.a**t for t in range(d)):
                problems.append(f"term u^{k} on σ_{s} is not a multiple of λ_(σ,μ^-1)")
    if found != expected:
        problems.append(f"extracted exponents {found} != expected {expected}")
    if inst.i0 is not None and p * inst.q - inst.xi[inst.i0] != 0:
        problems.append("extra term does not land at exponent 0")
    return terms, problems

"""Weight data (r, J), character digits, ξ/α/β, the (σ'_i, n'_i) table and μ(J).

Indices are integers read modulo f throughout. Digits are stored as the
tuple (a_1, ..., a_f) and extended periodically, a_{j+f} = a_j.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .gf import FFElem, FieldDesc, divisors, element_of_order, is_prime, mult_order, roots_of_unity_field


class WeightError(ValueError):
    """Raised for (r, J) data outside the admissible range; ``rule`` names
    the violated condition."""

    def __init__(self, rule: str, message: str):
        super().__init__(message)
        self.rule = rule


def vp(n: int, p: int) -> int:
    if n == 0:
        raise ValueError("valuation of 0")
    n = abs(n)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def _check_r(p: int, f: int, r) -> None:
    if len(r) != f:
        raise WeightError("shape", f"r has length {len(r)}, expected f={f}")
    for x in r:
        if not 1 <= x <= p:
            raise WeightError("r-range", f"r_i must lie in [1, {p}], got {x}")


def maximality_violation(p: int, f: int, r, J) -> str | None:
    """Name of the first maximality condition (r, J) fails, or None."""
    _check_r(p, f, r)
    J = {j % f for j in J}
    for j in range(f):
        for L in range(2, f + 1):
            window = [r[(j + k) % f] for k in range(L)]
            if window != [1] + [p - 1] * (L - 2) + [p]:
                continue
            if any((j + k) % f in J for k in range(1, L)):
                continue
            if j in J:
                return (
                    f"(r_{j},...,r_{(j + L - 1) % f}) = (1,p-1,...,p-1,p) "
                    f"with the later indices outside J forces {j} outside J"
                )
    if not J and (all(x == p - 1 for x in r) or (p == 2 and all(x == 2 for x in r))):
        return "J must be nonempty when all r_i = p-1 (or p = 2 and all r_i = 2)"
    return None


def is_maximal_J(p: int, f: int, r, J) -> bool:
    return maximality_violation(p, f, r, J) is None


def is_excluded_cyclotomic(p: int, f: int, r, J) -> bool:
    """All r_i = p with J = everything: handled separately, never enumerated."""
    return all(x == p for x in r) and {j % f for j in J} == set(range(f))


def h_vector(f: int, r, J) -> tuple[int, ...]:
    return tuple(r[i] if i in J else 0 for i in range(f))


def xi_alpha_beta(p: int, f: int, r, J) -> tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]:
    """(ξ, α, β); ξ is computed both as α_i - pβ_{i-1} and as the signed
    digit sum, and the two must agree."""
    J = {j % f for j in J}
    h = h_vector(f, r, J)
    q = p**f - 1
    alpha = tuple(
        -sum((r[(i + j + 1) % f] - h[(i + j + 1) % f]) * p ** (f - 1 - j) for j in range(f))
        for i in range(f)
    )
    beta = tuple(-sum(h[(i + j + 1) % f] * p ** (f - 1 - j) for j in range(f)) for i in range(f))
    xi = tuple(alpha[i] - p * beta[(i - 1) % f] for i in range(f))
    direct = tuple(
        sum(
            (1 if (i + j + 1) % f in J else -1) * r[(i + j + 1) % f] * p ** (f - 1 - j)
            for j in range(f)
        )
        + (r[i] * q if i in J else 0)
        for i in range(f)
    )
    if xi != direct:
        raise AssertionError(f"ξ routes disagree: {xi} vs {direct}")
    return xi, alpha, beta


@dataclass(frozen=True)
class CharacterData:
    p: int
    f: int
    digits: tuple[int, ...]  # (a_1, ..., a_f)

    def a(self, j: int) -> int:
        return self.digits[(j - 1) % self.f]

    def n(self, i: int) -> int:
        return sum(self.a(i + j) * self.p ** (self.f - j) for j in range(1, self.f + 1))

    @property
    def n_vector(self) -> tuple[int, ...]:
        return tuple(self.n(i) for i in range(self.f))


def _digits_in_one_to_p(n: int, p: int, f: int) -> tuple[int, ...] | None:
    out = []
    for _ in range(f):
        a = (n - 1) % p + 1
        out.append(a)
        n = (n - a) // p
    if n != 0:
        return None
    return tuple(reversed(out))


def digits_from_exponent(p: int, f: int, e: int) -> CharacterData:
    """The unique n_0 ≡ e mod p^f-1 in [(p^f-1)/(p-1), (p^f-1)+(p^f-1)/(p-1)),
    written with digits in [1, p], not all equal to p."""
    q = p**f - 1
    lo = q // (p - 1)
    n0 = lo + (e - lo) % q
    digits = _digits_in_one_to_p(n0, p, f)
    if digits is None or all(a == p for a in digits):
        raise AssertionError(f"no admissible digits for n_0 = {n0}")
    cd = CharacterData(p, f, digits)
    assert cd.n(0) == n0
    return cd


@dataclass(frozen=True)
class DdrDatum:
    s_prime: int
    n_prime: int


def ddr_data(cd: CharacterData, i: int) -> DdrDatum:
    p, f = cd.p, cd.f
    if cd.a(i - 1) != p:
        return DdrDatum((i - 1) % f, cd.n(i - 1))
    j = i - 1
    while cd.a(j - 1) == p - 1:
        j -= 1
    return DdrDatum((j - 1) % f, cd.n(j - 1) - (p**f - 1))


def ddr_table(cd: CharacterData) -> tuple[DdrDatum, ...]:
    return tuple(ddr_data(cd, i) for i in range(cd.f))


def mu_of_J(cd: CharacterData, J) -> frozenset[int]:
    """All replacements i - x -> i (i outside J) are read off the original J
    and applied at once. Two of them could in principle target the same
    index; that would shrink the set, and callers check |μ(J)| = |J|."""
    f = cd.f
    J = frozenset(j % f for j in J)
    removed, added = set(), set()
    for i in range(f):
        if i in J:
            continue
        k = next((k for k in _chain(cd, i) if k in J), None)
        if k is not None:
            removed.add(k)
            added.add(i)
    return frozenset((J - removed) | added)


def _chain(cd: CharacterData, t: int) -> list[int]:
    """Indices t-1, ..., t-s with a_{t-1} = p, a_{t-2} = ... = a_{t-s} = p-1 and
    a_{t-s-1} != p-1 (reduced mod f); empty unless a_{t-1} = p."""
    p, f = cd.p, cd.f
    if cd.a(t - 1) != p:
        return []
    s = 1
    while s < f and cd.a(t - s - 1) == p - 1:
        s += 1
    return [(t - x) % f for x in range(1, s + 1)]


def mu_of_J_chained(cd: CharacterData, J) -> frozenset[int]:
    """Variant of ``mu_of_J`` in which a target i may itself lie in J as long
    as i is moved on by its own replacement (so replacements can chain
    i-x -> i -> i'). Not the default; kept for comparison reports."""
    f = cd.f
    J = frozenset(j % f for j in J)
    moves = {}
    for t in range(f):
        for k in _chain(cd, t):
            if k == t:
                break
            if k in J:
                moves[k] = t
                break

    def honored(k: int, depth: int = 0) -> bool:
        if k not in moves or depth > f:
            return False
        t = moves[k]
        return t not in J or honored(t, depth + 1)

    return frozenset(moves[k] if honored(k) else k for k in J)


def classify_chi(cd: CharacterData, a: FFElem) -> str:
    if a == 1 and all(x == cd.p - 1 for x in cd.digits):
        return "trivial"
    if a == 1 and all(x == 1 for x in cd.digits):
        return "cyclotomic"
    return "other"


@dataclass(frozen=True)
class WeightInstance:
    p: int
    f: int
    r: tuple[int, ...]
    J: frozenset[int]
    d: int
    a: FFElem
    xi: tuple[int, ...] = field(init=False)
    alpha: tuple[int, ...] = field(init=False)
    beta: tuple[int, ...] = field(init=False)
    character: CharacterData = field(init=False)
    ddr: tuple[DdrDatum, ...] = field(init=False)
    muJ: frozenset[int] = field(init=False)
    muJ_chained: frozenset[int] = field(init=False)
    chi: str = field(init=False)
    i0: int | None = field(init=False)

    def __post_init__(self):
        p, f = self.p, self.f
        if not is_prime(p):
            raise WeightError("p", f"{p} is not prime")
        if f < 1 or self.d < 1:
            raise WeightError("shape", "need f >= 1 and d >= 1")
        object.__setattr__(self, "r", tuple(self.r))
        object.__setattr__(self, "J", frozenset(j % f for j in self.J))
        _check_r(p, f, self.r)
        if is_excluded_cyclotomic(p, f, self.r, self.J):
            raise WeightError(
                "excluded",
                "excluded cyclotomic J=S case: every r_i = p and J = {0,...,f-1}",
            )
        bad = maximality_violation(p, f, self.r, self.J)
        if bad:
            raise WeightError("maximality", bad)
        if self.d % p == 0:
            raise WeightError("unramified", f"the degree d={self.d} must be prime to p={p}")
        if self.a.is_zero() or self.d % mult_order(self.a):
            raise WeightError("unramified", f"a must satisfy a^d = 1 (d={self.d})")
        xi, alpha, beta = xi_alpha_beta(p, f, self.r, self.J)
        cd = digits_from_exponent(p, f, xi[0])
        chi = classify_chi(cd, self.a)
        object.__setattr__(self, "xi", xi)
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "beta", beta)
        object.__setattr__(self, "character", cd)
        object.__setattr__(self, "ddr", ddr_table(cd))
        object.__setattr__(self, "muJ", mu_of_J(cd, self.J))
        object.__setattr__(self, "muJ_chained", mu_of_J_chained(cd, self.J))
        object.__setattr__(self, "chi", chi)
        object.__setattr__(self, "i0", min(self.J) if chi == "trivial" and self.J else None)

    @property
    def q(self) -> int:
        return self.p**self.f - 1

    @property
    def field(self) -> FieldDesc:
        return self.a.field

    @property
    def h(self) -> tuple[int, ...]:
        return h_vector(self.f, self.r, self.J)

    @property
    def key(self) -> str:
        J = ",".join(str(j) for j in sorted(self.J))
        r = ",".join(str(x) for x in self.r)
        return f"p={self.p};f={self.f};r={r};J={{{J}}};d={self.d};a={list(self.a.coeffs)}"


def unramified_choices(p: int, d: int, policy: str = "generators") -> list[FFElem]:
    """Values a with a^d = 1, all in one field: one of each order under
    "generators", every one of them under "all"."""
    F = roots_of_unity_field(p, d)
    if policy == "all":
        return [x for x in F.elements() if not x.is_zero() and x**d == 1]
    if policy != "generators":
        raise ValueError(f"unknown a_policy {policy!r}")
    orders = [t for t in divisors(d) if (F.order - 1) % t == 0]
    return [element_of_order(F, t) for t in orders]


def lemma_violations(inst: WeightInstance) -> list[str]:
    """Every combinatorial invariant that fails for ``inst`` (empty if none)."""
    p, f, q = inst.p, inst.f, inst.q
    cd, xi = inst.character, inst.xi
    out = []
    base = q // (p - 1)
    for i in range(f):
        if (xi[i] - cd.n(i)) % q:
            out.append(f"congruence: ξ_{i} ≢ n_{i}")
        if not base <= cd.n(i) < q + base:
            out.append(f"n bounds fail at i={i}")
        dd = inst.ddr[i]
        if dd.n_prime <= 0 or dd.n_prime % p == 0:
            out.append(f"n'_{i} = {dd.n_prime} is not a positive unit")
    if q > 1:
        for i, j in itertools.product(range(f), repeat=2):
            if (pow(p, -i, q) * cd.n(i) - pow(p, -j, q) * cd.n(j)) % q:
                out.append(f"p^-i n_i ≢ p^-j n_j for ({i},{j})")
    if all(x == p for x in cd.digits):
        out.append("all digits equal p")
    for i in sorted(inst.J):
        x = xi[i]
        if not (x > 0 and x * (p - 1) < p * p * q):
            out.append(f"ξ_{i} = {x} outside (0, p^2(p^f-1)/(p-1))")
            continue
        m = vp(x, p)
        if m < 1:
            out.append(f"v_p(ξ_{i}) = 0")
        elif m > 1:
            if x != p**m * (cd.n(i - m) - q):
                out.append(f"ξ_{i} != p^m(n_(i-m) - (p^f-1)) with m={m}")
        else:
            expected = p * cd.n(i - 1) if x // p >= base else p * (cd.n(i - 1) - q)
            if x != expected:
                out.append(f"ξ_{i} fails the m=1 description")
    if inst.chi == "trivial":
        for i in sorted(inst.J):
            if xi[i] != p * q:
                out.append(f"χ trivial but ξ_{i} = {xi[i]} != p(p^f-1)")
        i0 = inst.i0
        if i0 is None:
            out.append("χ trivial with J empty")
        else:
            target = xi[i0] - p * q
            for dd in inst.ddr:
                if target > 0 and _is_p_power_multiple(target, dd.n_prime, p):
                    out.append(f"ξ_i0 - p(p^f-1) = p^m n' has a solution (n'={dd.n_prime})")
            if target > 0 and _is_p_power_multiple(target, q, p):
                out.append("ξ_i0 - p(p^f-1) = p^m (p^f-1) has a solution")
    if len(inst.muJ) != len(inst.J):
        out.append(f"|μ(J)| = {len(inst.muJ)} != |J| = {len(inst.J)}")
    return out


def _is_p_power_multiple(target: int, base: int, p: int) -> bool:
    """Whether target = p^m · base for some m >= 0."""
    while target >= base:
        if target == base:
            return True
        if target % p:
            return False
        target //= p
    return False


def enumerate_instances(p: int, f: int, d_list=(1,), a_policy: str = "generators"):
    """Every admissible instance, in a fixed order: r lexicographic, J by
    bitmask, then d and a as given. Degrees d divisible by p are skipped."""
    for r in itertools.product(range(1, p + 1), repeat=f):
        for mask in range(1 << f):
            J = frozenset(i for i in range(f) if mask >> i & 1)
            if is_excluded_cyclotomic(p, f, r, J) or not is_maximal_J(p, f, r, J):
                continue
            for d in d_list:
                if d % p == 0:
                    continue
                for a in unramified_choices(p, d, a_policy):
                    yield WeightInstance(p, f, r, J, d, a)

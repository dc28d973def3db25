"""Residue pairing between Artin–Schreier classes and Artin–Hasse units.

Every matrix entry is computed twice: once by multiplying out the
truncated dlog series and taking Tr∘Res (``pair_series``), once from the
exponent/embedding matching rule (``pair_closed``). The per-instance
report records both and flags any disagreement.
"""
from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from . import __version__
from .embvec import EmbVector, lambda_mu, lambda_mu_inv, trace_sum
from .gf import FFElem, FieldDesc
from .phimod import replay
from .series import SparseLaurent, dlog_ah_unit, dlog_uniformizer, lossless_m_max, residue
from .weights import WeightInstance, enumerate_instances, lemma_violations


@dataclass(frozen=True)
class BdjClass:
    kind: str  # "ordinary" | "extra"
    index: int  # i for ordinary, i_0 for extra
    coefficient: EmbVector
    exponent: int

    @property
    def label(self) -> str:
        return f"f[{self.index}]" if self.kind == "ordinary" else f"f_extra[{self.index}]"


@dataclass(frozen=True)
class DdrUnit:
    kind: str  # "standard" | "triv"
    index: int | None
    s_prime: int | None = None
    n_prime: int | None = None
    lam: EmbVector | None = None

    @property
    def label(self) -> str:
        return f"u[{self.index}]" if self.kind == "standard" else "u_triv"


def bdj_classes(inst: WeightInstance) -> list[BdjClass]:
    f, d, a = inst.f, inst.d, inst.a
    out = [
        BdjClass("ordinary", i, lambda_mu_inv(i, a, f, d), -inst.xi[i]) for i in sorted(inst.J)
    ]
    if inst.chi == "trivial":
        i0 = inst.i0
        out.append(BdjClass("extra", i0, lambda_mu_inv(i0, a, f, d), inst.p * inst.q - inst.xi[i0]))
    return out


def ddr_units(inst: WeightInstance) -> list[DdrUnit]:
    out = [
        DdrUnit("standard", j, dd.s_prime, dd.n_prime, lambda_mu(dd.s_prime, inst.a, inst.f, inst.d))
        for j, dd in enumerate(inst.ddr)
    ]
    if inst.chi == "trivial":
        out.append(DdrUnit("triv", None))
    return out


def unit_dlog(v: DdrUnit, inst: WeightInstance, target: int) -> SparseLaurent:
    if v.kind == "triv":
        return dlog_uniformizer(inst.f, inst.d, inst.field)
    return dlog_ah_unit(v.n_prime, v.lam, lossless_m_max(v.n_prime, inst.p, target))


def pair_series(c: BdjClass, v: DdrUnit, inst: WeightInstance) -> FFElem:
    """Tr Res(dlog(v) · c)."""
    dlog = unit_dlog(v, inst, -c.exponent)
    return trace_sum(residue(dlog * SparseLaurent.monomial(c.coefficient, c.exponent)))


def _p_power_solution(target: int, n: int, p: int) -> int | None:
    """m >= 0 with target = p^m·n, if any."""
    if target <= 0:
        return None
    m = 0
    while target > n and target % p == 0:
        target //= p
        m += 1
    return m if target == n else None


def pair_closed(c: BdjClass, v: DdrUnit, inst: WeightInstance) -> FFElem:
    """Closed form. For a standard unit the residue is nonzero only if
    -exponent = p^m n'_j with s'_j ≡ i - m (mod f); writing i - m = s'_j + q·f,
    the λ-product is a^{-q} on each of the d indices of the class of i, so
    the value is n'_j · d · a^{-q}. Against u_triv only exponent 0 pairs,
    giving the trace of the class coefficient: d if a = 1, else 0."""
    F, p, f, d, a = inst.field, inst.p, inst.f, inst.d, inst.a
    target = -c.exponent
    if v.kind == "triv":
        if target != 0:
            return F.zero
        return F.from_int(d) if a == 1 else F.zero
    m = _p_power_solution(target, v.n_prime, p)
    if m is None or (c.index - m - v.s_prime) % f:
        return F.zero
    q = (c.index - m - v.s_prime) // f
    return F.from_int(v.n_prime * d) * a ** (-q)


def rank(rows: list[list[FFElem]], field: FieldDesc) -> int:
    M = [list(r) for r in rows]
    if not M or not M[0]:
        return 0
    rk = 0
    ncols = len(M[0])
    for col in range(ncols):
        pivot = next((r for r in range(rk, len(M)) if not M[r][col].is_zero()), None)
        if pivot is None:
            continue
        M[rk], M[pivot] = M[pivot], M[rk]
        inv = M[rk][col].inverse()
        M[rk] = [x * inv for x in M[rk]]
        for r in range(len(M)):
            if r != rk and not M[r][col].is_zero():
                factor = M[r][col]
                M[r] = [x - factor * y for x, y in zip(M[r], M[rk])]
        rk += 1
    return rk


def proposition_counterexamples(inst: WeightInstance, mu=None) -> list[dict]:
    """Triples (i ∈ J, m, j ∉ mu) with σ'_j = σ_{i-m} and ξ_i = p^m n'_j.
    ``mu`` defaults to the literal μ(J)."""
    p, f = inst.p, inst.f
    mu = inst.muJ if mu is None else mu
    out = []
    xi_max = max((inst.xi[i] for i in inst.J), default=1)
    # ⌈log_p ξ_max⌉ + 1
    m_cap = 0
    while p**m_cap < xi_max:
        m_cap += 1
    m_cap += 1
    for i in sorted(inst.J):
        for m in range(m_cap + 1):
            for j, dd in enumerate(inst.ddr):
                if j in mu:
                    continue
                if (dd.s_prime - (i - m)) % f == 0 and inst.xi[i] == p**m * dd.n_prime:
                    out.append({"i": i, "m": m, "j": j})
    return out


@dataclass
class PairingReport:
    instance: WeightInstance
    rows: list[str]
    cols: list[str]
    matrix: list[list[FFElem]]
    checks: dict[str, bool] = field(default_factory=dict)
    counterexamples: list[dict] = field(default_factory=list)
    rank: int = 0
    rank_chained: int = 0

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def to_json(self) -> dict:
        inst = self.instance
        return {
            "key": inst.key,
            "p": inst.p,
            "f": inst.f,
            "r": list(inst.r),
            "J": sorted(inst.J),
            "d": inst.d,
            "a": inst.a.to_json(),
            "field": inst.field.to_json(),
            "chi": inst.chi,
            "digits": list(inst.character.digits),
            "n": list(inst.character.n_vector),
            "xi": list(inst.xi),
            "alpha": list(inst.alpha),
            "beta": list(inst.beta),
            "ddr": [[dd.s_prime, dd.n_prime] for dd in inst.ddr],
            "nprime": [dd.n_prime for dd in inst.ddr],
            "muJ": sorted(inst.muJ),
            "muJ_chained": sorted(inst.muJ_chained),
            "rows": self.rows,
            "cols": self.cols,
            "matrix": [[x.to_json() for x in row] for row in self.matrix],
            "rank": self.rank,
            "rank_chained": self.rank_chained,
            "checks": dict(sorted(self.checks.items())),
            "counterexamples": self.counterexamples,
        }


def pairing_matrix(inst: WeightInstance) -> PairingReport:
    classes = bdj_classes(inst)
    units = ddr_units(inst)
    matrix, mismatches = [], []
    for c in classes:
        row = []
        for v in units:
            s = pair_series(c, v, inst)
            k = pair_closed(c, v, inst)
            if s != k:
                mismatches.append(
                    {"check": "oracle", "row": c.label, "col": v.label, "series": s.to_json(), "closed": k.to_json()}
                )
            row.append(s)
        matrix.append(row)
    report = PairingReport(inst, [c.label for c in classes], [v.label for v in units], matrix)
    cex = report.counterexamples
    cex.extend(mismatches)

    expected_rank = len(inst.J) + (1 if inst.chi == "trivial" else 0)
    for suffix, mu in (("", inst.muJ), ("_chained", inst.muJ_chained)):
        for r, c in enumerate(classes):
            for col, v in enumerate(units):
                bad = v.kind == "standard" and (v.index not in mu or c.kind == "extra")
                if bad and not matrix[r][col].is_zero():
                    cex.append({"check": "orthogonality" + suffix, "row": c.label, "col": v.label})
        keep = [col for col, v in enumerate(units) if v.kind == "triv" or v.index in mu]
        rk = rank([[row[col] for col in keep] for row in matrix], inst.field)
        if suffix == "":
            report.rank = rk
        else:
            report.rank_chained = rk
        if rk != expected_rank:
            cex.append({"check": "rank" + suffix, "rank": rk, "expected": expected_rank})
        prop = proposition_counterexamples(inst, mu)
        cex.extend({"check": "proposition" + suffix, **t} for t in prop)

    lemmas = lemma_violations(inst)
    cex.extend({"check": "lemma", "detail": msg} for msg in lemmas)
    _, replay_problems = replay(inst)
    cex.extend({"check": "replay", "detail": msg} for msg in replay_problems)

    failed = {x["check"] for x in cex}
    report.checks = {
        "oracle": not mismatches,
        "lemmas": not lemmas,
        "replay": not replay_problems,
    }
    for name in ("orthogonality", "rank", "proposition"):
        for suffix in ("", "_chained"):
            report.checks[name + suffix] = name + suffix not in failed
    return report


def _instances(p_list, f_max, d_list, a_policy):
    for p in p_list:
        for f in range(1, f_max + 1):
            yield from enumerate_instances(p, f, d_list, a_policy)


def _instance_json(inst: WeightInstance) -> dict:
    return pairing_matrix(inst).to_json()


def verify_range(
    p_list,
    f_max: int,
    d_list=(1,),
    a_policy: str = "generators",
    workers: int = 1,
    sample: int | None = None,
    seed: int = 0,
) -> dict:
    """Pairing reports for every enumerated instance plus a summary. Output
    order follows the enumeration, whatever the worker count.

    With ``sample`` set, only that many instances (drawn with ``seed``) are
    run, still in enumeration order.
    """
    instances = list(_instances(p_list, f_max, d_list, a_policy))
    if sample is not None and sample < len(instances):
        picked = sorted(random.Random(seed).sample(range(len(instances)), sample))
        instances = [instances[k] for k in picked]
    if workers > 1 and len(instances) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_instance_json, instances, chunksize=32))
    else:
        results = [_instance_json(inst) for inst in instances]
    check_names = sorted({k for res in results for k in res["checks"]})
    summary = {
        "instances": len(results),
        "passed": sum(all(res["checks"].values()) for res in results),
        "failed": sum(not all(res["checks"].values()) for res in results),
        "check_failures": {k: sum(not res["checks"][k] for res in results) for k in check_names},
        "chi": {
            kind: sum(res["chi"] == kind for res in results) for kind in ("trivial", "cyclotomic", "other")
        },
    }
    return {
        "meta": {
            "p_list": list(p_list),
            "f_max": f_max,
            "d_list": list(d_list),
            "a_policy": a_policy,
            "sample": sample,
            "seed": seed if sample is not None else None,
            "version": __version__,
        },
        "instances": results,
        "summary": summary,
    }

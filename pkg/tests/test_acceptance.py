"""Acceptance criteria 1-9, each at its stated range and tolerance (exact).

One PASS/FAIL line per criterion is printed in the pytest terminal summary.
Lines tagged "+chained" are informational: they rerun criteria 1, 4 and 6
with the chained reading of μ(J) and are not acceptance criteria.

Run standalone with ``python tests/test_acceptance.py``.
"""
import json
import sys
import time

import pytest

from bdjddr import artin_hasse as ah
from bdjddr.cli import main
from bdjddr.gf import field_make
from bdjddr.pairing import pairing_matrix, verify_range
from bdjddr.weights import WeightInstance

RANGES = (((2, 3), 4), ((5,), 3))
D_LIST = (1, 2, 3)


@pytest.fixture(scope="module")
def full_range():
    start = time.perf_counter()
    instances = []
    for p_list, f_max in RANGES:
        instances += verify_range(p_list, f_max, D_LIST)["instances"]
    return instances, time.perf_counter() - start


def _judge(log, key, instances, check, what):
    bad = [res for res in instances if not res["checks"][check]]
    if not bad:
        log[key] = (True, f"{what}: {len(instances)} instances")
        return True
    first = bad[0]
    payload = [c for c in first["counterexamples"] if c["check"] == check][:2]
    log[key] = (
        False,
        f"{what}: {len(bad)}/{len(instances)} instances fail; first {first['key']} "
        f"{json.dumps(payload, sort_keys=True, ensure_ascii=False)}",
    )
    return False


def test_range_size(full_range):
    instances, _ = full_range
    assert len(instances) == 4746 + 5345


def test_criterion_1_orthogonality(full_range, acceptance_log):
    instances, elapsed = full_range
    ok = _judge(acceptance_log, "1", instances, "orthogonality", f"zero outside μ(J) columns ({elapsed:.0f}s)")
    _judge(acceptance_log, "1+chained", instances, "orthogonality_chained", "chained μ(J), informational")
    assert ok, acceptance_log["1"][1]


def test_criterion_2_oracle_equivalence(full_range, acceptance_log):
    instances, _ = full_range
    assert _judge(acceptance_log, "2", instances, "oracle", "pair_series = pair_closed"), acceptance_log["2"][1]


def test_criterion_3_lemma_suite(full_range, acceptance_log):
    instances, _ = full_range
    assert _judge(acceptance_log, "3", instances, "lemmas", "lemma suite"), acceptance_log["3"][1]


def test_criterion_4_proposition(full_range, acceptance_log):
    instances, _ = full_range
    ok = _judge(acceptance_log, "4", instances, "proposition", "no (i, m, j ∉ μ(J)) solution")
    _judge(acceptance_log, "4+chained", instances, "proposition_chained", "chained μ(J), informational")
    assert ok, acceptance_log["4"][1]


def test_criterion_5_replay(full_range, acceptance_log):
    instances, _ = full_range
    assert _judge(acceptance_log, "5", instances, "replay", "φ-module replay"), acceptance_log["5"][1]


def test_criterion_6_rank(full_range, acceptance_log):
    instances, _ = full_range
    ok = _judge(acceptance_log, "6", instances, "rank", "rank |J| + [χ=1] on μ(J) columns")
    _judge(acceptance_log, "6+chained", instances, "rank_chained", "chained μ(J), informational")
    assert ok, acceptance_log["6"][1]


def test_criterion_7_artin_hasse(acceptance_log):
    results = {}
    for p in (2, 3):
        for n in (1, 2):
            results[f"norm({p},{n})"] = ah.verify_norm_identity(p, n, 30)
    for p in (2, 3, 5):
        results[f"integral({p})"] = ah.is_p_integral(p, 51)
        results[f"dlog({p})"] = ah.dlog_mod_p(ah.ah_mod_p(p, 51), p) == ah.frobenius_exponent_series(p, 50)
    bad = [k for k, v in results.items() if not v]
    acceptance_log["7"] = (not bad, "Artin-Hasse identities " + (", ".join(bad) if bad else "all exact"))
    assert not bad


def test_criterion_8_worked_instance(acceptance_log):
    inst = WeightInstance(3, 2, (1, 1), frozenset({1}), 1, field_make(3).one)
    rep = pairing_matrix(inst)
    nonzero = [(rep.rows[i], rep.cols[j]) for i, row in enumerate(rep.matrix) for j, x in enumerate(row) if not x.is_zero()]
    got = {
        "digits": inst.character.digits,
        "n": inst.character.n_vector,
        "xi_1": inst.xi[1],
        "ddr": tuple((dd.s_prime, dd.n_prime) for dd in inst.ddr),
        "muJ": inst.muJ,
        "nonzero": nonzero,
    }
    expected = {
        "digits": (3, 1),
        "n": (10, 6),
        "xi_1": 6,
        "ddr": ((0, 2), (0, 10)),
        "muJ": frozenset({0}),
        "nonzero": [("f[1]", "u[0]")],
    }
    ok = got == expected
    acceptance_log["8"] = (ok, "worked instance (3,2,(1,1),{1},1,1)" + ("" if ok else f" got {got}"))
    assert ok


def test_criterion_9_determinism(tmp_path, acceptance_log, capsys):
    paths = []
    for w in (1, 8):
        out = tmp_path / f"w{w}.json"
        code = main(["verify", "--p", "2,3", "--f-max", "3", "--d", "1,2", "--format", "json",
                     "--workers", str(w), "--output", str(out)])
        assert code in (0, 1)
        paths.append(out)
    capsys.readouterr()
    a, b = (p.read_bytes() for p in paths)
    ok = a == b
    acceptance_log["9"] = (ok, f"verify --workers 1 vs 8: {'byte-identical' if ok else 'reports differ'} ({len(a)} bytes)")
    assert ok


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))

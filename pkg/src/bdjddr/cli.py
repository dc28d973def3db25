"""Command-line front end: ``inspect``, ``verify``, ``ah-check``, ``enumerate``.

Exit codes: 0 all checks pass, 1 a mathematical check failed, 2 bad
configuration.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from pathlib import Path

from . import artin_hasse as ah
from .gf import FFElem, element_of_order, is_prime, roots_of_unity_field
from .pairing import pairing_matrix, verify_range
from .weights import WeightError, WeightInstance, enumerate_instances

GUARD_P = 7
GUARD_F = 6
GUARD_AH_LEVEL = 64  # largest p^n accepted by ah-check without --no-guard
OUTPUT_DIR_ENV = "BDJDDR_OUTPUT_DIR"


class ConfigError(Exception):
    def __init__(self, rule: str, message: str):
        super().__init__(f"{rule}: {message}")
        self.rule = rule


def _int_list(text: str) -> list[int]:
    text = text.strip()
    if text in ("", "-", "none"):
        return []
    try:
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _nonempty_int_list(text: str) -> list[int]:
    out = _int_list(text)
    if not out:
        raise argparse.ArgumentTypeError("expected at least one integer")
    return out


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bdjddr",
        description="Exact residue-pairing checks for Serre weight data (r, J).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, formats=("plain", "json")):
        sp.add_argument("--format", choices=formats, default="plain")
        sp.add_argument(
            "--output",
            type=Path,
            help=f"write the report here instead of stdout (relative paths resolve under ${OUTPUT_DIR_ENV} if set)",
        )
        sp.add_argument("--no-guard", action="store_true", help="lift the desk-scale limits")

    sp = sub.add_parser("inspect", help="dossier for one instance")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--f", type=int, required=True)
    sp.add_argument("--r", type=_nonempty_int_list, required=True, help="r_0,...,r_{f-1}")
    sp.add_argument("--J", type=_int_list, default=[], help='indices in J, e.g. 0,2 ("" for empty)')
    sp.add_argument("--d", type=int, default=1, help="degree of the unramified twist")
    sp.add_argument("--a-order", type=int, default=1, help="multiplicative order of a (must divide d)")
    common(sp)

    sp = sub.add_parser("verify", help="run every check over a range of instances")
    sp.add_argument("--p", type=_nonempty_int_list, required=True, help="primes, e.g. 2,3")
    sp.add_argument("--f-max", type=int, required=True)
    sp.add_argument("--d", type=_nonempty_int_list, default=[1])
    sp.add_argument("--a-policy", choices=("generators", "all"), default="generators")
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--sample", type=int, help="run only this many instances, drawn with --seed")
    sp.add_argument("--seed", type=int, default=0)
    common(sp, ("plain", "json", "csv"))

    sp = sub.add_parser("ah-check", help="exact Artin-Hasse identities")
    sp.add_argument("--p", type=int, default=2)
    sp.add_argument("--n", type=int, default=1, help="cyclotomic level (p^n-th roots of unity)")
    sp.add_argument("--trunc", type=int, default=30)
    sp.add_argument("--show-coeffs", action="store_true")
    common(sp)

    sp = sub.add_parser("enumerate", help="list admissible instances")
    sp.add_argument("--p", type=_nonempty_int_list, required=True)
    sp.add_argument("--f-max", type=int, required=True)
    sp.add_argument("--d", type=_nonempty_int_list, default=[1])
    sp.add_argument("--a-policy", choices=("generators", "all"), default="generators")
    common(sp, ("plain", "json", "csv"))
    return parser


# ---- validation ---------------------------------------------------------


def _check_prime(p: int, guard: bool) -> None:
    if not is_prime(p):
        raise ConfigError("p", f"{p} is not prime")
    if guard and p > GUARD_P:
        raise ConfigError("guard", f"p={p} exceeds {GUARD_P}; pass --no-guard to lift")


def _check_f(f: int, guard: bool, name: str = "f") -> None:
    if f < 1:
        raise ConfigError(name, f"{name} must be >= 1, got {f}")
    if guard and f > GUARD_F:
        raise ConfigError("guard", f"{name}={f} exceeds {GUARD_F}; pass --no-guard to lift")


def _check_d(d_list) -> None:
    for d in d_list:
        if d < 1:
            raise ConfigError("d", f"d must be >= 1, got {d}")


def make_instance(p: int, f: int, r, J, d: int, a_order: int) -> WeightInstance:
    """Build the instance, turning every rejection into a ConfigError that
    names the rule."""
    if d < 1:
        raise ConfigError("d", f"d must be >= 1, got {d}")
    if d % p == 0:
        raise ConfigError("unramified", f"the degree d={d} must be prime to p={p}")
    if a_order < 1 or d % a_order:
        raise ConfigError("unramified", f"the order of a ({a_order}) must divide d={d}")
    if any(j < 0 or j >= f for j in J):
        raise ConfigError("shape", f"J must be a subset of {{0,...,{f - 1}}}")
    a = element_of_order(roots_of_unity_field(p, d), a_order)
    try:
        return WeightInstance(p, f, tuple(r), frozenset(J), d, a)
    except WeightError as exc:
        raise ConfigError(exc.rule, str(exc)) from None


# ---- formatting ---------------------------------------------------------


def fmt_elem(x: FFElem) -> str:
    if x.field.e == 1:
        return str(x.coeffs[0])
    terms = []
    for k, c in enumerate(x.coeffs):
        if c:
            mono = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
            terms.append(str(c) if not mono else (mono if c == 1 else f"{c}{mono}"))
    return "+".join(terms) or "0"


def fmt_set(s) -> str:
    return "{" + ",".join(str(x) for x in sorted(s)) + "}"


def dump_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _table(rows: list[list[str]]) -> list[str]:
    widths = [max(len(row[k]) for row in rows) for k in range(len(rows[0]))]
    return ["  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip() for row in rows]


def diagonality(report) -> dict:
    """Which columns each row hits; exploratory only, nothing is asserted."""
    support = {
        label: [report.cols[k] for k, x in enumerate(row) if not x.is_zero()]
        for label, row in zip(report.rows, report.matrix)
    }
    hit = [cols[0] for cols in support.values() if len(cols) == 1]
    monomial = len(hit) == len(support) and len(set(hit)) == len(hit)
    return {"support": support, "monomial": monomial}


def render_dossier(report) -> str:
    inst = report.instance
    F = inst.field
    lines = [
        f"instance   {inst.key}",
        f"field      F_{F.order} (p={F.p}, e={F.e}, modulus {list(F.modulus)})",
        f"a          {fmt_elem(inst.a)}",
        f"digits     {inst.character.digits}",
        f"n          {inst.character.n_vector}",
        f"xi         {inst.xi}",
        f"alpha      {inst.alpha}",
        f"beta       {inst.beta}",
        f"chi        {inst.chi}" + (f" (extra class at i0={inst.i0})" if inst.i0 is not None else ""),
        "ddr table",
    ]
    ddr_rows = [["j", "sigma'", "n'"]] + [[str(j), str(dd.s_prime), str(dd.n_prime)] for j, dd in enumerate(inst.ddr)]
    lines += ["  " + s for s in _table(ddr_rows)]
    lines.append(f"mu(J)      {fmt_set(inst.muJ)}")
    lines.append(f"mu(J), chained reading  {fmt_set(inst.muJ_chained)}")
    lines.append(f"replay     {'ok' if report.checks['replay'] else 'FAILED'}")
    lines.append("pairing matrix (* marks columns in mu(J), + in the chained reading only)")
    header = [""]
    for label in report.cols:
        j = int(label[2:-1]) if label.startswith("u[") else None
        mark = ""
        if j is not None and j in inst.muJ:
            mark = "*"
        elif j is not None and j in inst.muJ_chained:
            mark = "+"
        header.append(label + mark)
    rows = [header] + [[label] + [fmt_elem(x) for x in row] for label, row in zip(report.rows, report.matrix)]
    lines += ["  " + s for s in _table(rows)]
    pattern = diagonality(report)
    for label, cols in pattern["support"].items():
        lines.append(f"  {label} -> {', '.join(cols) or '(zero row)'}")
    lines.append(f"  one nonzero per row, distinct columns: {'yes' if pattern['monomial'] else 'no'}")
    lines.append(f"rank       {report.rank} (chained reading {report.rank_chained})")
    lines.append("checks")
    for name, ok in sorted(report.checks.items()):
        lines.append(f"  {name:<24}{'pass' if ok else 'FAIL'}")
    for cex in report.counterexamples:
        lines.append(f"  counterexample {json.dumps(cex, sort_keys=True, ensure_ascii=False)}")
    return "\n".join(lines) + "\n"


def render_verify_plain(result: dict) -> str:
    s = result["summary"]
    lines = [
        f"instances {s['instances']}  passed {s['passed']}  failed {s['failed']}",
        "chi " + "  ".join(f"{k}={v}" for k, v in s["chi"].items()),
        "check failures",
    ]
    lines += [f"  {k:<24}{v}" for k, v in s["check_failures"].items()]
    failing = [res for res in result["instances"] if not all(res["checks"].values())]
    if failing:
        first = failing[0]
        bad = ", ".join(k for k, v in sorted(first["checks"].items()) if not v)
        lines.append(f"first failure {first['key']} ({bad})")
    return "\n".join(lines) + "\n"


def render_verify_csv(result: dict) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["key", "check", "passed"])
    for res in result["instances"]:
        for name, ok in sorted(res["checks"].items()):
            w.writerow([res["key"], name, int(ok)])
    return buf.getvalue()


def emit(text: str, output: Path | None) -> None:
    if output is None:
        sys.stdout.write(text)
        return
    if not output.is_absolute() and os.environ.get(OUTPUT_DIR_ENV):
        output = Path(os.environ[OUTPUT_DIR_ENV]) / output
    try:
        output.parent.mkdir(parents=True, exist_ok=True)
        output.write_text(text, encoding="utf-8")
    except OSError as exc:
        raise ConfigError("output", f"cannot write {output}: {exc}") from None


# ---- commands -----------------------------------------------------------


def cmd_inspect(args) -> int:
    guard = not args.no_guard
    _check_prime(args.p, guard)
    _check_f(args.f, guard)
    if len(args.r) != args.f:
        raise ConfigError("shape", f"r has length {len(args.r)}, expected f={args.f}")
    inst = make_instance(args.p, args.f, args.r, args.J, args.d, args.a_order)
    report = pairing_matrix(inst)
    if args.format == "json":
        data = report.to_json()
        data["diagonality"] = diagonality(report)
        emit(dump_json(data), args.output)
    else:
        emit(render_dossier(report), args.output)
    return 0 if report.ok else 1


def cmd_verify(args) -> int:
    guard = not args.no_guard
    for p in args.p:
        _check_prime(p, guard)
    _check_f(args.f_max, guard, "f-max")
    _check_d(args.d)
    if args.workers < 1:
        raise ConfigError("workers", "need at least one worker")
    if args.sample is not None and args.sample < 1:
        raise ConfigError("sample", "sample size must be >= 1")
    result = verify_range(
        args.p, args.f_max, tuple(args.d), args.a_policy, args.workers, args.sample, args.seed
    )
    if result["summary"]["instances"] == 0:
        raise ConfigError("range", "the selected range contains no instances")
    if args.format == "json":
        emit(dump_json(result), args.output)
    elif args.format == "csv":
        emit(render_verify_csv(result), args.output)
    else:
        emit(render_verify_plain(result), args.output)
    return 0 if result["summary"]["failed"] == 0 else 1


def cmd_ah_check(args) -> int:
    guard = not args.no_guard
    _check_prime(args.p, guard)
    if args.n < 0:
        raise ConfigError("n", f"level must be >= 0, got {args.n}")
    if args.trunc < 1:
        raise ConfigError("trunc", f"truncation must be >= 1, got {args.trunc}")
    if guard and args.p**args.n > GUARD_AH_LEVEL:
        raise ConfigError("guard", f"p^n = {args.p ** args.n} exceeds {GUARD_AH_LEVEL}; pass --no-guard to lift")
    p, n, N = args.p, args.n, args.trunc
    checks = {
        "norm_identity": ah.verify_norm_identity(p, n, N),
        "p_integral": ah.is_p_integral(p, N),
        "log_derivative": ah.log_derivative_identity(p, N),
    }
    if checks["p_integral"]:
        checks["dlog_mod_p"] = ah.dlog_mod_p(ah.ah_mod_p(p, N), p) == ah.frobenius_exponent_series(p, N - 1)
    else:
        checks["dlog_mod_p"] = False
    ok = all(checks.values())
    if args.format == "json":
        data = {"p": p, "n": n, "trunc": N, "checks": checks, "ok": ok}
        if args.show_coeffs:
            data["coefficients"] = [str(c) for c in ah.ah_rational_coeffs(p, N)]
        emit(dump_json(data), args.output)
    else:
        lines = [f"p={p} n={n} trunc={N}"]
        lines += [f"  {k:<16}{'pass' if v else 'FAIL'}" for k, v in checks.items()]
        if args.show_coeffs:
            lines += [f"  x^{k}: {c}" for k, c in enumerate(ah.ah_rational_coeffs(p, N))]
        emit("\n".join(lines) + "\n", args.output)
    return 0 if ok else 1


def cmd_enumerate(args) -> int:
    guard = not args.no_guard
    for p in args.p:
        _check_prime(p, guard)
    _check_f(args.f_max, guard, "f-max")
    _check_d(args.d)
    rows = []
    for p in args.p:
        for f in range(1, args.f_max + 1):
            for inst in enumerate_instances(p, f, tuple(args.d), args.a_policy):
                rows.append(
                    {
                        "key": inst.key,
                        "chi": inst.chi,
                        "xi": list(inst.xi),
                        "muJ": sorted(inst.muJ),
                        "muJ_chained": sorted(inst.muJ_chained),
                    }
                )
    if args.format == "json":
        emit(dump_json(rows), args.output)
    elif args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["key", "chi", "xi", "muJ", "muJ_chained"])
        for row in rows:
            w.writerow(
                [row["key"], row["chi"], " ".join(map(str, row["xi"])), fmt_set(row["muJ"]), fmt_set(row["muJ_chained"])]
            )
        emit(buf.getvalue(), args.output)
    else:
        emit("".join(row["key"] + "\n" for row in rows) + f"{len(rows)} instances\n", args.output)
    return 0


COMMANDS = {
    "inspect": cmd_inspect,
    "verify": cmd_verify,
    "ah-check": cmd_ah_check,
    "enumerate": cmd_enumerate,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse uses 2 for usage errors and 0 for --help
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

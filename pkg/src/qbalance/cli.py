"""Command-line front end: ``python -m qbalance <command> ...``.

Exit codes: 0 success, 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from typing import Optional, Sequence

from . import oracle
from .analysis import (
    CLOSED_FORMS,
    DEFAULT_STATISTIC,
    catalan_ratio_check,
    closed_form,
    convergence_report,
    derangement_bound_check,
    exact_balance_threshold,
    reports_to_csv,
)
from .residue import MAX_MODULUS, MIN_MODULUS, deviation, fold_mod, ratio_to_str

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
FORMATS = ("text", "csv", "json")
# largest n for which cmd_verify runs the joint maj / maj-inverse check
GORDON_ROSELLE_MAX_N = 7


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    family: Optional[str] = None
    statistic: Optional[str] = None
    n_range: list[int] = field(default_factory=list)
    m_list: list[int] = field(default_factory=list)
    format: str = "text"
    out: Optional[str] = None
    oracle: bool = False
    max_n: Optional[int] = None
    jobs: int = 1


def parse_range(text: str) -> list[int]:
    """``"a..b"`` (inclusive) or a single integer."""
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            lo, hi = int(lo), int(hi)
            if lo > hi:
                raise UsageError(f"empty range {text!r}")
            return list(range(lo, hi + 1))
        return [int(text)]
    except ValueError:
        raise UsageError(f"bad range {text!r}; expected a..b") from None


def parse_m_list(text: str) -> list[int]:
    try:
        ms = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"bad modulus list {text!r}") from None
    if not ms:
        raise UsageError("empty modulus list")
    for m in ms:
        if not MIN_MODULUS <= m <= MAX_MODULUS:
            raise UsageError(f"modulus {m} outside [{MIN_MODULUS}, {MAX_MODULUS}]")
    return ms


def _statistic_for(family: Optional[str], statistic: Optional[str]) -> tuple[str, str]:
    if family is None:
        raise UsageError("--family is required")
    if family not in DEFAULT_STATISTIC:
        raise UsageError(f"unknown family {family!r}; choose from {', '.join(DEFAULT_STATISTIC)}")
    statistic = statistic or DEFAULT_STATISTIC[family]
    if (family, statistic) not in CLOSED_FORMS:
        raise UsageError(f"statistic {statistic!r} does not apply to family {family!r}")
    return family, statistic


def _single_n(cfg: RunConfig) -> int:
    if len(cfg.n_range) != 1 or cfg.n_range[0] < 0:
        raise UsageError("--n must be a single nonnegative integer here")
    return cfg.n_range[0]


def cmd_gf(cfg: RunConfig) -> tuple[int, str]:
    family, statistic = _statistic_for(cfg.family, cfg.statistic)
    n = _single_n(cfg)
    poly = closed_form(family, statistic, n)
    status = EXIT_OK
    if cfg.format == "json":
        payload = {"family": family, "statistic": statistic, "n": n, "closed_form": json.loads(poly.to_json())}
    else:
        lines = [str(poly)]
    if cfg.oracle:
        if n > oracle.CAPS[family]:
            raise UsageError(f"--oracle needs n <= {oracle.CAPS[family]} for {family}")
        brute = oracle.gf_from_oracle(statistic, family, n, jobs=cfg.jobs)
        verdict = "EQUAL" if brute == poly else "DIFFER"
        status = EXIT_OK if verdict == "EQUAL" else EXIT_FAIL
        if cfg.format == "json":
            payload["oracle"] = json.loads(brute.to_json())
            payload["verdict"] = verdict
        else:
            lines = [f"closed form: {poly}", f"oracle:      {brute}", verdict]
    if cfg.format == "json":
        return status, json.dumps(payload)
    return status, "\n".join(lines)


def cmd_dist(cfg: RunConfig) -> tuple[int, str]:
    family, statistic = _statistic_for(cfg.family, cfg.statistic)
    n = _single_n(cfg)
    poly = closed_form(family, statistic, n)
    ms = cfg.m_list or [2]
    dists = [fold_mod(poly, m) for m in ms]
    devs = [deviation(d) if d.total else None for d in dists]
    if cfg.format == "json":
        recs = [{**d.to_dict(), "deviation": ratio_to_str(dev) if dev is not None else None} for d, dev in zip(dists, devs)]
        return EXIT_OK, json.dumps(recs[0] if len(recs) == 1 else recs)
    if cfg.format == "csv":
        width = max(ms)
        lines = [",".join(["m", *(f"r{r}" for r in range(width)), "total", "deviation_exact"])]
        for d, dev in zip(dists, devs):
            counts = [str(c) for c in d.counts] + [""] * (width - d.m)
            lines.append(",".join([str(d.m), *counts, str(d.total), ratio_to_str(dev) if dev is not None else ""]))
        return EXIT_OK, "\n".join(lines)
    lines = [
        f"m={d.m} counts: {','.join(map(str, d.counts))} total: {d.total} "
        f"deviation: {dev if dev is not None else 'undefined'}"
        for d, dev in zip(dists, devs)
    ]
    return EXIT_OK, "\n".join(lines)


def cmd_converge(cfg: RunConfig) -> tuple[int, str]:
    family, statistic = _statistic_for(cfg.family, cfg.statistic)
    if not cfg.n_range:
        raise UsageError("--n range is required")
    reports = []
    for m in cfg.m_list or [2]:
        try:
            reports.append(convergence_report(family, statistic, m, cfg.n_range, jobs=cfg.jobs))
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    if cfg.format == "csv":
        return EXIT_OK, reports_to_csv(reports).rstrip("\n")
    if cfg.format == "json":
        data = [r.to_dict() for r in reports]
        return EXIT_OK, json.dumps(data[0] if len(data) == 1 else data, indent=2)
    lines = []
    for rep in reports:
        lines.append(f"# {rep.family} {rep.statistic} m={rep.m}")
        for row in rep.rows:
            mags = " ".join(f"{x:.3e}" for x in row.filter_magnitudes)
            lines.append(f"n={row.n} deviation={row.deviation_float:.6e} magnitudes: {mags}")
    return EXIT_OK, "\n".join(lines)


def cmd_bounds(cfg: RunConfig) -> tuple[int, str]:
    families = [cfg.family] if cfg.family else ["derangement", "catalan"]
    for fam in families:
        if fam not in ("derangement", "catalan"):
            raise UsageError("bounds supports --family derangement or catalan")
    if not cfg.n_range:
        raise UsageError("--n range is required")
    verdicts = []
    skipped = 0
    for fam in families:
        for m in cfg.m_list or [2]:
            for n in cfg.n_range:
                if fam == "derangement":
                    if n < m:
                        skipped += 1
                        continue
                    verdicts.append(derangement_bound_check(n, m))
                else:
                    if n < 1:
                        skipped += 1
                        continue
                    verdicts.append(catalan_ratio_check(n, m))
    ok = all(v.passed for v in verdicts)
    status = EXIT_OK if ok else EXIT_FAIL
    if cfg.format == "json":
        return status, json.dumps({"verdicts": [v.to_dict() for v in verdicts], "skipped": skipped, "pass": ok}, indent=2)
    if cfg.format == "csv":
        lines = ["check,n,m,j,value,bound,margin,pass"]
        for v in verdicts:
            for e in v.per_j:
                lines.append(f"{v.check},{v.n},{v.m},{e['j']},{e['value']!r},{e['bound']!r},{e['margin']!r},{v.passed}")
        return status, "\n".join(lines)
    lines = []
    for v in verdicts:
        worst = min(e["margin"] for e in v.per_j)
        lines.append(f"{v.check} n={v.n} m={v.m} min_margin={worst:.6e} {'PASS' if v.passed else 'FAIL'}")
    if skipped:
        lines.append(f"skipped {skipped} (n, m) cells outside the precondition")
    lines.append("ALL PASS" if ok else "FAILURES PRESENT")
    return status, "\n".join(lines)


def cmd_verify(cfg: RunConfig) -> tuple[int, str]:
    max_n = cfg.max_n if cfg.max_n is not None else 6
    if max_n < 0:
        raise UsageError("--max-n must be nonnegative")
    lines = []
    records = []
    ok = True
    for (family, statistic), _ in CLOSED_FORMS.items():
        for n in range(0, min(max_n, oracle.CAPS[family]) + 1):
            equal = oracle.gf_from_oracle(statistic, family, n, jobs=cfg.jobs) == closed_form(family, statistic, n)
            ok &= equal
            records.append({"suite": "oracle", "family": family, "statistic": statistic, "n": n, "pass": equal})
            lines.append(f"oracle {family}/{statistic} n={n} {'EQUAL' if equal else 'DIFFER'}")
    for n in range(1, min(max_n, GORDON_ROSELLE_MAX_N) + 1):
        for k, l in oracle.gordon_roselle_pairs(n):
            table = oracle.joint_maj_distribution(n, k, l)
            expected = oracle.expected_joint_count(n, k, l)
            good = all(x == expected for row in table for x in row)
            ok &= good
            records.append({"suite": "gordon_roselle", "n": n, "k": k, "l": l, "pass": good})
            lines.append(f"gordon-roselle n={n} k={k} l={l} {'PASS' if good else 'FAIL'}")
    status = EXIT_OK if ok else EXIT_FAIL
    if cfg.format == "json":
        return status, json.dumps({"checks": records, "pass": ok}, indent=2)
    if cfg.format == "csv":
        rows = ["suite,family,statistic,n,k,l,pass"]
        for r in records:
            rows.append(",".join(str(r.get(key, "")) for key in ("suite", "family", "statistic", "n", "k", "l", "pass")))
        return status, "\n".join(rows)
    lines.append("ALL PASS" if ok else "FAILURES PRESENT")
    return status, "\n".join(lines)


def cmd_threshold(cfg: RunConfig) -> tuple[int, str]:
    family, statistic = _statistic_for(cfg.family, cfg.statistic)
    n_max = cfg.max_n if cfg.max_n is not None else 20
    results = []
    for m in cfg.m_list or [2]:
        n0 = exact_balance_threshold(family, statistic, m, n_max)
        rec = {"family": family, "statistic": statistic, "m": m, "n_max": n_max, "n0": n0}
        if family == "signed_perm":
            rec["stated_bound"] = 2 * m - 1
        results.append(rec)
    if cfg.format == "json":
        return EXIT_OK, json.dumps(results, indent=2)
    if cfg.format == "csv":
        rows = ["family,statistic,m,n_max,n0"]
        rows += [f"{r['family']},{r['statistic']},{r['m']},{r['n_max']},{'' if r['n0'] is None else r['n0']}" for r in results]
        return EXIT_OK, "\n".join(rows)
    lines = []
    for r in results:
        n0 = "none" if r["n0"] is None else str(r["n0"])
        extra = f" (2m-1 = {r['stated_bound']})" if "stated_bound" in r else ""
        lines.append(f"{r['family']}/{r['statistic']} m={r['m']} n0={n0} up to n={r['n_max']}{extra}")
    return EXIT_OK, "\n".join(lines)


COMMANDS = {
    "gf": cmd_gf,
    "dist": cmd_dist,
    "converge": cmd_converge,
    "verify": cmd_verify,
    "bounds": cmd_bounds,
    "threshold": cmd_threshold,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="qbalance", description="q-analog generating functions and residue balance checks")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--family", choices=sorted(DEFAULT_STATISTIC))
        p.add_argument("--statistic", choices=oracle.STATISTICS)
        p.add_argument("--n", help="integer, or inclusive range a..b")
        p.add_argument("--m", help="modulus, or comma-separated list")
        p.add_argument("--format", choices=FORMATS, default="text")
        p.add_argument("--out", help="write output to this path instead of stdout")
        p.add_argument("--oracle", action="store_true", help="also enumerate and compare (gf)")
        p.add_argument("--max-n", type=int)
        p.add_argument("--jobs", type=int, default=1, help="worker processes")
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    if args.jobs < 1:
        raise UsageError("--jobs must be positive")
    return RunConfig(
        command=args.command,
        family=args.family,
        statistic=args.statistic,
        n_range=parse_range(args.n) if args.n is not None else [],
        m_list=parse_m_list(args.m) if args.m is not None else [],
        format=args.format,
        out=args.out,
        oracle=args.oracle,
        max_n=args.max_n,
        jobs=args.jobs,
    )


def run(cfg: RunConfig) -> tuple[int, str]:
    return COMMANDS[cfg.command](cfg)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = config_from_args(args)
        status, text = run(cfg)
    except (UsageError, oracle.EnumerationCapError) as exc:
        print(f"qbalance: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if cfg.out:
        with open(cfg.out, "w", newline="") as fh:
            fh.write(text + "\n")
    else:
        sys.stdout.write(text + "\n")
    return status


if __name__ == "__main__":
    sys.exit(main())

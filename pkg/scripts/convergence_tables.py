"""Write convergence CSVs for every family over a grid of moduli.

    python scripts/convergence_tables.py --out results/ --jobs 4
"""

import argparse
from pathlib import Path

from qbalance.analysis import convergence_report, reports_to_csv

GRID = {
    ("perm", "maj"): range(1, 31),
    ("derangement", "maj"): range(2, 101),
    ("catalan", "maj"): range(1, 61),
    ("signed_perm", "fmaj"): range(1, 31),
    ("signed_derangement", "fmaj"): range(1, 41),
}


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--out", default="results")
    parser.add_argument("--moduli", default="2,3,4,5,6")
    parser.add_argument("--jobs", type=int, default=1)
    args = parser.parse_args()

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    moduli = [int(m) for m in args.moduli.split(",")]
    for (family, stat), ns in GRID.items():
        reports = [convergence_report(family, stat, m, ns, jobs=args.jobs) for m in moduli]
        path = out / f"{family}_{stat}.csv"
        path.write_text(reports_to_csv(reports))
        last = {r.m: r.rows[-1].deviation_float for r in reports}
        print(f"{path}: deviation at n={ns[-1]}: " + ", ".join(f"m={m} {v:.2e}" for m, v in last.items()))


if __name__ == "__main__":
    main()

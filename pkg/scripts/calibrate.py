"""Print the calibration values frozen into the test fixtures.

    python scripts/calibrate.py
"""

from qbalance.analysis import catalan_ratio_check, convergence_report
from qbalance.qpoly import q_catalan, q_derangement
from qbalance.residue import deviation, fold_mod


def burn_in(values):
    """First index from which the sequence is strictly decreasing."""
    start = len(values) - 1
    while start > 0 and values[start - 1] > values[start]:
        start -= 1
    return start


def main():
    print("catalan deviation at n=50")
    for m in range(2, 7):
        print(f"  m={m}: {float(deviation(fold_mod(q_catalan(50), m))):.3e}")

    print("derangement deviation at n=30")
    for m in (2, 3, 4, 5):
        print(f"  m={m}: {float(deviation(fold_mod(q_derangement(30), m))):.3e}")

    print("catalan ratio burn-in, m=3, n=5..40")
    ns = list(range(5, 41))
    checks = [catalan_ratio_check(n, 3) for n in ns]
    for j in (1, 2):
        ratios = [c.per_j[j - 1]["value"] for c in checks]
        k = burn_in(ratios)
        print(f"  j={j}: decreasing from n={ns[k]}, final ratio {ratios[-1]:.3e}")

    print("derangement deviation burn-in, m=2, even n=2..40")
    rep = convergence_report("derangement", "maj", 2, range(2, 41, 2))
    devs = [r.deviation for r in rep.rows]
    print(f"  decreasing from n={rep.rows[burn_in(devs)].n}")

    print("catalan normalized magnitude burn-in, m=2, n=1..30")
    rep = convergence_report("catalan", "maj", 2, range(1, 31))
    mags = [r.filter_magnitudes[0] for r in rep.rows]
    print(f"  decreasing from n={rep.rows[burn_in(mags)].n}, final {mags[-1]:.3e}")


if __name__ == "__main__":
    main()

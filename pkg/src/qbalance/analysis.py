"""Balanced-property reports, explicit bound checks and exact-balance scans.

Everything here runs on the closed-form polynomials from :mod:`qbalance.qpoly`,
never on enumeration, so ``n`` can go well past the oracle caps.
"""

from __future__ import annotations

import csv
import io
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, gcd
from typing import Callable, Iterable, Optional

from . import qpoly
from .qpoly import QPolynomial
from .residue import (
    FILTER_RTOL,
    deviation,
    eval_root_of_unity,
    fold_mod,
    int_ratio,
    ratio_from_str,
    ratio_to_str,
    root_magnitudes,
)

__all__ = [
    "CLOSED_FORMS",
    "DEFAULT_STATISTIC",
    "closed_form",
    "ConvergenceRow",
    "ConvergenceReport",
    "convergence_report",
    "BoundParams",
    "BoundVerdict",
    "min_phase_gap",
    "derangement_bound",
    "derangement_bound_check",
    "catalan_constant",
    "catalan_ratio_check",
    "exact_balance_threshold",
    "central_binomial_stirling_ratio",
]

# absolute tolerance on |f(w^j)| when deciding it is zero; centered counts are
# integers, so a nonzero value is far above this
ZERO_ATOL = 1e-9
BOUND_ATOL = 1e-6

CLOSED_FORMS: dict[tuple[str, str], Callable[[int], QPolynomial]] = {
    ("perm", "maj"): qpoly.maj_gf_symmetric,
    ("derangement", "maj"): qpoly.q_derangement,
    ("catalan", "maj"): qpoly.q_catalan,
    ("signed_perm", "fmaj"): qpoly.fmaj_gf_B,
    ("signed_derangement", "fmaj"): qpoly.q_derangement_B,
}
DEFAULT_STATISTIC = {family: stat for family, stat in CLOSED_FORMS}


def closed_form(family: str, statistic: str, n: int) -> QPolynomial:
    try:
        build = CLOSED_FORMS[family, statistic]
    except KeyError:
        raise ValueError(f"no closed form for statistic {statistic!r} on family {family!r}") from None
    return build(n)


@dataclass(frozen=True)
class ConvergenceRow:
    n: int
    deviation: Fraction
    deviation_float: float
    filter_magnitudes: tuple[float, ...]  # |f(w^j)| / f(1), j = 1..m-1
    raw_magnitudes: tuple[float, ...]  # |f(w^j)|, j = 1..m-1

    @property
    def exactly_balanced(self) -> bool:
        return self.deviation == 0

    def magnitudes_vanish(self) -> bool:
        return all(x <= ZERO_ATOL for x in self.raw_magnitudes)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "deviation": ratio_to_str(self.deviation),
            "deviation_float": self.deviation_float,
            "filter_magnitudes": list(self.filter_magnitudes),
            "raw_magnitudes": list(self.raw_magnitudes),
        }

    @classmethod
    def from_dict(cls, data: dict) -> ConvergenceRow:
        return cls(
            n=int(data["n"]),
            deviation=ratio_from_str(data["deviation"]),
            deviation_float=float(data["deviation_float"]),
            filter_magnitudes=tuple(float(x) for x in data["filter_magnitudes"]),
            raw_magnitudes=tuple(float(x) for x in data["raw_magnitudes"]),
        )


@dataclass(frozen=True)
class ConvergenceReport:
    family: str
    statistic: str
    m: int
    rows: tuple[ConvergenceRow, ...] = field(default_factory=tuple)

    def csv_header(self, width: Optional[int] = None) -> list[str]:
        width = self.m - 1 if width is None else width
        return ["family", "statistic", "m", "n", "deviation_exact", "deviation_float"] + [
            f"j{j}_magnitude" for j in range(1, width + 1)
        ]

    def csv_rows(self, width: Optional[int] = None) -> list[list[str]]:
        width = self.m - 1 if width is None else width
        out = []
        for row in self.rows:
            mags = [repr(x) for x in row.filter_magnitudes]
            mags += [""] * (width - len(mags))
            out.append(
                [self.family, self.statistic, str(self.m), str(row.n), ratio_to_str(row.deviation), repr(row.deviation_float)]
                + mags
            )
        return out

    def to_csv(self) -> str:
        return reports_to_csv([self])

    def to_dict(self) -> dict:
        return {
            "family": self.family,
            "statistic": self.statistic,
            "m": self.m,
            "rows": [r.to_dict() for r in self.rows],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_dict(cls, data: dict) -> ConvergenceReport:
        return cls(
            data["family"],
            data["statistic"],
            int(data["m"]),
            tuple(ConvergenceRow.from_dict(r) for r in data["rows"]),
        )

    @classmethod
    def from_json(cls, text: str) -> ConvergenceReport:
        return cls.from_dict(json.loads(text))


def reports_to_csv(reports: Iterable[ConvergenceReport]) -> str:
    """One CSV table; magnitude columns padded to the largest modulus."""
    reports = list(reports)
    width = max(r.m for r in reports) - 1
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(reports[0].csv_header(width))
    for rep in reports:
        writer.writerows(rep.csv_rows(width))
    return buf.getvalue()


def _row(args: tuple[str, str, int, int]) -> ConvergenceRow:
    family, statistic, m, n = args
    d = fold_mod(closed_form(family, statistic, n), m)
    if d.total == 0:
        raise ValueError(f"{family} of size {n} is empty; deviation undefined")
    dev = deviation(d)
    raw = root_magnitudes(d)
    return ConvergenceRow(
        n=n,
        deviation=dev,
        deviation_float=float(dev),
        filter_magnitudes=tuple(int_ratio(x, d.total) for x in raw),
        raw_magnitudes=tuple(raw),
    )


def convergence_report(family: str, statistic: str, m: int, n_range: Iterable[int], *, jobs: int = 1) -> ConvergenceReport:
    """Exact deviation and normalized filter magnitudes for each ``n``."""
    closed_form(family, statistic, 0)  # validates the pair
    ns = sorted(set(n_range))
    if not ns:
        raise ValueError("empty n range")
    tasks = [(family, statistic, m, n) for n in ns]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(_row, tasks))
    else:
        rows = [_row(t) for t in tasks]
    return ConvergenceReport(family, statistic, m, tuple(rows))


@dataclass(frozen=True)
class BoundParams:
    m: int
    j: int
    c: float
    bound: float


@dataclass(frozen=True)
class BoundVerdict:
    """Outcome of one bound check; ``per_j`` holds one dict per root index."""

    check: str
    n: int
    m: int
    c: float
    constant: float
    per_j: tuple[dict, ...]
    passed: bool
    note: str = ""

    def to_dict(self) -> dict:
        return {
            "params": {"check": self.check, "n": self.n, "m": self.m, "c": self.c, "constant": self.constant},
            "per_j": [dict(entry) for entry in self.per_j],
            "pass": self.passed,
            **({"note": self.note} if self.note else {}),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def min_phase_gap(m: int) -> float:
    """``min over 1 <= j <= m-1 of 1 - cos(2 pi j / m)``."""
    return min(1 - math.cos(2 * math.pi * j / m) for j in range(1, m))


def derangement_bound(m: int) -> BoundParams:
    """Constant ``(m-1) (2/c)^((m-2)/2)`` bounding ``|d_n(w^j)|`` once ``n >= m``."""
    c = min_phase_gap(m)
    return BoundParams(m=m, j=0, c=c, bound=(m - 1) * (2 / c) ** ((m - 2) / 2))


def derangement_bound_check(n: int, m: int) -> BoundVerdict:
    params = derangement_bound(m)
    if n < m:
        return BoundVerdict("derangement", n, m, params.c, params.bound, (), False, note="precondition n >= m violated")
    d = fold_mod(qpoly.q_derangement(n), m)
    per_j = []
    for j in range(1, m):
        value = abs(eval_root_of_unity(d, j))
        per_j.append({"j": j, "value": value, "bound": params.bound, "margin": params.bound - value})
    passed = all(e["margin"] >= -BOUND_ATOL for e in per_j)
    return BoundVerdict("derangement", n, m, params.c, params.bound, tuple(per_j), passed)


def catalan_constant(m: int) -> tuple[float, float]:
    """``(c, K)`` with ``K = (2/c)^((m-2)/2)`` for the Catalan ratio check.

    ``c`` is the smallest ``1 - cos(2 pi t j / m)`` over ``t j`` not divisible
    by ``m``; every such value is ``1 - cos(2 pi k / m)`` for some nonzero
    residue ``k``, so ``c = 1 - cos(2 pi / m)``.
    """
    c = min(
        1 - math.cos(2 * math.pi * ((t * j) % m) / m)
        for j in range(1, m)
        for t in range(1, m)
        if (t * j) % m
    )
    return c, (2 / c) ** ((m - 2) / 2)


def catalan_ratio_check(n: int, m: int) -> BoundVerdict:
    """Check ``|C_n(w^j)|/C_n(1) <= K (n+1) C(2l+1, l) / C(2n, n)`` for each ``j``.

    ``v = m / gcd(j, m)`` is the order of ``w^j`` and ``l = n // v``.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    c, K = catalan_constant(m)
    d = fold_mod(qpoly.q_catalan(n), m)
    per_j = []
    for j in range(1, m):
        v = m // gcd(j, m)
        l = n // v
        ratio = int_ratio(abs(eval_root_of_unity(d, j)), d.total)
        bound = K * float(Fraction((n + 1) * comb(2 * l + 1, l), comb(2 * n, n)))
        per_j.append({"j": j, "v": v, "l": l, "value": ratio, "bound": bound, "margin": bound - ratio})
    passed = all(e["value"] <= e["bound"] * (1 + FILTER_RTOL) for e in per_j)
    return BoundVerdict("catalan", n, m, c, K, tuple(per_j), passed)


def _balanced_at(family: str, statistic: str, m: int, n: int) -> bool:
    d = fold_mod(closed_form(family, statistic, n), m)
    return d.total > 0 and d.is_uniform()


def exact_balance_threshold(family: str, statistic: str, m: int, n_max: int, *, n_min: int = 0) -> Optional[int]:
    """Smallest ``n0`` with exact balance at every ``n0 <= n <= n_max``, else None."""
    threshold = None
    for n in range(n_max, n_min - 1, -1):
        if not _balanced_at(family, statistic, m, n):
            break
        threshold = n
    return threshold


def central_binomial_stirling_ratio(n: int) -> float:
    """``C(2n, n) sqrt(pi n) / 4^n``, which tends to 1 from below."""
    return float(Fraction(comb(2 * n, n), 4**n)) * math.sqrt(math.pi * n)

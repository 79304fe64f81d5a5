"""Residue classes of generating polynomials and root-of-unity filters.

Counts are always folded exactly in integers. Complex evaluations at roots of
unity are diagnostic and run in double precision on *centered* counts:
subtracting a constant from every class leaves ``f(w^j)`` unchanged for
``j != 0``, and keeps nearly balanced distributions at small magnitudes.
"""

from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass
from fractions import Fraction

from .qpoly import QPolynomial

__all__ = [
    "MIN_MODULUS",
    "MAX_MODULUS",
    "FILTER_RTOL",
    "ResidueDistribution",
    "fold_mod",
    "eval_root_of_unity",
    "root_magnitudes",
    "normalized_magnitudes",
    "filter_sum",
    "filter_kernel",
    "deviation",
    "ratio_to_str",
    "ratio_from_str",
    "int_ratio",
]

MIN_MODULUS = 2
MAX_MODULUS = 64
FILTER_RTOL = 1e-9


def _check_modulus(m: int) -> None:
    if not MIN_MODULUS <= m <= MAX_MODULUS:
        raise ValueError(f"modulus must lie in [{MIN_MODULUS}, {MAX_MODULUS}], got {m}")


@dataclass(frozen=True)
class ResidueDistribution:
    m: int
    counts: tuple[int, ...]
    total: int

    def __post_init__(self):
        _check_modulus(self.m)
        if len(self.counts) != self.m:
            raise ValueError("need exactly m counts")
        if sum(self.counts) != self.total:
            raise ValueError("total must equal the sum of counts")

    def is_uniform(self) -> bool:
        return len(set(self.counts)) == 1

    def to_dict(self) -> dict:
        return {"m": self.m, "counts": [str(c) for c in self.counts], "total": str(self.total)}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict) -> ResidueDistribution:
        return cls(int(data["m"]), tuple(int(c) for c in data["counts"]), int(data["total"]))

    @classmethod
    def from_json(cls, text: str) -> ResidueDistribution:
        return cls.from_dict(json.loads(text))


def fold_mod(p: QPolynomial, m: int) -> ResidueDistribution:
    """Sum coefficients by exponent class mod ``m`` (``p`` reduced mod ``q^m - 1``)."""
    _check_modulus(m)
    counts = [0] * m
    for k, c in enumerate(p.coeffs):
        counts[k % m] += c
    return ResidueDistribution(m, tuple(counts), sum(counts))


def int_ratio(num: float | int, den: int) -> float:
    """``num / den`` for a possibly huge integer ``den``, without overflow."""
    if den == 0:
        raise ZeroDivisionError("empty distribution")
    if isinstance(num, int):
        return num / den
    shift = max(0, den.bit_length() - 1000)
    return math.ldexp(num / (den >> shift), -shift) if shift else num / den


def eval_root_of_unity(d: ResidueDistribution, j: int) -> complex:
    """``sum_r counts[r] * exp(2 pi i j r / m)``."""
    m = d.m
    if not 0 <= j < m:
        raise ValueError(f"root index must lie in [0, {m - 1}], got {j}")
    if j == 0:
        return complex(float(d.total), 0.0)
    base = min(d.counts)
    re, im = [], []
    for r, c in enumerate(d.counts):
        c -= base
        if not c:
            continue
        k = (j * r) % m
        if k == 0:
            re.append(float(c))
            continue
        angle = 2 * math.pi * k / m
        re.append(c * math.cos(angle))
        im.append(c * math.sin(angle))
    return complex(math.fsum(re), math.fsum(im))


def root_magnitudes(d: ResidueDistribution) -> list[float]:
    """``|f(w^j)|`` for ``j = 1 .. m-1``."""
    return [abs(eval_root_of_unity(d, j)) for j in range(1, d.m)]


def normalized_magnitudes(d: ResidueDistribution) -> list[float]:
    """``|f(w^j)| / f(1)`` for ``j = 1 .. m-1``."""
    if d.total == 0:
        raise ValueError("empty distribution has no normalized magnitudes")
    return [int_ratio(x, d.total) for x in root_magnitudes(d)]


def filter_sum(p: QPolynomial, m: int, r: int) -> complex:
    """``sum_j f(w^j) w^{-jr}`` over all ``j = 0 .. m-1``.

    Equals ``m`` times the number of objects whose statistic is ``r`` mod
    ``m``, up to rounding.
    """
    _check_modulus(m)
    if not 0 <= r < m:
        raise ValueError(f"residue must lie in [0, {m - 1}], got {r}")
    d = fold_mod(p, m)
    terms = [eval_root_of_unity(d, j) * cmath.exp(-2j * math.pi * ((j * r) % m) / m) for j in range(m)]
    return complex(math.fsum(t.real for t in terms), math.fsum(t.imag for t in terms))


def filter_kernel(k: int, r: int, m: int) -> int:
    """``sum_j w^{(k-r)j}``: ``m`` if ``m | k-r`` else 0."""
    if m < MIN_MODULUS:
        raise ValueError("modulus must be at least 2")
    return m if (k - r) % m == 0 else 0


def deviation(d: ResidueDistribution) -> Fraction:
    """Exact ``max_r |counts[r]/total - 1/m|``."""
    if d.total == 0:
        raise ValueError("deviation of an empty distribution is undefined")
    share = Fraction(1, d.m)
    return max(abs(Fraction(c, d.total) - share) for c in d.counts)


def ratio_to_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def ratio_from_str(text: str) -> Fraction:
    num, _, den = text.partition("/")
    return Fraction(int(num), int(den or 1))

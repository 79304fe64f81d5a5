"""Brute-force enumeration of the combinatorial families and their statistics.

Objects are plain tuples in one-line notation. Enumeration is lexicographic
in the value sequence; signed values are ordered ``-n < ... < -1 < 1 < ... < n``.
"""

from __future__ import annotations

from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from functools import lru_cache
from itertools import permutations
from math import factorial, gcd
from typing import Callable, Iterator, NewType, Sequence

from .qpoly import QPolynomial

__all__ = [
    "Permutation",
    "SignedPermutation",
    "CatalanWord",
    "EnumerationCapError",
    "CAPS",
    "FAMILIES",
    "STATISTICS",
    "maj",
    "neg",
    "fmaj",
    "inverse",
    "is_derangement",
    "is_signed_derangement",
    "enumerate_family",
    "enumerate_permutations",
    "enumerate_derangements",
    "enumerate_signed_permutations",
    "enumerate_signed_derangements",
    "enumerate_catalan_words",
    "gf_from_oracle",
    "joint_maj_distribution",
    "maj_imaj_counts",
    "gordon_roselle_pairs",
    "expected_joint_count",
]

# a permutation of 1..n in one-line notation
Permutation = NewType("Permutation", tuple[int, ...])
# position i holds +sigma(i) or -sigma(i)
SignedPermutation = NewType("SignedPermutation", tuple[int, ...])
# n zeros and n ones, no prefix with more ones than zeros
CatalanWord = NewType("CatalanWord", tuple[int, ...])

CAPS = {
    "perm": 9,
    "derangement": 9,
    "signed_perm": 6,
    "signed_derangement": 6,
    "catalan": 14,
}
FAMILIES = tuple(CAPS)
STATISTICS = ("maj", "fmaj")

_APPLICABLE = {
    "perm": ("maj",),
    "derangement": ("maj",),
    "catalan": ("maj",),
    "signed_perm": ("fmaj",),
    "signed_derangement": ("fmaj",),
}


class EnumerationCapError(ValueError):
    """Requested enumeration is larger than the family's cap."""


def maj(word: Sequence) -> int:
    """Sum of the 1-based positions ``i`` with ``word[i] > word[i+1]``."""
    return sum(i for i in range(1, len(word)) if word[i - 1] > word[i])


def neg(sp: Sequence[int]) -> int:
    return sum(1 for x in sp if x < 0)


def fmaj(sp: Sequence[int]) -> int:
    """Flag major index ``2*maj + neg``, descents read in integer order."""
    return 2 * maj(sp) + neg(sp)


def inverse(p: Sequence[int]) -> Permutation:
    inv = [0] * len(p)
    for i, v in enumerate(p, 1):
        inv[v - 1] = i
    return Permutation(tuple(inv))


def is_derangement(p: Sequence[int]) -> bool:
    return all(v != i for i, v in enumerate(p, 1))


def is_signed_derangement(sp: Sequence[int]) -> bool:
    # -i in position i is not a fixed point
    return all(v != i for i, v in enumerate(sp, 1))


def _check_cap(family: str, n: int) -> None:
    if family not in CAPS:
        raise ValueError(f"unknown family {family!r}; expected one of {', '.join(FAMILIES)}")
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n > CAPS[family]:
        raise EnumerationCapError(f"{family} enumeration is capped at n={CAPS[family]}, got n={n}")


def _perms_with_prefix(n: int, prefix: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
    rest = [v for v in range(1, n + 1) if v not in prefix]
    for tail in permutations(rest):
        yield prefix + tail


def _signed_with_prefix(n: int, prefix: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
    used = {abs(v) for v in prefix}
    avail = [v for v in range(1, n + 1) if v not in used]
    if not avail:
        yield prefix
        return
    for v in [-a for a in reversed(avail)] + avail:
        yield from _signed_with_prefix(n, prefix + (v,))


def _catalan_with_prefix(n: int, prefix: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
    zeros = ones = 0
    for b in prefix:
        zeros += b == 0
        ones += b == 1
        if ones > zeros or zeros > n:
            return
    word = list(prefix)

    def extend(z: int, o: int) -> Iterator[tuple[int, ...]]:
        if z == n and o == n:
            yield tuple(word)
            return
        if z < n:
            word.append(0)
            yield from extend(z + 1, o)
            word.pop()
        if o < z:
            word.append(1)
            yield from extend(z, o + 1)
            word.pop()

    yield from extend(zeros, ones)


def _family_stream(family: str, n: int, prefix: tuple[int, ...] = ()) -> Iterator[tuple[int, ...]]:
    if family in ("perm", "derangement"):
        stream = _perms_with_prefix(n, prefix)
        return filter(is_derangement, stream) if family == "derangement" else stream
    if family in ("signed_perm", "signed_derangement"):
        stream = _signed_with_prefix(n, prefix)
        return filter(is_signed_derangement, stream) if family == "signed_derangement" else stream
    if family == "catalan":
        return _catalan_with_prefix(n, prefix)
    raise ValueError(f"unknown family {family!r}")


def enumerate_family(family: str, n: int) -> Iterator[tuple[int, ...]]:
    _check_cap(family, n)
    return _family_stream(family, n)


def enumerate_permutations(n: int) -> Iterator[Permutation]:
    return enumerate_family("perm", n)


def enumerate_derangements(n: int) -> Iterator[Permutation]:
    return enumerate_family("derangement", n)


def enumerate_signed_permutations(n: int) -> Iterator[SignedPermutation]:
    return enumerate_family("signed_perm", n)


def enumerate_signed_derangements(n: int) -> Iterator[SignedPermutation]:
    return enumerate_family("signed_derangement", n)


def enumerate_catalan_words(n: int) -> Iterator[CatalanWord]:
    return enumerate_family("catalan", n)


_STAT_FUNCS: dict[str, Callable[[Sequence[int]], int]] = {"maj": maj, "fmaj": fmaj}


def _partition_prefixes(family: str, n: int) -> list[tuple[int, ...]]:
    """Disjoint prefixes covering the family, in enumeration order."""
    if n == 0:
        return [()]
    if family in ("perm", "derangement"):
        return [(v,) for v in range(1, n + 1)]
    if family in ("signed_perm", "signed_derangement"):
        return [(v,) for v in list(range(-n, 0)) + list(range(1, n + 1))]
    # catalan words all start with 0; split on the first few letters
    depth = min(2 * n, 4)
    prefixes = [()]
    for _ in range(depth):
        prefixes = [p + (b,) for p in prefixes for b in (0, 1)]
    return [p for p in prefixes if next(_catalan_with_prefix(n, p), None) is not None]


def _partial_counts(args: tuple[str, str, int, tuple[int, ...]]) -> dict[int, int]:
    statistic, family, n, prefix = args
    stat = _STAT_FUNCS[statistic]
    return dict(Counter(stat(obj) for obj in _family_stream(family, n, prefix)))


def _counts_to_poly(counts: Counter) -> QPolynomial:
    if not counts:
        return QPolynomial()
    return QPolynomial(tuple(counts.get(k, 0) for k in range(max(counts) + 1)))


def gf_from_oracle(statistic: str, family: str, n: int, *, jobs: int = 1) -> QPolynomial:
    """Generating polynomial of ``statistic`` over ``family`` by enumeration.

    With ``jobs > 1`` the family is split by prefix and counted in worker
    processes; partial counts are merged by addition, so the result does not
    depend on scheduling.
    """
    if statistic not in _STAT_FUNCS:
        raise ValueError(f"unknown statistic {statistic!r}")
    _check_cap(family, n)
    if statistic not in _APPLICABLE[family]:
        raise ValueError(f"statistic {statistic!r} does not apply to family {family!r}")
    tasks = [(statistic, family, n, p) for p in _partition_prefixes(family, n)]
    total: Counter = Counter()
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for part in pool.map(_partial_counts, tasks):
                total.update(part)
    else:
        for task in tasks:
            total.update(_partial_counts(task))
    return _counts_to_poly(total)


def joint_maj_distribution(n: int, k: int, l: int) -> list[list[int]]:
    """Counts of ``maj(p) mod k`` against ``maj(p^-1) mod l`` over S_n."""
    _check_cap("perm", n)
    if not (1 <= k <= max(n, 1) and 1 <= l <= max(n, 1)):
        raise ValueError("moduli must satisfy 1 <= k, l <= n")
    table = [[0] * l for _ in range(k)]
    for (a, b), count in maj_imaj_counts(n).items():
        table[a % k][b % l] += count
    return table


@lru_cache(maxsize=None)
def maj_imaj_counts(n: int) -> dict[tuple[int, int], int]:
    """Joint counts of ``(maj(p), maj(p^-1))`` over S_n."""
    _check_cap("perm", n)
    return dict(Counter((maj(p), maj(inverse(p))) for p in enumerate_permutations(n)))


def gordon_roselle_pairs(n: int) -> list[tuple[int, int]]:
    """Coprime pairs ``1 <= k, l <= n`` for which the joint count is ``n!/(kl)``."""
    return [(k, l) for k in range(1, n + 1) for l in range(1, n + 1) if gcd(k, l) == 1]


def expected_joint_count(n: int, k: int, l: int) -> int:
    q, r = divmod(factorial(n), k * l)
    if r:
        raise ValueError(f"{k * l} does not divide {n}!")
    return q

"""Dense polynomials in q with exact integer coefficients.

A :class:`QPolynomial` stores ``coeffs[k]`` = coefficient of ``q**k``. Besides
ring arithmetic, this module builds the closed-form generating functions:

>>> q_factorial(3)
QPolynomial(1 + 2q + 2q^2 + q^3)
>>> q_derangement(3)
QPolynomial(q + q^2)
>>> q_catalan(2)
QPolynomial(1 + q^2)
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Iterable, Sequence

__all__ = [
    "InexactDivisionError",
    "QPolynomial",
    "ZERO",
    "ONE",
    "add",
    "subtract",
    "multiply",
    "exact_divide",
    "multiply_by_q_integer",
    "divide_by_q_integer",
    "q_integer",
    "q_factorial",
    "gaussian_binomial",
    "q_catalan",
    "q_derangement",
    "maj_gf_symmetric",
    "fmaj_gf_B",
    "q_derangement_B",
]

# operand length above which multiply switches to Kronecker substitution
KRONECKER_CUTOFF = 48


class InexactDivisionError(ArithmeticError):
    """Polynomial division left a nonzero remainder."""


def _strip(coeffs: list[int]) -> tuple[int, ...]:
    end = len(coeffs)
    while end and not coeffs[end - 1]:
        end -= 1
    return tuple(coeffs[:end])


@dataclass(frozen=True)
class QPolynomial:
    """Polynomial in q over the integers, lowest exponent first.

    The zero polynomial has ``coeffs == ()``; otherwise the last coefficient
    is nonzero.
    """

    coeffs: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _strip([int(c) for c in self.coeffs]))

    @classmethod
    def monomial(cls, k: int, c: int = 1) -> QPolynomial:
        if k < 0:
            raise ValueError("negative exponent")
        return cls((0,) * k + (c,))

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def coefficient(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __call__(self, x):
        # Horner; works for ints, Fractions and complex numbers alike
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def at_one(self) -> int:
        return sum(self.coeffs)

    def shift(self, k: int) -> QPolynomial:
        """Multiply by ``q**k``."""
        if not self.coeffs or k == 0:
            return self
        return QPolynomial((0,) * k + self.coeffs)

    def __add__(self, other: QPolynomial) -> QPolynomial:
        return add(self, other)

    def __sub__(self, other: QPolynomial) -> QPolynomial:
        return subtract(self, other)

    def __neg__(self) -> QPolynomial:
        return QPolynomial(tuple(-c for c in self.coeffs))

    def __mul__(self, other: QPolynomial) -> QPolynomial:
        return multiply(self, other)

    def __floordiv__(self, other: QPolynomial) -> QPolynomial:
        return exact_divide(self, other)

    def __len__(self) -> int:
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            mag = abs(c)
            if k == 0:
                body = str(mag)
            else:
                var = "q" if k == 1 else f"q^{k}"
                body = var if mag == 1 else f"{mag}{var}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"QPolynomial({self})"

    def to_json(self) -> str:
        return json.dumps([str(c) for c in self.coeffs])

    @classmethod
    def from_json(cls, text: str) -> QPolynomial:
        return cls(tuple(int(c) for c in json.loads(text)))


ZERO = QPolynomial()
ONE = QPolynomial((1,))


def add(p: QPolynomial, r: QPolynomial) -> QPolynomial:
    a, b = p.coeffs, r.coeffs
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return QPolynomial(tuple(out))


def subtract(p: QPolynomial, r: QPolynomial) -> QPolynomial:
    out = list(p.coeffs) + [0] * max(0, len(r.coeffs) - len(p.coeffs))
    for i, c in enumerate(r.coeffs):
        out[i] -= c
    return QPolynomial(tuple(out))


def _mul_schoolbook(a: Sequence[int], b: Sequence[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _pack(coeffs: Sequence[int], width: int) -> int:
    return int.from_bytes(b"".join(c.to_bytes(width, "little") for c in coeffs), "little")


def _unpack(value: int, width: int, length: int) -> list[int]:
    raw = value.to_bytes(width * length, "little")
    return [int.from_bytes(raw[i * width:(i + 1) * width], "little") for i in range(length)]


def _mul_kronecker_nonneg(a: Sequence[int], b: Sequence[int]) -> list[int]:
    length = len(a) + len(b) - 1
    if not any(a) or not any(b):
        return [0] * length
    bound = max(a) * max(b) * min(len(a), len(b))
    width = bound.bit_length() // 8 + 1
    prod = _pack(a, width) * _pack(b, width)
    return _unpack(prod, width, length)


def _mul_kronecker(a: Sequence[int], b: Sequence[int]) -> list[int]:
    # split into nonnegative parts so every packed slot stays nonnegative
    ap = [c if c > 0 else 0 for c in a]
    an = [-c if c < 0 else 0 for c in a]
    bp = [c if c > 0 else 0 for c in b]
    bn = [-c if c < 0 else 0 for c in b]
    out = _mul_kronecker_nonneg(ap, bp)
    if any(an) or any(bn):
        for sign, x, y in ((1, an, bn), (-1, ap, bn), (-1, an, bp)):
            for i, c in enumerate(_mul_kronecker_nonneg(x, y)):
                out[i] += sign * c
    return out


def multiply(p: QPolynomial, r: QPolynomial, *, method: str = "auto") -> QPolynomial:
    """Product of two polynomials.

    ``method`` is ``"schoolbook"``, ``"kronecker"`` or ``"auto"``; all three
    give identical coefficients.
    """
    a, b = p.coeffs, r.coeffs
    if not a or not b:
        return ZERO
    if method == "auto":
        method = "kronecker" if min(len(a), len(b)) > KRONECKER_CUTOFF else "schoolbook"
    if method == "schoolbook":
        return QPolynomial(tuple(_mul_schoolbook(a, b)))
    if method == "kronecker":
        return QPolynomial(tuple(_mul_kronecker(a, b)))
    raise ValueError(f"unknown multiplication method {method!r}")


def divmod_poly(p: QPolynomial, r: QPolynomial) -> tuple[QPolynomial, QPolynomial]:
    """Long division over the integers.

    Requires the leading coefficient of ``r`` to divide every leading term
    met during the division; raises :class:`InexactDivisionError` otherwise.
    """
    if r.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    rem = list(p.coeffs)
    d = r.coeffs
    lead = d[-1]
    n = len(d) - 1
    if len(rem) <= n:
        return ZERO, p
    quot = [0] * (len(rem) - n)
    for k in range(len(rem) - 1, n - 1, -1):
        c = rem[k]
        if not c:
            continue
        qc, leftover = divmod(c, lead)
        if leftover:
            raise InexactDivisionError("leading coefficient does not divide over the integers")
        quot[k - n] = qc
        base = k - n
        for i, dc in enumerate(d):
            rem[base + i] -= qc * dc
    return QPolynomial(tuple(quot)), QPolynomial(tuple(rem[:n]))


def exact_divide(p: QPolynomial, r: QPolynomial) -> QPolynomial:
    quot, rem = divmod_poly(p, r)
    if not rem.is_zero():
        raise InexactDivisionError(f"remainder {rem} after dividing by {r}")
    return quot


def multiply_by_q_integer(p: QPolynomial, t: int) -> QPolynomial:
    """``p * [t]_q`` by a sliding window sum, O(deg p + t)."""
    if t < 0:
        raise ValueError("t must be nonnegative")
    a = p.coeffs
    if t == 0 or not a:
        return ZERO
    out = [0] * (len(a) + t - 1)
    window = 0
    for i in range(len(out)):
        if i < len(a):
            window += a[i]
        if 0 <= i - t < len(a):
            window -= a[i - t]
        out[i] = window
    return QPolynomial(tuple(out))


def divide_by_q_integer(p: QPolynomial, t: int) -> QPolynomial:
    """Exact quotient ``p / [t]_q``, computed as ``p*(1-q) / (1-q^t)``."""
    if t <= 0:
        raise ZeroDivisionError("[0]_q is the zero polynomial")
    a = p.coeffs
    if not a:
        return ZERO
    b = [a[0]] + [a[i] - a[i - 1] for i in range(1, len(a))] + [-a[-1]]
    series = [0] * len(b)
    for i, c in enumerate(b):
        series[i] = c + (series[i - t] if i >= t else 0)
    qdeg = len(a) - t  # degree of the quotient if exact
    if qdeg < 0 or any(series[qdeg + 1:]):
        raise InexactDivisionError(f"{p} is not divisible by [{t}]_q")
    return QPolynomial(tuple(series[:qdeg + 1]))


@lru_cache(maxsize=None)
def q_integer(n: int) -> QPolynomial:
    if n < 0:
        raise ValueError("n must be nonnegative")
    return QPolynomial((1,) * n)


@lru_cache(maxsize=None)
def q_factorial(n: int) -> QPolynomial:
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        return ONE
    return multiply_by_q_integer(q_factorial(n - 1), n)


def _gaussian_by_factorials(n: int, k: int) -> QPolynomial:
    denom = multiply(q_factorial(k), q_factorial(n - k))
    return exact_divide(q_factorial(n), denom)


def _gaussian_incremental(n: int, k: int) -> QPolynomial:
    k = min(k, n - k)
    g = ONE
    for i in range(k):
        g = divide_by_q_integer(multiply_by_q_integer(g, n - i), i + 1)
    return g


def gaussian_binomial(n: int, k: int, *, method: str = "incremental") -> QPolynomial:
    """q-binomial coefficient; zero outside ``0 <= k <= n``.

    ``method="factorial"`` performs one long division of ``[n]_q!`` by
    ``[k]_q![n-k]_q!``; ``"incremental"`` multiplies and divides one q-integer
    at a time. Both raise :class:`InexactDivisionError` on a remainder.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if k < 0 or k > n:
        return ZERO
    if method == "factorial":
        return _gaussian_by_factorials(n, k)
    if method == "incremental":
        return _cached_gaussian(n, k)
    raise ValueError(f"unknown method {method!r}")


@lru_cache(maxsize=256)
def _cached_gaussian(n: int, k: int) -> QPolynomial:
    return _gaussian_incremental(n, k)


def q_catalan(n: int, *, method: str = "incremental") -> QPolynomial:
    if n < 0:
        raise ValueError("n must be nonnegative")
    central = gaussian_binomial(2 * n, n, method=method)
    if method == "factorial":
        cat = exact_divide(central, q_integer(n + 1))
    else:
        cat = divide_by_q_integer(central, n + 1)
    if cat.at_one() != comb(2 * n, n) // (n + 1):
        raise ArithmeticError(f"C_{n}(1) is not the Catalan number")
    return cat


def _alternating_sum(n: int, step: int, shift_of) -> QPolynomial:
    """Sum over k of (-1)^k q^{shift_of(k)} prod_{k<t<=n} [step*t]_q."""
    terms = []
    prod = ONE
    for k in range(n, -1, -1):
        terms.append((k, prod))
        if k:
            prod = multiply_by_q_integer(prod, step * k)
    width = max(len(p) + shift_of(k) for k, p in terms)
    acc = [0] * width
    for k, p in terms:
        sign = -1 if k % 2 else 1
        s = shift_of(k)
        for i, c in enumerate(p.coeffs):
            acc[s + i] += sign * c
    result = QPolynomial(tuple(acc))
    if any(c < 0 for c in result.coeffs):
        raise ArithmeticError(f"negative coefficient in alternating sum for n={n}")
    return result


@lru_cache(maxsize=None)
def q_derangement(n: int) -> QPolynomial:
    """Major-index generating function of the derangements of ``[n]``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return _alternating_sum(n, 1, lambda k: k * (k - 1) // 2)


def maj_gf_symmetric(n: int) -> QPolynomial:
    return q_factorial(n)


@lru_cache(maxsize=None)
def fmaj_gf_B(n: int) -> QPolynomial:
    """``[2]_q [4]_q ... [2n]_q``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        return ONE
    return multiply_by_q_integer(fmaj_gf_B(n - 1), 2 * n)


@lru_cache(maxsize=None)
def q_derangement_B(n: int) -> QPolynomial:
    """Flag-major generating function of the type-B derangements of ``[n]``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return _alternating_sum(n, 2, lambda k: k * (k - 1))


def from_coeffs(coeffs: Iterable[int]) -> QPolynomial:
    return QPolynomial(tuple(coeffs))

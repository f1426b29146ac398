"""Exact integer and rational helpers shared by the rest of the package.

Rationals are plain :class:`fractions.Fraction` values; they are already kept
in lowest terms with a positive denominator, and zero is always ``0/1``.
"""

from __future__ import annotations

import math
import threading
from fractions import Fraction
from typing import Iterable

__all__ = [
    "InconsistencyError",
    "OracleBoundError",
    "TheoremViolation",
    "FACTORIAL_CACHE_BOUND",
    "make_rat",
    "parse_rat",
    "rat_str",
    "factorial",
    "binomial",
    "multinomial",
    "frac_part",
    "as_integer",
]

FACTORIAL_CACHE_BOUND = 512


class InconsistencyError(ArithmeticError):
    """Two routes that must agree exactly did not, or a sum that must be integral is not."""


class TheoremViolation(ArithmeticError):
    """A checked congruence or integrality statement failed."""


class OracleBoundError(ValueError):
    """A brute-force oracle was asked for an input above its guard."""


def make_rat(num: int, den: int = 1) -> Fraction:
    if den == 0:
        raise ZeroDivisionError("division by zero")
    return Fraction(num, den)


def parse_rat(text: str) -> Fraction:
    """Inverse of :func:`rat_str`."""
    num, _, den = text.strip().partition("/")
    return make_rat(int(num), int(den) if den else 1)


def rat_str(q: Fraction | int) -> str:
    """Render ``q`` as ``"num/den"``, or ``"num"`` when the denominator is 1."""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


_fact_lock = threading.Lock()
_fact_table: list[int] = [1]


def factorial(n: int) -> int:
    if n < 0:
        raise ValueError(f"factorial of negative number {n}")
    if n > FACTORIAL_CACHE_BOUND:
        return math.factorial(n)
    table = _fact_table
    if n < len(table):
        return table[n]
    with _fact_lock:
        while len(_fact_table) <= n:
            _fact_table.append(_fact_table[-1] * len(_fact_table))
    return _fact_table[n]


def binomial(n: int, k: int) -> int:
    """C(n, k), taken to be 0 outside ``0 <= k <= n``."""
    if n < 0:
        raise ValueError(f"binomial with negative n={n}")
    if k < 0 or k > n:
        return 0
    return factorial(n) // (factorial(k) * factorial(n - k))


def multinomial(parts: Iterable[int]) -> int:
    parts = list(parts)
    if any(p < 0 for p in parts):
        raise ValueError(f"multinomial with negative part: {parts}")
    result = factorial(sum(parts))
    for p in parts:
        result //= factorial(p)
    return result


def frac_part(q: Fraction | int) -> Fraction:
    """Fractional part ``q - floor(q)``, always in ``[0, 1)``."""
    q = Fraction(q)
    return q - math.floor(q)


def as_integer(q: Fraction | int, what: str = "value") -> int:
    """Return ``q`` as an int, raising :class:`InconsistencyError` if it is not integral."""
    q = Fraction(q)
    if q.denominator != 1:
        raise InconsistencyError(f"{what} should be an integer, got {rat_str(q)}")
    return q.numerator

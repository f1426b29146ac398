"""Denominators and congruences of level-2 (poly-)Bernoulli numbers.

Here ``n`` again means half the subscript: ``bernoulli2(n)`` is ``B_2n``
with level 2, the ``k = 1`` case of :func:`polybern2.polynum.pb2_explicit`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from polybern2.core import TheoremViolation, frac_part, rat_str
from polybern2.polynum import bernoulli, pb2_explicit

__all__ = [
    "KNOWN_BERNOULLI2",
    "KNOWN_FRACTIONAL_PARTS",
    "MOD5_GRID",
    "MOD7_GRID",
    "is_prime",
    "primes_for",
    "VscReport",
    "vsc_defect",
    "bernoulli2",
    "frac_table",
    "cosecant_number",
    "DenominatorReport",
    "denominator_match",
    "pb2_residue",
    "ResidueTable",
    "cong5_closed",
    "cong7_closed",
    "cong5_table",
    "cong7_table",
    "cong6_check",
    "periodicity_check",
]

# B_0, B_2, ..., B_20 with level 2
KNOWN_BERNOULLI2 = tuple(
    Fraction(a, b)
    for a, b in [
        (1, 1),
        (2, 3),
        (62, 15),
        (1670, 21),
        (47102, 15),
        (6936718, 33),
        (29167388522, 1365),
        (9208191626, 3),
        (150996747969694, 255),
        (58943788779804242, 399),
        (7637588708954836042, 165),
    ]
)

# B_2n mod 1 for 2n = 0, 2, ..., 20
KNOWN_FRACTIONAL_PARTS = tuple(
    Fraction(a, b)
    for a, b in [
        (0, 1),
        (2, 3),
        (2, 15),
        (11, 21),
        (2, 15),
        (19, 33),
        (272, 1365),
        (2, 3),
        (19, 255),
        (188, 399),
        (37, 165),
    ]
)

# B_2n^(-k) mod 5, rows n mod 2, columns k mod 4
MOD5_GRID = (
    (3, 4, 2, 1),
    (2, 1, 3, 4),
)

# B_2n^(-k) mod 7, rows n mod 6, columns k mod 6
MOD7_GRID = (
    (6, 6, 0, 1, 1, 0),
    (2, 6, 4, 5, 1, 3),
    (1, 2, 1, 6, 5, 6),
    (1, 1, 0, 6, 6, 0),
    (5, 1, 3, 2, 6, 4),
    (6, 5, 6, 1, 2, 1),
)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for f in range(3, math.isqrt(n) + 1, 2):
        if n % f == 0:
            return False
    return True


def primes_for(n: int) -> list[int]:
    """Odd primes ``p`` with ``(p - 1) | 2n``, ascending."""
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    two_n = 2 * n
    return [d + 1 for d in range(2, two_n + 1) if two_n % d == 0 and is_prime(d + 1)]


def bernoulli2(n: int) -> Fraction:
    """Bernoulli number with level 2, ``B_2n = B_2n^(1)``."""
    return pb2_explicit(n, 1)


@dataclass(frozen=True)
class VscReport:
    """``B_2n`` together with its correction terms ``(-1)^(n - (p-1)/2) / p``."""

    n: int
    value: Fraction
    terms: tuple[tuple[int, Fraction], ...]
    defect: Fraction = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "defect", self.value + sum((t for _, t in self.terms), Fraction(0)))

    @property
    def reduced_defect(self) -> Fraction:
        """``(B_2n mod 1) + sum of terms``; an integer whenever :attr:`defect` is."""
        return frac_part(self.value) + sum((t for _, t in self.terms), Fraction(0))

    def lines(self) -> list[str]:
        sub = 2 * self.n
        terms = " ".join(
            f"{'+' if t > 0 else '-'} 1/{p}" for p, t in self.terms
        )
        return [
            f"n = {self.n}",
            f"B_{sub} = {rat_str(self.value)}",
            f"B_{sub} mod 1 = {rat_str(frac_part(self.value))}",
            f"primes p with (p-1) | {sub}: {', '.join(map(str, (p for p, _ in self.terms)))}",
            f"B_{sub} {terms} = {rat_str(self.defect)}",
            f"(B_{sub} mod 1) {terms} = {rat_str(self.reduced_defect)}",
            f"defect = {rat_str(self.reduced_defect)}",
        ]


def vsc_defect(n: int) -> VscReport:
    """Add the signed prime reciprocals to ``B_2n``; raise if the result is not an integer."""
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    terms = tuple((p, Fraction((-1) ** (n - (p - 1) // 2), p)) for p in primes_for(n))
    report = VscReport(n, bernoulli2(n), terms)
    if report.defect.denominator != 1:
        raise TheoremViolation(
            f"B_{2 * n} plus prime corrections is {rat_str(report.defect)}, not an integer"
        )
    return report


def frac_table(nmax: int) -> list[tuple[int, Fraction]]:
    """``[(2n, B_2n mod 1) for n = 0..nmax]``."""
    return [(2 * n, frac_part(bernoulli2(n))) for n in range(nmax + 1)]


def cosecant_number(n: int) -> Fraction:
    """``-2 (2^(2n-1) - 1) B_2n`` with classical Bernoulli numbers."""
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    return -2 * (2 ** (2 * n - 1) - 1) * bernoulli(2 * n)


@dataclass(frozen=True)
class DenominatorReport:
    nmax: int
    rows: tuple[tuple[int, int, int], ...]  # (n, den B_2n level 2, den cosecant number)

    @property
    def first_mismatch(self) -> int | None:
        return next((n for n, a, b in self.rows if a != b), None)

    @property
    def all_match(self) -> bool:
        return self.first_mismatch is None


def denominator_match(nmax: int) -> DenominatorReport:
    """Compare denominators of ``B_2n`` (level 2) with those of cosecant numbers, ``1 <= n <= nmax``."""
    rows = tuple(
        (n, bernoulli2(n).denominator, cosecant_number(n).denominator) for n in range(1, nmax + 1)
    )
    return DenominatorReport(nmax, rows)


def pb2_residue(n: int, k: int, m: int) -> int:
    """``B_2n^(-k) mod m`` for ``n, k >= 1``."""
    if n < 1 or k < 1:
        raise ValueError(f"need n, k >= 1, got n={n}, k={k}")
    if m < 2:
        raise ValueError(f"modulus must be >= 2, got {m}")
    value = pb2_explicit(n, -k)
    if value.denominator != 1:
        raise TheoremViolation(f"B_{2 * n}^(-{k}) = {rat_str(value)} is not an integer")
    return value.numerator % m


@dataclass(frozen=True)
class ResidueTable:
    """Residues of ``B_2n^(-k)`` mod ``modulus``, indexed by ``(n mod row_period, k mod col_period)``."""

    modulus: int
    row_period: int
    col_period: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.entries) != self.row_period or any(
            len(r) != self.col_period for r in self.entries
        ):
            raise ValueError("residue table has wrong dimensions")
        if any(not 0 <= e < self.modulus for r in self.entries for e in r):
            raise ValueError("residue out of range")

    def __getitem__(self, nk: tuple[int, int]) -> int:
        n, k = nk
        return self.entries[n % self.row_period][k % self.col_period]


def _representative(cls: int, period: int) -> int:
    """Smallest integer >= 1 congruent to ``cls`` mod ``period``."""
    return cls % period or period


def cong5_closed(n: int, k: int) -> int:
    return ((-1) ** (n - 1) * 2 * pow(3, k, 5)) % 5


def cong7_closed(n: int, k: int) -> int:
    return ((-1) ** (n - 1) * 2 * pow(3, k, 7) + (-1) ** n * (4 ** (n - 1) - 1) * pow(5, k, 7)) % 7


def _build_table(modulus: int, rows: int, cols: int, closed, expected) -> ResidueTable:
    direct = []
    closed_grid = []
    for a in range(rows):
        n = _representative(a, rows)
        direct.append(tuple(pb2_residue(n, _representative(b, cols), modulus) for b in range(cols)))
        closed_grid.append(tuple(closed(n, _representative(b, cols)) for b in range(cols)))
    direct_t, closed_t = tuple(direct), tuple(closed_grid)
    if direct_t != closed_t:
        raise TheoremViolation(f"mod {modulus}: direct residues disagree with the closed congruence")
    if direct_t != tuple(expected):
        raise TheoremViolation(f"mod {modulus}: residues disagree with the reference grid")
    return ResidueTable(modulus, rows, cols, direct_t)


def cong5_table() -> ResidueTable:
    return _build_table(5, 2, 4, cong5_closed, MOD5_GRID)


def cong7_table() -> ResidueTable:
    return _build_table(7, 6, 6, cong7_closed, MOD7_GRID)


def cong6_check(nmax: int, kmax: int) -> bool:
    """``B_2n^(-k) = 0 (mod 6)`` for every ``1 <= n <= nmax``, ``1 <= k <= kmax``."""
    return all(
        pb2_residue(n, k, 6) == 0 for n in range(1, nmax + 1) for k in range(1, kmax + 1)
    )


def periodicity_check(modulus: int, row_period: int, col_period: int) -> bool:
    """Residues over two full periods in each index repeat with the given periods."""
    for n in range(1, row_period + 1):
        for k in range(1, col_period + 1):
            r = pb2_residue(n, k, modulus)
            if pb2_residue(n + row_period, k, modulus) != r:
                return False
            if pb2_residue(n, k + col_period, modulus) != r:
                return False
            if pb2_residue(n + row_period, k + col_period, modulus) != r:
                return False
    return True

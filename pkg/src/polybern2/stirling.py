"""Stirling numbers of both kinds with arbitrary level ``s``.

The second kind ``{n k}_s`` counts ordered s-tuples of set partitions of
``[n]`` into ``k`` blocks that share the same set of block minima; the first
kind ``[n k]_s`` does the same for permutations with ``k`` cycles.  Level 1
gives the classical (unsigned) Stirling numbers; level 2 gives the central
factorial numbers ``T(2n, 2k)`` and ``t(2n, 2k)``.

Values come from memoized recurrences.  The remaining functions are
independent routes (explicit sums, polynomial identities, brute-force
enumeration, generating functions) used to cross-check them.
"""

from __future__ import annotations

import itertools
import threading
from collections import Counter
from fractions import Fraction

from polybern2.core import (
    InconsistencyError,
    OracleBoundError,
    as_integer,
    binomial,
    factorial,
)
from polybern2.series import PSeries, gen_exp, ps_div

__all__ = [
    "StirlingTable",
    "table",
    "stirling1_level",
    "stirling2_level",
    "stirling1_poly",
    "stirling2_newton_check",
    "stirling2_explicit",
    "stirling2_explicit_alt",
    "stirling2_binom_s2",
    "stirling2_k2_closed",
    "node_weight",
    "node_weight_sum",
    "orthogonality_first_second",
    "orthogonality_second_first",
    "enum_tuples_second",
    "enum_tuples_first",
    "set_partitions",
    "st2_egf_lhs",
    "st2_egf_rhs",
    "st2_egf_check",
    "st2_ogf_check",
    "PARTITION_ORACLE_BOUND",
    "PERMUTATION_ORACLE_BOUND",
]

PARTITION_ORACLE_BOUND = 7
PERMUTATION_ORACLE_BOUND = 6


class StirlingTable:
    """Append-only triangle of level-``s`` Stirling numbers of one kind.

    Rows are grown on demand from the recurrence

    * second kind: ``{n k} = {n-1 k-1} + k^s {n-1 k}``
    * first kind:  ``[n k] = [n-1 k-1] + (n-1)^s [n-1 k]``
    """

    def __init__(self, kind: int, level: int):
        if kind not in (1, 2):
            raise ValueError(f"kind must be 1 or 2, got {kind}")
        if level < 1:
            raise ValueError(f"level must be a positive integer, got {level}")
        self.kind = kind
        self.level = level
        self._rows: list[list[int]] = [[1]]
        self._lock = threading.Lock()

    def __repr__(self):
        return f"StirlingTable(kind={self.kind}, level={self.level}, rows={len(self._rows)})"

    def _grow(self, n: int) -> None:
        with self._lock:
            rows = self._rows
            s = self.level
            while len(rows) <= n:
                m = len(rows)
                prev = rows[-1]
                mult = [(k**s if self.kind == 2 else (m - 1) ** s) for k in range(m + 1)]
                row = [0] * (m + 1)
                for k in range(1, m + 1):
                    left = prev[k - 1]
                    right = prev[k] if k < m else 0
                    row[k] = left + mult[k] * right
                rows.append(row)

    def row(self, n: int) -> list[int]:
        if n < 0:
            raise ValueError(f"n must be nonnegative, got {n}")
        if n >= len(self._rows):
            self._grow(n)
        return list(self._rows[n])

    def __call__(self, n: int, k: int) -> int:
        if n < 0 or k < 0:
            raise ValueError(f"indices must be nonnegative, got ({n}, {k})")
        if k > n:
            return 0
        if n >= len(self._rows):
            self._grow(n)
        return self._rows[n][k]

    def override(self, n: int, k: int, value: int) -> int:
        """Replace a stored entry and return the old one (fault injection for self-tests)."""
        self(n, k)
        with self._lock:
            old = self._rows[n][k]
            self._rows[n][k] = value
        return old


_tables: dict[tuple[int, int], StirlingTable] = {}
_tables_lock = threading.Lock()


def table(kind: int, level: int) -> StirlingTable:
    """Shared table for ``(kind, level)``."""
    key = (kind, level)
    t = _tables.get(key)
    if t is None:
        with _tables_lock:
            t = _tables.get(key)
            if t is None:
                t = _tables[key] = StirlingTable(kind, level)
    return t


def stirling2_level(s: int, n: int, k: int) -> int:
    """Level-``s`` Stirling number of the second kind ``{n k}_s``."""
    if s < 1:
        raise ValueError(f"level must be a positive integer, got {s}")
    return table(2, s)(n, k)


def stirling1_level(s: int, n: int, k: int) -> int:
    """Level-``s`` unsigned Stirling number of the first kind ``[n k]_s``."""
    if s < 1:
        raise ValueError(f"level must be a positive integer, got {s}")
    return table(1, s)(n, k)


def _poly_mul_linear(p: list[int], c: int) -> list[int]:
    """Multiply the coefficient list ``p`` by ``(x + c)``."""
    out = [0] * (len(p) + 1)
    for i, a in enumerate(p):
        out[i] += c * a
        out[i + 1] += a
    return out


def stirling1_poly(s: int, n: int) -> list[int]:
    """Coefficients ``[c_0, ..., c_n]`` of ``x (x + 1^s) (x + 2^s) ... (x + (n-1)^s)``."""
    if s < 1:
        raise ValueError(f"level must be a positive integer, got {s}")
    p = [1]
    for i in range(n):
        p = _poly_mul_linear(p, i**s)
    return p


def stirling2_newton_check(s: int, n: int) -> bool:
    """Check ``x^n == sum_k {n k}_s x (x - 1^s) ... (x - (k-1)^s)`` coefficientwise."""
    if s < 1:
        raise ValueError(f"level must be a positive integer, got {s}")
    total = [0] * (n + 1)
    basis = [1]
    for k in range(n + 1):
        c = stirling2_level(s, n, k)
        for i, a in enumerate(basis):
            total[i] += c * a
        basis = _poly_mul_linear(basis, -(k**s))
    return total == [0] * n + [1]


def node_weight(s: int, k: int, j: int, start: int = 0) -> Fraction:
    """``1 / prod_{i=start..k, i != j} (j^s - i^s)``."""
    den = 1
    js = j**s
    for i in range(start, k + 1):
        if i != j:
            den *= js - i**s
    return Fraction(1, den)


def node_weight_sum(s: int, k: int) -> Fraction:
    """``sum_{j=1..k} node_weight(s, k, j)``; equals ``(-1)^(k-1) / (k!)^s``."""
    return sum((node_weight(s, k, j) for j in range(1, k + 1)), Fraction(0))


def stirling2_explicit(s: int, n: int, k: int) -> int:
    """``sum_{j=1..k} j^(ns) / prod_{i=0..k, i != j} (j^s - i^s)`` for ``1 <= k <= n``."""
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got n={n}, k={k}")
    total = sum((j ** (n * s) * node_weight(s, k, j) for j in range(1, k + 1)), Fraction(0))
    return as_integer(total, f"explicit {{{n} {k}}}_{s}")


def stirling2_explicit_alt(s: int, n: int, k: int) -> int:
    """Variant sum over ``j < k`` with ``j^((k-1)s) (j^((n-k+1)s) - k^((n-k+1)s))`` numerators."""
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got n={n}, k={k}")
    if k == 1:
        return 1
    e = (n - k + 1) * s
    total = Fraction(0)
    for j in range(1, k):
        total += j ** ((k - 1) * s) * (j**e - k**e) * node_weight(s, k, j)
    return as_integer(total, f"alternate explicit {{{n} {k}}}_{s}")


def stirling2_binom_s2(n: int, k: int) -> int:
    """Level 2 only: ``(2/(2k)!) sum_j (-1)^(k-j) C(2k, k-j) j^(2n)``."""
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got n={n}, k={k}")
    total = sum((-1) ** (k - j) * binomial(2 * k, k - j) * j ** (2 * n) for j in range(1, k + 1))
    return as_integer(Fraction(2 * total, factorial(2 * k)), f"binomial form {{{n} {k}}}_2")


def stirling2_k2_closed(n: int) -> int:
    """``{n 2}_2 = (4^(n-1) - 1) / 3``."""
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    value = as_integer(Fraction(4 ** (n - 1) - 1, 3), "(4^(n-1)-1)/3")
    if value != stirling2_level(2, n, 2):
        raise InconsistencyError(f"closed form of {{{n} 2}}_2 disagrees with the recurrence")
    return value


def orthogonality_first_second(s: int, m: int, j: int) -> int:
    """``sum_{l=j..m} (-1)^(l-j) [m l]_s {l j}_s``."""
    if not 0 <= j <= m:
        raise ValueError(f"need 0 <= j <= m, got m={m}, j={j}")
    return sum(
        (-1) ** (l - j) * stirling1_level(s, m, l) * stirling2_level(s, l, j)
        for l in range(j, m + 1)
    )


def orthogonality_second_first(s: int, m: int, j: int) -> int:
    """``sum_{l=j..m} (-1)^(l-j) {m l}_s [l j]_s``."""
    if not 0 <= j <= m:
        raise ValueError(f"need 0 <= j <= m, got m={m}, j={j}")
    return sum(
        (-1) ** (l - j) * stirling2_level(s, m, l) * stirling1_level(s, l, j)
        for l in range(j, m + 1)
    )


# Brute-force oracles


def set_partitions(n: int):
    """Yield every set partition of ``{1..n}`` as a tuple of sorted blocks ordered by minimum."""

    def rec(i: int, blocks: list[list[int]]):
        if i > n:
            yield tuple(tuple(b) for b in blocks)
            return
        for b in blocks:
            b.append(i)
            yield from rec(i + 1, blocks)
            b.pop()
        blocks.append([i])
        yield from rec(i + 1, blocks)
        blocks.pop()

    yield from rec(1, [])


def _cycles(perm: tuple[int, ...]) -> list[tuple[int, ...]]:
    """Cycle decomposition of a permutation of ``{1..n}`` (``perm[i-1]`` is the image of ``i``),
    each cycle rotated to start at its minimum."""
    seen = set()
    cycles = []
    for start in range(1, len(perm) + 1):
        if start in seen:
            continue
        cyc = []
        x = start
        while x not in seen:
            seen.add(x)
            cyc.append(x)
            x = perm[x - 1]
        cycles.append(tuple(cyc))
    return cycles


def _count_tuples(minsets, s: int) -> int:
    # the s-tuples with a common min-set are exactly the s-fold products within each class
    return sum(c**s for c in Counter(minsets).values())


def enum_tuples_second(s: int, n: int, k: int) -> int:
    """Count s-tuples of k-block partitions of ``[n]`` with equal block-minimum sets."""
    if n > PARTITION_ORACLE_BOUND:
        raise OracleBoundError("oracle bound exceeded")
    minsets = [
        frozenset(b[0] for b in p) for p in set_partitions(n) if len(p) == k
    ]
    return _count_tuples(minsets, s)


def enum_tuples_first(s: int, n: int, k: int) -> int:
    """Count s-tuples of k-cycle permutations of ``[n]`` with equal cycle-minimum sets."""
    if n > PERMUTATION_ORACLE_BOUND:
        raise OracleBoundError("oracle bound exceeded")
    minsets = []
    for perm in itertools.permutations(range(1, n + 1)):
        cycles = _cycles(perm)
        if len(cycles) == k:
            minsets.append(frozenset(c[0] for c in cycles))
    return _count_tuples(minsets, s)


# Generating functions


def st2_egf_lhs(s: int, k: int, order: int) -> PSeries:
    """``sum_{n>=k} {n k}_s x^n / n!`` from the table."""
    return PSeries.from_dense(
        [Fraction(stirling2_level(s, n, k), factorial(n)) for n in range(order + 1)], order
    )


def st2_egf_rhs(s: int, k: int, order: int) -> PSeries:
    """``sum_j e^(j^s x) / prod_{i=0..k, i != j}(j^s - i^s) + (-1)^k / (k!)^s``."""
    if k < 1:
        raise ValueError(f"need k >= 1, got {k}")
    total = PSeries.constant(Fraction((-1) ** k, factorial(k) ** s), order)
    for j in range(1, k + 1):
        total = total + gen_exp(j**s, order) * node_weight(s, k, j)
    return total


def st2_egf_check(s: int, k: int, order: int) -> bool:
    return st2_egf_lhs(s, k, order).agrees_with(st2_egf_rhs(s, k, order))


def st2_ogf_check(s: int, k: int, order: int) -> bool:
    """Expand ``x^k / ((1 - x)(1 - 2^s x)...(1 - k^s x))`` and compare with the table."""
    if k < 1:
        raise ValueError(f"need k >= 1, got {k}")
    den = PSeries.constant(1, order)
    for i in range(1, k + 1):
        den = den * PSeries.from_dense([1, -(i**s)], order)
    gf = ps_div(PSeries.monomial(k, order), den)
    table_series = PSeries.from_dense([stirling2_level(s, n, k) for n in range(order + 1)], order)
    return gf.order == order and gf.agrees_with(table_series)

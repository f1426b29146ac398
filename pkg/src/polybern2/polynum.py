"""Poly-Bernoulli and poly-Cauchy numbers with level 2, plus their classical versions.

``pb2_*`` functions return the level-2 poly-Bernoulli number with *even*
index ``2n``: the generating function

    Li_{2,k}(2 sin(x/2)) / (2 sin(x/2)) = sum_n B_n^(k) x^n / n!

is even in ``x``, so odd-index values are always zero and are never stored.
Arguments named ``n`` are therefore half the subscript.  The same holds for
``pc2_*`` (poly-Cauchy numbers with level 2).

Several independent routes compute the same numbers: the Stirling-sum
formula (:func:`pb2_explicit`, the canonical one), a Stirling-free sum over
compositions, a direct series expansion, an iterated-integral pipeline and a
recurrence in ``k``.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from polybern2.core import InconsistencyError, OracleBoundError, factorial, multinomial
from polybern2.series import (
    BiSeries,
    PSeries,
    bi_div,
    bi_outer,
    even_part,
    gen_arcsinh,
    gen_atanh,
    gen_cos,
    gen_cosh_scaled,
    gen_li2k,
    gen_two_sin_half,
    ps_compose,
    ps_div,
    ps_integrate,
    ps_mul,
)
from polybern2.stirling import stirling1_level, stirling2_level

__all__ = [
    "bernoulli",
    "poly_bernoulli_classic",
    "poly_cauchy_classic",
    "pb2_explicit",
    "pb2_coefficients",
    "pb2_multinomial",
    "pb2_gf",
    "pb2_iterated_gf",
    "pb2_step_k",
    "pc2_explicit",
    "pc2_gf",
    "pc2_from_pb2",
    "pb2_from_pc2",
    "identity_b_sum",
    "identity_c_sum",
    "classic_pc_from_pb",
    "classic_pb_from_pc",
    "classic_b_sum",
    "classic_c_sum",
    "doublesum_lhs",
    "doublesum_rhs",
    "doublesum_rhs_printed",
    "doublesum_check",
    "doublesum_first_mismatch",
    "DualityReport",
    "duality_probe",
    "MULTINOMIAL_BOUND",
]

MULTINOMIAL_BOUND = 8


def _recip_pow(base: int, k: int) -> Fraction:
    """``1 / base^k`` for any integer ``k``."""
    if k >= 0:
        return Fraction(1, base**k)
    return Fraction(base ** (-k))


_bern_lock = threading.Lock()
_bern: list[Fraction] = [Fraction(1)]


def bernoulli(n: int) -> Fraction:
    """Bernoulli number ``B_n`` from ``x / (e^x - 1)``, so ``B_1 = -1/2``."""
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    if n < len(_bern):
        return _bern[n]
    with _bern_lock:
        while len(_bern) <= n:
            m = len(_bern)
            # sum_{j=0}^{m} C(m+1, j) B_j = 0
            acc = Fraction(0)
            c = 1
            for j in range(m):
                acc += c * _bern[j]
                c = c * (m + 1 - j) // (j + 1)
            _bern.append(-acc / (m + 1))
    return _bern[n]


def poly_bernoulli_classic(n: int, k: int) -> Fraction:
    """Kaneko's poly-Bernoulli number ``B_n^(k) = sum_m S(n,m) (-1)^(n-m) m! / (m+1)^k``."""
    return sum(
        (
            stirling2_level(1, n, m) * (-1) ** (n - m) * factorial(m) * _recip_pow(m + 1, k)
            for m in range(n + 1)
        ),
        Fraction(0),
    )


def poly_cauchy_classic(n: int, k: int) -> Fraction:
    """Poly-Cauchy number of the first kind, ``sum_m (-1)^(n-m) [n m] / (m+1)^k``."""
    return sum(
        (
            (-1) ** (n - m) * stirling1_level(1, n, m) * _recip_pow(m + 1, k)
            for m in range(n + 1)
        ),
        Fraction(0),
    )


def pb2_coefficients(n: int) -> list[tuple[int, int]]:
    """Expansion of ``B_2n^(k)`` as ``sum c / b^k``, returned as ``[(b, c), ...]``.

    ``b`` runs over ``1, 3, 5, ..., 2n+1`` and ``c = (-1)^(n-m) (2m)! {n m}_2``.
    """
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    return [
        (2 * m + 1, (-1) ** (n - m) * factorial(2 * m) * stirling2_level(2, n, m))
        for m in range(n + 1)
    ]


def pb2_explicit(n: int, k: int) -> Fraction:
    """Level-2 poly-Bernoulli number ``B_2n^(k)`` from level-2 Stirling numbers."""
    return sum((c * _recip_pow(b, k) for b, c in pb2_coefficients(n)), Fraction(0))


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """Weak compositions of ``total`` into exactly ``parts`` nonnegative parts."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def pb2_multinomial(n: int, k: int) -> Fraction:
    """``B_2n^(k)`` as a sum over compositions, with no Stirling numbers involved."""
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    if n > MULTINOMIAL_BOUND:
        raise OracleBoundError("oracle bound exceeded")
    total = Fraction(0)
    for m in range(n + 1):
        inner = sum(
            multinomial(2 * i + 1 for i in comp) for comp in _compositions(n - m, 2 * m)
        )
        total += Fraction(-1, 4) ** (n - m) * inner * _recip_pow(2 * m + 1, k)
    return total


def _even_egf_values(series: PSeries, nmax: int, what: str) -> list[Fraction]:
    out = []
    for i in range(2 * nmax + 1):
        c = series.coeff(i)
        if i % 2:
            if c:
                raise InconsistencyError(f"{what}: odd coefficient x^{i} is {c}, expected 0")
        else:
            out.append(c * factorial(i))
    return out


def pb2_gf(k: int, nmax: int) -> list[Fraction]:
    """``[B_0^(k), B_2^(k), ..., B_{2 nmax}^(k)]`` read off the generating function."""
    if nmax < 0:
        raise ValueError(f"nmax must be nonnegative, got {nmax}")
    order = 2 * nmax + 1
    z = gen_two_sin_half(order)
    quotient = ps_div(ps_compose(gen_li2k(k, order), z), z)
    return _even_egf_values(quotient, nmax, f"level-2 poly-Bernoulli gf, k={k}")


def pb2_iterated_gf(k: int, nmax: int) -> list[Fraction]:
    """Same values as :func:`pb2_gf`, built by ``k - 1`` integrations against ``1/(2 tan(x/2))``.

    Start from ``atanh(2 sin(x/2))`` and repeatedly replace ``f`` with
    ``int_0^x cos(t/2) f(t) / (2 sin(t/2)) dt``; finally divide by ``2 sin(x/2)``.
    """
    if k < 1:
        raise ValueError(f"iterated-integral form needs k >= 1, got {k}")
    if nmax < 0:
        raise ValueError(f"nmax must be nonnegative, got {nmax}")
    order = 2 * nmax + 1
    z = gen_two_sin_half(order)
    cos_half = gen_cos(order, Fraction(1, 2))
    f = ps_compose(gen_atanh(order), z)
    for _ in range(k - 1):
        # f has zero constant term, so cos_half * f / z stays a power series
        f = ps_integrate(ps_div(ps_mul(cos_half, f), z))
    return _even_egf_values(ps_div(f, z), nmax, f"iterated-integral gf, k={k}")


def pb2_step_k(n: int, k: int) -> Fraction:
    """``B_2n^(k-1)`` computed from the level-``k`` values ``B_2^(k), ..., B_2n^(k)``."""
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    acc = Fraction(0)
    for m in range(n):
        d = n - m
        acc += Fraction(
            4 * ((-1) ** d - (-4) ** d) * bernoulli(2 * d) * pb2_explicit(m + 1, k),
            factorial(2 * d) * factorial(2 * m + 1),
        )
    return pb2_explicit(n, k) + factorial(2 * n) * acc


def pc2_explicit(n: int, k: int) -> Fraction:
    """Level-2 poly-Cauchy number ``C_2n^(k) = sum_m [n m]_2 (-4)^(n-m) / (2m+1)^k``."""
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    return sum(
        (
            stirling1_level(2, n, m) * (-4) ** (n - m) * _recip_pow(2 * m + 1, k)
            for m in range(n + 1)
        ),
        Fraction(0),
    )


def pc2_gf(k: int, nmax: int) -> list[Fraction]:
    """``[C_0^(k), ..., C_{2 nmax}^(k)]`` from ``Lif_{2,k}(arcsinh x)``."""
    order = 2 * nmax
    lif = PSeries.from_dense(
        [
            Fraction(1, factorial(e)) * _recip_pow(e + 1, k) if e % 2 == 0 else 0
            for e in range(order + 1)
        ],
        order,
    )
    return _even_egf_values(ps_compose(lif, gen_arcsinh(order)), nmax, f"poly-Cauchy gf, k={k}")


def pc2_from_pb2(n: int, k: int) -> Fraction:
    """``C_2n^(k) = sum_{m,l} (-4)^(n-m) / (2m)! [n m]_2 [m l]_2 B_2l^(k)``, ``n >= 1``."""
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    pb = [pb2_explicit(l, k) for l in range(n + 1)]
    total = Fraction(0)
    for m in range(1, n + 1):
        inner = sum(stirling1_level(2, m, l) * pb[l] for l in range(1, m + 1))
        total += Fraction((-4) ** (n - m) * stirling1_level(2, n, m), factorial(2 * m)) * inner
    return total


def pb2_from_pc2(n: int, k: int) -> Fraction:
    """``B_2n^(k) = sum_{m,l} (-1)^(n-m) 4^(m-l) (2m)! {n m}_2 {m l}_2 C_2l^(k)``, ``n >= 1``."""
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    pc = [pc2_explicit(l, k) for l in range(n + 1)]
    total = Fraction(0)
    for m in range(1, n + 1):
        inner = sum(4 ** (m - l) * stirling2_level(2, m, l) * pc[l] for l in range(1, m + 1))
        total += (-1) ** (n - m) * factorial(2 * m) * stirling2_level(2, n, m) * inner
    return total


def identity_b_sum(n: int, k: int) -> Fraction:
    """``(1/(2n)!) sum_m [n m]_2 B_2m^(k)``; equals ``1/(2n+1)^k``."""
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    s = sum((stirling1_level(2, n, m) * pb2_explicit(m, k) for m in range(n + 1)), Fraction(0))
    return s / factorial(2 * n)


def identity_c_sum(n: int, k: int) -> Fraction:
    """``sum_m {n m}_2 4^(n-m) C_2m^(k)``; equals ``1/(2n+1)^k``."""
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    return sum(
        (stirling2_level(2, n, m) * 4 ** (n - m) * pc2_explicit(m, k) for m in range(n + 1)),
        Fraction(0),
    )


# Level-1 analogues of the four relations, using the s=1 tables.


def classic_pc_from_pb(n: int, k: int) -> Fraction:
    return sum(
        (
            Fraction((-1) ** (n - m) * stirling1_level(1, n, m) * stirling1_level(1, m, l), factorial(m))
            * poly_bernoulli_classic(l, k)
            for m in range(1, n + 1)
            for l in range(1, m + 1)
        ),
        Fraction(0),
    )


def classic_pb_from_pc(n: int, k: int) -> Fraction:
    return sum(
        (
            (-1) ** (n - m)
            * factorial(m)
            * stirling2_level(1, n, m)
            * stirling2_level(1, m, l)
            * poly_cauchy_classic(l, k)
            for m in range(1, n + 1)
            for l in range(1, m + 1)
        ),
        Fraction(0),
    )


def classic_b_sum(n: int, k: int) -> Fraction:
    s = sum(
        (stirling1_level(1, n, m) * poly_bernoulli_classic(m, k) for m in range(n + 1)),
        Fraction(0),
    )
    return s / factorial(n)


def classic_c_sum(n: int, k: int) -> Fraction:
    return sum(
        (stirling2_level(1, n, m) * poly_cauchy_classic(m, k) for m in range(n + 1)),
        Fraction(0),
    )


# Double generating function in (x^2, y^2)


def doublesum_lhs(nx: int, ny: int) -> BiSeries:
    """``sum B_2n^(-2k) / ((2n)! (2k)!)`` as a series in ``u = x^2``, ``v = y^2``."""
    return BiSeries(
        [
            [pb2_explicit(n, -2 * k) / (factorial(2 * n) * factorial(2 * k)) for k in range(ny + 1)]
            for n in range(nx + 1)
        ],
        nx,
        ny,
    )


def _doublesum_closed_form(c: PSeries, ny: int) -> BiSeries:
    """``c(u) cosh y / (2 (1 - c(u))(1 - cosh 2y) + c(u)^2)`` with ``v = y^2``."""
    cosh_y = even_part(gen_cosh_scaled(1, 2 * ny))
    cosh_2y = even_part(gen_cosh_scaled(2, 2 * ny))
    numerator = bi_outer(c, cosh_y)
    denominator = bi_outer(2 * (1 - c), 1 - cosh_2y) + bi_outer(c * c, PSeries.constant(1, ny))
    return bi_div(numerator, denominator)


def doublesum_rhs(nx: int, ny: int) -> BiSeries:
    """Closed form of the double generating function, in ``u = x^2``, ``v = y^2``.

    Summing the geometric series in ``(2 sin(x/2))^2 = 2 (1 - cos x)`` gives

        C cosh y / (2 (1 - C)(1 - cosh 2y) + C^2),   C = 2 cos x - 1.
    """
    return _doublesum_closed_form(even_part(2 * gen_cos(2 * nx) - 1), ny)


def doublesum_rhs_printed(nx: int, ny: int) -> BiSeries:
    """The variant with ``C = cos x``, i.e. ``cos x cosh y / (2(1 - cos x)(1 - cosh 2y) + cos^2 x)``.

    This is the expansion of ``sum_m (sqrt(2) sin(x/2))^(2m) cosh((2m+1) y)``;
    it does not match :func:`doublesum_lhs` (already at ``x^2 y^0``).
    """
    return _doublesum_closed_form(even_part(gen_cos(2 * nx)), ny)


def doublesum_check(nx: int, ny: int) -> bool:
    """Both sides agree on every ``x^(2n) y^(2k)`` with ``n <= nx``, ``k <= ny``."""
    return doublesum_lhs(nx, ny) == doublesum_rhs(nx, ny)


def doublesum_first_mismatch(lhs: BiSeries, rhs: BiSeries) -> tuple[int, int] | None:
    """First ``(n, k)`` (row-major) where the ``x^(2n) y^(2k)`` coefficients differ."""
    for n in range(min(lhs.nx, rhs.nx) + 1):
        for k in range(min(lhs.ny, rhs.ny) + 1):
            if lhs.coeff(n, k) != rhs.coeff(n, k):
                return n, k
    return None


@dataclass(frozen=True)
class DualityReport:
    nmax: int
    kmax: int
    classical_holds: bool
    classical_counterexample: tuple[int, int] | None
    level2_holds: bool
    level2_counterexample: tuple[int, int] | None

    def lines(self) -> list[str]:
        out = [
            f"classical B_n^(-k) = B_k^(-n) for 1 <= n <= {self.nmax}, 1 <= k <= {self.kmax}: "
            + ("holds" if self.classical_holds else f"fails at {self.classical_counterexample}")
        ]
        if self.level2_holds:
            out.append("level 2 B_2n^(-2k) = B_2k^(-2n): holds on the tested range")
        else:
            n, k = self.level2_counterexample
            out.append(
                f"level 2 B_2n^(-2k) = B_2k^(-2n): fails, first at (n, k) = ({n}, {k}): "
                f"{pb2_explicit(n, -2 * k)} != {pb2_explicit(k, -2 * n)}"
            )
        return out


def duality_probe(nmax: int, kmax: int) -> DualityReport:
    """Check classical duality and report (not assert) whether a level-2 analogue holds."""
    classical_bad = None
    level2_bad = None
    for n in range(1, nmax + 1):
        for k in range(1, kmax + 1):
            if classical_bad is None and poly_bernoulli_classic(n, -k) != poly_bernoulli_classic(k, -n):
                classical_bad = (n, k)
            if level2_bad is None and pb2_explicit(n, -2 * k) != pb2_explicit(k, -2 * n):
                level2_bad = (n, k)
    return DualityReport(
        nmax, kmax, classical_bad is None, classical_bad, level2_bad is None, level2_bad
    )

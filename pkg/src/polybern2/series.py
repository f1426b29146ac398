"""Truncated formal power series with exact rational coefficients.

A :class:`PSeries` stores the coefficients of ``x**val .. x**order`` and
stands for ``sum(c_i x**i) + O(x**(order + 1))``.  Every operation works out
the largest exponent through which its result is still exact and records it
as the result's ``order``, so a coefficient is never reported past the point
where truncation of an input could have changed it.

:class:`BiSeries` is the rectangular bivariate counterpart, exact for all
``x**i y**j`` with ``i <= nx`` and ``j <= ny``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from polybern2.core import factorial

__all__ = [
    "PSeries",
    "BiSeries",
    "ps_add",
    "ps_sub",
    "ps_mul",
    "ps_div",
    "ps_compose",
    "ps_integrate",
    "ps_derivative",
    "gen_two_sin_half",
    "gen_two_tan_half",
    "gen_atanh",
    "gen_li2k",
    "gen_exp",
    "gen_cos",
    "gen_cosh_scaled",
    "gen_arcsinh",
    "even_part",
    "bi_outer",
    "bi_add",
    "bi_sub",
    "bi_mul",
    "bi_div",
]

_ZERO = Fraction(0)


class PSeries:
    """Immutable truncated power series ``sum_{i=val}^{order} c_i x^i + O(x^(order+1))``.

    ``val`` is always the index of the first nonzero stored coefficient; an
    all-zero series has ``val == order + 1`` and no stored coefficients.
    """

    __slots__ = ("val", "coeffs", "order")

    def __init__(self, coeffs: Iterable, order: int | None = None, val: int = 0):
        cs = [Fraction(c) for c in coeffs]
        if val < 0:
            raise ValueError("valuation must be nonnegative")
        if order is None:
            order = val + len(cs) - 1
        if order < -1:
            raise ValueError("order must be >= -1")
        cs = cs[: max(order - val + 1, 0)]
        cs.extend([_ZERO] * (order - val + 1 - len(cs)))
        lead = 0
        while lead < len(cs) and cs[lead] == 0:
            lead += 1
        object.__setattr__(self, "val", min(val + lead, order + 1))
        object.__setattr__(self, "coeffs", tuple(cs[lead:]))
        object.__setattr__(self, "order", order)

    def __setattr__(self, name, value):
        raise AttributeError("PSeries is immutable")

    @classmethod
    def from_dense(cls, coeffs: Sequence, order: int | None = None) -> PSeries:
        """Series from the coefficients of ``x**0, x**1, ...`` (zero-padded up to ``order``)."""
        return cls(coeffs, order=order, val=0)

    @classmethod
    def monomial(cls, exponent: int, order: int, coeff=1) -> PSeries:
        if exponent > order:
            return cls([], order=order)
        return cls([coeff], order=order, val=exponent)

    @classmethod
    def constant(cls, c, order: int) -> PSeries:
        return cls([c], order=order)

    def coeff(self, i: int) -> Fraction:
        if i < 0:
            return _ZERO
        if i > self.order:
            raise IndexError(f"coefficient x^{i} is beyond truncation order {self.order}")
        if i < self.val:
            return _ZERO
        return self.coeffs[i - self.val]

    def __getitem__(self, i: int) -> Fraction:
        return self.coeff(i)

    def dense(self) -> list[Fraction]:
        """Coefficients of ``x**0 .. x**order``."""
        return [_ZERO] * min(self.val, self.order + 1) + list(self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    def truncate(self, order: int) -> PSeries:
        if order > self.order:
            raise ValueError(f"cannot extend truncation order {self.order} to {order}")
        return PSeries(self.coeffs, order=order, val=min(self.val, order + 1))

    def agrees_with(self, other: PSeries) -> bool:
        """Coefficientwise equality on the common exact prefix."""
        n = min(self.order, other.order)
        return all(self.coeff(i) == other.coeff(i) for i in range(n + 1))

    def __eq__(self, other):
        if not isinstance(other, PSeries):
            return NotImplemented
        return (self.order, self.val, self.coeffs) == (other.order, other.val, other.coeffs)

    def __hash__(self):
        return hash((self.order, self.val, self.coeffs))

    def __repr__(self):
        terms = [f"{c}*x^{self.val + i}" for i, c in enumerate(self.coeffs) if c]
        body = " + ".join(terms) if terms else "0"
        return f"PSeries({body} + O(x^{self.order + 1}))"

    def __neg__(self):
        return PSeries([-c for c in self.coeffs], order=self.order, val=self.val)

    def __add__(self, other):
        if isinstance(other, PSeries):
            return ps_add(self, other)
        return ps_add(self, PSeries.constant(other, self.order))

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, PSeries):
            return ps_sub(self, other)
        return ps_sub(self, PSeries.constant(other, self.order))

    def __rsub__(self, other):
        return ps_sub(PSeries.constant(other, self.order), self)

    def __mul__(self, other):
        if isinstance(other, PSeries):
            return ps_mul(self, other)
        c = Fraction(other)
        return PSeries([c * a for a in self.coeffs], order=self.order, val=self.val)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, PSeries):
            return ps_div(self, other)
        c = Fraction(other)
        return PSeries([a / c for a in self.coeffs], order=self.order, val=self.val)

    def __pow__(self, m: int):
        if m < 0:
            raise ValueError("negative powers are not power series")
        result = PSeries.constant(1, self.order)
        for _ in range(m):
            result = ps_mul(result, self)
        return result

    def compose(self, inner: PSeries) -> PSeries:
        return ps_compose(self, inner)

    def integrate(self) -> PSeries:
        return ps_integrate(self)

    def derivative(self) -> PSeries:
        return ps_derivative(self)


def ps_add(a: PSeries, b: PSeries) -> PSeries:
    order = min(a.order, b.order)
    da, db = a.dense(), b.dense()
    return PSeries.from_dense([da[i] + db[i] for i in range(order + 1)], order)


def ps_sub(a: PSeries, b: PSeries) -> PSeries:
    return ps_add(a, -b)


def _mul_dense(a: Sequence[Fraction], b: Sequence[Fraction], order: int) -> list[Fraction]:
    out = [_ZERO] * (order + 1)
    for i, ai in enumerate(a[: order + 1]):
        if not ai:
            continue
        for j in range(min(len(b), order + 1 - i)):
            bj = b[j]
            if bj:
                out[i + j] += ai * bj
    return out


def ps_mul(a: PSeries, b: PSeries) -> PSeries:
    # unknown tail of a starts at a.order+1 and is hit by b's first term at b.val
    order = min(a.order + b.val, b.order + a.val)
    return PSeries.from_dense(_mul_dense(a.dense(), b.dense(), order), order)


def ps_div(a: PSeries, b: PSeries) -> PSeries:
    if b.is_zero():
        raise ZeroDivisionError("division by a series that is zero through its truncation order")
    vb = b.val
    if a.is_zero():
        order = a.order - vb
        if order < 0:
            raise ValueError("quotient has a pole")
        return PSeries([], order=order)
    if a.val < vb:
        raise ValueError("quotient has a pole")
    vq = a.val - vb
    order = min(a.order - vb, b.order - vb + vq)
    num = [a.coeff(i + vb) for i in range(order + 1)]
    den = list(b.coeffs)
    lead = den[0]
    q = [_ZERO] * (order + 1)
    for i in range(vq, order + 1):
        acc = num[i]
        for j in range(1, min(i - vq, len(den) - 1) + 1):
            if den[j]:
                acc -= den[j] * q[i - j]
        q[i] = acc / lead
    return PSeries.from_dense(q, order)


def ps_compose(outer: PSeries, inner: PSeries) -> PSeries:
    """``outer(inner(x))`` by Horner's rule; ``inner`` must have zero constant term."""
    if inner.coeff(0) != 0:
        raise ValueError("inner series must have zero constant term")
    v = inner.val
    no = outer.order
    first = next((m for m in range(max(outer.val, 1), no + 1) if outer.coeff(m)), no + 1)
    order = min((no + 1) * v - 1, inner.order + (first - 1) * v)
    inner_d = inner.dense()[: order + 1]
    acc = [_ZERO] * (order + 1)
    for m in range(no, -1, -1):
        acc = _mul_dense(acc, inner_d, order) if m < no else acc
        acc[0] += outer.coeff(m)
    return PSeries.from_dense(acc, order)


def ps_integrate(a: PSeries) -> PSeries:
    """Antiderivative with zero constant term."""
    return PSeries(
        [c / (a.val + i + 1) for i, c in enumerate(a.coeffs)],
        order=a.order + 1,
        val=a.val + 1,
    )


def ps_derivative(a: PSeries) -> PSeries:
    d = a.dense()
    return PSeries.from_dense([i * d[i] for i in range(1, a.order + 1)], a.order - 1)


def gen_two_sin_half(order: int) -> PSeries:
    """2 sin(x/2) = sum_l (-1)^l x^(2l+1) / ((2l+1)! 4^l)."""
    cs = [_ZERO] * (order + 1)
    for ell in range((order - 1) // 2 + 1):
        cs[2 * ell + 1] = Fraction((-1) ** ell, factorial(2 * ell + 1) * 4**ell)
    return PSeries.from_dense(cs, order)


def gen_two_tan_half(order: int) -> PSeries:
    """2 tan(x/2), with x^(2n-1) coefficient 4((-1)^n - (-4)^n) B_2n / (2n)!."""
    from polybern2.polynum import bernoulli

    cs = [_ZERO] * (order + 1)
    for n in range(1, order // 2 + 2):
        if 2 * n - 1 > order:
            break
        cs[2 * n - 1] = 4 * ((-1) ** n - (-4) ** n) * bernoulli(2 * n) / factorial(2 * n)
    return PSeries.from_dense(cs, order)


def gen_li2k(k: int, order: int) -> PSeries:
    """Level-2 polylogarithm sum_n z^(2n+1) / (2n+1)^k, any integer k."""
    cs = [_ZERO] * (order + 1)
    for e in range(1, order + 1, 2):
        cs[e] = Fraction(1, e**k) if k >= 0 else Fraction(e ** (-k))
    return PSeries.from_dense(cs, order)


def gen_atanh(order: int) -> PSeries:
    """(1/2) log((1+z)/(1-z))."""
    return gen_li2k(1, order)


def gen_exp(c, order: int) -> PSeries:
    """exp(c x)."""
    c = Fraction(c)
    return PSeries.from_dense([c**n / factorial(n) for n in range(order + 1)], order)


def gen_cos(order: int, scale=1) -> PSeries:
    """cos(scale * x)."""
    c = Fraction(scale)
    cs = [_ZERO] * (order + 1)
    for n in range(order // 2 + 1):
        cs[2 * n] = (-1) ** n * c ** (2 * n) / factorial(2 * n)
    return PSeries.from_dense(cs, order)


def gen_cosh_scaled(c, order: int) -> PSeries:
    """cosh(c y)."""
    c = Fraction(c)
    cs = [_ZERO] * (order + 1)
    for n in range(order // 2 + 1):
        cs[2 * n] = c ** (2 * n) / factorial(2 * n)
    return PSeries.from_dense(cs, order)


def gen_arcsinh(order: int) -> PSeries:
    """arcsinh(x) = sum_n (-1)^n (2n)! x^(2n+1) / (4^n (n!)^2 (2n+1))."""
    cs = [_ZERO] * (order + 1)
    for n in range((order - 1) // 2 + 1):
        cs[2 * n + 1] = Fraction(
            (-1) ** n * factorial(2 * n), 4**n * factorial(n) ** 2 * (2 * n + 1)
        )
    return PSeries.from_dense(cs, order)


def even_part(a: PSeries) -> PSeries:
    """Substitute ``u = x^2`` into an even series: the result has ``u^n`` coefficient ``a[2n]``."""
    d = a.dense()
    if any(d[1::2]):
        raise ValueError("series has nonzero odd coefficients")
    return PSeries.from_dense(d[::2], a.order // 2)


class BiSeries:
    """Rectangular truncated series in two variables, ``coeffs[i][j]`` at ``x^i y^j``."""

    __slots__ = ("coeffs", "nx", "ny")

    def __init__(self, coeffs: Sequence[Sequence], nx: int | None = None, ny: int | None = None):
        rows = [[Fraction(c) for c in row] for row in coeffs]
        if nx is None:
            nx = len(rows) - 1
        if ny is None:
            ny = max((len(r) for r in rows), default=0) - 1
        if nx < 0 or ny < 0:
            raise ValueError("bivariate orders must be nonnegative")
        grid = []
        for i in range(nx + 1):
            row = rows[i][: ny + 1] if i < len(rows) else []
            grid.append(tuple(row + [_ZERO] * (ny + 1 - len(row))))
        object.__setattr__(self, "coeffs", tuple(grid))
        object.__setattr__(self, "nx", nx)
        object.__setattr__(self, "ny", ny)

    def __setattr__(self, name, value):
        raise AttributeError("BiSeries is immutable")

    def coeff(self, i: int, j: int) -> Fraction:
        if i > self.nx or j > self.ny:
            raise IndexError(f"coefficient ({i}, {j}) beyond orders ({self.nx}, {self.ny})")
        return self.coeffs[i][j]

    def __getitem__(self, ij) -> Fraction:
        return self.coeff(*ij)

    def truncate(self, nx: int, ny: int) -> BiSeries:
        if nx > self.nx or ny > self.ny:
            raise ValueError("cannot extend truncation orders")
        return BiSeries(self.coeffs, nx, ny)

    def __eq__(self, other):
        if not isinstance(other, BiSeries):
            return NotImplemented
        return (self.nx, self.ny, self.coeffs) == (other.nx, other.ny, other.coeffs)

    def __hash__(self):
        return hash((self.nx, self.ny, self.coeffs))

    def __repr__(self):
        return f"BiSeries(nx={self.nx}, ny={self.ny})"

    def __add__(self, other):
        return bi_add(self, other)

    def __sub__(self, other):
        return bi_sub(self, other)

    def __mul__(self, other):
        if isinstance(other, BiSeries):
            return bi_mul(self, other)
        c = Fraction(other)
        return BiSeries([[c * a for a in row] for row in self.coeffs], self.nx, self.ny)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return bi_div(self, other)


def bi_outer(u: PSeries, w: PSeries) -> BiSeries:
    """The product ``u(x) * w(y)``."""
    du, dw = u.dense(), w.dense()
    return BiSeries([[a * b for b in dw] for a in du], u.order, w.order)


def bi_add(a: BiSeries, b: BiSeries) -> BiSeries:
    nx, ny = min(a.nx, b.nx), min(a.ny, b.ny)
    return BiSeries(
        [[a.coeffs[i][j] + b.coeffs[i][j] for j in range(ny + 1)] for i in range(nx + 1)],
        nx,
        ny,
    )


def bi_sub(a: BiSeries, b: BiSeries) -> BiSeries:
    return bi_add(a, b * -1)


def bi_mul(a: BiSeries, b: BiSeries) -> BiSeries:
    nx, ny = min(a.nx, b.nx), min(a.ny, b.ny)
    out = [[_ZERO] * (ny + 1) for _ in range(nx + 1)]
    for i in range(nx + 1):
        for j in range(ny + 1):
            aij = a.coeffs[i][j]
            if not aij:
                continue
            for p in range(nx + 1 - i):
                brow = b.coeffs[p]
                orow = out[i + p]
                for q in range(ny + 1 - j):
                    if brow[q]:
                        orow[j + q] += aij * brow[q]
    return BiSeries(out, nx, ny)


def bi_div(a: BiSeries, b: BiSeries) -> BiSeries:
    """Exact quotient ``a / b``; ``b`` must have a nonzero constant term."""
    lead = b.coeffs[0][0]
    if lead == 0:
        raise ZeroDivisionError("bivariate divisor has zero constant term")
    nx, ny = min(a.nx, b.nx), min(a.ny, b.ny)
    support = [
        (p, q, b.coeffs[p][q])
        for p in range(nx + 1)
        for q in range(ny + 1)
        if (p or q) and b.coeffs[p][q]
    ]
    out = [[_ZERO] * (ny + 1) for _ in range(nx + 1)]
    for i in range(nx + 1):
        for j in range(ny + 1):
            acc = a.coeffs[i][j]
            for p, q, bpq in support:
                if p <= i and q <= j:
                    acc -= bpq * out[i - p][j - q]
            out[i][j] = acc / lead
    return BiSeries(out, nx, ny)

"""Self-check suites: every identity the package implements, run against independent routes.

Each suite returns a :class:`SuiteResult`.  A suite fails if any check is
false or raises one of the package's consistency errors.  Diagnostics are
reported but never fail the run.
"""

from __future__ import annotations

import contextlib
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterator

from polybern2 import numbertheory as nt
from polybern2 import polynum as pn
from polybern2 import series as sr
from polybern2 import stirling as st
from polybern2.core import (
    InconsistencyError,
    TheoremViolation,
    binomial,
    factorial,
    frac_part,
    multinomial,
)

__all__ = ["Bounds", "SuiteResult", "SUITES", "run_suites", "injected_fault", "format_result"]


@dataclass(frozen=True)
class Bounds:
    nmax: int = 8
    kmax: int = 3
    order: int = 15
    bi_order: int = 20

    @property
    def stirling_nmax(self) -> int:
        return self.nmax + 4

    @property
    def enum_nmax(self) -> int:
        return min(5, self.nmax)


@dataclass
class SuiteResult:
    name: str
    passed: bool
    checks: int = 0
    failures: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    seconds: float = 0.0
    diagnostic: bool = False


class _Checker:
    def __init__(self):
        self.count = 0
        self.failures: list[str] = []
        self.notes: list[str] = []

    def __call__(self, ok: bool, label: str) -> None:
        self.count += 1
        if not ok:
            self.failures.append(label)


def _suite_core(b: Bounds, check: _Checker) -> None:
    samples = [Fraction(p, q) for p in range(-7, 8) for q in range(1, 6)]
    for x in samples:
        check(frac_part(x) + (x - frac_part(x)) == x and 0 <= frac_part(x) < 1, f"frac_part({x})")
        check((x - frac_part(x)).denominator == 1, f"floor({x}) integral")
        for y in samples[::7]:
            check((x + y) - y == x, f"({x}+{y})-{y}")
            if y:
                check((x * y) / y == x, f"({x}*{y})/{y}")
    for n in range(b.stirling_nmax + 1):
        for k in range(n + 1):
            check(binomial(n, k) == binomial(n, n - k), f"C({n},{k}) symmetry")
            check(multinomial([k, n - k]) == binomial(n, k), f"multinomial[{k},{n - k}]")


def _suite_stirling_routes(b: Bounds, check: _Checker) -> None:
    for s in range(1, 5):
        for n in range(1, b.stirling_nmax + 1):
            for k in range(1, n + 1):
                ref = st.stirling2_level(s, n, k)
                check(ref >= 0, f"{{{n} {k}}}_{s} nonnegative")
                check(st.stirling2_explicit(s, n, k) == ref, f"explicit {{{n} {k}}}_{s}")
                check(st.stirling2_explicit_alt(s, n, k) == ref, f"alternate {{{n} {k}}}_{s}")
                if s == 2:
                    check(st.stirling2_binom_s2(n, k) == ref, f"binomial form {{{n} {k}}}_2")
        for n in range(b.stirling_nmax + 1):
            check(st.stirling2_level(s, n, n) == 1, f"{{{n} {n}}}_{s} diagonal")
    for n in range(2, b.stirling_nmax + 1):
        check(st.stirling2_k2_closed(n) == st.stirling2_level(2, n, 2), f"{{{n} 2}}_2 closed form")


def _suite_stirling_polys(b: Bounds, check: _Checker) -> None:
    for s in range(1, 5):
        for n in range(b.stirling_nmax + 1):
            check(
                st.stirling1_poly(s, n) == [st.stirling1_level(s, n, k) for k in range(n + 1)],
                f"first-kind polynomial s={s} n={n}",
            )
            check(st.stirling2_newton_check(s, n), f"second-kind Newton basis s={s} n={n}")


def _suite_orthogonality(b: Bounds, check: _Checker) -> None:
    for s in range(1, 4):
        for m in range(b.nmax + 1):
            for j in range(m + 1):
                delta = int(m == j)
                check(st.orthogonality_first_second(s, m, j) == delta, f"[.]{{.}} s={s} m={m} j={j}")
                check(st.orthogonality_second_first(s, m, j) == delta, f"{{.}}[.] s={s} m={m} j={j}")
        for k in range(1, b.nmax + 1):
            check(
                st.node_weight_sum(s, k) == Fraction((-1) ** (k - 1), factorial(k) ** s),
                f"node weight sum s={s} k={k}",
            )
            for n in range(1, k):
                total = sum(j ** (n * s) * st.node_weight(s, k, j) for j in range(1, k + 1))
                check(total == 0, f"vanishing power sum s={s} k={k} n={n}")


def _suite_enumeration(b: Bounds, check: _Checker) -> None:
    for s in range(1, 4):
        for n in range(b.enum_nmax + 1):
            for k in range(n + 1):
                check(st.enum_tuples_second(s, n, k) == st.stirling2_level(s, n, k), f"partitions s={s} ({n},{k})")
                check(st.enum_tuples_first(s, n, k) == st.stirling1_level(s, n, k), f"permutations s={s} ({n},{k})")


def _suite_generating_functions(b: Bounds, check: _Checker) -> None:
    for s in range(1, 4):
        for k in range(1, 6):
            check(st.st2_egf_check(s, k, b.order), f"EGF s={s} k={k}")
            check(st.st2_ogf_check(s, k, b.order), f"OGF s={s} k={k}")
    ex = sr.gen_exp(1, b.order) - 1
    for k in range(1, 6):
        classical = (ex**k) / factorial(k)
        check(st.st2_egf_rhs(1, k, b.order).agrees_with(classical), f"(e^x-1)^{k}/{k}!")


def _suite_series(b: Bounds, check: _Checker) -> None:
    order = 2 * b.nmax + 4
    for k in (-2, -1, 0, 1, 2, 3):
        hi, lo = sr.gen_li2k(k, order), sr.gen_li2k(k - 1, order)
        for e in range(1, order + 1, 2):
            check(e * hi.coeff(e) == lo.coeff(e), f"Li_2,{k} derivative relation at z^{e}")
        rebuilt = sr.ps_integrate(sr.ps_div(lo, sr.PSeries.monomial(1, order)))
        check(rebuilt.agrees_with(hi), f"Li_2,{k} from integral of Li_2,{k - 1}/z")
    z = sr.gen_two_sin_half(2 * b.nmax + 2)
    for m in range(0, 6):
        zp = z ** (2 * m)
        for n in range(m, b.nmax + 3):
            if 2 * n > zp.order:
                break
            want = Fraction((-1) ** (n - m) * factorial(2 * m) * st.stirling2_level(2, n, m), factorial(2 * n))
            check(zp.coeff(2 * n) == want, f"(2sin(x/2))^{2 * m} at x^{2 * n}")
    tan_order = max(b.order, 15)
    tan_ref = sr.ps_div(sr.gen_two_sin_half(tan_order + 1), sr.gen_cos(tan_order + 1, Fraction(1, 2)))
    check(sr.gen_two_tan_half(tan_order).agrees_with(tan_ref), "2tan(x/2) from Bernoulli numbers")
    for gen in (sr.gen_two_sin_half(order), sr.gen_two_tan_half(order), sr.gen_atanh(order)):
        check(all(gen.coeff(e) == 0 for e in range(0, order + 1, 2)), "odd generator parity")
    for gen in (sr.gen_cos(order), sr.gen_cosh_scaled(2, order)):
        check(all(gen.coeff(e) == 0 for e in range(1, order + 1, 2)), "even generator parity")
    bern_ref = sr.ps_div(sr.gen_exp(1, order + 1) - 1, sr.PSeries.monomial(1, order + 1))
    inv = sr.ps_div(sr.PSeries.constant(1, order), bern_ref)
    check(
        all(inv.coeff(i) * factorial(i) == pn.bernoulli(i) for i in range(order + 1)),
        "Bernoulli numbers from x/(e^x-1)",
    )


def _kgrid(b: Bounds) -> range:
    return range(-b.kmax, b.kmax + 1)


def _suite_pb2_routes(b: Bounds, check: _Checker) -> None:
    for k in _kgrid(b):
        gf = pn.pb2_gf(k, b.nmax)
        it = pn.pb2_iterated_gf(k, b.nmax) if k >= 1 else None
        for n in range(b.nmax + 1):
            ref = pn.pb2_explicit(n, k)
            check(pn.pb2_multinomial(n, k) == ref, f"compositions B_{2 * n}^({k})")
            check(gf[n] == ref, f"generating function B_{2 * n}^({k})")
            if it is not None:
                check(it[n] == ref, f"iterated integrals B_{2 * n}^({k})")
            if n >= 1 and k < 0:
                check(ref.denominator == 1, f"B_{2 * n}^({k}) integral")
    for k in range(-b.kmax + 1, b.kmax + 1):
        for n in range(b.nmax + 1):
            check(pn.pb2_step_k(n, k) == pn.pb2_explicit(n, k - 1), f"k-recurrence B_{2 * n}^({k - 1})")
    for n in range(b.nmax + 1):
        check(pn.pb2_explicit(n, 1) == nt.bernoulli2(n), f"B_{2 * n} level 2")


def _suite_relations(b: Bounds, check: _Checker) -> None:
    for k in _kgrid(b):
        pc = pn.pc2_gf(k, b.nmax)
        for n in range(b.nmax + 1):
            check(pc[n] == pn.pc2_explicit(n, k), f"poly-Cauchy gf C_{2 * n}^({k})")
        for n in range(1, b.nmax + 1):
            target = Fraction(1) / Fraction(2 * n + 1) ** k
            check(pn.pc2_from_pb2(n, k) == pn.pc2_explicit(n, k), f"C from B n={n} k={k}")
            check(pn.pb2_from_pc2(n, k) == pn.pb2_explicit(n, k), f"B from C n={n} k={k}")
            check(pn.identity_b_sum(n, k) == target, f"B-sum n={n} k={k}")
            check(pn.identity_c_sum(n, k) == target, f"C-sum n={n} k={k}")


def _suite_classical(b: Bounds, check: _Checker) -> None:
    nmax = min(6, b.nmax)
    for n in range(0, 2 * nmax + 1, 2):
        check(pn.poly_bernoulli_classic(n, 1) == pn.bernoulli(n), f"B_{n}^(1) = B_{n}")
    check(pn.poly_bernoulli_classic(1, 1) == Fraction(1, 2), "B_1^(1) = 1/2")
    for k in range(0, 4):
        for n in range(1, nmax + 1):
            target = Fraction(1) / Fraction(n + 1) ** k
            check(pn.classic_pc_from_pb(n, k) == pn.poly_cauchy_classic(n, k), f"c from B n={n} k={k}")
            check(pn.classic_pb_from_pc(n, k) == pn.poly_bernoulli_classic(n, k), f"B from c n={n} k={k}")
            check(pn.classic_b_sum(n, k) == target, f"classical B-sum n={n} k={k}")
            check(pn.classic_c_sum(n, k) == target, f"classical c-sum n={n} k={k}")


def _suite_doublesum(b: Bounds, check: _Checker) -> None:
    lhs = pn.doublesum_lhs(b.bi_order, b.bi_order)
    check(lhs == pn.doublesum_rhs(b.bi_order, b.bi_order), f"double sum through x^{2 * b.bi_order} y^{2 * b.bi_order}")
    bad = pn.doublesum_first_mismatch(lhs, pn.doublesum_rhs_printed(b.bi_order, b.bi_order))
    if bad is None:
        check.notes.append("cos x form of the closed expression also matches")
    else:
        n, k = bad
        check.notes.append(
            f"cos x form of the closed expression differs first at x^{2 * n} y^{2 * k}; "
            "the 2cos x - 1 form is the one that matches"
        )


def _suite_vsc(b: Bounds, check: _Checker) -> None:
    for n, want in enumerate(nt.KNOWN_BERNOULLI2):
        check(nt.bernoulli2(n) == want, f"B_{2 * n} reference value")
    for (sub, got), want in zip(nt.frac_table(10), nt.KNOWN_FRACTIONAL_PARTS):
        check(got == want, f"B_{sub} mod 1")
    for n in range(1, 31):
        rep = nt.vsc_defect(n)
        check(rep.defect.denominator == 1, f"defect n={n}")
        check(rep.reduced_defect.denominator == 1, f"reduced defect n={n}")
    check(nt.vsc_defect(8).reduced_defect == 0, "n=8 example")
    check(nt.vsc_defect(9).reduced_defect == 1, "n=9 example")


def _suite_congruences(b: Bounds, check: _Checker) -> None:
    check(nt.cong6_check(10, 10), "mod 6 on 1 <= n, k <= 10")
    check(nt.cong5_table().entries == nt.MOD5_GRID, "mod 5 grid")
    check(nt.cong7_table().entries == nt.MOD7_GRID, "mod 7 grid")
    for n in range(1, 9):
        for k in range(1, 9):
            check(nt.pb2_residue(n, k, 5) == nt.cong5_closed(n, k), f"mod 5 closed form ({n},{k})")
    for n in range(1, 13):
        for k in range(1, 13):
            check(nt.pb2_residue(n, k, 7) == nt.cong7_closed(n, k), f"mod 7 closed form ({n},{k})")
    check(nt.periodicity_check(5, 2, 4), "mod 5 periodicity")
    check(nt.periodicity_check(7, 6, 6), "mod 7 periodicity")


def _suite_value_list(b: Bounds, check: _Checker) -> None:
    for n in range(6):
        for base, c in pn.pb2_coefficients(n):
            check(c == (-1) ** (n - (base - 1) // 2) * factorial(base - 1) * st.stirling2_level(2, n, (base - 1) // 2), f"coefficient of 1/{base}^k in B_{2 * n}")
    for n in range(6):
        for k in _kgrid(b):
            check(
                sum(Fraction(c) / Fraction(base) ** k for base, c in pn.pb2_coefficients(n)) == pn.pb2_explicit(n, k),
                f"expansion of B_{2 * n}^({k})",
            )


def _diag_cosecant(b: Bounds, check: _Checker) -> None:
    rep = nt.denominator_match(12)
    if rep.all_match:
        check.notes.append("denominators agree for 1 <= n <= 12")
    else:
        check.notes.append(f"first denominator mismatch at n={rep.first_mismatch}")


def _diag_duality(b: Bounds, check: _Checker) -> None:
    rep = pn.duality_probe(min(b.nmax, 5), min(b.nmax, 5))
    check(rep.classical_holds, "classical duality")
    check.notes.extend(rep.lines()[1:])


SUITES: list[tuple[str, Callable[[Bounds, _Checker], None], bool]] = [
    ("core arithmetic", _suite_core, False),
    ("stirling explicit formulas", _suite_stirling_routes, False),
    ("stirling polynomial identities", _suite_stirling_polys, False),
    ("orthogonality", _suite_orthogonality, False),
    ("combinatorial enumeration", _suite_enumeration, False),
    ("stirling generating functions", _suite_generating_functions, False),
    ("series generators", _suite_series, False),
    ("poly-Bernoulli routes", _suite_pb2_routes, False),
    ("poly-Cauchy relations", _suite_relations, False),
    ("classical analogues", _suite_classical, False),
    ("double generating function", _suite_doublesum, False),
    ("level-2 Bernoulli denominators", _suite_vsc, False),
    ("congruences", _suite_congruences, False),
    ("value list expansions", _suite_value_list, False),
    ("cosecant denominators (diagnostic)", _diag_cosecant, True),
    ("duality (diagnostic)", _diag_duality, True),
]


def run_suites(bounds: Bounds = Bounds(), names: list[str] | None = None) -> list[SuiteResult]:
    results = []
    for name, fn, diagnostic in SUITES:
        if names and name not in names:
            continue
        check = _Checker()
        t0 = time.perf_counter()
        try:
            fn(bounds, check)
        except (InconsistencyError, TheoremViolation, ValueError, ZeroDivisionError) as exc:
            check.failures.append(f"raised {type(exc).__name__}: {exc}")
        res = SuiteResult(
            name,
            passed=not check.failures,
            checks=check.count,
            failures=check.failures,
            notes=check.notes,
            seconds=time.perf_counter() - t0,
            diagnostic=diagnostic,
        )
        results.append(res)
    return results


@contextlib.contextmanager
def injected_fault(kind: int = 2, level: int = 2, n: int = 3, k: int = 2, delta: int = 1) -> Iterator[None]:
    """Temporarily swap in a Stirling table with one wrong entry."""
    key = (kind, level)
    original = st.table(kind, level)
    bad = st.StirlingTable(kind, level)
    bad.override(n, k, bad(n, k) + delta)
    with st._tables_lock:
        st._tables[key] = bad
    try:
        yield
    finally:
        with st._tables_lock:
            st._tables[key] = original


def format_result(res: SuiteResult) -> list[str]:
    if res.diagnostic:
        status = "INFO" if res.passed else "FAIL"
    else:
        status = "PASS" if res.passed else "FAIL"
    lines = [f"{status} {res.name} ({res.checks} checks, {res.seconds:.2f}s)"]
    lines += [f"    failed: {f}" for f in res.failures[:5]]
    if len(res.failures) > 5:
        lines.append(f"    ... {len(res.failures) - 5} more")
    lines += [f"    note: {n}" for n in res.notes]
    return lines


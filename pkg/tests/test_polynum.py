from fractions import Fraction
from functools import lru_cache

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from polybern2.core import InconsistencyError, OracleBoundError, factorial
from polybern2.polynum import (
    bernoulli,
    classic_b_sum,
    classic_c_sum,
    classic_pb_from_pc,
    classic_pc_from_pb,
    doublesum_check,
    doublesum_first_mismatch,
    doublesum_lhs,
    doublesum_rhs,
    doublesum_rhs_printed,
    duality_probe,
    identity_b_sum,
    identity_c_sum,
    pb2_coefficients,
    pb2_explicit,
    pb2_from_pc2,
    pb2_gf,
    pb2_iterated_gf,
    pb2_multinomial,
    pb2_step_k,
    pc2_explicit,
    pc2_from_pb2,
    pc2_gf,
    poly_bernoulli_classic,
    poly_cauchy_classic,
)

X, Y, Z = sympy.symbols("x y z")


def egf_values(expr, var, nmax, step=2):
    """Exponential-generating-function coefficients from a sympy series."""
    poly = sympy.series(expr, var, 0, step * nmax + 1).removeO()
    return [
        Fraction(str(sympy.Rational(poly.coeff(var, i) * sympy.factorial(i))))
        for i in range(0, step * nmax + 1, step)
    ]


@lru_cache(maxsize=None)
def li2_closed(k):
    """Level-2 polylogarithm for k <= 1 as a closed sympy expression."""
    if k == 1:
        return sympy.atanh(Z)
    expr = Z / (1 - Z**2)
    for _ in range(-k):
        expr = sympy.simplify(Z * sympy.diff(expr, Z))
    return expr


@lru_cache(maxsize=None)
def sympy_pb2(k, nmax):
    z = 2 * sympy.sin(X / 2)
    return egf_values(li2_closed(k).subs(Z, z) / z, X, nmax)


class TestClassical:
    def test_bernoulli(self):
        assert bernoulli(1) == Fraction(-1, 2)
        assert bernoulli(2) == Fraction(1, 6)
        assert bernoulli(3) == 0
        for n in range(2, 30):
            assert bernoulli(n) == Fraction(str(sympy.bernoulli(n)))
        with pytest.raises(ValueError):
            bernoulli(-1)

    def test_poly_bernoulli_classic(self):
        assert poly_bernoulli_classic(1, 1) == Fraction(1, 2)
        assert poly_bernoulli_classic(0, 5) == 1
        assert poly_bernoulli_classic(2, 2) == Fraction(-1, 36)
        for n in range(2, 12, 2):
            assert poly_bernoulli_classic(n, 1) == bernoulli(n)

    @pytest.mark.parametrize("k", [0, 1, 2, 3])
    def test_negative_index_matches_gf(self, k):
        # Li_{-k}(1 - e^-x) / (1 - e^-x), with Li_{-k} from the z d/dz recursion
        li = Z / (1 - Z)
        for _ in range(k):
            li = sympy.simplify(Z * sympy.diff(li, Z))
        w = 1 - sympy.exp(-X)
        want = egf_values(li.subs(Z, w) / w, X, 6, step=1)
        assert [poly_bernoulli_classic(n, -k) for n in range(7)] == want

    def test_poly_cauchy_classic(self):
        # k = 1: x / log(1 + x)
        want = egf_values(X / sympy.log(1 + X), X, 7, step=1)
        assert [poly_cauchy_classic(n, 1) for n in range(8)] == want

    @pytest.mark.parametrize("n", range(1, 7))
    @pytest.mark.parametrize("k", range(-3, 4))
    def test_relations(self, n, k):
        assert classic_pc_from_pb(n, k) == poly_cauchy_classic(n, k)
        assert classic_pb_from_pc(n, k) == poly_bernoulli_classic(n, k)
        assert classic_b_sum(n, k) == Fraction(1, n + 1) ** k
        assert classic_c_sum(n, k) == Fraction(1, n + 1) ** k


class TestLevelTwoValues:
    def test_explicit_examples(self):
        assert pb2_explicit(1, 1) == Fraction(2, 3)
        assert all(pb2_explicit(1, k) == 2 * Fraction(3) ** -k for k in range(-4, 5))
        assert pb2_explicit(2, 1) == Fraction(62, 15)
        assert pb2_explicit(2, -1) == 114
        assert pb2_explicit(0, 7) == 1

    def test_coefficients(self):
        assert pb2_coefficients(2) == [(1, 0), (3, -2), (5, 24)]
        with pytest.raises(ValueError):
            pb2_coefficients(-1)

    def test_multinomial_examples(self):
        assert pb2_multinomial(1, 1) == Fraction(2, 3)
        assert pb2_multinomial(0, 4) == 1
        assert pb2_multinomial(3, 1) == Fraction(1670, 21)
        with pytest.raises(OracleBoundError, match="oracle bound exceeded"):
            pb2_multinomial(9, 1)

    def test_gf_examples(self):
        assert pb2_gf(1, 2) == [1, Fraction(2, 3), Fraction(62, 15)]
        assert pb2_gf(2, 2)[2] == Fraction(166, 225)
        assert all(pb2_gf(k, 0) == [1] for k in range(-3, 4))

    def test_iterated_examples(self):
        assert pb2_iterated_gf(1, 5) == pb2_gf(1, 5)
        assert pb2_iterated_gf(2, 1)[1] == Fraction(2, 9)
        assert pb2_iterated_gf(3, 3)[0] == 1
        with pytest.raises(ValueError):
            pb2_iterated_gf(0, 3)

    @pytest.mark.parametrize("k", [1, 0, -1, -2, -3])
    def test_against_sympy_closed_forms(self, k):
        assert [pb2_explicit(n, k) for n in range(8)] == sympy_pb2(k, 7)

    @pytest.mark.parametrize("k", range(-3, 4))
    def test_routes_agree(self, k):
        explicit = [pb2_explicit(n, k) for n in range(9)]
        assert [pb2_multinomial(n, k) for n in range(9)] == explicit
        assert pb2_gf(k, 8) == explicit
        if k >= 1:
            assert pb2_iterated_gf(k, 8) == explicit

    @settings(max_examples=40, deadline=None)
    @given(st.integers(1, 12), st.integers(1, 12))
    def test_negative_k_values_are_integers(self, n, k):
        assert pb2_explicit(n, -k).denominator == 1

    def test_step_k_examples(self):
        assert pb2_step_k(1, 1) == 2
        assert pb2_step_k(0, 3) == 1
        assert pb2_step_k(2, 1) == 22

    @pytest.mark.parametrize("k", range(-2, 4))
    def test_step_k(self, k):
        for n in range(9):
            assert pb2_step_k(n, k) == pb2_explicit(n, k - 1)


class TestPolyCauchy:
    def test_examples(self):
        assert all(pc2_explicit(1, k) == Fraction(3) ** -k for k in range(-3, 4))
        assert pc2_explicit(2, 1) == Fraction(-17, 15)
        assert pc2_explicit(0, 2) == 1

    def test_closed_forms(self):
        # Lif at k=0 is cosh, at k=1 it is sinh(z)/z
        assert [pc2_explicit(n, 0) for n in range(8)] == egf_values(sympy.sqrt(1 + X**2), X, 7)
        assert [pc2_explicit(n, 1) for n in range(8)] == egf_values(X / sympy.asinh(X), X, 7)

    @pytest.mark.parametrize("k", range(-3, 4))
    def test_gf_route(self, k):
        assert pc2_gf(k, 8) == [pc2_explicit(n, k) for n in range(9)]

    def test_relation_examples(self):
        assert pc2_from_pb2(1, 1) == Fraction(1, 3)
        assert pc2_from_pb2(2, 1) == Fraction(-17, 15)
        assert pc2_from_pb2(3, 2) == pc2_explicit(3, 2)
        assert pb2_from_pc2(1, 1) == Fraction(2, 3)
        assert pb2_from_pc2(2, 1) == Fraction(62, 15)
        assert pb2_from_pc2(3, -1) == pb2_explicit(3, -1)

    def test_sum_identity_examples(self):
        assert identity_b_sum(1, 1) == Fraction(1, 3)
        assert identity_b_sum(2, 2) == Fraction(1, 25)
        assert identity_b_sum(3, 0) == 1
        assert identity_c_sum(1, 4) == Fraction(1, 81)
        assert identity_c_sum(2, 1) == Fraction(1, 5)
        assert identity_c_sum(2, 0) == 1

    @pytest.mark.parametrize("n", range(1, 9))
    def test_relations_grid(self, n):
        for k in range(-3, 4):
            assert pc2_from_pb2(n, k) == pc2_explicit(n, k)
            assert pb2_from_pc2(n, k) == pb2_explicit(n, k)
            assert identity_b_sum(n, k) == identity_c_sum(n, k) == Fraction(1, 2 * n + 1) ** k

    def test_domain(self):
        for fn in (pc2_from_pb2, pb2_from_pc2, identity_b_sum, identity_c_sum):
            with pytest.raises(ValueError):
                fn(0, 1)


class TestDoubleSum:
    def test_small_values(self):
        lhs = doublesum_lhs(3, 3)
        assert lhs.coeff(0, 0) == 1
        assert lhs.coeff(1, 0) == 1
        assert lhs.coeff(1, 1) == Fraction(9, 2)
        assert doublesum_rhs(3, 3).coeff(0, 0) == 1
        assert doublesum_rhs(3, 3).coeff(1, 0) == 1
        assert doublesum_check(0, 0)
        assert doublesum_check(3, 3)

    def test_closed_form_against_sympy(self):
        c = 2 * sympy.cos(X) - 1
        expr = c * sympy.cosh(Y) / (2 * (1 - c) * (1 - sympy.cosh(2 * Y)) + c**2)
        sx = sympy.series(expr, X, 0, 7).removeO()
        rhs = doublesum_rhs(3, 3)
        for n in range(4):
            col = sympy.series(sx.coeff(X, 2 * n), Y, 0, 7).removeO()
            for k in range(4):
                assert rhs.coeff(n, k) == Fraction(str(sympy.Rational(col.coeff(Y, 2 * k))))

    def test_printed_variant_differs(self):
        printed = doublesum_rhs_printed(4, 4)
        assert printed.coeff(1, 0) == Fraction(1, 2)  # sec x, not 1 / (2 cos x - 1)
        assert doublesum_first_mismatch(doublesum_lhs(4, 4), printed) == (1, 0)
        assert doublesum_first_mismatch(doublesum_lhs(4, 4), doublesum_rhs(4, 4)) is None


class TestDuality:
    def test_probe(self):
        rep = duality_probe(6, 6)
        assert rep.classical_holds and rep.classical_counterexample is None
        assert not rep.level2_holds
        assert rep.level2_counterexample == (1, 2)
        assert pb2_explicit(1, -4) == 162 and pb2_explicit(2, -2) == 582
        assert "fails" in rep.lines()[1]

    def test_classical_points(self):
        assert poly_bernoulli_classic(2, -1) == poly_bernoulli_classic(1, -2)
        assert poly_bernoulli_classic(1, -1) == 2


def test_odd_coefficient_guard():
    from polybern2.polynum import _even_egf_values
    from polybern2.series import gen_two_sin_half

    with pytest.raises(InconsistencyError):
        _even_egf_values(gen_two_sin_half(5), 2, "probe")

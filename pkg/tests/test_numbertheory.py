from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from polybern2.core import TheoremViolation
from polybern2.numbertheory import (
    MOD5_GRID,
    MOD7_GRID,
    ResidueTable,
    bernoulli2,
    cong5_closed,
    cong5_table,
    cong6_check,
    cong7_closed,
    cong7_table,
    cosecant_number,
    denominator_match,
    frac_table,
    is_prime,
    pb2_residue,
    periodicity_check,
    primes_for,
    vsc_defect,
)
from polybern2.polynum import pb2_explicit
from polybern2.stirling import stirling2_level


@given(st.integers(-5, 3000))
def test_is_prime_matches_sympy(n):
    assert is_prime(n) == sympy.isprime(n)


def test_primes_for():
    assert primes_for(1) == [3]
    assert primes_for(8) == [3, 5, 17]
    assert primes_for(9) == [3, 7, 19]
    with pytest.raises(ValueError):
        primes_for(0)


@given(st.integers(1, 200))
def test_primes_for_by_divisors(n):
    want = [d + 1 for d in sympy.divisors(2 * n) if d + 1 > 2 and sympy.isprime(d + 1)]
    assert primes_for(n) == want


class TestVsc:
    def test_sixteen(self):
        rep = vsc_defect(8)
        assert rep.reduced_defect == 0
        assert rep.terms == ((3, Fraction(-1, 3)), (5, Fraction(1, 5)), (17, Fraction(1, 17)))
        assert rep.lines()[-1] == "defect = 0"

    def test_eighteen(self):
        rep = vsc_defect(9)
        assert rep.reduced_defect == 1
        assert [t for _, t in rep.terms] == [Fraction(1, 3), Fraction(1, 7), Fraction(1, 19)]
        assert rep.lines()[-1] == "defect = 1"

    def test_two(self):
        rep = vsc_defect(1)
        assert rep.defect == 1 and rep.reduced_defect == 1

    @pytest.mark.parametrize("n", range(1, 31))
    def test_integral(self, n):
        rep = vsc_defect(n)
        assert rep.defect.denominator == 1
        assert rep.reduced_defect.denominator == 1
        assert rep.defect - rep.reduced_defect == rep.value - rep.value % 1

    def test_domain(self):
        with pytest.raises(ValueError):
            vsc_defect(0)


def test_bernoulli2_examples():
    assert bernoulli2(0) == 1
    assert bernoulli2(5) == Fraction(6936718, 33)
    assert bernoulli2(7) == Fraction(9208191626, 3)


def test_frac_table_examples():
    table = dict(frac_table(10))
    assert table[0] == 0
    assert table[12] == Fraction(272, 1365)
    assert table[20] == Fraction(37, 165)
    assert sorted(table) == list(range(0, 21, 2))


class TestCosecant:
    def test_examples(self):
        assert cosecant_number(1) == Fraction(-1, 3)
        assert cosecant_number(2) == Fraction(7, 15)

    def test_against_sympy(self):
        # x / sin x = sum (-1)^(n+1) 2 (2^(2n-1) - 1) B_2n x^2n / (2n)!
        X = sympy.Symbol("x")
        poly = sympy.series(X / sympy.sin(X), X, 0, 21).removeO()
        for n in range(1, 11):
            c = poly.coeff(X, 2 * n) * sympy.factorial(2 * n)
            assert Fraction(str(sympy.Rational(c))) == (-1) ** n * cosecant_number(n)

    def test_denominators(self):
        rep = denominator_match(12)
        assert rep.all_match and rep.first_mismatch is None
        assert rep.rows[0] == (1, 3, 3)


class TestResidues:
    def test_examples(self):
        assert pb2_residue(1, 1, 6) == 0
        assert pb2_residue(2, 1, 5) == 4
        assert pb2_residue(2, 1, 7) == 2
        assert pb2_explicit(1, -1) == 6

    def test_domain(self):
        with pytest.raises(ValueError):
            pb2_residue(0, 1, 5)
        with pytest.raises(ValueError):
            pb2_residue(1, 1, 1)

    def test_mod6(self):
        assert cong6_check(8, 3)
        assert cong6_check(10, 10)

    def test_grids(self):
        t5, t7 = cong5_table(), cong7_table()
        assert t5.entries == MOD5_GRID and t7.entries == MOD7_GRID
        assert list(t5.entries[1]) == [2, 1, 3, 4]
        assert t7[5, 4] == 2
        assert t7[0, 2] == 0
        assert t7[6, 8] == t7[0, 2]

    @given(st.integers(1, 14), st.integers(1, 14))
    def test_closed_congruences(self, n, k):
        assert cong5_closed(n, k) == pb2_residue(n, k, 5)
        assert cong7_closed(n, k) == pb2_residue(n, k, 7)

    def test_second_column_enters_mod7(self):
        # the mod-7 closed form uses {n 2}_2 = (4^(n-1) - 1) / 3
        for n in range(2, 12):
            assert 3 * stirling2_level(2, n, 2) == 4 ** (n - 1) - 1

    def test_periodicity(self):
        assert periodicity_check(5, 2, 4)
        assert periodicity_check(7, 6, 6)
        assert not periodicity_check(7, 2, 4)

    def test_table_validation(self):
        with pytest.raises(ValueError):
            ResidueTable(5, 2, 4, ((0, 1, 2, 3),))
        with pytest.raises(ValueError):
            ResidueTable(5, 1, 2, ((0, 5),))

    def test_build_detects_bad_reference(self, monkeypatch):
        import polybern2.numbertheory as nt

        monkeypatch.setattr(nt, "MOD5_GRID", ((3, 4, 2, 1), (2, 1, 3, 0)))
        with pytest.raises(TheoremViolation):
            nt.cong5_table()

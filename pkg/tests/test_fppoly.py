import pytest
from hypothesis import given, strategies as st

from arithdyn import fppoly
from arithdyn.errors import BudgetExceededError, DomainError
from arithdyn.fppoly import FpPoly

from oracles import brute_monic_irreducibles


def poly(p, *coeffs):
    return fppoly.ptrim(list(coeffs))


@st.composite
def polys(draw, p):
    return fppoly.ptrim(draw(st.lists(st.integers(0, p - 1), max_size=6)))


class TestArithmetic:
    def test_add_sub_roundtrip(self):
        p = 5
        a = poly(p, 1, 2, 3)
        b = poly(p, 4, 4)
        assert fppoly.psub(p, fppoly.padd(p, a, b), b) == a

    def test_mul_example(self):
        # (t+1)^2 = t^2+1 over F_2
        assert fppoly.pmul(2, (1, 1), (1, 1)) == (1, 0, 1)

    @given(st.data())
    def test_divmod_identity(self, data):
        p = data.draw(st.sampled_from([2, 3, 5]))
        a = data.draw(polys(p))
        b = data.draw(polys(p))
        if not b:
            return
        q, r = fppoly.pdivmod(p, a, b)
        assert fppoly.padd(p, fppoly.pmul(p, q, b), r) == a
        assert fppoly.pdeg(r) < fppoly.pdeg(b)

    @given(st.data())
    def test_gcd_divides_both(self, data):
        p = data.draw(st.sampled_from([2, 3]))
        a = data.draw(polys(p))
        b = data.draw(polys(p))
        g = fppoly.pgcd(p, a, b)
        if g:
            assert not fppoly.pdivmod(p, a, g)[1]
            assert not fppoly.pdivmod(p, b, g)[1]
        else:
            assert not a and not b

    @given(st.data())
    def test_xgcd_bezout(self, data):
        p = data.draw(st.sampled_from([2, 5]))
        a = data.draw(polys(p))
        b = data.draw(polys(p))
        g, u, v = fppoly.pxgcd(p, a, b)
        lhs = fppoly.padd(p, fppoly.pmul(p, u, a), fppoly.pmul(p, v, b))
        assert lhs == g

    def test_derivative_char_p(self):
        # (t^2)' = 2t = 0 over F_2; p-th powers have zero derivative
        assert fppoly.pderiv(2, (0, 0, 1)) == ()
        assert fppoly.pderiv(3, (0, 0, 0, 1)) == ()
        assert fppoly.pderiv(5, (1, 2, 3)) == (2, 6 % 5)


class TestIrreducibles:
    def test_count_moebius_examples(self):
        assert fppoly.count_irreducibles(2, 4) == 3
        assert sum(fppoly.count_irreducibles(2, n) for n in range(1, 5)) == 8
        for p in (2, 3, 5, 7):
            assert fppoly.count_irreducibles(p, 1) == p
        assert fppoly.count_irreducibles(3, 2) == 3

    def test_count_3_2_against_bruteforce(self):
        assert len(brute_monic_irreducibles(3, 2)) == 3

    @pytest.mark.parametrize("p", [2, 3])
    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_enumeration_matches_bruteforce(self, p, n):
        ours = {
            f
            for f in fppoly.enumerate_monic_irreducibles(p, n)
            if fppoly.pdeg(f) == n
        }
        assert ours == brute_monic_irreducibles(p, n)

    def test_enumeration_order(self):
        assert fppoly.enumerate_monic_irreducibles(2, 2) == [(0, 1), (1, 1), (1, 1, 1)]
        assert fppoly.enumerate_monic_irreducibles(2, 1) == [(0, 1), (1, 1)]
        assert fppoly.enumerate_monic_irreducibles(3, 1) == [(0, 1), (1, 1), (2, 1)]

    def test_enumeration_length_is_cumulative_count(self):
        for p in (2, 3):
            for up_to in (1, 2, 3, 4, 5):
                got = len(fppoly.enumerate_monic_irreducibles(p, up_to))
                want = sum(fppoly.count_irreducibles(p, n) for n in range(1, up_to + 1))
                assert got == want

    def test_enumeration_budget(self):
        with pytest.raises(BudgetExceededError):
            fppoly.enumerate_monic_irreducibles(5, 20, budget=10**6)

    def test_count_rejects_bad_input(self):
        with pytest.raises(DomainError):
            fppoly.count_irreducibles(4, 2)
        with pytest.raises(DomainError):
            fppoly.count_irreducibles(2, 0)

    def test_factor_poly(self):
        # t^3 + t = t (t+1)^2 over F_2
        assert fppoly.factor_poly(2, (0, 1, 0, 1)) == {(0, 1): 1, (1, 1): 2}
        # constants have empty factorization
        assert fppoly.factor_poly(3, (2,)) == {}


class TestSerialization:
    def test_poly_str(self):
        assert fppoly.poly_str((1, 1, 1)) == "t^2+t+1"
        assert fppoly.poly_str((0, 2)) == "2*t"
        assert fppoly.poly_str(()) == "0"
        assert fppoly.poly_str((3,)) == "3"

    def test_coeff_string_roundtrip(self):
        for cs in [(), (1,), (1, 0, 2), (0, 1, 1)]:
            s = fppoly.coeff_string(cs)
            assert fppoly.parse_coeff_string(3, s) == cs


class TestFpPolyClass:
    def test_operators(self):
        t = FpPoly.gen(3)
        one = FpPoly.const(3, 1)
        f = t * t + t + one
        assert str(f) == "t^2+t+1"
        assert (f % (t + one)).coeffs == (1,)  # f(-1) = 1 - 1 + 1 = 1
        assert f.gcd(t).coeffs == (1,)

    def test_monic_and_irreducible(self):
        f = FpPoly.make(5, [1, 0, 2])
        assert f.monic().leading() == 1
        assert FpPoly.make(2, [1, 1, 1]).is_irreducible()
        assert not FpPoly.make(2, [1, 0, 1]).is_irreducible()  # (t+1)^2

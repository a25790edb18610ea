import math
from fractions import Fraction

import mpmath as mp
import pytest

import arithdyn as ad
from arithdyn.bounds import (
    BoundContext,
    certified_ceiling,
    ln_interval,
    unit_equation_solution_bound,
)
from arithdyn.errors import BudgetExceededError, DomainError, PreconditionError

mp.mp.dps = 60


class TestLnInterval:
    @pytest.mark.parametrize(
        "x", [Fraction(1), Fraction(2), Fraction(5), Fraction(10), Fraction(355, 113)]
    )
    def test_encloses_true_value(self, x):
        lo, hi = ln_interval(x, 40)
        true = mp.log(mp.mpf(x.numerator) / x.denominator)
        assert mp.mpf(lo.numerator) / lo.denominator <= true
        assert mp.mpf(hi.numerator) / hi.denominator >= true
        assert hi - lo < Fraction(1, 10**20)

    def test_rejects_small_arguments(self):
        with pytest.raises(DomainError):
            ln_interval(Fraction(1, 2))


class TestPositiveCharacteristic:
    def test_spot_check_2_1_1(self):
        bs = ad.compute_bounds(BoundContext(2, 1, 1))
        assert (bs.eta, bs.cycle_bound, bs.i_bound, bs.r_bound) == (64, 60, 3, 1)
        assert bs.evertse_bound is None

    def test_spot_check_3_1_2(self):
        bs = ad.compute_bounds(BoundContext(3, 1, 2))
        assert bs.i_bound == 35
        assert bs.r_bound == 45

    def test_two_evaluation_routes(self):
        # factored route recomputed independently of compute_bounds
        for p in (2, 3, 5):
            for D in (1, 2, 3):
                for s in range(1, 9):
                    bs = ad.compute_bounds(BoundContext(p, D, s))
                    ps = p * s
                    direct = ps ** (4 * D) * max(ps ** (2 * D), p ** (4 * s - 2))
                    if ps ** (2 * D) >= p ** (4 * s - 2):
                        factored = ps ** (6 * D)
                    else:
                        factored = ps ** (4 * D) * p ** (4 * s - 2)
                    assert bs.eta == direct == factored
                    assert bs.cycle_bound == direct - max(
                        ps ** (2 * D), p ** (4 * s - 2)
                    )

    def test_cycle_bound_below_eta(self):
        for p in (2, 3, 5):
            for D in (1, 2, 3):
                for s in range(1, 9):
                    bs = ad.compute_bounds(BoundContext(p, D, s))
                    assert bs.cycle_bound <= bs.eta

    def test_r_bound_integrality_and_value(self):
        for p in (2, 3, 5, 7):
            for s in range(1, 9):
                base = p ** (2 * s - 2)
                assert unit_equation_solution_bound(p, s) * (p - 1) == base * (
                    base + p - 2
                )


class TestCharacteristicZero:
    def test_cycle_bound_exact_ceiling(self):
        bs = ad.compute_bounds(BoundContext(0, 1, 1))
        true = (24 * mp.log(10)) ** 4
        assert bs.cycle_bound == int(mp.ceil(true)) == 9326265

    def test_eta_value(self):
        bs = ad.compute_bounds(BoundContext(0, 1, 1))
        b1 = (2**8 + 3) * (12 * mp.log(5))
        b2 = (36 * mp.log(10)) ** 4
        assert bs.eta == int(mp.ceil(max(b1, b2))) == 47214214
        assert bs.evertse_bound == 256
        assert bs.r_bound is None

    @pytest.mark.parametrize("s", [1, 2, 3, 4])
    @pytest.mark.parametrize("D", [1, 2])
    def test_certified_ceilings_against_high_precision(self, s, D):
        bs = ad.compute_bounds(BoundContext(0, D, s))
        eta_true = max(
            (2 ** (16 * s - 8) + 3) * (12 * s * mp.log(5 * s)) ** D,
            (12 * (s + 2) * mp.log(5 * s + 5)) ** (4 * D),
        )
        cycle_true = (12 * (s + 1) * mp.log(5 * (s + 1))) ** (4 * D)
        i_true = (12 * s * mp.log(5 * s)) ** D
        assert bs.eta >= eta_true and bs.eta == int(mp.ceil(eta_true))
        assert bs.cycle_bound >= cycle_true
        assert bs.cycle_bound == int(mp.ceil(cycle_true))
        assert bs.i_bound == int(mp.ceil(i_true)) - 1

    def test_certified_ceiling_refines(self):
        # a deliberately coarse formula still settles on the right ceiling
        val = certified_ceiling(lambda terms: ln_interval(Fraction(3), terms))
        assert val == 2  # ln 3 = 1.0986...


class TestMonotonicity:
    def test_grid(self):
        for p in (0, 2, 3, 5):
            prev_by_d = {}
            for D in (1, 2, 3):
                prev = None
                for s in range(1, 9):
                    bs = ad.compute_bounds(BoundContext(p, D, s))
                    fields = [bs.eta, bs.cycle_bound, bs.i_bound]
                    if bs.r_bound is not None:
                        fields.append(bs.r_bound)
                    if bs.evertse_bound is not None:
                        fields.append(bs.evertse_bound)
                    if prev is not None:
                        assert all(a >= b for a, b in zip(fields, prev))
                    prev = fields
                    key = s
                    if key in prev_by_d:
                        assert all(a >= b for a, b in zip(fields, prev_by_d[key]))
                    prev_by_d[key] = fields


class TestAuxiliaryBounds:
    def test_lemma33(self):
        assert ad.equal_distance_family_bound(BoundContext(2, 1, 1)) == 4
        assert ad.equal_distance_family_bound(BoundContext(3, 1, 1)) == 9
        assert ad.equal_distance_family_bound(BoundContext(2, 2, 3)) == 1296
        with pytest.raises(DomainError):
            ad.equal_distance_family_bound(BoundContext(0, 1, 1))

    def test_automorphism_cycle_bound(self):
        assert ad.automorphism_cycle_bound(1) == 6
        assert ad.automorphism_cycle_bound(2) == 18
        assert ad.automorphism_cycle_bound(3) == 38

    def test_preper_total_bound(self):
        assert ad.preper_total_bound(12, 3, 2) == 2**12 * (2**6 + 1) == 266240
        assert ad.preper_total_bound(1, 1, 2) == 6
        assert ad.preper_total_bound(2, 2, 3) == 90

    def test_preper_total_exponent_is_lcm(self):
        # m_p(C) = floor(log_p C) repackaged: n = lcm(1..C)
        assert ad.preper_total_bound(1, 6, 2) == 2 * (2**60 + 1)
        assert math.lcm(*range(1, 7)) == 60

    def test_preper_total_digit_budget(self):
        with pytest.raises(BudgetExceededError):
            ad.preper_total_bound(10, 60, 2, digit_budget=1000)

    def test_context_validation(self):
        with pytest.raises(DomainError):
            BoundContext(4, 1, 1)
        with pytest.raises(DomainError):
            BoundContext(2, 0, 1)
        with pytest.raises(DomainError):
            BoundContext(2, 1, 0)


class TestVerifyReport:
    def test_passes_on_small_orbit(self):
        phi = ad.parse_map("z^2-1", ad.QQ)
        rep = ad.orbit(phi, ad.from_affine(ad.QQ.one()))
        S = ad.place_set(ad.QQ, [ad.archimedean_place()])
        checks = ad.verify_report(rep, phi, BoundContext(0, 1, 1), S)
        names = {c.name for c in checks}
        assert {"orbit_size", "cycle_length", "everywhere_good_cycle",
                "everywhere_good_orbit"} == names
        assert all(c.passed for c in checks)

    def test_precondition_bad_places_in_s(self):
        phi = ad.parse_map("z^2/3", ad.QQ)
        rep = ad.orbit(phi, ad.infinity(ad.QQ))
        S = ad.place_set(ad.QQ, [ad.archimedean_place()])
        with pytest.raises(PreconditionError):
            ad.verify_report(rep, phi, BoundContext(0, 1, 1), S)

    def test_function_field_context(self):
        F2T = ad.function_field(2)
        phi = ad.parse_map("z^2+1", F2T)
        rep = ad.orbit(phi, ad.from_affine(F2T.zero()))
        S = ad.place_set(F2T, [ad.infinite_place(F2T)])
        checks = ad.verify_report(rep, phi, BoundContext(2, 1, 1), S)
        assert all(c.passed for c in checks)
        assert {c.name for c in checks} == {"orbit_size", "cycle_length"}

"""Closed-form expansion assembly: exact values, shape invariants, folding."""

import math
import random
from fractions import Fraction

import pytest

from pwlienard import (Case, HalfPowerPoly, LienardSystem, OddnessViolated,
                       PI, RingElem, SQRT2, WrongCase, ZeroLambda, expand,
                       fold_to_theorem_form, load_preset, theorem_form_system,
                       zero_bound)
from pwlienard.melnikov import (case_x_m0, case_y_m0, case_y_m1,
                                expansion_exponents, wallis_even, wallis_odd)

from conftest import random_sweep_system


def rational(q):
    return RingElem.rational(Fraction(q))


class TestExactValues:
    def test_example1_m1_exact(self):
        """All sqrt(2) and pi factors must cancel to plain rationals."""
        exp = expand(load_preset("example1"))
        expected = HalfPowerPoly({1: rational(24), 2: rational(-50),
                                  3: rational(35), 4: rational(-10),
                                  5: rational(1)})
        assert exp.m1 == expected
        assert all(c.is_rational() for c in exp.m1.coeffs.values())
        assert exp.m0.is_zero()

    def test_example1_m1_values(self):
        exp = expand(load_preset("example1"))
        for h in (1.0, 4.0, 9.0, 16.0):
            assert abs(exp.m1.eval(h)) < 1e-9
        assert exp.m1.eval(2.0) < 0 < exp.m1.eval(0.5)

    def test_linear_in_g_coefficients(self):
        eq = load_preset("remark-eqMM")
        m0 = case_y_m0(eq)
        assert m0.coeffs[1] == SQRT2 * rational(12)
        assert m0.coeffs[2] == PI * rational(10)

    def test_piecewise_cubic_closed_form(self):
        m0 = case_y_m0(load_preset("remark-pw-cubic"))
        assert m0 == HalfPowerPoly({
            1: SQRT2 * rational(20),
            2: PI * rational(2),
            3: SQRT2 * rational(Fraction(56, 3)),
            4: PI * rational(3),
        })

    def test_smooth_cubic_closed_form(self):
        m0 = case_x_m0(load_preset("remark-smooth-cubic"))
        assert m0 == HalfPowerPoly({2: PI * rational(-2), 4: PI * rational(-3)})

    def test_wallis_values(self):
        assert wallis_odd(0) == RingElem.one()
        assert wallis_odd(1) == rational(Fraction(2, 3))
        assert wallis_odd(2) == rational(Fraction(8, 15))
        assert wallis_even(0) == PI * rational(2)
        assert wallis_even(2) == PI
        assert wallis_even(4) == PI * rational(Fraction(3, 4))
        with pytest.raises(ValueError):
            wallis_even(3)


class TestVanishing:
    def test_m0_vanishes_for_odd_blocks(self, rng):
        for _ in range(25):
            sys_y = random_sweep_system(rng, Case.SWITCH_Y)
            assert case_y_m0(sys_y).is_zero()
            sys_x = random_sweep_system(rng, Case.SWITCH_X)
            assert case_x_m0(sys_x).is_zero()

    def test_even_f0_rejected_without_projection(self):
        sys_ = LienardSystem.build(Case.SWITCH_Y, 2, 1, a0=[1, 0, 1])
        with pytest.raises(OddnessViolated):
            case_y_m1(sys_)
        exp = expand(sys_, project_odd=True)
        assert exp.m1.is_zero()

    def test_wrong_case_rejected(self):
        with pytest.raises(WrongCase):
            case_y_m0(load_preset("example2"))


class TestShapeInvariants:
    def test_support_within_allowed_exponents(self, rng):
        for _ in range(40):
            case = rng.choice([Case.SWITCH_Y, Case.SWITCH_X])
            sys_ = random_sweep_system(rng, case, enforce_odd=False)
            exp = expand(sys_, project_odd=True)
            allowed = expansion_exponents(exp)
            assert set(exp.m0.coeffs) <= allowed["M0"]
            assert set(exp.m1.coeffs) <= allowed["M1"]

    def test_zero_bound_table(self):
        assert zero_bound(Case.SWITCH_Y, 3, 3, "M0") == 3
        assert zero_bound(Case.SWITCH_Y, 3, 3, "M1") == 4
        assert zero_bound(Case.SWITCH_X, 3, 3, "M0") == 1
        assert zero_bound(Case.SWITCH_X, 3, 3, "M1") == 4
        assert zero_bound(Case.SWITCH_X, 3, 0, "M1") == 3
        assert zero_bound(Case.SWITCH_X, 0, 0, "M1") == 1
        assert zero_bound(Case.SWITCH_Y, 0, 0, "M1") == 1

    def test_zero_bound_validation(self):
        with pytest.raises(ValueError):
            zero_bound(Case.SWITCH_Y, -1, 0, "M1")
        with pytest.raises(ValueError):
            zero_bound(Case.SWITCH_Y, 1, 1, "M2")

    def test_bound_equals_monomial_capacity(self, rng):
        """The M1 bound is exactly (number of allowed monomials) - 1."""
        for _ in range(30):
            case = rng.choice([Case.SWITCH_Y, Case.SWITCH_X])
            sys_ = random_sweep_system(rng, case)
            exp = expand(sys_)
            allowed = expansion_exponents(exp)["M1"]
            assert len(allowed) - 1 == zero_bound(case, sys_.m, sys_.n, "M1")


class TestFolding:
    def test_requires_positive_lambda(self):
        with pytest.raises(ZeroLambda):
            fold_to_theorem_form(load_preset("example1"))

    def test_fold_values(self):
        sys_ = load_preset("example1", lam=0.02, eps=4e-4)
        form = fold_to_theorem_form(sys_)
        assert form.delta == pytest.approx(0.02)
        fc = sys_.float_coeffs()
        for j in range(sys_.m + 1):
            assert form.fbar[j] == pytest.approx(
                form.delta * (fc["a0"][j] + sys_.lam * fc["a1"][j]))
        for j in range(sys_.n + 1):
            assert form.gbar[j] == pytest.approx(
                fc["c"][j] + form.delta * (fc["b0"][j] + sys_.lam * fc["b1"][j]))

    def test_folded_system_realization(self):
        sys_ = load_preset("example1", lam=0.02, eps=4e-4)
        form = fold_to_theorem_form(sys_)
        folded = theorem_form_system(form)
        assert folded.case is sys_.case
        assert folded.lam == folded.eps == sys_.lam
        fc = folded.float_coeffs()
        assert fc["a0"] == pytest.approx(list(form.fbar))
        assert fc["c"] == pytest.approx(list(form.gbar))
        assert all(v == 0.0 for v in fc["a1"] + fc["b0"] + fc["b1"])

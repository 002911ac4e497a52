"""Borcherds bookkeeping: principal parts, divisors, degree identity, kappa assembly."""

from fractions import Fraction as F

import pytest
from mpmath import mp, mpf

from siegelkappa.borcherds import (DELTA5_NORM_SHIFT, DegreeIdentityViolation,
                                   T0_CONSTANT_IDENTITY, degree_identity_check,
                                   delta5_normalization, divisor_of_psi,
                                   extract_principal_part, kappa_psi,
                                   kappa_report_to_json_dict,
                                   weight_of_psi_squared)
from siegelkappa.jacobi import (VectorValuedForm, build_vv_form, scale_by_j_power,
                                NonIntegralPrincipalPart)
from siegelkappa.lfun import (LogCombination, PrecisionConfig,
                              dirichlet_L_deriv, zeta_logderiv)
from siegelkappa.qseries import QSeries

CFG = PrecisionConfig(digits=50)


def tol(digits_off):
    return mpf(10) ** (-(CFG.digits - digits_off))


@pytest.fixture(scope="module")
def base_form():
    return build_vv_form(12)


class TestPrincipalParts:
    def test_t0(self, base_form):
        pp = extract_principal_part(base_form)
        assert {k: c for k, c in pp.items() if c != 0} == {
            (F(0), 0): 10, (F(1, 4), 1): 1}

    def test_t1(self, base_form):
        pp = extract_principal_part(scale_by_j_power(base_form, 1))
        assert {k: c for k, c in pp.items() if c != 0} == {
            (F(0), 0): 7548, (F(1), 0): 10, (F(5, 4), 1): 1, (F(1, 4), 1): 680}

    def test_t2(self, base_form):
        pp = extract_principal_part(scale_by_j_power(base_form, 2))
        assert {k: c for k, c in pp.items() if c != 0} == {
            (F(0), 0): 9634552, (F(2), 0): 10, (F(1), 0): 14988,
            (F(9, 4), 1): 1, (F(5, 4), 1): 1424, (F(1, 4), 1): 851559}

    def test_constant_always_present(self):
        # a pure principal part with zero constant still reports c_0(0)
        f0 = QSeries(4, {}, 3)
        f1 = QSeries(4, {F(-1, 4): 1}, 3)
        form = VectorValuedForm(f0=f0, f1=f1, weight=F(-1, 2), principal_bound=F(1, 4))
        pp = extract_principal_part(form)
        assert pp[(F(0), 0)] == 0

    def test_non_integral_rejected(self):
        # the constructor already rejects this; bypass it to check that
        # extraction re-validates what it is about to hand to the divisor
        f0 = QSeries(4, {F(0): F(10)}, 3)
        f1 = QSeries(4, {F(-1, 4): F(1)}, 3)
        form = VectorValuedForm(f0=f0, f1=f1, weight=F(-1, 2), principal_bound=F(1, 4))
        object.__setattr__(form, "f1", QSeries(4, {F(-1, 4): F(1, 2)}, 3))
        with pytest.raises(NonIntegralPrincipalPart):
            extract_principal_part(form)


class TestDivisorAndWeight:
    def test_t0_divisor(self, base_form):
        div = divisor_of_psi(base_form)
        assert [(t.m, t.mu, t.mult) for t in div.terms] == [(F(1, 4), 1, 1)]
        assert weight_of_psi_squared(base_form) == 10

    def test_t1_divisor(self, base_form):
        div = divisor_of_psi(scale_by_j_power(base_form, 1))
        assert [(t.m, t.mu, t.mult) for t in div.terms] == [
            (F(1, 4), 1, 680), (F(1), 0, 10), (F(5, 4), 1, 1)]
        assert weight_of_psi_squared(scale_by_j_power(base_form, 1)) == 7548

    def test_t2_divisor_matches_term_by_term(self, base_form):
        div = divisor_of_psi(scale_by_j_power(base_form, 2))
        assert [(t.m, t.mu, t.mult) for t in div.terms] == [
            (F(1, 4), 1, 851559), (F(1), 0, 14988), (F(5, 4), 1, 1424),
            (F(2), 0, 10), (F(9, 4), 1, 1)]

    def test_divisor_stable_under_higher_precision(self):
        d1 = divisor_of_psi(build_vv_form(8))
        d2 = divisor_of_psi(build_vv_form(14))
        assert d1 == d2


class TestDegreeIdentity:
    def test_exact_for_all_t(self, base_form):
        for t in range(6):
            lhs, rhs, ok = degree_identity_check(scale_by_j_power(base_form, t))
            assert ok and lhs == rhs

    def test_t0_arithmetic(self, base_form):
        lhs, rhs, ok = degree_identity_check(base_form)
        assert (lhs, rhs, ok) == (F(10), F(10), True)

    def test_violation_detected_and_fatal(self):
        # drop the constant term: no longer a Borcherds datum
        f0 = QSeries(4, {F(0): 9}, 3)
        f1 = QSeries(4, {F(-1, 4): 1}, 3)
        form = VectorValuedForm(f0=f0, f1=f1, weight=F(-1, 2), principal_bound=F(1, 4))
        lhs, rhs, ok = degree_identity_check(form)
        assert not ok and lhs == 10 and rhs == 9
        with pytest.raises(DegreeIdentityViolation):
            kappa_psi(form, CFG)


class TestKappaAssembly:
    def test_t0_closed_form(self, base_form):
        report = kappa_psi(base_form, CFG)
        with mp.workdps(CFG.wdps):
            want = 10 * (-mpf(4) / 3 - 2 * zeta_logderiv(-3, CFG)
                         + zeta_logderiv(-1, CFG)
                         + mpf(3) / 2 * mp.log(2) + mp.log(mp.pi))
            assert abs(report.kappa - want) < tol(12)
            assert abs(report.closed_form_check.difference) < tol(12)

    def test_t0_constant_slice(self, base_form):
        # the m = 0 contribution is exactly 10 * C0/2 = 5 (log 2pi - gamma)
        report = kappa_psi(base_form, CFG)
        with mp.workdps(CFG.wdps):
            want = 5 * (mp.log(2 * mp.pi) - mp.euler)
            assert abs(report.constant_contribution - want) < tol(12)

    def test_symbolic_constant_identity(self):
        lhs, rhs = T0_CONSTANT_IDENTITY
        assert lhs == rhs
        assert rhs == LogCombination({"log2": F(15), "logpi": F(10)})

    def test_degree_fields(self, base_form):
        report = kappa_psi(base_form, CFG)
        assert report.degree_lhs == report.degree_rhs == F(1, 144)
        assert report.weight == 10 and report.weight_half == 5

    def test_t1_grouped_blocks(self, base_form):
        # blocks with coefficients 700, 48, 6800, 7548; the 700-block carries
        # the derived b'_2/b_2 = -2 log 2
        report = kappa_psi(scale_by_j_power(base_form, 1), CFG)
        with mp.workdps(CFG.wdps):
            z1 = zeta_logderiv(-1, CFG)
            z3 = zeta_logderiv(-3, CFG)
            l5 = dirichlet_L_deriv(-1, 5, CFG).logderiv
            b_derived = -2 * mp.log(2)
            grouped = (700 * (z1 + b_derived + mp.log(2))
                       + 48 * (l5 + mp.log(5) / 2)
                       + 6800 * z1
                       + 7548 * (-mpf(4) / 3 - 2 * z3
                                 + mpf(3) / 2 * mp.log(2) + mp.log(mp.pi)))
            assert abs(report.kappa - grouped) < tol(12)
            # the published alternative -9/11 log 2 must NOT match; the gap is
            # exactly 700 (-2 + 9/11) log 2
            b_published = -mpf(9) / 11 * mp.log(2)
            grouped_alt = grouped + 700 * (b_published - b_derived)
            gap = report.kappa - grouped_alt
            want_gap = 700 * (mpf(-2) + mpf(9) / 11) * mp.log(2)
            assert abs(gap) > 1
            assert abs(gap - want_gap) < tol(12)

    def test_t2_assembly_consistency(self, base_form):
        report = kappa_psi(scale_by_j_power(base_form, 2), CFG)
        with mp.workdps(CFG.wdps):
            resum = report.constant_contribution
            for m, mu, c, term in report.breakdown:
                resum += c * term.numeric
            assert abs(resum - report.kappa) < tol(12)

    def test_report_json_shape(self, base_form):
        data = kappa_report_to_json_dict(kappa_psi(base_form, CFG), 30)
        assert data["weight_psi_squared"] == "10"
        assert data["degree_check"]["pass"] is True
        assert data["divisor"] == [{"m": "1/4", "mu": 1, "mult": 1}]
        assert "closed_form_check" in data
        assert len(data["terms"]) == 1
        assert data["terms"][0]["breakdown"]["prefactor_120H"] == "-10"


class TestDelta5:
    def test_shift_is_minus_seven_log_two(self):
        assert DELTA5_NORM_SHIFT == LogCombination({"log2": F(-7)})
        # consistency with the stated norm factors 2^{-12} and 2^5
        assert F(-12) + F(5) == F(-7)

    def test_value_is_kappa_minus_shift(self, base_form):
        report = kappa_psi(base_form, CFG)
        value = delta5_normalization(CFG)
        with mp.workdps(CFG.wdps):
            assert abs(value - (report.kappa - 7 * mp.log(2))) < tol(12)

    def test_reproducible_across_precision(self):
        a = delta5_normalization(PrecisionConfig(digits=50))
        b = delta5_normalization(PrecisionConfig(digits=60))
        with mp.workdps(80):
            assert abs(a - b) < tol(12)

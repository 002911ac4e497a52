"""Exact arithmetic kernel: characters, discriminants, Cohen numbers, local factors."""

import random
from fractions import Fraction as F

import pytest
from mpmath import mp, mpf

from siegelkappa.arith import (FundDiscDecomp, NonIntegral, NotFundamental,
                               b2_logderiv_discrepancy, bernoulli_number,
                               cohen_H, cohen_H_divisor_sum, cohen_H_euler,
                               divisors, factorize, fund_disc_decompose,
                               gen_bernoulli, is_fundamental_discriminant,
                               kronecker_chi, kronecker_symbol, l_value_neg,
                               local_b, local_b_logderiv,
                               local_b_logderiv_closed_form, local_factor,
                               moebius, sigma)


class TestKronecker:
    def test_chi5_of_2_by_reciprocity(self):
        # oracle: (5|2) = (2|5) since 5 = 1 mod 4, and 2 is not a square mod 5
        squares_mod_5 = {x * x % 5 for x in range(1, 5)}
        assert 2 not in squares_mod_5
        assert kronecker_chi(5, 2) == -1

    def test_trivial_character(self):
        for p in (2, 3, 5, 97):
            assert kronecker_chi(1, p) == 1

    def test_ramified_prime(self):
        assert kronecker_chi(5, 5) == 0
        assert kronecker_chi(8, 2) == 0
        assert kronecker_chi(12, 3) == 0

    def test_complete_multiplicativity(self):
        rng = random.Random(7)
        for d in (1, 5, 8, 12, -3, -4, -20):
            for _ in range(25):
                a = rng.randint(1, 400)
                b = rng.randint(1, 400)
                assert kronecker_chi(d, a * b) == kronecker_chi(d, a) * kronecker_chi(d, b)

    def test_periodic_mod_abs_d(self):
        for d in (5, 8, -3, -4):
            for n in range(1, 60):
                assert kronecker_chi(d, n) == kronecker_chi(d, n + abs(d))

    def test_rejects_non_fundamental(self):
        for d in (0, 2, 3, 4, 9, -1, -2, 25):
            with pytest.raises(NotFundamental):
                kronecker_chi(d, 3)

    def test_symbol_agrees_with_legendre(self):
        # Legendre oracle by explicit square enumeration, odd primes
        for p in (3, 5, 7, 11, 13):
            squares = {x * x % p for x in range(1, p)}
            for a in range(1, p):
                want = 1 if a in squares else -1
                assert kronecker_symbol(a, p) == want


class TestFundamentalDiscriminants:
    def test_classification(self):
        fundamentals = {1, 5, 8, 12, 13, 17, 21, 24, 28, 29, -3, -4, -7, -8, -11}
        non = {0, 2, 3, 4, 6, 7, 9, 16, 25, 45, -1, -2, -9, -12}
        for d in fundamentals:
            assert is_fundamental_discriminant(d), d
        for d in non:
            assert not is_fundamental_discriminant(d), d

    def test_decompose_square(self):
        assert fund_disc_decompose(1) == FundDiscDecomp(m=F(1), n=2, d=1)

    def test_decompose_prime_discriminant(self):
        assert fund_disc_decompose(F(5, 4)) == FundDiscDecomp(m=F(5, 4), n=1, d=5)

    def test_decompose_even_discriminant(self):
        assert fund_disc_decompose(2) == FundDiscDecomp(m=F(2), n=1, d=8)

    def test_decompose_all_small(self):
        for k in range(1, 200):
            if k % 4 not in (0, 1):
                continue
            dec = fund_disc_decompose(F(k, 4))
            assert dec.n ** 2 * dec.d == k
            assert is_fundamental_discriminant(dec.d)

    def test_uniqueness_by_exhaustion(self):
        # oracle: enumerate all (n, d) with n^2 d = 4m and d fundamental
        for k in (4, 5, 8, 36, 45, 100, 180):
            found = [(n, k // (n * n)) for n in range(1, 15)
                     if k % (n * n) == 0 and is_fundamental_discriminant(k // (n * n))]
            assert len(found) == 1
            dec = fund_disc_decompose(F(k, 4))
            assert (dec.n, dec.d) == found[0]

    def test_rejects_non_integral(self):
        with pytest.raises(NonIntegral):
            fund_disc_decompose(F(1, 3))
        with pytest.raises(NonIntegral):
            fund_disc_decompose(F(-1, 4))

    def test_rejects_non_discriminant_shape(self):
        # 4m = 2, 3 mod 4 admits no decomposition n^2 d with d fundamental
        for k in (2, 3, 6, 7):
            with pytest.raises(NonIntegral):
                fund_disc_decompose(F(k, 4))


class TestBernoulliAndLValues:
    def test_bernoulli_classics(self):
        assert bernoulli_number(0) == 1
        assert bernoulli_number(1) == F(-1, 2)
        assert bernoulli_number(2) == F(1, 6)
        assert bernoulli_number(12) == F(-691, 2730)

    def test_zeta_values(self):
        assert l_value_neg(2, 1) == F(-1, 12)       # zeta(-1)
        assert l_value_neg(4, 1) == F(1, 120)       # zeta(-3)
        assert l_value_neg(6, 1) == F(-1, 252)      # zeta(-5)
        assert l_value_neg(10, 1) == F(-1, 132)     # zeta(-9)

    def test_l_minus_one_chi5(self):
        assert l_value_neg(2, 5) == F(-2, 5)

    def test_odd_character_values(self):
        # these feed the weight-4 and weight-6 Jacobi-Eisenstein coefficients
        assert l_value_neg(3, -3) == F(-2, 9)
        assert l_value_neg(3, -4) == F(-1, 2)
        assert l_value_neg(5, -3) == F(2, 3)
        assert l_value_neg(5, -4) == F(5, 2)

    def test_gen_bernoulli_trivial_character(self):
        # B_{r,chi_1} = B_r(1), the convention with B_1 = +1/2
        assert gen_bernoulli(1, 1) == F(1, 2)
        assert gen_bernoulli(2, 1) == F(1, 6)


class TestLocalFactors:
    def test_unramified_is_one(self):
        for p in (2, 3, 5, 7):
            for d in (1, 5, 8):
                for s in (-3, -1, 0, 2):
                    assert local_b(p, 1, d, s) == 1

    def test_b2_at_minus_one(self):
        assert local_b(2, 2, 1, -1) == 7

    def test_divisor_sum_oracle(self):
        # sum_{c|2} mu(c) chi(c) c sigma_3(2/c) = 9 - 2 = 7
        total = sum(moebius(c) * kronecker_chi(1, c) * c * sigma(3, 2 // c)
                    for c in divisors(2))
        assert total == 7 == local_b(2, 2, 1, -1)

    def test_depends_only_on_p_k_chi(self):
        # same (p, ord_p(n), chi_d(p)) must give the same factor
        assert local_b(3, 3, 1, -1) == local_b(3, 6, 1, -1)
        assert local_b(2, 2, 17, -1) == local_b(2, 2, 1, -1)  # chi_17(2) = 1
        assert local_factor(5, 5, 1).num_coeffs == local_factor(5, 10, 1).num_coeffs

    def test_logderiv_vanishes_off_support(self):
        assert local_b_logderiv(3, 2, 1) == 0
        assert local_b_logderiv(7, 10, 5) == 0

    def test_logderiv_exact_value(self):
        assert local_b_logderiv(2, 2, 1) == F(-2)

    def test_logderiv_matches_closed_form(self):
        rng = random.Random(11)
        for _ in range(40):
            p = rng.choice((2, 3, 5, 7, 11, 13))
            k = rng.randint(1, 3)
            chi = rng.choice((-1, 0, 1))
            # build an n and d realizing (p, k, chi)
            n = p ** k
            if chi == 0:
                d = -4 if p != 2 else 8
                d = d if kronecker_chi(d, p) == 0 else None
                if d is None:
                    continue
            else:
                d = next(dd for dd in (1, 5, 8, 12, 13, 17, 21, 24, -3, -4, -7, -8, -11, -15)
                         if kronecker_chi(dd, p) == chi)
            direct = local_b_logderiv(p, n, d)
            closed = -local_b_logderiv_closed_form(p, k, chi)
            assert direct == closed, (p, k, chi)

    def test_logderiv_matches_finite_difference(self):
        rng = random.Random(23)
        with mp.workdps(40):
            for _ in range(20):
                p = rng.choice((2, 3, 5, 7, 11, 13))
                k = rng.randint(1, 3)
                chi = rng.choice((-1, 0, 1))
                lf_num = [mpf(c.numerator) / c.denominator for c in
                          _factor_coeffs(p, k, chi)[0]]
                lf_den = [mpf(c.numerator) / c.denominator for c in
                          _factor_coeffs(p, k, chi)[1]]

                def b_of_s(s):
                    x = mp.power(p, -s)
                    return (sum(c * x ** i for i, c in enumerate(lf_num))
                            / sum(c * x ** i for i, c in enumerate(lf_den)))

                h = mpf(10) ** -6
                fd = (mp.log(b_of_s(-1 + h)) - mp.log(b_of_s(-1 - h))) / (2 * h)
                exact = -local_b_logderiv_closed_form(p, k, chi)
                exact_val = mpf(exact.numerator) / exact.denominator * mp.log(p)
                assert abs(fd - exact_val) < mpf(10) ** -8 * mp.log(p), (p, k, chi)

    def test_discrepancy_bookkeeping(self):
        disc = b2_logderiv_discrepancy()
        assert disc["derived_coeff"] == F(-2)
        assert not disc["matches_published"]
        assert disc["difference_coeff"] == F(-2) + F(9, 11) == F(-13, 11)


def _factor_coeffs(p, k, chi):
    num = [F(0)] * (2 * k + 3)
    num[0] = F(1)
    num[1] += F(-chi)
    num[2 * k + 1] += F(chi * p ** k)
    num[2 * k + 2] += F(-(p ** (k + 1)))
    den = [F(1), F(0), F(-p)]
    return num, den


class TestCohenNumbers:
    def test_reference_table(self):
        table = {0: -1, 1: 10, 4: 70, 5: 48, 8: 120, 9: 250,
                 12: 240, 13: 240, 16: 550, 17: 480, 20: 528}
        for n, want in table.items():
            assert -120 * cohen_H(2, n) == want

    def test_h_at_zero(self):
        assert cohen_H(2, 0) == F(1, 120)
        assert cohen_H(3, 0) == F(-1, 252)
        assert cohen_H(5, 0) == F(-1, 132)

    def test_inadmissible_returns_zero(self):
        assert cohen_H(2, 2) == 0
        assert cohen_H(2, 3) == 0
        assert cohen_H(3, 1) == 0
        assert cohen_H(3, 2) == 0

    def test_divisor_sum_equals_euler_product(self):
        for r in (2, 3, 5):
            for n in range(0, 401):
                assert cohen_H_divisor_sum(r, n) == cohen_H_euler(r, n), (r, n)

    def test_recombination_identity(self):
        # H(2, 4m) = L(-1, chi_d) prod_{p|n} b_p(n, -1)
        for k in range(1, 101):
            if k % 4 not in (0, 1):
                continue
            dec = fund_disc_decompose(F(k, 4))
            prod = l_value_neg(2, dec.d)
            for p in factorize(dec.n):
                prod *= local_b(p, dec.n, dec.d, -1)
            assert prod == cohen_H(2, k), k

    def test_known_odd_r_values(self):
        # feed the Jacobi-Eisenstein series: H(3,3)/zeta(-5) = 56 etc.
        assert cohen_H(3, 3) / l_value_neg(6, 1) == 56
        assert cohen_H(3, 4) / l_value_neg(6, 1) == 126
        assert cohen_H(5, 3) / l_value_neg(10, 1) == -88
        assert cohen_H(5, 4) / l_value_neg(10, 1) == -330

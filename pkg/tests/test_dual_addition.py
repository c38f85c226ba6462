"""Dual addition machinery: linearization weights, the sum S, the expansion."""

from fractions import Fraction

import pytest

from polyident.classical import gegenbauer_r, inner_product, norm_ratio
from polyident.dual_addition import (
    DualSetting,
    coeff_as_racah_weight_residual,
    dual_addition_residual,
    integral_identity_residual,
    linearization_coeff,
    s_closed,
    s_closed_prefactor,
    s_direct,
    second_hyp_form,
    self_dual_residual,
    self_dual_terms,
    specialized_racah,
    whipple_factor,
    whipple_proportionality,
)
from polyident.errors import DomainError
from polyident.exact import SurdPoly, UniPoly
from polyident.racah import racah_eval, racah_h0, racah_norm_ratio, racah_weight
from polyident.addition import sum_of_squares_terms

HALF = Fraction(1, 2)
GRID_ALPHAS = [Fraction(0), HALF, Fraction(1), Fraction(7, 3)]


def brute_force_expansion(l: int, m: int, alpha: Fraction) -> list[Fraction]:
    """Oracle: expand R_l R_m in the family by exact Gram inversion."""
    product = gegenbauer_r(l, alpha) * gegenbauer_r(m, alpha)
    coeffs = []
    for j in range(m + 1):
        basis = gegenbauer_r(l + m - 2 * j, alpha)
        coeffs.append(
            inner_product(product, basis, alpha) / norm_ratio(l + m - 2 * j, alpha)
        )
    return coeffs


class TestDualSetting:
    def test_validation(self):
        with pytest.raises(DomainError):
            DualSetting(Fraction(-1, 2), 1, 1)
        with pytest.raises(DomainError):
            DualSetting(Fraction(0), 1, 2)

    def test_specialized_system_always_validates(self):
        # a checked claim: every admissible setting yields a valid system
        for alpha in GRID_ALPHAS:
            for l in range(9):
                for m in range(l + 1):
                    specialized_racah(DualSetting(alpha, l, m))


class TestLinearizationCoeff:
    def test_legendre_product_of_degree_ones(self):
        s = DualSetting(Fraction(0), 1, 1)
        assert [linearization_coeff(j, s) for j in (0, 1)] == [
            Fraction(2, 3),
            Fraction(1, 3),
        ]

    def test_matches_brute_force_oracle(self):
        for alpha, l, m in [
            (HALF, 2, 1),
            (Fraction(0), 3, 3),
            (Fraction(1), 4, 2),
            (Fraction(7, 3), 5, 4),
        ]:
            s = DualSetting(alpha, l, m)
            oracle = brute_force_expansion(l, m, alpha)
            assert [linearization_coeff(j, s) for j in range(m + 1)] == oracle

    def test_sum_to_one(self):
        # evaluate the expansion at the right endpoint, where every factor is 1
        for alpha in GRID_ALPHAS:
            for l, m in ((2, 2), (5, 3), (8, 8)):
                s = DualSetting(alpha, l, m)
                assert sum(linearization_coeff(j, s) for j in range(m + 1)) == 1

    def test_strict_positivity(self):
        for alpha in GRID_ALPHAS:
            for l in range(9):
                for m in range(l + 1):
                    s = DualSetting(alpha, l, m)
                    assert all(
                        linearization_coeff(j, s) > 0 for j in range(m + 1)
                    )


class TestCoeffAsRacahWeight:
    def test_legendre_case(self):
        s = DualSetting(Fraction(0), 1, 1)
        assert coeff_as_racah_weight_residual(0, s) == 0

    def test_larger_setting_all_j(self):
        s = DualSetting(Fraction(3, 2), 4, 3)
        for j in range(4):
            assert coeff_as_racah_weight_residual(j, s) == 0

    def test_j_zero_pins_inverse_mass(self):
        # w(0) = 1, so the j = 0 coefficient must be exactly 1/h0
        for alpha, l, m in [(HALF, 3, 2), (Fraction(1), 5, 5)]:
            s = DualSetting(alpha, l, m)
            sys = specialized_racah(s)
            assert linearization_coeff(0, s) == 1 / racah_h0(sys)
            assert coeff_as_racah_weight_residual(0, s) == 0


class TestSumS:
    def test_degree_zero_is_scaled_product(self):
        for alpha, l, m in [(Fraction(0), 1, 1), (HALF, 3, 2)]:
            s = DualSetting(alpha, l, m)
            sys = specialized_racah(s)
            product = (gegenbauer_r(l, alpha) * gegenbauer_r(m, alpha)).scale(
                racah_h0(sys)
            )
            assert s_direct(0, s) == product
            assert s_closed_prefactor(0, s) == racah_h0(sys)

    @pytest.mark.parametrize(
        "alpha,l,m,n",
        [(Fraction(0), 1, 1, 1), (HALF, 3, 2, 2), (Fraction(1), 4, 4, 4),
         (Fraction(7, 3), 2, 2, 1)],
    )
    def test_direct_equals_closed(self, alpha, l, m, n):
        s = DualSetting(alpha, l, m)
        assert s_direct(n, s) == s_closed(n, s)

    def test_highest_case_still_polynomial(self):
        s = DualSetting(Fraction(1), 5, 5)
        assert s_direct(5, s) == s_closed(5, s)


class TestDualAdditionFormula:
    def test_hand_expanded_legendre_case(self):
        # two-term expansion: x^2 + (x^2-1)/2 = (3x^2-1)/2
        s = DualSetting(Fraction(0), 1, 1)
        assert dual_addition_residual(0, s).is_zero
        assert gegenbauer_r(2, Fraction(0)) == UniPoly(
            [Fraction(-1, 2), 0, Fraction(3, 2)]
        )

    def test_j_m_corollary(self):
        # j = m uses the endpoint evaluation of the Racah factor
        s = DualSetting(Fraction(1), 3, 2)
        assert dual_addition_residual(2, s).is_zero

    def test_full_grid(self):
        for alpha in GRID_ALPHAS:
            for l in range(9):
                for m in range(l + 1):
                    s = DualSetting(alpha, l, m)
                    for j in range(m + 1):
                        assert dual_addition_residual(j, s).is_zero

    def test_fourier_racah_consistency(self):
        # expanding the sums S back through the discrete orthogonality
        # recovers the expansion of R_{l+m-2j} exactly
        for alpha, l, m in [(HALF, 3, 2), (Fraction(0), 4, 3)]:
            s = DualSetting(alpha, l, m)
            sys = specialized_racah(s)
            h0 = racah_h0(sys)
            for j in range(m + 1):
                recovered = UniPoly.zero()
                for n in range(m + 1):
                    c = racah_eval(n, j, sys) / (h0 * racah_norm_ratio(n, sys))
                    recovered = recovered + s_direct(n, s).scale(c)
                assert recovered == gegenbauer_r(l + m - 2 * j, alpha)


class TestSelfDual:
    def test_trivial_case(self):
        assert self_dual_residual(0, Fraction(0)).is_zero

    def test_hand_case(self):
        # 1 = x^2 + (1 - x^2)
        assert self_dual_residual(1, Fraction(0)).is_zero

    @pytest.mark.parametrize("m,alpha", [(3, HALF), (5, Fraction(7, 3)), (8, Fraction(1))])
    def test_zero_residual(self, m, alpha):
        assert self_dual_residual(m, alpha).is_zero

    def test_terms_match_partition_of_unity_termwise(self):
        # not just equal sums: the term sequences are identical
        for alpha in GRID_ALPHAS:
            for m in range(9):
                dual_terms = self_dual_terms(m, alpha)
                square_terms = sum_of_squares_terms(m, alpha)
                assert len(dual_terms) == len(square_terms)
                for uni, surd in zip(dual_terms, square_terms):
                    assert SurdPoly.from_unipoly(uni, "x") == surd


class TestIntegralIdentity:
    @pytest.mark.parametrize(
        "n,j,alpha,l,m",
        [(0, 0, Fraction(0), 1, 1), (1, 1, Fraction(0), 1, 1),
         (2, 1, HALF, 3, 2), (3, 2, Fraction(1), 5, 3)],
    )
    def test_zero_residual(self, n, j, alpha, l, m):
        assert integral_identity_residual(n, j, DualSetting(alpha, l, m)) == 0

    def test_weights_strictly_positive(self):
        # no j can zero out the right-hand side for admissible settings
        for alpha in GRID_ALPHAS:
            s = DualSetting(alpha, 6, 4)
            sys = specialized_racah(s)
            assert all(racah_weight(j, sys) > 0 for j in range(5))

    def test_grid(self):
        for alpha in GRID_ALPHAS:
            for l, m in ((2, 2), (4, 3), (6, 2)):
                s = DualSetting(alpha, l, m)
                for n in range(m + 1):
                    for j in range(m + 1):
                        assert integral_identity_residual(n, j, s) == 0


class TestWhipple:
    def test_degree_zero_ratio_constant(self):
        s = DualSetting(HALF, 3, 2)
        first, second = whipple_proportionality(0, s)
        assert first == second  # degree zero: both 4F3 forms are 1 termwise

    def test_spec_point(self):
        s = DualSetting(HALF, 3, 2)
        first, second = whipple_proportionality(1, s)
        assert first == Fraction(-3, 10)

    def test_zero_values_pair_up(self):
        # at this setting one j zeroes both the 4F3 and the integral
        s = DualSetting(Fraction(1), 5, 3)
        assert second_hyp_form(2, 2, s) == 0
        assert racah_eval(2, 2, specialized_racah(s)) == 0
        whipple_proportionality(2, s)

    def test_twofold_whipple_prefactor_identity(self):
        # the Racah-value 4F3 equals the second form times elementary factors
        for alpha in GRID_ALPHAS:
            for l, m in ((3, 2), (5, 5), (6, 1)):
                s = DualSetting(alpha, l, m)
                sys = specialized_racah(s)
                n_independent = (
                    lambda n: pochhammerq(HALF - alpha - n, n)
                    * pochhammerq(-l - n - 2 * alpha, n)
                    / (pochhammerq(alpha + HALF, n) * pochhammerq(Fraction(-l), n))
                )
                for n in range(m + 1):
                    for j in range(m + 1):
                        lhs = racah_eval(n, j, sys)
                        rhs = (
                            n_independent(n)
                            * whipple_factor(j, s)
                            * second_hyp_form(n, j, s)
                        )
                        assert lhs == rhs

    def test_grid_constancy(self):
        for alpha in GRID_ALPHAS:
            for l, m in ((4, 3), (6, 2)):
                s = DualSetting(alpha, l, m)
                for n in range(m + 1):
                    whipple_proportionality(n, s)


def pochhammerq(a: Fraction, n: int) -> Fraction:
    out = Fraction(1)
    for i in range(n):
        out *= a + i
    return out

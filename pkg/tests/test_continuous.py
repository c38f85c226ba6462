"""High-precision side: hypergeometric engine, special functions, quadrature.

Unit tests here run at reduced precision where quadrature is involved so
the whole file stays fast; the acceptance module repeats the headline
checks at the full 60 digits.
"""

from fractions import Fraction

import mpmath as mp
import pytest

from polyident.continuous import (
    ConicalArgs,
    WilsonContext,
    WilsonParams,
    _series_2f1,
    conical_f,
    conical_route_residual,
    contiguous_residual,
    dual_addition_function_residual,
    dual_integral_closed_form_residual,
    dual_product_residual,
    gamma_abs_sq,
    gauss_2f1,
    log_gamma,
    phi,
    phi_bound_violation,
    to_mpf,
    wilson_backward_shift_residual,
    wilson_norm,
    wilson_orthogonality_residual,
    wilson_poly,
    wilson_weight,
)
from polyident.errors import DomainError, PrecisionError
from polyident.exact import pochhammer, terminating_hyp
from polyident.quadrature import self_refining_integral


def tol(digits: int) -> mp.mpf:
    return mp.mpf(10) ** -digits


@pytest.fixture(autouse=True)
def _high_ambient_precision():
    # reference values in the tests are computed at the ambient precision
    with mp.workdps(70):
        yield


class TestGauss2F1:
    def test_empty_tail(self):
        assert gauss_2f1(1.3, -2.2, 0.7, 0) == 1

    def test_terminating_matches_exact_core(self):
        exact = terminating_hyp(
            [Fraction(-3), Fraction(5, 2)], [Fraction(7, 3)], 3, z=Fraction(-4, 7)
        )
        numeric = gauss_2f1(-3, mp.mpf(5) / 2, mp.mpf(7) / 3, -mp.mpf(4) / 7)
        assert abs(numeric - to_mpf(exact)) < tol(55)

    def test_pfaff_and_direct_paths_agree(self):
        a, b, c = mp.mpc(0.5, 0.2), mp.mpc(0.5, -0.2), mp.mpf(1.5)
        z = mp.mpf("-0.9")
        direct = gauss_2f1(a, b, c, z)
        with mp.workdps(70):
            pfaff = (1 - z) ** (-a) * _series_2f1(a, c - b, c, z / (z - 1), 60, 10**6)
        assert abs(direct - pfaff) < tol(55)

    def test_rejects_positive_argument(self):
        with pytest.raises(DomainError):
            gauss_2f1(1, 1, 2, 0.5)

    def test_rejects_lower_pole(self):
        with pytest.raises(DomainError):
            gauss_2f1(1, 1, -2, -0.5)


class TestPhi:
    def test_value_one_at_origin(self):
        assert phi(0.7, 1, 0.5, 0) == 1

    def test_bound_on_samples(self):
        for lam, t in ((0.3, 0.2), (2.5, 1.0), (0.0, 2.0)):
            assert phi_bound_violation(lam, 1, 0.5, t) == 0

    def test_quadratic_transform(self):
        # doubled spectral parameter at equal parameters vs doubled argument
        value = abs(phi(2 * 0.7, 1, 1, 0.3) - phi(0.7, 1, -0.5, 0.6))
        assert value < tol(52)

    def test_contiguous_relation(self):
        assert abs(contiguous_residual(0.5, 1, -0.5, 0.4)) < tol(50)
        assert abs(contiguous_residual(1.3, 2, 1, 0.8)) < tol(50)

    def test_contiguous_at_zero_spectral_point(self):
        assert abs(contiguous_residual(0, 1, -0.5, 0.4)) < tol(50)

    def test_contiguous_at_origin(self):
        assert abs(contiguous_residual(0.5, 1, -0.5, 0)) == 0


class TestLogGamma:
    def test_integers(self):
        assert abs(log_gamma(1)) == 0
        assert abs(log_gamma(5) - mp.log(24)) < tol(55)

    def test_half_line_modulus(self):
        nu = mp.mpf("0.7")
        expected = mp.pi / mp.cosh(mp.pi * nu)
        assert abs(gamma_abs_sq(mp.mpc(0.5, nu)) - expected) < tol(55)

    def test_duplication(self):
        z = mp.mpc(0.8, 0.3)
        with mp.workdps(70):
            lhs = mp.e ** log_gamma(2 * z)
            rhs = (
                mp.e ** (log_gamma(z) + log_gamma(z + mp.mpf(1) / 2))
                * 2 ** (2 * z - 1)
                / mp.sqrt(mp.pi)
            )
            assert abs(lhs - rhs) < tol(50) * abs(rhs)

    def test_pole(self):
        with pytest.raises(DomainError):
            log_gamma(0)


class TestConical:
    def test_origin_reduces_to_gamma_prefactor(self):
        g, k = mp.mpf(1), mp.mpf("0.8")
        value = conical_f(ConicalArgs(g, 0, k))
        with mp.workdps(70):
            expected = (
                mp.e ** (log_gamma(mp.mpc(g, k)) + log_gamma(mp.mpc(g, -k)))
                / (2 * mp.gamma(2 * g))
            )
        assert abs(value - expected) < tol(50)

    def test_two_routes_agree(self):
        assert conical_route_residual(ConicalArgs(1, 0.5, 0.8)) < tol(50)

    def test_spectral_sign_symmetry(self):
        plus = conical_f(ConicalArgs(1, 0.5, 0.8))
        minus = conical_f(ConicalArgs(1, 0.5, -0.8))
        assert abs(plus - minus) < tol(50)

    def test_rejects_nonpositive_g(self):
        with pytest.raises(DomainError):
            ConicalArgs(0, 1, 1)


class TestWilsonPolynomials:
    def test_degree_zero(self):
        params = WilsonParams.from_spectral(0.2, 0.4, 1)
        assert wilson_poly(0, 0.3, params) == 1

    def test_depends_on_square_only(self):
        from polyident.continuous import _wilson_poly_complex

        params = WilsonParams.from_spectral(0.2, 0.4, 1)
        x = mp.mpf("0.7")
        plus = _wilson_poly_complex(2, x, params, 60)
        minus = _wilson_poly_complex(2, -x, params, 60)
        assert abs(plus - minus) < tol(55)

    def test_parameters_conjugate_pairs_with_real_sum(self):
        params = WilsonParams.from_spectral(0.3, 0.7, Fraction(1, 2))
        a, b, c, d = params.as_tuple()
        assert mp.conj(a) == d and mp.conj(b) == c
        total = a + b + c + d
        assert mp.im(total) == 0
        assert abs(total - 2) < tol(55)  # 2 alpha + 1 at alpha = 1/2

    def test_terminating_sum_matches_exact_core(self):
        # real-parameter variant evaluated through exact rationals
        n = 2
        a, b, c, d = (Fraction(1, 4), Fraction(1, 2), Fraction(3, 4), Fraction(5, 4))
        xsq = Fraction(9, 16)
        series = Fraction(0)
        term = Fraction(1)
        for k in range(n + 1):
            series += term
            if k < n:
                top = (
                    (Fraction(-n) + k)
                    * (n + a + b + c + d - 1 + k)
                    * ((a + k) ** 2 + xsq)
                )
                bot = (a + b + k) * (a + c + k) * (a + d + k) * (k + 1)
                term *= top / bot
        exact = (
            pochhammer(a + b, n) * pochhammer(a + c, n) * pochhammer(a + d, n) * series
        )
        params = WilsonParams(mp.mpf(0.25), mp.mpf(0.5), mp.mpf(0.75), mp.mpf(1.25))
        numeric = wilson_poly(n, to_mpf(xsq), params)
        assert abs(numeric - to_mpf(exact)) < tol(55)

    def test_alpha_domain(self):
        with pytest.raises(DomainError):
            WilsonParams.from_spectral(0.1, 0.1, -0.5)


class TestWilsonWeight:
    def test_even(self):
        assert wilson_weight(0.3, 0.2, 0.4, 1) == wilson_weight(-0.3, 0.2, 0.4, 1)

    def test_positive(self):
        assert wilson_weight(0.5, 0.2, 0.4, 1) > 0

    def test_zero_at_origin(self):
        assert wilson_weight(0, 0.2, 0.4, 1) == 0

    def test_decay(self):
        reference = wilson_weight(0.5, 0.2, 0.4, 1)
        far = wilson_weight(18, 0.2, 0.4, 1)
        assert far < mp.mpf(10) ** -40 * reference


class TestQuadrature:
    def test_gaussian(self):
        value = self_refining_integral(lambda x: mp.e ** (-x * x), tol(40))
        assert abs(value - mp.sqrt(mp.pi)) < tol(39)

    def test_stable_under_precision_doubling(self):
        # doubling the working precision (and hence refining further) must
        # reproduce the value within the looser run's tolerance
        coarse = WilsonContext(Fraction(1, 5), Fraction(2, 5), 1, prec=30)
        fine = WilsonContext(Fraction(1, 5), Fraction(2, 5), 1, prec=60)
        f_coarse = lambda nu: coarse.poly(1, nu) ** 2 * coarse.weight(nu)
        f_fine = lambda nu: fine.poly(1, nu) ** 2 * fine.weight(nu)
        a = coarse.integrate(f_coarse, tol(22))
        b = fine.integrate(f_fine, tol(40))
        assert abs(a - b) < tol(20)

    def test_mirrored_integrand_identical(self):
        f = lambda x: mp.e ** (-x * x) * mp.cosh(x)
        a = self_refining_integral(f, tol(30))
        b = self_refining_integral(lambda x: f(-x), tol(30))
        assert a == b

    def test_no_decay_raises(self):
        with pytest.raises(PrecisionError):
            self_refining_integral(lambda x: mp.mpf(1), tol(10), max_l=32)


class TestAbsoluteGegenbauerNorm:
    def test_gamma_prefactor_numerically(self):
        # the exact side verifies mass-normalized norms only; the absolute
        # constant 2^{2a+1} Gamma(a+1)^2 / Gamma(2a+2) is checked here by
        # direct quadrature at sampled parameters
        from polyident.classical import gegenbauer_r, norm_ratio

        for alpha in (Fraction(0), Fraction(1, 2), Fraction(1)):
            a = to_mpf(alpha)
            mass = 2 ** (2 * a + 1) * mp.gamma(a + 1) ** 2 / mp.gamma(2 * a + 2)
            for n in (0, 1, 3):
                poly = gegenbauer_r(n, alpha)
                coeffs = [to_mpf(c) for c in poly.coeffs]
                integrand = lambda x: mp.polyval(coeffs[::-1], x) ** 2 * (1 - x * x) ** a
                value = mp.quad(integrand, [-1, 0, 1])
                expected = mass * to_mpf(norm_ratio(n, alpha))
                assert abs(value - expected) < tol(40) * expected


class TestWilsonOrthogonality:
    def test_small_gram(self):
        prec = 40
        ctx = WilsonContext(Fraction(1, 5), Fraction(2, 5), 1, prec=prec)
        for m in range(3):
            for n in range(m, 3):
                residual = wilson_orthogonality_residual(
                    m, n, None, None, None, prec=prec,
                    tolerance=tol(20), context=ctx,
                )
                assert residual < tol(15)

    def test_norm_variants_ratio(self):
        # corrected / printed = ((alpha + 1/2)_n)^2
        n, alpha = 2, 1
        corrected = wilson_norm(n, 0.2, 0.4, alpha, variant="corrected")
        printed = wilson_norm(n, 0.2, 0.4, alpha, variant="printed")
        expected = to_mpf(pochhammer(Fraction(alpha) + Fraction(1, 2), n) ** 2)
        assert abs(corrected / printed - expected) < tol(50)

    def test_printed_norm_fails_quadrature(self):
        # pinned discrepancy: the integral exceeds the printed norm by the
        # squared shifted factorial
        prec = 40
        ctx = WilsonContext(Fraction(1, 5), Fraction(2, 5), 1, prec=prec)
        integral = ctx.integrate(
            lambda nu: ctx.poly(1, nu) ** 2 * ctx.weight(nu), tol(25)
        )
        printed = wilson_norm(1, ctx.lam, ctx.mu, ctx.alpha, prec, variant="printed")
        ratio = integral / printed
        assert abs(ratio - mp.mpf(9) / 4) < tol(15)  # ((3/2)_1)^2 at alpha = 1


class TestDualProduct:
    def test_residual_small(self):
        prec = 40
        ctx = WilsonContext(Fraction(2, 5), Fraction(7, 10), 1, prec=prec)
        residual = dual_product_residual(
            Fraction(3, 10), None, None, None, prec=prec,
            tolerance=tol(18), context=ctx,
        )
        assert residual < tol(15)

    def test_t_zero_matches_degree_zero_norm(self):
        prec = 40
        ctx = WilsonContext(Fraction(3, 10), Fraction(2, 5), 1, prec=prec)
        residual = dual_product_residual(
            0, None, None, None, prec=prec, tolerance=tol(18), context=ctx
        )
        assert residual < tol(15)


class TestDualIntegralClosedForm:
    def test_degree_zero_equals_dual_product(self):
        prec = 40
        ctx = WilsonContext(Fraction(3, 10), Fraction(1, 2), 1, prec=prec)
        r_product = dual_product_residual(
            Fraction(1, 5), None, None, None, prec=prec,
            tolerance=tol(18), context=ctx,
        )
        r_integral = dual_integral_closed_form_residual(
            0, Fraction(1, 5), None, None, None, prec=prec,
            tolerance=tol(18), context=ctx,
        )
        assert r_product < tol(15) and r_integral < tol(15)

    def test_degree_one(self):
        prec = 40
        ctx = WilsonContext(Fraction(3, 10), Fraction(1, 2), 1, prec=prec)
        residual = dual_integral_closed_form_residual(
            1, Fraction(1, 5), None, None, None, prec=prec,
            tolerance=tol(18), context=ctx,
        )
        assert residual < tol(15)

    def test_printed_variant_discrepancy(self):
        prec = 40
        ctx = WilsonContext(Fraction(3, 10), Fraction(1, 2), 1, prec=prec)
        printed = dual_integral_closed_form_residual(
            1, Fraction(1, 5), None, None, None, prec=prec,
            tolerance=tol(18), context=ctx, variant="printed",
        )
        expected = to_mpf(pochhammer(Fraction(3, 2), 1) ** 2) - 1  # 5/4
        assert abs(printed - expected) < tol(12)


class TestBackwardShift:
    def test_pointwise_identity(self):
        residual = wilson_backward_shift_residual(2, Fraction(7, 10), 0.3, 0.5, 1)
        assert residual < tol(30)

    def test_several_points(self):
        for x in (Fraction(1, 10), Fraction(6, 5), Fraction(2)):
            assert wilson_backward_shift_residual(1, x, 0.3, 0.5, 1) < tol(30)

    def test_degree_must_be_positive(self):
        with pytest.raises(DomainError):
            wilson_backward_shift_residual(0, 0.5, 0.3, 0.5, 1)


class TestDualAdditionFunction:
    def test_t_zero_trivial(self):
        result = dual_addition_function_residual(
            0, Fraction(3, 10), Fraction(1, 5), Fraction(2, 5), 1,
            truncation_budget=4, prec=40, tolerance=tol(18),
        )
        assert result.residual < tol(30)

    def test_small_t_expansion(self):
        result = dual_addition_function_residual(
            Fraction(1, 10), Fraction(3, 10), Fraction(1, 5), Fraction(2, 5), 1,
            prec=40, tolerance=tol(18),
        )
        assert result.residual < tol(15)
        assert result.tail_decreasing

    def test_half_parameter(self):
        result = dual_addition_function_residual(
            Fraction(1, 10), Fraction(3, 10), Fraction(1, 5), Fraction(2, 5),
            Fraction(1, 2), prec=40, tolerance=tol(18),
        )
        assert result.residual < tol(15)

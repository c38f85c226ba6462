"""Verification suites: parameter grids, task dispatch, report assembly.

Each suite enumerates task specifications (identity id plus a flat string
parameter map), and a dispatcher executes one task at a time.  Tasks are
pure, so suites can fan out over a process pool; reports are sorted
before emission, making output independent of execution order.
"""

from __future__ import annotations

import os
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath as mp

from . import addition, classical, continuous, dual_addition, hermite_limit, racah
from .errors import ConfigError, PolyidentError
from .exact import (
    SurdPoly,
    UniPoly,
    format_rational,
    parse_rational,
    pochhammer,
    pythagorean_point,
    terminating_hyp,
)
from .report import VerificationReport

SUITE_NAMES = ("dual-addition", "classical-addition", "racah", "hermite", "continuous")

_HALF = Fraction(1, 2)


@dataclass(frozen=True)
class SuiteConfig:
    """Grid and precision configuration shared by all suites."""

    alphas: tuple[Fraction, ...] = (Fraction(0), _HALF, Fraction(1), Fraction(7, 3))
    l_max: int = 8
    m_max: int | None = None
    addition_n_max: int = 8
    hermite_lm_max: int = 12
    biorthogonality_max: int = 20
    alpha_powers: tuple[int, ...] = tuple(range(4, 17))
    limit_lm_max: int = 4
    precision_digits: int = 60
    integral_tolerance: str | None = None  # default: 10^-(P-35), 1e-25 at P=60
    pointwise_tolerance: str | None = None  # default: 10^-(P-10), 1e-50 at P=60
    t_max: str = "0.2"
    truncation_budget: int = 64
    jobs: int = 0
    timings: bool = False

    def lm_pairs(self):
        m_cap = self.l_max if self.m_max is None else self.m_max
        for l in range(self.l_max + 1):
            for m in range(min(l, m_cap) + 1):
                yield l, m

    def integral_tol(self) -> mp.mpf:
        if self.integral_tolerance is not None:
            return mp.mpf(self.integral_tolerance)
        return mp.mpf(10) ** (-self.precision_digits + 35)

    def pointwise_tol(self) -> mp.mpf:
        if self.pointwise_tolerance is not None:
            return mp.mpf(self.pointwise_tolerance)
        return mp.mpf(10) ** (-self.precision_digits + 10)


#: identity id -> (suite, human description).  The ids are the wire format
#: of the report stream and the `list` subcommand.
REGISTRY: dict[str, tuple[str, str]] = {
    "eq17": ("dual-addition", "linearization coefficients are normalized Racah weights"),
    "eq18": ("dual-addition", "linearization coefficients: positivity and unit sum"),
    "eq40": ("dual-addition", "dual addition formula (Racah expansion of R_{l+m-2j})"),
    "eq43": ("dual-addition", "constant-function expansion (j = m specialization)"),
    "eq43-eq49": ("dual-addition", "term-by-term match of the two partition-of-unity expansions"),
    "eq45": ("dual-addition", "weighted Racah sum equals its closed product form"),
    "eq58": ("dual-addition", "Fourier coefficient integral of the weighted sum"),
    "whipple": ("dual-addition", "triple-product integral proportional to both 4F3 forms"),
    "eq23": ("classical-addition", "two-step difference formula for Gegenbauer polynomials"),
    "eq28": ("classical-addition", "leading coefficient closed form"),
    "eq41": ("classical-addition", "product formula via exact moment integration"),
    "eq42": ("classical-addition", "addition formula in the surd ring"),
    "eq44": ("classical-addition", "addition formula at t = 1"),
    "eq49": ("classical-addition", "partition of unity (t = 1, x = y)"),
    "eq50": ("classical-addition", "power-series vs hypergeometric construction"),
    "eq57": ("classical-addition", "orthogonality and norms in the Gegenbauer weight"),
    "r-bound": ("classical-addition", "|R_n| <= 1 on rational circle points"),
    "chebyshev-t": ("classical-addition", "parameter -1/2 polynomials hit cos(k phi)"),
    "eq20": ("racah", "backward shift identity (boundary conventions included)"),
    "eq21": ("racah", "summation by parts against arbitrary lattice functions"),
    "eq25": ("racah", "endpoint evaluation closed form"),
    "eq29": ("racah", "total weight mass: closed form vs direct sum"),
    "eq30": ("racah", "full Gram matrix diagonal with closed-form norms"),
    "eq46": ("hermite", "dual addition formula for Hermite polynomials"),
    "eq47": ("hermite", "inverse (Fourier-type) Hermite expansion"),
    "eq48-corrected": ("hermite", "corrected biorthogonality kernel gives delta"),
    "eq48-printed": ("hermite", "printed biorthogonality kernel fails at (2,1): pinned"),
    "hermite-addition": ("hermite", "Hermite argument-mixing expansion"),
    "hermite-product": ("hermite", "Hermite product via Gaussian moments"),
    "eq52": ("hermite", "Hermite limit of scaled Gegenbauer polynomials"),
    "eq53": ("hermite", "monomial limit of Gegenbauer polynomials"),
    "eq54j": ("hermite", "Racah value limit, j-scaling"),
    "eq54n": ("hermite", "Racah value limit, n-scaling"),
    "eq55": ("hermite", "Racah weight limit"),
    "eq56": ("hermite", "Racah norm limit"),
    "eq30-limit": ("hermite", "Racah orthogonality degenerates to biorthogonality"),
    "eq40-to-eq46": ("hermite", "dual addition formula degenerates to its Hermite form"),
    "eq4": ("continuous", "conical function: two evaluation routes agree"),
    "eq6": ("continuous", "dual product formula in conical-function form"),
    "eq7": ("continuous", "dual product formula for Gegenbauer functions"),
    "eq8": ("continuous", "Wilson orthogonality (corrected norm) by quadrature"),
    "eq8-printed": ("continuous", "printed Wilson norm off by ((alpha+1/2)_n)^2: pinned"),
    "eq13": ("continuous", "closed form of the phi-weighted Wilson integral (corrected)"),
    "eq13-printed": ("continuous", "printed closed form off by ((alpha+1/2)_n)^2: pinned"),
    "eq15": ("continuous", "dual addition expansion for Gegenbauer functions"),
    "eq16": ("continuous", "quadratic argument transform of Gegenbauer functions"),
    "eq32": ("continuous", "|phi| <= 1 bound on sampled spectral points"),
    "eq33": ("continuous", "Wilson backward shift identity, pointwise"),
    "eq34": ("continuous", "spectral-shift contiguous relation"),
    "exact-float-oracle": ("continuous", "terminating series: exact rationals vs big floats"),
}


def default_racah_systems(config: SuiteConfig) -> list[tuple[str, int]]:
    """Twenty validated systems with N <= 8, including the dual-addition
    specializations alongside generic parameter tuples."""
    systems: list[tuple[str, int]] = [
        ("0,0,-3,1", 2),
        ("0,0,-2,-2", 1),
        ("1/2,1/2,-4,2", 3),
        ("1,2,-5,-7/2", 4),
    ]
    for alpha in config.alphas:
        for l, m in ((1, 1), (3, 2), (5, 5), (8, 4)):
            a = format_rational(alpha - _HALF)
            d = format_rational(-l - alpha - _HALF)
            systems.append((f"{a},{a},{-m - 1},{d}", m))
    return systems


# ---------------------------------------------------------------------------
# task execution


@dataclass
class TaskResult:
    mode: str
    residual: str
    passed: bool
    extra: dict[str, str] = field(default_factory=dict)


def _exact_result(value, extra: dict[str, str] | None = None) -> TaskResult:
    """Result for an exact check: value is a Fraction or UniPoly/SurdPoly."""
    if isinstance(value, UniPoly):
        residual = value.max_abs_coeff()
    elif isinstance(value, SurdPoly):
        residual = max((abs(c) for c in value.terms.values()), default=Fraction(0))
    else:
        residual = abs(value)
    return TaskResult(
        mode="exact",
        residual=format_rational(residual),
        passed=residual == 0,
        extra=extra or {},
    )


def _numeric_result(value, tolerance, extra: dict[str, str] | None = None) -> TaskResult:
    value = mp.mpf(value)
    return TaskResult(
        mode="numeric",
        residual=mp.nstr(value, 8),
        passed=value <= mp.mpf(tolerance),
        extra=dict(extra or {}, tolerance=mp.nstr(mp.mpf(tolerance), 3)),
    )


def _parse_system(params: dict[str, str]) -> racah.RacahSystem:
    return racah.RacahSystem.parse(params["system"], int(params["N"]))


def _dual_setting(params: dict[str, str]) -> dual_addition.DualSetting:
    return dual_addition.DualSetting(
        alpha=parse_rational(params["alpha"]),
        l=int(params["l"]),
        m=int(params["m"]),
    )


def run_task(identity_id: str, params: dict[str, str], config: SuiteConfig) -> TaskResult:
    """Execute one identity check; exceptions propagate to the runner."""
    handler = _HANDLERS.get(identity_id)
    if handler is None:
        raise ConfigError(f"no handler for identity {identity_id!r}")
    return handler(params, config)


# -- racah suite handlers


def _task_eq29(params, config):
    sys = _parse_system(params)
    direct = sum(racah.racah_weight(x, sys) for x in range(sys.N + 1))
    return _exact_result(racah.racah_h0(sys) - direct)


def _task_eq30(params, config):
    sys = _parse_system(params)
    gram = racah.gram_matrix(sys)
    h0 = racah.racah_h0(sys)
    worst = Fraction(0)
    for a in range(sys.N + 1):
        for b in range(sys.N + 1):
            target = h0 * racah.racah_norm_ratio(a, sys) if a == b else Fraction(0)
            worst = max(worst, abs(gram[a][b] - target))
    return _exact_result(worst)


def _task_eq25(params, config):
    sys = _parse_system(params)
    return _exact_result(racah.endpoint_value_residual(int(params["n"]), sys))


def _task_eq20(params, config):
    sys = _parse_system(params)
    n = int(params["n"])
    worst = Fraction(0)
    for x in range(sys.N + 1):
        worst = max(worst, abs(racah.backward_shift_residual(n, x, sys)))
    return _exact_result(worst)


def _task_eq21(params, config):
    sys = _parse_system(params)
    n = int(params["n"])
    rng = random.Random(f"eq21:{params['system']}:{sys.N}:{n}")
    worst = Fraction(0)
    for _ in range(5):
        f = [Fraction(rng.randint(-9, 9)) for _ in range(sys.N + 1)]
        worst = max(worst, abs(racah.sum_by_parts_residual(n, f, sys)))
    return _exact_result(worst)


# -- dual-addition suite handlers


def _task_eq45(params, config):
    s = _dual_setting(params)
    worst = Fraction(0)
    for n in range(s.m + 1):
        diff = dual_addition.s_direct(n, s) - dual_addition.s_closed(n, s)
        worst = max(worst, diff.max_abs_coeff())
    return _exact_result(worst)


def _task_eq40(params, config):
    s = _dual_setting(params)
    return _exact_result(dual_addition.dual_addition_residual(int(params["j"]), s))


def _task_eq17(params, config):
    s = _dual_setting(params)
    worst = Fraction(0)
    for j in range(s.m + 1):
        worst = max(worst, abs(dual_addition.coeff_as_racah_weight_residual(j, s)))
    return _exact_result(worst)


def _task_eq18(params, config):
    s = _dual_setting(params)
    coeffs = [dual_addition.linearization_coeff(j, s) for j in range(s.m + 1)]
    violation = Fraction(0)
    if any(c <= 0 for c in coeffs):
        violation = Fraction(1)  # strict positivity required
    violation = max(violation, abs(sum(coeffs) - 1))
    return _exact_result(violation)


def _task_eq43(params, config):
    alpha = parse_rational(params["alpha"])
    return _exact_result(dual_addition.self_dual_residual(int(params["m"]), alpha))


def _task_eq43_eq49(params, config):
    alpha = parse_rational(params["alpha"])
    m = int(params["m"])
    dual_terms = dual_addition.self_dual_terms(m, alpha)
    square_terms = addition.sum_of_squares_terms(m, alpha)
    worst = Fraction(0)
    for uni, surd in zip(dual_terms, square_terms):
        diff = SurdPoly.from_unipoly(uni, "x") - surd
        worst = max(
            worst, max((abs(c) for c in diff.terms.values()), default=Fraction(0))
        )
    return _exact_result(worst)


def _task_eq58(params, config):
    s = _dual_setting(params)
    worst = Fraction(0)
    for n in range(s.m + 1):
        for j in range(s.m + 1):
            worst = max(worst, abs(dual_addition.integral_identity_residual(n, j, s)))
    return _exact_result(worst)


def _task_whipple(params, config):
    s = _dual_setting(params)
    for n in range(s.m + 1):
        dual_addition.whipple_proportionality(n, s)  # raises on violation
    return _exact_result(Fraction(0))


# -- classical-addition suite handlers


def _task_eq42(params, config):
    inst = addition.AdditionInstance(int(params["n"]), parse_rational(params["alpha"]))
    return _exact_result(addition.addition_residual(inst))


def _task_eq41(params, config):
    inst = addition.AdditionInstance(int(params["n"]), parse_rational(params["alpha"]))
    return _exact_result(addition.product_formula_residual(inst))


def _task_eq44(params, config):
    inst = addition.AdditionInstance(int(params["n"]), parse_rational(params["alpha"]))
    return _exact_result(addition.t_one_residual(inst))


def _task_eq49(params, config):
    alpha = parse_rational(params["alpha"])
    return _exact_result(addition.sum_of_squares_residual(int(params["n"]), alpha))


def _task_eq23(params, config):
    alpha = parse_rational(params["alpha"])
    return _exact_result(classical.difference_residual(int(params["n"]), alpha))


def _task_eq50(params, config):
    alpha = parse_rational(params["alpha"])
    n = int(params["n"])
    diff = classical.gegenbauer_r(n, alpha) - classical.jacobi_r(n, alpha, alpha)
    return _exact_result(diff)


def _task_eq28(params, config):
    alpha = parse_rational(params["alpha"])
    n = int(params["n"])
    poly = classical.jacobi_r(n, alpha, alpha)
    lead = pochhammer(n + 2 * alpha + 1, n) / (
        Fraction(2**n) * pochhammer(alpha + 1, n)
    )
    return _exact_result(poly.coeff(n) - lead)


def _task_eq57(params, config):
    alpha = parse_rational(params["alpha"])
    worst = Fraction(0)
    polys = [classical.gegenbauer_r(n, alpha) for n in range(11)]
    for m in range(11):
        for n in range(m, 11):
            value = classical.inner_product(polys[m], polys[n], alpha)
            target = classical.norm_ratio(n, alpha) if m == n else Fraction(0)
            worst = max(worst, abs(value - target))
    return _exact_result(worst)


def _task_r_bound(params, config):
    alpha = parse_rational(params["alpha"])
    n = int(params["n"])
    poly = classical.gegenbauer_r(n, alpha)
    worst = Fraction(0)
    rng = random.Random(f"r-bound:{params['alpha']}:{n}")
    for _ in range(50):
        s = Fraction(rng.randint(-999, 999), 1000)
        x, _u = pythagorean_point(s)
        worst = max(worst, max(abs(poly(x)) - 1, Fraction(0)))
    return _exact_result(worst)


def _task_chebyshev(params, config):
    k = int(params["k"])
    poly = classical.jacobi_r(k, -_HALF, -_HALF)
    worst = Fraction(0)
    rng = random.Random(f"chebyshev:{k}")
    for _ in range(20):
        s = Fraction(rng.randint(-99, 99), 100)
        cos_phi, sin_phi = pythagorean_point(s)
        re, im = Fraction(1), Fraction(0)
        for _i in range(k):  # (cos + i sin)^k, exactly
            re, im = re * cos_phi - im * sin_phi, re * sin_phi + im * cos_phi
        worst = max(worst, abs(poly(cos_phi) - re))
    return _exact_result(worst)


# -- hermite suite handlers


def _task_hermite_addition(params, config):
    return _exact_result(hermite_limit.hermite_addition_residual(int(params["n"])))


def _task_hermite_product(params, config):
    return _exact_result(hermite_limit.hermite_product_residual(int(params["n"])))


def _task_eq46(params, config):
    s = hermite_limit.HermiteSetting(int(params["l"]), int(params["m"]))
    worst = Fraction(0)
    for j in range(s.m + 1):
        worst = max(
            worst, hermite_limit.hermite_dual_addition_residual(j, s).max_abs_coeff()
        )
    return _exact_result(worst)


def _task_eq47(params, config):
    s = hermite_limit.HermiteSetting(int(params["l"]), int(params["m"]))
    worst = Fraction(0)
    for n in range(s.m + 1):
        worst = max(
            worst, hermite_limit.hermite_dual_inverse_residual(n, s).max_abs_coeff()
        )
    return _exact_result(worst)


def _task_eq48_corrected(params, config):
    n = int(params["n"])
    worst = Fraction(0)
    for k in range(config.biorthogonality_max + 1):
        value = hermite_limit.biorthogonality_value(n, k, "corrected")
        target = Fraction(1) if n == k else Fraction(0)
        worst = max(worst, abs(value - target))
    return _exact_result(worst)


def _task_eq48_printed(params, config):
    n, k = int(params["n"]), int(params["k"])
    value = hermite_limit.biorthogonality_value(n, k, "as-printed")
    expected = parse_rational(params["expected"])
    return TaskResult(
        mode="exact",
        residual=format_rational(value),
        passed=value == expected,
        extra={"expected": format_rational(expected)},
    )


def _limit_result(report: hermite_limit.LimitReport) -> TaskResult:
    worst_excess = Fraction(0)
    for earlier, later in zip(report.deviations, report.deviations[1:]):
        if later > hermite_limit.DECAY_RATIO * earlier:
            if earlier == 0:
                worst_excess = max(worst_excess, later)
            else:
                worst_excess = max(
                    worst_excess, later / earlier - hermite_limit.DECAY_RATIO
                )
    return TaskResult(
        mode="exact",
        residual=format_rational(worst_excess),
        passed=worst_excess == 0,
        extra={
            "final_deviation": format_rational(report.deviations[-1]),
            "limit": report.limit_description,
        },
    )


def _task_limit(params, config):
    target = params["target"]
    indices = {
        key: int(params[key]) for key in ("n", "j", "l", "m") if key in params
    }
    x = parse_rational(params["x"]) if "x" in params else None
    report = hermite_limit.limit_rate_check(
        target, indices, config.alpha_powers, x=x, raise_on_failure=False
    )
    return _limit_result(report)


def _task_eq30_limit(params, config):
    report = hermite_limit.racah_to_biorthogonality_limit(
        int(params["n"]), int(params["k"]), int(params["l"]), int(params["m"]),
        config.alpha_powers, raise_on_failure=False,
    )
    return _limit_result(report)


def _task_eq40_to_eq46(params, config):
    report = hermite_limit.dual_addition_hermite_limit(
        int(params["j"]), int(params["l"]), int(params["m"]), config.alpha_powers,
        raise_on_failure=False,
    )
    return _limit_result(report)


# -- continuous suite handlers

_WILSON_CONTEXTS: dict[tuple, continuous.WilsonContext] = {}


def _wilson_context(lam: str, mu: str, alpha: str, prec: int) -> continuous.WilsonContext:
    key = (lam, mu, alpha, prec)
    ctx = _WILSON_CONTEXTS.get(key)
    if ctx is None:
        ctx = continuous.WilsonContext(
            parse_rational(lam), parse_rational(mu), parse_rational(alpha), prec
        )
        _WILSON_CONTEXTS[key] = ctx
    return ctx


def _task_eq8(params, config):
    prec = config.precision_digits
    ctx = _wilson_context(params["lambda"], params["mu"], params["alpha"], prec)
    value = continuous.wilson_orthogonality_residual(
        int(params["m"]), int(params["n"]), None, None, None,
        prec=prec, tolerance=config.integral_tol(), context=ctx,
    )
    return _numeric_result(value, config.integral_tol())


def _task_eq8_printed(params, config):
    prec = config.precision_digits
    n = int(params["n"])
    alpha = parse_rational(params["alpha"])
    ctx = _wilson_context(params["lambda"], params["mu"], params["alpha"], prec)
    with mp.workdps(prec + 10):
        integral = ctx.integrate(
            lambda nu: ctx.poly(n, nu) ** 2 * ctx.weight(nu),
            config.integral_tol() * mp.mpf(10) ** -3,
        )
        printed = continuous.wilson_norm(
            n, ctx.lam, ctx.mu, ctx.alpha, prec, variant="printed"
        )
        expected_ratio = continuous.to_mpf(pochhammer(alpha + _HALF, n) ** 2, prec)
        discrepancy = abs(integral / printed - expected_ratio)
    return _numeric_result(
        discrepancy,
        config.integral_tol() * expected_ratio,
        extra={"measured_over_printed": mp.nstr(integral / printed, 8),
               "expected_ratio": mp.nstr(expected_ratio, 8)},
    )


def _task_eq7(params, config):
    prec = config.precision_digits
    ctx = _wilson_context(params["lambda"], params["mu"], params["alpha"], prec)
    value = continuous.dual_product_residual(
        parse_rational(params["t"]), None, None, None,
        prec=prec, tolerance=config.integral_tol(), context=ctx,
    )
    return _numeric_result(value, config.integral_tol())


def _task_eq6(params, config):
    value = continuous.conical_product_residual(
        parse_rational(params["t"]),
        parse_rational(params["lambda"]),
        parse_rational(params["mu"]),
        parse_rational(params["alpha"]),
        prec=config.precision_digits,
        tolerance=config.integral_tol(),
    )
    return _numeric_result(value, config.integral_tol())


def _task_eq13(params, config):
    prec = config.precision_digits
    ctx = _wilson_context(params["lambda"], params["mu"], params["alpha"], prec)
    tol = config.integral_tol() * mp.mpf(10) ** 5  # stated: 1e-20 at P=60
    value = continuous.dual_integral_closed_form_residual(
        int(params["n"]), parse_rational(params["t"]), None, None, None,
        prec=prec, tolerance=tol, context=ctx,
    )
    return _numeric_result(value, tol)


def _task_eq13_printed(params, config):
    prec = config.precision_digits
    n = int(params["n"])
    alpha = parse_rational(params["alpha"])
    ctx = _wilson_context(params["lambda"], params["mu"], params["alpha"], prec)
    t = parse_rational(params["t"])
    with mp.workdps(prec + 10):
        corrected = continuous.dual_integral_closed_form_residual(
            n, t, None, None, None, prec=prec,
            tolerance=config.integral_tol(), context=ctx, variant="corrected",
        )
        printed = continuous.dual_integral_closed_form_residual(
            n, t, None, None, None, prec=prec,
            tolerance=config.integral_tol(), context=ctx, variant="printed",
        )
        expected_ratio = continuous.to_mpf(pochhammer(alpha + _HALF, n) ** 2, prec)
        # printed residual = |I - closed/ratio| / (closed/ratio) = ratio - 1 when corrected holds
        discrepancy = abs(printed - (expected_ratio - 1))
        tol = config.integral_tol() * mp.mpf(10) ** 5 * expected_ratio
    return _numeric_result(
        discrepancy, tol,
        extra={"corrected_residual": mp.nstr(corrected, 8),
               "expected_ratio": mp.nstr(expected_ratio, 8)},
    )


def _task_eq33(params, config):
    value = continuous.wilson_backward_shift_residual(
        int(params["n"]),
        parse_rational(params["x"]),
        parse_rational(params["lambda"]),
        parse_rational(params["mu"]),
        parse_rational(params["alpha"]),
        prec=config.precision_digits,
    )
    tol = mp.mpf(10) ** (-config.precision_digits + 30)
    return _numeric_result(value, tol)


def _task_eq15(params, config):
    result = continuous.dual_addition_function_residual(
        parse_rational(params["t"]),
        parse_rational(params["nu"]),
        parse_rational(params["lambda"]),
        parse_rational(params["mu"]),
        parse_rational(params["alpha"]),
        truncation_budget=config.truncation_budget,
        prec=config.precision_digits,
        tolerance=config.integral_tol() * mp.mpf(10) ** 5,
    )
    tol = config.integral_tol() * mp.mpf(10) ** 5
    out = _numeric_result(
        result.residual, tol,
        extra={"terms": str(result.terms_used),
               "tail_decreasing": str(result.tail_decreasing).lower()},
    )
    if result.diverged:
        # formal-divergence diagnostic: reported as a failure, never a crash
        out.passed = False
        out.extra["diagnostic"] = "expansion tail not decreasing"
    return out


def _task_eq16(params, config):
    prec = config.precision_digits
    with mp.workdps(prec + 10):
        alpha = continuous.to_mpf(parse_rational(params["alpha"]), prec)
        lam = continuous.to_mpf(parse_rational(params["lambda"]), prec)
        t = continuous.to_mpf(parse_rational(params["t"]), prec)
        value = abs(
            continuous.phi(2 * lam, alpha, alpha, t, prec)
            - continuous.phi(lam, alpha, -mp.mpf(1) / 2, 2 * t, prec)
        )
    return _numeric_result(value, config.pointwise_tol())


def _task_eq34(params, config):
    prec = config.precision_digits
    value = abs(
        continuous.contiguous_residual(
            continuous.to_mpf(parse_rational(params["lambda"]), prec),
            parse_rational(params["alpha"]),
            parse_rational(params["beta"]),
            parse_rational(params["t"]),
            prec,
        )
    )
    return _numeric_result(value, config.pointwise_tol())


def _task_eq32(params, config):
    prec = config.precision_digits
    alpha = parse_rational(params["alpha"])
    beta = parse_rational(params["beta"])
    rng = random.Random(f"eq32:{params['alpha']}:{params['beta']}")
    worst = mp.mpf(0)
    for _ in range(50):
        lam = Fraction(rng.randint(-400, 400), 100)
        t = Fraction(rng.randint(-300, 300), 100)
        worst = max(
            worst,
            continuous.phi_bound_violation(
                continuous.to_mpf(lam, prec), alpha, beta, t, prec
            ),
        )
    return _numeric_result(worst, mp.mpf(10) ** (-config.precision_digits + 10))


def _task_eq4(params, config):
    value = continuous.conical_route_residual(
        continuous.ConicalArgs(
            parse_rational(params["g"]),
            parse_rational(params["r"]),
            parse_rational(params["k"]),
        ),
        prec=config.precision_digits,
    )
    tol = mp.mpf(10) ** (-config.precision_digits + 10)
    return _numeric_result(value, tol)


def _task_exact_float_oracle(params, config):
    prec = config.precision_digits
    case = params["case"]
    with mp.workdps(prec + 10):
        if case == "gauss-terminating":
            exact = terminating_hyp(
                [Fraction(-3), Fraction(5, 2)], [Fraction(7, 3)], 3, z=Fraction(-4, 7)
            )
            numeric = continuous.gauss_2f1(
                -3, mp.mpf(5) / 2, mp.mpf(7) / 3, -mp.mpf(4) / 7, prec
            )
            value = abs(continuous.to_mpf(exact, prec) - numeric)
        elif case == "wilson-terminating":
            n = 2
            a, b, c, d = Fraction(1, 4), Fraction(1, 2), Fraction(3, 4), Fraction(5, 4)
            xsq = Fraction(9, 16)
            # real parameter variant: x^2 -> a+ix, a-ix replaced by a pm sqrt(-xsq)
            exact = pochhammer(a + b, n) * pochhammer(a + c, n) * pochhammer(a + d, n)
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
            exact *= series
            params_num = continuous.WilsonParams(
                mp.mpf(0.25), mp.mpf(0.5), mp.mpf(0.75), mp.mpf(1.25)
            )
            numeric = continuous.wilson_poly(n, continuous.to_mpf(xsq, prec), params_num, prec)
            value = abs(continuous.to_mpf(exact, prec) - numeric)
        else:
            raise ConfigError(f"unknown oracle case {case!r}")
    return _numeric_result(value, mp.mpf(10) ** (-prec + 5))


_HANDLERS = {
    "eq29": _task_eq29,
    "eq30": _task_eq30,
    "eq25": _task_eq25,
    "eq20": _task_eq20,
    "eq21": _task_eq21,
    "eq45": _task_eq45,
    "eq40": _task_eq40,
    "eq17": _task_eq17,
    "eq18": _task_eq18,
    "eq43": _task_eq43,
    "eq43-eq49": _task_eq43_eq49,
    "eq58": _task_eq58,
    "whipple": _task_whipple,
    "eq42": _task_eq42,
    "eq41": _task_eq41,
    "eq44": _task_eq44,
    "eq49": _task_eq49,
    "eq23": _task_eq23,
    "eq50": _task_eq50,
    "eq28": _task_eq28,
    "eq57": _task_eq57,
    "r-bound": _task_r_bound,
    "chebyshev-t": _task_chebyshev,
    "hermite-addition": _task_hermite_addition,
    "hermite-product": _task_hermite_product,
    "eq46": _task_eq46,
    "eq47": _task_eq47,
    "eq48-corrected": _task_eq48_corrected,
    "eq48-printed": _task_eq48_printed,
    "eq52": _task_limit,
    "eq53": _task_limit,
    "eq54j": _task_limit,
    "eq54n": _task_limit,
    "eq55": _task_limit,
    "eq56": _task_limit,
    "eq30-limit": _task_eq30_limit,
    "eq40-to-eq46": _task_eq40_to_eq46,
    "eq8": _task_eq8,
    "eq8-printed": _task_eq8_printed,
    "eq7": _task_eq7,
    "eq6": _task_eq6,
    "eq13": _task_eq13,
    "eq13-printed": _task_eq13_printed,
    "eq33": _task_eq33,
    "eq15": _task_eq15,
    "eq16": _task_eq16,
    "eq34": _task_eq34,
    "eq32": _task_eq32,
    "eq4": _task_eq4,
    "exact-float-oracle": _task_exact_float_oracle,
}


# ---------------------------------------------------------------------------
# task enumeration


def racah_tasks(config: SuiteConfig):
    tasks = []
    for system, n_points in default_racah_systems(config):
        base = {"system": system, "N": str(n_points)}
        tasks.append(("eq29", dict(base)))
        tasks.append(("eq30", dict(base)))
        for n in range(n_points + 1):
            tasks.append(("eq25", dict(base, n=str(n))))
        for n in range(1, n_points + 1):
            tasks.append(("eq20", dict(base, n=str(n))))
            tasks.append(("eq21", dict(base, n=str(n))))
    return tasks


def dual_addition_tasks(config: SuiteConfig):
    tasks = []
    for alpha in config.alphas:
        a = format_rational(alpha)
        for l, m in config.lm_pairs():
            base = {"alpha": a, "l": str(l), "m": str(m)}
            tasks.append(("eq45", dict(base)))
            tasks.append(("eq17", dict(base)))
            tasks.append(("eq18", dict(base)))
            tasks.append(("eq58", dict(base)))
            tasks.append(("whipple", dict(base)))
            for j in range(m + 1):
                tasks.append(("eq40", dict(base, j=str(j))))
        for m in range(config.l_max + 1):
            tasks.append(("eq43", {"alpha": a, "m": str(m)}))
            tasks.append(("eq43-eq49", {"alpha": a, "m": str(m)}))
    return tasks


def classical_addition_tasks(config: SuiteConfig):
    tasks = []
    for alpha in config.alphas:
        a = format_rational(alpha)
        for n in range(config.addition_n_max + 1):
            tasks.append(("eq42", {"alpha": a, "n": str(n)}))
            tasks.append(("eq41", {"alpha": a, "n": str(n)}))
            tasks.append(("eq44", {"alpha": a, "n": str(n)}))
            tasks.append(("eq49", {"alpha": a, "n": str(n)}))
        for n in range(2, config.addition_n_max + 1):
            tasks.append(("eq23", {"alpha": a, "n": str(n)}))
        for n in range(13):
            tasks.append(("eq50", {"alpha": a, "n": str(n)}))
            tasks.append(("eq28", {"alpha": a, "n": str(n)}))
        tasks.append(("eq57", {"alpha": a}))
    for alpha in (Fraction(0), _HALF, Fraction(1)):
        a = format_rational(alpha)
        for n in range(11):
            tasks.append(("r-bound", {"alpha": a, "n": str(n)}))
    for k in range(7):
        tasks.append(("chebyshev-t", {"k": str(k)}))
    return tasks


def hermite_tasks(config: SuiteConfig):
    tasks = []
    for n in range(13):
        tasks.append(("hermite-addition", {"n": str(n)}))
        tasks.append(("hermite-product", {"n": str(n)}))
    for l in range(config.hermite_lm_max + 1):
        for m in range(l + 1):
            tasks.append(("eq46", {"l": str(l), "m": str(m)}))
            tasks.append(("eq47", {"l": str(l), "m": str(m)}))
    for n in range(config.biorthogonality_max + 1):
        tasks.append(("eq48-corrected", {"n": str(n)}))
    tasks.append(("eq48-printed", {"n": "2", "k": "1", "expected": "-1"}))
    for n in range(5):
        for x in ("1/2", "3/5"):
            tasks.append(("eq52", {"target": "eq52", "n": str(n), "x": x}))
            tasks.append(("eq53", {"target": "eq53", "n": str(n), "x": x}))
    for l in range(config.limit_lm_max + 1):
        for m in range(l + 1):
            base = {"l": str(l), "m": str(m)}
            for n in range(m + 1):
                for j in range(m + 1):
                    tasks.append(
                        ("eq54j", dict(base, target="eq54j", n=str(n), j=str(j)))
                    )
                    tasks.append(
                        ("eq54n", dict(base, target="eq54n", n=str(n), j=str(j)))
                    )
            for j in range(m + 1):
                tasks.append(("eq55", dict(base, target="eq55", j=str(j))))
                tasks.append(("eq40-to-eq46", dict(base, j=str(j))))
            for n in range(m + 1):
                tasks.append(("eq56", dict(base, target="eq56", n=str(n))))
                for k in range(m + 1):
                    tasks.append(("eq30-limit", dict(base, n=str(n), k=str(k))))
    return tasks


#: ten dual-product evaluation points; the first is the t = 0 coincidence
#: with the degree-zero Wilson norm, and two are the alpha = 0 and 1/2 cases.
EQ7_POINTS = (
    ("0", "3/10", "2/5", "1"),
    ("3/10", "2/5", "7/10", "1"),
    ("1/5", "3/10", "1/2", "0"),
    ("1/4", "1/2", "1/2", "0"),
    ("3/20", "1/4", "9/20", "1/2"),
    ("1/10", "3/5", "1/5", "2"),
    ("2/5", "1/10", "3/10", "3/2"),
    ("3/10", "1/5", "1/5", "7/3"),
    ("1/5", "7/10", "3/5", "1/2"),
    ("1/8", "2/5", "1/4", "3"),
)


def continuous_tasks(config: SuiteConfig):
    tasks = []
    lam, mu, al = "1/5", "2/5", "1"
    for m in range(4):
        for n in range(m, 4):
            tasks.append(
                ("eq8", {"m": str(m), "n": str(n), "lambda": lam, "mu": mu, "alpha": al})
            )
    tasks.append(("eq8-printed", {"n": "2", "lambda": lam, "mu": mu, "alpha": al}))
    for t, lam_, mu_, al_ in EQ7_POINTS:
        tasks.append(("eq7", {"t": t, "lambda": lam_, "mu": mu_, "alpha": al_}))
    for t, lam_, mu_, al_ in (("1/4", "2/5", "3/5", "1"), ("3/10", "1/5", "1/2", "3/2")):
        tasks.append(("eq6", {"t": t, "lambda": lam_, "mu": mu_, "alpha": al_}))
    for n in range(4):
        tasks.append(
            ("eq13", {"n": str(n), "t": "1/5", "lambda": "3/10", "mu": "1/2", "alpha": "1"})
        )
    tasks.append(
        ("eq13-printed", {"n": "1", "t": "1/5", "lambda": "3/10", "mu": "1/2", "alpha": "1"})
    )
    for x in ("1/10", "3/10", "7/10", "6/5", "2"):
        tasks.append(
            ("eq33", {"n": "2", "x": x, "lambda": "3/10", "mu": "1/2", "alpha": "1"})
        )
    t_max = Fraction(config.t_max)
    for t, nu, lam_, mu_, al_ in (
        ("1/10", "3/10", "1/5", "2/5", "1"),
        (format_rational(t_max), "3/10", "1/5", "2/5", "1/2"),
        ("1/8", "1/2", "1/4", "1/5", "0"),
    ):
        tasks.append(
            ("eq15", {"t": t, "nu": nu, "lambda": lam_, "mu": mu_, "alpha": al_})
        )
    rng = random.Random("eq16-grid")
    for _ in range(20):
        tasks.append(
            (
                "eq16",
                {
                    "alpha": format_rational(Fraction(rng.randint(0, 300), 100)),
                    "lambda": format_rational(Fraction(rng.randint(-250, 250), 100)),
                    "t": format_rational(Fraction(rng.randint(-150, 150), 100)),
                },
            )
        )
    for al_, be_, lam_, t in (
        ("1", "-1/2", "1/2", "2/5"),
        ("2", "1", "13/10", "4/5"),
        ("1/2", "0", "0", "3/10"),
        ("3/2", "1/4", "2", "1/2"),
    ):
        tasks.append(("eq34", {"alpha": al_, "beta": be_, "lambda": lam_, "t": t}))
    for al_, be_ in (("1", "1/2"), ("1/2", "-1/2"), ("2", "2")):
        tasks.append(("eq32", {"alpha": al_, "beta": be_}))
    for g, r, k in (("1", "1/2", "4/5"), ("3/2", "1/5", "0"), ("1/2", "1", "-3/5")):
        tasks.append(("eq4", {"g": g, "r": r, "k": k}))
    tasks.append(("exact-float-oracle", {"case": "gauss-terminating"}))
    tasks.append(("exact-float-oracle", {"case": "wilson-terminating"}))
    return tasks


_SUITE_BUILDERS = {
    "racah": racah_tasks,
    "dual-addition": dual_addition_tasks,
    "classical-addition": classical_addition_tasks,
    "hermite": hermite_tasks,
    "continuous": continuous_tasks,
}


def suite_tasks(name: str, config: SuiteConfig):
    if name == "all":
        tasks = []
        for suite in SUITE_NAMES:
            tasks.extend(_SUITE_BUILDERS[suite](config))
        return tasks
    builder = _SUITE_BUILDERS.get(name)
    if builder is None:
        raise ConfigError(
            f"unknown suite {name!r}; choose from {', '.join(SUITE_NAMES)} or 'all'"
        )
    return builder(config)


def _execute(task, config: SuiteConfig) -> VerificationReport:
    identity_id, params = task
    start = time.monotonic()
    try:
        result = run_task(identity_id, params, config)
        status = "pass" if result.passed else "fail"
        mode, residual = result.mode, result.residual
        extra = result.extra
    except PolyidentError as exc:
        status, mode, residual = "error", "exact", "n/a"
        extra = {"error": f"{type(exc).__name__}: {exc}"}
    elapsed = int((time.monotonic() - start) * 1000) if config.timings else 0
    return VerificationReport(
        identity_id=identity_id,
        parameters={**params, **extra},
        mode=mode,
        residual=residual,
        status=status,
        elapsed=elapsed,
    )


def _execute_packed(packed):
    task, config = packed
    return _execute(task, config)


def run_suite(name: str, config: SuiteConfig) -> list[VerificationReport]:
    """Run a suite's tasks, possibly on a process pool; reports are unsorted."""
    tasks = suite_tasks(name, config)
    jobs = config.jobs if config.jobs > 0 else (os.cpu_count() or 1)
    if jobs == 1 or len(tasks) < 2:
        return [_execute(task, config) for task in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        packed = [(task, config) for task in tasks]
        return list(pool.map(_execute_packed, packed, chunksize=8))

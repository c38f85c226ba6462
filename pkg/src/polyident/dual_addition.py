"""Dual addition machinery for Gegenbauer polynomials.

The product R_l R_m of two Gegenbauer polynomials expands in the family
with coefficients that are, after normalization, exactly the orthogonality
weights of a Racah system with parameters

    (alpha - 1/2, alpha - 1/2, -m - 1, -l - alpha - 1/2),  N = m.

Inserting a Racah polynomial of the expansion index into that sum yields a
closed product form (the sum S below), and expanding back through Racah
orthogonality gives the dual addition formula: R_{l+m-2j} as a sum over n
of (x^2-1)^n R_{l-n}^{(alpha+n)} R_{m-n}^{(alpha+n)} times Racah values.
Everything here is exact; identity checks compare canonical coefficient
vectors, not samples.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .classical import gegenbauer_r, inner_product, norm_ratio
from .errors import DomainError, IdentityViolationError
from .exact import UniPoly, pochhammer, terminating_hyp
from .racah import RacahSystem, racah_eval, racah_h0, racah_weight

_HALF = Fraction(1, 2)
_X2M1 = UniPoly((Fraction(-1), Fraction(0), Fraction(1)))


@dataclass(frozen=True)
class DualSetting:
    """Parameter triple (alpha, l, m) with alpha > -1/2 and l >= m >= 0."""

    alpha: Fraction
    l: int
    m: int

    def __post_init__(self):
        object.__setattr__(self, "alpha", Fraction(self.alpha))
        if self.alpha <= -_HALF:
            raise DomainError(f"alpha must exceed -1/2, got {self.alpha}")
        if not 0 <= self.m <= self.l:
            raise DomainError(f"need l >= m >= 0, got l={self.l}, m={self.m}")


@lru_cache(maxsize=None)
def specialized_racah(s: DualSetting) -> RacahSystem:
    """The Racah system whose weights are the linearization coefficients.

    Validity of this system for every admissible setting is a checked
    claim: construction runs the full RacahSystem validation.
    """
    return RacahSystem(
        alpha=s.alpha - _HALF,
        beta=s.alpha - _HALF,
        gamma=Fraction(-s.m - 1),
        delta=-s.l - s.alpha - _HALF,
        N=s.m,
    )


def _check_j(j: int, s: DualSetting) -> None:
    if not 0 <= j <= s.m:
        raise DomainError(f"index must lie in 0..{s.m}, got {j}")


def linearization_coeff(j: int, s: DualSetting) -> Fraction:
    """Coefficient of R_{l+m-2j} in the expansion of R_l R_m.

    Computed from the explicit product-formula coefficients; strictly
    positive for alpha > -1/2.
    """
    _check_j(j, s)
    al, l, m = s.alpha, s.l, s.m
    pre = Fraction(math.factorial(l) * math.factorial(m)) / (
        pochhammer(2 * al + 1, l) * pochhammer(2 * al + 1, m)
    )
    return (
        pre
        * (l + m + al + _HALF - 2 * j)
        / (al + _HALF)
        * pochhammer(al + _HALF, j)
        * pochhammer(al + _HALF, l - j)
        * pochhammer(al + _HALF, m - j)
        * pochhammer(2 * al + 1, l + m - j)
        / (
            math.factorial(j)
            * math.factorial(l - j)
            * math.factorial(m - j)
            * pochhammer(al + Fraction(3, 2), l + m - j)
        )
    )


def coeff_as_racah_weight_residual(j: int, s: DualSetting) -> Fraction:
    """linearization_coeff minus w(j)/h0 of the specialized system; must be 0."""
    _check_j(j, s)
    sys = specialized_racah(s)
    return linearization_coeff(j, s) - racah_weight(j, sys) / racah_h0(sys)


def s_direct(n: int, s: DualSetting) -> UniPoly:
    """The weighted sum S: over j, w(j) R_{l+m-2j} times the Racah value at j."""
    _check_j(n, s)
    sys = specialized_racah(s)
    out = UniPoly.zero()
    for j in range(s.m + 1):
        c = racah_weight(j, sys) * racah_eval(n, j, sys)
        out = out + gegenbauer_r(s.l + s.m - 2 * j, s.alpha).scale(c)
    return out


def s_closed_prefactor(n: int, s: DualSetting) -> Fraction:
    al, l, m = s.alpha, s.l, s.m
    return (
        pochhammer(2 * al + 1, l + n)
        * pochhammer(2 * al + 1, m + n)
        * pochhammer(al + _HALF, l + m)
        / (
            Fraction(2 ** (2 * n))
            * pochhammer(al + _HALF, l)
            * pochhammer(al + _HALF, m)
            * pochhammer(2 * al + 1, l + m)
            * pochhammer(al + 1, n) ** 2
        )
    )


def s_closed(n: int, s: DualSetting) -> UniPoly:
    """Closed form of the sum S:

        prefactor * (x^2-1)^n R_{l-n}^{(alpha+n)}(x) R_{m-n}^{(alpha+n)}(x).

    Must equal s_direct coefficientwise.
    """
    _check_j(n, s)
    al, l, m = s.alpha, s.l, s.m
    poly = (
        gegenbauer_r(l - n, al + n)
        * gegenbauer_r(m - n, al + n)
        * _X2M1.pow(n)
    )
    return poly.scale(s_closed_prefactor(n, s))


def _expansion_factor(n: int, alpha: Fraction) -> Fraction:
    # (alpha+n)/(alpha+n/2); the n = 0 instance is 1 (also at alpha = 0).
    if n == 0:
        return Fraction(1)
    return (alpha + n) / (alpha + Fraction(n, 2))


def dual_addition_term(n: int, j: int, s: DualSetting) -> UniPoly:
    """The degree-n term of the dual addition expansion of R_{l+m-2j}."""
    _check_j(n, s)
    _check_j(j, s)
    al, l, m = s.alpha, s.l, s.m
    sys = specialized_racah(s)
    coeff = (
        _expansion_factor(n, al)
        * pochhammer(Fraction(-l), n)
        * pochhammer(Fraction(-m), n)
        * pochhammer(2 * al + 1, n)
        / (
            Fraction(2 ** (2 * n))
            * pochhammer(al + 1, n) ** 2
            * math.factorial(n)
        )
        * racah_eval(n, j, sys)
    )
    poly = (
        gegenbauer_r(l - n, al + n)
        * gegenbauer_r(m - n, al + n)
        * _X2M1.pow(n)
    )
    return poly.scale(coeff)


def dual_addition_residual(j: int, s: DualSetting) -> UniPoly:
    """R_{l+m-2j} minus its dual addition expansion; must be zero."""
    _check_j(j, s)
    rhs = UniPoly.zero()
    for n in range(s.m + 1):
        rhs = rhs + dual_addition_term(n, j, s)
    return gegenbauer_r(s.l + s.m - 2 * j, s.alpha) - rhs


def self_dual_terms(m: int, alpha: Fraction) -> list[UniPoly]:
    """Term sequence of the constant-function expansion (the l = m, j = m case):

        1 = sum_n C(m,n) (alpha+n)/(alpha+n/2)
            (m+2 alpha+1)_n (2 alpha+1)_n / (2^{2n} (alpha+1)_n^2)
            (1-x^2)^n (R_{m-n}^{(alpha+n)})^2.
    """
    alpha = Fraction(alpha)
    if alpha <= -_HALF:
        raise DomainError(f"alpha must exceed -1/2, got {alpha}")
    if m < 0:
        raise DomainError(f"m must be >= 0, got {m}")
    one_minus_x2 = UniPoly((Fraction(1), Fraction(0), Fraction(-1)))
    terms = []
    for n in range(m + 1):
        coeff = (
            Fraction(math.comb(m, n))
            * _expansion_factor(n, alpha)
            * pochhammer(m + 2 * alpha + 1, n)
            * pochhammer(2 * alpha + 1, n)
            / (Fraction(2 ** (2 * n)) * pochhammer(alpha + 1, n) ** 2)
        )
        poly = gegenbauer_r(m - n, alpha + n)
        terms.append((one_minus_x2.pow(n) * poly * poly).scale(coeff))
    return terms


def self_dual_residual(m: int, alpha: Fraction) -> UniPoly:
    """1 minus the constant-function expansion; must be zero."""
    total = UniPoly.zero()
    for term in self_dual_terms(m, alpha):
        total = total + term
    return UniPoly.one() - total


def integral_identity_residual(n: int, j: int, s: DualSetting) -> Fraction:
    """Fourier coefficient of S against R_{l+m-2j}, minus its closed value.

    Both sides are mass-normalized, so the overall weight mass cancels:
    <S_n, R_{l+m-2j}> = w(j) (h_{l+m-2j}/h_0) * (Racah value at j).
    """
    _check_j(n, s)
    _check_j(j, s)
    sys = specialized_racah(s)
    deg = s.l + s.m - 2 * j
    lhs = inner_product(s_direct(n, s), gegenbauer_r(deg, s.alpha), s.alpha)
    rhs = (
        racah_weight(j, sys)
        * norm_ratio(deg, s.alpha)
        * racah_eval(n, j, sys)
    )
    return lhs - rhs


def second_hyp_form(n: int, j: int, s: DualSetting) -> Fraction:
    """The second terminating 4F3 representation of the triple-product integral."""
    al, l, m = s.alpha, s.l, s.m
    return terminating_hyp(
        [
            Fraction(n - m),
            -m - n - 2 * al,
            Fraction(j - m),
            l - j + al + _HALF,
        ],
        [Fraction(-m), -m - al + _HALF, Fraction(l - m + 1)],
        min(m - n, m - j),
    )


def whipple_factor(j: int, s: DualSetting) -> Fraction:
    """j-dependent elementary factor linking the two 4F3 forms.

    A twofold Whipple transformation turns the Racah-value 4F3 into the
    second form times explicit shifted-factorial quotients; this is the
    part of those quotients that varies with j (it never vanishes for
    admissible indices):

        (j-l)_{m-j} (j+alpha+1/2)_{m-j}
        / ((alpha+1/2)_{m-j} (l+2 alpha+1)_{m-j}).
    """
    _check_j(j, s)
    al, l, m = s.alpha, s.l, s.m
    return (
        pochhammer(Fraction(j - l), m - j)
        * pochhammer(j + al + _HALF, m - j)
        / (pochhammer(al + _HALF, m - j) * pochhammer(l + 2 * al + 1, m - j))
    )


def whipple_proportionality(n: int, s: DualSetting) -> tuple[Fraction, Fraction]:
    """Common proportionality constants of the triple-product integral.

    For each j, the normalized integral of
    R_{l-n}^{(alpha+n)} R_{m-n}^{(alpha+n)} R_{l+m-2j} against
    (1-x^2)^{alpha+n}, divided by the j-dependent weight factors
    w(j) h_{l+m-2j}/h_0, is proportional to the Racah-value 4F3; divided
    additionally by :func:`whipple_factor` it is proportional to the
    second 4F3 form.  Both constants must be independent of j and are
    returned.  A j where a 4F3 vanishes must have vanishing integral and
    is skipped.

    Raises IdentityViolationError if a ratio fails to be constant or a
    zero fails to pair.
    """
    _check_j(n, s)
    al, l, m = s.alpha, s.l, s.m
    sys = specialized_racah(s)
    ratios: tuple[list[Fraction], list[Fraction]] = ([], [])
    for j in range(m + 1):
        poly = gegenbauer_r(l - n, al + n) * gegenbauer_r(m - n, al + n)
        integral = inner_product(poly, gegenbauer_r(l + m - 2 * j, al), al + n)
        base = racah_weight(j, sys) * norm_ratio(l + m - 2 * j, al)
        checks = (
            (racah_eval(n, j, sys), base, ratios[0]),
            (second_hyp_form(n, j, s), base * whipple_factor(j, s), ratios[1]),
        )
        for value, scale, acc in checks:
            if value == 0:
                if integral != 0:
                    raise IdentityViolationError(
                        f"integral nonzero where 4F3 vanishes (j={j})"
                    )
                continue
            acc.append(integral / (scale * value))
    results = []
    for which, acc in zip(("first", "second"), ratios):
        if not acc:
            raise IdentityViolationError(f"no usable j for the {which} 4F3")
        if any(r != acc[0] for r in acc):
            raise IdentityViolationError(
                f"{which} 4F3 ratio varies over j: {[str(r) for r in acc]}"
            )
        results.append(acc[0])
    return results[0], results[1]

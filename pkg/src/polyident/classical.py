"""Renormalized Jacobi, Gegenbauer and Hermite polynomials, exactly.

All constructors expand terminating hypergeometric series over the
rationals and normalize so the Jacobi/Gegenbauer value at x = 1 is 1.
Integration against the Gegenbauer weight (1-x^2)^alpha on [-1, 1] is
done in mass-normalized form (the weight scaled to total mass 1), which
keeps every inner product rational.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

from .errors import DomainError
from .exact import UniPoly, pochhammer


def _require_alpha(alpha: Fraction, lower: Fraction, what: str) -> None:
    if alpha <= lower:
        raise DomainError(f"{what} requires alpha > {lower}, got {alpha}")


@lru_cache(maxsize=None)
def jacobi_r(n: int, alpha: Fraction, beta: Fraction) -> UniPoly:
    """Jacobi polynomial normalized to value 1 at x = 1.

    Built by exact termwise summation of the terminating 2F1 with argument
    (1-x)/2; the leading coefficient is (n+alpha+beta+1)_n / (2^n (alpha+1)_n).
    """
    if n < 0:
        raise DomainError(f"degree must be >= 0, got {n}")
    alpha, beta = Fraction(alpha), Fraction(beta)
    _require_alpha(alpha, Fraction(-1), "jacobi_r")
    _require_alpha(beta, Fraction(-1), "jacobi_r")
    coeffs = [Fraction(0)] * (n + 1)
    for k in range(n + 1):
        c = (
            pochhammer(Fraction(-n), k)
            * pochhammer(n + alpha + beta + 1, k)
            / (pochhammer(alpha + 1, k) * math.factorial(k))
        )
        if c == 0:
            continue
        # ((1-x)/2)^k expanded binomially
        for i in range(k + 1):
            coeffs[i] += c * Fraction(math.comb(k, i) * (-1) ** i, 2**k)
    return UniPoly(coeffs)


@lru_cache(maxsize=None)
def gegenbauer_r(n: int, alpha: Fraction) -> UniPoly:
    """Gegenbauer polynomial (value 1 at x = 1) from its power series.

    The usual prefactor n!/(2 alpha + 1)_n is folded into each term through
    the exact identity (2a)_n = 2^n (a)_{ceil(n/2)} (a+1/2)_{floor(n/2)}
    with a = alpha + 1/2, so the construction stays valid at alpha = -1/2
    where prefactor and sum vanish together.  Must agree coefficientwise
    with jacobi_r(n, alpha, alpha).
    """
    if n < 0:
        raise DomainError(f"degree must be >= 0, got {n}")
    alpha = Fraction(alpha)
    _require_alpha(alpha, Fraction(-1), "gegenbauer_r")
    half = Fraction(1, 2)
    hi, lo = (n + 1) // 2, n // 2
    denom = Fraction(2**n) * pochhammer(alpha + 1, lo)
    coeffs = [Fraction(0)] * (n + 1)
    for k in range(n // 2 + 1):
        # (alpha+1/2)_{n-k} / (2 alpha+1)_n, with the common block cancelled
        bracket = pochhammer(alpha + half + hi, n - k - hi) / denom
        coeffs[n - 2 * k] = (
            Fraction(math.factorial(n) * (-1) ** k * 2 ** (n - 2 * k))
            / Fraction(math.factorial(k) * math.factorial(n - 2 * k))
            * bracket
        )
    return UniPoly(coeffs)


@lru_cache(maxsize=None)
def hermite(n: int) -> UniPoly:
    """Hermite polynomial with leading coefficient 2^n (weight e^{-x^2})."""
    if n < 0:
        raise DomainError(f"degree must be >= 0, got {n}")
    coeffs = [Fraction(0)] * (n + 1)
    for k in range(n // 2 + 1):
        coeffs[n - 2 * k] = Fraction(
            math.factorial(n) * (-1) ** k * 2 ** (n - 2 * k),
            math.factorial(k) * math.factorial(n - 2 * k),
        )
    return UniPoly(coeffs)


def even_moment(k: int, alpha: Fraction) -> Fraction:
    """Normalized moment of x^{2k} against (1-x^2)^alpha on [-1, 1].

    Equals (1/2)_k / (alpha+3/2)_k; the Beta-function mass cancels, so the
    value is rational for rational alpha.  Odd moments vanish by symmetry.
    """
    if k < 0:
        raise DomainError(f"moment order must be >= 0, got {k}")
    alpha = Fraction(alpha)
    _require_alpha(alpha, Fraction(-1), "even_moment")
    return pochhammer(Fraction(1, 2), k) / pochhammer(alpha + Fraction(3, 2), k)


def inner_product(p: UniPoly, q: UniPoly, alpha: Fraction) -> Fraction:
    """Mass-normalized inner product of two polynomials in the Gegenbauer weight."""
    alpha = Fraction(alpha)
    _require_alpha(alpha, Fraction(-1), "inner_product")
    prod = p * q
    total = Fraction(0)
    for i in range(0, prod.degree + 1, 2):
        c = prod.coeff(i)
        if c != 0:
            total += c * even_moment(i // 2, alpha)
    return total


def norm_ratio(n: int, alpha: Fraction) -> Fraction:
    """Squared norm of gegenbauer_r(n, alpha) relative to the n = 0 norm."""
    if n < 0:
        raise DomainError(f"degree must be >= 0, got {n}")
    alpha = Fraction(alpha)
    _require_alpha(alpha, Fraction(-1), "norm_ratio")
    return (
        (n + 2 * alpha + 1)
        / (2 * n + 2 * alpha + 1)
        * math.factorial(n)
        / pochhammer(2 * alpha + 2, n)
    )


def difference_residual(n: int, alpha: Fraction) -> UniPoly:
    """Residual of the two-step difference formula

        R_n - R_{n-2} = (n+alpha-1/2)/(alpha+1) (x^2-1) R_{n-2}^{(alpha+1)},

    which must be the zero polynomial for every n >= 2.
    """
    if n < 2:
        raise DomainError(f"difference formula needs n >= 2, got {n}")
    alpha = Fraction(alpha)
    _require_alpha(alpha, Fraction(-1), "difference_residual")
    lhs = gegenbauer_r(n, alpha) - gegenbauer_r(n - 2, alpha)
    x2m1 = UniPoly((Fraction(-1), Fraction(0), Fraction(1)))
    rhs = (x2m1 * gegenbauer_r(n - 2, alpha + 1)).scale(
        (n + alpha - Fraction(1, 2)) / (alpha + 1)
    )
    return lhs - rhs

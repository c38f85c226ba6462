"""Classical addition and product formulas for Gegenbauer polynomials.

The argument substitution x y + (1-x^2)^{1/2} (1-y^2)^{1/2} t and the
half-integer powers (1-x^2)^{k/2} live in the surd quotient ring, where
u stands for (1-x^2)^{1/2} and v for (1-y^2)^{1/2}.  Canonical-form
equality in that ring is a complete proof of each polynomial identity;
rational point evaluation on the circle is kept as a second, independent
oracle in the tests.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .classical import even_moment, gegenbauer_r, jacobi_r
from .errors import DomainError
from .exact import SurdPoly, UniPoly, pochhammer

_HALF = Fraction(1, 2)


@dataclass(frozen=True)
class AdditionInstance:
    """Degree n and parameter alpha > -1/2 for one addition-formula check."""

    n: int
    alpha: Fraction

    def __post_init__(self):
        object.__setattr__(self, "alpha", Fraction(self.alpha))
        if self.n < 0:
            raise DomainError(f"degree must be >= 0, got {self.n}")
        if self.alpha <= -_HALF:
            raise DomainError(f"alpha must exceed -1/2, got {self.alpha}")


def mixed_argument() -> SurdPoly:
    """The composite argument x y + u v t."""
    x, y, t = (SurdPoly.variable(v) for v in ("x", "y", "t"))
    u, v = SurdPoly.variable("u"), SurdPoly.variable("v")
    return x * y + u * v * t


def addition_lhs(inst: AdditionInstance) -> SurdPoly:
    """R_n at the composite argument, reduced to canonical form."""
    return mixed_argument().substitute_into(gegenbauer_r(inst.n, inst.alpha))


def addition_coefficient(n: int, k: int, alpha: Fraction) -> Fraction:
    """The k-th expansion coefficient of the addition formula.

    C(n,k) (alpha+k)/(alpha+k/2) (n+2 alpha+1)_k (2 alpha+1)_k
    / (2^{2k} (alpha+1)_k^2); the k = 0 factor (alpha+k)/(alpha+k/2) is 1.
    """
    factor = Fraction(1) if k == 0 else (alpha + k) / (alpha + Fraction(k, 2))
    return (
        Fraction(math.comb(n, k))
        * factor
        * pochhammer(n + 2 * alpha + 1, k)
        * pochhammer(2 * alpha + 1, k)
        / (Fraction(2 ** (2 * k)) * pochhammer(alpha + 1, k) ** 2)
    )


def _rhs_terms(inst: AdditionInstance, with_t_factor: bool) -> list[SurdPoly]:
    n, alpha = inst.n, inst.alpha
    u, v = SurdPoly.variable("u"), SurdPoly.variable("v")
    terms = []
    for k in range(n + 1):
        term = SurdPoly.constant(addition_coefficient(n, k, alpha))
        term = term * u.pow(k)
        term = term * SurdPoly.from_unipoly(gegenbauer_r(n - k, alpha + k), "x")
        term = term * v.pow(k)
        term = term * SurdPoly.from_unipoly(gegenbauer_r(n - k, alpha + k), "y")
        if with_t_factor:
            term = term * SurdPoly.from_unipoly(
                jacobi_r(k, alpha - _HALF, alpha - _HALF), "t"
            )
        terms.append(term)
    return terms


def addition_rhs(inst: AdditionInstance) -> SurdPoly:
    """Expansion side of the addition formula; equals addition_lhs exactly.

    The factor (1-x^2)^{k/2} enters as u^k (reduced canonically), the
    t-dependence through Gegenbauer polynomials of parameter alpha - 1/2.
    """
    total = SurdPoly.zero()
    for term in _rhs_terms(inst, with_t_factor=True):
        total = total + term
    return total


def addition_residual(inst: AdditionInstance) -> SurdPoly:
    return addition_lhs(inst) - addition_rhs(inst)


def product_formula_residual(inst: AdditionInstance) -> SurdPoly:
    """R_n(x) R_n(y) minus the normalized t-average of the addition LHS.

    Integration against (1-t^2)^{alpha-1/2} (scaled to mass 1, which is
    exactly the Gamma prefactor of the product formula) maps t^{2k} to
    (1/2)_k/(alpha+1)_k and kills odd powers; the result has no u, v left.
    """
    if inst.alpha <= -_HALF:
        raise DomainError("product formula requires alpha > -1/2")
    lhs = addition_lhs(inst)
    averaged: dict = {}
    for (a, b, c, e, f), coeff in lhs.terms.items():
        if c % 2 == 1:
            continue
        moment = even_moment(c // 2, inst.alpha - _HALF)
        key = (a, b, 0, e, f)
        averaged[key] = averaged.get(key, Fraction(0)) + coeff * moment
    integral = SurdPoly(averaged)
    product = SurdPoly.from_unipoly(
        gegenbauer_r(inst.n, inst.alpha), "x"
    ) * SurdPoly.from_unipoly(gegenbauer_r(inst.n, inst.alpha), "y")
    return product - integral


def t_one_rhs(inst: AdditionInstance) -> SurdPoly:
    """Expansion side of the t = 1 addition formula (the t-factor is 1 there)."""
    total = SurdPoly.zero()
    for term in _rhs_terms(inst, with_t_factor=False):
        total = total + term
    return total


def t_one_residual(inst: AdditionInstance) -> SurdPoly:
    """Substitute t = 1 in the addition LHS and subtract the t = 1 expansion."""
    return addition_lhs(inst).set_t(1) - t_one_rhs(inst)


def sum_of_squares_terms(n: int, alpha: Fraction) -> list[SurdPoly]:
    """Terms of the x = y, t = 1 specialization: a partition of unity.

    Each term is addition_coefficient(n,k,alpha) (1-x^2)^k
    (R_{n-k}^{(alpha+k)}(x))^2; their sum is 1, which bounds |R_n| by 1
    on [-1, 1].
    """
    alpha = Fraction(alpha)
    if n < 0:
        raise DomainError(f"degree must be >= 0, got {n}")
    if alpha <= -_HALF:
        raise DomainError(f"alpha must exceed -1/2, got {alpha}")
    one_minus_x2 = UniPoly((Fraction(1), Fraction(0), Fraction(-1)))
    terms = []
    for k in range(n + 1):
        poly = gegenbauer_r(n - k, alpha + k)
        uni = (one_minus_x2.pow(k) * poly * poly).scale(
            addition_coefficient(n, k, alpha)
        )
        terms.append(SurdPoly.from_unipoly(uni, "x"))
    return terms


def sum_of_squares_residual(n: int, alpha: Fraction) -> SurdPoly:
    """1 minus the partition of unity; must be zero."""
    total = SurdPoly.zero()
    for term in sum_of_squares_terms(n, alpha):
        total = total + term
    return SurdPoly.one() - total

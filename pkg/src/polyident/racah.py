"""Racah polynomials on the finite quadratic lattice x(x+gamma+delta+1).

A :class:`RacahSystem` fixes parameters (alpha, beta, gamma, delta) with
gamma = -N-1 and validates, at construction, every denominator the closed
forms below can touch over the full index range 0..N.  Parameter
specializations of interest sit near many poles, so failing early with a
list of offending factors beats a ZeroDivisionError deep inside a sweep.

Closed forms (weights, norms, endpoint values) are evaluated through
:func:`polyident.exact.poch_quotient`, whose exact factor cancellation
keeps them finite at parameter ties where individual shifted factorials
vanish on both sides of a quotient; every such value is pinned against a
direct-sum oracle in the tests.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .errors import DegenerateParameterError, DomainError
from .exact import Rational, parse_rational, poch_quotient


@dataclass(frozen=True)
class RacahSystem:
    """Validated Racah parameter tuple with gamma = -N-1.

    N = 0 (a single lattice point, where everything trivializes) is allowed
    so that degenerate corners of parameter sweeps stay in-domain.
    """

    alpha: Fraction
    beta: Fraction
    gamma: Fraction
    delta: Fraction
    N: int

    def __post_init__(self):
        object.__setattr__(self, "alpha", Fraction(self.alpha))
        object.__setattr__(self, "beta", Fraction(self.beta))
        object.__setattr__(self, "gamma", Fraction(self.gamma))
        object.__setattr__(self, "delta", Fraction(self.delta))
        if self.N < 0:
            raise DomainError(f"N must be >= 0, got {self.N}")
        if self.gamma != -self.N - 1:
            raise DomainError(
                f"gamma must equal -N-1 = {-self.N - 1}, got {self.gamma}"
            )
        problems = validation_problems(self)
        if problems:
            raise DegenerateParameterError(
                f"degenerate Racah parameters {self.as_tuple()}: "
                + "; ".join(problems),
                factors=problems,
            )

    def as_tuple(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return (self.alpha, self.beta, self.gamma, self.delta)

    @staticmethod
    def parse(params: str, N: int) -> "RacahSystem":
        """Build from "alpha,beta,gamma,delta" rational strings plus N."""
        parts = [parse_rational(p) for p in params.split(",")]
        if len(parts) != 4:
            raise DomainError(f"expected 4 comma-separated rationals, got {params!r}")
        return RacahSystem(*parts, N=N)


def validation_problems(sys: RacahSystem) -> list[str]:
    """Return diagnostics for every denominator zero over the index range."""
    al, be, ga, de = sys.as_tuple()
    N = sys.N
    problems: list[str] = []

    if ga + de + 1 == 0:
        problems.append("gamma+delta+1 = 0 (weight normalization divisor)")

    # hypergeometric-sum denominators, k = 1..N
    for name, base in (("alpha+1", al + 1), ("beta+delta+1", be + de + 1),
                       ("gamma+1", ga + 1)):
        for k in range(N):
            if base + k == 0:
                problems.append(f"({name})_{{{k + 1}}} = 0 in the series denominator")
                break

    # weights, norms and endpoint closed forms must evaluate everywhere
    for x in range(N + 1):
        try:
            _weight_quotient(x, al, be, ga, de)
        except DegenerateParameterError as exc:
            problems.append(f"weight at x={x}: {'; '.join(exc.factors)}")
    try:
        _h0_closed(N, al, be, ga, de)
    except DegenerateParameterError as exc:
        problems.append(f"total mass closed form: {'; '.join(exc.factors)}")
    for n in range(N + 1):
        try:
            _norm_ratio_closed(n, al, be, ga, de)
        except DegenerateParameterError as exc:
            problems.append(f"norm ratio at n={n}: {'; '.join(exc.factors)}")
        if n >= 1 and al + be + 2 * n + 1 == 0:
            problems.append(f"alpha+beta+2n+1 = 0 at n={n} (norm divisor)")
        try:
            _endpoint_closed(n, al, be, de)
        except DegenerateParameterError as exc:
            problems.append(f"endpoint value at n={n}: {'; '.join(exc.factors)}")
    return problems


def _weight_quotient(x: int, al, be, ga, de) -> Fraction:
    """Orthogonality weight at lattice index x, without the
    (gamma+delta+1+2x)/(gamma+delta+1) normalization factor."""
    return poch_quotient(
        [(al + 1, x), (be + de + 1, x), (ga + 1, x), (ga + de + 1, x)],
        [(-al + ga + de + 1, x), (-be + ga + 1, x), (de + 1, x), (Fraction(1), x)],
    )


def _h0_closed(N: int, al, be, ga, de) -> Fraction:
    return poch_quotient(
        [(al + be + 2, N), (-de, N)],
        [(al - de + 1, N), (be + 1, N)],
    )


def _norm_ratio_closed(n: int, al, be, ga, de) -> Fraction:
    if n == 0:
        return Fraction(1)
    # The (alpha+beta+1)/(alpha+beta+1)_n block cancels its possible zero.
    return poch_quotient(
        [(al + be + 1, 1), (be + 1, n), (al + be - ga + 1, n),
         (al - de + 1, n), (Fraction(1), n)],
        [(al + be + 2 * n + 1, 1), (al + 1, n), (al + be + 1, n),
         (be + de + 1, n), (ga + 1, n)],
    )


def _endpoint_closed(n: int, al, be, de) -> Fraction:
    return poch_quotient(
        [(be + 1, n), (al - de + 1, n)],
        [(al + 1, n), (be + de + 1, n)],
    )


def _check_index(value: int, hi: int, what: str) -> None:
    if not 0 <= value <= hi:
        raise DomainError(f"{what} must lie in 0..{hi}, got {value}")


def _eval_raw(n: int, x: int, al, be, ga, de) -> Fraction:
    """Terminating 4F3 sum defining the polynomial at lattice index x."""
    total = Fraction(0)
    term = Fraction(1)
    for k in range(n + 1):
        total += term
        top = (
            (Fraction(-n) + k)
            * (n + al + be + 1 + k)
            * (Fraction(-x) + k)
            * (x + ga + de + 1 + k)
        )
        if top == 0:
            break
        bot = (al + 1 + k) * (be + de + 1 + k) * (ga + 1 + k) * (k + 1)
        term *= top / bot
    return total


@lru_cache(maxsize=None)
def racah_eval(n: int, x: int, sys: RacahSystem) -> Fraction:
    """Exact value of the degree-n Racah polynomial at lattice index x."""
    _check_index(n, sys.N, "degree n")
    _check_index(x, sys.N, "lattice index x")
    return _eval_raw(n, x, *sys.as_tuple())


@lru_cache(maxsize=None)
def racah_weight(x: int, sys: RacahSystem) -> Fraction:
    """Orthogonality weight w(x) on the lattice 0..N."""
    _check_index(x, sys.N, "lattice index x")
    al, be, ga, de = sys.as_tuple()
    return _weight_quotient(x, al, be, ga, de) * (ga + de + 1 + 2 * x) / (ga + de + 1)


@lru_cache(maxsize=None)
def racah_h0(sys: RacahSystem) -> Fraction:
    """Total weight mass, via its closed form (equal to the direct sum)."""
    al, be, ga, de = sys.as_tuple()
    return _h0_closed(sys.N, al, be, ga, de)


@lru_cache(maxsize=None)
def racah_norm_ratio(n: int, sys: RacahSystem) -> Fraction:
    """Squared-norm ratio h_n / h_0, via its closed form."""
    _check_index(n, sys.N, "degree n")
    return _norm_ratio_closed(n, *sys.as_tuple())


def endpoint_value_residual(n: int, sys: RacahSystem) -> Fraction:
    """racah_eval at x = N minus its Saalschuetz closed form; must be 0."""
    _check_index(n, sys.N, "degree n")
    al, be, _, de = sys.as_tuple()
    return racah_eval(n, sys.N, sys) - _endpoint_closed(n, al, be, de)


def _shifted(sys: RacahSystem) -> tuple:
    al, be, ga, de = sys.as_tuple()
    return (al + 1, be + 1, ga + 1, de)


def backward_shift_residual(n: int, x: int, sys: RacahSystem) -> Fraction:
    """Residual of the degree-lowering, parameter-raising shift identity.

    The identity equates w(x) R_n(x) with a two-point difference of
    (alpha+1, beta+1, gamma+1, delta) quantities.  The displayed prefactors
    (gamma+delta+2)/(gamma+delta+2+2x) cancel the shifted weight's
    normalization exactly, so the residual is computed in that cancelled
    form; the boundary conventions (no second term at x = 0, no first term
    at x = N) are index guards, not limits.
    """
    if n < 1:
        raise DomainError(f"backward shift needs n >= 1, got {n}")
    _check_index(n, sys.N, "degree n")
    _check_index(x, sys.N, "lattice index x")
    s_al, s_be, s_ga, s_de = _shifted(sys)

    lhs = racah_weight(x, sys) * racah_eval(n, x, sys)
    rhs = Fraction(0)
    if x < sys.N:
        rhs += _weight_quotient(x, s_al, s_be, s_ga, s_de) * _eval_raw(
            n - 1, x, s_al, s_be, s_ga, s_de
        )
    if x > 0:
        rhs -= _weight_quotient(x - 1, s_al, s_be, s_ga, s_de) * _eval_raw(
            n - 1, x - 1, s_al, s_be, s_ga, s_de
        )
    return lhs - rhs


def sum_by_parts_residual(n: int, f: Sequence[Rational], sys: RacahSystem) -> Fraction:
    """Residual of summation by parts against an arbitrary lattice function.

    f must supply N+1 values; the right-hand side pairs the shifted-system
    quantities with first differences f(x) - f(x+1).
    """
    if n < 1:
        raise DomainError(f"summation by parts needs n >= 1, got {n}")
    _check_index(n, sys.N, "degree n")
    if len(f) != sys.N + 1:
        raise DomainError(f"f must have {sys.N + 1} values, got {len(f)}")
    fv = [Fraction(v) for v in f]
    s_al, s_be, s_ga, s_de = _shifted(sys)
    lhs = sum(
        racah_weight(x, sys) * racah_eval(n, x, sys) * fv[x]
        for x in range(sys.N + 1)
    )
    rhs = Fraction(0)
    for x in range(sys.N):
        rhs += (
            _weight_quotient(x, s_al, s_be, s_ga, s_de)
            * _eval_raw(n - 1, x, s_al, s_be, s_ga, s_de)
            * (fv[x] - fv[x + 1])
        )
    return lhs - rhs


def gram_matrix(sys: RacahSystem) -> list[list[Fraction]]:
    """Full exact Gram matrix of the system (weighted sums over the lattice)."""
    vals = [
        [racah_eval(n, x, sys) for x in range(sys.N + 1)]
        for n in range(sys.N + 1)
    ]
    w = [racah_weight(x, sys) for x in range(sys.N + 1)]
    return [
        [
            sum(vals[m][x] * vals[n][x] * w[x] for x in range(sys.N + 1))
            for n in range(sys.N + 1)
        ]
        for m in range(sys.N + 1)
    ]

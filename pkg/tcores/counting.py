"""
Exact counts of t-cores in a box and their large-box asymptotics.

A partition in Par_{r,s} is a t-core exactly when each of its t runner words is
justified, so the t-cores are in bijection with the runner size vectors
(a_0, ..., a_{t-1}), 0 <= a_i <= n_i, summing to r. Everything here counts
those vectors, either by a truncated polynomial product or by
inclusion-exclusion, and compares the growth rate with the limiting constant
A(t, κ) and its integral form.
"""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from numbers import Real
from typing import List, Optional, Sequence, Union

import numpy as np
from scipy import integrate

from tcores.abacus import runner_lengths
from tcores.exceptions import ValidationError
from tcores.partition_core import Box, binomial, check_modulus
from tcores.utils.config import get_settings
from tcores.utils.utils import get_logger

logger = get_logger()

Kappa = Union[int, Fraction, float]


def _truncated_product(lengths: Sequence[int], degree: int) -> List[int]:
    # Coefficients up to q^degree of prod (1 + q + ... + q^n); each factor is a
    # sliding-window sum over the previous coefficients.
    coeffs = [1] + [0] * degree
    for n in lengths:
        prefix = [0]
        for c in coeffs:
            prefix.append(prefix[-1] + c)
        coeffs = [prefix[d + 1] - prefix[max(0, d - n)] for d in range(degree + 1)]
    return coeffs


def count_t_cores(box: Box, t: int) -> int:
    """P^t_{r,s} = [q^r] prod_i (1 + q + ... + q^{n_i})."""
    lengths = runner_lengths(box, t)
    count = _truncated_product(lengths, box.rows)[box.rows]
    logger.debug(f"{count} {t}-cores in a {box} box (runner lengths {lengths})")
    return count


def count_t_cores_exact_frame(box: Box, t: int) -> int:
    """
    Number of t-cores with exactly r parts and largest part exactly s.

    Such a core's word starts with a 0 and ends with a 1, i.e. runner 0 is
    forced empty at its first position and runner j = (r+s-1) mod t is forced
    full at its last. Since a runner word is justified, that pins a_0 = 0 and
    a_j = n_j. When r+s = 1 (mod t) both constraints fall on runner 0, which
    is impossible.
    """
    check_modulus(t)
    n = box.semiperimeter
    if n % t == 1:
        return 0
    lengths = runner_lengths(box, t)
    j = (n - 1) % t
    target = box.rows - lengths[j]
    if target < 0:
        return 0
    others = [lengths[i] for i in range(1, t) if i != j]
    return _truncated_product(others, target)[target]


def count_t_cores_large_s(rows: int, t: int) -> int:
    """C(r+t-1, r): the count once s >= rt, where no runner bound binds."""
    check_modulus(t)
    if rows < 0:
        raise ValidationError(f"r must be nonnegative, got {rows}")
    return math.comb(rows + t - 1, rows)


def count_t_cores_inclusion_exclusion(box: Box, t: int) -> int:
    """
    P^t_{r,s} by inclusion-exclusion on the runners whose bound is exceeded.

    Runner lengths take at most two distinct values, so grouping them keeps
    the sum tiny even at r in the thousands:
    Σ prod_g C(m_g, j_g) (-1)^{j_g} C(r - Σ j_g (n_g + 1) + t - 1, t - 1).
    """
    groups = sorted(Counter(runner_lengths(box, t)).items())
    total = 0
    for picks in product(*(range(mult + 1) for _, mult in groups)):
        excess = sum(j * (n + 1) for j, (n, _) in zip(picks, groups))
        if excess > box.rows:
            continue
        weight = math.prod(math.comb(mult, j) for j, (_, mult) in zip(picks, groups))
        sign = -1 if sum(picks) % 2 else 1
        total += sign * weight * binomial(box.rows - excess + t - 1, t - 1)
    return total


# ============================================================================
# ASYMPTOTICS
# ============================================================================

def _as_kappa(kappa: Kappa) -> Union[Fraction, float]:
    if isinstance(kappa, bool) or not isinstance(kappa, Real):
        raise ValidationError(f"kappa must be a positive real number, got {kappa!r}")
    if kappa <= 0 or (isinstance(kappa, float) and not math.isfinite(kappa)):
        raise ValidationError(f"kappa must be a positive real number, got {kappa!r}")
    return kappa if isinstance(kappa, float) else Fraction(kappa)


@dataclass(frozen=True)
class AsymptoticQuery:
    """Modulus t and aspect ratio κ = lim s/r."""

    t: int
    kappa: Kappa

    def __post_init__(self):
        check_modulus(self.t)
        _as_kappa(self.kappa)


def asymptotic_constant_exact(t: int, kappa: Union[int, Fraction]) -> Fraction:
    """
    A(t, κ) as an exact rational for rational κ.

    For κ >= 1: (1/(t-1)!) Σ_{j=0}^{⌊t/(κ+1)⌋} (-1)^j C(t,j) (t - (1+κ)j)^{t-1}.
    For κ < 1 the r <-> s symmetry gives κ^{t-1} A(t, 1/κ).
    """
    check_modulus(t)
    kappa = Fraction(_as_kappa(kappa))
    if kappa < 1:
        return kappa ** (t - 1) * asymptotic_constant_exact(t, 1 / kappa)
    top = math.floor(Fraction(t) / (kappa + 1))
    total = sum(
        (-1) ** j * math.comb(t, j) * (t - (1 + kappa) * j) ** (t - 1) for j in range(top + 1)
    )
    return Fraction(total) / math.factorial(t - 1)


def asymptotic_constant(query: AsymptoticQuery) -> float:
    """A(t, κ); lim P^t_{r,s} / r^{t-1} = A(t, κ) / t^{t-1} as s/r -> κ."""
    return float(asymptotic_constant_exact(query.t, Fraction(query.kappa)))


def convergence_ratio(rows: int, kappa: Union[int, Fraction], t: int) -> float:
    """P^t_{r,⌊κr⌋} t^{t-1} / r^{t-1}, which tends to A(t, κ)."""
    if rows < 1:
        raise ValidationError(f"r must be positive, got {rows}")
    cols = math.floor(Fraction(_as_kappa(kappa)) * rows)
    count = count_t_cores_inclusion_exclusion(Box(rows, cols), t)
    return float(Fraction(count * t ** (t - 1), rows ** (t - 1)))


def _fourier_terms(t: int):
    # (2 sin x)^t as a trigonometric polynomial: (coefficient, frequency, weight).
    # Even t = 2m has cosines plus the constant C(2m, m); odd t has sines only.
    m = t // 2
    if t % 2 == 0:
        terms = [(2 * (-1) ** (m - k) * math.comb(t, k), t - 2 * k, "cos") for k in range(m)]
        return math.comb(t, m), terms
    terms = [(2 * (-1) ** (m - k) * math.comb(t, k), t - 2 * k, "sin") for k in range(m + 1)]
    return 0, terms


def goddard_integral(t: int, tol: float = 1e-8, periods: Optional[int] = None) -> float:
    """
    (1/π) ∫_0^∞ (2 sin x / x)^t dx, which equals A(t, 1).

    [0, X] with X = periods·π is integrated directly, one π-interval at a
    time. On [X, ∞) the numerator (2 sin x)^t is expanded into finitely many
    cosines or sines, so the tail is a sum of Fourier integrals of x^{-t}
    handled by QUADPACK's QAWF routine, plus a closed form for the constant
    term.

    The tail is integrated rather than dropped, so X does not grow as tol
    shrinks: tol only sets the absolute error of each quadrature, and the
    split point stays at the configured number of periods.
    """
    check_modulus(t)
    if not tol > 0:
        raise ValidationError(f"tol must be positive, got {tol!r}")
    periods = periods or get_settings().quad_periods
    X = periods * math.pi

    def integrand(x):
        return (2.0 * np.sinc(x / math.pi)) ** t

    budget = tol / 4
    head = 0.0
    for k in range(periods):
        piece, _ = integrate.quad(
            integrand, k * math.pi, (k + 1) * math.pi, epsabs=budget / periods, epsrel=0, limit=200
        )
        head += piece

    constant, terms = _fourier_terms(t)
    tail = constant * X ** (1 - t) / (t - 1)
    for coefficient, frequency, weight in terms:
        piece, _ = integrate.quad(
            lambda x: x ** (-t), X, np.inf, weight=weight, wvar=frequency, epsabs=budget / len(terms)
        )
        tail += coefficient * piece

    value = (head + tail) / math.pi
    logger.info(f"goddard integral t={t}: head {head / math.pi:.12f}, tail {tail / math.pi:.3e}")
    return value


@dataclass(frozen=True)
class IdentityCheck:
    """Both sides of a numerically checked identity."""

    lhs: float
    rhs: float
    truncation_bound: float

    @property
    def residual(self) -> float:
        return abs(self.lhs - self.rhs)

    def to_json(self):
        return {
            "lhs": self.lhs,
            "rhs": self.rhs,
            "residual": self.residual,
            "truncation_bound": self.truncation_bound,
        }


def swanepoel_check(t: int, x: float, terms: int = 10**6) -> IdentityCheck:
    """
    Partial sum of Σ sin^t(nx)/n^t against (π/2)(x/2)^{t-1} A(t,1) - x^t/2.

    Valid for 0 < x <= 2π/t; the neglected tail is at most 1/((t-1) terms^{t-1}).
    """
    check_modulus(t)
    if terms < 1:
        raise ValidationError(f"terms must be positive, got {terms}")
    limit = 2 * math.pi / t
    if not (0 < x <= limit * (1 + 1e-12)):
        raise ValidationError(f"x must lie in (0, 2π/t] = (0, {limit}], got {x!r}")
    n = np.arange(1, terms + 1, dtype=np.float64)
    lhs = float(np.sum((np.sin(n * x) / n) ** t))
    rhs = (math.pi / 2) * (x / 2) ** (t - 1) * float(asymptotic_constant_exact(t, 1)) - x**t / 2
    return IdentityCheck(lhs=lhs, rhs=rhs, truncation_bound=1 / ((t - 1) * terms ** (t - 1)))

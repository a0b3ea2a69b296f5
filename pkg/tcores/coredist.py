"""
Distribution of the t-core of a uniformly random partition in a box.

The rectangle word of a uniform λ in Par_{r,s} is a uniform choice of r
positions out of r+s, so the runner sizes (a_0, ..., a_{t-1}) follow a
multivariate hypergeometric law with population sizes n_i. The runner sizes
fix the core, and partitions with a given core ρ are exactly the
Littlewood compositions of ρ with quotients μ^j in Par_{a_i, n_i - a_i}.

All probabilities are exact Fractions.
"""
from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

from tcores.abacus import (
    CoreDescriptor,
    core_size,
    descriptor_from_sizes,
    littlewood_compose,
    rectangle_word,
    runner_lengths,
    runner_split,
    t_core_fast,
)
from tcores.counting import count_t_cores
from tcores.exceptions import BoxMismatchError, BudgetExceededError, NotACoreError, ValidationError
from tcores.partition_core import (
    Box,
    CountPolynomial,
    Partition,
    check_modulus,
    enumerate_box,
    fits_in_box,
    gaussian_binomial,
)
from tcores.utils.config import get_settings
from tcores.utils.serialization import format_rational
from tcores.utils.utils import get_logger

logger = get_logger()

Value = Union[int, Fraction]


# ============================================================================
# TYPES
# ============================================================================

@dataclass(frozen=True)
class CompositionVector:
    """Runner sizes (a_0, ..., a_{t-1}) with 0 <= a_i <= n_i and Σ a_i = r."""

    values: Tuple[int, ...]
    bounds: Tuple[int, ...]
    total: int

    def __post_init__(self):
        values, bounds = tuple(self.values), tuple(self.bounds)
        if len(values) != len(bounds):
            raise ValidationError(f"values {values} and bounds {bounds} differ in length")
        if any(not 0 <= a <= n for a, n in zip(values, bounds)):
            raise ValidationError(f"composition {values} violates bounds {bounds}")
        if sum(values) != self.total:
            raise ValidationError(f"composition {values} does not sum to {self.total}")
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "bounds", bounds)


@dataclass(frozen=True)
class DiscreteDistribution:
    """Finite law with exact probabilities; values distinct and sorted."""

    support: Tuple[Tuple[Value, Fraction], ...]

    def __post_init__(self):
        support = tuple((value, Fraction(p)) for value, p in self.support)
        values = [value for value, _ in support]
        if values != sorted(set(values)):
            raise ValidationError("support values must be distinct and sorted")
        if any(p <= 0 for _, p in support):
            raise ValidationError("probabilities must be positive")
        if sum(p for _, p in support) != 1:
            raise ValidationError(f"probabilities sum to {sum(p for _, p in support)}, not 1")
        object.__setattr__(self, "support", support)

    @classmethod
    def from_weights(cls, weights: Mapping[Value, Value]) -> "DiscreteDistribution":
        """Normalise nonnegative weights (integers or rationals) into a distribution."""
        total = sum(weights.values())
        if total <= 0:
            raise ValidationError("weights must have a positive total")
        return cls(tuple((v, Fraction(w) / total) for v, w in sorted(weights.items()) if w))

    @classmethod
    def merge(cls, partials: Iterable[Mapping[Value, Value]]) -> "DiscreteDistribution":
        """
        Combine weight maps computed over disjoint slices of the sample space.

        Addition of exact weights is associative, so any split gives the
        same distribution as a single pass.
        """
        combined: Dict[Value, Value] = defaultdict(int)
        for partial in partials:
            for value, weight in partial.items():
                combined[value] += weight
        return cls.from_weights(combined)

    @property
    def values(self) -> List[Value]:
        return [value for value, _ in self.support]

    @property
    def probabilities(self) -> List[Fraction]:
        return [p for _, p in self.support]

    def probability(self, value: Value) -> Fraction:
        return dict(self.support).get(value, Fraction(0))

    @property
    def mean(self) -> Fraction:
        return sum((Fraction(v) * p for v, p in self.support), Fraction(0))

    @property
    def variance(self) -> Fraction:
        mu = self.mean
        return sum(((Fraction(v) - mu) ** 2 * p for v, p in self.support), Fraction(0))

    def scaled(self, factor: Value) -> "DiscreteDistribution":
        """Law of factor·X."""
        factor = Fraction(factor)
        if factor <= 0:
            raise ValidationError(f"scale factor must be positive, got {factor}")
        return DiscreteDistribution(tuple((Fraction(v) * factor, p) for v, p in self.support))

    def to_json(self, key: str = "size") -> List[Dict[str, object]]:
        return [
            {key: v if isinstance(v, int) else format_rational(v), "p": format_rational(p)}
            for v, p in self.support
        ]


# ============================================================================
# HELPERS
# ============================================================================

def restricted_compositions(bounds: Sequence[int], total: int) -> Iterator[Tuple[int, ...]]:
    """
    All (a_0, ..., a_{k-1}) with 0 <= a_i <= bounds[i] and Σ a_i = total.

    Lexicographic odometer: step the rightmost coordinate that can still grow
    while the suffix after it gives up one unit, then refill that suffix with
    its lexicographically smallest filling.
    """
    k = len(bounds)
    capacity = [0] * (k + 1)
    for i in range(k - 1, -1, -1):
        capacity[i] = capacity[i + 1] + bounds[i]
    if total < 0 or total > capacity[0]:
        return
    if k == 0:
        yield ()
        return

    current = [0] * k

    def fill(first: int, remaining: int) -> None:
        for i in range(first, k):
            current[i] = max(0, remaining - capacity[i + 1])
            remaining -= current[i]

    fill(0, total)
    while True:
        yield tuple(current)
        i, rest = k - 2, current[k - 1]
        while i >= 0 and (current[i] >= bounds[i] or rest == 0):
            rest += current[i]
            i -= 1
        if i < 0:
            return
        current[i] += 1
        fill(i + 1, rest - 1)


def runner_sizes(core: Partition, box: Box, t: int) -> Tuple[int, ...]:
    """Sizes a_i of the runner words of ρ's rectangle word."""
    check_modulus(t)
    return runner_split(rectangle_word(core, box), t).sizes


def _check_core_in_box(core: Partition, box: Box, t: int) -> None:
    check_modulus(t)
    if not fits_in_box(core, box):
        raise BoxMismatchError(f"{core} does not fit in a {box} box")
    if t_core_fast(core, t) != core:
        raise NotACoreError(f"{core} is not a {t}-core")


# ============================================================================
# FIXED CORE
# ============================================================================

def fixed_core_genfun(core: Partition, box: Box, t: int) -> CountPolynomial:
    """q^{|ρ|} prod_i [n_i choose a_i]_{q^t}: partitions in the box with core ρ, by size."""
    _check_core_in_box(core, box, t)
    genfun = CountPolynomial.monomial(core.size)
    for n, a in zip(runner_lengths(box, t), runner_sizes(core, box, t)):
        genfun = genfun * gaussian_binomial(n, a, t)
    return genfun


def fixed_core_count(core: Partition, box: Box, t: int) -> int:
    _check_core_in_box(core, box, t)
    return math.prod(
        math.comb(n, a) for n, a in zip(runner_lengths(box, t), runner_sizes(core, box, t))
    )


def quotient_boxes(core: Partition, box: Box, t: int) -> Tuple[Box, ...]:
    """Box holding μ^j: Par_{a_i, n_i - a_i} with j = (i - r) mod t."""
    _check_core_in_box(core, box, t)
    boxes: List[Optional[Box]] = [None] * t
    for i, (n, a) in enumerate(zip(runner_lengths(box, t), runner_sizes(core, box, t))):
        boxes[(i - box.rows) % t] = Box(a, n - a)
    return tuple(boxes)


def enumerate_with_core(core: Partition, box: Box, t: int) -> Iterator[Partition]:
    """Every λ in Par_{r,s} with core_t(λ) = ρ, via Littlewood composition."""
    ranges = [list(enumerate_box(b)) for b in quotient_boxes(core, box, t)]
    for quotients in product(*ranges):
        yield littlewood_compose(core, quotients, t)


# ============================================================================
# RANDOM CORE
# ============================================================================

def hypergeom_moments(box: Box, t: int, i: int) -> Tuple[Fraction, Fraction]:
    """
    Mean and variance of the size A_i of runner i for uniform λ in Par_{r,s}.

    Variance is taken as 0 when r+s <= 1.
    """
    check_modulus(t)
    if not 0 <= i < t:
        raise ValidationError(f"runner index must be in 0..{t - 1}, got {i}")
    r, s, n = box.rows, box.cols, box.semiperimeter
    n_i = runner_lengths(box, t)[i]
    if n == 0:
        return Fraction(0), Fraction(0)
    mean = Fraction(r * n_i, n)
    if n <= 1:
        return mean, Fraction(0)
    variance = Fraction(r * s * n_i * (n - n_i), n * n * (n - 1))
    return mean, variance


def core_pmf(box: Box, t: int) -> Iterator[Tuple[CompositionVector, CoreDescriptor, Fraction]]:
    """Each t-core of the box with the probability that a uniform λ has it as core."""
    check_modulus(t)
    lengths = runner_lengths(box, t)
    total = math.comb(box.semiperimeter, box.rows)
    for sizes in restricted_compositions(lengths, box.rows):
        weight = math.prod(math.comb(n, a) for n, a in zip(lengths, sizes))
        yield (
            CompositionVector(sizes, lengths, box.rows),
            descriptor_from_sizes(sizes, box.rows, t),
            Fraction(weight, total),
        )


def core_probability(core: Partition, box: Box, t: int) -> Fraction:
    return Fraction(fixed_core_count(core, box, t), math.comb(box.semiperimeter, box.rows))


def exact_core_size_distribution(box: Box, t: int, budget: Optional[int] = None) -> DiscreteDistribution:
    """
    Exact law of |core_t(λ)| for uniform λ in Par_{r,s}.

    There is one composition per t-core, so the work is count_t_cores(b, t);
    beyond ``budget`` compositions this refuses instead of grinding.
    """
    check_modulus(t)
    budget = budget if budget is not None else get_settings().budget
    needed = count_t_cores(box, t)
    if needed > budget:
        raise BudgetExceededError(needed, budget)
    logger.info(f"aggregating {needed} {t}-cores of a {box} box")

    lengths = runner_lengths(box, t)
    weights: Dict[int, int] = defaultdict(int)
    for sizes in restricted_compositions(lengths, box.rows):
        size_ = core_size(descriptor_from_sizes(sizes, box.rows, t))
        weights[size_] += math.prod(math.comb(n, a) for n, a in zip(lengths, sizes))
    return DiscreteDistribution.from_weights(weights)


def expected_core_size(box: Box, t: int) -> Fraction:
    """
    E|core_t(λ)| = rs/((r+s)(r+s-1)) · (C((r+s) mod t, 2) + ⌊(r+s)/t⌋ C(t, 2)).

    Boxes with r+s <= 1 hold only cores and give 0.
    """
    check_modulus(t)
    r, s, n = box.rows, box.cols, box.semiperimeter
    if n <= 1:
        return Fraction(0)
    return Fraction(r * s, n * (n - 1)) * (math.comb(n % t, 2) + (n // t) * math.comb(t, 2))

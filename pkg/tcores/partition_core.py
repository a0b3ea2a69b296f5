"""
Partitions, boxes and Young-diagram operations.

Partitions are stored as tuples of parts, never as cell matrices. This module
also carries the rim-hook t-core oracle, which is deliberately slow and
independent of the abacus machinery in :mod:`tcores.abacus`, and the dense
integer polynomials used for generating functions.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import comb
from typing import Iterator, List, Optional, Sequence, Tuple, Union

from tcores.exceptions import InvalidModulusError, InvalidPartitionError, ValidationError
from tcores.utils.serialization import format_coefficient, parse_coefficient
from tcores.utils.utils import get_logger

logger = get_logger()

Coefficient = Union[int, Fraction]


def check_modulus(t: int) -> int:
    """Reject anything but an integer t >= 2."""
    if isinstance(t, bool) or not isinstance(t, int) or t < 2:
        raise InvalidModulusError(t)
    return t


# ============================================================================
# PARTITIONS AND BOXES
# ============================================================================

@dataclass(frozen=True, order=True)
class Partition:
    """A weakly decreasing sequence of positive integers; ``()`` is the empty partition."""

    parts: Tuple[int, ...] = ()

    def __post_init__(self):
        parts = tuple(self.parts)
        for part in parts:
            if isinstance(part, bool) or not isinstance(part, int) or part <= 0:
                raise InvalidPartitionError(f"Parts must be positive integers, got {list(parts)}")
        for above, below in zip(parts, parts[1:]):
            if below > above:
                raise InvalidPartitionError(f"Parts must be weakly decreasing, got {list(parts)}")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def of(cls, *parts: int) -> "Partition":
        return cls(tuple(parts))

    @classmethod
    def from_parts(cls, parts: Sequence[int]) -> "Partition":
        """Build a partition from a weakly decreasing sequence that may end in zeros."""
        return cls(tuple(p for p in parts if p != 0))

    @classmethod
    def parse(cls, text: str) -> "Partition":
        """
        Parse a comma separated part list such as ``"5,4,4,1"``.

        An empty string (or ``"0"``) is the empty partition. Increasing input is
        rejected, never sorted.
        """
        cleaned = text.strip().strip("()[]")
        if not cleaned or cleaned == "0":
            return cls()
        try:
            parts = tuple(int(chunk) for chunk in cleaned.split(","))
        except ValueError:
            raise InvalidPartitionError(f"Not a comma separated list of integers: {text!r}") from None
        return cls(parts)

    @property
    def size(self) -> int:
        return sum(self.parts)

    @property
    def length(self) -> int:
        return len(self.parts)

    @property
    def largest(self) -> int:
        return self.parts[0] if self.parts else 0

    def part(self, i: int) -> int:
        """The i-th part, 1-indexed, with zeros past the length."""
        return self.parts[i - 1] if 1 <= i <= len(self.parts) else 0

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def __bool__(self) -> bool:
        return bool(self.parts)

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.parts)) + ")" if self.parts else "∅"

    def to_json(self) -> List[int]:
        return list(self.parts)


@dataclass(frozen=True)
class Box:
    """An r x s rectangle; Par_{r,s} is the set of partitions fitting inside."""

    rows: int
    cols: int

    def __post_init__(self):
        for name, value in (("rows", self.rows), ("cols", self.cols)):
            if isinstance(value, bool) or not isinstance(value, int) or value < 0:
                raise ValidationError(f"Box {name} must be a nonnegative integer, got {value!r}")

    @property
    def semiperimeter(self) -> int:
        return self.rows + self.cols

    def transpose(self) -> "Box":
        return Box(self.cols, self.rows)

    def __str__(self) -> str:
        return f"{self.rows}x{self.cols}"


def size(partition: Partition) -> int:
    return partition.size


def length(partition: Partition) -> int:
    return partition.length


def conjugate(partition: Partition) -> Partition:
    """Transpose the Young diagram: the j-th part of the result counts parts >= j."""
    parts = partition.parts
    conj = []
    row = len(parts)
    for j in range(1, partition.largest + 1):
        while row and parts[row - 1] < j:
            row -= 1
        conj.append(row)
    return Partition(tuple(conj))


def fits_in_box(partition: Partition, box: Box) -> bool:
    return partition.length <= box.rows and partition.largest <= box.cols


def _partition_from_ones(ones: Sequence[int], rows: int) -> Partition:
    # ones are the sorted positions (0..r+s-1) of the 1s of the rectangle word
    return Partition.from_parts([ones[rows - i] - rows + i for i in range(1, rows + 1)])


def enumerate_box(box: Box) -> Iterator[Partition]:
    """
    Stream every partition of Par_{r,s} exactly once.

    Order: colexicographic on the set of positions of the 1s in the rectangle
    word (an up step is a 1), starting from ∅ and ending with the full box.
    Only the current r positions are held in memory.
    """
    rows, n = box.rows, box.semiperimeter
    ones = list(range(rows))
    while True:
        yield _partition_from_ones(ones, rows)
        j = 0
        while j < rows and ones[j] + 1 >= (ones[j + 1] if j + 1 < rows else n):
            j += 1
        if j == rows:
            return
        ones[j] += 1
        ones[:j] = range(j)


# ============================================================================
# POLYNOMIALS
# ============================================================================

@dataclass(frozen=True)
class CountPolynomial:
    """
    Dense polynomial with exact coefficients (int or Fraction); index = exponent.

    Trailing zeros are trimmed on construction, so the zero polynomial has no
    coefficients and degree -1.
    """

    coefficients: Tuple[Coefficient, ...] = ()

    def __post_init__(self):
        coeffs = list(self.coefficients)
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, "coefficients", tuple(coeffs))

    @classmethod
    def zero(cls) -> "CountPolynomial":
        return cls(())

    @classmethod
    def one(cls) -> "CountPolynomial":
        return cls((1,))

    @classmethod
    def monomial(cls, exponent: int, coefficient: Coefficient = 1) -> "CountPolynomial":
        if exponent < 0:
            raise ValidationError(f"Exponent must be nonnegative, got {exponent}")
        return cls((0,) * exponent + (coefficient,))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def coefficient(self, exponent: int) -> Coefficient:
        """[q^exponent] of the polynomial; zero outside the stored range."""
        if 0 <= exponent < len(self.coefficients):
            return self.coefficients[exponent]
        return 0

    def __add__(self, other: "CountPolynomial") -> "CountPolynomial":
        longer, shorter = sorted((self.coefficients, other.coefficients), key=len, reverse=True)
        summed = list(longer)
        for i, c in enumerate(shorter):
            summed[i] += c
        return CountPolynomial(tuple(summed))

    def __mul__(self, other: "CountPolynomial") -> "CountPolynomial":
        if not self.coefficients or not other.coefficients:
            return CountPolynomial.zero()
        product = [0] * (len(self.coefficients) + len(other.coefficients) - 1)
        for i, a in enumerate(self.coefficients):
            if a == 0:
                continue
            for j, b in enumerate(other.coefficients):
                product[i + j] += a * b
        return CountPolynomial(tuple(product))

    def shift(self, k: int) -> "CountPolynomial":
        """Multiply by q^k."""
        if not self.coefficients:
            return self
        return CountPolynomial((0,) * k + self.coefficients)

    def substitute_power(self, step: int) -> "CountPolynomial":
        """Replace q by q^step."""
        if step < 1:
            raise ValidationError(f"step must be a positive integer, got {step}")
        if step == 1 or not self.coefficients:
            return self
        spread = [0] * (step * self.degree + 1)
        spread[::step] = self.coefficients
        return CountPolynomial(tuple(spread))

    def truncate(self, max_degree: int) -> "CountPolynomial":
        return CountPolynomial(self.coefficients[: max_degree + 1])

    def evaluate(self, x: Union[int, Fraction, float]):
        """Horner evaluation; exact for int and Fraction arguments."""
        value = 0
        for c in reversed(self.coefficients):
            value = value * x + c
        return value

    def derivative(self) -> "CountPolynomial":
        return CountPolynomial(tuple(i * c for i, c in enumerate(self.coefficients))[1:])

    def is_palindromic(self) -> bool:
        return self.coefficients == self.coefficients[::-1]

    def to_json(self) -> List[str]:
        return [format_coefficient(c) for c in self.coefficients]

    @classmethod
    def from_json(cls, payload: Sequence[str]) -> "CountPolynomial":
        return cls(tuple(parse_coefficient(c) for c in payload))


def gaussian_binomial(m: int, k: int, step: int = 1) -> CountPolynomial:
    """
    The Gaussian polynomial [m choose k]_q with q replaced by q^step.

    k outside 0..m gives the zero polynomial. Built from the product
    prod_{i=1..k} (1 - q^{m-k+i}) / (1 - q^i); every partial product is itself a
    Gaussian polynomial, so each division is exact and can run on a
    coefficient array truncated at the final degree k(m-k).
    """
    if step < 1:
        raise ValidationError(f"step must be a positive integer, got {step}")
    if k < 0 or m < 0 or k > m:
        return CountPolynomial.zero()
    k = min(k, m - k)
    top = k * (m - k)
    coeffs = [1] + [0] * top
    for i in range(1, k + 1):
        a = m - k + i
        for n in range(top, a - 1, -1):
            coeffs[n] -= coeffs[n - a]
        for n in range(i, top + 1):
            coeffs[n] += coeffs[n - i]
    return CountPolynomial(tuple(coeffs)).substitute_power(step)


def box_generating_function(box: Box) -> CountPolynomial:
    """Sum of q^{|λ|} over Par_{r,s}, read off enumerate_box."""
    counts = [0] * (box.rows * box.cols + 1)
    for partition in enumerate_box(box):
        counts[partition.size] += 1
    return CountPolynomial(tuple(counts))


# ============================================================================
# RIM-HOOK ORACLE
# ============================================================================

class HookOrder(str, Enum):
    """Which removable t-rim hook the oracle strips first."""

    TOPMOST = "topmost"
    BOTTOMMOST = "bottommost"


def hook_lengths(partition: Partition) -> List[List[int]]:
    """Hook length of every cell, row by row: arm + leg + 1."""
    conj = conjugate(partition).parts
    return [
        [part - j + conj[j - 1] - i for j in range(1, part + 1)]
        for i, part in enumerate(partition.parts)
    ]


def _find_hook(parts: List[int], t: int, order: HookOrder) -> Optional[Tuple[int, int, int]]:
    # returns (row, column, leg) of the first cell with hook length t;
    # rows are 0-based, columns 1-based
    if not parts:
        return None
    conj = conjugate(Partition(tuple(parts))).parts
    rows = range(len(parts)) if order is HookOrder.TOPMOST else range(len(parts) - 1, -1, -1)
    for i in rows:
        for j in range(1, parts[i] + 1):
            leg = conj[j - 1] - i - 1
            if parts[i] - j + leg + 1 == t:
                return i, j, leg
    return None


def _remove_hook(parts: List[int], row: int, col: int, leg: int) -> List[int]:
    # the rim hook of cell (row, col) runs from the end of `row` down to row + leg;
    # each of those rows drops to the next row's length minus one, the last to col - 1
    shrunk = list(parts)
    for k in range(row, row + leg):
        shrunk[k] = parts[k + 1] - 1
    shrunk[row + leg] = col - 1
    return [p for p in shrunk if p > 0]


def remove_rim_hooks(
    partition: Partition, t: int, order: HookOrder = HookOrder.TOPMOST
) -> Tuple[Partition, int]:
    """
    Strip t-rim hooks until none is left.

    Returns the t-core and the number of hooks removed. The result does not
    depend on ``order``; both orders exist so that this can be tested.
    """
    check_modulus(t)
    parts = list(partition.parts)
    removed = 0
    while True:
        hook = _find_hook(parts, t, order)
        if hook is None:
            break
        parts = _remove_hook(parts, *hook)
        removed += 1
    logger.debug(f"removed {removed} {t}-rim hooks from {partition}")
    return Partition(tuple(parts)), removed


def t_core_by_rim_hooks(partition: Partition, t: int) -> Partition:
    return remove_rim_hooks(partition, t)[0]


def is_t_core(partition: Partition, t: int) -> bool:
    """True iff no cell has hook length exactly t."""
    check_modulus(t)
    return _find_hook(list(partition.parts), t, HookOrder.TOPMOST) is None


def binomial(n: int, k: int) -> int:
    """C(n, k) with the zero convention outside 0 <= k <= n."""
    if k < 0 or n < 0 or k > n:
        return 0
    return comb(n, k)

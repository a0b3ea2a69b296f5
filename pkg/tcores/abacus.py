"""
Abacus encodings of partitions.

An abacus is a bi-infinite 0/1 word that is 1 far to the left and 0 far to the
right. A partition λ corresponds to the balanced abacus whose 1s sit exactly at
the indices λ_i - i (i >= 1). Restricting that word to the indices -r..s-1
gives the rectangle word of λ in an r x s box; reading the rectangle word along
residues mod t gives its t runners. The runner sizes alone determine the
t-core (through the positions of justification), and the runner shapes give
the t-quotient.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple

from tcores.exceptions import (
    BoxMismatchError,
    DescriptorError,
    NotACoreError,
    RunnerShapeError,
    ValidationError,
)
from tcores.partition_core import Box, Partition, check_modulus, fits_in_box
from tcores.utils.utils import get_logger

logger = get_logger()

Word = Tuple[int, ...]


def _check_bits(bits: Sequence[int], what: str) -> Word:
    bits = tuple(bits)
    if any(b not in (0, 1) for b in bits):
        raise ValidationError(f"{what} must contain only 0s and 1s, got {bits}")
    return bits


def _word_str(bits: Sequence[int]) -> str:
    return "".join(map(str, bits))


# ============================================================================
# ABACUS WINDOWS
# ============================================================================

@dataclass(frozen=True, eq=False)
class AbacusWindow:
    """
    Finite view of an abacus: ``bits`` starts at index ``start``.

    Every index left of the window is 1 and every index right of it is 0.
    Equality and hashing use the infinite word, so padded and minimal windows
    of the same abacus compare equal.
    """

    start: int
    bits: Word

    def __post_init__(self):
        object.__setattr__(self, "bits", _check_bits(self.bits, "Abacus bits"))

    @property
    def end(self) -> int:
        """One past the last stored index."""
        return self.start + len(self.bits)

    def bit(self, index: int) -> int:
        if index < self.start:
            return 1
        if index >= self.end:
            return 0
        return self.bits[index - self.start]

    def ones(self) -> List[int]:
        """Indices of the 1s inside the window, largest first."""
        return [self.start + k for k in range(len(self.bits) - 1, -1, -1) if self.bits[k]]

    def normalized(self) -> "AbacusWindow":
        """The shortest window describing the same abacus."""
        lo, hi = 0, len(self.bits)
        while lo < hi and self.bits[lo] == 1:
            lo += 1
        while hi > lo and self.bits[hi - 1] == 0:
            hi -= 1
        return AbacusWindow(self.start + lo, self.bits[lo:hi])

    def segment(self, first: int, stop: int) -> Word:
        """Bits at indices first..stop-1 of the infinite word."""
        return tuple(self.bit(i) for i in range(first, stop))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AbacusWindow):
            return NotImplemented
        mine, theirs = self.normalized(), other.normalized()
        return mine.start == theirs.start and mine.bits == theirs.bits

    def __hash__(self) -> int:
        norm = self.normalized()
        return hash((norm.start, norm.bits))

    def __str__(self) -> str:
        return f"[{self.start}..{self.end - 1}] {_word_str(self.bits)}"

    def to_json(self) -> Dict[str, object]:
        return {"start": self.start, "bits": _word_str(self.bits)}

    @classmethod
    def from_json(cls, payload: Dict[str, object]) -> "AbacusWindow":
        return cls(int(payload["start"]), tuple(int(c) for c in str(payload["bits"])))


def offset(window: AbacusWindow) -> int:
    """
    d(w) = #{i >= 0 : w_i = 1} - #{i < 0 : w_i = 0}.

    Equivalently the window start plus the number of 1s inside the window.
    """
    return window.start + sum(window.bits)


def is_justified(bits: Sequence[int]) -> bool:
    """All 1s come before all 0s."""
    seen_zero = False
    for b in bits:
        if b == 0:
            seen_zero = True
        elif seen_zero:
            return False
    return True


def justify(window: AbacusWindow) -> AbacusWindow:
    """Slide every bead left; the split lands at the offset."""
    return AbacusWindow(offset(window), ())


def to_abacus(partition: Partition) -> AbacusWindow:
    """Balanced abacus of λ: a 1 at index m iff m = λ_i - i for some i >= 1."""
    ell = partition.length
    beads = {part - i for i, part in enumerate(partition.parts, start=1)}
    start = -ell
    bits = tuple(1 if m in beads else 0 for m in range(start, partition.largest))
    return AbacusWindow(start, bits).normalized()


def from_abacus(window: AbacusWindow) -> Tuple[int, Partition]:
    """
    Inverse of the abacus encoding: returns (offset, λ).

    Reading the word left to right, a 1 is an up step and a 0 a right step;
    the i-th largest bead b_i gives λ_i = b_i + i - d.
    """
    d = offset(window)
    parts = [bead + i - d for i, bead in enumerate(window.ones(), start=1)]
    return d, Partition.from_parts(parts)


# ============================================================================
# RECTANGLE WORDS AND RUNNERS
# ============================================================================

@dataclass(frozen=True)
class RectangleWord:
    """The segment w_{-r}..w_{s-1} of the abacus of a partition in an r x s box."""

    bits: Word
    box: Box

    def __post_init__(self):
        bits = _check_bits(self.bits, "Rectangle word")
        if len(bits) != self.box.semiperimeter:
            raise RunnerShapeError(
                f"Rectangle word for box {self.box} must have length {self.box.semiperimeter}, got {len(bits)}"
            )
        if sum(bits) != self.box.rows:
            raise RunnerShapeError(f"Rectangle word for box {self.box} must have {self.box.rows} ones, got {sum(bits)}")
        object.__setattr__(self, "bits", bits)

    def to_partition(self) -> Partition:
        return from_abacus(AbacusWindow(-self.box.rows, self.bits))[1]

    def __str__(self) -> str:
        return _word_str(self.bits)


def rectangle_word(partition: Partition, box: Box) -> RectangleWord:
    if not fits_in_box(partition, box):
        raise BoxMismatchError(f"{partition} does not fit in a {box} box")
    return RectangleWord(to_abacus(partition).segment(-box.rows, box.cols), box)


def runner_lengths(box: Box, t: int) -> Tuple[int, ...]:
    """n_i = floor((r+s+t-1-i)/t): how many of the positions 0..r+s-1 are i mod t."""
    check_modulus(t)
    n = box.semiperimeter
    return tuple((n + t - 1 - i) // t for i in range(t))


@dataclass(frozen=True)
class RunnerDecomposition:
    """The t runner words v^0..v^{t-1} of a rectangle word."""

    words: Tuple[Word, ...]
    t: int
    box: Box

    def __post_init__(self):
        check_modulus(self.t)
        words = tuple(_check_bits(w, "Runner word") for w in self.words)
        if len(words) != self.t:
            raise RunnerShapeError(f"Expected {self.t} runner words, got {len(words)}")
        expected = runner_lengths(self.box, self.t)
        actual = tuple(len(w) for w in words)
        if actual != expected:
            raise RunnerShapeError(f"Runner lengths {actual} do not match {expected} for box {self.box}")
        if sum(map(sum, words)) != self.box.rows:
            raise RunnerShapeError(f"Runner sizes must sum to {self.box.rows}, got {sum(map(sum, words))}")
        object.__setattr__(self, "words", words)

    @property
    def sizes(self) -> Tuple[int, ...]:
        return tuple(sum(w) for w in self.words)

    @property
    def lengths(self) -> Tuple[int, ...]:
        return tuple(len(w) for w in self.words)

    def __str__(self) -> str:
        return "(" + ",".join(_word_str(w) for w in self.words) + ")"


def runner_split(word: RectangleWord, t: int) -> RunnerDecomposition:
    check_modulus(t)
    return RunnerDecomposition(tuple(word.bits[i::t] for i in range(t)), t, word.box)


def runner_merge(decomposition: RunnerDecomposition) -> RectangleWord:
    bits = [0] * decomposition.box.semiperimeter
    for i, w in enumerate(decomposition.words):
        bits[i :: decomposition.t] = w
    return RectangleWord(tuple(bits), decomposition.box)


# ============================================================================
# CORE DESCRIPTORS
# ============================================================================

@dataclass(frozen=True)
class CoreDescriptor:
    """Positions of justification (p_0, ..., p_{t-1}); they sum to zero and name a t-core."""

    positions: Tuple[int, ...]
    t: int

    def __post_init__(self):
        check_modulus(self.t)
        positions = tuple(int(p) for p in self.positions)
        if len(positions) != self.t:
            raise DescriptorError(f"A {self.t}-core descriptor needs {self.t} positions, got {len(positions)}")
        if sum(positions) != 0:
            raise DescriptorError(f"Positions of justification must sum to 0, got {list(positions)}")
        object.__setattr__(self, "positions", positions)

    def to_json(self) -> List[int]:
        return list(self.positions)


def descriptor_from_sizes(sizes: Sequence[int], rows: int, t: int) -> CoreDescriptor:
    """
    Positions of justification from runner sizes a_i of a rectangle word.

    p_j = a_i - floor((r+t-1-i)/t) with j = (i - r) mod t. The column count s
    does not enter.
    """
    positions = [0] * t
    for i, a in enumerate(sizes):
        positions[(i - rows) % t] = a - (rows + t - 1 - i) // t
    return CoreDescriptor(tuple(positions), t)


def positions_of_justification(decomposition: RunnerDecomposition) -> CoreDescriptor:
    return descriptor_from_sizes(decomposition.sizes, decomposition.box.rows, decomposition.t)


def core_size(descriptor: CoreDescriptor) -> int:
    """Σ (t/2) p_j^2 + j p_j, kept in integers as Σ p_j (t p_j + 2j) / 2."""
    t = descriptor.t
    twice = sum(p * (t * p + 2 * j) for j, p in enumerate(descriptor.positions))
    assert twice % 2 == 0, f"odd doubled core size {twice} for {descriptor}"
    return twice // 2


# ============================================================================
# CORE AND QUOTIENT
# ============================================================================

def _runner_levels(partition: Partition, t: int) -> Tuple[List[List[int]], int]:
    # Beta set with N beads, N a multiple of t and N >= ℓ(λ), split by residue.
    # Each runner lists its bead levels (position // t) largest first.
    n_beads = -(-partition.length // t) * t
    runners: List[List[int]] = [[] for _ in range(t)]
    for i in range(1, n_beads + 1):
        bead = partition.part(i) - i + n_beads
        runners[bead % t].append(bead // t)
    return runners, n_beads


def core_descriptor(partition: Partition, t: int) -> CoreDescriptor:
    """Descriptor of core_t(λ), read from the bead count of each runner."""
    check_modulus(t)
    runners, n_beads = _runner_levels(partition, t)
    return CoreDescriptor(tuple(len(levels) - n_beads // t for levels in runners), t)


def t_core_fast(partition: Partition, t: int) -> Partition:
    """core_t(λ) by pushing every runner's beads down to the bottom."""
    check_modulus(t)
    runners, n_beads = _runner_levels(partition, t)
    beads = sorted(
        (k + t * level for k, levels in enumerate(runners) for level in range(len(levels))),
        reverse=True,
    )
    return Partition.from_parts([bead - n_beads + i for i, bead in enumerate(beads, start=1)])


def t_quotient(partition: Partition, t: int) -> Tuple[Partition, ...]:
    check_modulus(t)
    runners, _ = _runner_levels(partition, t)
    quotient = []
    for levels in runners:
        c = len(levels)
        quotient.append(Partition.from_parts([m - (c - i) for i, m in enumerate(levels, start=1)]))
    return tuple(quotient)


def _assemble(positions: Sequence[int], quotients: Sequence[Partition], t: int) -> Partition:
    # Runner k holds beads at levels μ_i - i + p_k for i >= 1. Below the floor
    # level F every runner is full, so the window starts at index t*F.
    floor = min(p - mu.length for p, mu in zip(positions, quotients)) - 1
    beads = []
    for k, (p, mu) in enumerate(zip(positions, quotients)):
        for i in range(1, p - floor + 1):
            beads.append(k + t * (mu.part(i) - i + p))
    start = t * floor
    top = max(beads, default=start - 1)
    occupied = set(beads)
    window = AbacusWindow(start, tuple(1 if m in occupied else 0 for m in range(start, top + 1)))
    d, partition = from_abacus(window)
    assert d == 0, f"assembled abacus has offset {d}"
    return partition


def littlewood_compose(core: Partition, quotients: Sequence[Partition], t: int) -> Partition:
    """The partition with t-core ``core`` and t-quotient ``quotients``."""
    check_modulus(t)
    quotients = tuple(quotients)
    if len(quotients) != t:
        raise ValidationError(f"Expected {t} quotient partitions, got {len(quotients)}")
    if t_core_fast(core, t) != core:
        raise NotACoreError(f"{core} is not a {t}-core")
    return _assemble(core_descriptor(core, t).positions, quotients, t)


def core_from_descriptor(descriptor: CoreDescriptor) -> Partition:
    t = descriptor.t
    return _assemble(descriptor.positions, (Partition(),) * t, t)

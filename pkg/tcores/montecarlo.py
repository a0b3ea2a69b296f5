"""
Seeded sampling of core sizes and the Gamma limit law.

A uniform partition in Par_{r,s} is a uniform r-subset of the r+s positions of
its rectangle word. Core sizes are computed from the runner counts of that
subset alone (positions of justification, then the core-size formula), so no
partition is ever materialised on the hot path.

Reproducibility: the sample index range is cut into fixed chunks, and chunk c
draws from its own PCG64 stream spawned from ``SeedSequence(seed)``. Results
depend on (box, t, n, seed, chunk_size) only, never on the worker count.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Real
from pathlib import Path
from typing import Dict, Iterator, Optional, TextIO, Tuple, Union

import numpy as np
import pandas as pd
from scipy import special, stats

from tcores.abacus import CoreDescriptor, core_size, descriptor_from_sizes, runner_lengths
from tcores.coredist import CompositionVector, DiscreteDistribution, hypergeom_moments, restricted_compositions
from tcores.exceptions import ValidationError
from tcores.partition_core import Box, CountPolynomial, Partition, check_modulus
from tcores.utils.config import get_settings
from tcores.utils.utils import get_logger

logger = get_logger()

# Upper bound on array elements materialised per sub-batch of a chunk
MAX_BATCH_ELEMENTS = 2_000_000

# Word positions encoded as int64 bitmasks by the uniformity check
MAX_MASK_BITS = 62


# ============================================================================
# TYPES
# ============================================================================

@dataclass(frozen=True)
class GammaParams:
    """Gamma(shape α, rate β): density ∝ x^{α-1} e^{-βx}."""

    shape: Union[Fraction, float]
    rate: Union[Fraction, float]

    def __post_init__(self):
        if not self.shape > 0 or not self.rate > 0:
            raise ValidationError(f"Gamma shape and rate must be positive, got {self.shape}, {self.rate}")

    @property
    def mean(self):
        return self.shape / self.rate

    @property
    def variance(self):
        return self.shape / self.rate**2

    def cdf(self, x):
        """Regularised lower incomplete gamma P(α, βx); zero for x <= 0."""
        x = np.clip(np.asarray(x, dtype=np.float64), 0.0, None)
        return special.gammainc(float(self.shape), float(self.rate) * x)

    def pdf(self, x):
        return stats.gamma.pdf(x, a=float(self.shape), scale=1.0 / float(self.rate))


@dataclass
class SampleRun:
    """n i.i.d. copies of t·|core_t(λ)|/r for uniform λ in the box, plus runner counts."""

    box: Box
    t: int
    n_samples: int
    seed: int
    values: np.ndarray
    runner_counts: Optional[np.ndarray] = field(default=None, repr=False)

    def __post_init__(self):
        if len(self.values) != self.n_samples:
            raise ValidationError(f"expected {self.n_samples} values, got {len(self.values)}")

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({"value": self.values})

    def header(self) -> str:
        return f"# box={self.box} t={self.t} n_samples={self.n_samples} seed={self.seed}"

    def to_csv(self, target: Union[str, Path, TextIO]) -> None:
        """One value per line under a ``# box=... t=... seed=...`` comment and a ``value`` header."""
        if isinstance(target, (str, Path)):
            with open(target, "w", newline="") as handle:
                self.to_csv(handle)
            return
        target.write(self.header() + "\n")
        self.to_frame().to_csv(target, index=False, float_format="%.10g", lineterminator="\n")


@dataclass(frozen=True)
class FitReport:
    """Moment errors and KS distance of a sample against a Gamma law."""

    n: int
    sample_mean: float
    sample_variance: float
    gamma_mean: float
    gamma_variance: float
    ks_distance: float
    ks_pvalue: float
    covariance_error: Optional[float] = None

    @property
    def mean_error(self) -> float:
        return abs(self.sample_mean - self.gamma_mean)

    @property
    def variance_error(self) -> float:
        return abs(self.sample_variance - self.gamma_variance)

    def to_json(self) -> Dict[str, object]:
        return {
            "n": self.n,
            "sample_mean": self.sample_mean,
            "sample_variance": self.sample_variance,
            "gamma_mean": self.gamma_mean,
            "gamma_variance": self.gamma_variance,
            "mean_error": self.mean_error,
            "variance_error": self.variance_error,
            "ks_distance": self.ks_distance,
            "ks_pvalue": self.ks_pvalue,
            "covariance_error": self.covariance_error,
        }


# ============================================================================
# SAMPLING
# ============================================================================

def _seed_sequence(seed: int) -> np.random.SeedSequence:
    if seed < 0:
        raise ValidationError(f"seed must be nonnegative, got {seed}")
    return np.random.SeedSequence(seed)


def _sample_positions(rng: np.random.Generator, box: Box, m: int) -> np.ndarray:
    # m independent uniform r-subsets of 0..r+s-1, one per row, sorted
    n = box.semiperimeter
    keys = rng.permuted(np.tile(np.arange(n, dtype=np.int64), (m, 1)), axis=1)
    return np.sort(keys[:, : box.rows], axis=1)


def _positions_to_partition(ones: np.ndarray, rows: int) -> Partition:
    return Partition.from_parts([int(ones[rows - i]) - rows + i for i in range(1, rows + 1)])


def sample_uniform_partition(box: Box, rng: np.random.Generator) -> Partition:
    """A partition drawn with probability exactly 1/C(r+s, r)."""
    return _positions_to_partition(_sample_positions(rng, box, 1)[0], box.rows)


def _core_sizes_from_counts(counts: np.ndarray, box: Box, t: int) -> np.ndarray:
    # vectorised positions of justification and core-size formula
    r = box.rows
    base = np.array([(r + t - 1 - i) // t for i in range(t)], dtype=np.int64)
    target = np.array([(i - r) % t for i in range(t)], dtype=np.int64)
    positions = np.empty_like(counts)
    positions[:, target] = counts - base
    j = np.arange(t, dtype=np.int64)
    return (positions * (t * positions + 2 * j)).sum(axis=1) // 2


def _sample_chunk(box: Box, t: int, m: int, seed_seq: np.random.SeedSequence) -> np.ndarray:
    rng = np.random.Generator(np.random.PCG64(seed_seq))
    batch = max(1, MAX_BATCH_ELEMENTS // max(1, box.semiperimeter))
    blocks = []
    done = 0
    while done < m:
        size_ = min(batch, m - done)
        ones = _sample_positions(rng, box, size_)
        residues = ones % t + t * np.arange(size_, dtype=np.int64)[:, None]
        blocks.append(np.bincount(residues.ravel(), minlength=size_ * t).reshape(size_, t))
        done += size_
    return np.concatenate(blocks) if blocks else np.zeros((0, t), dtype=np.int64)


def sample_runner_counts(
    box: Box,
    t: int,
    n: int,
    seed: int,
    workers: Optional[int] = None,
    chunk_size: Optional[int] = None,
) -> np.ndarray:
    """(n, t) array of runner sizes a_i for n uniform partitions of the box."""
    check_modulus(t)
    if n < 1:
        raise ValidationError(f"n must be positive, got {n}")
    settings = get_settings()
    workers = workers or settings.workers
    chunk_size = chunk_size or settings.chunk_size
    sizes = [min(chunk_size, n - start) for start in range(0, n, chunk_size)]
    seeds = _seed_sequence(seed).spawn(len(sizes))
    logger.info(f"sampling {n} partitions of a {box} box in {len(sizes)} chunks on {workers} workers")
    with ThreadPoolExecutor(max_workers=workers) as pool:
        chunks = list(pool.map(lambda args: _sample_chunk(box, t, *args), zip(sizes, seeds)))
    return np.concatenate(chunks)


def sample_core_sizes(
    box: Box,
    t: int,
    n: int,
    seed: int = 0,
    workers: Optional[int] = None,
    chunk_size: Optional[int] = None,
) -> SampleRun:
    """n seeded draws of t·|core_t(λ)|/r for uniform λ in Par_{r,s}."""
    check_modulus(t)
    if box.rows < 1:
        raise ValidationError("sampling needs at least one row (r >= 1)")
    counts = sample_runner_counts(box, t, n, seed, workers, chunk_size)
    values = t * _core_sizes_from_counts(counts, box, t) / box.rows
    return SampleRun(box=box, t=t, n_samples=n, seed=seed, values=values, runner_counts=counts)


def sample_from_distribution(
    dist: DiscreteDistribution,
    scale: Union[Fraction, float],
    n: int,
    seed: int,
    box: Box,
    t: int,
) -> SampleRun:
    """Draw from an exact law, scaled, as a SampleRun (e.g. the exact Par_{12,12} law)."""
    if n < 1:
        raise ValidationError(f"n must be positive, got {n}")
    rng = np.random.Generator(np.random.PCG64(_seed_sequence(seed)))
    support = np.array([float(v) for v in dist.values])
    weights = np.array([float(p) for p in dist.probabilities])
    draws = rng.choice(support, size=n, p=weights / weights.sum())
    return SampleRun(box=box, t=t, n_samples=n, seed=seed, values=draws * float(scale))


# ============================================================================
# LARGE-s LIMIT
# ============================================================================

def large_s_core_pmf(rows: int, t: int) -> Iterator[Tuple[CompositionVector, CoreDescriptor, Fraction]]:
    """
    Law of the core as s -> ∞: runner sizes become multinomial(r; 1/t, ..., 1/t).

    Once s >= rt no runner bound binds, and the descriptor of a composition
    does not depend on s.
    """
    check_modulus(t)
    if rows < 0:
        raise ValidationError(f"r must be nonnegative, got {rows}")
    bounds = (rows,) * t
    denominator = t**rows
    for sizes in restricted_compositions(bounds, rows):
        weight = math.factorial(rows)
        for a in sizes:
            weight //= math.factorial(a)
        yield (
            CompositionVector(sizes, bounds, rows),
            descriptor_from_sizes(sizes, rows, t),
            Fraction(weight, denominator),
        )


def pgf_large_s(rows: int, t: int) -> CountPolynomial:
    """φ(z) = Σ_a multinomial(r; a) z^{|core(a)|} / t^r."""
    coefficients: Dict[int, Fraction] = {}
    for _, descriptor, probability in large_s_core_pmf(rows, t):
        size_ = core_size(descriptor)
        coefficients[size_] = coefficients.get(size_, Fraction(0)) + probability
    dense = [Fraction(0)] * (max(coefficients) + 1)
    for size_, p in coefficients.items():
        dense[size_] = p
    return CountPolynomial(tuple(dense))


def _exact_or_float(kappa):
    if isinstance(kappa, bool) or not isinstance(kappa, Real) or not kappa > 0:
        raise ValidationError(f"kappa must be a positive real number, got {kappa!r}")
    return kappa if isinstance(kappa, float) else Fraction(kappa)


def gamma_params(t: int, kappa: Union[int, Fraction, float]) -> GammaParams:
    """Shape (t-1)/2 and rate (1+κ)/(κt); exact when κ is rational."""
    check_modulus(t)
    kappa = _exact_or_float(kappa)
    if isinstance(kappa, float):
        return GammaParams(shape=(t - 1) / 2, rate=(1 + kappa) / (kappa * t))
    return GammaParams(shape=Fraction(t - 1, 2), rate=(1 + kappa) / (kappa * t))


def limiting_mean(t: int, kappa: Union[int, Fraction]) -> Fraction:
    """lim E[t|core|/r] = C(t,2) κ/(1+κ)."""
    check_modulus(t)
    kappa = Fraction(_exact_or_float(kappa))
    return math.comb(t, 2) * kappa / (1 + kappa)


# ============================================================================
# DIAGNOSTICS
# ============================================================================

def runner_covariance(run: SampleRun) -> Tuple[np.ndarray, np.ndarray]:
    """
    Empirical covariance of the normalised runner counts and its limit.

    Z_i = (A_i - E A_i)/sqrt(r/t) tends to a normal vector with covariance
    σ²(I - J/t), σ² = κ/(1+κ), κ = s/r.
    """
    if run.runner_counts is None:
        raise ValidationError("run carries no runner counts")
    box, t = run.box, run.t
    means = np.array([float(hypergeom_moments(box, t, i)[0]) for i in range(t)])
    z = (run.runner_counts - means) / math.sqrt(box.rows / t)
    empirical = np.cov(z, rowvar=False)
    kappa = box.cols / box.rows
    sigma2 = kappa / (1 + kappa)
    expected = sigma2 * (np.eye(t) - np.ones((t, t)) / t)
    return empirical, expected


def gamma_fit_report(run: SampleRun, gamma: GammaParams, with_covariance: bool = False) -> FitReport:
    if run.n_samples < 1:
        raise ValidationError("cannot fit an empty run")
    values = np.asarray(run.values, dtype=np.float64)
    ks = stats.kstest(values, gamma.cdf)
    covariance_error = None
    if with_covariance and run.runner_counts is not None and run.n_samples > 1:
        empirical, expected = runner_covariance(run)
        covariance_error = float(np.max(np.abs(empirical - expected)))
    report = FitReport(
        n=run.n_samples,
        sample_mean=float(values.mean()),
        sample_variance=float(values.var(ddof=1)) if run.n_samples > 1 else 0.0,
        gamma_mean=float(gamma.mean),
        gamma_variance=float(gamma.variance),
        ks_distance=float(ks.statistic),
        ks_pvalue=float(ks.pvalue),
        covariance_error=covariance_error,
    )
    logger.info(f"gamma fit over {report.n} samples: KS {report.ks_distance:.4f}, mean error {report.mean_error:.4f}")
    return report


def histogram(values: np.ndarray, bins: int, gamma: Optional[GammaParams] = None) -> pd.DataFrame:
    """Plot-ready bins: bin_left, bin_right, count, density (+ gamma_density at bin centres)."""
    counts, edges = np.histogram(np.asarray(values, dtype=np.float64), bins=bins)
    widths = np.diff(edges)
    frame = pd.DataFrame(
        {
            "bin_left": edges[:-1],
            "bin_right": edges[1:],
            "count": counts,
            "density": counts / (counts.sum() * widths),
        }
    )
    if gamma is not None:
        frame["gamma_density"] = gamma.pdf((edges[:-1] + edges[1:]) / 2)
    return frame


def distribution_histogram(
    dist: DiscreteDistribution, scale: Union[Fraction, float], total: int, gamma: Optional[GammaParams] = None
) -> pd.DataFrame:
    """
    One bin per support value of an exact law scaled by ``scale``.

    ``count`` is the number of partitions (probability × total) and bins are
    centred on the lattice points, width ``scale``.
    """
    width = float(scale)
    centres = np.array([float(v) * width for v in dist.values])
    counts = np.array([int(p * total) for p in dist.probabilities], dtype=np.int64)
    frame = pd.DataFrame(
        {
            "bin_left": centres - width / 2,
            "bin_right": centres + width / 2,
            "count": counts,
            "density": [float(p) / width for p in dist.probabilities],
        }
    )
    if gamma is not None:
        frame["gamma_density"] = gamma.pdf(centres)
    return frame


def chi_square_uniformity(box: Box, n: int, seed: int) -> Tuple[float, float]:
    """
    Chi-squared statistic and p-value of sampled partition frequencies over Par_{r,s}.

    Each sample is encoded by the bitmask of its chosen word positions.
    """
    if n < 1:
        raise ValidationError(f"n must be positive, got {n}")
    if box.semiperimeter > MAX_MASK_BITS:
        raise ValidationError(
            f"uniformity check needs r + s <= {MAX_MASK_BITS}, got {box.semiperimeter}"
        )
    rng = np.random.Generator(np.random.PCG64(_seed_sequence(seed)))
    ones = _sample_positions(rng, box, n)
    masks = (np.int64(1) << ones).sum(axis=1)
    _, counts = np.unique(masks, return_counts=True)
    outcomes = math.comb(box.semiperimeter, box.rows)
    observed = np.zeros(outcomes, dtype=np.int64)
    observed[: len(counts)] = counts
    result = stats.chisquare(observed)
    return float(result.statistic), float(result.pvalue)

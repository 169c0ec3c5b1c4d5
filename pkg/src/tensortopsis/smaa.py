"""Monte Carlo sensitivity analysis of the ranking over feature weights.

Feature weights are drawn from per-feature specs (fixed points, uniform
intervals, or a remainder closing the simplex), the tensor TOPSIS pipeline
ranks the alternatives for each draw, and the position counts accumulate
into a percentage matrix. Each iteration owns an RNG stream derived from
the master seed and the iteration index, so results are bit-identical
regardless of how iterations are scheduled across workers.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from joblib import Parallel, delayed
from sklearn.base import BaseEstimator

from .errors import (
    LengthMismatchError,
    NegativeRemainderError,
    ShapeMismatchError,
    WeightSumError,
)
from .features import FeatureTensor
from .tensor import WeightScheme
from .topsis import rank

MAX_CONSECUTIVE_REJECTIONS = 1000


@dataclass(frozen=True)
class PointWeight:
    """A feature weight fixed at a constant value."""

    value: float

    def __post_init__(self):
        if not 0.0 <= self.value <= 1.0:
            raise ValueError(f"point weight must lie in [0, 1], got {self.value}")


@dataclass(frozen=True)
class UniformWeight:
    """A feature weight drawn uniformly from [low, high]."""

    low: float
    high: float

    def __post_init__(self):
        if not (0.0 <= self.low < self.high <= 1.0):
            raise ValueError(
                f"uniform bounds must satisfy 0 <= low < high <= 1, got [{self.low}, {self.high}]"
            )


@dataclass(frozen=True)
class RemainderWeight:
    """One minus the sum of all other feature weights."""


@dataclass(frozen=True)
class FeatureWeightSampler:
    """Per-feature weight specs producing simplex vectors.

    With a remainder entry the vector sums to one by construction and a
    draw is rejected whenever the remainder would go negative. Without
    one, draws are normalized by their sum.
    """

    specs: tuple

    def __post_init__(self):
        specs = tuple(self.specs)
        if not specs:
            raise ValueError("at least one feature weight spec is required")
        n_remainder = sum(isinstance(s, RemainderWeight) for s in specs)
        if n_remainder > 1:
            raise ValueError(f"at most one remainder spec is allowed, got {n_remainder}")
        for spec in specs:
            if not isinstance(spec, (PointWeight, UniformWeight, RemainderWeight)):
                raise TypeError(f"unknown weight spec {spec!r}")
        object.__setattr__(self, "specs", specs)

    @property
    def n_features(self) -> int:
        return len(self.specs)

    @property
    def has_remainder(self) -> bool:
        return any(isinstance(s, RemainderWeight) for s in self.specs)

    @classmethod
    def fixed(cls, values) -> "FeatureWeightSampler":
        return cls(tuple(PointWeight(float(v)) for v in values))


def _draw_alpha(sampler: FeatureWeightSampler, rng: np.random.Generator) -> tuple[np.ndarray, int]:
    """One accepted draw plus the number of rejected attempts before it."""
    rejections = 0
    while True:
        alpha = np.empty(sampler.n_features)
        remainder_at = None
        for k, spec in enumerate(sampler.specs):
            if isinstance(spec, PointWeight):
                alpha[k] = spec.value
            elif isinstance(spec, UniformWeight):
                alpha[k] = rng.uniform(spec.low, spec.high)
            else:
                remainder_at = k
        if remainder_at is None:
            total = alpha.sum()
            if total <= 0.0:
                raise WeightSumError("sampled feature weights sum to zero")
            return alpha / total, rejections
        rest = alpha.sum() - alpha[remainder_at]
        if rest <= 1.0:
            alpha[remainder_at] = 1.0 - rest
            return alpha, rejections
        rejections += 1
        if rejections >= MAX_CONSECUTIVE_REJECTIONS:
            raise NegativeRemainderError(
                f"remainder weight stayed negative for {rejections} consecutive draws; "
                "check the interval bounds"
            )


def sample_alpha(sampler: FeatureWeightSampler, rng: np.random.Generator) -> np.ndarray:
    """Draw one feature-weight vector on the simplex."""
    alpha, _ = _draw_alpha(sampler, rng)
    return alpha


def iteration_rng(seed: int, iteration: int) -> np.random.Generator:
    """Independent RNG stream for one iteration of a seeded simulation.

    Streams are non-overlapping jumps of a counter-based Philox generator,
    so iteration i always sees the same stream no matter which worker runs
    it.
    """
    return np.random.Generator(np.random.Philox(key=seed).jumped(iteration))


@dataclass(frozen=True)
class SeedRecord:
    """Provenance of a simulation: generator name and master seed."""

    generator: str
    seed: int


@dataclass(frozen=True)
class PercentageMatrix:
    """How often each alternative landed on each rank position, in percent."""

    values: np.ndarray                  # (alternatives, positions), percent
    counts: np.ndarray                  # same grid, raw iteration counts
    iterations: int
    alternative_ids: tuple[str, ...]
    seed: SeedRecord
    rejections: int = 0

    def __post_init__(self):
        values = np.array(self.values, dtype=float)
        counts = np.array(self.counts, dtype=np.int64)
        m = len(self.alternative_ids)
        if values.shape != (m, m) or counts.shape != (m, m):
            raise ShapeMismatchError(
                f"percentage matrix must be {m}x{m}, got {values.shape} and {counts.shape}"
            )
        if (values < 0).any() or (values > 100).any():
            raise ValueError("percentages must lie in [0, 100]")
        row_sums = values.sum(axis=1)
        col_sums = values.sum(axis=0)
        if np.abs(row_sums - 100).max() > 1e-6 or np.abs(col_sums - 100).max() > 1e-6:
            raise ValueError("every row and column must sum to 100")
        values.setflags(write=False)
        counts.setflags(write=False)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "counts", counts)
        object.__setattr__(self, "alternative_ids", tuple(self.alternative_ids))


def _count_range(
    feature_tensor: FeatureTensor,
    criterion_weights: np.ndarray,
    sampler: FeatureWeightSampler,
    seed: int,
    start: int,
    stop: int,
) -> tuple[np.ndarray, int]:
    m = feature_tensor.n_alternatives
    counts = np.zeros((m, m), dtype=np.int64)
    rejections = 0
    positions = np.arange(m)
    for iteration in range(start, stop):
        rng = iteration_rng(seed, iteration)
        alpha, rejected = _draw_alpha(sampler, rng)
        rejections += rejected
        result = rank(feature_tensor, WeightScheme(criterion_weights, alpha))
        counts[np.asarray(result.order), positions] += 1
    return counts, rejections


def run_smaa(
    feature_tensor: FeatureTensor,
    criterion_weights,
    sampler: FeatureWeightSampler,
    iterations: int = 10_000,
    seed: int | None = None,
    n_jobs: int = 1,
) -> PercentageMatrix:
    """Simulate the ranking under sampled feature weights.

    Parameters
    ----------
    feature_tensor : FeatureTensor
        Alternatives x criteria x features input.
    criterion_weights : array-like
        Fixed criterion weights (simplex).
    sampler : FeatureWeightSampler
        Per-feature weight specs.
    iterations : int
        Number of Monte Carlo draws.
    seed : int or None
        Master seed; a fresh one is drawn (and recorded) when omitted.
    n_jobs : int
        Iterations are split into contiguous chunks over this many workers;
        the result is identical for any value.

    Returns
    -------
    PercentageMatrix with counts, percentages, seed record and the number
    of rejected remainder draws.
    """
    if iterations < 1:
        raise ValueError(f"iterations must be positive, got {iterations}")
    if sampler.n_features != feature_tensor.n_features:
        raise LengthMismatchError(
            f"sampler covers {sampler.n_features} features, tensor has {feature_tensor.n_features}"
        )
    if seed is None:
        seed = int(np.random.SeedSequence().entropy) % (2**63)
    weights = np.asarray(criterion_weights, dtype=float)

    if n_jobs == 1:
        counts, rejections = _count_range(feature_tensor, weights, sampler, seed, 0, iterations)
    else:
        bounds = np.linspace(0, iterations, abs(n_jobs) + 1, dtype=int)
        chunks = Parallel(n_jobs=n_jobs)(
            delayed(_count_range)(feature_tensor, weights, sampler, seed, int(lo), int(hi))
            for lo, hi in zip(bounds[:-1], bounds[1:])
        )
        counts = sum(c for c, _ in chunks)
        rejections = sum(r for _, r in chunks)

    values = counts * (100.0 / iterations)
    return PercentageMatrix(
        values=values,
        counts=counts,
        iterations=iterations,
        alternative_ids=feature_tensor.alternative_ids,
        seed=SeedRecord(generator="philox", seed=seed),
        rejections=rejections,
    )


@dataclass(frozen=True)
class MostLikelyRanking:
    """Per position, the alternative that landed there most often.

    A position is flagged when its winner also wins another position; the
    conflict is reported, never resolved.
    """

    alternatives: tuple[str, ...]
    percentages: tuple[float, ...]
    conflicted: tuple[bool, ...]

    @property
    def is_consistent(self) -> bool:
        return not any(self.conflicted)

    @property
    def conflicted_positions(self) -> tuple[int, ...]:
        """1-based rank positions whose winner is ambiguous."""
        return tuple(i + 1 for i, flag in enumerate(self.conflicted) if flag)


def most_likely_ranking(matrix: PercentageMatrix) -> MostLikelyRanking:
    """Column-wise argmax of the percentage matrix, with conflict flags."""
    winners = matrix.values.argmax(axis=0)
    ids = matrix.alternative_ids
    seen: dict[int, int] = {}
    for winner in winners:
        seen[winner] = seen.get(int(winner), 0) + 1
    conflicted = tuple(seen[int(w)] > 1 for w in winners)
    return MostLikelyRanking(
        alternatives=tuple(ids[w] for w in winners),
        percentages=tuple(float(matrix.values[w, pos]) for pos, w in enumerate(winners)),
        conflicted=conflicted,
    )


class SmaaAnalysis(BaseEstimator):
    """Estimator wrapper around run_smaa.

    Parameters
    ----------
    sampler : FeatureWeightSampler
    criterion_weights : array-like or None (equal weights when omitted)
    iterations, seed, n_jobs : passed through to run_smaa
    """

    def __init__(self, sampler=None, criterion_weights=None, iterations=10_000, seed=None, n_jobs=1):
        self.sampler = sampler
        self.criterion_weights = criterion_weights
        self.iterations = iterations
        self.seed = seed
        self.n_jobs = n_jobs

    def fit(self, X: FeatureTensor, y=None):
        if self.sampler is None:
            raise ValueError("a FeatureWeightSampler is required")
        n = X.n_criteria
        weights = (
            self.criterion_weights if self.criterion_weights is not None else np.full(n, 1.0 / n)
        )
        self.percentage_matrix_ = run_smaa(
            X, weights, self.sampler, iterations=self.iterations, seed=self.seed, n_jobs=self.n_jobs
        )
        self.most_likely_ = most_likely_ranking(self.percentage_matrix_)
        return self

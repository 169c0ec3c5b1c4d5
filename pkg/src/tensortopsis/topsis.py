"""Tensor TOPSIS: normalize, weigh, ideal points, distances, closeness, rank.

The pipeline aggregates a feature tensor into one closeness score per
alternative. With a single current-value feature it degenerates to the
classical matrix TOPSIS.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from .errors import LengthMismatchError, ZeroColumnError
from .features import FeatureDirection, FeatureTensor
from .tensor import Direction, WeightScheme, validate_weights


@dataclass(frozen=True)
class IdealPoints:
    """Best and worst weighted value per (criterion, feature) cell."""

    positive: np.ndarray  # shape (criteria, features)
    negative: np.ndarray


@dataclass(frozen=True)
class RankingResult:
    """Closeness scores with the induced order and audit intermediates."""

    closeness: np.ndarray                 # one score in [0, 1] per alternative
    order: tuple[int, ...]                # alternative indices, best first
    ranked_ids: tuple[str, ...]           # alternative ids, best first
    ties: tuple[tuple[str, ...], ...]     # groups with identical closeness
    normalized: FeatureTensor
    weighted: FeatureTensor
    ideals: IdealPoints
    distance_positive: np.ndarray
    distance_negative: np.ndarray


def normalize(feature_tensor: FeatureTensor) -> FeatureTensor:
    """Scale each (criterion, feature) column to unit Euclidean norm.

    The divisor is the norm over alternatives, so columns of different
    units and magnitudes become comparable. Columns of scale-free features
    (dimensionless ratios) are kept as they are: they carry no unit to
    cancel, and dividing them by a column norm would inflate near-constant
    columns into dominant ones.
    """
    values = feature_tensor.values
    norms = np.sqrt((values**2).sum(axis=0))  # (criteria, features)
    normalized = np.empty_like(values)
    for k, kind in enumerate(feature_tensor.feature_kinds):
        if kind.scale_free:
            normalized[:, :, k] = values[:, :, k]
            continue
        zero = norms[:, k] == 0.0
        if zero.any():
            j = int(np.argmax(zero))
            raise ZeroColumnError(
                f"all-zero column for criterion {feature_tensor.criterion_ids[j]!r}, "
                f"feature {kind.name!r}"
            )
        normalized[:, :, k] = values[:, :, k] / norms[:, k]
    return feature_tensor.with_values(normalized)


def weigh(normalized: FeatureTensor, scheme: WeightScheme) -> FeatureTensor:
    """Multiply each entry by its criterion weight and its feature weight."""
    if not scheme.has_fixed_features:
        raise LengthMismatchError("weighting requires a fixed feature-weight vector")
    validate_weights(scheme, normalized.n_criteria, normalized.n_features)
    w = scheme.criterion_weights
    alpha = scheme.feature_weights
    values = normalized.values * w[None, :, None] * alpha[None, None, :]
    return normalized.with_values(values)


def _positive_is_max(weighted: FeatureTensor) -> np.ndarray:
    """Boolean (criteria, features) grid: does the positive ideal take the max?

    Benefit features always do, cost features never do, and criterion-
    dependent features follow their criterion's direction.
    """
    n, h = weighted.n_criteria, weighted.n_features
    crit_benefit = np.array(
        [d is Direction.BENEFIT for d in weighted.criterion_directions]
    )
    mask = np.empty((n, h), dtype=bool)
    for k, kind in enumerate(weighted.feature_kinds):
        if kind.direction_class is FeatureDirection.BENEFIT:
            mask[:, k] = True
        elif kind.direction_class is FeatureDirection.COST:
            mask[:, k] = False
        else:
            mask[:, k] = crit_benefit
    return mask


def ideal_points(weighted: FeatureTensor) -> IdealPoints:
    """Extract the direction-aware best and worst value over alternatives."""
    values = weighted.values
    highs = values.max(axis=0)
    lows = values.min(axis=0)
    mask = _positive_is_max(weighted)
    positive = np.where(mask, highs, lows)
    negative = np.where(mask, lows, highs)
    positive.setflags(write=False)
    negative.setflags(write=False)
    return IdealPoints(positive=positive, negative=negative)


def distances(weighted: FeatureTensor, ideals: IdealPoints) -> tuple[np.ndarray, np.ndarray]:
    """Euclidean distance of every alternative to each ideal point."""
    values = weighted.values
    d_plus = np.sqrt(((values - ideals.positive[None, :, :]) ** 2).sum(axis=(1, 2)))
    d_minus = np.sqrt(((values - ideals.negative[None, :, :]) ** 2).sum(axis=(1, 2)))
    return d_plus, d_minus


def closeness(d_plus: np.ndarray, d_minus: np.ndarray) -> np.ndarray:
    """Relative closeness d-/(d+ + d-), in [0, 1], higher is better.

    An alternative at zero distance from both ideals (all alternatives
    coincide) scores 0.5: any value is equally defensible there, and 0.5
    keeps the function total and symmetric.
    """
    d_plus = np.asarray(d_plus, dtype=float)
    d_minus = np.asarray(d_minus, dtype=float)
    total = d_plus + d_minus
    degenerate = total == 0.0
    scores = np.empty_like(total)
    scores[degenerate] = 0.5
    scores[~degenerate] = d_minus[~degenerate] / total[~degenerate]
    return scores


def _tie_groups(scores: np.ndarray, order: np.ndarray, ids) -> tuple[tuple[str, ...], ...]:
    groups, current = [], [order[0]]
    for prev, nxt in zip(order, order[1:]):
        if scores[nxt] == scores[prev]:
            current.append(nxt)
        else:
            if len(current) > 1:
                groups.append(tuple(ids[i] for i in current))
            current = [nxt]
    if len(current) > 1:
        groups.append(tuple(ids[i] for i in current))
    return tuple(groups)


def rank(feature_tensor: FeatureTensor, scheme: WeightScheme) -> RankingResult:
    """Full pipeline: normalize, weigh, ideals, distances, closeness, sort.

    The sort is stable and descending: equal scores keep input order, and
    tied groups are reported in the result.
    """
    normalized_tensor = normalize(feature_tensor)
    weighted = weigh(normalized_tensor, scheme)
    ideals = ideal_points(weighted)
    d_plus, d_minus = distances(weighted, ideals)
    scores = closeness(d_plus, d_minus)
    order = np.argsort(-scores, kind="stable")
    ids = feature_tensor.alternative_ids
    return RankingResult(
        closeness=scores,
        order=tuple(int(i) for i in order),
        ranked_ids=tuple(ids[i] for i in order),
        ties=_tie_groups(scores, order, ids),
        normalized=normalized_tensor,
        weighted=weighted,
        ideals=ideals,
        distance_positive=d_plus,
        distance_negative=d_minus,
    )


class TensorTopsis(BaseEstimator):
    """Estimator wrapper around the tensor TOPSIS pipeline.

    Parameters
    ----------
    criterion_weights : array-like or None
        Defaults to equal weights over the criteria of the fitted tensor.
    feature_weights : array-like or None
        Defaults to equal weights over its features.
    """

    def __init__(self, criterion_weights=None, feature_weights=None):
        self.criterion_weights = criterion_weights
        self.feature_weights = feature_weights

    def fit(self, X: FeatureTensor, y=None):
        n, h = X.n_criteria, X.n_features
        w = self.criterion_weights if self.criterion_weights is not None else np.full(n, 1.0 / n)
        alpha = self.feature_weights if self.feature_weights is not None else np.full(h, 1.0 / h)
        result = rank(X, WeightScheme(w, alpha))
        self.result_ = result
        self.closeness_ = result.closeness
        self.ranking_ = result.ranked_ids
        self.order_ = result.order
        self.ideal_points_ = result.ideals
        return self

    def fit_predict(self, X: FeatureTensor, y=None) -> np.ndarray:
        """Fit and return the closeness scores in input alternative order."""
        return self.fit(X).closeness_

    def __sklearn_is_fitted__(self) -> bool:
        return hasattr(self, "result_")

    def score_ranking(self) -> tuple[str, ...]:
        check_is_fitted(self)
        return self.ranking_

"""Map the time axis of a decision tensor into a feature axis.

Each feature collapses one (alternative, criterion) time series into a
single descriptor. Features carry two semantic tags: a direction class
(benefit, cost, or inherited from the criterion) and a scale-free flag
marking dimensionless descriptors that need no unit normalization later.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum
from typing import Callable, Iterable, Sequence

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .errors import ShapeMismatchError, TensorTopsisError, ZeroMeanError
from .tensor import DecisionTensor, Direction
from .validation import check_finite, check_lengths, check_unique


class FeatureDirection(Enum):
    BENEFIT = "benefit"
    COST = "cost"
    CRITERION_DEPENDENT = "criterion_dependent"


@dataclass(frozen=True)
class FeatureKind:
    """A named time-series descriptor.

    scale_free marks ratio-like features (such as the coefficient of
    variation) that are already unit-free and keep their natural scale
    through normalization.
    """

    name: str
    compute: Callable[[np.ndarray], float]
    direction_class: FeatureDirection
    scale_free: bool = False


def feature_current(series) -> float:
    """Value at the last time sample."""
    series = _as_series(series)
    return float(series[-1])


def feature_mean(series) -> float:
    """Arithmetic mean over the time samples."""
    series = _as_series(series)
    return float(series.mean())


def feature_cv(series) -> float:
    """Coefficient of variation: population standard deviation over the mean."""
    series = _as_series(series)
    mean = series.mean()
    if abs(mean) < 1e-12:
        raise ZeroMeanError("coefficient of variation is undefined for a zero-mean series")
    return float(series.std() / mean)


def feature_slope(series) -> float:
    """Least-squares slope of the series against its 1..T sample index.

    A single-sample series has no trend and yields 0.
    """
    series = _as_series(series)
    n = len(series)
    if n == 1:
        return 0.0
    t = np.arange(1, n + 1, dtype=float)
    t_centered = t - t.mean()
    return float((t_centered @ (series - series.mean())) / (t_centered @ t_centered))


def _as_series(series) -> np.ndarray:
    arr = np.asarray(series, dtype=float)
    if arr.ndim != 1 or arr.size == 0:
        raise ShapeMismatchError(f"expected a non-empty 1-d series, got shape {arr.shape}")
    return arr


CURRENT = FeatureKind("current", feature_current, FeatureDirection.CRITERION_DEPENDENT)
AVERAGE = FeatureKind("average", feature_mean, FeatureDirection.CRITERION_DEPENDENT)
CV = FeatureKind("cv", feature_cv, FeatureDirection.COST, scale_free=True)
SLOPE = FeatureKind("slope", feature_slope, FeatureDirection.CRITERION_DEPENDENT)

DEFAULT_FEATURES = (CURRENT.name, AVERAGE.name, CV.name, SLOPE.name)

_REGISTRY: dict[str, FeatureKind] = {k.name: k for k in (CURRENT, AVERAGE, CV, SLOPE)}


def register_feature(kind: FeatureKind) -> FeatureKind:
    """Add a custom feature to the name registry. Names must be unique."""
    if kind.name in _REGISTRY:
        raise ValueError(f"feature name {kind.name!r} is already registered")
    _REGISTRY[kind.name] = kind
    return kind


def unregister_feature(name: str) -> None:
    if name in (k.name for k in (CURRENT, AVERAGE, CV, SLOPE)):
        raise ValueError(f"cannot unregister builtin feature {name!r}")
    _REGISTRY.pop(name, None)


def resolve_features(features: Iterable) -> tuple[FeatureKind, ...]:
    """Turn feature names or FeatureKind objects into a kind tuple."""
    kinds = []
    for item in features:
        if isinstance(item, FeatureKind):
            kinds.append(item)
        elif isinstance(item, str):
            if item not in _REGISTRY:
                raise ValueError(
                    f"unknown feature {item!r}; known: {sorted(_REGISTRY)}"
                )
            kinds.append(_REGISTRY[item])
        else:
            raise TypeError(f"expected feature name or FeatureKind, got {type(item)}")
    if not kinds:
        raise ValueError("at least one feature is required")
    check_unique([k.name for k in kinds], "feature names")
    return tuple(kinds)


@dataclass(frozen=True)
class FeatureTensor:
    """Feature descriptors on an alternatives x criteria x features grid."""

    values: np.ndarray
    feature_kinds: tuple[FeatureKind, ...]
    alternative_ids: tuple[str, ...]
    criterion_ids: tuple[str, ...]
    criterion_directions: tuple[Direction, ...]

    def __post_init__(self):
        values = np.array(self.values, dtype=float)
        if values.ndim != 3:
            raise ShapeMismatchError(f"expected a 3-d array, got shape {values.shape}")
        check_finite(values, "feature values")
        values.setflags(write=False)

        kinds = tuple(self.feature_kinds)
        check_unique([k.name for k in kinds], "feature names")
        m, n, h = values.shape
        check_lengths(len(kinds), h, "feature kinds")
        alternative_ids = tuple(str(a) for a in self.alternative_ids)
        criterion_ids = tuple(str(c) for c in self.criterion_ids)
        directions = tuple(Direction.from_label(d) for d in self.criterion_directions)
        check_unique(alternative_ids, "alternative ids")
        check_unique(criterion_ids, "criterion ids")
        check_lengths(len(alternative_ids), m, "alternative ids")
        check_lengths(len(criterion_ids), n, "criterion ids")
        check_lengths(len(directions), n, "criterion directions")

        object.__setattr__(self, "values", values)
        object.__setattr__(self, "feature_kinds", kinds)
        object.__setattr__(self, "alternative_ids", alternative_ids)
        object.__setattr__(self, "criterion_ids", criterion_ids)
        object.__setattr__(self, "criterion_directions", directions)

    @property
    def n_alternatives(self) -> int:
        return self.values.shape[0]

    @property
    def n_criteria(self) -> int:
        return self.values.shape[1]

    @property
    def n_features(self) -> int:
        return self.values.shape[2]

    @property
    def feature_names(self) -> tuple[str, ...]:
        return tuple(k.name for k in self.feature_kinds)

    def with_values(self, values: np.ndarray) -> "FeatureTensor":
        """Same metadata, new values (used by the normalization pipeline)."""
        return replace(self, values=values)


def extract(tensor: DecisionTensor, features: Sequence = DEFAULT_FEATURES) -> FeatureTensor:
    """Compute every feature for every (alternative, criterion) time series.

    Parameters
    ----------
    tensor : DecisionTensor
        Full evaluation grid.
    features : sequence of feature names or FeatureKind
        Descriptors to compute, in output order.

    Returns
    -------
    FeatureTensor of shape (alternatives, criteria, features).
    """
    kinds = resolve_features(features)
    m, n = tensor.n_alternatives, tensor.n_criteria
    values = np.empty((m, n, len(kinds)))
    for i in range(m):
        for j in range(n):
            series = tensor.series(i, j)
            for k, kind in enumerate(kinds):
                try:
                    values[i, j, k] = kind.compute(series)
                except TensorTopsisError as exc:
                    raise type(exc)(
                        f"feature {kind.name!r} failed for "
                        f"({tensor.alternative_ids[i]}, {tensor.criterion_ids[j]}): {exc}"
                    ) from exc
    return FeatureTensor(
        values=values,
        feature_kinds=kinds,
        alternative_ids=tensor.alternative_ids,
        criterion_ids=tensor.criterion_ids,
        criterion_directions=tensor.directions,
    )


class FeatureExtractor(TransformerMixin, BaseEstimator):
    """Transformer mapping a DecisionTensor into a FeatureTensor.

    Parameters
    ----------
    features : sequence of feature names or FeatureKind objects
    """

    def __init__(self, features: Sequence = DEFAULT_FEATURES):
        self.features = features

    def fit(self, X: DecisionTensor, y=None):
        self.feature_kinds_ = resolve_features(self.features)
        return self

    def transform(self, X: DecisionTensor) -> FeatureTensor:
        check_is_fitted(self, "feature_kinds_")
        return extract(X, self.feature_kinds_)

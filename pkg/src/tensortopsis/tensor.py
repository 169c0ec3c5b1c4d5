"""Order-3 decision data: tensors of evaluations, slices and weight schemes.

Alternatives are indexed along axis 0, criteria along axis 1 and time
samples (or features, after extraction) along axis 2. Indices are 0-based;
human-facing labels live in the id tuples.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import (
    DuplicateCellError,
    LengthMismatchError,
    MissingCellError,
    NonFiniteValueError,
    ShapeMismatchError,
    UnknownDirectionError,
    WeightSumError,
)
from .validation import (
    SIMPLEX_TOL,
    as_simplex_vector,
    check_finite,
    check_lengths,
    check_unique,
    readonly_array,
)


class Direction(Enum):
    """Whether a criterion is to be maximized (benefit) or minimized (cost)."""

    BENEFIT = "benefit"
    COST = "cost"

    @classmethod
    def from_label(cls, label) -> "Direction":
        if isinstance(label, Direction):
            return label
        key = str(label).strip().lower()
        aliases = {
            "benefit": cls.BENEFIT,
            "max": cls.BENEFIT,
            "maximize": cls.BENEFIT,
            "cost": cls.COST,
            "min": cls.COST,
            "minimize": cls.COST,
        }
        if key not in aliases:
            raise UnknownDirectionError(f"unknown direction label {label!r}")
        return aliases[key]


class SliceKind(Enum):
    VERTICAL = "vertical"      # fix an alternative: criteria x time
    HORIZONTAL = "horizontal"  # fix a criterion: alternatives x time
    FRONTAL = "frontal"        # fix a time sample or feature: alternatives x criteria


@dataclass(frozen=True)
class TensorSlice:
    """Read-only matrix view of a tensor with one index held fixed."""

    kind: SliceKind
    index: int
    values: np.ndarray


@dataclass(frozen=True)
class DecisionTensor:
    """Raw evaluations on a full alternatives x criteria x time grid."""

    values: np.ndarray
    alternative_ids: tuple[str, ...]
    criterion_ids: tuple[str, ...]
    time_labels: tuple
    directions: tuple[Direction, ...]

    def __post_init__(self):
        values = np.array(self.values, dtype=float)
        if values.ndim != 3:
            raise ShapeMismatchError(f"expected a 3-d array, got shape {values.shape}")
        if min(values.shape) < 1:
            raise ShapeMismatchError(f"all dimensions must be at least 1, got {values.shape}")
        check_finite(values, "tensor values")
        values.setflags(write=False)

        alternative_ids = tuple(str(a) for a in self.alternative_ids)
        criterion_ids = tuple(str(c) for c in self.criterion_ids)
        time_labels = tuple(self.time_labels)
        directions = tuple(Direction.from_label(d) for d in self.directions)

        check_unique(alternative_ids, "alternative ids")
        check_unique(criterion_ids, "criterion ids")
        m, n, T = values.shape
        check_lengths(len(alternative_ids), m, "alternative ids")
        check_lengths(len(criterion_ids), n, "criterion ids")
        check_lengths(len(time_labels), T, "time labels")
        check_lengths(len(directions), n, "directions")

        object.__setattr__(self, "values", values)
        object.__setattr__(self, "alternative_ids", alternative_ids)
        object.__setattr__(self, "criterion_ids", criterion_ids)
        object.__setattr__(self, "time_labels", time_labels)
        object.__setattr__(self, "directions", directions)

    @property
    def n_alternatives(self) -> int:
        return self.values.shape[0]

    @property
    def n_criteria(self) -> int:
        return self.values.shape[1]

    @property
    def n_periods(self) -> int:
        return self.values.shape[2]

    def series(self, alternative: int, criterion: int) -> np.ndarray:
        """Time series of one alternative under one criterion."""
        return self.values[alternative, criterion, :]

    def to_rows(self) -> list[tuple[str, str, int, float]]:
        """Flatten back to (alternative, criterion, time index, value) rows.

        Time indices are 1-based, matching the build_tensor input convention.
        """
        rows = []
        for i, alt in enumerate(self.alternative_ids):
            for j, crit in enumerate(self.criterion_ids):
                for t in range(self.n_periods):
                    rows.append((alt, crit, t + 1, float(self.values[i, j, t])))
        return rows


@dataclass(frozen=True)
class WeightScheme:
    """Criterion weights plus feature weights (a fixed vector or a sampler).

    Both weight vectors must lie on the probability simplex; vectors that
    are off by display rounding are renormalized exactly on construction.
    """

    criterion_weights: np.ndarray
    feature_weights: object

    def __post_init__(self):
        object.__setattr__(
            self, "criterion_weights",
            as_simplex_vector(self.criterion_weights, "criterion weights"),
        )
        fw = self.feature_weights
        if isinstance(fw, (list, tuple, np.ndarray)):
            fw = as_simplex_vector(fw, "feature weights")
        object.__setattr__(self, "feature_weights", fw)

    @property
    def has_fixed_features(self) -> bool:
        return isinstance(self.feature_weights, np.ndarray)

    @classmethod
    def equal(cls, n_criteria: int, n_features: int) -> "WeightScheme":
        return cls(
            np.full(n_criteria, 1.0 / n_criteria),
            np.full(n_features, 1.0 / n_features),
        )


def build_tensor(
    rows: Iterable[tuple],
    directions: Mapping[str, Direction | str],
    time_labels: Sequence | None = None,
) -> DecisionTensor:
    """Assemble a DecisionTensor from (alternative, criterion, time, value) rows.

    Time indices must form 1..T once sorted; alternatives and criteria keep
    their order of first appearance. Every cell must be present exactly once.
    """
    rows = list(rows)
    if not rows:
        raise MissingCellError("no rows given")

    alternatives: list[str] = []
    criteria: list[str] = []
    times: set[int] = set()
    for alt, crit, t, _ in rows:
        if alt not in alternatives:
            alternatives.append(str(alt))
        if crit not in criteria:
            criteria.append(str(crit))
        times.add(int(t))

    n_periods = len(times)
    if times != set(range(1, n_periods + 1)):
        raise MissingCellError(
            f"time indices must form 1..T, got {sorted(times)}"
        )

    alt_index = {a: i for i, a in enumerate(alternatives)}
    crit_index = {c: j for j, c in enumerate(criteria)}
    values = np.full((len(alternatives), len(criteria), n_periods), np.nan)
    for alt, crit, t, value in rows:
        i, j, k = alt_index[str(alt)], crit_index[str(crit)], int(t) - 1
        if not np.isnan(values[i, j, k]):
            raise DuplicateCellError(f"duplicate cell ({alt}, {crit}, {t})")
        value = float(value)
        if not np.isfinite(value):
            raise NonFiniteValueError(f"non-finite value at ({alt}, {crit}, {t}): {value}")
        values[i, j, k] = value

    if np.isnan(values).any():
        i, j, k = np.argwhere(np.isnan(values))[0]
        raise MissingCellError(
            f"missing cell ({alternatives[i]}, {criteria[j]}, {k + 1})"
        )

    resolved = []
    for crit in criteria:
        if crit not in directions:
            raise UnknownDirectionError(f"no direction given for criterion {crit!r}")
        resolved.append(Direction.from_label(directions[crit]))

    if time_labels is None:
        time_labels = tuple(range(1, n_periods + 1))
    return DecisionTensor(
        values=values,
        alternative_ids=tuple(alternatives),
        criterion_ids=tuple(criteria),
        time_labels=tuple(time_labels),
        directions=tuple(resolved),
    )


def slice_tensor(tensor, kind: SliceKind, index: int) -> TensorSlice:
    """Fix one index of a decision or feature tensor and return the matrix view.

    The view is read-only; writing through it is rejected by numpy.
    """
    values = tensor.values
    axis = {SliceKind.VERTICAL: 0, SliceKind.HORIZONTAL: 1, SliceKind.FRONTAL: 2}[kind]
    if not 0 <= index < values.shape[axis]:
        raise IndexError(
            f"{kind.value} slice index {index} out of bounds for size {values.shape[axis]}"
        )
    taken = {
        SliceKind.VERTICAL: lambda: values[index, :, :],
        SliceKind.HORIZONTAL: lambda: values[:, index, :],
        SliceKind.FRONTAL: lambda: values[:, :, index],
    }[kind]()
    return TensorSlice(kind=kind, index=index, values=taken)


def validate_weights(scheme: WeightScheme, n_criteria: int, n_features: int) -> None:
    """Check simplex constraints and length agreement of a weight scheme."""
    check_lengths(len(scheme.criterion_weights), n_criteria, "criterion weights")
    if abs(scheme.criterion_weights.sum() - 1.0) > SIMPLEX_TOL:
        # unreachable after construction, kept as a contract check
        raise WeightSumError("criterion weights do not sum to 1")
    fw = scheme.feature_weights
    if isinstance(fw, np.ndarray):
        check_lengths(len(fw), n_features, "feature weights")
    else:
        n = getattr(fw, "n_features", None)
        if n is None:
            raise LengthMismatchError(
                "feature weights must be a vector or a sampler with n_features"
            )
        check_lengths(n, n_features, "feature weight sampler")

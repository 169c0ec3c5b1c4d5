"""Additive time-domain aggregation, dominance, and the rank-reversal demo.

Aggregating raw time series with nonnegative weights can never overturn an
elementwise dominance between two alternatives. Mapping the series to a
trend feature first can: the bundled two-alternative example flips its
preference order between the two domains.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NegativeWeightError, ShapeMismatchError, TensorTopsisError
from .features import SLOPE, extract
from .tensor import DecisionTensor, Direction, build_tensor
from .validation import as_simplex_vector


@dataclass(frozen=True)
class PeriodWeightMatrix:
    """Nonnegative per-(period, criterion) weights summing to one overall."""

    values: np.ndarray  # shape (periods, criteria)

    def __post_init__(self):
        values = np.array(self.values, dtype=float)
        if values.ndim != 2:
            raise ShapeMismatchError(f"expected a 2-d weight matrix, got shape {values.shape}")
        flat = as_simplex_vector(values.ravel(), "period weights")
        values = flat.reshape(values.shape).copy()
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @classmethod
    def uniform(cls, n_periods: int, n_criteria: int) -> "PeriodWeightMatrix":
        return cls(np.full((n_periods, n_criteria), 1.0 / (n_periods * n_criteria)))


def additive_aggregate(tensor: DecisionTensor, weights) -> np.ndarray:
    """Score each alternative as the weighted sum over criteria and periods.

    weights may be a PeriodWeightMatrix or any nonnegative (periods,
    criteria) array; raw arrays are not forced onto the simplex, so partial
    weightings (for instance reusing per-cell weights after a feature
    mapping shrank the time axis) stay expressible.
    """
    w = weights.values if isinstance(weights, PeriodWeightMatrix) else np.asarray(weights, dtype=float)
    expected = (tensor.n_periods, tensor.n_criteria)
    if w.shape != expected:
        raise ShapeMismatchError(f"weight matrix shape {w.shape}, expected {expected}")
    if (w < 0).any():
        raise NegativeWeightError("period weights must be nonnegative")
    return np.einsum("ijt,tj->i", tensor.values, w)


def dominates(tensor: DecisionTensor, first: int, second: int) -> bool:
    """True when `first` is weakly better than `second` on every cell.

    Benefit criteria compare with >=, cost criteria with <=.
    """
    m = tensor.n_alternatives
    for idx in (first, second):
        if not 0 <= idx < m:
            raise IndexError(f"alternative index {idx} out of bounds for size {m}")
    a, b = tensor.values[first], tensor.values[second]
    for j, direction in enumerate(tensor.directions):
        if direction is Direction.BENEFIT:
            if not (a[j, :] >= b[j, :]).all():
                return False
        else:
            if not (a[j, :] <= b[j, :]).all():
                return False
    return True


def rank_reversal_example() -> DecisionTensor:
    """Two alternatives, two benefit criteria, two periods.

    The first alternative dominates the second cellwise but declines over
    time, while the second improves; the values are chosen so the uniform
    additive scores are (4, 2.5) and the per-criterion slopes are constant
    (-0.5 and 1.0 respectively).
    """
    cells = {
        ("a1", "c1"): (4.5, 4.0),
        ("a1", "c2"): (4.0, 3.5),
        ("a2", "c1"): (2.0, 3.0),
        ("a2", "c2"): (2.0, 3.0),
    }
    rows = [
        (alt, crit, t + 1, value)
        for (alt, crit), series in cells.items()
        for t, value in enumerate(series)
    ]
    directions = {"c1": Direction.BENEFIT, "c2": Direction.BENEFIT}
    return build_tensor(rows, directions)


@dataclass(frozen=True)
class DominanceReport:
    """Outcome of aggregating the example in the time and trend domains."""

    alternative_ids: tuple[str, ...]
    time_scores: tuple[float, ...]
    trend_scores: tuple[float, ...]
    time_order: tuple[str, ...]
    trend_order: tuple[str, ...]
    first_dominates_second: bool
    preference_reversed: bool

    def lines(self) -> list[str]:
        rows = [
            "domain,alternative,score,position",
        ]
        for domain, scores, order in (
            ("time", self.time_scores, self.time_order),
            ("trend", self.trend_scores, self.trend_order),
        ):
            ranked = {alt: pos + 1 for pos, alt in enumerate(order)}
            for alt, score in zip(self.alternative_ids, scores):
                rows.append(f"{domain},{alt},{score:.4f},{ranked[alt]}")
        rows.append(f"# first_dominates_second={str(self.first_dominates_second).lower()}")
        rows.append(f"# preference_reversed={str(self.preference_reversed).lower()}")
        return rows


def _order_by_score(ids, scores) -> tuple[str, ...]:
    order = np.argsort(-np.asarray(scores), kind="stable")
    return tuple(ids[i] for i in order)


def rank_reversal_demo() -> DominanceReport:
    """Aggregate the bundled example in both domains and check the flip."""
    tensor = rank_reversal_example()
    per_cell = 1.0 / (tensor.n_periods * tensor.n_criteria)
    time_scores = additive_aggregate(tensor, PeriodWeightMatrix.uniform(2, 2))

    trend = extract(tensor, [SLOPE])
    trend_as_tensor = DecisionTensor(
        values=trend.values,
        alternative_ids=trend.alternative_ids,
        criterion_ids=trend.criterion_ids,
        time_labels=("trend",),
        directions=tensor.directions,
    )
    # Reuse the same per-cell weight on the single trend sample; the matrix
    # then sums to 0.5, which is why the raw-array path exists.
    trend_weights = np.full((1, tensor.n_criteria), per_cell)
    trend_scores = additive_aggregate(trend_as_tensor, trend_weights)

    ids = tensor.alternative_ids
    time_order = _order_by_score(ids, time_scores)
    trend_order = _order_by_score(ids, trend_scores)
    if time_order == trend_order:
        raise TensorTopsisError("expected the preference order to flip between domains")
    return DominanceReport(
        alternative_ids=ids,
        time_scores=tuple(float(s) for s in time_scores),
        trend_scores=tuple(float(s) for s in trend_scores),
        time_order=time_order,
        trend_order=trend_order,
        first_dominates_second=dominates(tensor, 0, 1),
        preference_reversed=time_order != trend_order,
    )

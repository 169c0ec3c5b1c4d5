"""Small input-validation helpers shared by the data model and estimators."""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .errors import (
    LengthMismatchError,
    NegativeWeightError,
    NonFiniteValueError,
    WeightSumError,
)

# Printed weight vectors are often rounded (0.333 each); anything within this
# slack of the simplex is snapped back by exact renormalization, anything
# further off is rejected.
ROUNDING_SLACK = 1e-2
SIMPLEX_TOL = 1e-9


def check_finite(values: np.ndarray, name: str) -> None:
    if not np.isfinite(values).all():
        raise NonFiniteValueError(f"{name} contains NaN or infinite entries")


def check_unique(labels: Sequence, name: str) -> None:
    if len(set(labels)) != len(labels):
        seen, dupes = set(), []
        for lab in labels:
            if lab in seen:
                dupes.append(lab)
            seen.add(lab)
        raise ValueError(f"duplicate {name}: {dupes}")


def as_simplex_vector(weights, name: str = "weights") -> np.ndarray:
    """Coerce to a nonnegative vector summing to exactly one.

    Vectors whose sum is within ROUNDING_SLACK of one are renormalized by
    their actual sum; larger deviations raise WeightSumError.
    """
    w = np.asarray(weights, dtype=float)
    if w.ndim != 1:
        raise LengthMismatchError(f"{name} must be one-dimensional, got shape {w.shape}")
    check_finite(w, name)
    if (w < 0).any():
        raise NegativeWeightError(f"{name} has negative entries: {w[w < 0]}")
    total = w.sum()
    if abs(total - 1.0) > ROUNDING_SLACK:
        raise WeightSumError(f"{name} sums to {total:.6g}, expected 1")
    w = w / total
    w.setflags(write=False)
    return w


def check_lengths(actual: int, expected: int, name: str) -> None:
    if actual != expected:
        raise LengthMismatchError(f"{name}: expected length {expected}, got {actual}")


def readonly_array(values, dtype=float, ndim: int | None = None, name: str = "values") -> np.ndarray:
    arr = np.array(values, dtype=dtype)
    if ndim is not None and arr.ndim != ndim:
        raise LengthMismatchError(f"{name} must be {ndim}-dimensional, got shape {arr.shape}")
    arr.setflags(write=False)
    return arr

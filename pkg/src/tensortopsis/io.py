"""File formats: tidy panel CSV, INI analysis configs, and output tables.

Panel files are long-form CSV with header alternative,criterion,time,value.
All numeric output is written with four decimal places; parsing accepts
leading '# key=value' metadata lines on any table.
"""

from __future__ import annotations

import configparser
import csv
import io as _io
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Mapping, Sequence, TextIO

import numpy as np

from .errors import PanelParseError
from .features import FeatureTensor
from .smaa import (
    FeatureWeightSampler,
    PercentageMatrix,
    PointWeight,
    RemainderWeight,
    UniformWeight,
)
from .tensor import DecisionTensor, Direction, build_tensor
from .topsis import RankingResult

PANEL_HEADER = ("alternative", "criterion", "time", "value")
NUMBER_FORMAT = "{:.4f}"


def _format(x: float) -> str:
    return NUMBER_FORMAT.format(float(x))


# ---------------------------------------------------------------------------
# panel files
# ---------------------------------------------------------------------------

def _time_index(raw_times: list[str]):
    """Sorted unique time labels plus a raw-label lookup.

    All-integer labels sort numerically, anything else lexicographically
    (ISO dates order correctly either way).
    """
    try:
        keyed = {t: int(t) for t in raw_times}
    except ValueError:
        keyed = {t: t for t in raw_times}
    labels = sorted(set(keyed.values()))
    return labels, keyed


def load_panel(path, directions: Mapping[str, Direction | str]) -> DecisionTensor:
    """Read a tidy panel CSV into a DecisionTensor.

    Time labels are sorted ascending and mapped to sample indices 1..T;
    criterion directions come from the caller (usually an AnalysisConfig).
    """
    path = Path(path)
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise PanelParseError("empty file", line=1) from None
        if tuple(h.strip() for h in header) != PANEL_HEADER:
            raise PanelParseError(
                f"expected header {','.join(PANEL_HEADER)}, got {','.join(header)}", line=1
            )
        raw = []
        for lineno, row in enumerate(reader, start=2):
            if not row or (len(row) == 1 and not row[0].strip()):
                continue
            if len(row) != 4:
                raise PanelParseError(f"expected 4 fields, got {len(row)}", line=lineno)
            alt, crit, time_label, value = (field.strip() for field in row)
            try:
                parsed = float(value)
            except ValueError:
                raise PanelParseError(f"bad numeric value {value!r}", line=lineno) from None
            raw.append((alt, crit, time_label, parsed))

    labels, keyed = _time_index([t for _, _, t, _ in raw])
    index_of = {lab: i + 1 for i, lab in enumerate(labels)}
    rows = [(alt, crit, index_of[keyed[t]], v) for alt, crit, t, v in raw]
    return build_tensor(rows, directions, time_labels=tuple(labels))


def save_panel(tensor: DecisionTensor, path) -> None:
    """Write a DecisionTensor back to tidy panel CSV."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(PANEL_HEADER)
        for i, alt in enumerate(tensor.alternative_ids):
            for j, crit in enumerate(tensor.criterion_ids):
                for t, label in enumerate(tensor.time_labels):
                    writer.writerow([alt, crit, label, repr(float(tensor.values[i, j, t]))])


def wide_to_long(src, dest) -> None:
    """Convert a wide panel (columns criterion:time) to the tidy layout."""
    src = Path(src)
    with open(src, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if not header or header[0].strip() != "alternative":
            raise PanelParseError("wide layout must start with an 'alternative' column", line=1)
        columns = []
        for col in header[1:]:
            if ":" not in col:
                raise PanelParseError(f"wide column {col!r} is not criterion:time", line=1)
            crit, time_label = col.split(":", 1)
            columns.append((crit.strip(), time_label.strip()))
        out_rows = []
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != len(columns) + 1:
                raise PanelParseError(
                    f"expected {len(columns) + 1} fields, got {len(row)}", line=lineno
                )
            alt = row[0].strip()
            for (crit, time_label), value in zip(columns, row[1:]):
                out_rows.append((alt, crit, time_label, value.strip()))
    with open(dest, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(PANEL_HEADER)
        writer.writerows(out_rows)


# ---------------------------------------------------------------------------
# analysis configuration
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CriterionConfig:
    id: str
    direction: Direction
    weight: float


@dataclass(frozen=True)
class FeatureConfig:
    name: str
    spec: PointWeight | UniformWeight | RemainderWeight


STRATEGY_FEATURES = ("current", "average", "cv", "slope")


def _strategy_feature_configs(name: str) -> tuple[FeatureConfig, ...]:
    name = name.strip().upper()
    if name in {"S1", "S2", "S3", "S4"}:
        chosen = int(name[1]) - 1
        return tuple(
            FeatureConfig(feat, PointWeight(1.0 if k == chosen else 0.0))
            for k, feat in enumerate(STRATEGY_FEATURES)
        )
    if name == "S5":
        specs = [RemainderWeight()] + [UniformWeight(0.1, 0.2)] * 3
        return tuple(FeatureConfig(feat, spec) for feat, spec in zip(STRATEGY_FEATURES, specs))
    raise ValueError(f"unknown strategy {name!r}; expected S1..S5")


def _parse_feature_spec(text: str):
    parts = text.split()
    if not parts:
        raise ValueError("empty feature weight spec")
    kind = parts[0].lower()
    if kind == "point" and len(parts) == 2:
        return PointWeight(float(parts[1]))
    if kind == "uniform" and len(parts) == 3:
        return UniformWeight(float(parts[1]), float(parts[2]))
    if kind == "remainder" and len(parts) == 1:
        return RemainderWeight()
    raise ValueError(f"bad feature weight spec {text!r}")


@dataclass(frozen=True)
class AnalysisConfig:
    """Criteria, feature weighting and simulation settings for one analysis."""

    criteria: tuple[CriterionConfig, ...] | None
    features: tuple[FeatureConfig, ...]
    iterations: int = 10_000
    seed: int | None = None

    @classmethod
    def strategy(cls, name: str, criteria=None, iterations: int = 10_000, seed: int | None = None):
        """One of the five bundled weighting presets (S1..S5)."""
        return cls(
            criteria=tuple(criteria) if criteria else None,
            features=_strategy_feature_configs(name),
            iterations=iterations,
            seed=seed,
        )

    @classmethod
    def from_file(cls, path) -> "AnalysisConfig":
        parser = configparser.ConfigParser()
        read = parser.read(path)
        if not read:
            raise FileNotFoundError(path)

        criteria = None
        if parser.has_section("criteria"):
            entries = []
            for crit_id, spec in parser.items("criteria"):
                parts = spec.split()
                if len(parts) != 2:
                    raise ValueError(
                        f"criterion {crit_id!r}: expected 'direction weight', got {spec!r}"
                    )
                entries.append(
                    CriterionConfig(crit_id, Direction.from_label(parts[0]), float(parts[1]))
                )
            criteria = tuple(entries)

        iterations = parser.getint("smaa", "iterations", fallback=10_000)
        seed = parser.getint("smaa", "seed", fallback=None)

        if parser.has_option("analysis", "strategy"):
            features = _strategy_feature_configs(parser.get("analysis", "strategy"))
        elif parser.has_section("features"):
            features = tuple(
                FeatureConfig(name, _parse_feature_spec(spec))
                for name, spec in parser.items("features")
            )
        else:
            raise ValueError("config needs a [features] section or [analysis] strategy")
        return cls(criteria=criteria, features=features, iterations=iterations, seed=seed)

    def directions(self) -> dict[str, Direction] | None:
        if self.criteria is None:
            return None
        return {c.id: c.direction for c in self.criteria}

    def criterion_weights(self) -> np.ndarray | None:
        if self.criteria is None:
            return None
        return np.array([c.weight for c in self.criteria])

    def feature_names(self) -> tuple[str, ...]:
        return tuple(f.name for f in self.features)

    def sampler(self) -> FeatureWeightSampler:
        return FeatureWeightSampler(tuple(f.spec for f in self.features))

    def fixed_alpha(self) -> np.ndarray | None:
        """Feature weight vector when every spec is a point, else None."""
        if all(isinstance(f.spec, PointWeight) for f in self.features):
            return np.array([f.spec.value for f in self.features])
        return None


def default_directions(tensor_criteria: Sequence[str]) -> dict[str, Direction]:
    return {c: Direction.BENEFIT for c in tensor_criteria}


# ---------------------------------------------------------------------------
# table output
# ---------------------------------------------------------------------------

def write_feature_table(feature_tensor: FeatureTensor, stream: TextIO) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(["alternative", "criterion", "feature", "value"])
    for i, alt in enumerate(feature_tensor.alternative_ids):
        for j, crit in enumerate(feature_tensor.criterion_ids):
            for k, kind in enumerate(feature_tensor.feature_kinds):
                writer.writerow([alt, crit, kind.name, _format(feature_tensor.values[i, j, k])])


def write_ranking_table(result: RankingResult, stream: TextIO) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(["alternative", "closeness", "position"])
    for position, alt_index in enumerate(result.order, start=1):
        writer.writerow(
            [result.ranked_ids[position - 1], _format(result.closeness[alt_index]), position]
        )


def write_percentage_table(matrix: PercentageMatrix, stream: TextIO) -> None:
    m = len(matrix.alternative_ids)
    stream.write(f"# generator={matrix.seed.generator}\n")
    stream.write(f"# seed={matrix.seed.seed}\n")
    stream.write(f"# iterations={matrix.iterations}\n")
    stream.write(f"# rejections={matrix.rejections}\n")
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(["alternative"] + [f"pct@{p}" for p in range(1, m + 1)])
    for i, alt in enumerate(matrix.alternative_ids):
        writer.writerow([alt] + [_format(v) for v in matrix.values[i]])


def write_audit_tables(result: RankingResult, directory) -> None:
    """Dump the pipeline intermediates (normalized, weighted, ideals, distances)."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    for name, tensor in (("normalized", result.normalized), ("weighted", result.weighted)):
        with open(directory / f"{name}.csv", "w", encoding="utf-8") as fh:
            write_feature_table(tensor, fh)
    with open(directory / "ideals.csv", "w", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["criterion", "feature", "positive", "negative"])
        tensor = result.weighted
        for j, crit in enumerate(tensor.criterion_ids):
            for k, kind in enumerate(tensor.feature_kinds):
                writer.writerow(
                    [crit, kind.name,
                     _format(result.ideals.positive[j, k]),
                     _format(result.ideals.negative[j, k])]
                )
    with open(directory / "distances.csv", "w", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["alternative", "d_plus", "d_minus"])
        for i, alt in enumerate(result.weighted.alternative_ids):
            writer.writerow(
                [alt, _format(result.distance_positive[i]), _format(result.distance_negative[i])]
            )


def read_table(source) -> tuple[dict[str, str], list[str], list[list[str]]]:
    """Parse a table written by this module: metadata, header, rows."""
    if isinstance(source, (str, Path)):
        text = Path(source).read_text(encoding="utf-8")
    else:
        text = source.read()
    meta: dict[str, str] = {}
    lines = []
    for line in text.splitlines():
        if line.startswith("#"):
            key, _, value = line.lstrip("# ").partition("=")
            meta[key.strip()] = value.strip()
        elif line.strip():
            lines.append(line)
    reader = csv.reader(_io.StringIO("\n".join(lines)))
    header = next(reader)
    return meta, header, [row for row in reader]


# ---------------------------------------------------------------------------
# bundled data
# ---------------------------------------------------------------------------

def bundled_path(*parts: str) -> Path:
    """Path to a file shipped inside the package data directory."""
    return Path(resources.files("tensortopsis").joinpath("data", *parts))

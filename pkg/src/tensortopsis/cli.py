"""Command line interface: extract, rank, smaa, demo-dominance, reproduce."""

from __future__ import annotations

import argparse
import csv
import sys
import tempfile
from contextlib import contextmanager
from pathlib import Path

import numpy as np

from .aggregation import rank_reversal_demo
from .errors import TensorTopsisError
from .features import extract
from .io import (
    AnalysisConfig,
    bundled_path,
    default_directions,
    load_panel,
    read_table,
    write_audit_tables,
    write_feature_table,
    write_percentage_table,
    write_ranking_table,
)
from .smaa import most_likely_ranking, run_smaa
from .tensor import WeightScheme
from .topsis import rank


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tensortopsis",
        description="Rank alternatives from criteria time series with tensor TOPSIS and SMAA.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, with_data=True):
        if with_data:
            p.add_argument("--data", required=True, help="tidy panel CSV (alternative,criterion,time,value)")
        p.add_argument("--config", help="analysis config file (INI)")
        p.add_argument("--strategy", help="bundled weighting preset S1..S5 (alternative to --config)")
        p.add_argument("-o", "--output", default="-", help="output file, '-' for stdout")

    p_extract = sub.add_parser("extract", help="write the feature table for a panel")
    add_common(p_extract)
    p_extract.add_argument("--features", help="comma-separated feature names (default: current,average,cv,slope)")
    p_extract.set_defaults(func=cmd_extract)

    p_rank = sub.add_parser("rank", help="rank the alternatives under fixed weights")
    add_common(p_rank)
    p_rank.add_argument("--audit", help="directory for intermediate tensors")
    p_rank.set_defaults(func=cmd_rank)

    p_smaa = sub.add_parser("smaa", help="Monte Carlo ranking percentages over feature weights")
    add_common(p_smaa)
    p_smaa.add_argument("--iterations", type=int, help="override iteration count")
    p_smaa.add_argument("--seed", type=int, help="override master seed")
    p_smaa.add_argument("--jobs", type=int, default=1, help="parallel workers (result is identical)")
    p_smaa.set_defaults(func=cmd_smaa)

    p_demo = sub.add_parser("demo-dominance", help="show the time-vs-trend rank reversal example")
    p_demo.set_defaults(func=cmd_demo)

    p_rep = sub.add_parser("reproduce", help="run the bundled corpus and diff against expected tables")
    p_rep.add_argument("--outdir", help="where to write the produced tables (default: temp dir)")
    p_rep.set_defaults(func=cmd_reproduce)
    return parser


def _load_config(args) -> AnalysisConfig | None:
    if getattr(args, "config", None) and getattr(args, "strategy", None):
        raise TensorTopsisError("give either --config or --strategy, not both")
    if getattr(args, "config", None):
        return AnalysisConfig.from_file(args.config)
    if getattr(args, "strategy", None):
        return AnalysisConfig.strategy(args.strategy)
    return None


def _load_tensor(args, config: AnalysisConfig | None):
    directions = None if config is None else config.directions()
    if directions is None:
        # peek at the criteria first so every one can default to benefit
        with open(args.data, newline="", encoding="utf-8") as fh:
            reader = csv.reader(fh)
            next(reader, None)
            criteria = []
            for row in reader:
                if len(row) >= 2 and row[1].strip() not in criteria:
                    criteria.append(row[1].strip())
        directions = default_directions(criteria)
    return load_panel(args.data, directions)


@contextmanager
def _open_output(target: str):
    if target == "-":
        yield sys.stdout
    else:
        with open(target, "w", encoding="utf-8") as fh:
            yield fh


def cmd_extract(args) -> int:
    config = _load_config(args)
    tensor = _load_tensor(args, config)
    if args.features:
        names = [f.strip() for f in args.features.split(",") if f.strip()]
    elif config is not None:
        names = list(config.feature_names())
    else:
        names = None
    feature_tensor = extract(tensor) if names is None else extract(tensor, names)
    with _open_output(args.output) as fh:
        write_feature_table(feature_tensor, fh)
    return 0


def _scheme_from_config(config: AnalysisConfig | None, tensor):
    n = tensor.n_criteria
    weights = None if config is None else config.criterion_weights()
    if weights is None:
        weights = np.full(n, 1.0 / n)
    if config is None:
        alpha = None
    else:
        alpha = config.fixed_alpha()
        if alpha is None:
            raise TensorTopsisError(
                "ranking needs fixed feature weights; this config samples them (use smaa)"
            )
    return weights, alpha


def cmd_rank(args) -> int:
    config = _load_config(args)
    tensor = _load_tensor(args, config)
    names = None if config is None else list(config.feature_names())
    feature_tensor = extract(tensor) if names is None else extract(tensor, names)
    weights, alpha = _scheme_from_config(config, tensor)
    if alpha is None:
        alpha = np.full(feature_tensor.n_features, 1.0 / feature_tensor.n_features)
    result = rank(feature_tensor, WeightScheme(weights, alpha))
    with _open_output(args.output) as fh:
        write_ranking_table(result, fh)
    if args.audit:
        write_audit_tables(result, args.audit)
    return 0


def cmd_smaa(args) -> int:
    config = _load_config(args)
    if config is None:
        raise TensorTopsisError("smaa needs --config or --strategy for the weight sampler")
    tensor = _load_tensor(args, config)
    feature_tensor = extract(tensor, list(config.feature_names()))
    weights = config.criterion_weights()
    if weights is None:
        weights = np.full(tensor.n_criteria, 1.0 / tensor.n_criteria)
    iterations = args.iterations or config.iterations
    seed = args.seed if args.seed is not None else config.seed
    matrix = run_smaa(
        feature_tensor, weights, config.sampler(),
        iterations=iterations, seed=seed, n_jobs=args.jobs,
    )
    with _open_output(args.output) as fh:
        write_percentage_table(matrix, fh)
        likely = most_likely_ranking(matrix)
        fh.write("# most_likely=" + ",".join(likely.alternatives) + "\n")
        if not likely.is_consistent:
            fh.write(
                "# conflicted_positions="
                + ",".join(str(p) for p in likely.conflicted_positions)
                + "\n"
            )
    return 0


def cmd_demo(args) -> int:
    report = rank_reversal_demo()
    print("\n".join(report.lines()))
    return 0


def _compare_numeric(expected_rows, produced_rows, numeric_from: int, atol: float) -> bool:
    if len(expected_rows) != len(produced_rows):
        return False
    for exp, got in zip(expected_rows, produced_rows):
        if exp[:numeric_from] != got[:numeric_from]:
            return False
        for a, b in zip(exp[numeric_from:], got[numeric_from:]):
            if abs(float(a) - float(b)) > atol:
                return False
    return True


def cmd_reproduce(args) -> int:
    outdir = Path(args.outdir) if args.outdir else Path(tempfile.mkdtemp(prefix="tensortopsis-"))
    outdir.mkdir(parents=True, exist_ok=True)
    data = bundled_path("hdi.csv")
    failures = []

    def check(name: str, ok: bool):
        print(f"reproduce {name}: {'ok' if ok else 'MISMATCH'}")
        if not ok:
            failures.append(name)

    config = AnalysisConfig.from_file(bundled_path("configs", "s1.cfg"))
    tensor = load_panel(data, config.directions())
    feature_tensor = extract(tensor, list(config.feature_names()))

    out = outdir / "features.csv"
    with open(out, "w", encoding="utf-8") as fh:
        write_feature_table(feature_tensor, fh)
    _, _, expected = read_table(bundled_path("expected", "features.csv"))
    _, _, produced = read_table(out)
    check("features", _compare_numeric(expected, produced, 3, 1e-9))

    for strategy in ("s1", "s2", "s3", "s4"):
        config = AnalysisConfig.from_file(bundled_path("configs", f"{strategy}.cfg"))
        result = rank(feature_tensor, WeightScheme(config.criterion_weights(), config.fixed_alpha()))
        out = outdir / f"ranking_{strategy}.csv"
        with open(out, "w", encoding="utf-8") as fh:
            write_ranking_table(result, fh)
        _, _, expected = read_table(bundled_path("expected", f"ranking_{strategy}.csv"))
        _, _, produced = read_table(out)
        order_ok = [r[0] for r in expected] == [r[0] for r in produced]
        check(f"ranking {strategy}", order_ok and _compare_numeric(expected, produced, 1, 1e-9))

    config = AnalysisConfig.from_file(bundled_path("configs", "s5.cfg"))
    matrix = run_smaa(
        feature_tensor, config.criterion_weights(), config.sampler(),
        iterations=config.iterations, seed=config.seed,
    )
    out = outdir / "smaa_s5.csv"
    with open(out, "w", encoding="utf-8") as fh:
        write_percentage_table(matrix, fh)
    _, _, expected = read_table(bundled_path("expected", "smaa_s5.csv"))
    _, _, produced = read_table(out)
    check("smaa s5", _compare_numeric(expected, produced, 1, 1e-9))

    print(f"tables written to {outdir}")
    return 1 if failures else 0


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except TensorTopsisError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except FileNotFoundError as exc:
        print(f"error: FileNotFoundError: {exc}", file=sys.stderr)
        return 1


def console_main() -> None:
    sys.exit(main())


if __name__ == "__main__":
    console_main()

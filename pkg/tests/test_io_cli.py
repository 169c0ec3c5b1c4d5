import io

import numpy as np
import pytest

import tensortopsis as tt
from tensortopsis.cli import main
from tensortopsis.errors import MissingCellError, PanelParseError
from tensortopsis.io import (
    AnalysisConfig,
    read_table,
    write_feature_table,
    write_percentage_table,
    write_ranking_table,
)

from reference import STRATEGY_ORDERS

DIRS = {"c1": "max", "c2": "max", "c3": "max"}


class TestPanelFiles:
    def test_bundled_corpus_loads(self, hdi_tensor):
        assert hdi_tensor.values.shape == (10, 3, 6)
        assert hdi_tensor.time_labels == (1990, 1995, 2000, 2005, 2010, 2015)
        br = hdi_tensor.alternative_ids.index("BR")
        assert hdi_tensor.values[br, 0, 0] == 65.3

    def test_time_labels_sorted_even_if_shuffled(self, tmp_path):
        path = tmp_path / "shuffled.csv"
        path.write_text(
            "alternative,criterion,time,value\n"
            "a,c1,2010,2.0\n"
            "a,c1,1990,1.0\n"
            "a,c1,2000,1.5\n"
        )
        tensor = tt.load_panel(path, {"c1": "max"})
        assert tensor.time_labels == (1990, 2000, 2010)
        assert list(tensor.values[0, 0]) == [1.0, 1.5, 2.0]

    def test_iso_date_labels(self, tmp_path):
        path = tmp_path / "dates.csv"
        path.write_text(
            "alternative,criterion,time,value\n"
            "a,c1,2020-02-01,2.0\n"
            "a,c1,2020-01-01,1.0\n"
        )
        tensor = tt.load_panel(path, {"c1": "max"})
        assert tensor.time_labels == ("2020-01-01", "2020-02-01")

    def test_save_load_round_trip(self, tmp_path, hdi_tensor):
        path = tmp_path / "roundtrip.csv"
        tt.save_panel(hdi_tensor, path)
        again = tt.load_panel(path, DIRS)
        assert np.array_equal(hdi_tensor.values, again.values)
        assert hdi_tensor.alternative_ids == again.alternative_ids
        assert hdi_tensor.time_labels == again.time_labels

    def test_header_only_file_is_missing_cell(self, tmp_path):
        path = tmp_path / "empty.csv"
        path.write_text("alternative,criterion,time,value\n")
        with pytest.raises(MissingCellError):
            tt.load_panel(path, DIRS)

    def test_comma_decimal_reports_line(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text(
            "alternative,criterion,time,value\n"
            "BR,c1,1990,65.3\n"
            'BR,c1,1995,"65,3"\n'
        )
        with pytest.raises(PanelParseError, match="line 3"):
            tt.load_panel(path, DIRS)

    def test_wrong_header_rejected(self, tmp_path):
        path = tmp_path / "hdr.csv"
        path.write_text("alt,crit,year,val\na,c,1,2\n")
        with pytest.raises(PanelParseError, match="line 1"):
            tt.load_panel(path, DIRS)

    def test_wrong_field_count_rejected(self, tmp_path):
        path = tmp_path / "fields.csv"
        path.write_text("alternative,criterion,time,value\na,c1,1\n")
        with pytest.raises(PanelParseError, match="line 2"):
            tt.load_panel(path, {"c1": "max"})

    def test_wide_converter_matches_long_corpus(self, tmp_path, hdi_tensor):
        out = tmp_path / "long.csv"
        tt.wide_to_long(tt.bundled_path("hdi_wide.csv"), out)
        tensor = tt.load_panel(out, DIRS)
        assert np.array_equal(tensor.values, hdi_tensor.values)
        assert tensor.alternative_ids == hdi_tensor.alternative_ids


class TestAnalysisConfig:
    def test_bundled_s1(self):
        config = AnalysisConfig.from_file(tt.bundled_path("configs", "s1.cfg"))
        assert config.feature_names() == ("current", "average", "cv", "slope")
        assert np.array_equal(config.fixed_alpha(), [1, 0, 0, 0])
        assert config.directions() == {c: tt.Direction.BENEFIT for c in ("c1", "c2", "c3")}

    def test_bundled_s5_samples(self):
        config = AnalysisConfig.from_file(tt.bundled_path("configs", "s5.cfg"))
        assert config.fixed_alpha() is None
        sampler = config.sampler()
        assert sampler.has_remainder
        assert sampler.n_features == 4
        assert config.iterations == 10_000
        assert config.seed == 202608

    def test_strategy_presets(self):
        for name, alpha in (("S1", (1, 0, 0, 0)), ("S4", (0, 0, 0, 1))):
            config = AnalysisConfig.strategy(name)
            assert np.array_equal(config.fixed_alpha(), alpha)
        assert AnalysisConfig.strategy("S5").fixed_alpha() is None
        with pytest.raises(ValueError):
            AnalysisConfig.strategy("S9")

    def test_strategy_section_in_file(self, tmp_path):
        path = tmp_path / "cfg.cfg"
        path.write_text("[analysis]\nstrategy = S2\n")
        config = AnalysisConfig.from_file(path)
        assert np.array_equal(config.fixed_alpha(), [0, 1, 0, 0])
        assert config.criteria is None

    def test_bad_feature_spec(self, tmp_path):
        path = tmp_path / "cfg.cfg"
        path.write_text("[features]\ncurrent = gaussian 0 1\n")
        with pytest.raises(ValueError, match="spec"):
            AnalysisConfig.from_file(path)

    def test_config_without_features_rejected(self, tmp_path):
        path = tmp_path / "cfg.cfg"
        path.write_text("[criteria]\nc1 = benefit 1.0\n")
        with pytest.raises(ValueError, match="features"):
            AnalysisConfig.from_file(path)


class TestTableEmission:
    def test_feature_table_reparses(self, hdi_features):
        buf = io.StringIO()
        write_feature_table(hdi_features, buf)
        _, header, rows = read_table(io.StringIO(buf.getvalue()))
        assert header == ["alternative", "criterion", "feature", "value"]
        assert len(rows) == 10 * 3 * 4
        assert rows[0][:3] == ["BR", "c1", "current"]
        assert float(rows[0][3]) == 74.8

    def test_ranking_table_order_and_rounding(self, hdi_features):
        result = tt.rank(hdi_features, tt.WeightScheme((0.333,) * 3, (1, 0, 0, 0)))
        buf = io.StringIO()
        write_ranking_table(result, buf)
        _, header, rows = read_table(io.StringIO(buf.getvalue()))
        assert header == ["alternative", "closeness", "position"]
        assert [r[0] for r in rows] == list(STRATEGY_ORDERS["S1"])
        assert [int(r[2]) for r in rows] == list(range(1, 11))
        # four decimal places at the emission layer
        assert all(len(r[1].split(".")[1]) == 4 for r in rows)

    def test_percentage_table_metadata(self, hdi_features, strategy5_sampler):
        matrix = tt.run_smaa(hdi_features, (0.333,) * 3, strategy5_sampler, 50, seed=77)
        buf = io.StringIO()
        write_percentage_table(matrix, buf)
        meta, header, rows = read_table(io.StringIO(buf.getvalue()))
        assert meta["generator"] == "philox"
        assert meta["seed"] == "77"
        assert meta["iterations"] == "50"
        assert "rejections" in meta
        assert header[0] == "alternative"
        assert len(rows) == 10 and len(rows[0]) == 11
        parsed = np.array([[float(v) for v in r[1:]] for r in rows])
        assert parsed.sum(axis=1) == pytest.approx(np.full(10, 100.0), abs=1e-6)


class TestCli:
    def test_extract_stdout(self, capsys):
        rc = main(["extract", "--data", str(tt.bundled_path("hdi.csv"))])
        assert rc == 0
        out = capsys.readouterr().out
        assert out.startswith("alternative,criterion,feature,value")
        assert "BR,c1,current,74.8000" in out

    def test_extract_feature_subset(self, capsys):
        rc = main(["extract", "--data", str(tt.bundled_path("hdi.csv")), "--features", "slope"])
        assert rc == 0
        out = capsys.readouterr().out
        assert "slope" in out and "average" not in out

    def test_rank_with_bundled_config(self, tmp_path):
        out = tmp_path / "ranking.csv"
        rc = main([
            "rank",
            "--data", str(tt.bundled_path("hdi.csv")),
            "--config", str(tt.bundled_path("configs", "s1.cfg")),
            "-o", str(out),
        ])
        assert rc == 0
        _, _, rows = read_table(out)
        assert [r[0] for r in rows] == list(STRATEGY_ORDERS["S1"])

    def test_rank_with_strategy_flag_and_audit(self, tmp_path):
        out = tmp_path / "ranking.csv"
        audit = tmp_path / "audit"
        rc = main([
            "rank", "--data", str(tt.bundled_path("hdi.csv")),
            "--strategy", "S4", "-o", str(out), "--audit", str(audit),
        ])
        assert rc == 0
        _, _, rows = read_table(out)
        assert [r[0] for r in rows] == list(STRATEGY_ORDERS["S4"])
        for name in ("normalized", "weighted", "ideals", "distances"):
            assert (audit / f"{name}.csv").exists()
        _, header, _ = read_table(audit / "ideals.csv")
        assert header == ["criterion", "feature", "positive", "negative"]

    def test_smaa_subcommand(self, tmp_path, capsys):
        out = tmp_path / "smaa.csv"
        rc = main([
            "smaa", "--data", str(tt.bundled_path("hdi.csv")),
            "--strategy", "S5", "--iterations", "60", "--seed", "5",
            "-o", str(out),
        ])
        assert rc == 0
        meta, _, rows = read_table(out)
        assert meta["iterations"] == "60"
        assert "most_likely" in meta
        assert len(rows) == 10

    def test_rank_rejects_sampling_config(self, capsys):
        rc = main([
            "rank", "--data", str(tt.bundled_path("hdi.csv")), "--strategy", "S5",
        ])
        assert rc == 1
        err = capsys.readouterr().err
        assert err.startswith("error: TensorTopsisError")

    def test_config_and_strategy_conflict(self, capsys):
        rc = main([
            "rank", "--data", str(tt.bundled_path("hdi.csv")),
            "--config", "x.cfg", "--strategy", "S1",
        ])
        assert rc == 1

    def test_validation_error_exit_code(self, tmp_path, capsys):
        path = tmp_path / "broken.csv"
        path.write_text("alternative,criterion,time,value\n")
        rc = main(["rank", "--data", str(path), "--strategy", "S1"])
        assert rc == 1
        assert "error: MissingCellError" in capsys.readouterr().err

    def test_usage_error_exit_code(self, capsys):
        assert main(["bogus"]) == 2
        assert main(["rank"]) == 2  # missing --data

    def test_demo_dominance(self, capsys):
        rc = main(["demo-dominance"])
        assert rc == 0
        out = capsys.readouterr().out
        assert "time,a1,4.0000,1" in out
        assert "trend,a2,0.5000,1" in out
        assert "# preference_reversed=true" in out

    def test_reproduce_matches_committed_tables(self, tmp_path, capsys):
        rc = main(["reproduce", "--outdir", str(tmp_path / "run1")])
        assert rc == 0
        out = capsys.readouterr().out
        assert out.count(": ok") == 6
        rc = main(["reproduce", "--outdir", str(tmp_path / "run2")])
        assert rc == 0
        capsys.readouterr()
        for name in ("features.csv", "ranking_s1.csv", "smaa_s5.csv"):
            first = (tmp_path / "run1" / name).read_bytes()
            second = (tmp_path / "run2" / name).read_bytes()
            assert first == second

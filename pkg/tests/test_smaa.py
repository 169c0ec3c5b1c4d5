import numpy as np
import pytest

import tensortopsis as tt
from tensortopsis.errors import LengthMismatchError, NegativeRemainderError

from properties import check_smaa_parallel_identical, check_smaa_sums
from reference import COUNTRIES, RANK_PERCENTAGES, STRATEGY_ORDERS

W_EQUAL = (0.333, 0.333, 0.333)


class FixedUniform:
    """Stand-in generator whose uniform() always returns a fixed value."""

    def __init__(self, value):
        self.value = value

    def uniform(self, low, high):
        return self.value


class TestWeightSpecs:
    def test_point_bounds(self):
        with pytest.raises(ValueError):
            tt.PointWeight(1.5)
        with pytest.raises(ValueError):
            tt.PointWeight(-0.1)

    def test_uniform_bounds(self):
        with pytest.raises(ValueError):
            tt.UniformWeight(0.3, 0.2)
        with pytest.raises(ValueError):
            tt.UniformWeight(-0.1, 0.5)
        with pytest.raises(ValueError):
            tt.UniformWeight(0.2, 1.1)

    def test_at_most_one_remainder(self):
        with pytest.raises(ValueError, match="remainder"):
            tt.FeatureWeightSampler((tt.RemainderWeight(), tt.RemainderWeight()))

    def test_empty_sampler_rejected(self):
        with pytest.raises(ValueError):
            tt.FeatureWeightSampler(())

    def test_fixed_constructor(self):
        sampler = tt.FeatureWeightSampler.fixed([0.25, 0.25, 0.25, 0.25])
        assert sampler.n_features == 4
        assert not sampler.has_remainder


class TestSampleAlpha:
    def test_strategy5_draws_stay_in_bounds(self, strategy5_sampler):
        rng = np.random.default_rng(41)
        for _ in range(500):
            alpha = tt.sample_alpha(strategy5_sampler, rng)
            assert alpha.sum() == pytest.approx(1.0, abs=1e-12)
            assert 0.4 <= alpha[0] <= 0.7
            assert all(0.1 <= a <= 0.2 for a in alpha[1:])

    def test_point_sampler_is_constant(self):
        sampler = tt.FeatureWeightSampler.fixed([0.25, 0.25, 0.25, 0.25])
        rng = np.random.default_rng(42)
        draws = {tuple(tt.sample_alpha(sampler, rng)) for _ in range(10)}
        assert draws == {(0.25, 0.25, 0.25, 0.25)}

    def test_remainder_arithmetic_with_forced_draws(self):
        sampler = tt.FeatureWeightSampler(
            (
                tt.UniformWeight(0.1, 0.2),
                tt.UniformWeight(0.1, 0.2),
                tt.UniformWeight(0.1, 0.2),
                tt.RemainderWeight(),
            )
        )
        alpha = tt.sample_alpha(sampler, FixedUniform(0.2))
        assert np.allclose(alpha, (0.2, 0.2, 0.2, 0.4))

    def test_no_remainder_normalizes_by_sum(self):
        sampler = tt.FeatureWeightSampler(
            (tt.UniformWeight(0.1, 0.2), tt.UniformWeight(0.1, 0.2))
        )
        rng = np.random.default_rng(43)
        alpha = tt.sample_alpha(sampler, rng)
        assert alpha.sum() == pytest.approx(1.0, abs=1e-12)

    def test_impossible_remainder_aborts(self):
        sampler = tt.FeatureWeightSampler(
            (
                tt.UniformWeight(0.5, 0.9),
                tt.UniformWeight(0.5, 0.9),
                tt.RemainderWeight(),
            )
        )
        rng = np.random.default_rng(44)
        with pytest.raises(NegativeRemainderError, match="1000"):
            tt.sample_alpha(sampler, rng)


class TestRunSmaa:
    def test_rows_and_columns_sum_to_100(self, hdi_features, strategy5_sampler):
        check_smaa_sums(hdi_features, W_EQUAL, strategy5_sampler, iterations=300, seed=11)

    def test_single_iteration_point_mass_encodes_ranking(self, hdi_features):
        sampler = tt.FeatureWeightSampler.fixed([1, 0, 0, 0])
        matrix = tt.run_smaa(hdi_features, W_EQUAL, sampler, iterations=1, seed=0)
        expected = STRATEGY_ORDERS["S1"]
        for position, country in enumerate(expected):
            i = matrix.alternative_ids.index(country)
            assert matrix.values[i, position] == 100.0
        assert matrix.counts.sum() == 1 * len(COUNTRIES)

    def test_point_mass_is_100_percent_for_any_iteration_count(self, hdi_features):
        sampler = tt.FeatureWeightSampler.fixed([0.25, 0.25, 0.25, 0.25])
        matrix = tt.run_smaa(hdi_features, W_EQUAL, sampler, iterations=7, seed=1)
        deterministic = tt.rank(hdi_features, tt.WeightScheme(W_EQUAL, (0.25,) * 4))
        for position, country in enumerate(deterministic.ranked_ids):
            i = matrix.alternative_ids.index(country)
            assert matrix.values[i, position] == 100.0

    def test_bit_identical_across_workers(self, hdi_features, strategy5_sampler):
        check_smaa_parallel_identical(
            hdi_features, W_EQUAL, strategy5_sampler, iterations=400, seed=5
        )

    def test_seed_recorded_and_deterministic(self, hdi_features, strategy5_sampler):
        first = tt.run_smaa(hdi_features, W_EQUAL, strategy5_sampler, iterations=200, seed=99)
        second = tt.run_smaa(hdi_features, W_EQUAL, strategy5_sampler, iterations=200, seed=99)
        assert first.seed == tt.SeedRecord("philox", 99)
        assert np.array_equal(first.values, second.values)

    def test_fresh_seed_drawn_when_omitted(self, hdi_features, strategy5_sampler):
        matrix = tt.run_smaa(hdi_features, W_EQUAL, strategy5_sampler, iterations=10)
        assert matrix.seed.generator == "philox"
        assert matrix.seed.seed >= 0

    def test_rejections_counted(self, hdi_features):
        # three wide intervals make the remainder negative now and then
        sampler = tt.FeatureWeightSampler(
            (
                tt.UniformWeight(0.25, 0.45),
                tt.UniformWeight(0.25, 0.45),
                tt.UniformWeight(0.25, 0.45),
                tt.RemainderWeight(),
            )
        )
        matrix = tt.run_smaa(hdi_features, W_EQUAL, sampler, iterations=300, seed=12)
        assert matrix.rejections > 0
        assert np.abs(matrix.values.sum(axis=1) - 100).max() <= 1e-6

    def test_sampler_length_must_match(self, hdi_features):
        sampler = tt.FeatureWeightSampler.fixed([0.5, 0.5])
        with pytest.raises(LengthMismatchError):
            tt.run_smaa(hdi_features, W_EQUAL, sampler, iterations=5, seed=0)

    def test_iterations_must_be_positive(self, hdi_features, strategy5_sampler):
        with pytest.raises(ValueError):
            tt.run_smaa(hdi_features, W_EQUAL, strategy5_sampler, iterations=0, seed=0)

    def test_monte_carlo_consistency_across_seeds(self, hdi_features, strategy5_sampler):
        # binomial noise at p~0.92 and L=10000 is ~0.27 points, so two
        # independent seeds agree to well under 2 points
        my = COUNTRIES.index("MY")
        first = tt.run_smaa(hdi_features, W_EQUAL, strategy5_sampler, 10_000, seed=1001)
        second = tt.run_smaa(hdi_features, W_EQUAL, strategy5_sampler, 10_000, seed=2002)
        assert abs(first.values[my, 0] - second.values[my, 0]) < 2.0


def reference_matrix() -> tt.PercentageMatrix:
    values = np.array([RANK_PERCENTAGES[c] for c in COUNTRIES])
    counts = np.round(values * 100).astype(np.int64)  # exact at two decimals
    return tt.PercentageMatrix(
        values=values,
        counts=counts,
        iterations=10_000,
        alternative_ids=COUNTRIES,
        seed=tt.SeedRecord("reference", 0),
    )


class TestMostLikelyRanking:
    def test_identity_matrix_has_no_conflicts(self):
        m = 4
        matrix = tt.PercentageMatrix(
            values=np.eye(m) * 100,
            counts=np.eye(m, dtype=np.int64) * 10,
            iterations=10,
            alternative_ids=tuple("abcd"),
            seed=tt.SeedRecord("reference", 0),
        )
        likely = tt.most_likely_ranking(matrix)
        assert likely.alternatives == tuple("abcd")
        assert likely.is_consistent
        assert likely.conflicted_positions == ()

    def test_uniform_matrix_flags_everything(self):
        m = 3
        matrix = tt.PercentageMatrix(
            values=np.full((m, m), 100.0 / m),
            counts=np.full((m, m), 1, dtype=np.int64),
            iterations=3,
            alternative_ids=tuple("abc"),
            seed=tt.SeedRecord("reference", 0),
        )
        likely = tt.most_likely_ranking(matrix)
        assert likely.alternatives == ("a", "a", "a")
        assert likely.conflicted_positions == (1, 2, 3)

    def test_reference_matrix_reports_conflicts(self):
        # in the published percentages ID wins both positions 7 and 8 and PH
        # wins both 9 and 10; the winners are reported with flags, unresolved
        likely = tt.most_likely_ranking(reference_matrix())
        assert likely.alternatives == (
            "MY", "RU", "TR", "BR", "MX", "CN", "ID", "ID", "PH", "PH"
        )
        assert likely.conflicted_positions == (7, 8, 9, 10)
        assert likely.percentages[0] == pytest.approx(92.07)


class TestPercentageMatrixValidation:
    def test_row_sum_violation_rejected(self):
        values = np.eye(3) * 100
        values[0, 0] = 99.0
        with pytest.raises(ValueError):
            tt.PercentageMatrix(
                values=values,
                counts=np.eye(3, dtype=np.int64),
                iterations=1,
                alternative_ids=("a", "b", "c"),
                seed=tt.SeedRecord("reference", 0),
            )

    def test_shape_checked(self):
        with pytest.raises(tt.ShapeMismatchError):
            tt.PercentageMatrix(
                values=np.eye(2) * 100,
                counts=np.eye(2, dtype=np.int64),
                iterations=1,
                alternative_ids=("a", "b", "c"),
                seed=tt.SeedRecord("reference", 0),
            )


class TestSmaaEstimator:
    def test_fit_exposes_matrix(self, hdi_features, strategy5_sampler):
        est = tt.SmaaAnalysis(
            sampler=strategy5_sampler, criterion_weights=W_EQUAL, iterations=100, seed=3
        )
        est.fit(hdi_features)
        assert est.percentage_matrix_.iterations == 100
        assert len(est.most_likely_.alternatives) == 10

    def test_missing_sampler_rejected(self, hdi_features):
        with pytest.raises(ValueError):
            tt.SmaaAnalysis().fit(hdi_features)

    def test_get_params(self, strategy5_sampler):
        est = tt.SmaaAnalysis(sampler=strategy5_sampler, iterations=50)
        params = est.get_params()
        assert params["iterations"] == 50
        assert params["sampler"] is strategy5_sampler

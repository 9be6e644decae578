# -*- coding: utf-8 -*-
"""置换检验、渐近置信区间与模拟测试"""

import numpy as np
import pytest

from subindependence.core.data_model import AlphaParam, EstimateKind, EstimatorConfig, EstimatorMode, PairedSample
from subindependence.core.errors import EstimatorError, ValidationError
from subindependence.core.random_streams import GENERATOR_STREAM, substream
from subindependence.estimators.sicov_estimator import sicor_hat
from subindependence.inference.asymptotic import asymptotic_ci, k1_row_estimates
from subindependence.inference.permutation import (
    CompleteUPermutationEngine,
    FastVPermutationEngine,
    RecomputePermutationEngine,
    build_engine,
    canonical_order,
    permutation_test,
)
from subindependence.inference.simulation import (
    bivariate_normal,
    cauchy_grid,
    get_generator,
    normal_grid,
    null_distribution_sim,
    power_study,
    rademacher_pairs,
    summarize_null_draws,
)
from subindependence.kernels.term_statistics import (
    FastVTermCalculator,
    IncompleteUTermCalculator,
    NaiveVTermCalculator,
    term_statistics,
)
from subindependence.oracle.closed_forms import normal_closed_form

V_FAST = EstimatorConfig.from_config(mode="v-fast")


class TestPermutationEngines:

    def test_complete_engine_matches_recomputation(self, normal_sample, rng):
        config = EstimatorConfig.from_config(mode="u")
        engine = CompleteUPermutationEngine(normal_sample, 0.7, config)
        for _ in range(5):
            order = rng.permutation(normal_sample.n)
            expected = term_statistics(normal_sample.with_y_order(order), AlphaParam(0.7), config).sicov
            assert engine.sicov(order) == pytest.approx(expected, rel=1e-9, abs=1e-12)

    def test_fast_engine_matches_recomputation(self, scalar_sample, rng):
        engine = FastVPermutationEngine(scalar_sample, 1.0, V_FAST)
        calculator = FastVTermCalculator(V_FAST)
        order = rng.permutation(scalar_sample.n)
        expected = calculator.compute(scalar_sample.with_y_order(order), AlphaParam(1.0)).sicov
        assert engine.sicov(order) == pytest.approx(expected, rel=1e-9, abs=1e-12)

    def test_incomplete_engine_reuses_tuples(self, scalar_sample, rng):
        config = EstimatorConfig.from_config(mode="u-incomplete", tuple_budget=2000)
        engine = build_engine(scalar_sample, AlphaParam(1.0), config)
        assert isinstance(engine, RecomputePermutationEngine)
        assert isinstance(engine.calculator, IncompleteUTermCalculator)
        order = rng.permutation(scalar_sample.n)
        expected = term_statistics(scalar_sample.with_y_order(order), AlphaParam(1.0), config).sicov
        assert engine.sicov(order) == pytest.approx(expected, rel=1e-12)

    def test_fractional_alpha_v_fast_recomputes(self, scalar_sample, rng):
        engine = build_engine(scalar_sample, AlphaParam(0.5), V_FAST)
        assert isinstance(engine, RecomputePermutationEngine)
        assert isinstance(engine.calculator, FastVTermCalculator)
        assert engine.mode is EstimatorMode.V_FAST
        order = rng.permutation(scalar_sample.n)
        expected = NaiveVTermCalculator(V_FAST).compute(scalar_sample.with_y_order(order), AlphaParam(0.5)).sicov
        assert engine.sicov(order) == pytest.approx(expected, rel=1e-9, abs=1e-12)

    def test_identity_order_gives_statistic(self, normal_sample):
        engine = CompleteUPermutationEngine(normal_sample, 1.0, EstimatorConfig.from_config(mode="u"))
        expected = term_statistics(normal_sample, AlphaParam(1.0), EstimatorConfig.from_config(mode="u")).sicov
        assert engine.statistic() == pytest.approx(normal_sample.n * expected, rel=1e-9)

    def test_fast_engine_restrictions(self, normal_sample):
        with pytest.raises(EstimatorError):
            FastVPermutationEngine(normal_sample, 1.0, V_FAST)

    def test_canonical_order_is_row_label_free(self, scalar_sample, rng):
        order = rng.permutation(scalar_sample.n)
        shuffled = PairedSample(scalar_sample.x[order], scalar_sample.y[order])
        a, b = canonical_order(scalar_sample), canonical_order(shuffled)
        np.testing.assert_array_equal(a.x, b.x)
        np.testing.assert_array_equal(a.y, b.y)


class TestPermutationTest:

    def test_dependent_sample_rejects(self, rng):
        x = rng.standard_normal(30)
        result = permutation_test(PairedSample(x, x), 1.0, 999, 0.05)
        assert result.p_value == pytest.approx(1.0 / 1000.0)
        assert result.reject
        assert result.mode == "u"

    def test_p_value_formula(self, scalar_sample):
        result = permutation_test(scalar_sample, 1.0, 99, 0.05, V_FAST)
        exceed = sum(r >= result.statistic for r in result.replicates)
        assert result.p_value == pytest.approx((1 + exceed) / 100.0)
        assert len(result.replicates) == 99
        assert 1.0 / 100.0 <= result.p_value <= 1.0

    def test_deterministic_and_thread_independent(self, scalar_sample):
        first = permutation_test(scalar_sample, 1.0, 59, 0.05, EstimatorConfig.from_config(mode="u", seed=5))
        second = permutation_test(scalar_sample, 1.0, 59, 0.05, EstimatorConfig.from_config(mode="u", seed=5))
        threaded = permutation_test(
            scalar_sample, 1.0, 59, 0.05, EstimatorConfig.from_config(mode="u", seed=5, n_jobs=3)
        )
        assert first == second
        assert first.replicates == threaded.replicates

    def test_invariant_to_row_relabeling(self, scalar_sample, rng):
        order = rng.permutation(scalar_sample.n)
        shuffled = PairedSample(scalar_sample.x[order], scalar_sample.y[order])
        a = permutation_test(scalar_sample, 1.0, 39, 0.05, V_FAST)
        b = permutation_test(shuffled, 1.0, 39, 0.05, V_FAST)
        assert a.p_value == b.p_value
        assert a.statistic == b.statistic

    @pytest.mark.parametrize("permutations", [5, 18, True, 100.5])
    def test_invalid_permutation_count(self, scalar_sample, permutations):
        with pytest.raises(ValidationError):
            permutation_test(scalar_sample, 1.0, permutations)

    def test_invalid_level(self, scalar_sample):
        with pytest.raises(ValidationError, match="level"):
            permutation_test(scalar_sample, 1.0, 99, 1.5)

    def test_result_dict(self, scalar_sample):
        result = permutation_test(scalar_sample, 1.0, 19, 0.05, V_FAST)
        payload = result.to_dict()
        assert set(payload) >= {"statistic", "p_value", "reject", "permutations", "seed"}
        assert "replicates" not in payload
        assert len(result.to_dict(include_replicates=True)["replicates"]) == 19


class TestAsymptoticInterval:

    def test_constant_margin_collapses(self, rng):
        sample = PairedSample(np.full(10, 3.0), rng.standard_normal(10))
        ci = asymptotic_ci(sample, 1.0, 0.95, k1_budget=50, config=EstimatorConfig.from_config(mode="u"))
        assert ci.lower == pytest.approx(0.0, abs=1e-12)
        assert ci.upper == pytest.approx(0.0, abs=1e-12)
        assert ci.variance_hat == pytest.approx(0.0, abs=1e-20)
        assert any("constant margin" in w for w in ci.warnings)

    def test_dependent_sample_interval(self, rng):
        x = rng.standard_normal(30)
        sample = PairedSample(x, x + 0.3 * rng.standard_normal(30))
        ci = asymptotic_ci(sample, 1.0, 0.9, k1_budget=200, config=EstimatorConfig.from_config(mode="u"))
        assert ci.lower < ci.center < ci.upper
        assert ci.variance_hat > 0
        assert ci.level == 0.9
        assert ci.estimate.ci == (ci.lower, ci.upper, 0.9)
        assert ci.estimate.value == ci.center
        assert ci.estimate.kind is EstimateKind.SICOV

    def test_exhaustive_rows_have_no_monte_carlo_variance(self, rng):
        sample = PairedSample(rng.standard_normal(8), rng.standard_normal(8))
        estimates, mc_variances = k1_row_estimates(sample, 1.0, 1000, seed=1)
        assert estimates.shape == (8,)
        assert np.all(mc_variances == 0.0)

    def test_too_small(self, rng):
        sample = PairedSample(rng.standard_normal(6), rng.standard_normal(6))
        with pytest.raises(EstimatorError, match="n >= 8"):
            asymptotic_ci(sample)

    def test_invalid_level(self, scalar_sample):
        with pytest.raises(ValidationError):
            asymptotic_ci(scalar_sample, 1.0, 1.0)


class TestGenerators:

    def test_bivariate_normal_range(self, rng):
        with pytest.raises(ValidationError):
            bivariate_normal(10, 1.5, rng)

    def test_rademacher_relations(self, rng):
        sample = rademacher_pairs(20, rng, "negation")
        np.testing.assert_array_equal(sample.y, -sample.x)
        with pytest.raises(ValidationError):
            rademacher_pairs(20, rng, "bogus")

    def test_unknown_generator(self):
        with pytest.raises(ValidationError, match="unknown generator"):
            get_generator("bogus")


class TestSimulation:

    def test_null_draws_reproducible(self):
        first = null_distribution_sim("independent-normal", 20, 100, config=V_FAST)
        second = null_distribution_sim("independent-normal", 20, 100, config=V_FAST)
        assert first.shape == (100,)
        np.testing.assert_array_equal(first, second)

    def test_null_draws_depend_on_seed(self):
        first = null_distribution_sim("independent-normal", 20, 100, seed=1, config=V_FAST)
        second = null_distribution_sim("independent-normal", 20, 100, seed=2, config=V_FAST)
        assert not np.array_equal(first, second)

    def test_too_few_replicates(self):
        with pytest.raises(ValidationError, match="replicates"):
            null_distribution_sim("independent-normal", 20, 99)

    def test_summary(self, rng):
        summary = summarize_null_draws(rng.exponential(size=500))
        assert summary.count == 500
        assert summary.skewness > 0
        with pytest.raises(ValidationError):
            summarize_null_draws([1.0, 2.0])

    def test_power_study_counts(self):
        result = power_study("quadratic", 40, 4, permutations=19, config=V_FAST)
        assert result.runs == 4
        assert 0 <= result.rejections <= 4
        assert result.rate == result.rejections / 4

    def test_normal_grid_rows(self):
        rows = normal_grid([0.0, 1.0], 30, config=EstimatorConfig.from_config(mode="u"))
        assert [row["rho"] for row in rows] == [0.0, 1.0]
        assert rows[0]["closed_form_sicor"] == 0.0
        assert rows[1]["closed_form_sicor"] == pytest.approx(0.085164, abs=1e-6)
        assert rows[1]["ratio_r"] == pytest.approx(1.0)

    def test_cauchy_grid_rows(self):
        rows = cauchy_grid([0.2, 0.5, 0.8])
        values = [row["sicor"] for row in rows]
        assert values == sorted(values)
        assert set(rows[0]) == {"alpha", "sicov", "denominator", "sicor"}


@pytest.mark.slow
class TestAcceptanceStudies:

    def test_level_under_independence(self):
        result = power_study("independent-normal", 100, 1000, permutations=199, level=0.05, config=V_FAST)
        assert 0.03 <= result.rate <= 0.07

    def test_power_against_uncorrelated_dependence(self):
        result = power_study("quadratic", 200, 200, permutations=199, level=0.05, config=V_FAST)
        assert result.rate >= 0.8

    def test_null_draws_are_skewed(self):
        draws = null_distribution_sim("independent-rademacher", 200, 1000, config=V_FAST)
        summary = summarize_null_draws(draws)
        assert summary.skewness > 0
        assert summary.normality_pvalue < 0.01

    def test_interval_coverage_in_normal_regime(self):
        target = normal_closed_form(0.5).sicov
        config = EstimatorConfig.from_config(mode="u-incomplete")
        covered = 0
        runs = 500
        for index in range(runs):
            sample = bivariate_normal(400, 0.5, np.random.default_rng(index))
            ci = asymptotic_ci(sample, 1.0, 0.95, k1_budget=500, config=config)
            covered += ci.lower <= target <= ci.upper
        assert 0.90 <= covered / runs <= 0.98

    def test_degeneracy_warning_under_independence(self):
        config = EstimatorConfig.from_config(mode="u-incomplete", tuple_budget=50000)
        fired = 0
        runs = 40
        for index in range(runs):
            sample = PairedSample(*np.random.default_rng(index).standard_normal((2, 200)))
            ci = asymptotic_ci(sample, 1.0, 0.95, k1_budget=300, config=config)
            fired += any("degenerate" in w for w in ci.warnings)
        assert fired / runs >= 0.95

    def test_normal_grid_at_full_size(self):
        # 用与 normal_grid 相同的子流重建样本，按行重抽样估计自助法标准误
        rhos = [-1.0, -0.5, 0.0, 0.5, 1.0]
        config = EstimatorConfig.from_config(mode="u-incomplete")
        rows = normal_grid(rhos, 2000, config=config)
        for index, row in enumerate(rows):
            sample = bivariate_normal(2000, row["rho"], substream(config.seed, GENERATOR_STREAM, index))
            resampler = np.random.default_rng(index)
            replicates = []
            for _ in range(25):
                picked = resampler.integers(0, sample.n, sample.n)
                replicates.append(sicor_hat(PairedSample(sample.x[picked], sample.y[picked]), 1.0, config).value)
            bootstrap_se = float(np.std(replicates, ddof=1))
            assert row["abs_error_sicor"] <= max(0.01, 3.0 * bootstrap_se)

# -*- coding: utf-8 -*-
"""siCov / siCor 点估计与基线测试"""

import numpy as np
import pytest
from scipy.stats import ortho_group

from conftest import brute_force_dcov2, brute_force_sicov
from subindependence.core.data_model import EstimatorConfig, EstimatorMode, PairedSample
from subindependence.core.errors import EstimatorError, ValidationError
from subindependence.estimators.baselines import dcov_dcor_baseline, pearson_baseline
from subindependence.estimators.sicov_estimator import sicor_hat, sicov_hat, sicov_sicor, sicov_v_fast_1d
from subindependence.inference.permutation import permutation_test
from subindependence.inference.simulation import bivariate_normal, quadratic_pairs, rademacher_pairs
from subindependence.oracle.closed_forms import normal_closed_form


class TestSicovHat:

    def test_matches_definition(self, normal_sample, complete_config):
        report = sicov_hat(normal_sample, 1.3, complete_config)
        assert report.value == pytest.approx(brute_force_sicov(normal_sample, 1.3), rel=1e-10)
        assert report.estimate.mode is EstimatorMode.U_COMPLETE
        assert report.estimate.tuple_budget is None

    def test_incomplete_records_budget(self, scalar_sample):
        config = EstimatorConfig.from_config(mode="u-incomplete", tuple_budget=2000)
        report = sicov_hat(scalar_sample, 1.0, config)
        assert report.estimate.mode is EstimatorMode.U_INCOMPLETE
        assert report.estimate.tuple_budget == 2000
        assert report.estimate.seed == config.seed

    def test_translation_invariant(self, normal_sample, complete_config):
        shifted = PairedSample(normal_sample.x + 3.0, normal_sample.y - 1.5)
        assert sicov_hat(shifted, 0.7, complete_config).value == pytest.approx(
            sicov_hat(normal_sample, 0.7, complete_config).value, rel=1e-9, abs=1e-12
        )

    @pytest.mark.parametrize("alpha", [0.5, 1.0, 1.5])
    def test_scale_equivariant(self, normal_sample, complete_config, alpha):
        scaled = PairedSample(2.5 * normal_sample.x, 2.5 * normal_sample.y)
        base = sicov_hat(normal_sample, alpha, complete_config).value
        assert sicov_hat(scaled, alpha, complete_config).value == pytest.approx(
            2.5 ** alpha * base, rel=1e-9, abs=1e-12
        )
        assert sicor_hat(scaled, alpha, complete_config).value == pytest.approx(
            sicor_hat(normal_sample, alpha, complete_config).value, rel=1e-9, abs=1e-12
        )

    def test_orthogonal_invariant(self, normal_sample, complete_config):
        angle = 0.83
        q = np.array([[np.cos(angle), -np.sin(angle)], [np.sin(angle), np.cos(angle)]])
        rotated = PairedSample(normal_sample.x @ q.T, normal_sample.y @ q.T)
        assert sicov_hat(rotated, 1.0, complete_config).value == pytest.approx(
            sicov_hat(normal_sample, 1.0, complete_config).value, rel=1e-9, abs=1e-12
        )

    def test_symmetric_in_margins(self, normal_sample, complete_config):
        assert sicov_hat(normal_sample.swapped(), 0.9, complete_config).value == pytest.approx(
            sicov_hat(normal_sample, 0.9, complete_config).value, rel=1e-10, abs=1e-12
        )

    def test_negative_estimate_warns(self, rng, complete_config):
        # 独立样本的无偏估计在 0 附近波动；找一个为负的种子
        for _ in range(50):
            sample = PairedSample(rng.standard_normal(12), rng.standard_normal(12))
            report = sicov_hat(sample, 1.0, complete_config)
            if report.value < 0:
                assert any("negative" in w for w in report.estimate.warnings)
                return
        pytest.fail("no negative U estimate in 50 independent samples")

    def test_too_small(self):
        with pytest.raises(EstimatorError):
            sicov_hat(PairedSample([0.0, 1.0, 2.0], [0.0, 1.0, 2.0]))

    def test_invalid_alpha(self, normal_sample):
        with pytest.raises(ValidationError, match=r"\(0,2\)"):
            sicov_hat(normal_sample, 2.0)


class TestSicorHat:

    def test_constant_margin_gives_zero(self, complete_config):
        sample = PairedSample(np.full(6, 2.0), np.arange(6.0))
        report = sicor_hat(sample, 1.0, complete_config)
        assert report.value == 0.0
        assert any("constant" in w for w in report.estimate.warnings)

    def test_non_positive_denominator(self, complete_config):
        # K1 = K2 = 1/2，K3 = 1
        sample = PairedSample([0.0, 0.0, 0.0, 1.0], [0.0, 0.0, 0.0, 1.0])
        with pytest.raises(EstimatorError, match="denominator"):
            sicor_hat(sample, 1.0, complete_config)

    def test_shares_terms_with_sicov(self, normal_sample, complete_config):
        sicov_report, sicor_report = sicov_sicor(normal_sample, 1.0, complete_config)
        assert sicor_report.numerator == sicov_report.value
        assert sicor_report.value == pytest.approx(sicor_report.numerator / sicor_report.denominator)

    def test_identity_sample_positive(self, rng):
        x = rng.standard_normal(40)
        report = sicor_hat(PairedSample(x, x), 1.0, EstimatorConfig.from_config(mode="u"))
        assert 0.0 < report.value <= 1.0

    def test_clamp(self, rng, complete_config):
        for _ in range(50):
            sample = PairedSample(rng.standard_normal(12), rng.standard_normal(12))
            raw = sicor_hat(sample, 1.0, complete_config)
            if raw.value < 0:
                clamped = sicor_hat(sample, 1.0, complete_config, clamp=True)
                assert clamped.value == 0.0
                assert any("clamped" in w for w in clamped.estimate.warnings)
                assert any("outside [0,1]" in w for w in raw.estimate.warnings)
                return
        pytest.fail("no negative siCor in 50 independent samples")


class TestFastPath:

    def test_v_fast_on_sub_independent_sample(self, lattice_sample):
        # 经验分布本身次独立，V 统计量即为其总体 siCov
        assert sicov_v_fast_1d(lattice_sample).value == pytest.approx(0.0, abs=1e-12)

    def test_v_fast_fractional_alpha(self, rng):
        x = rng.standard_normal(50)
        sample = PairedSample(x, np.abs(x) + rng.standard_normal(50))
        report = sicov_v_fast_1d(sample, 0.5)
        assert report.estimate.mode is EstimatorMode.V_FAST
        via_config = sicov_hat(sample, 0.5, EstimatorConfig.from_config(mode="v-fast"))
        assert via_config.value == report.value
        assert report.terms.j2 == pytest.approx(report.terms.k3, rel=1e-12)

    def test_multivariate_v_fast_records_naive_path(self, normal_sample):
        report = sicov_hat(normal_sample, 1.0, EstimatorConfig.from_config(mode="v-fast"))
        assert report.estimate.mode is EstimatorMode.V_STATISTIC
        assert any("naive V enumeration" in w for w in report.estimate.warnings)
        assert report.value == pytest.approx(brute_force_sicov(normal_sample, 1.0, distinct=False), rel=1e-9)

    def test_v_fast_requires_scalar_margins(self, normal_sample):
        with pytest.raises(EstimatorError, match="p = 1"):
            sicov_v_fast_1d(normal_sample)

    def test_v_fast_matches_definition(self, rng):
        x = rng.standard_normal(7)
        sample = PairedSample(x, np.abs(x) + 0.1 * rng.standard_normal(7))
        assert sicov_v_fast_1d(sample).value == pytest.approx(
            brute_force_sicov(sample, 1.0, distinct=False), rel=1e-9, abs=1e-12
        )


class TestBaselines:

    def test_dcor_of_identity(self, scalar_sample):
        _, dcor = dcov_dcor_baseline(PairedSample(scalar_sample.x, scalar_sample.x))
        assert dcor.value == pytest.approx(1.0)
        assert dcor.mode is EstimatorMode.V_STATISTIC

    def test_dcor_constant_margin(self):
        dcov, dcor = dcov_dcor_baseline(PairedSample(np.ones(5), np.arange(5.0)))
        assert dcov.value == 0.0 and dcor.value == 0.0
        assert dcor.warnings

    def test_dcor_alpha_restriction(self, scalar_sample):
        with pytest.raises(ValidationError):
            dcov_dcor_baseline(scalar_sample, alpha=0.5)

    @pytest.mark.parametrize("slope, intercept, expected", [(2.0, 1.0, 1.0), (-1.0, 0.0, -1.0)])
    def test_pearson_linear(self, scalar_sample, slope, intercept, expected):
        x = scalar_sample.x[:, 0]
        assert pearson_baseline(PairedSample(x, slope * x + intercept)).value == pytest.approx(expected)

    def test_pearson_five_points(self):
        sample = PairedSample([1.0, 2.0, 3.0, 4.0, 5.0], [2.0, 4.0, 5.0, 4.0, 5.0])
        assert pearson_baseline(sample).value == pytest.approx(6.0 / np.sqrt(60.0), rel=1e-12)

    def test_dcov_matches_direct_sums(self, rng):
        x = rng.standard_normal((10, 2))
        sample = PairedSample(x, np.abs(x) + 0.5 * rng.standard_normal((10, 2)))
        dcov, _ = dcov_dcor_baseline(sample)
        assert dcov.value ** 2 == pytest.approx(brute_force_dcov2(sample), rel=1e-10)

    def test_dcor_independent_large_n(self, rng):
        _, dcor = dcov_dcor_baseline(PairedSample(rng.standard_normal(2000), rng.standard_normal(2000)))
        assert dcor.value < 0.1

    def test_pearson_on_lattice(self, lattice_sample):
        assert pearson_baseline(lattice_sample).value == pytest.approx(0.0, abs=1e-12)

    def test_pearson_restrictions(self, normal_sample):
        with pytest.raises(ValidationError):
            pearson_baseline(normal_sample)
        with pytest.raises(EstimatorError, match="zero sample variance"):
            pearson_baseline(PairedSample(np.ones(4), np.arange(4.0)))


class TestInvariancesOnRandomData:
    """20 组 p=3 的随机数据上检查平移、伸缩、正交变换与交换对称"""

    N_DATASETS = 20

    @pytest.fixture
    def datasets(self, rng):
        samples = []
        for _ in range(self.N_DATASETS):
            x = rng.standard_normal((6, 3))
            samples.append(PairedSample(x, 0.5 * x + rng.standard_normal((6, 3))))
        return samples

    def test_translation(self, datasets, rng, complete_config):
        for sample in datasets:
            shift_x, shift_y = rng.uniform(-2.0, 2.0, size=(2, 3))
            shifted = PairedSample(sample.x + shift_x, sample.y + shift_y)
            assert sicov_hat(shifted, 1.0, complete_config).value == pytest.approx(
                sicov_hat(sample, 1.0, complete_config).value, rel=1e-12, abs=1e-12
            )

    def test_scale(self, datasets, rng, complete_config):
        for sample in datasets:
            b = rng.uniform(-3.0, 3.0)
            scaled = PairedSample(b * sample.x, b * sample.y)
            assert sicov_hat(scaled, 0.8, complete_config).value == pytest.approx(
                abs(b) ** 0.8 * sicov_hat(sample, 0.8, complete_config).value, rel=1e-9, abs=1e-12
            )

    def test_orthogonal(self, datasets, complete_config):
        rotations = ortho_group.rvs(dim=3, size=self.N_DATASETS, random_state=7)
        for sample, c in zip(datasets, rotations):
            rotated = PairedSample(sample.x @ c.T, sample.y @ c.T)
            assert sicov_hat(rotated, 1.2, complete_config).value == pytest.approx(
                sicov_hat(sample, 1.2, complete_config).value, rel=1e-9, abs=1e-12
            )
            assert sicor_hat(rotated, 1.2, complete_config).value == pytest.approx(
                sicor_hat(sample, 1.2, complete_config).value, rel=1e-9, abs=1e-12
            )

    def test_swap(self, datasets, complete_config):
        for sample in datasets:
            assert sicov_hat(sample.swapped(), 1.0, complete_config).value == pytest.approx(
                sicov_hat(sample, 1.0, complete_config).value, rel=1e-12, abs=1e-12
            )


class TestOrderingChain:

    def test_independent_data_is_near_zero_everywhere(self, rng):
        sample = PairedSample(rng.standard_normal(1000), rng.standard_normal(1000))
        _, dcor = dcov_dcor_baseline(sample)
        sicor = sicor_hat(sample, 1.0, EstimatorConfig.from_config(mode="v-fast"))
        assert dcor.value < 0.1
        assert abs(sicor.value) < 0.02
        assert abs(pearson_baseline(sample).value) < 0.1

    def test_uncorrelated_but_dependent(self, rng):
        sample = quadratic_pairs(400, rng)
        assert abs(pearson_baseline(sample).value) < 0.3
        result = permutation_test(sample, 1.0, 199, 0.05, EstimatorConfig.from_config(mode="v-fast"))
        assert result.reject


@pytest.mark.slow
class TestLargeSampleBehaviour:

    def test_unbiased_against_closed_form(self):
        target = normal_closed_form(0.5).sicov
        config = EstimatorConfig.from_config(mode="u")
        values = np.array([
            sicov_hat(bivariate_normal(20, 0.5, np.random.default_rng(index)), 1.0, config).value
            for index in range(1000)
        ])
        standard_error = values.std(ddof=1) / np.sqrt(values.size)
        assert abs(values.mean() - target) <= 3.0 * standard_error

    def test_error_shrinks_with_n(self):
        target = normal_closed_form(0.5).sicov
        config = EstimatorConfig.from_config(mode="v-fast")
        medians = []
        for n in (100, 400, 1600):
            errors = [
                abs(sicov_hat(bivariate_normal(n, 0.5, np.random.default_rng([n, index])), 1.0, config).value - target)
                for index in range(50)
            ]
            medians.append(float(np.median(errors)))
        assert medians[0] > medians[1] > medians[2]

    def test_v_fast_rademacher_identity(self, rng):
        sample = rademacher_pairs(5000, rng, "identity")
        sicov_report, sicor_report = sicov_sicor(sample, 1.0, EstimatorConfig.from_config(mode="v-fast"))
        assert sicov_report.value == pytest.approx(0.5, abs=0.02)
        assert sicor_report.value == pytest.approx(1.0, abs=0.02)

#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
渐近置信区间模块
非退化情形下 sqrt(n)(siCov_hat - siCov) 渐近服从 N(0, 16 Var(k1))，
Var(k1) 由逐行的蒙特卡罗 k1 估计的样本方差近似
"""

import logging
from dataclasses import dataclass, field, replace
from typing import Optional, Tuple, Union

import numpy as np
from joblib import Parallel, delayed
from scipy.stats import norm

from ..core.data_model import AlphaParam, DependenceEstimate, EstimatorConfig, PairedSample, validate_alpha
from ..core.errors import EstimatorError, ValidationError
from ..estimator_config import get_inference_config
from ..estimators.sicov_estimator import sicov_hat
from ..kernels.symmetric_kernel import k1_draws

logger = logging.getLogger(__name__)

MIN_CI_N = 8


@dataclass(frozen=True)
class ConfidenceInterval:
    """siCov 的正态近似置信区间"""
    lower: float
    upper: float
    level: float
    variance_hat: float
    center: float = 0.0
    warnings: Tuple[str, ...] = field(default_factory=tuple)
    estimate: Optional[DependenceEstimate] = None     # 带 ci 的 siCov 点估计

    def to_dict(self):
        return {
            "lower": self.lower,
            "upper": self.upper,
            "level": self.level,
            "variance_hat": self.variance_hat,
            "center": self.center,
            "warnings": list(self.warnings),
            "estimate": None if self.estimate is None else self.estimate.to_dict(),
        }


def k1_row_estimates(
    sample: PairedSample, alpha: float, k1_budget: int, seed: int, n_jobs: int = 1
) -> Tuple[np.ndarray, np.ndarray]:
    """逐行计算 k1_hat(i) 及其蒙特卡罗方差（完全枚举时为 0）"""

    def row(i: int) -> Tuple[float, float]:
        values, exhaustive = k1_draws(sample, i, alpha, k1_budget, seed)
        mc_var = 0.0 if exhaustive or values.shape[0] < 2 else float(np.var(values, ddof=1) / values.shape[0])
        return float(values.mean()), mc_var

    if n_jobs > 1:
        rows = Parallel(n_jobs=n_jobs, backend="threading")(delayed(row)(i) for i in range(sample.n))
    else:
        rows = [row(i) for i in range(sample.n)]
    estimates = np.array([r[0] for r in rows])
    mc_variances = np.array([r[1] for r in rows])
    return estimates, mc_variances


def asymptotic_ci(
    sample: PairedSample,
    alpha: Union[AlphaParam, float] = 1.0,
    level: float = 0.95,
    k1_budget: int = 1000,
    config: Optional[EstimatorConfig] = None,
    degeneracy_factor: Optional[float] = None,
) -> ConfidenceInterval:
    """以 siCov_hat 为中心、方差 16 Var(k1) / n 的正态区间；方差过小时附带退化告警"""

    alpha = validate_alpha(getattr(alpha, "alpha", alpha))
    config = config if config is not None else EstimatorConfig.from_config()
    level = float(level)
    if not 0.0 < level < 1.0:
        raise ValidationError(f"confidence level must lie in (0,1), got {level}")
    if sample.n < MIN_CI_N:
        raise EstimatorError(f"asymptotic interval needs n >= {MIN_CI_N}, got n={sample.n}")
    if degeneracy_factor is None:
        degeneracy_factor = get_inference_config()["degeneracy_factor"]

    report = sicov_hat(sample, alpha, config)
    center = report.value
    terms = report.terms
    warnings = list(report.estimate.warnings)

    estimates, mc_variances = k1_row_estimates(
        sample, alpha.alpha, k1_budget, config.seed, config.n_jobs
    )
    var_k1 = max(float(np.var(estimates, ddof=1)) - float(mc_variances.mean()), 0.0)
    variance_hat = 16.0 * var_k1 / sample.n

    z = float(norm.ppf(0.5 + level / 2.0))
    half_width = z * float(np.sqrt(variance_hat))

    if any(sample.is_margin_constant()):
        warnings.append("constant margin: k1 vanishes and the interval collapses")
    threshold = degeneracy_factor * (terms.k1 + terms.k2) ** 2 / sample.n
    if variance_hat <= threshold:
        warnings.append(
            f"degenerate regime: variance_hat {variance_hat:.3g} <= {threshold:.3g}; "
            "the normal limit does not hold under sub-independence"
        )
        logger.info("[AsymptoticCI] 方差估计低于退化阈值: %.3g <= %.3g", variance_hat, threshold)

    lower, upper = center - half_width, center + half_width
    interval = ConfidenceInterval(
        lower=lower,
        upper=upper,
        level=level,
        variance_hat=variance_hat,
        center=center,
        warnings=tuple(warnings),
        estimate=replace(report.estimate, ci=(lower, upper, level), warnings=tuple(warnings)),
    )
    logger.info(
        "[AsymptoticCI] [%.6g, %.6g] (level=%g, n=%d)", interval.lower, interval.upper, level, sample.n
    )
    return interval

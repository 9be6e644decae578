#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
次独立协方差/相关系数估计模块

siCov = 2J1 - J2 - J3
siCor = (2J1 - J2 - J3) / (K1 + K2 - K3)，任一边缘为常数时取 0

U 模式为无偏估计，可能为负；V 模式有 O(1/n) 偏差。
经验值超出 [0,1] 时附带告警，默认不截断。
"""

import logging
import time
from dataclasses import dataclass
from typing import List, Optional, Tuple, Union

import numpy as np

from ..core.data_model import (
    AlphaParam,
    DependenceEstimate,
    EstimateKind,
    EstimatorConfig,
    EstimatorMode,
    PairedSample,
    validate_alpha,
)
from ..core.errors import EstimatorError
from ..kernels.term_statistics import (
    FastVTermCalculator,
    IncompleteUTermCalculator,
    NaiveVTermCalculator,
    TermStatistics,
    select_calculator,
)

logger = logging.getLogger(__name__)

AlphaLike = Union[AlphaParam, float]


@dataclass(frozen=True)
class EstimatorReport:
    """估计结果报告：点估计、六项统计量、耗时（秒）与 siCor 分母"""
    estimate: DependenceEstimate
    terms: TermStatistics
    elapsed: float
    denominator: Optional[float] = None
    numerator: float = 0.0

    @property
    def value(self) -> float:
        return self.estimate.value


def _as_alpha(alpha: AlphaLike) -> AlphaParam:
    if isinstance(alpha, AlphaParam):
        return validate_alpha(alpha.alpha)
    return validate_alpha(alpha)


def _default_config(config: Optional[EstimatorConfig]) -> EstimatorConfig:
    return config if config is not None else EstimatorConfig.from_config()


def _compute_terms(
    sample: PairedSample, alpha: AlphaParam, config: EstimatorConfig
) -> Tuple[TermStatistics, EstimatorMode, Optional[int], float]:
    """计算六项统计量，返回 (terms, 实际模式, 元组预算, 耗时)"""

    started = time.perf_counter()
    calculator = select_calculator(sample, alpha, config)
    terms = calculator.compute(sample, alpha)
    elapsed = time.perf_counter() - started

    if isinstance(calculator, IncompleteUTermCalculator):
        mode, budget = EstimatorMode.U_INCOMPLETE, config.tuple_budget
    elif isinstance(calculator, NaiveVTermCalculator):
        mode, budget = EstimatorMode.V_STATISTIC, None
    elif terms.mode == "V":
        mode, budget = EstimatorMode.V_FAST, None
    else:
        mode, budget = EstimatorMode.U_COMPLETE, None
    return terms, mode, budget, elapsed


def _mode_warnings(sample: PairedSample, mode: EstimatorMode) -> List[str]:
    if mode is EstimatorMode.V_STATISTIC:
        return [f"v-fast needs p = 1; naive V enumeration used (p={sample.p}, n={sample.n})"]
    return []


def _sicov_report(
    sample: PairedSample,
    alpha: AlphaParam,
    config: EstimatorConfig,
    terms: TermStatistics,
    mode: EstimatorMode,
    budget: Optional[int],
    elapsed: float,
) -> EstimatorReport:
    warnings: List[str] = _mode_warnings(sample, mode)
    value = terms.sicov
    if value < 0:
        warnings.append(
            f"negative siCov estimate {value:.6g}: U-statistics are unbiased and may fall below 0"
            if terms.mode == "U" else f"negative siCov estimate {value:.6g}"
        )
        logger.info("[SicovEstimator] siCov 估计为负: %.6g", value)

    estimate = DependenceEstimate(
        value=float(value),
        kind=EstimateKind.SICOV,
        alpha=float(alpha.alpha),
        mode=mode,
        n=sample.n,
        seed=config.seed,
        tuple_budget=budget,
        warnings=tuple(warnings),
    )
    return EstimatorReport(estimate=estimate, terms=terms, elapsed=elapsed, numerator=float(value))


def _sicor_report(
    sample: PairedSample,
    alpha: AlphaParam,
    config: EstimatorConfig,
    terms: TermStatistics,
    mode: EstimatorMode,
    budget: Optional[int],
    elapsed: float,
    clamp: bool,
) -> EstimatorReport:
    warnings: List[str] = _mode_warnings(sample, mode)
    numerator = terms.sicov
    denominator = terms.denominator
    x_constant, y_constant = sample.is_margin_constant()

    if x_constant or y_constant:
        margin = "x" if x_constant else "y"
        warnings.append(f"{margin} margin is constant; siCor defined as 0")
        value = 0.0
    else:
        if not denominator > 0:
            raise EstimatorError(
                f"non-positive siCor denominator K1+K2-K3 = {denominator:.6g} on non-constant data; "
                f"sample too small or degenerate (n={sample.n})"
            )
        value = numerator / denominator
        if not 0.0 <= value <= 1.0:
            warnings.append(f"empirical siCor {value:.6g} outside [0,1]")
            if clamp:
                value = float(np.clip(value, 0.0, 1.0))
                warnings.append(f"siCor clamped to {value:g}")

    estimate = DependenceEstimate(
        value=float(value),
        kind=EstimateKind.SICOR,
        alpha=float(alpha.alpha),
        mode=mode,
        n=sample.n,
        seed=config.seed,
        tuple_budget=budget,
        warnings=tuple(warnings),
    )
    return EstimatorReport(
        estimate=estimate, terms=terms, elapsed=elapsed,
        denominator=float(denominator), numerator=float(numerator),
    )


def sicov_hat(
    sample: PairedSample, alpha: AlphaLike = 1.0, config: Optional[EstimatorConfig] = None
) -> EstimatorReport:
    """siCov 点估计 2Ĵ1 - Ĵ2 - Ĵ3"""

    alpha = _as_alpha(alpha)
    config = _default_config(config)
    terms, mode, budget, elapsed = _compute_terms(sample, alpha, config)
    report = _sicov_report(sample, alpha, config, terms, mode, budget, elapsed)
    logger.info(
        "[SicovEstimator] siCov=%.6g (mode=%s, n=%d, 用时 %.3fs)",
        report.value, mode.value, sample.n, elapsed,
    )
    return report


def sicor_hat(
    sample: PairedSample,
    alpha: AlphaLike = 1.0,
    config: Optional[EstimatorConfig] = None,
    clamp: bool = False,
) -> EstimatorReport:
    """siCor 点估计：分子与分母共用同一组元组样本"""

    alpha = _as_alpha(alpha)
    config = _default_config(config)
    terms, mode, budget, elapsed = _compute_terms(sample, alpha, config)
    report = _sicor_report(sample, alpha, config, terms, mode, budget, elapsed, clamp)
    logger.info("[SicovEstimator] siCor=%.6g (mode=%s, n=%d)", report.value, mode.value, sample.n)
    return report


def sicov_sicor(
    sample: PairedSample,
    alpha: AlphaLike = 1.0,
    config: Optional[EstimatorConfig] = None,
    clamp: bool = False,
) -> Tuple[EstimatorReport, EstimatorReport]:
    """一次计算六项统计量，同时返回 siCov 与 siCor 报告"""

    alpha = _as_alpha(alpha)
    config = _default_config(config)
    terms, mode, budget, elapsed = _compute_terms(sample, alpha, config)
    return (
        _sicov_report(sample, alpha, config, terms, mode, budget, elapsed),
        _sicor_report(sample, alpha, config, terms, mode, budget, elapsed, clamp),
    )


def sicov_v_fast_1d(sample: PairedSample, alpha: AlphaLike = 1.0) -> EstimatorReport:
    """一维 V 统计量快速路径：α = 1 时 O(n^2 log n)，其他 α 分块直接求和；要求 p = 1"""

    alpha = _as_alpha(alpha)
    config = EstimatorConfig.from_config(mode=EstimatorMode.V_FAST)
    started = time.perf_counter()
    terms = FastVTermCalculator(config).compute(sample, alpha)
    elapsed = time.perf_counter() - started
    return _sicov_report(sample, alpha, config, terms, EstimatorMode.V_FAST, None, elapsed)

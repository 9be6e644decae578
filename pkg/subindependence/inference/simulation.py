#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
模拟模块
样本生成器、零分布模拟、检验功效研究，以及正态/Cauchy 网格表
"""

import logging
from dataclasses import dataclass
from typing import Any, Callable, Dict, List, Optional, Sequence, Union

import numpy as np
from joblib import Parallel, delayed
from scipy import stats

from ..core.data_model import AlphaParam, EstimatorConfig, PairedSample, validate_alpha
from ..core.errors import ValidationError
from ..core.random_streams import GENERATOR_STREAM, REPLICATE_STREAM, derive_seed, substream
from ..estimator_config import get_inference_config
from ..estimators.sicov_estimator import sicor_hat, sicov_hat
from ..oracle.closed_forms import cauchy_closed_form_terms, normal_closed_form
from .permutation import permutation_test

logger = logging.getLogger(__name__)

MIN_REPLICATES = 100

Generator = Callable[[int, np.random.Generator], PairedSample]


# ---------------------------------------------------------------------------
# 样本生成器：统一签名 (n, rng) -> PairedSample
# ---------------------------------------------------------------------------

def bivariate_normal(n: int, rho: float, rng: np.random.Generator) -> PairedSample:
    """标准正态边缘、相关系数 rho"""
    if not -1.0 <= rho <= 1.0:
        raise ValidationError(f"rho must lie in [-1,1], got {rho}")
    x = rng.standard_normal(n)
    z = rng.standard_normal(n)
    y = rho * x + np.sqrt(max(1.0 - rho * rho, 0.0)) * z
    return PairedSample(x, y)


def independent_normal(n: int, rng: np.random.Generator, p: int = 1) -> PairedSample:
    """相互独立的标准正态边缘，维度 p"""
    return PairedSample(rng.standard_normal((n, p)), rng.standard_normal((n, p)))


def rademacher_pairs(n: int, rng: np.random.Generator, relation: str = "identity") -> PairedSample:
    """Rademacher 边缘；relation 为 identity (Y=X)、negation (Y=-X) 或 independent"""
    x = rng.choice([-1.0, 1.0], size=n)
    if relation == "identity":
        y = x.copy()
    elif relation == "negation":
        y = -x
    elif relation == "independent":
        y = rng.choice([-1.0, 1.0], size=n)
    else:
        raise ValidationError(f"unknown Rademacher relation '{relation}'")
    return PairedSample(x, y)


def quadratic_pairs(n: int, rng: np.random.Generator) -> PairedSample:
    """x 标准正态，y = x^2 - 1（Pearson 相关为 0）"""
    x = rng.standard_normal(n)
    return PairedSample(x, x * x - 1.0)


GENERATORS: Dict[str, Generator] = {
    "independent-normal": lambda n, rng: independent_normal(n, rng),
    "independent-rademacher": lambda n, rng: rademacher_pairs(n, rng, "independent"),
    "rademacher-identity": lambda n, rng: rademacher_pairs(n, rng, "identity"),
    "normal-0.9": lambda n, rng: bivariate_normal(n, 0.9, rng),
    "quadratic": quadratic_pairs,
}


def get_generator(generator: Union[str, Generator]) -> Generator:
    if callable(generator):
        return generator
    try:
        return GENERATORS[generator]
    except KeyError as exc:
        raise ValidationError(
            f"unknown generator '{generator}', expected one of: {', '.join(GENERATORS)}"
        ) from exc


def _replicate_config(config: EstimatorConfig, seed: int, stream: int, index: int) -> EstimatorConfig:
    """每个重复使用从 (seed, stream, index) 派生的种子，保证重复之间相互独立"""
    return EstimatorConfig(
        mode=config.mode,
        tuple_budget=config.tuple_budget,
        seed=derive_seed(seed, stream, index),
        exact_threshold_n=config.exact_threshold_n,
        n_jobs=1,
        chunk_size=config.chunk_size,
    )


def _ordered_map(func: Callable[[int], Any], count: int, n_jobs: int) -> List[Any]:
    if n_jobs > 1:
        return Parallel(n_jobs=n_jobs, backend="threading")(delayed(func)(i) for i in range(count))
    return [func(i) for i in range(count)]


# ---------------------------------------------------------------------------
# 零分布模拟
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class NullSummary:
    """零分布样本的摘要"""
    count: int
    mean: float
    std: float
    skewness: float
    normality_pvalue: float


def null_distribution_sim(
    generator: Union[str, Generator],
    n: int,
    replicates: int,
    alpha: Union[AlphaParam, float] = 1.0,
    seed: Optional[int] = None,
    config: Optional[EstimatorConfig] = None,
    scale_power: Optional[float] = None,
) -> np.ndarray:
    """模拟 n^{scale_power}·siCov_hat 的抽样分布，默认 scale_power = 0.5"""

    if isinstance(replicates, bool) or int(replicates) != replicates or replicates < MIN_REPLICATES:
        raise ValidationError(f"replicates must be an integer >= {MIN_REPLICATES}, got {replicates}")
    if isinstance(n, bool) or int(n) != n or n < 4:
        raise ValidationError(f"n must be an integer >= 4, got {n}")
    alpha = validate_alpha(getattr(alpha, "alpha", alpha))
    config = config if config is not None else EstimatorConfig.from_config()
    seed = config.seed if seed is None else int(seed)
    if scale_power is None:
        scale_power = get_inference_config()["null_scale_power"]
    sampler = get_generator(generator)
    scale = float(n) ** float(scale_power)

    def draw(index: int) -> float:
        sample = sampler(int(n), substream(seed, REPLICATE_STREAM, index))
        replicate_config = _replicate_config(config, seed, REPLICATE_STREAM, index)
        return scale * sicov_hat(sample, alpha, replicate_config).value

    draws = np.asarray(_ordered_map(draw, int(replicates), config.n_jobs), dtype=float)
    logger.info(
        "[NullSimulation] 完成 %d 次重复: n=%d, mean=%.4g", draws.shape[0], n, float(draws.mean())
    )
    return draws


def summarize_null_draws(draws: Sequence[float]) -> NullSummary:
    """均值、标准差、偏度与 D'Agostino-Pearson 正态性检验 p 值"""

    values = np.asarray(draws, dtype=float)
    if values.shape[0] < 8:
        raise ValidationError(f"need at least 8 draws to summarize, got {values.shape[0]}")
    return NullSummary(
        count=int(values.shape[0]),
        mean=float(values.mean()),
        std=float(values.std(ddof=1)),
        skewness=float(stats.skew(values)),
        normality_pvalue=float(stats.normaltest(values).pvalue),
    )


# ---------------------------------------------------------------------------
# 功效研究
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PowerResult:
    """拒绝率统计"""
    scenario: str
    n: int
    runs: int
    rejections: int
    level: float

    @property
    def rate(self) -> float:
        return self.rejections / self.runs


def power_study(
    scenario: Union[str, Generator],
    n: int,
    runs: int,
    permutations: int = 199,
    level: float = 0.05,
    seed: Optional[int] = None,
    alpha: Union[AlphaParam, float] = 1.0,
    config: Optional[EstimatorConfig] = None,
) -> PowerResult:
    """重复生成样本并做置换检验，返回拒绝率"""

    if isinstance(runs, bool) or int(runs) != runs or runs < 1:
        raise ValidationError(f"runs must be a positive integer, got {runs}")
    config = config if config is not None else EstimatorConfig.from_config()
    seed = config.seed if seed is None else int(seed)
    sampler = get_generator(scenario)

    def run(index: int) -> bool:
        sample = sampler(int(n), substream(seed, GENERATOR_STREAM, index))
        run_config = _replicate_config(config, seed, GENERATOR_STREAM, index)
        return permutation_test(sample, alpha, permutations, level, run_config).reject

    decisions = _ordered_map(run, int(runs), config.n_jobs)
    result = PowerResult(
        scenario=scenario if isinstance(scenario, str) else getattr(scenario, "__name__", "custom"),
        n=int(n),
        runs=int(runs),
        rejections=int(sum(decisions)),
        level=float(level),
    )
    logger.info("[PowerStudy] %s: 拒绝率 %.3f (%d/%d)", result.scenario, result.rate, result.rejections, runs)
    return result


# ---------------------------------------------------------------------------
# 闭式值网格
# ---------------------------------------------------------------------------

def normal_grid(
    rhos: Sequence[float],
    n: int,
    alpha: Union[AlphaParam, float] = 1.0,
    seed: Optional[int] = None,
    config: Optional[EstimatorConfig] = None,
) -> List[Dict[str, float]]:
    """每个 ρ 生成一组二元正态样本，对比闭式值与估计值"""

    config = config if config is not None else EstimatorConfig.from_config()
    seed = config.seed if seed is None else int(seed)
    rows = []
    for index, rho in enumerate(rhos):
        closed = normal_closed_form(rho, alpha)
        sample = bivariate_normal(int(n), float(rho), substream(seed, GENERATOR_STREAM, index))
        report = sicor_hat(sample, alpha, _replicate_config(config, seed, GENERATOR_STREAM, index))
        rows.append({
            "rho": float(rho),
            "n": int(n),
            "closed_form_sicov": closed.sicov,
            "estimate_sicov": report.numerator,
            "closed_form_sicor": closed.sicor,
            "estimate_sicor": report.value,
            "abs_error_sicor": abs(report.value - closed.sicor),
            "ratio_r": closed.ratio_r,
        })
    return rows


def cauchy_grid(alphas: Sequence[float]) -> List[Dict[str, float]]:
    """二元标准 Cauchy 的闭式 siCov、分母与 siCor"""
    rows = []
    for value in alphas:
        terms = cauchy_closed_form_terms(value)
        rows.append({
            "alpha": terms.alpha,
            "sicov": terms.sicov,
            "denominator": terms.denominator,
            "sicor": terms.sicor,
        })
    return rows

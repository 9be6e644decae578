#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
置换检验模块
以 n·siCov 为统计量，随机重新配对 y 得到独立性零假设下的参考分布

置换检验对"完全独立"零假设是精确的；对"次独立但不独立"的复合零假设没有校准保证。
"""

import logging
import time
from abc import ABC, abstractmethod
from dataclasses import dataclass
from math import perm
from typing import Any, Dict, Optional, Tuple, Union

import numpy as np
from joblib import Parallel, delayed

from ..core.data_model import AlphaParam, EstimatorConfig, EstimatorMode, PairedSample, validate_alpha
from ..core.errors import EstimatorError, ValidationError
from ..core.random_streams import PERMUTATION_STREAM, substream
from ..kernels.term_statistics import (
    BaseTermCalculator,
    FastVTermCalculator,
    NaiveVTermCalculator,
    select_calculator,
)
from ..utils.sort_utils import SortUtils
from ..utils.tuple_utils import TupleUtils

logger = logging.getLogger(__name__)

MIN_PERMUTATIONS = 19


@dataclass(frozen=True)
class TestResult:
    """置换检验结果"""
    statistic: float
    replicates: Tuple[float, ...]
    p_value: float
    level: float
    reject: bool
    permutations: int
    seed: int
    mode: str = ""
    alpha: float = 1.0

    __test__ = False    # 防止 pytest 按类名收集

    def to_dict(self, include_replicates: bool = False) -> Dict[str, Any]:
        result = {
            "statistic": self.statistic,
            "p_value": self.p_value,
            "level": self.level,
            "reject": self.reject,
            "permutations": self.permutations,
            "seed": self.seed,
            "mode": self.mode,
            "alpha": self.alpha,
        }
        if include_replicates:
            result["replicates"] = list(self.replicates)
        return result


class BasePermutationEngine(ABC):
    """置换统计量计算基类：statistic(order) 返回 y 按 order 重新配对后的 n·siCov"""

    mode = EstimatorMode.AUTO

    def __init__(self, sample: PairedSample, alpha: float, config: EstimatorConfig):
        self.sample = sample
        self.alpha = float(alpha)
        self.config = config

    @abstractmethod
    def sicov(self, order: np.ndarray) -> float:
        """重新配对后的 siCov"""

    def statistic(self, order: Optional[np.ndarray] = None) -> float:
        if order is None:
            order = np.arange(self.sample.n)
        return self.sample.n * self.sicov(order)


class CompleteUPermutationEngine(BasePermutationEngine):
    """完全 U 统计量的置换引擎

    记 H[i,k,b,d] = |x_i - x_k + y_b - y_d|^α，预先计算
        R[i,k,b] = Σ_{d≠b} H[i,k,b,d]，C[i,k,d] = Σ_{b≠d} H[i,k,b,d]
    （O(n^4) 时间、O(n^3) 内存）。对配对 π，记 s_i = x_i + y_π(i)、d_i = x_i - y_π(i)：
        S3 = Σ_{i≠k} |s_i - s_k|^α
        S1 = Σ_{i≠k} R[i,k,π(i)] - S3
        S2 = Σ_{i≠k} (T[i,k] - R[i,k,π(i)] - R[i,k,π(k)] - C[i,k,π(i)] - C[i,k,π(k)]
                      + |s_i - s_k|^α + |d_i - d_k|^α)
    其中 T[i,k] = Σ_b R[i,k,b]。每次置换 O(n^2)。
    """

    mode = EstimatorMode.U_COMPLETE

    def __init__(self, sample, alpha, config):
        super().__init__(sample, alpha, config)
        n = sample.n
        if n < 4:
            raise EstimatorError(f"complete U permutation test needs n >= 4, got n={n}")

        x, y = sample.x, sample.y
        x_diff = x[:, None, :] - x[None, :, :]
        y_diff = y[:, None, :] - y[None, :, :]
        x_norm = TupleUtils.norm_power(x_diff, self.alpha)

        started = time.perf_counter()
        self._r = np.empty((n, n, n))
        self._c = np.empty((n, n, n))
        for i in range(n):
            h = TupleUtils.norm_power(x_diff[i][:, None, None, :] + y_diff[None, :, :, :], self.alpha)
            self._r[i] = h.sum(axis=2) - x_norm[i][:, None]
            self._c[i] = h.sum(axis=1) - x_norm[i][:, None]
        self._t = self._r.sum(axis=2)
        self._off = ~np.eye(n, dtype=bool)
        self._rows = np.arange(n)[:, None]
        self._cols = np.arange(n)[None, :]
        self._counts = (perm(n, 2), perm(n, 3), perm(n, 4))
        logger.debug("[PermutationEngine] 完全 U 预计算完成: n=%d, 用时 %.3fs", n, time.perf_counter() - started)

    def sicov(self, order):
        order = np.asarray(order)
        x, y = self.sample.x, self.sample.y[order]
        s = x + y
        d = x - y
        f_ss = TupleUtils.norm_power(s[:, None, :] - s[None, :, :], self.alpha)
        f_dd = TupleUtils.norm_power(d[:, None, :] - d[None, :, :], self.alpha)

        rows, cols = self._rows, self._cols
        r_i = self._r[rows, cols, order[:, None]]
        r_k = self._r[rows, cols, order[None, :]]
        c_i = self._c[rows, cols, order[:, None]]
        c_k = self._c[rows, cols, order[None, :]]

        off = self._off
        s3 = float(f_ss[off].sum())
        s1 = float(r_i[off].sum()) - s3
        s2 = float((self._t - r_i - r_k - c_i - c_k + f_ss + f_dd)[off].sum())

        pairs, triples, quadruples = self._counts
        return 2.0 * s1 / triples - s2 / quadruples - s3 / pairs


class FastVPermutationEngine(BasePermutationEngine):
    """一维、α = 1 的 V 统计量置换引擎

    C = {x_j + y_k} 与配对无关：J2 不变，J1 只需把 n 个 s_i 查询排序后的 C，每次置换 O(n log n)。
    """

    mode = EstimatorMode.V_FAST

    def __init__(self, sample, alpha, config):
        super().__init__(sample, alpha, config)
        if sample.p != 1 or self.alpha != 1.0:
            raise EstimatorError("v-fast permutation engine requires p = 1 and alpha = 1")
        n = sample.n
        self._x = sample.x[:, 0]
        self._y = sample.y[:, 0]
        cross = (self._x[:, None] + self._y[None, :]).ravel()
        self._ordered, self._prefix = SortUtils.prepare(cross)
        self._j2 = SortUtils.sum_abs_pairwise(cross) / float(n) ** 4

    def sicov(self, order):
        n = float(self.sample.n)
        s = self._x + self._y[np.asarray(order)]
        j1 = SortUtils.sum_abs_to_sorted(s, self._ordered, self._prefix) / n ** 3
        j3 = SortUtils.sum_abs_pairwise(s) / n ** 2
        return 2.0 * j1 - self._j2 - j3


class RecomputePermutationEngine(BasePermutationEngine):
    """对每个置换重新计算六项统计量；不完全模式下复用同一组元组"""

    def __init__(self, sample, alpha, config, calculator: BaseTermCalculator):
        super().__init__(sample, alpha, config)
        self.calculator = calculator
        if isinstance(calculator, NaiveVTermCalculator):
            self.mode = EstimatorMode.V_STATISTIC
        elif calculator.statistic_mode == "V":
            self.mode = EstimatorMode.V_FAST
        else:
            self.mode = EstimatorMode.U_INCOMPLETE

    def sicov(self, order):
        permuted = self.sample.with_y_order(order)
        return self.calculator.compute(permuted, AlphaParam(self.alpha)).sicov


def build_engine(sample: PairedSample, alpha: AlphaParam, config: EstimatorConfig) -> BasePermutationEngine:
    """按模式选择置换引擎"""

    calculator = select_calculator(sample, alpha, config)
    if isinstance(calculator, FastVTermCalculator) and float(alpha.alpha) == 1.0:
        return FastVPermutationEngine(sample, alpha.alpha, config)
    if config.resolve_mode(sample.n) is EstimatorMode.U_COMPLETE:
        return CompleteUPermutationEngine(sample, alpha.alpha, config)
    return RecomputePermutationEngine(sample, alpha.alpha, config, calculator)


def canonical_order(sample: PairedSample) -> PairedSample:
    """按行字典序重排样本，使检验结果与行的原始编号无关"""
    data = np.hstack([sample.x, sample.y])
    order = np.lexsort(data.T[::-1])
    return PairedSample(sample.x[order], sample.y[order])


def _check_arguments(permutations: Any, level: Any) -> Tuple[int, float]:
    if isinstance(permutations, bool) or not isinstance(permutations, (int, np.integer)):
        raise ValidationError(f"permutations must be an integer, got {permutations!r}")
    if permutations < MIN_PERMUTATIONS:
        raise ValidationError(
            f"permutations must be >= {MIN_PERMUTATIONS} to resolve level 0.05, got {permutations}"
        )
    level = float(level)
    if not 0.0 < level < 1.0:
        raise ValidationError(f"level must lie in (0,1), got {level}")
    return int(permutations), level


def permutation_test(
    sample: PairedSample,
    alpha: Union[AlphaParam, float] = 1.0,
    permutations: int = 999,
    level: float = 0.05,
    config: Optional[EstimatorConfig] = None,
) -> TestResult:
    """置换检验：statistic = n·siCov，p = (1 + #{replicate ≥ statistic}) / (B + 1)"""

    permutations, level = _check_arguments(permutations, level)
    alpha = validate_alpha(getattr(alpha, "alpha", alpha))
    config = config if config is not None else EstimatorConfig.from_config()
    if sample.n < 4:
        raise EstimatorError(f"permutation test needs n >= 4, got n={sample.n}")

    started = time.perf_counter()
    sample = canonical_order(sample)
    engine = build_engine(sample, alpha, config)
    statistic = engine.statistic()
    n = sample.n

    def replicate(index: int) -> float:
        order = substream(config.seed, PERMUTATION_STREAM, index).permutation(n)
        return engine.statistic(order)

    if config.n_jobs > 1:
        replicates = Parallel(n_jobs=config.n_jobs, backend="threading")(
            delayed(replicate)(b) for b in range(permutations)
        )
    else:
        replicates = [replicate(b) for b in range(permutations)]
    replicates = np.asarray(replicates, dtype=float)

    exceed = int(np.sum(replicates >= statistic))
    p_value = (1.0 + exceed) / (permutations + 1.0)
    result = TestResult(
        statistic=float(statistic),
        replicates=tuple(float(v) for v in replicates),
        p_value=p_value,
        level=level,
        reject=bool(p_value <= level),
        permutations=permutations,
        seed=config.seed,
        mode=engine.mode.value,
        alpha=float(alpha.alpha),
    )
    logger.info(
        "[PermutationTest] statistic=%.6g, p=%.4g, reject=%s (B=%d, mode=%s, 用时 %.2fs)",
        result.statistic, result.p_value, result.reject, permutations, result.mode,
        time.perf_counter() - started,
    )
    return result

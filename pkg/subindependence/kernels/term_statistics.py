#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
六项矩统计量模块
计算 siCov 的分子项 J1、J2、J3 与 siCor 分母项 K1、K2、K3

各项定义（U 模式下元组内下标两两不同，V 模式下可重复）：
    J1 = avg |x_i + y_i - x_j - y_k|^α
    J2 = avg |x_i + y_j - x_k - y_l|^α
    J3 = avg |x_i + y_i - x_j - y_j|^α
    K1 = avg |x_i - x_j|^α
    K2 = avg |y_k - y_l|^α
    K3 = avg |x_i - x_j + y_k - y_l|^α
K3 按 Y3 - Y4 实现，不按印刷的 X3 - Y4。
"""

import logging
import time
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from math import perm
from typing import Any, Dict, Iterable, Tuple

import numpy as np

from ..core.data_model import AlphaParam, EstimatorConfig, EstimatorMode, PairedSample
from ..core.errors import EstimatorError, ValidationError
from ..core.random_streams import FAMILY_STREAM_IDS, substream
from ..utils.sort_utils import SortUtils
from ..utils.tuple_utils import TupleUtils

logger = logging.getLogger(__name__)

TERM_NAMES = ("j1", "j2", "j3", "k1", "k2", "k3")

# 每项的 (元组长度, 线性组合布局)
TERM_LAYOUTS = {
    "j1": (3, (("x", 0, 1), ("y", 0, 1), ("x", 1, -1), ("y", 2, -1))),
    "j2": (4, (("x", 0, 1), ("y", 1, 1), ("x", 2, -1), ("y", 3, -1))),
    "j3": (2, (("x", 0, 1), ("y", 0, 1), ("x", 1, -1), ("y", 1, -1))),
    "k1": (2, (("x", 0, 1), ("x", 1, -1))),
    "k2": (2, (("y", 0, 1), ("y", 1, -1))),
    "k3": (4, (("x", 0, 1), ("x", 1, -1), ("y", 2, 1), ("y", 3, -1))),
}

# 同一元组族共用一份元组（不完全模式下共享随机性）
TERM_FAMILIES = {
    "pairs": ("j3", "k1", "k2"),
    "triples": ("j1",),
    "quadruples": ("j2", "k3"),
}

FAMILY_ORDER = {"pairs": 2, "triples": 3, "quadruples": 4}


@dataclass(frozen=True)
class TermStatistics:
    """六项经验矩及元组计数"""
    j1: float
    j2: float
    j3: float
    k1: float
    k2: float
    k3: float
    mode: str                      # "U" / "V" / "population"
    alpha: float
    tuples_used: Dict[str, int] = field(default_factory=dict)

    @property
    def sicov(self) -> float:
        """2J1 - J2 - J3"""
        return 2.0 * self.j1 - self.j2 - self.j3

    @property
    def denominator(self) -> float:
        """K1 + K2 - K3"""
        return self.k1 + self.k2 - self.k3

    def as_dict(self) -> Dict[str, Any]:
        return {
            "j1": self.j1, "j2": self.j2, "j3": self.j3,
            "k1": self.k1, "k2": self.k2, "k3": self.k3,
            "mode": self.mode, "alpha": self.alpha,
            "tuples_used": dict(self.tuples_used),
        }


class BaseTermCalculator(ABC):
    """六项统计量计算器基类，定义统一接口"""

    statistic_mode = "U"

    def __init__(self, config: EstimatorConfig):
        """初始化计算器"""
        self.config = config

    @abstractmethod
    def _family_sums(
        self, sample: PairedSample, alpha: float, family: str
    ) -> Tuple[np.ndarray, int]:
        """返回 (族内各项的和, 元组数)"""

    def minimum_n(self) -> int:
        return 4

    def compute(self, sample: PairedSample, alpha: AlphaParam) -> TermStatistics:
        """计算六项统计量"""

        name = self.__class__.__name__
        if sample.n < self.minimum_n():
            raise EstimatorError(
                f"{name} needs n >= {self.minimum_n()} (J2 uses four distinct indices), got n={sample.n}"
            )

        started = time.perf_counter()
        values: Dict[str, float] = {}
        counts: Dict[str, int] = {}
        for family, terms in TERM_FAMILIES.items():
            sums, count = self._family_sums(sample, float(alpha.alpha), family)
            for term, total in zip(terms, sums):
                values[term] = float(total) / count
                counts[term] = int(count)

        logger.debug(
            "[%s] 六项统计量完成: n=%d, p=%d, 用时 %.3fs", name, sample.n, sample.p,
            time.perf_counter() - started,
        )
        return TermStatistics(
            mode=self.statistic_mode, alpha=float(alpha.alpha), tuples_used=counts, **values
        )

    def _evaluate(self, sample: PairedSample, alpha: float, family: str):
        """生成对单个元组分块求族内各项之和的函数"""

        terms = TERM_FAMILIES[family]
        layouts = [TERM_LAYOUTS[t][1] for t in terms]
        x, y = sample.x, sample.y

        def evaluate(chunk: np.ndarray) -> np.ndarray:
            return np.array([
                float(np.sum(TupleUtils.norm_power(TupleUtils.combine(x, y, chunk, layout), alpha)))
                for layout in layouts
            ])

        return evaluate

    def _sum_chunks(self, sample: PairedSample, alpha: float, family: str, chunks: Iterable[np.ndarray]):
        return TupleUtils.ordered_sum(self._evaluate(sample, alpha, family), chunks, self.config.n_jobs)


class CompleteUTermCalculator(BaseTermCalculator):
    """完全 U 统计量：枚举全部下标两两不同的有序元组"""

    def _family_sums(self, sample, alpha, family):
        r = FAMILY_ORDER[family]
        chunks = TupleUtils.iter_distinct_tuples(sample.n, r)
        return self._sum_chunks(sample, alpha, family, chunks), perm(sample.n, r)


class IncompleteUTermCalculator(BaseTermCalculator):
    """不完全 U 统计量：每个元组族按 (seed, 族编号) 子流均匀抽取 tuple_budget 个元组

    同一实例缓存已抽取的元组，重复计算（如置换检验）复用同一组元组。
    """

    def __init__(self, config: EstimatorConfig):
        super().__init__(config)
        self._tuple_cache: Dict[Tuple[int, str], np.ndarray] = {}

    def _family_sums(self, sample, alpha, family):
        tuples = self.sample_family(sample.n, family)
        chunks = TupleUtils.split_chunks(tuples, self.config.chunk_size)
        return self._sum_chunks(sample, alpha, family, chunks), self.config.tuple_budget

    def sample_family(self, n: int, family: str) -> np.ndarray:
        """抽取指定族的元组；相同 (seed, n, 族) 得到相同元组"""
        key = (n, family)
        if key not in self._tuple_cache:
            rng = substream(self.config.seed, FAMILY_STREAM_IDS[family])
            self._tuple_cache[key] = TupleUtils.sample_distinct_tuples(
                n, FAMILY_ORDER[family], self.config.tuple_budget, rng
            )
        return self._tuple_cache[key]


class NaiveVTermCalculator(BaseTermCalculator):
    """V 统计量的直接枚举（全部可重复元组），O(n^4)"""

    statistic_mode = "V"

    def minimum_n(self) -> int:
        return 1

    def _family_sums(self, sample, alpha, family):
        r = FAMILY_ORDER[family]
        chunks = TupleUtils.iter_all_tuples(sample.n, r)
        return self._sum_chunks(sample, alpha, family, chunks), sample.n ** r


class FastVTermCalculator(BaseTermCalculator):
    """一维 V 统计量，基于 C = {x_j + y_k}（n^2 个值）与 s_i = x_i + y_i：
        Σ J1 = Σ_i Σ_{c∈C} |s_i - c|^α
        Σ J2 = Σ K3 = Σ_{c,c'∈C} |c - c'|^α
    α = 1 时用排序与前缀和，J1/J2 为 O(n^2 log n)；
    其他 α 对同一组多重集分块直接求和，J1 为 O(n^3)、J2 为 O(n^4)。
    """

    statistic_mode = "V"

    def minimum_n(self) -> int:
        return 1

    def compute(self, sample: PairedSample, alpha: AlphaParam) -> TermStatistics:
        if sample.p != 1:
            raise EstimatorError(f"v-fast requires p = 1, got p={sample.p}")
        return super().compute(sample, alpha)

    def _family_sums(self, sample, alpha, family):
        n = sample.n
        x = sample.x[:, 0]
        y = sample.y[:, 0]
        cross = (x[:, None] + y[None, :]).ravel()

        if alpha == 1.0:
            if family == "pairs":
                sums = [SortUtils.sum_abs_pairwise(v) for v in (x + y, x, y)]
                return np.array(sums), n ** 2
            if family == "triples":
                ordered, prefix = SortUtils.prepare(x + y)
                # Σ_i Σ_c |s_i - c| 等于以 C 为查询、对排序后的 s 求和
                return np.array([SortUtils.sum_abs_to_sorted(cross, ordered, prefix)]), n ** 3
            total = SortUtils.sum_abs_pairwise(cross)
            return np.array([total, total]), n ** 4

        if family == "pairs":
            sums = [self._cross_power_sum(v, v, alpha) for v in (x + y, x, y)]
            return np.array(sums), n ** 2
        if family == "triples":
            return np.array([self._cross_power_sum(x + y, cross, alpha)]), n ** 3
        total = self._cross_power_sum(cross, cross, alpha)
        return np.array([total, total]), n ** 4

    def _cross_power_sum(self, queries: np.ndarray, values: np.ndarray, alpha: float) -> float:
        """Σ_q Σ_v |q - v|^α，按查询分块，每块约 chunk_size 个差值"""

        rows = max(1, self.config.chunk_size // values.shape[0])
        chunks = TupleUtils.split_chunks(queries, rows)

        def evaluate(block: np.ndarray) -> np.ndarray:
            return np.array([float(np.sum(np.abs(block[:, None] - values[None, :]) ** alpha))])

        return float(TupleUtils.ordered_sum(evaluate, chunks, self.config.n_jobs)[0])


def select_calculator(sample: PairedSample, alpha: AlphaParam, config: EstimatorConfig) -> BaseTermCalculator:
    """按模式、样本量与维度选择计算器"""

    mode = config.resolve_mode(sample.n)
    if mode is EstimatorMode.U_COMPLETE:
        return CompleteUTermCalculator(config)
    if mode is EstimatorMode.U_INCOMPLETE:
        return IncompleteUTermCalculator(config)
    if mode is EstimatorMode.V_FAST:
        if sample.p == 1:
            return FastVTermCalculator(config)
        if sample.n <= config.exact_threshold_n:
            logger.warning("[TermCalculator] v-fast 需要 p=1，改用 V 统计量直接枚举 (n=%d)", sample.n)
            return NaiveVTermCalculator(config)
        raise EstimatorError(
            f"v-fast requires p = 1 (got p={sample.p}) when n > {config.exact_threshold_n}; "
            f"use mode 'u' or 'u-incomplete'"
        )
    raise ValidationError(f"mode '{mode.value}' cannot compute term statistics")


def term_statistics(sample: PairedSample, alpha: AlphaParam, config: EstimatorConfig) -> TermStatistics:
    """计算六项矩统计量"""
    return select_calculator(sample, alpha, config).compute(sample, alpha)

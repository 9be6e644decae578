#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
对称核模块
四元观测上的对称核 k 及其一阶投影 k1

    k = (1/12) Σ_{i,j,k 两两不同} |x_i+y_i-x_j-y_k|^α
      - (1/24) Σ_{i,j,k,l 两两不同} |x_i+y_j-x_k-y_l|^α
      - (1/12) Σ_{i≠j} |x_i+y_i-x_j-y_j|^α
第三项系数取 1/12（12 个有序对），使 E k = 2J1 - J2 - J3。
"""

import logging
from itertools import combinations, permutations
from math import comb
from typing import Tuple

import numpy as np

from ..core.data_model import PairedSample
from ..core.errors import EstimatorError, ValidationError
from ..core.random_streams import K1_ROW_STREAM, substream
from ..utils.tuple_utils import TupleUtils
from .term_statistics import TERM_LAYOUTS

logger = logging.getLogger(__name__)

# 四元组内部的有序下标组合，所有核计算共用
_TRIPLES = np.array(list(permutations(range(4), 3)))     # 24
_QUADS = np.array(list(permutations(range(4), 4)))       # 24
_PAIRS = np.array(list(permutations(range(4), 2)))       # 12


def _kernel_rows(x: np.ndarray, y: np.ndarray, alpha: float) -> np.ndarray:
    """对形如 (m, 4, p) 的四元组批量计算核值"""

    def term(local: np.ndarray, layout) -> np.ndarray:
        total = np.zeros((x.shape[0], local.shape[0], x.shape[2]), dtype=float)
        margins = {"x": x, "y": y}
        for margin, position, sign in layout:
            total += sign * margins[margin][:, local[:, position], :]
        return TupleUtils.norm_power(total, alpha).sum(axis=1)

    first = term(_TRIPLES, TERM_LAYOUTS["j1"][1])
    second = term(_QUADS, TERM_LAYOUTS["j2"][1])
    third = term(_PAIRS, TERM_LAYOUTS["j3"][1])
    return first / 12.0 - second / 24.0 - third / 12.0


def kernel_k(quad, alpha: float) -> float:
    """四个成对观测上的对称核；quad 为 (x, y) 两个 4×p 数组，或 4 行的 PairedSample"""

    if isinstance(quad, PairedSample):
        x, y = quad.x, quad.y
    else:
        x, y = quad
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        if x.ndim == 1:
            x = x[:, None]
        if y.ndim == 1:
            y = y[:, None]
    if x.shape[0] != 4 or y.shape != x.shape:
        raise ValidationError(f"kernel_k needs four rows with matching dimension, got {x.shape} and {y.shape}")
    return float(_kernel_rows(x[None], y[None], float(alpha))[0])


def kernel_k_batch(sample: PairedSample, quads: np.ndarray, alpha: float) -> np.ndarray:
    """对 (m, 4) 下标数组批量计算核值"""
    quads = np.asarray(quads, dtype=int)
    return _kernel_rows(sample.x[quads], sample.y[quads], float(alpha))


def kernel_average(sample: PairedSample, alpha: float, chunk_size: int = 4096) -> float:
    """核在全部 C(n,4) 个子集上的平均，即完全 U 统计量"""

    if sample.n < 4:
        raise EstimatorError(f"kernel average needs n >= 4, got n={sample.n}")
    subsets = np.array(list(combinations(range(sample.n), 4)))
    total = 0.0
    for start in range(0, subsets.shape[0], chunk_size):
        total += float(kernel_k_batch(sample, subsets[start:start + chunk_size], alpha).sum())
    return total / subsets.shape[0]


def k1_draws(
    sample: PairedSample, i: int, alpha: float, budget: int, seed: int
) -> Tuple[np.ndarray, bool]:
    """第 i 行与其他三行组成的核值样本；budget 不小于 C(n-1,3) 时完全枚举

    返回 (核值数组, 是否完全枚举)。随机三元组取自 (seed, K1_ROW_STREAM, i) 子流。
    """

    n = sample.n
    if n < 4:
        raise EstimatorError(f"k1_hat needs n >= 4, got n={n}")
    if not 0 <= i < n:
        raise ValidationError(f"row index {i} out of range for n={n}")
    if isinstance(budget, bool) or int(budget) != budget or budget < 1:
        raise ValidationError(f"k1 budget must be a positive integer, got {budget!r}")

    others = np.delete(np.arange(n), i)
    if budget >= comb(n - 1, 3):
        triples = np.array(list(combinations(others, 3)))
        exhaustive = True
    else:
        rng = substream(seed, K1_ROW_STREAM, i)
        local = TupleUtils.sample_distinct_tuples(n - 1, 3, int(budget), rng)
        triples = others[local]
        exhaustive = False

    quads = np.column_stack([np.full(triples.shape[0], i), triples])
    return kernel_k_batch(sample, quads, alpha), exhaustive


def k1_hat(sample: PairedSample, i: int, alpha: float, budget: int, seed: int) -> float:
    """一阶投影 k1(x_i, y_i) 的蒙特卡罗估计：核在与第 i 行配对的随机三元组上的平均"""
    values, _ = k1_draws(sample, i, alpha, budget, seed)
    return float(values.mean())

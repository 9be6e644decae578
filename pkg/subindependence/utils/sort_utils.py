#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
排序与前缀和工具模块
一维绝对差求和的 O(n log n) 算法
"""

import numpy as np


class SortUtils:
    """基于排序与前缀和的绝对差求和工具类"""

    @staticmethod
    def sum_abs_pairwise(values: np.ndarray, chunk_size: int = 1 << 22) -> float:
        """Σ_{i,j} |z_i - z_j|（有序对、含 i=j），排序后 2 Σ_k (2k - n + 1) z_(k)"""

        z = np.sort(np.asarray(values, dtype=float).ravel())
        n = z.shape[0]
        result = 0.0
        for start in range(0, n, chunk_size):
            block = z[start:start + chunk_size]
            weights = 2.0 * np.arange(start, start + block.shape[0]) - n + 1.0
            result += float(np.dot(weights, block))
        return 2.0 * result

    @staticmethod
    def prepare(values: np.ndarray):
        """返回 (升序数组, 带前导 0 的前缀和)"""

        ordered = np.sort(np.asarray(values, dtype=float).ravel())
        prefix = np.concatenate([[0.0], np.cumsum(ordered)])
        return ordered, prefix

    @staticmethod
    def sum_abs_to_sorted(
        queries: np.ndarray,
        ordered: np.ndarray,
        prefix: np.ndarray,
        chunk_size: int = 1 << 20,
    ) -> float:
        """Σ_q Σ_b |b - q|，b 取自已排序数组；每个查询 O(log N)"""

        queries = np.asarray(queries, dtype=float).ravel()
        size = ordered.shape[0]
        total_sum = prefix[-1]
        result = 0.0
        for start in range(0, queries.shape[0], chunk_size):
            q = queries[start:start + chunk_size]
            below = np.searchsorted(ordered, q, side="right")
            lower = q * below - prefix[below]
            upper = (total_sum - prefix[below]) - q * (size - below)
            result += float(np.sum(lower + upper))
        return result
